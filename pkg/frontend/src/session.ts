/** Session flow: which task comes next, and when to suggest a break. */

import type { TaskPayload } from "./types.js";

export const TASKS_PER_SITTING = 5;

/** The next task that still needs a judgment, scanning forward from the
 * current one and wrapping around; null when everything is done. */
export function nextUnfinished(
  tasks: TaskPayload[],
  doneIds: Set<string>,
  currentTaskId: string | null = null,
): TaskPayload | null {
  if (tasks.length === 0) return null;
  const start =
    currentTaskId === null
      ? 0
      : tasks.findIndex((t) => t.task_id === currentTaskId) + 1;
  for (let offset = 0; offset < tasks.length; offset++) {
    const task = tasks[(start + offset) % tasks.length];
    if (task && !doneIds.has(task.task_id)) return task;
  }
  return null;
}

/** A break is suggested after every TASKS_PER_SITTING completed tasks. */
export function breakDue(completedThisSitting: number): boolean {
  return (
    completedThisSitting > 0 && completedThisSitting % TASKS_PER_SITTING === 0
  );
}

import { describe, expect, it } from "vitest";

import { breakDue, nextUnfinished, TASKS_PER_SITTING } from "../src/session.js";
import type { TaskPayload } from "../src/types.js";

function task(id: string): TaskPayload {
  return {
    task_id: id,
    instance_id: `inst-${id}`,
    source: { abstract: "", introduction: "", metadata: "" },
    candidates: [],
    dimensions: [],
  };
}

const TASKS = [task("t1"), task("t2"), task("t3")];

describe("nextUnfinished", () => {
  it("starts at the first open task", () => {
    expect(nextUnfinished(TASKS, new Set())!.task_id).toBe("t1");
    expect(nextUnfinished(TASKS, new Set(["t1"]))!.task_id).toBe("t2");
  });

  it("advances past the current task", () => {
    expect(nextUnfinished(TASKS, new Set(["t1"]), "t1")!.task_id).toBe("t2");
  });

  it("wraps around to earlier unfinished tasks", () => {
    expect(nextUnfinished(TASKS, new Set(["t2", "t3"]), "t3")!.task_id).toBe("t1");
  });

  it("returns null when everything is done", () => {
    expect(nextUnfinished(TASKS, new Set(["t1", "t2", "t3"]))).toBeNull();
    expect(nextUnfinished([], new Set())).toBeNull();
  });
});

describe("breakDue", () => {
  it("fires after every five completed tasks", () => {
    expect(TASKS_PER_SITTING).toBe(5);
    expect(breakDue(0)).toBe(false);
    expect(breakDue(4)).toBe(false);
    expect(breakDue(5)).toBe(true);
    expect(breakDue(6)).toBe(false);
    expect(breakDue(10)).toBe(true);
  });
});

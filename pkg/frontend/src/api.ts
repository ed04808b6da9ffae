/** Thin client for the annotation service API.  The fetch function is
 * injectable so tests can point it anywhere or fake failures. */

import type {
  JudgmentBody,
  SubmitResult,
  TaskListPayload,
  TaskPayload,
} from "./types.js";

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = fetch,
  ) {}

  async listTasks(annotatorId: string): Promise<TaskListPayload> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/tasks?annotator=${encodeURIComponent(annotatorId)}`,
    );
    if (!response.ok) {
      throw new Error(`task list failed: HTTP ${response.status}`);
    }
    return (await response.json()) as TaskListPayload;
  }

  async getTask(taskId: string): Promise<TaskPayload> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/tasks/${encodeURIComponent(taskId)}`,
    );
    if (!response.ok) {
      throw new Error(`task fetch failed: HTTP ${response.status}`);
    }
    return (await response.json()) as TaskPayload;
  }

  /** POST a judgment.  Rule violations (422) and unknown tasks (404) come
   * back as structured failures; network errors propagate as exceptions so
   * callers can keep the local draft. */
  async submitJudgment(body: JudgmentBody): Promise<SubmitResult> {
    const response = await this.fetchFn(`${this.baseUrl}/api/judgments`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (response.status === 201) {
      const payload = (await response.json()) as { replaced: boolean };
      return { ok: true, replaced: payload.replaced };
    }
    let detail = `HTTP ${response.status}`;
    try {
      const payload = (await response.json()) as { detail?: unknown };
      if (typeof payload.detail === "string") detail = payload.detail;
    } catch {
      // non-JSON error body; keep the status line
    }
    return { ok: false, status: response.status, detail };
  }
}

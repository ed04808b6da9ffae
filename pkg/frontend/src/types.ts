/** Wire types for the annotation service API.
 *
 * Candidates arrive with anonymized slots only; hidden system identities
 * never reach the browser.
 */

export type Slot = string;

export interface DimensionInfo {
  name: string;
  help: string;
}

export interface CandidateView {
  slot: Slot;
  summary: string;
}

export interface TaskPayload {
  task_id: string;
  instance_id: string;
  source: {
    abstract: string;
    introduction: string;
    metadata: string;
  };
  candidates: CandidateView[];
  dimensions: DimensionInfo[];
  done?: boolean;
}

export interface TaskListPayload {
  tasks: TaskPayload[];
  progress: { done: number; total: number };
}

/** One dimension's selection, as sorted slot arrays for easy persistence. */
export interface Selection {
  best: Slot[];
  worst: Slot[];
}

export type SelectionMap = Record<string, Selection>;

export interface JudgmentBody {
  task_id: string;
  annotator_id: string;
  selections: SelectionMap;
}

export type SubmitResult =
  | { ok: true; replaced: boolean }
  | { ok: false; status: number; detail: string };

/** Bootstrap: annotator id (asked once), task flow, draft persistence. */

import { ApiClient } from "./api.js";
import { breakDue, nextUnfinished } from "./session.js";
import {
  emptySelections,
  isComplete,
  toggle,
  toggleTie,
  violations,
} from "./state.js";
import type { Kind } from "./state.js";
import {
  clearDraft,
  loadAnnotatorId,
  loadDraft,
  saveAnnotatorId,
  saveDraft,
  MemoryStore,
} from "./storage.js";
import type { KeyValueStore } from "./storage.js";
import type { SelectionMap, Slot, TaskPayload } from "./types.js";
import { render } from "./ui.js";
import type { ViewState } from "./ui.js";

function storage(): KeyValueStore {
  try {
    window.localStorage.setItem("scipress-probe", "1");
    window.localStorage.removeItem("scipress-probe");
    return window.localStorage;
  } catch {
    return new MemoryStore();
  }
}

function annotatorId(store: KeyValueStore): string {
  const existing = loadAnnotatorId(store);
  if (existing) return existing;
  let id = "";
  while (!id) {
    id = (window.prompt("Annotator id:") ?? "").trim();
  }
  saveAnnotatorId(store, id);
  return id;
}

class App {
  private api = new ApiClient("");
  private store = storage();
  private annotator = "";
  private tasks: TaskPayload[] = [];
  private doneIds = new Set<string>();
  private task: TaskPayload | null = null;
  private selections: SelectionMap = {};
  private completedThisSitting = 0;
  private submitting = false;
  private errorBanner: string | null = null;
  private retryBanner: string | null = null;
  private breakReminder = false;

  constructor(private root: HTMLElement) {}

  async start(): Promise<void> {
    this.annotator = annotatorId(this.store);
    await this.loadTasks();
  }

  private async loadTasks(): Promise<void> {
    try {
      const payload = await this.api.listTasks(this.annotator);
      this.tasks = payload.tasks;
      this.doneIds = new Set(
        payload.tasks.filter((t) => t.done).map((t) => t.task_id),
      );
      this.retryBanner = null;
      this.showTask(nextUnfinished(this.tasks, this.doneIds));
    } catch {
      // selections (if any) stay in state and in the draft store
      this.retryBanner = "Could not reach the server.";
      this.draw();
    }
  }

  private showTask(task: TaskPayload | null): void {
    this.task = task;
    this.errorBanner = null;
    if (task) {
      const dims = task.dimensions.map((d) => d.name);
      this.selections =
        loadDraft(this.store, this.annotator, task.task_id) ??
        emptySelections(dims);
    }
    this.draw();
  }

  private slots(): Slot[] {
    return this.task ? this.task.candidates.map((c) => c.slot) : [];
  }

  private persistDraft(): void {
    if (this.task) {
      saveDraft(this.store, this.annotator, this.task.task_id, this.selections);
    }
  }

  private onToggle = (dimension: string, kind: Kind, slot: Slot): void => {
    this.selections = toggle(this.selections, dimension, kind, slot, this.slots());
    this.errorBanner = null;
    this.persistDraft();
    this.draw();
  };

  private onTie = (dimension: string): void => {
    this.selections = toggleTie(this.selections, dimension, this.slots());
    this.errorBanner = null;
    this.persistDraft();
    this.draw();
  };

  private onSubmit = async (): Promise<void> => {
    const task = this.task;
    if (!task || this.submitting) return;
    const dims = task.dimensions.map((d) => d.name);
    if (!isComplete(this.selections, dims, this.slots())) {
      const firstViolation = Object.entries(
        violations(this.selections, dims, this.slots()),
      )[0];
      this.errorBanner = firstViolation
        ? `${firstViolation[0]}: ${firstViolation[1]}`
        : "selections incomplete";
      this.draw();
      return;
    }
    this.submitting = true;
    this.draw();
    try {
      const result = await this.api.submitJudgment({
        task_id: task.task_id,
        annotator_id: this.annotator,
        selections: this.selections,
      });
      if (!result.ok) {
        this.errorBanner = `rejected (${result.status}): ${result.detail}`;
        return;
      }
      clearDraft(this.store, this.annotator, task.task_id);
      this.doneIds.add(task.task_id);
      this.completedThisSitting += 1;
      if (breakDue(this.completedThisSitting)) {
        this.breakReminder = true;
        this.draw();
        return;
      }
      this.showTask(nextUnfinished(this.tasks, this.doneIds, task.task_id));
    } catch {
      // network failure: draft already persisted, nothing is lost
      this.errorBanner =
        "Could not submit (network problem). Your selections are saved locally.";
    } finally {
      this.submitting = false;
      this.draw();
    }
  };

  private onRetry = (): void => {
    void this.loadTasks();
  };

  private onBreakAcknowledged = (): void => {
    this.breakReminder = false;
    this.showTask(
      nextUnfinished(this.tasks, this.doneIds, this.task?.task_id ?? null),
    );
  };

  private draw(): void {
    const state: ViewState = {
      task: this.task,
      selections: this.selections,
      progressDone: this.doneIds.size,
      progressTotal: this.tasks.length,
      submitting: this.submitting,
      errorBanner: this.errorBanner,
      retryBanner: this.retryBanner,
      breakReminder: this.breakReminder,
      allDone: this.tasks.length > 0 && this.doneIds.size >= this.tasks.length,
    };
    render(this.root, state, {
      onToggle: this.onToggle,
      onTie: this.onTie,
      onSubmit: () => void this.onSubmit(),
      onRetry: this.onRetry,
      onBreakAcknowledged: this.onBreakAcknowledged,
    });
  }
}

const rootElement = document.getElementById("app");
if (rootElement) {
  void new App(rootElement).start();
}

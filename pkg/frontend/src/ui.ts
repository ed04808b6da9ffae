/** DOM rendering.  One render pass per state change; no framework. */

import { dimensionViolation, isFullTie } from "./state.js";
import type { Kind } from "./state.js";
import type { SelectionMap, Slot, TaskPayload } from "./types.js";

export interface ViewCallbacks {
  onToggle(dimension: string, kind: Kind, slot: Slot): void;
  onTie(dimension: string): void;
  onSubmit(): void;
  onRetry(): void;
  onBreakAcknowledged(): void;
}

export interface ViewState {
  task: TaskPayload | null;
  selections: SelectionMap;
  progressDone: number;
  progressTotal: number;
  submitting: boolean;
  errorBanner: string | null;
  retryBanner: string | null;
  breakReminder: boolean;
  allDone: boolean;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function sourcePanel(task: TaskPayload): HTMLElement {
  const panel = el("section", "source-panel");
  const blocks: Array<[string, string]> = [
    ["Metadata", task.source.metadata],
    ["Abstract", task.source.abstract],
    ["Introduction", task.source.introduction],
  ];
  for (const [label, text] of blocks) {
    if (!text) continue;
    const block = el("div", "source-block");
    block.appendChild(el("h3", undefined, label));
    block.appendChild(el("p", undefined, text));
    panel.appendChild(block);
  }
  return panel;
}

function candidateColumns(task: TaskPayload): HTMLElement {
  const row = el("section", "candidates");
  for (const candidate of task.candidates) {
    const column = el("article", "candidate");
    column.appendChild(el("h3", undefined, `Summary ${candidate.slot}`));
    column.appendChild(el("p", undefined, candidate.summary));
    row.appendChild(column);
  }
  return row;
}

function dimensionRow(
  task: TaskPayload,
  name: string,
  help: string,
  state: ViewState,
  callbacks: ViewCallbacks,
): HTMLElement {
  const slots = task.candidates.map((c) => c.slot);
  const selection = state.selections[name] ?? { best: [], worst: [] };
  const row = el("div", "dimension");

  const heading = el("div", "dimension-head");
  heading.appendChild(el("strong", undefined, name.replace(/_/g, "-").toLowerCase()));
  heading.appendChild(el("small", "help", help));
  row.appendChild(heading);

  const controls = el("div", "dimension-controls");
  for (const kind of ["best", "worst"] as const) {
    const group = el("div", `pick pick-${kind}`);
    group.appendChild(el("span", "pick-label", kind));
    for (const slot of slots) {
      const button = el("button", "slot-toggle", slot);
      button.type = "button";
      button.dataset.dimension = name;
      button.dataset.kind = kind;
      button.dataset.slot = slot;
      if (selection[kind].includes(slot)) button.classList.add("on");
      button.addEventListener("click", () => callbacks.onToggle(name, kind, slot));
      group.appendChild(button);
    }
    controls.appendChild(group);
  }
  const tie = el("button", "tie-toggle", "no significant difference");
  tie.type = "button";
  tie.dataset.dimension = name;
  if (isFullTie(selection, slots)) tie.classList.add("on");
  tie.addEventListener("click", () => callbacks.onTie(name));
  controls.appendChild(tie);
  row.appendChild(controls);

  const violation = dimensionViolation(selection, slots);
  if (violation) {
    row.appendChild(el("div", "violation", violation));
  }
  return row;
}

export function render(
  root: HTMLElement,
  state: ViewState,
  callbacks: ViewCallbacks,
): void {
  root.replaceChildren();

  const header = el("header", "top");
  header.appendChild(el("h1", undefined, "Summary comparison study"));
  header.appendChild(
    el(
      "div",
      "progress",
      `${state.progressDone}/${state.progressTotal} done`,
    ),
  );
  root.appendChild(header);

  if (state.retryBanner) {
    const banner = el("div", "banner retry");
    banner.appendChild(el("span", undefined, state.retryBanner));
    const retry = el("button", undefined, "retry");
    retry.type = "button";
    retry.addEventListener("click", callbacks.onRetry);
    banner.appendChild(retry);
    root.appendChild(banner);
  }

  if (state.breakReminder) {
    const banner = el("div", "banner break");
    banner.appendChild(
      el(
        "span",
        undefined,
        "You have completed five tasks in this sitting. Please take a break " +
          "before continuing.",
      ),
    );
    const ok = el("button", undefined, "continue");
    ok.type = "button";
    ok.addEventListener("click", callbacks.onBreakAcknowledged);
    banner.appendChild(ok);
    root.appendChild(banner);
    return;
  }

  if (state.allDone) {
    root.appendChild(
      el("div", "done-message", "All tasks are done. Thank you!"),
    );
    return;
  }

  const task = state.task;
  if (!task) return;

  root.appendChild(el("div", "task-id", `Task ${task.task_id}`));
  root.appendChild(sourcePanel(task));
  root.appendChild(candidateColumns(task));

  const form = el("section", "dimensions");
  for (const dimension of task.dimensions) {
    form.appendChild(
      dimensionRow(task, dimension.name, dimension.help, state, callbacks),
    );
  }
  root.appendChild(form);

  if (state.errorBanner) {
    root.appendChild(el("div", "banner error", state.errorBanner));
  }

  const slots = task.candidates.map((c) => c.slot);
  const incomplete = task.dimensions.some(
    (d) => dimensionViolation(state.selections[d.name], slots) !== null,
  );
  const submit = el("button", "submit", state.submitting ? "submitting..." : "submit");
  submit.type = "button";
  submit.disabled = incomplete || state.submitting;
  submit.addEventListener("click", callbacks.onSubmit);
  root.appendChild(submit);
}

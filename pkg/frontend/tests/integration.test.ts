/** End-to-end contract test against the real annotation service.
 *
 * Spawns `scipress serve` on a fixture of three tasks, drives a scripted
 * two-annotator session through the same client code the browser uses, and
 * checks that `scipress bws-score` reproduces the hand-computed scores.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { dimensionViolation, emptySelections, isComplete, toggle, toggleTie } from "../src/state.js";
import type { SelectionMap, TaskPayload } from "../src/types.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;
const SLOTS = ["A", "B", "C"];

// slot -> system maps, fixed per task so scores are hand-computable
const TASK_SYSTEMS: Record<string, Record<string, string>> = {
  "task-1": { A: "alpha", B: "bravo", C: "charlie" },
  "task-2": { A: "bravo", B: "charlie", C: "alpha" },
  "task-3": { A: "charlie", B: "alpha", C: "bravo" },
};

/** Hand computation (6 appearances per system and dimension):
 *  ann-1: t1 best A / worst C, t2 best A / worst C, t3 best B / worst C
 *  ann-2: t1 best A / worst B, t2 full tie,         t3 best B / worst A
 *  alpha:   best 5, worst 2 -> ( 5-2)/6 =  0.5
 *  bravo:   best 2, worst 3 -> ( 2-3)/6 = -0.166667
 *  charlie: best 1, worst 3 -> ( 1-3)/6 = -0.333333
 */
const EXPECTED_SCORES: Record<string, number> = {
  alpha: 0.5,
  bravo: -0.166667,
  charlie: -0.333333,
};

let workDir: string;
let tasksPath: string;
let storePath: string;
let server: ChildProcess | null = null;

function fixtureTasks(): string {
  const lines = Object.entries(TASK_SYSTEMS).map(([taskId, slots], index) =>
    JSON.stringify({
      task_id: taskId,
      instance_id: `inst-${index + 1}`,
      source: {
        abstract: `Abstract text for instance ${index + 1}.`,
        introduction: `Introduction text for instance ${index + 1}.`,
        metadata: "Mara Voss | Silver Valley University",
      },
      candidates: SLOTS.map((slot) => ({
        slot,
        system: slots[slot],
        summary: `Candidate ${slot} for instance ${index + 1}.`,
      })),
    }),
  );
  return lines.join("\n") + "\n";
}

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 20_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/api/tasks?annotator=probe`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("annotation service did not come up in 20s");
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "scipress-ui-"));
  tasksPath = join(workDir, "tasks.jsonl");
  storePath = join(workDir, "judgments.jsonl");
  writeFileSync(tasksPath, fixtureTasks());
  server = spawn(
    "scipress",
    ["serve", "--tasks", tasksPath, "--store", storePath,
     "--port", String(PORT), "--out", join(workDir, "out")],
    { stdio: "ignore" },
  );
  await waitForServer();
}, 30_000);

afterAll(() => {
  server?.kill("SIGTERM");
});

function selectionsFor(
  task: TaskPayload,
  plan: { best?: string; worst?: string; tie?: boolean },
): SelectionMap {
  const dims = task.dimensions.map((d) => d.name);
  let selections = emptySelections(dims);
  for (const d of dims) {
    if (plan.tie) {
      selections = toggleTie(selections, d, SLOTS);
    } else {
      selections = toggle(selections, d, "best", plan.best!, SLOTS);
      selections = toggle(selections, d, "worst", plan.worst!, SLOTS);
    }
  }
  return selections;
}

describe("annotation service contract", () => {
  const api = new ApiClient(BASE);

  it("serves blinded tasks with dimensions and progress", async () => {
    const listing = await api.listTasks("ann-1");
    expect(listing.progress).toEqual({ done: 0, total: 3 });
    expect(listing.tasks).toHaveLength(3);
    const raw = JSON.stringify(listing);
    for (const hidden of ["alpha", "bravo", "charlie"]) {
      expect(raw).not.toContain(hidden);
    }
    const task = listing.tasks[0]!;
    expect(task.candidates.map((c) => c.slot)).toEqual(SLOTS);
    expect(task.dimensions).toHaveLength(6);
  });

  it("blocks an invalid selection client-side", async () => {
    const task = await api.getTask("task-1");
    const dims = task.dimensions.map((d) => d.name);
    const bad = { ...emptySelections(dims) };
    bad["STYLE"] = { best: ["A"], worst: ["A"] };
    expect(dimensionViolation(bad["STYLE"], SLOTS)).toMatch(/overlap/);
    expect(isComplete(bad, dims, SLOTS)).toBe(false);
    // the UI refuses to POST in this state; nothing reaches the store
  });

  it("rejects the same invalid selection server-side with 422", async () => {
    const task = await api.getTask("task-1");
    const dims = task.dimensions.map((d) => d.name);
    const selections: SelectionMap = {};
    for (const d of dims) selections[d] = { best: ["A"], worst: ["A"] };
    const result = await api.submitJudgment({
      task_id: "task-1",
      annotator_id: "ann-bad",
      selections,
    });
    expect(result).toMatchObject({ ok: false, status: 422 });
    if (!result.ok) expect(result.detail).toMatch(/overlap|both/);
  });

  it("returns 404 for judgments on unknown tasks", async () => {
    const result = await api.submitJudgment({
      task_id: "task-999",
      annotator_id: "ann-1",
      selections: selectionsFor(await api.getTask("task-1"), {
        best: "A",
        worst: "C",
      }),
    });
    expect(result).toMatchObject({ ok: false, status: 404 });
  });

  it("completes a scripted 3-task session for two annotators", async () => {
    const script: Array<{
      annotator: string;
      taskId: string;
      plan: { best?: string; worst?: string; tie?: boolean };
    }> = [
      { annotator: "ann-1", taskId: "task-1", plan: { best: "A", worst: "C" } },
      { annotator: "ann-1", taskId: "task-2", plan: { best: "A", worst: "C" } },
      { annotator: "ann-1", taskId: "task-3", plan: { best: "B", worst: "C" } },
      { annotator: "ann-2", taskId: "task-1", plan: { best: "A", worst: "B" } },
      { annotator: "ann-2", taskId: "task-2", plan: { tie: true } },
      { annotator: "ann-2", taskId: "task-3", plan: { best: "B", worst: "A" } },
    ];
    for (const step of script) {
      const task = await api.getTask(step.taskId);
      const selections = selectionsFor(task, step.plan);
      const dims = task.dimensions.map((d) => d.name);
      expect(isComplete(selections, dims, SLOTS)).toBe(true);
      const result = await api.submitJudgment({
        task_id: step.taskId,
        annotator_id: step.annotator,
        selections,
      });
      expect(result).toMatchObject({ ok: true });
    }

    const listing = await api.listTasks("ann-1");
    expect(listing.progress).toEqual({ done: 3, total: 3 });

    const results = await fetch(`${BASE}/api/results`).then((r) => r.json());
    expect(results.n_judgments).toBe(6);
  });

  it("bws-score reproduces the hand-computed score table", () => {
    const outDir = join(workDir, "scores");
    const run = spawnSync(
      "scipress",
      ["bws-score", "--tasks", tasksPath, "--store", storePath, "--out", outDir],
      { encoding: "utf-8" },
    );
    expect(run.status).toBe(0);
    const payload = JSON.parse(
      readFileSync(join(outDir, "bws_scores.json"), "utf-8"),
    ) as {
      scores: Array<{ system: string; dimension: string; score: number; n_shown: number }>;
    };
    expect(payload.scores).toHaveLength(3 * 6);
    for (const row of payload.scores) {
      expect(row.n_shown).toBe(6);
      expect(row.score).toBeCloseTo(EXPECTED_SCORES[row.system]!, 6);
    }
  });
});

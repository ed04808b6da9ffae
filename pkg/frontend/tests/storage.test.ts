import { describe, expect, it } from "vitest";

import {
  clearDraft,
  loadAnnotatorId,
  loadDraft,
  MemoryStore,
  saveAnnotatorId,
  saveDraft,
} from "../src/storage.js";

describe("annotator id", () => {
  it("is stored once and read back", () => {
    const store = new MemoryStore();
    expect(loadAnnotatorId(store)).toBeNull();
    saveAnnotatorId(store, "ann-7");
    expect(loadAnnotatorId(store)).toBe("ann-7");
  });
});

describe("drafts", () => {
  const selections = {
    STYLE: { best: ["A"], worst: ["C"] },
    FACTUALITY: { best: ["B"], worst: ["A"] },
  };

  it("round-trips selections per (annotator, task)", () => {
    const store = new MemoryStore();
    saveDraft(store, "ann-1", "t1", selections);
    expect(loadDraft(store, "ann-1", "t1")).toEqual(selections);
    expect(loadDraft(store, "ann-1", "t2")).toBeNull();
    expect(loadDraft(store, "ann-2", "t1")).toBeNull();
  });

  it("clears after submission", () => {
    const store = new MemoryStore();
    saveDraft(store, "ann-1", "t1", selections);
    clearDraft(store, "ann-1", "t1");
    expect(loadDraft(store, "ann-1", "t1")).toBeNull();
  });

  it("tolerates corrupted payloads", () => {
    const store = new MemoryStore();
    store.setItem("scipress-draft:ann-1:t1", "{nope");
    expect(loadDraft(store, "ann-1", "t1")).toBeNull();
  });
});

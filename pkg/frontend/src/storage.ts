/** Local persistence: the annotator id (entered once) and per-task drafts,
 * so a reload or a failed POST never loses selections. */

import type { SelectionMap } from "./types.js";

export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

const ANNOTATOR_KEY = "scipress-annotator";

export function loadAnnotatorId(store: KeyValueStore): string | null {
  return store.getItem(ANNOTATOR_KEY);
}

export function saveAnnotatorId(store: KeyValueStore, id: string): void {
  store.setItem(ANNOTATOR_KEY, id);
}

function draftKey(annotatorId: string, taskId: string): string {
  return `scipress-draft:${annotatorId}:${taskId}`;
}

export function saveDraft(
  store: KeyValueStore,
  annotatorId: string,
  taskId: string,
  selections: SelectionMap,
): void {
  store.setItem(draftKey(annotatorId, taskId), JSON.stringify(selections));
}

export function loadDraft(
  store: KeyValueStore,
  annotatorId: string,
  taskId: string,
): SelectionMap | null {
  const raw = store.getItem(draftKey(annotatorId, taskId));
  if (raw === null) return null;
  try {
    return JSON.parse(raw) as SelectionMap;
  } catch {
    return null;
  }
}

export function clearDraft(
  store: KeyValueStore,
  annotatorId: string,
  taskId: string,
): void {
  store.removeItem(draftKey(annotatorId, taskId));
}

/** In-memory stand-in used by tests and as a fallback when localStorage is
 * unavailable. */
export class MemoryStore implements KeyValueStore {
  private data = new Map<string, string>();

  getItem(key: string): string | null {
    return this.data.has(key) ? (this.data.get(key) as string) : null;
  }

  setItem(key: string, value: string): void {
    this.data.set(key, value);
  }

  removeItem(key: string): void {
    this.data.delete(key);
  }
}

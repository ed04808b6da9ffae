/** Selection state for one task, mirroring the server's tie rules so bad
 * submissions are blocked before they leave the browser.
 *
 * Rules per dimension: best and worst must be non-empty and disjoint, except
 * the full tie (every slot selected as both) which means "no significant
 * difference".  Picking two bests or two worsts is a legal partial tie.
 */

import type { Selection, SelectionMap, Slot } from "./types.js";

export type Kind = "best" | "worst";

export function emptySelections(dimensions: string[]): SelectionMap {
  const map: SelectionMap = {};
  for (const d of dimensions) {
    map[d] = { best: [], worst: [] };
  }
  return map;
}

function sorted(slots: Iterable<Slot>): Slot[] {
  return [...new Set(slots)].sort();
}

function sameMembers(a: Slot[], b: Slot[]): boolean {
  if (a.length !== b.length) return false;
  const bs = new Set(b);
  return a.every((s) => bs.has(s));
}

export function isFullTie(selection: Selection, slots: Slot[]): boolean {
  return (
    sameMembers(selection.best, slots) && sameMembers(selection.worst, slots)
  );
}

/** Toggle one slot in the best or worst set.
 *
 * Selecting a slot on one side removes it from the other (you cannot mark a
 * system both best and worst by hand; that is what the tie button is for).
 * Any individual toggle after a full tie starts the dimension over.
 */
export function toggle(
  selections: SelectionMap,
  dimension: string,
  kind: Kind,
  slot: Slot,
  slots: Slot[],
): SelectionMap {
  const current = selections[dimension] ?? { best: [], worst: [] };
  let next: Selection;
  if (isFullTie(current, slots)) {
    next = { best: [], worst: [] };
    next[kind] = [slot];
  } else {
    const mine = new Set(current[kind]);
    const other = new Set(current[kind === "best" ? "worst" : "best"]);
    if (mine.has(slot)) {
      mine.delete(slot);
    } else {
      mine.add(slot);
      other.delete(slot);
    }
    next =
      kind === "best"
        ? { best: sorted(mine), worst: sorted(other) }
        : { best: sorted(other), worst: sorted(mine) };
  }
  return { ...selections, [dimension]: next };
}

/** The "no significant difference" action: select every slot as both best
 * and worst in one click; clicking again clears the dimension. */
export function toggleTie(
  selections: SelectionMap,
  dimension: string,
  slots: Slot[],
): SelectionMap {
  const current = selections[dimension] ?? { best: [], worst: [] };
  const next: Selection = isFullTie(current, slots)
    ? { best: [], worst: [] }
    : { best: sorted(slots), worst: sorted(slots) };
  return { ...selections, [dimension]: next };
}

/** Human-readable rule violation for one dimension, or null when valid. */
export function dimensionViolation(
  selection: Selection | undefined,
  slots: Slot[],
): string | null {
  if (!selection || selection.best.length === 0 || selection.worst.length === 0) {
    return "pick at least one best and one worst";
  }
  const known = new Set(slots);
  for (const s of [...selection.best, ...selection.worst]) {
    if (!known.has(s)) return `unknown slot ${s}`;
  }
  if (isFullTie(selection, slots)) return null;
  const worst = new Set(selection.worst);
  if (selection.best.some((s) => worst.has(s))) {
    return "best and worst overlap (use the tie button for a full tie)";
  }
  return null;
}

/** Map of dimension -> violation message for everything still invalid. */
export function violations(
  selections: SelectionMap,
  dimensions: string[],
  slots: Slot[],
): Record<string, string> {
  const out: Record<string, string> = {};
  for (const d of dimensions) {
    const violation = dimensionViolation(selections[d], slots);
    if (violation) out[d] = violation;
  }
  return out;
}

export function isComplete(
  selections: SelectionMap,
  dimensions: string[],
  slots: Slot[],
): boolean {
  return Object.keys(violations(selections, dimensions, slots)).length === 0;
}

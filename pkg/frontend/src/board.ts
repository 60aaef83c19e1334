// Mapping board: five parameter slots, each holding at most one emotion pin.
// The board can never express a mapping the server would reject: a slot has
// one pin by construction, and drops of labels missing from the palette are
// refused. One token may sit on several slots.

import type { BindingWire, ParameterKey } from "./types";
import { PARAMETERS } from "./types";

export type Board = Partial<Record<ParameterKey, string>>;

export type DropResult =
  | { status: "placed"; board: Board }
  | { status: "occupied"; occupant: string }
  | { status: "rejected"; reason: string };

export function emptyBoard(): Board {
  return {};
}

/**
 * Drop a token pin onto a parameter slot. An occupied slot is only
 * overwritten when `replaceConfirmed` is set; the caller is expected to ask
 * the user first.
 */
export function pinDrop(
  board: Board,
  tokenLabel: string,
  slot: ParameterKey,
  knownLabels: ReadonlySet<string>,
  replaceConfirmed = false,
): DropResult {
  if (!knownLabels.has(tokenLabel)) {
    return { status: "rejected", reason: `no token labelled "${tokenLabel}"` };
  }
  const occupant = board[slot];
  if (occupant !== undefined && occupant !== tokenLabel && !replaceConfirmed) {
    return { status: "occupied", occupant };
  }
  return { status: "placed", board: { ...board, [slot]: tokenLabel } };
}

export function clearSlot(board: Board, slot: ParameterKey): Board {
  const next = { ...board };
  delete next[slot];
  return next;
}

/** Remove every pin for a token (after token deletion), rename pins in place. */
export function dropToken(board: Board, tokenLabel: string): Board {
  const next: Board = {};
  for (const { key } of PARAMETERS) {
    if (board[key] !== undefined && board[key] !== tokenLabel) {
      next[key] = board[key];
    }
  }
  return next;
}

export function renameToken(board: Board, from: string, to: string): Board {
  const next: Board = {};
  for (const { key } of PARAMETERS) {
    const pin = board[key];
    if (pin !== undefined) {
      next[key] = pin === from ? to : pin;
    }
  }
  return next;
}

/** The board as wire bindings, ordered by the canonical parameter order. */
export function toBindings(board: Board): BindingWire[] {
  const bindings: BindingWire[] = [];
  for (const { key } of PARAMETERS) {
    const token = board[key];
    if (token !== undefined) {
      bindings.push({ token, parameter: key });
    }
  }
  return bindings;
}

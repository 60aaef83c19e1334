// Mapping-board semantics: one pin per slot, explicit replacement, pins only
// for known tokens, a token free to sit on several slots.

import { describe, expect, it } from "vitest";

import { clearSlot, dropToken, emptyBoard, pinDrop, renameToken, toBindings } from "../src/board";

const LABELS = new Set(["nostalgia", "worry", "love"]);

describe("mapping board", () => {
  it("places a pin on an empty slot", () => {
    const result = pinDrop(emptyBoard(), "nostalgia", "number_of_waves", LABELS);
    expect(result.status).toBe("placed");
    if (result.status === "placed") {
      expect(toBindings(result.board)).toEqual([
        { token: "nostalgia", parameter: "number_of_waves" },
      ]);
    }
  });

  it("asks before replacing an occupied slot", () => {
    const first = pinDrop(emptyBoard(), "nostalgia", "number_of_waves", LABELS);
    if (first.status !== "placed") throw new Error("setup failed");
    const second = pinDrop(first.board, "worry", "number_of_waves", LABELS);
    expect(second).toEqual({ status: "occupied", occupant: "nostalgia" });

    const confirmed = pinDrop(first.board, "worry", "number_of_waves", LABELS, true);
    expect(confirmed.status).toBe("placed");
    if (confirmed.status === "placed") {
      expect(confirmed.board.number_of_waves).toBe("worry");
    }
  });

  it("re-dropping the same token on its own slot is a no-op placement", () => {
    const first = pinDrop(emptyBoard(), "love", "global_distortion", LABELS);
    if (first.status !== "placed") throw new Error("setup failed");
    const again = pinDrop(first.board, "love", "global_distortion", LABELS);
    expect(again.status).toBe("placed");
  });

  it("rejects pins for labels missing from the palette", () => {
    const result = pinDrop(emptyBoard(), "ghost", "number_of_waves", LABELS);
    expect(result.status).toBe("rejected");
  });

  it("lets one token drive several parameters", () => {
    let board = emptyBoard();
    for (const key of ["global_distortion", "surface_distortion"] as const) {
      const result = pinDrop(board, "love", key, LABELS);
      if (result.status !== "placed") throw new Error("placement failed");
      board = result.board;
    }
    expect(toBindings(board)).toEqual([
      { token: "love", parameter: "surface_distortion" },
      { token: "love", parameter: "global_distortion" },
    ]);
  });

  it("clears slots and drops deleted tokens everywhere", () => {
    let board = emptyBoard();
    for (const [label, key] of [
      ["love", "global_distortion"],
      ["love", "surface_distortion"],
      ["worry", "number_of_waves"],
    ] as const) {
      const result = pinDrop(board, label, key, LABELS, true);
      if (result.status !== "placed") throw new Error("placement failed");
      board = result.board;
    }
    board = clearSlot(board, "surface_distortion");
    expect(board.surface_distortion).toBeUndefined();

    board = dropToken(board, "love");
    expect(toBindings(board)).toEqual([
      { token: "worry", parameter: "number_of_waves" },
    ]);
  });

  it("renames pins in place", () => {
    const first = pinDrop(emptyBoard(), "worry", "global_frequency", LABELS);
    if (first.status !== "placed") throw new Error("setup failed");
    const renamed = renameToken(first.board, "worry", "unease");
    expect(renamed.global_frequency).toBe("unease");
  });
});

// Client-side palette state. The server owns the edit log; this store tracks
// the tokens it last confirmed plus the next sequence number, and builds the
// edit events the UI sends. Lives in memory only.

import type {
  EditEventWire,
  PaletteResponse,
  ScoredLabel,
  TokenView,
} from "./types";
import { quantizeIntensity } from "./types";

export class PaletteStore {
  tokens: TokenView[] = [];
  private logLength = 0;

  /** Replace state with an AI suggestion; the server log restarts at zero. */
  seedFromExtraction(tokens: ScoredLabel[]): void {
    this.tokens = tokens.map((t) => ({
      label: t.label,
      intensity: t.intensity,
      provenance: "ai_suggested",
      renamed: false,
    }));
    this.logLength = 0;
  }

  /** Adopt the palette the server returned after an edit. */
  applyServerResponse(resp: PaletteResponse): void {
    this.tokens = resp.tokens;
    this.logLength = resp.log_length;
  }

  reset(): void {
    this.tokens = [];
    this.logLength = 0;
  }

  hasLabel(label: string): boolean {
    const key = label.trim().toLowerCase();
    return this.tokens.some((t) => t.label.toLowerCase() === key);
  }

  labelSet(): Set<string> {
    return new Set(this.tokens.map((t) => t.label));
  }

  nextSequence(): number {
    return this.logLength;
  }

  addEvent(label: string, intensity: number): EditEventWire {
    return {
      kind: "add",
      target_label: label.trim(),
      payload: quantizeIntensity(intensity),
      sequence: this.logLength,
    };
  }

  deleteEvent(label: string): EditEventWire {
    return { kind: "delete", target_label: label, payload: null, sequence: this.logLength };
  }

  renameEvent(from: string, to: string): EditEventWire {
    return { kind: "rename", target_label: from, payload: to.trim(), sequence: this.logLength };
  }

  rescoreEvent(label: string, intensity: number): EditEventWire {
    return {
      kind: "rescore",
      target_label: label,
      payload: quantizeIntensity(intensity),
      sequence: this.logLength,
    };
  }
}

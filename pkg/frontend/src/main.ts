// App wiring: chat pane, palette sliders, drag-to-map board, live preview,
// export. All state lives in memory; chat text is never written to any kind
// of persistent storage.

import * as api from "./api";
import { Board, clearSlot, dropToken, emptyBoard, pinDrop, renameToken, toBindings } from "./board";
import { IdleNudge } from "./nudge";
import { PaletteStore } from "./palette";
import { PreviewController } from "./preview";
import type { MeshJson, PaletteTokenWire, ParameterKey } from "./types";
import { INTENSITY_MAX, INTENSITY_MIN, INTENSITY_STEP, PARAMETERS } from "./types";
import { Viewer } from "./viewer";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

type Mode = "ai_assisted" | "manual";

let sessionId = "";
let mode: Mode = "ai_assisted";
let board: Board = emptyBoard();
let seed = 7;
const palette = new PaletteStore();

const chatLog = $("chat-log");
const chatInput = $<HTMLTextAreaElement>("chat-input");
const tokenList = $("token-list");
const staleBadge = $("stale-badge");

const viewer = new Viewer($<HTMLCanvasElement>("preview-canvas"));

function paletteWire(): PaletteTokenWire[] {
  return palette.tokens.map((t) => ({
    label: t.label,
    intensity: t.intensity,
    provenance: t.provenance,
  }));
}

const preview = new PreviewController<
  { palette: PaletteTokenWire[]; bindings: ReturnType<typeof toBindings>; seed: number },
  MeshJson
>({
  fetchMesh: async (state) => {
    const params = await api.resolve(state.palette, state.bindings);
    return api.mesh({ params, seed: state.seed });
  },
  onMesh: (mesh) => {
    staleBadge.hidden = true;
    viewer.setMesh(mesh);
  },
  onError: () => {
    staleBadge.hidden = false; // previous mesh stays on screen
  },
});

function refreshPreview(immediate = false): void {
  const state = { palette: paletteWire(), bindings: toBindings(board), seed };
  if (immediate) {
    preview.refreshNow(state);
  } else {
    preview.update(state);
  }
}

// -- chat ---------------------------------------------------------------------

function appendBubble(role: "user" | "assistant", text: string): void {
  const div = document.createElement("div");
  div.className = `bubble ${role}`;
  div.textContent = text;
  chatLog.appendChild(div);
  chatLog.scrollTop = chatLog.scrollHeight;
}

const nudge = new IdleNudge({
  onNudge: async () => {
    const reply = await api.chat(sessionId, "", true);
    appendBubble("assistant", reply);
  },
});

async function sendChat(): Promise<void> {
  const message = chatInput.value.trim();
  if (!message) return;
  chatInput.value = "";
  appendBubble("user", message);
  nudge.activity();
  try {
    const reply = await api.chat(sessionId, message);
    appendBubble("assistant", reply);
  } catch (error) {
    appendBubble("assistant", `(no reply: ${error instanceof Error ? error.message : error})`);
  }
}

async function extractPalette(): Promise<void> {
  try {
    const tokens = await api.extract(sessionId);
    palette.seedFromExtraction(tokens);
    renderTokens();
    refreshPreview();
  } catch (error) {
    appendBubble("assistant", `(extraction failed: ${error instanceof Error ? error.message : error})`);
  }
}

// -- palette ------------------------------------------------------------------

async function applyEdit(event: ReturnType<PaletteStore["addEvent"]>): Promise<void> {
  try {
    const resp = await api.editPalette(sessionId, event);
    palette.applyServerResponse(resp);
  } catch (error) {
    alert(`edit rejected: ${error instanceof Error ? error.message : error}`);
  }
  renderTokens();
  refreshPreview();
}

function renderTokens(): void {
  tokenList.replaceChildren();
  for (const token of palette.tokens) {
    const li = document.createElement("li");
    li.className = "token";

    const pin = document.createElement("span");
    pin.className = `pin ${token.provenance}`;
    pin.textContent = token.label;
    pin.draggable = true;
    pin.title = "Drag onto a parameter slot";
    pin.addEventListener("dragstart", (e) => {
      e.dataTransfer?.setData("text/phemotion-token", token.label);
    });
    pin.addEventListener("dblclick", () => {
      const next = prompt(`Rename "${token.label}" to:`, token.label);
      if (next && next.trim() && next.trim() !== token.label) {
        const from = token.label;
        const to = next.trim();
        void applyEdit(palette.renameEvent(from, to)).then(() => {
          board = renameToken(board, from, to);
          renderBoard();
          refreshPreview();
        });
      }
    });

    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = String(INTENSITY_MIN);
    slider.max = String(INTENSITY_MAX);
    slider.step = String(INTENSITY_STEP);
    slider.value = String(token.intensity);
    const value = document.createElement("span");
    value.className = "value";
    value.textContent = token.intensity.toFixed(1);
    slider.addEventListener("input", () => {
      value.textContent = Number(slider.value).toFixed(1);
    });
    slider.addEventListener("change", () => {
      void applyEdit(palette.rescoreEvent(token.label, Number(slider.value)));
    });

    const remove = document.createElement("button");
    remove.textContent = "×";
    remove.className = "remove";
    remove.title = "Delete token";
    remove.addEventListener("click", () => {
      void applyEdit(palette.deleteEvent(token.label)).then(() => {
        board = dropToken(board, token.label);
        renderBoard();
        refreshPreview();
      });
    });

    li.append(pin, slider, value, remove);
    tokenList.appendChild(li);
  }
  renderBoard();
}

// -- mapping board ------------------------------------------------------------

function renderBoard(): void {
  for (const { key } of PARAMETERS) {
    const slot = $(`slot-${key}`);
    const occupant = board[key];
    const label = slot.querySelector(".occupant") as HTMLElement;
    const clear = slot.querySelector(".clear") as HTMLButtonElement;
    if (occupant) {
      const token = palette.tokens.find((t) => t.label === occupant);
      label.textContent = token ? `${occupant} (${token.intensity.toFixed(1)})` : occupant;
      slot.classList.add("bound");
      clear.hidden = false;
    } else {
      label.textContent = "drop an emotion pin";
      slot.classList.remove("bound");
      clear.hidden = true;
    }
  }
}

function buildBoardDom(): void {
  const groups: Record<string, HTMLElement> = {
    surface_texture: $("group-surface"),
    overall_shape: $("group-overall"),
  };
  for (const info of PARAMETERS) {
    const slot = document.createElement("div");
    slot.className = "slot";
    slot.id = `slot-${info.key}`;

    const name = document.createElement("div");
    name.className = "slot-name";
    name.textContent = info.label + (info.kind === "countable" ? " (count)" : "");

    const occupant = document.createElement("div");
    occupant.className = "occupant";

    const clear = document.createElement("button");
    clear.className = "clear";
    clear.textContent = "clear";
    clear.addEventListener("click", () => {
      board = clearSlot(board, info.key);
      renderBoard();
      refreshPreview();
    });

    slot.append(name, occupant, clear);
    slot.addEventListener("dragover", (e) => {
      if (e.dataTransfer?.types.includes("text/phemotion-token")) {
        e.preventDefault();
        slot.classList.add("drag-over");
      }
    });
    slot.addEventListener("dragleave", () => slot.classList.remove("drag-over"));
    slot.addEventListener("drop", (e) => {
      e.preventDefault();
      slot.classList.remove("drag-over");
      const label = e.dataTransfer?.getData("text/phemotion-token");
      if (!label) return;
      dropPin(label, info.key);
    });
    groups[info.group].appendChild(slot);
  }
}

function dropPin(label: string, key: ParameterKey): void {
  let result = pinDrop(board, label, key, palette.labelSet());
  if (result.status === "occupied") {
    if (!confirm(`Replace "${result.occupant}" on this slot with "${label}"?`)) {
      return;
    }
    result = pinDrop(board, label, key, palette.labelSet(), true);
  }
  if (result.status === "placed") {
    board = result.board;
    renderBoard();
    refreshPreview();
  }
}

// -- export ---------------------------------------------------------------------

async function downloadExport(): Promise<void> {
  try {
    const blob = await api.exportZip(paletteWire(), toBindings(board), seed);
    const url = URL.createObjectURL(blob);
    const a = document.createElement("a");
    a.href = url;
    a.download = "phemotion_export.zip";
    a.click();
    URL.revokeObjectURL(url);
  } catch (error) {
    alert(`export failed: ${error instanceof Error ? error.message : error}`);
  }
}

// -- mode + boot ------------------------------------------------------------------

function applyMode(): void {
  document.body.dataset.mode = mode;
  $("chat-pane").hidden = mode === "manual";
  nudge.setMode(mode === "ai_assisted");
}

async function boot(): Promise<void> {
  sessionId = await api.createSession();
  buildBoardDom();
  renderTokens();
  applyMode();
  refreshPreview(true);

  $("chat-form").addEventListener("submit", (e) => {
    e.preventDefault();
    void sendChat();
  });
  chatInput.addEventListener("input", () => nudge.activity());
  chatInput.addEventListener("focus", () => nudge.setFocused(true));
  chatInput.addEventListener("blur", () => nudge.setFocused(false));
  $("extract-btn").addEventListener("click", () => void extractPalette());

  $("add-form").addEventListener("submit", (e) => {
    e.preventDefault();
    const labelInput = $<HTMLInputElement>("add-label");
    const intensityInput = $<HTMLInputElement>("add-intensity");
    const label = labelInput.value.trim();
    if (!label || palette.hasLabel(label)) return;
    void applyEdit(palette.addEvent(label, Number(intensityInput.value || "1")));
    labelInput.value = "";
  });

  const seedInput = $<HTMLInputElement>("seed-input");
  seedInput.value = String(seed);
  seedInput.addEventListener("change", () => {
    seed = Math.max(0, Math.floor(Number(seedInput.value) || 0));
    refreshPreview();
  });

  $<HTMLSelectElement>("mode-select").addEventListener("change", (e) => {
    mode = (e.target as HTMLSelectElement).value as Mode;
    applyMode();
  });

  $("export-btn").addEventListener("click", () => void downloadExport());

  window.addEventListener("beforeunload", () => {
    void api.deleteSession(sessionId);
  });
}

void boot();

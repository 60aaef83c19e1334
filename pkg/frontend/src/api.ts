// Typed client for the phemotion HTTP API. Every server interaction of the
// app goes through this module; nothing here touches persistent storage.

import type {
  BindingWire,
  EditEventWire,
  MeshJson,
  PaletteResponse,
  PaletteTokenWire,
  ResolvedParams,
  ScoredLabel,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export interface MeshRequest {
  params: ResolvedParams;
  seed: number;
  subdivision?: number;
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(path, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      detail = body.detail ?? JSON.stringify(body);
    } catch {
      // keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

function post<T>(path: string, body: unknown): Promise<T> {
  return request<T>(path, { method: "POST", body: JSON.stringify(body) });
}

export async function createSession(): Promise<string> {
  const body = await post<{ session_id: string }>("/api/session", {});
  return body.session_id;
}

export async function deleteSession(sessionId: string): Promise<void> {
  await request(`/api/session/${sessionId}`, { method: "DELETE" });
}

export async function chat(
  sessionId: string,
  message: string,
  nudge = false,
): Promise<string> {
  const body = await post<{ reply: string }>("/api/chat", {
    session_id: sessionId,
    message,
    nudge,
  });
  return body.reply;
}

export async function extract(sessionId: string): Promise<ScoredLabel[]> {
  const body = await post<{ tokens: ScoredLabel[] }>("/api/extract", {
    session_id: sessionId,
  });
  return body.tokens;
}

export async function score(
  sessionId: string,
  labels: string[],
): Promise<ScoredLabel[]> {
  const body = await post<{ intensities: ScoredLabel[] }>("/api/score", {
    session_id: sessionId,
    labels,
  });
  return body.intensities;
}

export function editPalette(
  sessionId: string,
  event: EditEventWire,
): Promise<PaletteResponse> {
  return post<PaletteResponse>("/api/palette/edit", {
    session_id: sessionId,
    event,
  });
}

export function resolve(
  palette: PaletteTokenWire[],
  bindings: BindingWire[],
): Promise<ResolvedParams> {
  return post<ResolvedParams>("/api/resolve", { palette, bindings });
}

export function mesh(req: MeshRequest): Promise<MeshJson> {
  return post<MeshJson>("/api/mesh", req);
}

export async function exportZip(
  palette: PaletteTokenWire[],
  bindings: BindingWire[],
  seed: number,
  subdivision?: number,
): Promise<Blob> {
  const resp = await fetch("/api/export", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ palette, bindings, seed, subdivision }),
  });
  if (!resp.ok) {
    throw new ApiError(resp.status, resp.statusText);
  }
  return resp.blob();
}

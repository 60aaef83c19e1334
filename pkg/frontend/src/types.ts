// Wire types for the phemotion HTTP API.

export type ParameterKey =
  | "number_of_waves"
  | "global_distortion"
  | "global_frequency"
  | "surface_distortion"
  | "surface_frequency";

export type ParameterGroup = "surface_texture" | "overall_shape";

export interface ParameterInfo {
  key: ParameterKey;
  group: ParameterGroup;
  kind: "countable" | "continuous";
  label: string;
}

export const PARAMETERS: readonly ParameterInfo[] = [
  { key: "surface_distortion", group: "surface_texture", kind: "continuous", label: "Surface distortion" },
  { key: "surface_frequency", group: "surface_texture", kind: "continuous", label: "Surface frequency" },
  { key: "number_of_waves", group: "surface_texture", kind: "countable", label: "Number of waves" },
  { key: "global_distortion", group: "overall_shape", kind: "continuous", label: "Global distortion" },
  { key: "global_frequency", group: "overall_shape", kind: "continuous", label: "Global frequency" },
] as const;

export type ResolvedParams = Record<ParameterKey, number>;

export type Provenance = "ai_suggested" | "user_added";

export interface TokenView {
  label: string;
  intensity: number;
  provenance: Provenance;
  renamed: boolean;
}

export interface ScoredLabel {
  label: string;
  intensity: number;
}

export interface BindingWire {
  token: string;
  parameter: ParameterKey;
}

export interface PaletteTokenWire {
  label: string;
  intensity: number;
  provenance: Provenance;
}

export interface MeshJson {
  positions: number[];
  normals: number[];
  indices: number[];
  vertex_count: number;
  face_count: number;
}

export interface PaletteResponse {
  tokens: TokenView[];
  log_length: number;
}

export type EditKind = "add" | "delete" | "rename" | "rescore";

export interface EditEventWire {
  kind: EditKind;
  target_label: string;
  payload: number | string | null;
  sequence: number;
}

export const INTENSITY_MIN = 0;
export const INTENSITY_MAX = 4.5;
export const INTENSITY_STEP = 0.1;

/** Round half-up onto the 0.1 grid and clamp to [0, 4.5]. */
export function quantizeIntensity(value: number): number {
  const clamped = Math.min(INTENSITY_MAX, Math.max(INTENSITY_MIN, value));
  return Math.floor(clamped * 10 + 0.5) / 10;
}

"""JSON manifest: palette, bindings, resolved parameters, generation settings.

The manifest is the durable record of a design session. Its schema is strict:
unknown fields are rejected, the resolved block must re-derive exactly from
the tokens and bindings, and read(write(x)) is the identity.
"""

from __future__ import annotations

import json
import math

from .errors import (
    DuplicateLabel,
    IntensityOutOfRange,
    InvalidLabel,
    InvalidMatrix,
    ParseError,
    SchemaViolation,
    SubdivisionOutOfRange,
    VersionMismatch,
)
from .mesh import GenSpec
from .palette import (
    Binding,
    EmotionToken,
    MappingMatrix,
    Palette,
    Provenance,
    ShapeParameterId,
    ShapeParams,
    resolve_parameters,
)

MANIFEST_VERSION = 1

_TOP_KEYS = {"version", "tokens", "bindings", "resolved", "seed", "subdivision"}
_TOKEN_KEYS = {"label", "intensity", "provenance"}
_BINDING_KEYS = {"token", "parameter"}
_RESOLVED_KEYS = set(p.key for p in ShapeParameterId)


def _resolved_block(params: ShapeParams) -> dict:
    return {
        "number_of_waves": params.waves,
        "global_distortion": params.global_distortion,
        "global_frequency": params.global_frequency,
        "surface_distortion": params.surface_distortion,
        "surface_frequency": params.surface_frequency,
    }


def write_manifest(matrix: MappingMatrix, spec: GenSpec) -> bytes:
    """Serialize a mapping matrix plus generation settings as manifest JSON.

    The GenSpec's params must equal the resolution of the matrix; anything
    else would write a manifest that fails its own consistency check on read.
    """
    resolved = resolve_parameters(matrix)  # raises InvalidMatrix
    if resolved != spec.params:
        raise SchemaViolation("spec params do not match the resolved mapping")
    doc = {
        "version": MANIFEST_VERSION,
        "tokens": [
            {"label": t.label, "intensity": t.intensity, "provenance": t.provenance.value}
            for t in matrix.palette.tokens
        ],
        "bindings": [
            {"token": b.token_label, "parameter": b.parameter.key}
            for b in matrix.bindings
        ],
        "resolved": _resolved_block(resolved),
        "seed": spec.seed,
        "subdivision": spec.subdivision,
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def _require_keys(obj: dict, expected: set, where: str) -> None:
    keys = set(obj)
    missing = expected - keys
    unknown = keys - expected
    if missing:
        raise SchemaViolation(f"{where}: missing fields {sorted(missing)}")
    if unknown:
        raise SchemaViolation(f"{where}: unknown fields {sorted(unknown)}")


def _as_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaViolation(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise SchemaViolation(f"{where}: non-finite number")
    return float(value)


def read_manifest(data) -> tuple[MappingMatrix, GenSpec]:
    """Parse manifest bytes back into a MappingMatrix and GenSpec.

    Raises ParseError for malformed JSON, VersionMismatch for foreign
    versions, and SchemaViolation for anything that breaks the schema or the
    resolved-block consistency invariant.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"manifest is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaViolation("manifest root must be a JSON object")
    _require_keys(doc, _TOP_KEYS, "manifest")

    if doc["version"] != MANIFEST_VERSION:
        raise VersionMismatch(f"unsupported manifest version {doc['version']!r}")

    if not isinstance(doc["tokens"], list):
        raise SchemaViolation("tokens must be a list")
    tokens = []
    for i, entry in enumerate(doc["tokens"]):
        if not isinstance(entry, dict):
            raise SchemaViolation(f"tokens[{i}] must be an object")
        _require_keys(entry, _TOKEN_KEYS, f"tokens[{i}]")
        try:
            provenance = Provenance(entry["provenance"])
        except ValueError as exc:
            raise SchemaViolation(f"tokens[{i}]: bad provenance {entry['provenance']!r}") from exc
        try:
            tokens.append(EmotionToken(entry["label"],
                                       _as_number(entry["intensity"], f"tokens[{i}]"),
                                       provenance))
        except (InvalidLabel, IntensityOutOfRange) as exc:
            raise SchemaViolation(f"tokens[{i}]: {exc}") from exc

    if not isinstance(doc["bindings"], list):
        raise SchemaViolation("bindings must be a list")
    bindings = []
    for i, entry in enumerate(doc["bindings"]):
        if not isinstance(entry, dict):
            raise SchemaViolation(f"bindings[{i}] must be an object")
        _require_keys(entry, _BINDING_KEYS, f"bindings[{i}]")
        try:
            parameter = ShapeParameterId.from_key(entry["parameter"])
        except ValueError as exc:
            raise SchemaViolation(f"bindings[{i}]: {exc}") from exc
        if not isinstance(entry["token"], str):
            raise SchemaViolation(f"bindings[{i}]: token must be text")
        bindings.append(Binding(entry["token"], parameter))

    try:
        matrix = MappingMatrix(Palette.seeded(tokens), tuple(bindings))
        matrix.validate()
    except (InvalidMatrix, DuplicateLabel) as exc:
        raise SchemaViolation(str(exc)) from exc

    resolved_doc = doc["resolved"]
    if not isinstance(resolved_doc, dict):
        raise SchemaViolation("resolved must be an object")
    _require_keys(resolved_doc, _RESOLVED_KEYS, "resolved")
    waves_raw = resolved_doc["number_of_waves"]
    if isinstance(waves_raw, bool) or not isinstance(waves_raw, int):
        raise SchemaViolation("resolved.number_of_waves must be an integer")
    try:
        resolved = ShapeParams(
            waves=waves_raw,
            global_distortion=_as_number(resolved_doc["global_distortion"], "resolved"),
            global_frequency=_as_number(resolved_doc["global_frequency"], "resolved"),
            surface_distortion=_as_number(resolved_doc["surface_distortion"], "resolved"),
            surface_frequency=_as_number(resolved_doc["surface_frequency"], "resolved"),
        )
    except ValueError as exc:
        raise SchemaViolation(f"resolved: {exc}") from exc

    if resolve_parameters(matrix) != resolved:
        raise SchemaViolation("resolved block does not match tokens and bindings")

    seed = doc["seed"]
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise SchemaViolation("seed must be an integer")
    subdivision = doc["subdivision"]
    if isinstance(subdivision, bool) or not isinstance(subdivision, int):
        raise SchemaViolation("subdivision must be an integer")
    try:
        spec = GenSpec(params=resolved, seed=seed, subdivision=subdivision)
    except (SubdivisionOutOfRange, ValueError) as exc:
        raise SchemaViolation(str(exc)) from exc

    return matrix, spec

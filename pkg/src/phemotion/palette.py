"""Affective palette: emotion tokens, edit history, and token-to-parameter mapping.

Everything here is an immutable value; the operations are pure functions, so
palettes can be shared freely across threads and replayed deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Union

from .errors import (
    DuplicateLabel,
    IntensityOutOfRange,
    InvalidLabel,
    InvalidMatrix,
    SequenceGap,
    UnknownTarget,
)

INTENSITY_MIN = 0.0
INTENSITY_MAX = 4.5
MAX_LABEL_LEN = 40


def quantize_intensity(value: float) -> float:
    """Clamp to [0, 4.5] and round half-up onto the 0.1 grid."""
    v = min(max(float(value), INTENSITY_MIN), INTENSITY_MAX)
    return math.floor(v * 10.0 + 0.5) / 10.0


def intensity_on_grid(value: float) -> bool:
    """True when value is inside [0, 4.5] and a 0.1 multiple."""
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        return False
    if not math.isfinite(value):
        return False
    if not INTENSITY_MIN <= value <= INTENSITY_MAX:
        return False
    return abs(value * 10.0 - round(value * 10.0)) < 1e-9


def _clean_label(label: str) -> str:
    if not isinstance(label, str):
        raise InvalidLabel(f"label must be text, got {type(label).__name__}")
    trimmed = label.strip()
    if not trimmed:
        raise InvalidLabel("label is empty")
    if len(trimmed) > MAX_LABEL_LEN:
        raise InvalidLabel(f"label exceeds {MAX_LABEL_LEN} characters: {trimmed!r}")
    return trimmed


class Provenance(str, Enum):
    AI_SUGGESTED = "ai_suggested"
    USER_ADDED = "user_added"


class EditKind(str, Enum):
    ADD = "add"
    DELETE = "delete"
    RENAME = "rename"
    RESCORE = "rescore"


class ShapeParameterId(Enum):
    """The five drivable geometry parameters.

    Each member carries its wire name, conceptual group, value kind, and the
    closed numeric range resolution maps intensities onto.
    """

    NUMBER_OF_WAVES = ("number_of_waves", "surface_texture", "countable", 0.0, 12.0)
    GLOBAL_DISTORTION = ("global_distortion", "overall_shape", "continuous", 0.0, 0.5)
    GLOBAL_FREQUENCY = ("global_frequency", "overall_shape", "continuous", 0.5, 4.0)
    SURFACE_DISTORTION = ("surface_distortion", "surface_texture", "continuous", 0.0, 0.25)
    SURFACE_FREQUENCY = ("surface_frequency", "surface_texture", "continuous", 2.0, 10.0)

    def __init__(self, key: str, group: str, kind: str, lo: float, hi: float):
        self.key = key
        self.group = group
        self.kind = kind
        self.lo = lo
        self.hi = hi

    @classmethod
    def from_key(cls, key: str) -> "ShapeParameterId":
        for member in cls:
            if member.key == key:
                return member
        raise ValueError(f"unknown shape parameter: {key!r}")


PARAMETER_KEYS = tuple(p.key for p in ShapeParameterId)


@dataclass(frozen=True)
class EmotionToken:
    """A named emotion with a 0-4.5 intensity and provenance."""

    label: str
    intensity: float
    provenance: Provenance = Provenance.USER_ADDED
    renamed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "label", _clean_label(self.label))
        if not intensity_on_grid(self.intensity):
            raise IntensityOutOfRange(
                f"intensity {self.intensity!r} is outside [0, 4.5] or off the 0.1 grid"
            )
        object.__setattr__(self, "intensity", float(self.intensity))
        object.__setattr__(self, "provenance", Provenance(self.provenance))


@dataclass(frozen=True)
class EditEvent:
    """One logged palette edit; sequence numbers are gap-free from 0."""

    kind: EditKind
    target_label: str
    payload: Union[float, str, None]
    sequence: int

    def __post_init__(self):
        object.__setattr__(self, "kind", EditKind(self.kind))


@dataclass(frozen=True)
class Palette:
    """Ordered emotion tokens plus the full edit history that produced them."""

    tokens: tuple[EmotionToken, ...] = ()
    edit_log: tuple[EditEvent, ...] = ()

    @classmethod
    def seeded(cls, tokens: Iterable[EmotionToken]) -> "Palette":
        """Start a palette from an initial suggestion; the log starts empty."""
        toks = tuple(tokens)
        seen: set[str] = set()
        for t in toks:
            key = t.label.casefold()
            if key in seen:
                raise DuplicateLabel(f"duplicate label in seed tokens: {t.label!r}")
            seen.add(key)
        return cls(tokens=toks)

    def find(self, label: str) -> Optional[EmotionToken]:
        """Case-insensitive lookup."""
        key = label.strip().casefold()
        for t in self.tokens:
            if t.label.casefold() == key:
                return t
        return None


def _require_number(payload, what: str) -> float:
    if isinstance(payload, bool) or not isinstance(payload, (int, float)):
        raise IntensityOutOfRange(f"{what} payload must be a number, got {payload!r}")
    return float(payload)


def apply_edit(palette: Palette, event: EditEvent) -> Palette:
    """Apply one edit event, returning a new palette with the event logged.

    The event's sequence number must equal the current log length; targets
    must exist for delete/rename/rescore; labels stay unique (case-insensitive).
    """
    if event.sequence != len(palette.edit_log):
        raise SequenceGap(
            f"expected sequence {len(palette.edit_log)}, got {event.sequence}"
        )

    tokens = list(palette.tokens)
    kind = event.kind

    if kind is EditKind.ADD:
        label = _clean_label(event.target_label)
        if palette.find(label) is not None:
            raise DuplicateLabel(f"label already present: {label!r}")
        intensity = _require_number(event.payload, "add")
        if not intensity_on_grid(intensity):
            raise IntensityOutOfRange(
                f"intensity {intensity!r} is outside [0, 4.5] or off the 0.1 grid"
            )
        tokens.append(EmotionToken(label, intensity, Provenance.USER_ADDED))
    else:
        target = palette.find(event.target_label)
        if target is None:
            raise UnknownTarget(f"no token labelled {event.target_label!r}")
        idx = tokens.index(target)
        if kind is EditKind.DELETE:
            del tokens[idx]
        elif kind is EditKind.RENAME:
            if not isinstance(event.payload, str):
                raise InvalidLabel("rename payload must be the new label text")
            new_label = _clean_label(event.payload)
            existing = palette.find(new_label)
            if existing is not None and existing is not target:
                raise DuplicateLabel(f"label already present: {new_label!r}")
            tokens[idx] = EmotionToken(
                new_label, target.intensity, target.provenance, renamed=True
            )
        elif kind is EditKind.RESCORE:
            intensity = _require_number(event.payload, "rescore")
            if not intensity_on_grid(intensity):
                raise IntensityOutOfRange(
                    f"intensity {intensity!r} is outside [0, 4.5] or off the 0.1 grid"
                )
            tokens[idx] = EmotionToken(
                target.label, intensity, target.provenance, target.renamed
            )

    return Palette(tokens=tuple(tokens), edit_log=palette.edit_log + (event,))


def replay(initial_tokens: Iterable[EmotionToken], events: Iterable[EditEvent]) -> Palette:
    """Re-apply an edit log from a base token set; a pure fold over apply_edit."""
    palette = Palette.seeded(initial_tokens)
    for event in events:
        palette = apply_edit(palette, event)
    return palette


@dataclass(frozen=True)
class Binding:
    """One ⟨token, parameter⟩ edge of the mapping matrix."""

    token_label: str
    parameter: ShapeParameterId


@dataclass(frozen=True)
class MappingMatrix:
    """Token-to-parameter bindings over a palette.

    A parameter is driven by at most one token; a token may drive several
    parameters.
    """

    palette: Palette
    bindings: tuple[Binding, ...] = ()

    def validate(self) -> None:
        seen: set[ShapeParameterId] = set()
        for b in self.bindings:
            if self.palette.find(b.token_label) is None:
                raise InvalidMatrix(f"binding references unknown token {b.token_label!r}")
            if b.parameter in seen:
                raise InvalidMatrix(f"parameter bound twice: {b.parameter.key}")
            seen.add(b.parameter)


@dataclass(frozen=True)
class ShapeParams:
    """Resolved values for the five geometry parameters.

    Defaults are the neutral sphere: zero amplitudes, minimum frequencies,
    zero waves.
    """

    waves: int = 0
    global_distortion: float = 0.0
    global_frequency: float = 0.5
    surface_distortion: float = 0.0
    surface_frequency: float = 2.0

    def __post_init__(self):
        if isinstance(self.waves, bool) or not isinstance(self.waves, int):
            raise ValueError("waves must be an integer")
        checks = (
            ("waves", self.waves, ShapeParameterId.NUMBER_OF_WAVES),
            ("global_distortion", self.global_distortion, ShapeParameterId.GLOBAL_DISTORTION),
            ("global_frequency", self.global_frequency, ShapeParameterId.GLOBAL_FREQUENCY),
            ("surface_distortion", self.surface_distortion, ShapeParameterId.SURFACE_DISTORTION),
            ("surface_frequency", self.surface_frequency, ShapeParameterId.SURFACE_FREQUENCY),
        )
        for name, value, pid in checks:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"{name} must be numeric")
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            if not pid.lo <= value <= pid.hi:
                raise ValueError(f"{name}={value} outside [{pid.lo}, {pid.hi}]")
        for name in ("global_distortion", "global_frequency",
                     "surface_distortion", "surface_frequency"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def value_of(self, pid: ShapeParameterId) -> float:
        return getattr(self, "waves" if pid is ShapeParameterId.NUMBER_OF_WAVES else pid.key)


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def resolve_parameters(matrix: MappingMatrix) -> ShapeParams:
    """Resolve a mapping matrix into concrete parameter values.

    Each bound parameter takes lo + (intensity / 4.5) * (hi - lo); the wave
    count additionally rounds half-up. Unbound parameters keep the neutral
    defaults.
    """
    matrix.validate()
    values: dict[str, float] = {}
    for b in matrix.bindings:
        token = matrix.palette.find(b.token_label)
        assert token is not None  # validate() guarantees it
        pid = b.parameter
        values[pid.key] = pid.lo + (token.intensity / INTENSITY_MAX) * (pid.hi - pid.lo)

    waves_raw = values.pop(ShapeParameterId.NUMBER_OF_WAVES.key, None)
    kwargs: dict = {}
    if waves_raw is not None:
        kwargs["waves"] = _round_half_up(waves_raw)
    kwargs.update(values)
    return ShapeParams(**kwargs)

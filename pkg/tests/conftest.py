import pytest

from phemotion.mesh import GenSpec

# One line per acceptance criterion, printed at the end of the run.
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
from phemotion.palette import (
    Binding,
    EmotionToken,
    MappingMatrix,
    Palette,
    Provenance,
    ShapeParameterId,
    resolve_parameters,
)

P = ShapeParameterId

# Five-token palette with one binding per parameter, used across the suite.
SAMPLE_TOKENS = (
    ("Nostalgia", 4.0, P.NUMBER_OF_WAVES),
    ("Happiness", 3.5, P.SURFACE_FREQUENCY),
    ("Anticipation", 3.0, P.GLOBAL_FREQUENCY),
    ("Worry", 2.0, P.GLOBAL_DISTORTION),
    ("Satisfaction", 3.0, P.SURFACE_DISTORTION),
)


def sample_matrix() -> MappingMatrix:
    palette = Palette.seeded(
        EmotionToken(label, intensity, Provenance.AI_SUGGESTED)
        for label, intensity, _ in SAMPLE_TOKENS
    )
    bindings = tuple(Binding(label, pid) for label, _, pid in SAMPLE_TOKENS)
    return MappingMatrix(palette, bindings)


@pytest.fixture
def full_matrix() -> MappingMatrix:
    return sample_matrix()


@pytest.fixture
def full_spec(full_matrix) -> GenSpec:
    return GenSpec(params=resolve_parameters(full_matrix), seed=20240601, subdivision=3)

"""phemotion: turn emotion palettes into parametric, fabrication-ready 3D forms.

The library is organized around a small pipeline: an affective palette of
emotion tokens (palette), a deterministic deformed-sphere geometry kernel
(noise, mesh), OBJ and manifest serialization (objio, manifest), a chat
provider pipeline with an offline mock (pipeline), and an HTTP/CLI layer
(server, cli) tying it together.
"""

from . import errors
from .manifest import MANIFEST_VERSION, read_manifest, write_manifest
from .mesh import (
    GenSpec,
    Mesh,
    generate_legend,
    generate_mesh,
    legend_specs,
    radius_field,
    unit_icosphere,
    vertex_normals,
)
from .noise import noise3, noise3_field, permutation_table, splitmix64_stream
from .objio import write_obj
from .palette import (
    Binding,
    EditEvent,
    EditKind,
    EmotionToken,
    MappingMatrix,
    Palette,
    Provenance,
    ShapeParameterId,
    ShapeParams,
    apply_edit,
    intensity_on_grid,
    quantize_intensity,
    replay,
    resolve_parameters,
)
from .pipeline import (
    ChatSession,
    ExtractionResult,
    Message,
    MockProvider,
    ProviderConfig,
    RemoteProvider,
    ScoredLabel,
    elicit_reply,
    extract_tokens,
    make_provider,
    mock_provider,
    score_intensity,
)
from .server import ServerConfig, create_app

__version__ = "0.1.0"

__all__ = [
    "Binding",
    "ChatSession",
    "EditEvent",
    "EditKind",
    "EmotionToken",
    "ExtractionResult",
    "GenSpec",
    "MANIFEST_VERSION",
    "MappingMatrix",
    "Mesh",
    "Message",
    "MockProvider",
    "Palette",
    "Provenance",
    "ProviderConfig",
    "RemoteProvider",
    "ScoredLabel",
    "ServerConfig",
    "ShapeParameterId",
    "ShapeParams",
    "apply_edit",
    "create_app",
    "elicit_reply",
    "errors",
    "extract_tokens",
    "generate_legend",
    "generate_mesh",
    "intensity_on_grid",
    "legend_specs",
    "make_provider",
    "mock_provider",
    "noise3",
    "noise3_field",
    "permutation_table",
    "quantize_intensity",
    "radius_field",
    "read_manifest",
    "replay",
    "resolve_parameters",
    "score_intensity",
    "splitmix64_stream",
    "unit_icosphere",
    "vertex_normals",
    "write_manifest",
    "write_obj",
]

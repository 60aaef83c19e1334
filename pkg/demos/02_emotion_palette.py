"""
Build an emotion palette and map it to geometry
===============================================

The manual workflow: add emotion tokens with intensities, edit them (every
edit is logged), bind tokens to shape parameters, and resolve the bindings
into concrete values.
"""

from phemotion import (
    Binding,
    EditEvent,
    MappingMatrix,
    Palette,
    ShapeParameterId,
    apply_edit,
    replay,
    resolve_parameters,
)

# Start from an empty palette and narrate a design session as edit events.
palette = Palette()
palette = apply_edit(palette, EditEvent("add", "nostalgia", 4.0, 0))
palette = apply_edit(palette, EditEvent("add", "worry", 2.0, 1))
palette = apply_edit(palette, EditEvent("add", "joy", 3.5, 2))
palette = apply_edit(palette, EditEvent("rename", "joy", "quiet joy", 3))
palette = apply_edit(palette, EditEvent("rescore", "worry", 2.5, 4))

for token in palette.tokens:
    flag = " (renamed)" if token.renamed else ""
    print(f"  {token.label}: {token.intensity}{flag}")

# The log is the palette's full history; replaying it from the same start
# reproduces the same tokens.
assert replay((), palette.edit_log).tokens == palette.tokens
print(f"edit log: {len(palette.edit_log)} events, replay verified")

# Bind tokens to parameters. One token may drive several parameters, but a
# parameter accepts at most one driver.
matrix = MappingMatrix(palette, (
    Binding("nostalgia", ShapeParameterId.NUMBER_OF_WAVES),
    Binding("quiet joy", ShapeParameterId.SURFACE_FREQUENCY),
    Binding("worry", ShapeParameterId.GLOBAL_DISTORTION),
    Binding("worry", ShapeParameterId.GLOBAL_FREQUENCY),
))

params = resolve_parameters(matrix)
print(f"resolved: waves={params.waves}, "
      f"global=({params.global_distortion:.3f}, {params.global_frequency:.3f}), "
      f"surface=({params.surface_distortion:.3f}, {params.surface_frequency:.3f})")

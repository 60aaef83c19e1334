"""
Render the attribute legend
===========================

A grid of sample forms showing how the two parameter groups combine: rows
sweep the surface-texture group (surface distortion, surface frequency,
wave count), columns sweep the overall-shape group (global distortion,
global frequency). Cell (0, 0) is the untouched sphere.
"""

from pathlib import Path

from phemotion import generate_legend, write_obj

out_dir = Path("legend_out")
out_dir.mkdir(exist_ok=True)

for (i, j), spec, mesh in generate_legend(rows=4, cols=4, seed=7, subdivision=3):
    path = out_dir / f"legend_r{i}_c{j}.obj"
    path.write_bytes(write_obj(mesh))
    p = spec.params
    print(f"cell ({i},{j}): waves={p.waves:2d} "
          f"surface=({p.surface_distortion:.3f}, {p.surface_frequency:.2f}) "
          f"overall=({p.global_distortion:.3f}, {p.global_frequency:.2f}) -> {path.name}")

print(f"\n16 sample forms in {out_dir}/ - print a few as a tactile reference set")

"""Headless command line: render, extract, score, legend, serve.

Exit codes: 0 success, 2 usage, 3 provider failure, 4 schema/validation
failure, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    EmptyReply,
    MalformedProviderOutput,
    PhemotionError,
    ProviderUnavailable,
    TooFewTokens,
)
from .manifest import read_manifest
from .mesh import GenSpec, generate_legend, generate_mesh
from .objio import write_obj
from .pipeline import ProviderConfig, make_provider, mock_provider
from .server import ServerConfig, create_app

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PROVIDER = 3
EXIT_SCHEMA = 4
EXIT_IO = 5

_PROVIDER_ERRORS = (ProviderUnavailable, EmptyReply, MalformedProviderOutput, TooFewTokens)


def _provider_from_args(args) -> object:
    if args.provider == "mock":
        return mock_provider(getattr(args, "seed", 0) or 0)
    return make_provider(ProviderConfig.remote_from_env())


def _cmd_render(args) -> int:
    data = Path(args.manifest).read_bytes()
    matrix, spec = read_manifest(data)
    if args.seed is not None or args.subdiv is not None:
        spec = GenSpec(
            params=spec.params,
            seed=spec.seed if args.seed is None else args.seed,
            subdivision=spec.subdivision if args.subdiv is None else args.subdiv,
        )
    Path(args.out).write_bytes(write_obj(generate_mesh(spec)))
    return EXIT_OK


def _cmd_extract(args) -> int:
    from .pipeline import extract_tokens

    transcript = Path(args.transcript).read_text("utf-8")
    result = extract_tokens(transcript, _provider_from_args(args))
    json.dump(
        {"tokens": [{"label": t.label, "intensity": t.intensity} for t in result.tokens]},
        sys.stdout, indent=2,
    )
    sys.stdout.write("\n")
    return EXIT_OK


def _cmd_score(args) -> int:
    from .pipeline import score_intensity

    transcript = Path(args.transcript).read_text("utf-8")
    labels = [l.strip() for l in args.labels.split(",") if l.strip()]
    scored = score_intensity(transcript, labels, _provider_from_args(args))
    json.dump([{"label": s.label, "intensity": s.intensity} for s in scored],
              sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _cmd_legend(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    cells = generate_legend(args.rows, args.cols, seed=args.seed, subdivision=args.subdiv)
    layout = {"rows": args.rows, "cols": args.cols, "seed": args.seed,
              "subdivision": args.subdiv, "cells": []}
    for (i, j), spec, mesh in cells:
        name = f"legend_r{i}_c{j}.obj"
        (out_dir / name).write_bytes(write_obj(mesh))
        layout["cells"].append({
            "row": i,
            "col": j,
            "file": name,
            "params": {
                "number_of_waves": spec.params.waves,
                "global_distortion": spec.params.global_distortion,
                "global_frequency": spec.params.global_frequency,
                "surface_distortion": spec.params.surface_distortion,
                "surface_frequency": spec.params.surface_frequency,
            },
        })
    (out_dir / "layout.json").write_text(json.dumps(layout, indent=2) + "\n", "utf-8")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    config = ServerConfig.from_file(args.config) if args.config else ServerConfig()
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phemotion",
                                     description="Emotion-driven parametric shape toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="regenerate a mesh from a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--subdiv", type=int, default=None)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("extract", help="extract emotion tokens from a transcript file")
    p.add_argument("--transcript", required=True)
    p.add_argument("--provider", choices=("mock", "remote"), default="mock")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("score", help="score labels against a transcript file")
    p.add_argument("--transcript", required=True)
    p.add_argument("--labels", required=True, help="comma-separated labels")
    p.add_argument("--provider", choices=("mock", "remote"), default="mock")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("legend", help="write a grid of sample meshes plus layout.json")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--subdiv", type=int, default=3)
    p.set_defaults(func=_cmd_legend)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _PROVIDER_ERRORS as exc:
        print(f"provider error: {exc}", file=sys.stderr)
        return EXIT_PROVIDER
    except (PhemotionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Acceptance suite: the release gate, one test per criterion.

Each criterion prints a PASS/FAIL line in the terminal summary. Tolerances
are pinned here and nowhere else.
"""

import functools
import io
import json
import random
import tempfile
import time
import uuid
import zipfile
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

import conftest
from conftest import sample_matrix
from phemotion.cli import main
from phemotion.errors import MalformedProviderOutput, TooFewTokens
from phemotion.manifest import read_manifest, write_manifest
from phemotion.mesh import GenSpec, generate_mesh, radius_field, unit_icosphere
from phemotion.palette import (
    Binding,
    EmotionToken,
    MappingMatrix,
    Palette,
    Provenance,
    ShapeParameterId,
    ShapeParams,
    intensity_on_grid,
    resolve_parameters,
)
from phemotion.pipeline import ProviderConfig, extract_tokens, mock_provider, score_intensity
from phemotion.server import ServerConfig, create_app

FIXTURES = Path(__file__).parent / "fixtures"


def criterion(name):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                conftest.ACCEPTANCE_RESULTS.append(f"FAIL  {name}")
                raise
            conftest.ACCEPTANCE_RESULTS.append(f"PASS  {name}")
            return result

        return inner

    return wrap


# -- 1. intensity contract ------------------------------------------------------


class _QueueProvider:
    """Serves pre-generated raw outputs, one per provider call."""

    def __init__(self, raws):
        self.raws = list(raws)
        self.served = 0

    def _next(self):
        if self.served >= len(self.raws):
            raise IndexError("fuzz queue exhausted")
        raw = self.raws[self.served]
        self.served += 1
        return raw

    def reply(self, messages, nudge=False):
        return "And how did that feel?"

    def extract_raw(self, transcript):
        return self._next()

    def score_raw(self, transcript, labels):
        return self._next()


def _fuzz_number(rng):
    pick = rng.random()
    if pick < 0.4:
        return rng.uniform(-10.0, 10.0)
    if pick < 0.6:
        return rng.uniform(0.0, 4.5)
    if pick < 0.8:
        return rng.choice([-1e9, 1e9, 5.2, 3.14159, 4.50001, -0.0001,
                           float("nan"), float("inf"), -float("inf")])
    return rng.randint(-5, 50)


def _fuzz_label(rng):
    return rng.choice([
        "joy", "JOY", "  fear  ", "melancholy", "x" * 120, "", "  ",
        "gr ief", "ünëase", "calm", "emotion-" + str(rng.randint(0, 99)),
    ])


def _fuzz_extract_raw(rng):
    roll = rng.random()
    if roll < 0.4:
        toks = [{"label": _fuzz_label(rng), "intensity": _fuzz_number(rng)}
                for _ in range(rng.randint(0, 10))]
        return json.dumps(toks)
    if roll < 0.5:
        toks = [{"label": _fuzz_label(rng), "intensity": _fuzz_number(rng)}
                for _ in range(rng.randint(0, 8))]
        return json.dumps({"tokens": toks})
    if roll < 0.6:
        return json.dumps([{"label": 42, "intensity": "high"},
                           {"wrong": "shape"}])
    if roll < 0.75:
        return rng.choice(["not json at all", "{", "[1,2,", "<html>", ""])
    if roll < 0.85:
        return json.dumps(rng.choice([None, 17, "joy", True]))
    toks = [{"label": _fuzz_label(rng), "intensity": _fuzz_number(rng)}
            for _ in range(rng.randint(4, 9))]
    return json.dumps(toks)


def _fuzz_score_raw(rng, labels):
    roll = rng.random()
    if roll < 0.5:
        doc = {lab: _fuzz_number(rng) for lab in labels}
        if rng.random() < 0.3:
            doc.pop(rng.choice(labels))
        if rng.random() < 0.3:
            doc["stray"] = _fuzz_number(rng)
        return json.dumps(doc)
    if roll < 0.65:
        return json.dumps([{"label": lab, "intensity": _fuzz_number(rng)}
                           for lab in labels])
    if roll < 0.8:
        return json.dumps({lab.upper(): _fuzz_number(rng) for lab in labels})
    return rng.choice(["nonsense", "[[", json.dumps(3.2), json.dumps(None)])


@criterion("intensity contract: 1000 fuzzed provider outputs, all on-grid")
def test_intensity_contract_fuzz():
    rng = random.Random(20240601)
    labels = ["joy", "fear", "calm"]
    extract_raws = [_fuzz_extract_raw(rng) for _ in range(600)]
    score_raws = [_fuzz_score_raw(rng, labels) for _ in range(400)]

    surfaced = 0
    violations = []

    provider = _QueueProvider(extract_raws)
    while provider.served < len(provider.raws):
        try:
            result = extract_tokens("fuzz transcript", provider)
        except (MalformedProviderOutput, TooFewTokens):
            continue
        except IndexError:
            break
        for token in result.tokens:
            surfaced += 1
            if not intensity_on_grid(token.intensity):
                violations.append(token)

    provider = _QueueProvider(score_raws)
    while provider.served < len(provider.raws):
        try:
            scored = score_intensity("fuzz transcript", labels, provider)
        except MalformedProviderOutput:
            continue
        except IndexError:
            break
        for entry in scored:
            surfaced += 1
            if not intensity_on_grid(entry.intensity):
                violations.append(entry)

    assert len(extract_raws) + len(score_raws) == 1000
    assert surfaced > 0
    assert violations == []


# -- 2. token-count contract ----------------------------------------------------


@criterion("token-count contract: 20-transcript corpus yields 4-7 distinct tokens")
def test_token_count_contract_corpus():
    transcripts = sorted((FIXTURES / "transcripts").glob("t*.txt"))
    assert len(transcripts) == 20
    provider = mock_provider(0)
    for path in transcripts:
        result = extract_tokens(path.read_text("utf-8"), provider)
        labels = [t.label for t in result.tokens]
        assert 4 <= len(labels) <= 7, path.name
        assert len({l.casefold() for l in labels}) == len(labels), path.name


# -- 3. sphere identity ----------------------------------------------------------


@criterion("sphere identity: zero params, subdivisions 0-5, 10 seeds, dev < 1e-9")
def test_sphere_identity():
    rng = random.Random(7)
    seeds = [rng.getrandbits(64) for _ in range(10)]
    start = time.perf_counter()
    worst = 0.0
    for subdivision in range(0, 6):
        for seed in seeds:
            mesh = generate_mesh(GenSpec(ShapeParams(), seed=seed,
                                         subdivision=subdivision))
            radii = np.linalg.norm(mesh.vertices, axis=1)
            worst = max(worst, float(np.max(np.abs(radii - 1.0))))
    elapsed = time.perf_counter() - start
    assert worst < 1e-9
    assert elapsed < 5.0


# -- 4. wave-count oracle --------------------------------------------------------


@criterion("wave-count oracle: w=1..12 equatorial maxima, 12/12")
def test_wave_count_oracle():
    phi = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
    ring = np.stack([np.cos(phi), np.sin(phi), np.zeros_like(phi)], axis=1)
    for w in range(1, 13):
        profile = radius_field(ring, ShapeParams(waves=w), seed=0)
        maxima = sum(
            1
            for i in range(4096)
            if profile[i] > profile[i - 1] and profile[i] > profile[(i + 1) % 4096]
        )
        assert maxima == w, f"waves={w} gave {maxima} maxima"


# -- 5. manifoldness -------------------------------------------------------------


@criterion("manifoldness: edge census subdivisions 0-4, counts match")
def test_manifoldness():
    for s in range(0, 5):
        verts, faces = unit_icosphere(s)
        assert len(verts) == 10 * 4**s + 2
        assert len(faces) == 20 * 4**s
        edges: dict[tuple[int, int], int] = {}
        for a, b, c in faces:
            for i, j in ((a, b), (b, c), (c, a)):
                key = (min(i, j), max(i, j))
                edges[key] = edges.get(key, 0) + 1
        assert all(count == 2 for count in edges.values())


# -- 6. determinism ---------------------------------------------------------------


@criterion("determinism: render twice byte-identical; 500 manifest round-trips")
def test_determinism(tmp_path):
    manifest_path = FIXTURES / "p1_manifest.json"
    out1, out2 = tmp_path / "a.obj", tmp_path / "b.obj"
    assert main(["render", "--manifest", str(manifest_path), "--out", str(out1)]) == 0
    assert main(["render", "--manifest", str(manifest_path), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()

    rng = random.Random(42)
    words = [f"emotion{i}" for i in range(40)]
    for _ in range(500):
        labels = rng.sample(words, rng.randint(0, 7))
        tokens = [
            EmotionToken(lab, rng.randint(0, 45) / 10.0,
                         rng.choice(list(Provenance)))
            for lab in labels
        ]
        bindings = ()
        if labels:
            params = rng.sample(list(ShapeParameterId), rng.randint(0, 5))
            bindings = tuple(Binding(rng.choice(labels), pid) for pid in params)
        matrix = MappingMatrix(Palette.seeded(tokens), bindings)
        spec = GenSpec(resolve_parameters(matrix),
                       seed=rng.getrandbits(64),
                       subdivision=rng.randint(0, 6))
        back_matrix, back_spec = read_manifest(write_manifest(matrix, spec))
        assert back_matrix == matrix
        assert back_spec == spec


# -- 7. manual-mode flow ----------------------------------------------------------


@criterion("manual-mode flow: palette->map->resolve->mesh->export, no provider, < 1 s")
def test_manual_mode_flow():
    with TestClient(create_app(ServerConfig(provider=None))) as client:
        start = time.perf_counter()
        sid = client.post("/api/session").json()["session_id"]
        palette_spec = [("steadiness", 3.0), ("restlessness", 2.5),
                        ("quiet pride", 4.0)]
        for seq, (label, intensity) in enumerate(palette_spec):
            resp = client.post("/api/palette/edit", json={
                "session_id": sid,
                "event": {"kind": "add", "target_label": label,
                          "payload": intensity, "sequence": seq},
            })
            assert resp.status_code == 200
        tokens = resp.json()["tokens"]
        palette = [{"label": t["label"], "intensity": t["intensity"],
                    "provenance": t["provenance"]} for t in tokens]
        bindings = [
            {"token": "steadiness", "parameter": "global_frequency"},
            {"token": "restlessness", "parameter": "surface_distortion"},
            {"token": "quiet pride", "parameter": "number_of_waves"},
        ]
        resolved = client.post("/api/resolve",
                               json={"palette": palette, "bindings": bindings})
        assert resolved.status_code == 200
        mesh = client.post("/api/mesh", json={"params": resolved.json(), "seed": 9,
                                              "subdivision": 4})
        assert mesh.status_code == 200
        export = client.post("/api/export", json={
            "palette": palette, "bindings": bindings, "seed": 9, "subdivision": 4,
        })
        assert export.status_code == 200
        elapsed = time.perf_counter() - start
        zf = zipfile.ZipFile(io.BytesIO(export.content))
        assert sorted(zf.namelist()) == ["manifest.json", "shape.obj"]
        assert elapsed < 1.0


# -- 8. preview latency ------------------------------------------------------------


@criterion("preview latency: /api/mesh subdivision 4, p95 < 200 ms over 100 requests")
def test_preview_latency():
    params = {
        "number_of_waves": 7,
        "global_distortion": 0.4,
        "global_frequency": 2.5,
        "surface_distortion": 0.2,
        "surface_frequency": 8.0,
    }
    with TestClient(create_app(ServerConfig(provider=None))) as client:
        body = {"params": params, "seed": 123, "subdivision": 4}
        for _ in range(3):  # warm the icosphere cache
            assert client.post("/api/mesh", json=body).status_code == 200
        times = []
        for _ in range(100):
            t0 = time.perf_counter()
            resp = client.post("/api/mesh", json=body)
            times.append(time.perf_counter() - t0)
            assert resp.status_code == 200
        p95 = sorted(times)[94]
        assert p95 < 0.200, f"p95 {p95 * 1000:.1f} ms"


# -- 9. privacy --------------------------------------------------------------------


@criterion("privacy: no transcript substrings on disk after a full session")
def test_privacy_no_disk_traces():
    sentinel = f"sealion {uuid.uuid4().hex} rooftop"
    started = time.time()
    config = ServerConfig(provider=ProviderConfig(kind="mock"))
    with TestClient(create_app(config)) as client:
        sid = client.post("/api/session").json()["session_id"]
        message = f"I felt a rush of joy and dread when {sentinel} happened"
        assert client.post("/api/chat",
                           json={"session_id": sid, "message": message}).status_code == 200
        assert client.post("/api/extract", json={"session_id": sid}).status_code == 200
        assert client.post("/api/score",
                           json={"session_id": sid,
                                 "labels": ["joy", "dread"]}).status_code == 200
        assert client.delete(f"/api/session/{sid}").json() == {"evicted": True}

    needle = sentinel.encode("utf-8")
    roots = [Path.cwd(), Path(tempfile.gettempdir())]
    hits = []
    for root in roots:
        for path in root.rglob("*"):
            try:
                if not path.is_file():
                    continue
                st = path.stat()
                if st.st_mtime < started - 1 or st.st_size > 50_000_000:
                    continue
                if needle in path.read_bytes():
                    hits.append(path)
            except OSError:
                continue
    assert hits == [], f"transcript text leaked to {hits}"

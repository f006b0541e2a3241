"""JSON file formats: matroids, construction manifests and bundles."""

from __future__ import annotations

import json
from pathlib import Path

from . import catalog
from .construct import ConstructionInput, ConstructionResult, build
from .core import from_bases, relabel


def dumps(obj):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def matroid_to_dict(M):
    d = {"ground_set": list(M.labels), "bases": M.sorted_bases()}
    if M.name:
        d["name"] = M.name
    return d


def matroid_from_dict(d):
    if not isinstance(d, dict) or "ground_set" not in d or "bases" not in d:
        raise ValueError("a matroid file needs 'ground_set' and 'bases'")
    return from_bases(d["ground_set"], d["bases"], name=d.get("name"))


def read_json(path):
    if str(path) == "-":
        import sys
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def load_matroid(path):
    return matroid_from_dict(read_json(path))


def save_matroid(M, path):
    Path(path).write_text(dumps(matroid_to_dict(M)))


def resolve_ref(ref, base_dir="."):
    """A manifest reference: catalog name, file path, inline matroid, or
    {"catalog"|"file": ..., "relabel": {...}}."""
    if isinstance(ref, str):
        if catalog.is_catalog_name(ref):
            return catalog.get(ref)
        return load_matroid(Path(base_dir) / ref)
    if isinstance(ref, dict):
        if "ground_set" in ref:
            M = matroid_from_dict(ref)
        elif "catalog" in ref:
            M = catalog.get(ref["catalog"])
        elif "file" in ref:
            M = load_matroid(Path(base_dir) / ref["file"])
        else:
            raise ValueError(f"cannot resolve matroid reference {ref!r}")
        if ref.get("relabel"):
            M = relabel(M, {str(k): str(v) for k, v in ref["relabel"].items()})
        return M
    raise ValueError(f"cannot resolve matroid reference {ref!r}")


def input_from_manifest(manifest, base_dir="."):
    L = resolve_ref(manifest["L"], base_dir)
    N = resolve_ref(manifest["N"], base_dir)
    inp = ConstructionInput(L, str(manifest["p"]), str(manifest["q"]), N,
                            tuple(map(str, manifest["A"])), tuple(map(str, manifest["B"])))
    return inp, manifest.get("a", "a"), manifest.get("b", "b")


def build_from_manifest(path):
    path = Path(path)
    inp, a, b = input_from_manifest(read_json(path), path.parent)
    return build(inp, a, b)


def write_bundle(res, out_dir):
    """One JSON file per matroid plus construction.json and report.json."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    inp = res.input
    files = {"L": inp.L, "N": inp.N, "M2": res.M2, "M": res.M}
    if res.M1 is not None:
        files["M1"] = res.M1
    for name, M in files.items():
        save_matroid(M, out / f"{name}.json")
    meta = {
        "p": inp.p, "q": inp.q, "A": list(inp.A), "B": list(inp.B),
        "a": res.a, "b": res.b, "label_map": res.label_map,
        "files": {k: f"{k}.json" for k in sorted(files)},
    }
    (out / "construction.json").write_text(dumps(meta))
    report = {
        name: {"rank": M.rk, "size": M.n, "bases": len(M.bases)} for name, M in files.items()
    }
    (out / "report.json").write_text(dumps(report))
    return out


def read_bundle(bundle_dir):
    d = Path(bundle_dir)
    meta = read_json(d / "construction.json")
    L, N = load_matroid(d / "L.json"), load_matroid(d / "N.json")
    inp = ConstructionInput(L, meta["p"], meta["q"], N, tuple(meta["A"]), tuple(meta["B"]))
    M1 = load_matroid(d / "M1.json") if (d / "M1.json").exists() else None
    return ConstructionResult(inp, M1, load_matroid(d / "M2.json"), load_matroid(d / "M.json"),
                              meta["a"], meta["b"], dict(meta.get("label_map", {})))

"""Map-specification documents (JSON) and result documents.

Map document, format ``wedgemaps-map/1``::

    {
      "format": "wedgemaps-map/1",
      "name": "optional label",
      "notes": ["optional free text"],
      "spaces": [{"kind": "torus", "dim": 2},
                 {"kind": "generic", "betti": [1, 2, 1]}],
      "coordinates": [{"from": 1, "to": 2, "h1": [[0, -1], [-1, 0]]},
                      {"from": 2, "to": 2, "graded": {"1": [[1, 0], [0, 1]], "2": [[1]]}}],
      "assembled": {"1": [[...]]},
      "permutation": [2, 1]
    }

Indices are 1-based.  ``h1`` is only allowed between two tori and is lifted
to every degree by exterior powers; ``graded`` gives each positive degree
explicitly (omitted degrees are zero).  ``assembled`` replaces
``coordinates`` by whole per-degree matrices; for wedges of tori only degree
1 may be given and the higher degrees come from the realizability check.
Matrix entries are integers or decimal strings of integers.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .kernel import Matrix
from .torus import ObstructionReport, ToralWedgeSpec, build_toral_wedge, check_h1_realizability, torus_graded_from_h1
from .wedge import DimensionMismatch, GradedLinearMap, SpaceSignature, WedgeMapHomology, assemble, classify

FORMAT = "wedgemaps-map/1"
RESULT_FORMAT = "wedgemaps-result/1"


class DocumentError(ValueError):
    """Unreadable or unparseable input."""


class StructureError(ValueError):
    """Input parses but violates the schema or the dimension rules."""


@dataclass
class MapDocument:
    spaces: list[dict]
    coordinates: list[dict] = field(default_factory=list)
    assembled: dict[int, Matrix] = field(default_factory=dict)
    permutation: list[int] | None = None
    name: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def s(self) -> int:
        return len(self.spaces)

    def signatures(self) -> list[SpaceSignature]:
        return [SpaceSignature.torus(sp["dim"]) if sp["kind"] == "torus"
                else SpaceSignature(tuple(sp["betti"])) for sp in self.spaces]

    @property
    def is_toral(self) -> bool:
        return all(sp["kind"] == "torus" for sp in self.spaces)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(sp["dim"] for sp in self.spaces)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"format": FORMAT}
        if self.name is not None:
            out["name"] = self.name
        if self.notes:
            out["notes"] = list(self.notes)
        out["spaces"] = [dict(sp) for sp in self.spaces]
        if self.coordinates:
            out["coordinates"] = []
            for c in self.coordinates:
                entry = {"from": c["from"], "to": c["to"]}
                if "h1" in c:
                    entry["h1"] = c["h1"].tolist()
                else:
                    entry["graded"] = {str(k): M.tolist() for k, M in sorted(c["graded"].items())}
                out["coordinates"].append(entry)
        if self.assembled:
            out["assembled"] = {str(k): M.tolist() for k, M in sorted(self.assembled.items())}
        if self.permutation is not None:
            out["permutation"] = list(self.permutation)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def digest(self) -> str:
        canon = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()

    def h1_spec(self) -> ToralWedgeSpec:
        """Degree-1 data of a wedge of tori."""
        if not self.is_toral:
            raise StructureError("not a wedge of tori")
        if self.assembled:
            return ToralWedgeSpec.from_h1(self.assembled[1], self.dims)
        return ToralWedgeSpec(self.dims, {(c["from"] - 1, c["to"] - 1): c["h1"]
                                          for c in self.coordinates})


@dataclass(frozen=True)
class LoadedMap:
    document: MapDocument
    wedge: WedgeMapHomology | None
    obstruction: ObstructionReport | None

    @property
    def realizable(self) -> bool:
        return self.obstruction is None or self.obstruction.passed


# ------------------------------------------------------------------ parsing


def _int(x, where: str) -> int:
    if isinstance(x, bool):
        raise StructureError(f"{where}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip(), 10)
        except ValueError:
            pass
    raise StructureError(f"{where}: expected an integer, got {x!r}")


def _matrix(x, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(x, list) or any(not isinstance(r, list) for r in x):
        raise StructureError(f"{where}: matrix must be a list of rows")
    if len(x) != rows or any(len(r) != cols for r in x):
        shape = f"{len(x)}x{len(x[0]) if x and isinstance(x[0], list) else 0}"
        raise StructureError(f"{where}: matrix is {shape}, expected {rows}x{cols}")
    return Matrix([[_int(v, where) for v in r] for r in x], rows=rows, cols=cols)


def _graded(x, src: SpaceSignature, tgt: SpaceSignature, where: str) -> dict[int, Matrix]:
    if not isinstance(x, dict):
        raise StructureError(f"{where}: 'graded' must map degrees to matrices")
    top = max(src.dim, tgt.dim)
    out = {}
    for key, val in x.items():
        k = _int(key, f"{where} degree")
        if not 1 <= k <= top:
            raise StructureError(f"{where}: degree {k} outside 1..{top}")
        out[k] = _matrix(val, tgt.b(k), src.b(k), f"{where} degree {k}")
    return out


def parse(data: Any) -> MapDocument:
    """Validate a decoded JSON value into a MapDocument (raises StructureError)."""
    if not isinstance(data, dict):
        raise StructureError("document must be a JSON object")
    fmt = data.get("format")
    if fmt != FORMAT:
        raise StructureError(f"unsupported format {fmt!r}; expected {FORMAT!r}")
    known = {"format", "name", "notes", "spaces", "coordinates", "assembled", "permutation"}
    extra = set(data) - known
    if extra:
        raise StructureError(f"unknown fields: {sorted(extra)}")

    raw_spaces = data.get("spaces")
    if not isinstance(raw_spaces, list):
        raise StructureError("'spaces' must be a list")
    spaces = []
    for n, sp in enumerate(raw_spaces, start=1):
        where = f"space {n}"
        if not isinstance(sp, dict):
            raise StructureError(f"{where}: must be an object")
        kind = sp.get("kind")
        if kind == "torus":
            if set(sp) - {"kind", "dim"}:
                raise StructureError(f"{where}: unknown fields")
            dim = _int(sp.get("dim"), f"{where} dim")
            if dim < 1:
                raise StructureError(f"{where}: torus dimension must be positive")
            spaces.append({"kind": "torus", "dim": dim})
        elif kind == "generic":
            if set(sp) - {"kind", "betti"}:
                raise StructureError(f"{where}: unknown fields")
            betti = sp.get("betti")
            if not isinstance(betti, list) or not betti:
                raise StructureError(f"{where}: 'betti' must be a nonempty list")
            betti = [_int(b, f"{where} betti") for b in betti]
            if betti[0] != 1 or any(b < 0 for b in betti):
                raise StructureError(f"{where}: betti must start with 1 and be nonnegative")
            spaces.append({"kind": "generic", "betti": betti})
        else:
            raise StructureError(f"{where}: kind must be 'torus' or 'generic'")
    doc = MapDocument(spaces=spaces)
    sigs = doc.signatures()
    s = len(spaces)

    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise StructureError("'name' must be a string")
    doc.name = name
    notes = data.get("notes", [])
    if not isinstance(notes, list) or any(not isinstance(x, str) for x in notes):
        raise StructureError("'notes' must be a list of strings")
    doc.notes = list(notes)

    if "coordinates" in data and "assembled" in data:
        raise StructureError("give either 'coordinates' or 'assembled', not both")

    seen = set()
    raw_coords = data.get("coordinates", [])
    if not isinstance(raw_coords, list):
        raise StructureError("'coordinates' must be a list")
    for c in raw_coords:
        if not isinstance(c, dict):
            raise StructureError("coordinate entries must be objects")
        i, j = _int(c.get("from"), "coordinate 'from'"), _int(c.get("to"), "coordinate 'to'")
        where = f"coordinate {i}->{j}"
        if not (1 <= i <= s and 1 <= j <= s):
            raise StructureError(f"{where}: index outside 1..{s}")
        if (i, j) in seen:
            raise StructureError(f"{where}: given more than once")
        seen.add((i, j))
        has_h1, has_graded = "h1" in c, "graded" in c
        if has_h1 == has_graded or set(c) - {"from", "to", "h1", "graded"}:
            raise StructureError(f"{where}: needs exactly one of 'h1' or 'graded'")
        src, tgt = spaces[i - 1], spaces[j - 1]
        both_tori = src["kind"] == tgt["kind"] == "torus"
        if has_h1:
            if not both_tori:
                raise StructureError(f"{where}: 'h1' is only allowed between tori")
            doc.coordinates.append({"from": i, "to": j,
                                    "h1": _matrix(c["h1"], tgt["dim"], src["dim"], where)})
        else:
            if both_tori:
                raise StructureError(f"{where}: maps between tori are given by 'h1'")
            doc.coordinates.append({"from": i, "to": j,
                                    "graded": _graded(c["graded"], sigs[i - 1], sigs[j - 1], where)})

    if "assembled" in data:
        raw = data["assembled"]
        if not isinstance(raw, dict):
            raise StructureError("'assembled' must map degrees to matrices")
        top = max((sg.dim for sg in sigs), default=0)
        for key, val in raw.items():
            k = _int(key, "assembled degree")
            if not 1 <= k <= top:
                raise StructureError(f"assembled degree {k} outside 1..{top}")
            if doc.is_toral and k != 1:
                raise StructureError("for wedges of tori only the degree-1 matrix may be assembled")
            R = sum(sg.b(k) for sg in sigs)
            doc.assembled[k] = _matrix(val, R, R, f"assembled degree {k}")
        if doc.is_toral and 1 not in doc.assembled:
            R = sum(doc.dims)
            doc.assembled[1] = Matrix.zeros(R)

    if "permutation" in data:
        perm = data["permutation"]
        if not isinstance(perm, list):
            raise StructureError("'permutation' must be a list")
        perm = [_int(p, "permutation") for p in perm]
        if sorted(perm) != list(range(1, s + 1)):
            raise StructureError(f"'permutation' must be a permutation of 1..{s}")
        doc.permutation = perm
    return doc


def loads(text: str) -> MapDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return parse(data)


def load(path) -> MapDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def fixture_path(name: str):
    from importlib.resources import files
    return files("wedgemaps") / "fixtures" / f"{name}.json"


# ------------------------------------------------------------------ building


def build(doc: MapDocument) -> LoadedMap:
    """Turn a document into homology data, running the realizability check on wedges of tori.

    When the check fails, ``wedge`` is None: higher-degree actions do not exist.
    """
    sigs = doc.signatures()
    obstruction = None
    try:
        if doc.is_toral:
            spec = doc.h1_spec()
            obstruction = check_h1_realizability(spec.h1_matrix(), spec.dims)
            if not obstruction.passed:
                return LoadedMap(doc, None, obstruction)
            W = WedgeMapHomology.from_assembled(sigs, obstruction.induced)
            if not doc.assembled:
                lifted = build_toral_wedge(spec)
                if lifted.assembled != W.assembled:
                    from .invariants import CrossCheckError
                    raise CrossCheckError("exterior-power lift differs from the cohomological induction")
        elif doc.assembled:
            top = max(sg.dim for sg in sigs)
            W = WedgeMapHomology.from_assembled(
                sigs, [doc.assembled.get(k, Matrix.zeros(sum(sg.b(k) for sg in sigs)))
                       for k in range(1, top + 1)])
        else:
            coords = {}
            for c in doc.coordinates:
                i, j = c["from"] - 1, c["to"] - 1
                if "h1" in c:
                    coords[(i, j)] = torus_graded_from_h1(c["h1"])
                else:
                    top = max(sigs[i].dim, sigs[j].dim)
                    coords[(i, j)] = GradedLinearMap(sigs[i], sigs[j], tuple(
                        c["graded"].get(k, Matrix.zeros(sigs[j].b(k), sigs[i].b(k)))
                        for k in range(1, top + 1)))
            W = assemble(sigs, coords)
    except DimensionMismatch as exc:
        raise StructureError(str(exc)) from exc

    if doc.permutation is not None:
        st = classify(W)
        declared = [p - 1 for p in doc.permutation]
        wrong = sorted((i, j) for i, j in W.support() if declared[i] != j)
        if wrong:
            i, j = wrong[0]
            raise StructureError(f"declared permutation sends {i + 1} to {declared[i] + 1}, "
                                 f"but coordinate {i + 1}->{j + 1} is nonzero")
        if not st.is_permutative:
            raise StructureError("declared permutation, but the map is not permutative")
    return LoadedMap(doc, W, obstruction)


def from_toral_spec(spec: ToralWedgeSpec, name: str | None = None) -> MapDocument:
    doc = MapDocument(spaces=[{"kind": "torus", "dim": n} for n in spec.dims], name=name)
    doc.coordinates = [{"from": i + 1, "to": j + 1, "h1": A} for (i, j), A in sorted(spec.coords.items())]
    return doc


# ------------------------------------------------------------------ results


def encode_int(x: int) -> str:
    return str(int(x))


def encode_poly(p) -> list[str]:
    return [encode_int(c) for c in p.coeffs]


def decode_ints(values) -> list[int]:
    return [int(v) for v in values]

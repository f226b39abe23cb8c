"""JSON code definitions: parsing, validation and the bundled examples.

A code file is a JSON object::

    {"D": 3, "n": 5,
     "edges": [[1, 2, 1], [2, 3, 1], ...],        # 1-based vertices, multiplicity
     "coding_generators": [[1, 1, 1, 1, 1]],       # Z-exponent rows of length n
     "name": "...", "description": "..."}          # optional

Vertices are 1-based here and 0-based everywhere in the library.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .graphcode import EncodedCode, Graph, encode

BUNDLE_PACKAGE = "qinfoloc.data"


class CodeFileError(ValueError):
    """Malformed code definition; the message names the offending field or line."""


@dataclass(frozen=True)
class CodeFile:
    D: int
    n: int
    edges: tuple[tuple[int, int, int], ...]
    coding_generators: tuple[tuple[int, ...], ...]
    name: str = ""
    description: str = ""
    source: str = field(default="", compare=False)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "D": self.D,
            "n": self.n,
            "edges": [list(e) for e in self.edges],
            "coding_generators": [list(r) for r in self.coding_generators],
        }

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.D, [(a - 1, b - 1, m) for a, b, m in self.edges])

    def encode(self) -> EncodedCode:
        return encode(self.graph(), [list(r) for r in self.coding_generators], name=self.name)


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise CodeFileError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def parse_code(obj: object, source: str = "") -> CodeFile:
    """Validate a decoded JSON object and build a :class:`CodeFile`."""
    if not isinstance(obj, dict):
        raise CodeFileError("top level: expected a JSON object")
    for key in ("D", "n", "edges", "coding_generators"):
        if key not in obj:
            raise CodeFileError(f"missing field '{key}'")
    D = _int(obj["D"], "field 'D'")
    n = _int(obj["n"], "field 'n'")
    if D < 2:
        raise CodeFileError(f"field 'D': must be at least 2, got {D}")
    if n < 1:
        raise CodeFileError(f"field 'n': must be at least 1, got {n}")
    if not isinstance(obj["edges"], list):
        raise CodeFileError("field 'edges': expected a list")
    edges = []
    seen = set()
    for i, e in enumerate(obj["edges"]):
        where = f"field 'edges[{i}]'"
        if not isinstance(e, list) or len(e) not in (2, 3):
            raise CodeFileError(f"{where}: expected [a, b] or [a, b, multiplicity]")
        a, b = _int(e[0], where), _int(e[1], where)
        m = _int(e[2], where) if len(e) == 3 else 1
        if not (1 <= a <= n and 1 <= b <= n):
            raise CodeFileError(f"{where}: vertices must lie in 1..{n}, got {a}, {b}")
        if a == b:
            raise CodeFileError(f"{where}: self loop on vertex {a}")
        if not 1 <= m <= D - 1:
            raise CodeFileError(f"{where}: multiplicity must lie in 1..{D - 1}, got {m}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise CodeFileError(f"{where}: edge {key[0]}-{key[1]} listed twice")
        seen.add(key)
        edges.append((key[0], key[1], m))
    if not isinstance(obj["coding_generators"], list):
        raise CodeFileError("field 'coding_generators': expected a list of rows")
    rows = []
    for i, r in enumerate(obj["coding_generators"]):
        where = f"field 'coding_generators[{i}]'"
        if not isinstance(r, list) or len(r) != n:
            raise CodeFileError(f"{where}: expected a row of length {n}")
        row = tuple(_int(v, where) for v in r)
        if any(not 0 <= v < D for v in row):
            raise CodeFileError(f"{where}: exponents must lie in [0, {D})")
        rows.append(row)
    name = obj.get("name", "")
    desc = obj.get("description", "")
    if not isinstance(name, str) or not isinstance(desc, str):
        raise CodeFileError("fields 'name' and 'description' must be strings")
    return CodeFile(D, n, tuple(sorted(edges)), tuple(rows), name, desc, source)


def loads_code(text: str, source: str = "<string>") -> CodeFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeFileError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return parse_code(obj, source)
    except CodeFileError as exc:
        raise CodeFileError(f"{source}: {exc}") from None


def bundled_names() -> list[str]:
    files = resources.files(BUNDLE_PACKAGE).iterdir()
    return sorted(p.name[:-5] for p in files if p.name.endswith(".json"))


def load_bundled(name: str) -> CodeFile:
    path = resources.files(BUNDLE_PACKAGE).joinpath(f"{name}.json")
    if not path.is_file():
        raise CodeFileError(f"no bundled code named {name!r}; available: {', '.join(bundled_names())}")
    return loads_code(path.read_text(encoding="utf-8"), f"bundled:{name}")


def load_code(spec: str | Path) -> CodeFile:
    """Load a code from a file path, or from a bundled example name if no such file exists."""
    path = Path(spec)
    if path.is_file():
        return loads_code(path.read_text(encoding="utf-8"), str(path))
    name = str(spec)
    if name.startswith("bundled:"):
        name = name[len("bundled:"):]
    if name in bundled_names():
        return load_bundled(name)
    raise CodeFileError(f"{spec}: no such file or bundled code")

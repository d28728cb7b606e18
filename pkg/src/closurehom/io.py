"""JSON formats for spaces, covers, maps and homology summaries.

Space::

    {"name": "Z4_c1", "points": ["0", "1", "2", "3"],
     "closure": {"0": ["3", "0", "1"], ...}}

Cover::

    {"space": <space object or path>, "sets": {"A": ["0", "1"], ...}}

Map::

    {"dom": <space or path>, "cod": <space or path>, "image": {"0": "0", ...}}

Points are always referred to by label. A ``"space"``/``"dom"``/``"cod"``
given as a string is a path relative to the referring file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import CMap, FinSpace
from .covers import Cover
from .errors import InvalidSpaceError

__all__ = [
    "dump_space",
    "load_cover",
    "load_map",
    "load_space",
    "read_json",
    "space_from_json",
    "space_to_json",
]


def space_to_json(X: FinSpace) -> dict[str, Any]:
    return {
        "name": X.name,
        "points": list(X.labels),
        "closure": {X.labels[x]: [X.labels[y] for y in sorted(cx)] for x, cx in enumerate(X.closures)},
    }


def space_from_json(data: Any) -> FinSpace:
    if not isinstance(data, dict) or "points" not in data or "closure" not in data:
        raise InvalidSpaceError("space JSON needs 'points' and 'closure'")
    labels = [str(p) for p in data["points"]]
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise InvalidSpaceError("duplicate point labels")
    closure = data["closure"]
    if not isinstance(closure, dict):
        raise InvalidSpaceError("'closure' must map point labels to label lists")
    unknown = set(map(str, closure)) - set(index)
    if unknown:
        raise InvalidSpaceError(f"closure given for unknown points {sorted(unknown)}")
    closures = []
    for lab in labels:
        if lab not in closure:
            raise InvalidSpaceError(f"no closure given for point {lab!r}")
        members = [str(v) for v in closure[lab]]
        bad = [v for v in members if v not in index]
        if bad:
            raise InvalidSpaceError(f"closure of {lab!r} names unknown points {bad}")
        closures.append(frozenset(index[v] for v in members))
    return FinSpace(tuple(closures), tuple(labels), str(data.get("name", "")))


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_space(path: str | Path) -> FinSpace:
    return space_from_json(read_json(path))


def dump_space(X: FinSpace, path: str | Path | None = None) -> str:
    text = json.dumps(space_to_json(X), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _resolve_space(ref: Any, base: Path) -> FinSpace:
    if isinstance(ref, str):
        return load_space(base / ref)
    return space_from_json(ref)


def load_cover(path: str | Path, space: FinSpace | None = None) -> Cover:
    """Read a cover file; ``space`` overrides whatever the file refers to."""
    path = Path(path)
    data = read_json(path)
    if not isinstance(data, dict) or "sets" not in data:
        raise InvalidSpaceError("cover JSON needs 'sets'")
    if space is None:
        if "space" not in data:
            raise InvalidSpaceError("cover JSON names no space")
        space = _resolve_space(data["space"], path.parent)
    sets = {str(name): frozenset(space.index_of(str(lab)) for lab in members)
            for name, members in data["sets"].items()}
    return Cover(space, sets)


def load_map(path: str | Path, dom: FinSpace | None = None, cod: FinSpace | None = None) -> CMap:
    path = Path(path)
    data = read_json(path)
    if not isinstance(data, dict) or "image" not in data:
        raise InvalidSpaceError("map JSON needs 'image'")
    if dom is None:
        dom = _resolve_space(data["dom"], path.parent)
    if cod is None:
        cod = _resolve_space(data["cod"], path.parent)
    image = {dom.index_of(str(a)): cod.index_of(str(b)) for a, b in data["image"].items()}
    return CMap.from_dict(dom, cod, image)


def map_to_json(f: CMap) -> dict[str, Any]:
    return {
        "dom": space_to_json(f.dom),
        "cod": space_to_json(f.cod),
        "image": {f.dom.labels[x]: f.cod.labels[y] for x, y in enumerate(f.image)},
    }

"""Structure files: UTF-8 JSON payloads for semigroups, categories, maps.

Payloads are small and human-diffable; emission is canonical (two-space
indent, fixed key order, trailing newline) so a round trip through load
and save is byte-exact.  Parse problems raise FormatError naming the file
and field; validation problems embed the Failure of the checker that
rejected the content.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .categories import FiniteCategory, validate_all
from .core import Failure, MalformedInputError
from .semigroups import (
    DistinguishedSemilattice,
    FiniteSemigroup,
    check_associativity,
    validate_semilattice,
)


class FormatError(ValueError):
    def __init__(self, message: str, path=None, field: str | None = None):
        where = ""
        if path is not None:
            where = f"{path}: "
        if field is not None:
            where += f"field {field!r}: "
        super().__init__(where + message)
        self.path = path
        self.field = field


@dataclass(frozen=True)
class SemigroupFile:
    """A loaded semigroup payload: the table plus its proposed semilattice.

    Structural validity (associativity, semilattice axioms) is enforced at
    load time; whether the pair is actually a restriction semigroup is a
    question for the checkers, not the loader.
    """

    semigroup: FiniteSemigroup
    E: DistinguishedSemilattice


def _need(obj: dict, key: str, path) -> object:
    if key not in obj:
        raise FormatError("missing", path, key)
    return obj[key]


def _load_json(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(str(exc), path) from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}", path) from exc
    if not isinstance(obj, dict):
        raise FormatError("top level must be an object", path)
    return obj


def _decode_semigroup(obj: dict, path) -> SemigroupFile:
    n = _need(obj, "n", path)
    table = _need(obj, "table", path)
    e_raw = _need(obj, "E", path)
    labels = obj.get("labels")
    if not isinstance(n, int) or n < 0:
        raise FormatError("n must be a nonnegative integer", path, "n")
    if not isinstance(table, list) or len(table) != n:
        raise FormatError(f"table must have {n} rows", path, "table")
    try:
        bad = check_associativity(table)
    except MalformedInputError as exc:
        raise FormatError(str(exc), path, "table") from exc
    if bad is not None:
        raise FormatError(str(bad), path, "table")
    sg = FiniteSemigroup(n, tuple(tuple(r) for r in table), tuple(labels) if labels else None)
    try:
        ds = validate_semilattice(sg, e_raw)
    except MalformedInputError as exc:
        raise FormatError(str(exc), path, "E") from exc
    if isinstance(ds, Failure):
        raise FormatError(str(ds), path, "E")
    return SemigroupFile(sg, ds)


def _decode_category(obj: dict, path) -> FiniteCategory:
    n = _need(obj, "n", path)
    if not isinstance(n, int) or n < 0:
        raise FormatError("n must be a nonnegative integer", path, "n")
    prod = _need(obj, "prod", path)
    if not isinstance(prod, list) or len(prod) != n:
        raise FormatError(f"prod must have {n} rows", path, "prod")
    order_pairs = _need(obj, "order", path)
    order = [[False] * n for _ in range(n)]
    for pair in order_pairs:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise FormatError("order entries must be [a, b] pairs", path, "order")
        a, b = pair
        if not (0 <= a < n and 0 <= b < n):
            raise FormatError(f"order pair {pair} out of range", path, "order")
        order[a][b] = True
    try:
        raw = FiniteCategory(
            n=n,
            objects=_need(obj, "objects", path),
            dom=_need(obj, "dom", path),
            ran=_need(obj, "ran", path),
            prod=tuple(tuple(row) for row in prod),
            order=tuple(tuple(r) for r in order),
            inv=tuple(obj["inv"]) if obj.get("inv") is not None else None,
            labels=tuple(obj["labels"]) if obj.get("labels") else None,
        )
    except MalformedInputError as exc:
        raise FormatError(str(exc), path) from exc
    out = validate_all(raw)
    if isinstance(out, Failure):
        raise FormatError(str(out), path)
    return out


@dataclass(frozen=True)
class MapFile:
    """A map payload before endpoint resolution."""

    source: str
    target: str
    values: tuple[int, ...]


def _decode_map(obj: dict, path) -> MapFile:
    src = _need(obj, "from", path)
    tgt = _need(obj, "to", path)
    values = _need(obj, "values", path)
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise FormatError("values must be a list of integers", path, "values")
    return MapFile(str(src), str(tgt), tuple(values))


def load(path) -> SemigroupFile | FiniteCategory | MapFile:
    """Load and validate one structure file, dispatching on its kind."""
    path = Path(path)
    obj = _load_json(path)
    kind = _need(obj, "kind", path)
    if kind == "semigroup":
        return _decode_semigroup(obj, path)
    if kind == "category":
        return _decode_category(obj, path)
    if kind == "map":
        return _decode_map(obj, path)
    raise FormatError(f"unknown kind {kind!r}", path, "kind")


def encode_semigroup(sg: FiniteSemigroup, E) -> dict:
    out = {
        "kind": "semigroup",
        "n": sg.n,
        "table": [list(row) for row in sg.mul],
        "E": list(E),
    }
    if sg.labels:
        out["labels"] = list(sg.labels)
    return out


def encode_category(C: FiniteCategory) -> dict:
    pairs = [
        [a, b] for a in range(C.n) for b in range(C.n) if C.order[a][b]
    ]
    out = {
        "kind": "category",
        "n": C.n,
        "objects": list(C.objects),
        "dom": list(C.dom),
        "ran": list(C.ran),
        "prod": [list(row) for row in C.prod],
        "order": pairs,
    }
    if C.inv is not None:
        out["inv"] = list(C.inv)
    if C.labels:
        out["labels"] = list(C.labels)
    return out


def encode_map(source: str, target: str, values) -> dict:
    return {"kind": "map", "from": source, "to": target, "values": list(values)}


def emit(payload: dict) -> bytes:
    """Canonical bytes for a payload dict (insertion-ordered keys)."""
    return (json.dumps(payload, indent=2, ensure_ascii=True) + "\n").encode("utf-8")


def save(path, payload: dict) -> None:
    Path(path).write_bytes(emit(payload))

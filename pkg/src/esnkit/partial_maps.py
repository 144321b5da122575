"""Partial maps on a finite ground set and the monoids they generate.

A partial map is stored as an image array with None marking undefined
points.  Element enumeration is lexicographic on image arrays with None
sorted last, so every generated Cayley table is reproducible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import BudgetExceeded, Failure, MalformedInputError
from .semigroups import FiniteSemigroup

UNDEFINED = None

LEFT_TO_RIGHT = "left-to-right"
RIGHT_TO_LEFT = "right-to-left"

KIND_PT = "PT"
KIND_PT_STAR = "PTstar"
KIND_I = "I"

DEFAULT_ELEMENT_CAP = 10_000


@dataclass(frozen=True)
class PartialMap:
    ground: int
    img: tuple[int | None, ...]

    def __post_init__(self):
        img = tuple(self.img)
        if len(img) != self.ground:
            raise MalformedInputError(f"image array of length {len(img)} on ground {self.ground}")
        for v in img:
            if v is not None and not 0 <= v < self.ground:
                raise MalformedInputError(f"image value {v!r} outside ground set")
        object.__setattr__(self, "img", img)

    def __call__(self, x: int) -> int | None:
        return self.img[x]

    @property
    def dom(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.ground) if self.img[x] is not None)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted({v for v in self.img if v is not None}))

    def is_injective(self) -> bool:
        defined = [v for v in self.img if v is not None]
        return len(defined) == len(set(defined))

    def is_partial_identity(self) -> bool:
        return all(v is None or v == x for x, v in enumerate(self.img))

    def label(self) -> str:
        return "".join("-" if v is None else str(v) for v in self.img) or "()"

    @staticmethod
    def identity(ground: int) -> "PartialMap":
        return PartialMap(ground, tuple(range(ground)))

    @staticmethod
    def empty(ground: int) -> "PartialMap":
        return PartialMap(ground, (None,) * ground)

    @staticmethod
    def partial_identity(ground: int, subset) -> "PartialMap":
        keep = set(subset)
        return PartialMap(ground, tuple(x if x in keep else None for x in range(ground)))


def compose(a: PartialMap, b: PartialMap, direction: str = LEFT_TO_RIGHT) -> PartialMap:
    """Compose two partial maps on the same ground set.

    Left-to-right sends x to b(a(x)) where both steps are defined; the
    right-to-left convention mirrors it, x to a(b(x)).
    """
    if a.ground != b.ground:
        raise MalformedInputError("ground set mismatch")
    if direction == RIGHT_TO_LEFT:
        a, b = b, a
    elif direction != LEFT_TO_RIGHT:
        raise MalformedInputError(f"unknown composition direction {direction!r}")
    img = []
    for x in range(a.ground):
        mid = a.img[x]
        img.append(None if mid is None else b.img[mid])
    return PartialMap(a.ground, tuple(img))


def domain_projection(a: PartialMap) -> PartialMap:
    """The partial identity on dom(a)."""
    return PartialMap(a.ground, tuple(x if v is not None else None for x, v in enumerate(a.img)))


def range_projection(a: PartialMap) -> PartialMap:
    """The partial identity on the image of a."""
    return PartialMap.partial_identity(a.ground, a.image)


def all_partial_maps(ground: int, injective: bool = False) -> list[PartialMap]:
    """All partial maps in lexicographic image-array order, None last."""
    values = list(range(ground)) + [None]
    out = []
    for img in itertools.product(values, repeat=ground):
        pm = PartialMap(ground, img)
        if injective and not pm.is_injective():
            continue
        out.append(pm)
    return out


@dataclass(frozen=True)
class BuiltMonoid:
    """A transformation monoid, its Cayley table, and its partial identities."""

    kind: str
    ground: int
    semigroup: FiniteSemigroup
    maps: tuple[PartialMap, ...]
    identities: tuple[int, ...]

    def index_of(self, pm: PartialMap) -> int:
        return self.maps.index(pm)


def build_monoid(kind: str, ground: int, max_elements: int = DEFAULT_ELEMENT_CAP) -> BuiltMonoid:
    """Enumerate a full partial-transformation monoid as a Cayley table.

    `kind` selects the element set and composition direction: "PT" is all
    partial maps composed left-to-right, "PTstar" the same set composed
    right-to-left, "I" the injective maps composed left-to-right.  The
    distinguished identities are the partial identity maps, which form a
    subsemilattice in every case.
    """
    if kind not in (KIND_PT, KIND_PT_STAR, KIND_I):
        raise MalformedInputError(f"unknown monoid kind {kind!r}")
    if ground < 0:
        raise MalformedInputError("ground size must be nonnegative")
    maps = all_partial_maps(ground, injective=(kind == KIND_I))
    if len(maps) > max_elements:
        raise BudgetExceeded(
            f"{kind}_{ground} has {len(maps)} elements, above the cap of {max_elements}"
        )
    index = {pm.img: i for i, pm in enumerate(maps)}
    direction = RIGHT_TO_LEFT if kind == KIND_PT_STAR else LEFT_TO_RIGHT
    table = [
        [index[compose(a, b, direction).img] for b in maps]
        for a in maps
    ]
    labels = tuple(pm.label() for pm in maps)
    sg = FiniteSemigroup(len(maps), tuple(tuple(row) for row in table), labels)
    idents = tuple(i for i, pm in enumerate(maps) if pm.is_partial_identity())
    return BuiltMonoid(kind, ground, sg, tuple(maps), idents)


def check_unary_closure(built: BuiltMonoid, subset) -> Failure | None:
    """Check a subset for closure under products and domain projection.

    The witness is the first offending pair (product side) or the first
    element whose projection escapes the subset.
    """
    chosen = sorted(set(subset))
    for i in chosen:
        if not 0 <= i < built.semigroup.n:
            raise MalformedInputError(f"element {i} out of range")
    inside = set(chosen)
    mul = built.semigroup.mul
    for i in chosen:
        for j in chosen:
            if mul[i][j] not in inside:
                return Failure("NOT_CLOSED_UNDER_PRODUCT", (i, j))
    index = {pm.img: k for k, pm in enumerate(built.maps)}
    for i in chosen:
        proj = index[domain_projection(built.maps[i]).img]
        if proj not in inside:
            return Failure("NOT_CLOSED_UNDER_PROJECTION", (i,))
    return None

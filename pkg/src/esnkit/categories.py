"""Finite categories with partial products, ordering, meets and inverses.

A category is a table: a partial n-by-n product with domain/range arrays
and a designated object set.  Validation is layered; each level rechecks
nothing from below but adds its own axioms and fills in the capability
tables it certifies:

  category   composability criterion, associativity of the partial
             product, unique left/right identities
  ordered    partial order, product/dom/ran monotonicity, existence and
             uniqueness of restrictions and corestrictions (by scan)
  inductive  greatest lower bounds of object pairs (by scan)
  groupoid   two-sided inverses

Restrictions, corestrictions and meets are always located by exhaustive
scan for the unique witness so that the uniqueness requirements are
genuinely tested; closed formulas are used only as cross-checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .core import (
    BoolMatrix,
    Failure,
    MalformedInputError,
    PartialTable,
    VerificationError,
    freeze_bool_matrix,
    freeze_indices,
    freeze_table,
)

LEVEL_CATEGORY = "category"
LEVEL_ORDERED = "ordered"
LEVEL_INDUCTIVE = "inductive"
LEVEL_GROUPOID = "groupoid"


@dataclass(frozen=True)
class FiniteCategory:
    """Element-indexed category data plus validated capability tables.

    `prod[x][y]` is None exactly where the product is undefined.  `order`,
    `inv` and the scan-filled tables are optional until the corresponding
    validation level has run; `levels` records which have.
    """

    n: int
    objects: tuple[int, ...]
    dom: tuple[int, ...]
    ran: tuple[int, ...]
    prod: PartialTable
    order: BoolMatrix | None = None
    inv: tuple[int, ...] | None = None
    labels: tuple[str, ...] | None = None
    levels: frozenset = frozenset()
    restriction: PartialTable | None = None
    corestriction: PartialTable | None = None
    meet: PartialTable | None = None

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(sorted(set(freeze_indices(self.objects, self.n, "object")))))
        object.__setattr__(self, "dom", freeze_indices(self.dom, self.n, "domain"))
        object.__setattr__(self, "ran", freeze_indices(self.ran, self.n, "range"))
        if len(self.dom) != self.n or len(self.ran) != self.n:
            raise MalformedInputError("dom/ran arrays must cover every element")
        object.__setattr__(self, "prod", freeze_table(self.prod, expect=self.n, allow_none=True))
        if self.order is not None:
            object.__setattr__(self, "order", freeze_bool_matrix(self.order, self.n))
        if self.inv is not None:
            object.__setattr__(self, "inv", freeze_indices(self.inv, self.n, "inverse"))
            if len(self.inv) != self.n:
                raise MalformedInputError("inverse array must cover every element")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n:
                raise MalformedInputError(f"{len(labels)} labels for {self.n} elements")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "levels", frozenset(self.levels))

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def defined(self, x: int, y: int) -> bool:
        return self.prod[x][y] is not None

    def leq(self, a: int, b: int) -> bool:
        return self.order[a][b]

    def validated(self, level: str) -> bool:
        return level in self.levels


def identity_elements(prod: PartialTable, n: int) -> tuple[int, ...]:
    """The idempotents acting as a left and right identity wherever composable."""
    out = []
    for e in range(n):
        if prod[e][e] != e:
            continue
        if all(prod[e][x] in (None, x) for x in range(n)) and all(
            prod[x][e] in (None, x) for x in range(n)
        ):
            out.append(e)
    return tuple(out)


def validate_category(data: FiniteCategory) -> FiniteCategory | Failure:
    """Check the category axioms exhaustively.

    Verifies that the declared objects are exactly the computed identities,
    that dom/ran name the unique identities composing on either side, that
    the product is defined exactly when range meets domain, and that both
    associativity bracketings exist together and agree.
    """
    n, prod = data.n, data.prod
    ids = identity_elements(prod, n)
    if ids != data.objects:
        extra = sorted(set(data.objects).symmetric_difference(ids))
        return Failure("OBJECTS_MISMATCH", tuple(extra[:1]), f"identities are {ids}")
    idset = set(ids)

    for x in range(n):
        d, r = data.dom[x], data.ran[x]
        if d not in idset or prod[d][x] is None:
            return Failure("CA3", (x,), "declared domain is not a composing identity")
        if r not in idset or prod[x][r] is None:
            return Failure("CA3", (x,), "declared range is not a composing identity")
        for e in ids:
            if e != d and prod[e][x] is not None:
                return Failure("CA3", (x, d, e), "left identity not unique")
            if e != r and prod[x][e] is not None:
                return Failure("CA3", (x, r, e), "right identity not unique")

    for x in range(n):
        for y in range(n):
            if (prod[x][y] is not None) != (data.ran[x] == data.dom[y]):
                return Failure("COMPOSABILITY", (x, y))

    for x in range(n):
        for y in range(n):
            xy = prod[x][y]
            for z in range(n):
                yz = prod[y][z]
                left = prod[xy][z] if xy is not None else None
                right = prod[x][yz] if yz is not None else None
                if (right is not None) != (xy is not None and yz is not None):
                    return Failure("CA2", (x, y, z))
                if (left is None) != (right is None):
                    return Failure("CA1", (x, y, z), "bracketings defined unequally")
                if left is not None and left != right:
                    return Failure("CA1", (x, y, z), "bracketings disagree")

    return replace(data, levels=data.levels | {LEVEL_CATEGORY})


def validate_ordered(data: FiniteCategory) -> FiniteCategory | Failure:
    """Check the ordered-category axioms and fill the (co)restriction tables.

    Requires a prior category validation and a present order.  Restriction
    and corestriction witnesses are found by scanning every element, so
    both existence and uniqueness are tested directly.
    """
    if not data.validated(LEVEL_CATEGORY):
        raise MalformedInputError("validate_category must pass first")
    if data.order is None:
        raise MalformedInputError("ordered validation requires an order relation")
    n, prod, leq = data.n, data.prod, data.order
    dom, ran = data.dom, data.ran

    for a in range(n):
        if not leq[a][a]:
            return Failure("ORDER_NOT_REFLEXIVE", (a,))
    for a in range(n):
        for b in range(n):
            if a != b and leq[a][b] and leq[b][a]:
                return Failure("ORDER_NOT_ANTISYMMETRIC", (a, b))
    for a in range(n):
        for b in range(n):
            if not leq[a][b]:
                continue
            for c in range(n):
                if leq[b][c] and not leq[a][c]:
                    return Failure("ORDER_NOT_TRANSITIVE", (a, b, c))

    le_pairs = [(a, b) for a in range(n) for b in range(n) if leq[a][b]]
    for a, b in le_pairs:
        if not (leq[dom[a]][dom[b]] and leq[ran[a]][ran[b]]):
            return Failure("OR2", (a, b))
    for a, c in le_pairs:
        for b, d in le_pairs:
            ab, cd = prod[a][b], prod[c][d]
            if ab is not None and cd is not None and not leq[ab][cd]:
                return Failure("OR1", (a, b, c, d))

    restriction = [[None] * n for _ in range(n)]
    corestriction = [[None] * n for _ in range(n)]
    for a in range(n):
        for e in data.objects:
            if leq[e][dom[a]]:
                found = [b for b in range(n) if leq[b][a] and dom[b] == e]
                if not found:
                    return Failure("OR3_RESTRICTION_MISSING", (e, a))
                if len(found) > 1:
                    return Failure("NONUNIQUE_RESTRICTION", (e, a, found[0], found[1]))
                restriction[e][a] = found[0]
            if leq[e][ran[a]]:
                found = [b for b in range(n) if leq[b][a] and ran[b] == e]
                if not found:
                    return Failure("OR3_CORESTRICTION_MISSING", (a, e))
                if len(found) > 1:
                    return Failure("NONUNIQUE_CORESTRICTION", (a, e, found[0], found[1]))
                corestriction[a][e] = found[0]

    return replace(
        data,
        levels=data.levels | {LEVEL_ORDERED},
        restriction=tuple(tuple(r) for r in restriction),
        corestriction=tuple(tuple(r) for r in corestriction),
    )


def validate_inductive(data: FiniteCategory) -> FiniteCategory | Failure:
    """Require a greatest lower bound for every pair of objects."""
    if not data.validated(LEVEL_ORDERED):
        raise MalformedInputError("validate_ordered must pass first")
    n, leq = data.n, data.order
    meet = [[None] * n for _ in range(n)]
    for e in data.objects:
        for f in data.objects:
            lower = [g for g in data.objects if leq[g][e] and leq[g][f]]
            greatest = [g for g in lower if all(leq[h][g] for h in lower)]
            if not greatest:
                detail = "no common lower bound" if not lower else "no greatest lower bound"
                return Failure("NO_MEET", (e, f), detail)
            meet[e][f] = greatest[0]
    return replace(
        data,
        levels=data.levels | {LEVEL_INDUCTIVE},
        meet=tuple(tuple(r) for r in meet),
    )


def validate_groupoid(data: FiniteCategory) -> FiniteCategory | Failure:
    """Find (or verify) a two-sided inverse for every element."""
    if not data.validated(LEVEL_CATEGORY):
        raise MalformedInputError("validate_category must pass first")
    n, prod = data.n, data.prod
    inv = []
    for x in range(n):
        found = [
            y
            for y in range(n)
            if prod[x][y] == data.dom[x] and prod[y][x] == data.ran[x]
        ]
        if not found:
            return Failure("G", (x,), "no two-sided inverse")
        if len(found) > 1:
            return Failure("NONUNIQUE_INVERSE", (x, found[0], found[1]))
        inv.append(found[0])
    if data.inv is not None and tuple(inv) != data.inv:
        bad = next(x for x in range(n) if inv[x] != data.inv[x])
        return Failure("G", (bad,), "declared inverse disagrees with the computed one")
    return replace(data, levels=data.levels | {LEVEL_GROUPOID}, inv=tuple(inv))


def validate_all(data: FiniteCategory, groupoid: bool | None = None) -> FiniteCategory | Failure:
    """Run the whole ladder; groupoid defaults to `inv is not None`."""
    out = validate_category(data)
    if isinstance(out, Failure):
        return out
    if out.order is not None:
        out = validate_ordered(out)
        if isinstance(out, Failure):
            return out
        out = validate_inductive(out)
        if isinstance(out, Failure):
            return out
    if groupoid is None:
        groupoid = data.inv is not None
    if groupoid:
        out = validate_groupoid(out)
    return out


def restrict(C: FiniteCategory, e: int, a: int) -> int:
    """The unique element below a with domain e, for an object e <= dom(a)."""
    if not C.validated(LEVEL_ORDERED):
        raise MalformedInputError("restriction requires ordered validation")
    if e not in C.objects or not C.order[e][C.dom[a]]:
        raise MalformedInputError(f"restrict needs an object below dom: ({e}, {a})")
    return C.restriction[e][a]


def corestrict(C: FiniteCategory, a: int, f: int) -> int:
    """The unique element below a with range f, for an object f <= ran(a).

    In a groupoid the value is cross-checked against the inverse shortcut
    (restrict f to the inverse of a, then invert).
    """
    if not C.validated(LEVEL_ORDERED):
        raise MalformedInputError("corestriction requires ordered validation")
    if f not in C.objects or not C.order[f][C.ran[a]]:
        raise MalformedInputError(f"corestrict needs an object below ran: ({a}, {f})")
    value = C.corestriction[a][f]
    if C.validated(LEVEL_GROUPOID):
        shortcut = C.inv[C.restriction[f][C.inv[a]]]
        if shortcut != value:
            raise VerificationError(
                Failure("GROUPOID_CORESTRICTION_MISMATCH", (a, f, value, shortcut))
            )
    return value


def pseudoproduct(C: FiniteCategory, a: int, b: int) -> int:
    """The everywhere-defined product: corestrict a and restrict b to the
    meet of ran(a) and dom(b), then compose.

    Coincides with the partial product wherever that is defined; the
    coincidence is asserted on every call.
    """
    if not C.validated(LEVEL_INDUCTIVE):
        raise MalformedInputError("pseudoproduct requires inductive validation")
    m = C.meet[C.ran[a]][C.dom[b]]
    left = C.corestriction[a][m]
    right = C.restriction[m][b]
    value = C.prod[left][right]
    if value is None:
        raise VerificationError(Failure("PSEUDOPRODUCT_UNDEFINED", (a, b)))
    direct = C.prod[a][b]
    if direct is not None and direct != value:
        raise VerificationError(Failure("PSEUDOPRODUCT_MISMATCH", (a, b, direct, value)))
    return value


_PSEUDO_CACHE: dict[int, tuple[FiniteCategory, tuple]] = {}


def pseudo_table(C: FiniteCategory) -> tuple[tuple[int, ...], ...]:
    # memoized per category instance; classification sweeps hit this hard
    hit = _PSEUDO_CACHE.get(id(C))
    if hit is not None and hit[0] is C:
        return hit[1]
    table = tuple(
        tuple(pseudoproduct(C, a, b) for b in range(C.n)) for a in range(C.n)
    )
    if len(_PSEUDO_CACHE) > 64:
        _PSEUDO_CACHE.clear()
    _PSEUDO_CACHE[id(C)] = (C, table)
    return table


def check_below_bound_uniqueness(C: FiniteCategory) -> Failure | None:
    """Two elements under a common bound sharing a domain or range coincide."""
    n, leq = C.n, C.order
    for c in range(n):
        below = [a for a in range(n) if leq[a][c]]
        for i, a in enumerate(below):
            for b in below[i + 1 :]:
                if C.dom[a] == C.dom[b] or C.ran[a] == C.ran[b]:
                    return Failure("BELOW_BOUND_UNIQUENESS", (a, b, c))
    return None


def check_lower_elements_are_restrictions(C: FiniteCategory) -> Failure | None:
    """a <= b forces a to be the restriction of b to dom(a), and dually."""
    for a in range(C.n):
        for b in range(C.n):
            if not C.order[a][b]:
                continue
            if C.restriction[C.dom[a]][b] != a:
                return Failure("LOWER_IS_RESTRICTION", (a, b), "restriction side")
            if C.corestriction[b][C.ran[a]] != a:
                return Failure("LOWER_IS_RESTRICTION", (a, b), "corestriction side")
    return None


def check_iterated_restriction(C: FiniteCategory) -> Failure | None:
    """Restricting in two steps equals restricting once, and shrinks monotonely."""
    leq = C.order
    for a in range(C.n):
        for e in C.objects:
            if not leq[e][C.dom[a]]:
                continue
            ea = C.restriction[e][a]
            for f in C.objects:
                if not leq[f][e]:
                    continue
                if C.restriction[f][ea] != C.restriction[f][a]:
                    return Failure("ITERATED_RESTRICTION", (f, e, a), "restriction side")
                if not leq[C.restriction[f][a]][ea]:
                    return Failure("ITERATED_RESTRICTION", (f, e, a), "not monotone")
        for e in C.objects:
            if not leq[e][C.ran[a]]:
                continue
            ae = C.corestriction[a][e]
            for f in C.objects:
                if not leq[f][e]:
                    continue
                if C.corestriction[ae][f] != C.corestriction[a][f]:
                    return Failure("ITERATED_RESTRICTION", (f, e, a), "corestriction side")
                if not leq[C.corestriction[a][f]][ae]:
                    return Failure("ITERATED_RESTRICTION", (f, e, a), "not monotone (dual)")
    return None


def check_object_pseudoproducts(C: FiniteCategory) -> Failure | None:
    """Pseudoproducts with an object reduce to a single (co)restriction."""
    for e in C.objects:
        for a in range(C.n):
            if pseudoproduct(C, e, a) != C.restriction[C.meet[e][C.dom[a]]][a]:
                return Failure("OBJECT_PSEUDOPRODUCT", (e, a), "object on the left")
            if pseudoproduct(C, a, e) != C.corestriction[a][C.meet[C.ran[a]][e]]:
                return Failure("OBJECT_PSEUDOPRODUCT", (e, a), "object on the right")
    return None


def category_lemma_checks(C: FiniteCategory) -> list[tuple[str, Failure | None]]:
    """All order-lemma suites appropriate for C's validated levels."""
    out = [
        ("below_bound_uniqueness", check_below_bound_uniqueness(C)),
        ("lower_elements_are_restrictions", check_lower_elements_are_restrictions(C)),
        ("iterated_restriction", check_iterated_restriction(C)),
    ]
    if C.validated(LEVEL_INDUCTIVE):
        out.append(("object_pseudoproducts", check_object_pseudoproducts(C)))
    return out

"""Finite semigroups with a distinguished semilattice of idempotents.

Everything is table-driven: a semigroup is an n-by-n Cayley table over
element indices 0..n-1, and all structure (equivalences by shared one-sided
identities, the unary operations picking the idempotent representative of
each class, the natural partial order) is derived and verified by exhaustive
scans.  The empty semigroup (n = 0) is accepted everywhere and is vacuously
valid.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .core import (
    BoolMatrix,
    Failure,
    IndexTable,
    MalformedInputError,
    freeze_bool_matrix,
    freeze_indices,
    freeze_table,
)


def check_associativity(table) -> Failure | None:
    """Return the first associativity violation of a raw table, or None.

    The table must be square with entries in [0, n); anything else raises
    MalformedInputError, keeping malformed input distinct from a genuine
    non-associative triple.  The witness is the lexicographically first
    triple (a, b, c) with (ab)c != a(bc).
    """
    t = freeze_table(table)
    n = len(t)
    if n > 32:
        return _check_associativity_bulk(t, n)
    for a in range(n):
        ta = t[a]
        for b in range(n):
            tab = t[ta[b]]
            tb = t[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return Failure("NOT_ASSOCIATIVE", (a, b, c))
    return None


def _check_associativity_bulk(t: IndexTable, n: int) -> Failure | None:
    # Same scan order as the direct loop, row-chunked through numpy so
    # that generated monoids with hundreds of elements stay cheap.
    import numpy as np

    m = np.asarray(t, dtype=np.intp)
    for a in range(n):
        left = m[m[a], :]         # (ab)c for all b, c
        right = m[a][m]           # a(bc)
        bad = left != right
        if bad.any():
            b, c = divmod(int(bad.argmax()), n)
            return Failure("NOT_ASSOCIATIVE", (a, b, c))
    return None


@dataclass(frozen=True)
class FiniteSemigroup:
    """An n-element magma given by its Cayley table.

    The constructor validates shape and index range only; associativity
    is checked by `check_associativity` so that raw candidate tables can
    be diagnosed without constructing anything.
    """

    n: int
    mul: IndexTable
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "mul", freeze_table(self.mul, expect=self.n))
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n:
                raise MalformedInputError(f"{len(labels)} labels for {self.n} elements")
            object.__setattr__(self, "labels", labels)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def idempotents(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.n) if self.mul[e][e] == e)


@dataclass(frozen=True)
class DistinguishedSemilattice:
    """A verified subsemilattice of idempotents, as a sorted index tuple."""

    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, e) -> bool:
        return e in self.members

    def __len__(self) -> int:
        return len(self.members)


def validate_semilattice(S: FiniteSemigroup, E) -> DistinguishedSemilattice | Failure:
    """Certify E as a commutative subsemigroup of idempotents of S.

    Indices out of range raise; an empty E on a nonempty S is rejected
    because every element needs an idempotent representative drawn from E.
    """
    members = tuple(sorted(set(freeze_indices(E, S.n, "semilattice member"))))
    if not members and S.n > 0:
        return Failure("EMPTY_SEMILATTICE", (), "E must be nonempty when S is")
    mul = S.mul
    for e in members:
        if mul[e][e] != e:
            return Failure("NON_IDEMPOTENT_MEMBER", (e,))
    for e in members:
        for f in members:
            if mul[e][f] not in members:
                return Failure("NOT_CLOSED", (e, f))
            if mul[e][f] != mul[f][e]:
                return Failure("NOT_COMMUTATIVE", (e, f))
    return DistinguishedSemilattice(members)


@dataclass(frozen=True)
class EquivalenceRelation:
    """A partition of [0, n) into blocks, each sorted, ordered by least member."""

    classes: tuple[tuple[int, ...], ...]
    index: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        classes = tuple(tuple(sorted(block)) for block in self.classes)
        object.__setattr__(self, "classes", classes)
        seen: dict[int, int] = {}
        for k, block in enumerate(classes):
            for a in block:
                if a in seen:
                    raise MalformedInputError(f"element {a} appears in two blocks")
                seen[a] = k
        n = len(seen)
        if seen and set(seen) != set(range(n)):
            raise MalformedInputError("blocks do not cover a contiguous index range")
        object.__setattr__(self, "index", tuple(seen[a] for a in range(n)))

    def same(self, a: int, b: int) -> bool:
        return self.index[a] == self.index[b]


def tilde_relations(
    S: FiniteSemigroup, E: DistinguishedSemilattice
) -> tuple[EquivalenceRelation, EquivalenceRelation]:
    """Group elements by their sets of left (resp. right) identities in E."""
    mul = S.mul

    def group(key) -> EquivalenceRelation:
        blocks: dict[tuple[int, ...], list[int]] = {}
        for a in range(S.n):
            blocks.setdefault(key(a), []).append(a)
        # insertion order is ascending least member
        return EquivalenceRelation(tuple(tuple(b) for b in blocks.values()))

    left = group(lambda a: tuple(e for e in E if mul[e][a] == a))
    right = group(lambda a: tuple(e for e in E if mul[a][e] == a))
    return left, right


@dataclass(frozen=True)
class InverseCertificate:
    """Witness that a semigroup is inverse: the array of unique inverses."""

    inv: tuple[int, ...]


@dataclass(frozen=True)
class RestrictionStructure:
    """The full package certifying (S, E) as a restriction semigroup.

    `plus[a]` / `star[a]` are the unique members of E sharing a's left /
    right identities; `order` is the materialized natural partial order.
    `inv` is present only when an InverseCertificate has been attached.
    """

    base: FiniteSemigroup
    E: DistinguishedSemilattice
    plus: tuple[int, ...]
    star: tuple[int, ...]
    order: BoolMatrix
    inv: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def mul(self) -> IndexTable:
        return self.base.mul

    def leq(self, a: int, b: int) -> bool:
        return self.order[a][b]


def _order_matrix(mul, members, plus, star, n) -> BoolMatrix | Failure:
    # a <= b must agree across all four characterizations: a = a^+ b,
    # a = b a^*, a = eb for some e in E, a = bf for some f in E.
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            r1 = mul[plus[a]][b] == a
            r2 = mul[b][star[a]] == a
            r3 = any(mul[e][b] == a for e in members)
            r4 = any(mul[b][f] == a for f in members)
            if not (r1 == r2 == r3 == r4):
                return Failure(
                    "INTERNAL_INCONSISTENCY",
                    (a, b),
                    "the characterizations of the natural order disagree",
                )
            row.append(r1)
        rows.append(tuple(row))
    return tuple(rows)


def derive_restriction(S: FiniteSemigroup, E) -> RestrictionStructure | Failure:
    """Derive the restriction structure of (S, E), or say exactly why not.

    Locates the unique E-member of every block of both tilde relations,
    then verifies the left/right congruence conditions and both ample
    identities (ae = (ae)^+ a and ea = a (ea)^*) by exhaustive scan, and
    finally materializes the natural partial order.  Failure codes:

      NO_IDEMPOTENT_IN_CLASS / MULTIPLE_IDEMPOTENTS_IN_CLASS
      NOT_LEFT_CONGRUENCE / NOT_RIGHT_CONGRUENCE
      AMPLE_CONDITION_FAILS
      INTERNAL_INCONSISTENCY (order characterizations disagree)

    Witnesses are lexicographically first in each scan.
    """
    if not isinstance(E, DistinguishedSemilattice):
        E = validate_semilattice(S, E)
        if isinstance(E, Failure):
            return E
    n = S.n
    mul = S.mul
    tilde_r, tilde_l = tilde_relations(S, E)
    eset = set(E.members)

    def pick(rel: EquivalenceRelation, side: str):
        chosen = [-1] * n
        for block in rel.classes:
            found = [e for e in block if e in eset]
            if not found:
                return Failure("NO_IDEMPOTENT_IN_CLASS", (block[0],), side)
            if len(found) > 1:
                return Failure(
                    "MULTIPLE_IDEMPOTENTS_IN_CLASS", (block[0], found[0], found[1]), side
                )
            for a in block:
                chosen[a] = found[0]
        return tuple(chosen)

    plus = pick(tilde_r, "left-identity side")
    if isinstance(plus, Failure):
        return plus
    star = pick(tilde_l, "right-identity side")
    if isinstance(star, Failure):
        return star

    for a in range(n):
        for b in range(a + 1, n):
            if plus[a] != plus[b]:
                continue
            for c in range(n):
                if plus[mul[c][a]] != plus[mul[c][b]]:
                    return Failure("NOT_LEFT_CONGRUENCE", (a, b, c))
    for a in range(n):
        for b in range(a + 1, n):
            if star[a] != star[b]:
                continue
            for c in range(n):
                if star[mul[a][c]] != star[mul[b][c]]:
                    return Failure("NOT_RIGHT_CONGRUENCE", (a, b, c))

    for a in range(n):
        for e in E:
            ae = mul[a][e]
            if ae != mul[plus[ae]][a]:
                return Failure("AMPLE_CONDITION_FAILS", (a, e), "ae=(ae)^+a")
            ea = mul[e][a]
            if ea != mul[a][star[ea]]:
                return Failure("AMPLE_CONDITION_FAILS", (a, e), "ea=a(ea)^*")

    order = _order_matrix(mul, E.members, plus, star, n)
    if isinstance(order, Failure):
        return order
    return RestrictionStructure(S, E, plus, star, order)


def natural_order(R: RestrictionStructure) -> BoolMatrix | Failure:
    """Recompute the natural partial order from scratch.

    Asserts agreement of all four characterizations (unary form on either
    side, existential form on either side); disagreement is reported as
    INTERNAL_INCONSISTENCY and signals an invalid structure.
    """
    return _order_matrix(R.mul, R.E.members, R.plus, R.star, R.n)


def check_plus_star_identities(R: RestrictionStructure) -> Failure | None:
    """Verify (st)^+ = (st^+)^+ and (st)^* = (s^* t)^* over all pairs."""
    mul, plus, star = R.mul, R.plus, R.star
    for s in range(R.n):
        for t in range(R.n):
            st = mul[s][t]
            if plus[st] != plus[mul[s][plus[t]]]:
                return Failure("PLUS_STAR_IDENTITY_FAILS", (s, t), "(st)^+ != (s t^+)^+")
            if star[st] != star[mul[star[s]][t]]:
                return Failure("PLUS_STAR_IDENTITY_FAILS", (s, t), "(st)^* != (s^* t)^*")
    return None


def check_inverse(S: FiniteSemigroup) -> InverseCertificate | Failure:
    """Certify S as an inverse semigroup, or name the obstruction.

    Requires regularity (every a has some x with axa = a) and commuting
    idempotents; unique generalized inverses then exist and are returned.
    """
    n, mul = S.n, S.mul
    for a in range(n):
        if not any(mul[mul[a][x]][a] == a for x in range(n)):
            return Failure("NOT_REGULAR", (a,))
    idem = S.idempotents()
    for e in idem:
        for f in idem:
            if mul[e][f] != mul[f][e]:
                return Failure("IDEMPOTENTS_DONT_COMMUTE", (e, f))
    inv = []
    for a in range(n):
        found = [
            x for x in range(n) if mul[mul[a][x]][a] == a and mul[mul[x][a]][x] == x
        ]
        if len(found) != 1:
            return Failure("NONUNIQUE_INVERSE", (a,), f"{len(found)} candidates")
        inv.append(found[0])
    return InverseCertificate(tuple(inv))


def attach_inverse(
    R: RestrictionStructure, cert: InverseCertificate
) -> RestrictionStructure | Failure:
    """Attach an inverse certificate, verifying a^+ = a a' and a^* = a' a.

    These identities tie the unary operations to the inverses and can
    legitimately fail when E is a proper subsemilattice of the idempotents,
    so the attachment is checked rather than assumed.
    """
    if len(cert.inv) != R.n:
        raise MalformedInputError("certificate size mismatch")
    for a in range(R.n):
        if R.plus[a] != R.mul[a][cert.inv[a]]:
            return Failure("INVERSE_UNARY_MISMATCH", (a,), "a^+ != a a'")
        if R.star[a] != R.mul[cert.inv[a]][a]:
            return Failure("INVERSE_UNARY_MISMATCH", (a,), "a^* != a' a")
    return replace(R, inv=cert.inv)


def greens_r(S: FiniteSemigroup) -> EquivalenceRelation:
    """Green's R relation via principal right ideals, computed directly."""
    ideals = []
    for a in range(S.n):
        right = {a}
        right.update(S.mul[a][x] for x in range(S.n))
        ideals.append(frozenset(right))
    blocks: dict[frozenset, list[int]] = {}
    for a in range(S.n):
        blocks.setdefault(ideals[a], []).append(a)
    return EquivalenceRelation(tuple(tuple(b) for b in blocks.values()))

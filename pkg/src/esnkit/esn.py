"""The object-level correspondence between restriction semigroups and
inductive categories.

Both directions keep the element index set fixed and only change the
operation tables: `category_of` restricts the product to range-meets-domain
pairs, `semigroup_of` totalizes the partial product through the
pseudoproduct.  Neither direction trusts the theorems it implements;
`semigroup_of` re-derives the restriction structure from scratch and
cross-checks it against the category's domain/range data, and the round
trips compare tables cell by cell.
"""
from __future__ import annotations

from dataclasses import dataclass

from .categories import (
    LEVEL_GROUPOID,
    LEVEL_INDUCTIVE,
    FiniteCategory,
    pseudo_table,
    validate_all,
)
from .core import Check, Failure, VerificationError
from .semigroups import (
    FiniteSemigroup,
    RestrictionStructure,
    attach_inverse,
    check_associativity,
    check_inverse,
    derive_restriction,
    validate_semilattice,
)


@dataclass(frozen=True)
class EsnPair:
    """A restriction semigroup and its category partner over shared indices."""

    semigroup: RestrictionStructure
    category: FiniteCategory


def category_of(R: RestrictionStructure) -> FiniteCategory:
    """Build the inductive category of a restriction structure.

    The product of a and b survives exactly when star(a) = plus(b); the
    order is the natural partial order, the objects are E, and domains and
    ranges are the unary operations.  The result is pushed through the full
    validation ladder (including the groupoid level when R carries an
    inverse certificate); any validation failure is raised, because the
    construction guarantees it cannot happen for a valid R.
    """
    n = R.n
    prod = tuple(
        tuple(
            R.mul[a][b] if R.star[a] == R.plus[b] else None
            for b in range(n)
        )
        for a in range(n)
    )
    raw = FiniteCategory(
        n=n,
        objects=R.E.members,
        dom=R.plus,
        ran=R.star,
        prod=prod,
        order=R.order,
        inv=R.inv,
        labels=R.base.labels,
    )
    out = validate_all(raw, groupoid=R.inv is not None)
    if isinstance(out, Failure):
        raise VerificationError(out)
    return out


def semigroup_of(C: FiniteCategory) -> RestrictionStructure:
    """Recover the restriction semigroup of an inductive category.

    Multiplication is the pseudoproduct and E is the object set.  Rather
    than trusting the construction, the result is re-derived from its own
    Cayley table and must reproduce the category's domains, ranges and
    order exactly; for groupoids it must also pass the inverse-semigroup
    check with the category's inverses.
    """
    if not C.validated(LEVEL_INDUCTIVE):
        raise VerificationError(Failure("NOT_INDUCTIVE", (), "semigroup_of needs inductive input"))
    table = pseudo_table(C)
    bad = check_associativity(table)
    if bad is not None:
        raise VerificationError(bad)
    S = FiniteSemigroup(C.n, table, labels=C.labels)
    E = validate_semilattice(S, C.objects)
    if isinstance(E, Failure):
        raise VerificationError(E)
    R = derive_restriction(S, E)
    if isinstance(R, Failure):
        raise VerificationError(R)
    if R.plus != C.dom:
        raise VerificationError(Failure("UNARY_MISMATCH", (), "derived + differs from dom"))
    if R.star != C.ran:
        raise VerificationError(Failure("UNARY_MISMATCH", (), "derived * differs from ran"))
    if R.order != C.order:
        raise VerificationError(Failure("ORDER_MISMATCH", (), "derived order differs"))
    if C.validated(LEVEL_GROUPOID):
        cert = check_inverse(S)
        if isinstance(cert, Failure):
            raise VerificationError(cert)
        if cert.inv != C.inv:
            raise VerificationError(Failure("INVERSE_MISMATCH", ()))
        R = attach_inverse(R, cert)
        if isinstance(R, Failure):
            raise VerificationError(R)
    return R


def correspond(R: RestrictionStructure) -> EsnPair:
    return EsnPair(R, category_of(R))


def roundtrip_semigroup(R: RestrictionStructure) -> Failure | None:
    """Check that semigroup_of(category_of(R)) reproduces R bit-exactly."""
    back = semigroup_of(category_of(R))
    for a in range(R.n):
        for b in range(R.n):
            if back.mul[a][b] != R.mul[a][b]:
                return Failure("ROUNDTRIP_MUL", (a, b, R.mul[a][b], back.mul[a][b]))
    if back.E.members != R.E.members:
        return Failure("ROUNDTRIP_E", (), f"{back.E.members} != {R.E.members}")
    for a in range(R.n):
        if back.plus[a] != R.plus[a]:
            return Failure("ROUNDTRIP_PLUS", (a, R.plus[a], back.plus[a]))
        if back.star[a] != R.star[a]:
            return Failure("ROUNDTRIP_STAR", (a, R.star[a], back.star[a]))
    for a in range(R.n):
        for b in range(R.n):
            if back.order[a][b] != R.order[a][b]:
                return Failure("ROUNDTRIP_ORDER", (a, b))
    return None


def roundtrip_category(C: FiniteCategory) -> Failure | None:
    """Check that category_of(semigroup_of(C)) reproduces C bit-exactly."""
    back = category_of(semigroup_of(C))
    if back.objects != C.objects:
        return Failure("ROUNDTRIP_OBJECTS", (), f"{back.objects} != {C.objects}")
    for x in range(C.n):
        if back.dom[x] != C.dom[x]:
            return Failure("ROUNDTRIP_DOM", (x, C.dom[x], back.dom[x]))
        if back.ran[x] != C.ran[x]:
            return Failure("ROUNDTRIP_RAN", (x, C.ran[x], back.ran[x]))
    for x in range(C.n):
        for y in range(C.n):
            if back.prod[x][y] != C.prod[x][y]:
                return Failure("ROUNDTRIP_PROD", (x, y, C.prod[x][y], back.prod[x][y]))
            if back.order[x][y] != C.order[x][y]:
                return Failure("ROUNDTRIP_ORDER", (x, y))
    return None


def check_category_tables(R: RestrictionStructure, C: FiniteCategory) -> Failure | None:
    """In the category of R, restriction, corestriction and meet are plain
    semigroup products: f|a = fa, a|f = af, meet(e, f) = ef."""
    for a in range(R.n):
        for f in R.E:
            if C.order[f][C.dom[a]] and C.restriction[f][a] != R.mul[f][a]:
                return Failure("RESTRICTION_IS_PRODUCT", (f, a))
            if C.order[f][C.ran[a]] and C.corestriction[a][f] != R.mul[a][f]:
                return Failure("CORESTRICTION_IS_PRODUCT", (a, f))
    for e in R.E:
        for f in R.E:
            if C.meet[e][f] != R.mul[e][f]:
                return Failure("MEET_IS_PRODUCT", (e, f))
    return None


def check_pseudoproduct_is_mul(R: RestrictionStructure, C: FiniteCategory) -> Failure | None:
    """Cell-level half of the round trip: every pseudoproduct equals mul."""
    table = pseudo_table(C)
    for a in range(R.n):
        for b in range(R.n):
            if table[a][b] != R.mul[a][b]:
                return Failure("PSEUDOPRODUCT_IS_MUL", (a, b, R.mul[a][b], table[a][b]))
    return None


def inverse_specialization(R: RestrictionStructure) -> list[Check]:
    """Assertion bundle for inverse input: the category partner is a
    groupoid, and the recovered semigroup is inverse with matching unaries."""
    checks: list[Check] = []
    if R.inv is None:
        return [Check("inverse_certificate_present", Failure("NOT_INVERSE", ()))]
    C = category_of(R)
    checks.append(
        Check(
            "category_is_groupoid",
            None if C.validated(LEVEL_GROUPOID) else Failure("NOT_GROUPOID", ()),
        )
    )
    back = semigroup_of(C)
    cert = check_inverse(back.base)
    checks.append(Check("recovered_semigroup_is_inverse", cert if isinstance(cert, Failure) else None))
    bad = None
    for a in range(R.n):
        if R.plus[a] != R.mul[a][R.inv[a]] or R.star[a] != R.mul[R.inv[a]][a]:
            bad = Failure("INVERSE_UNARY_MISMATCH", (a,))
            break
    checks.append(Check("unary_operations_from_inverses", bad))
    return checks

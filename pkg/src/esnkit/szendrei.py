"""The history expansion of a finite inductive groupoid.

Elements are pairs (U, u): a finite admissible set U of arrows sharing one
domain object, containing that object, together with a chosen member u.
The partial product multiplies the chosen members and requires the history
set to match after translation; inverses, domains, ranges, ordering,
restriction and meets all have closed forms, each of which is cross-checked
here against the scan-based machinery of the category validators.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .arrows import ElementMap, classify_functor_map
from .categories import (
    LEVEL_GROUPOID,
    LEVEL_INDUCTIVE,
    FiniteCategory,
    pseudo_table,
    validate_all,
)
from .core import BudgetExceeded, Check, Failure, MalformedInputError, VerificationError

LIFT_BUDGET = 1_000_000


@dataclass(frozen=True)
class SzElement:
    """A pair (U, u): sorted admissible history set and chosen member."""

    members: tuple[int, ...]
    point: int

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))
        if self.point not in self.members:
            raise MalformedInputError("chosen member must belong to the history set")


def star_of(G: FiniteCategory, e: int) -> tuple[int, ...]:
    """All arrows of G with domain e."""
    if e not in G.objects:
        raise MalformedInputError(f"{e} is not an object")
    return tuple(g for g in range(G.n) if G.dom[g] == e)


@dataclass(frozen=True)
class SzExpansion:
    base: FiniteCategory
    elements: tuple[SzElement, ...]
    category: FiniteCategory
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {el: i for i, el in enumerate(self.elements)})

    @property
    def n(self) -> int:
        return len(self.elements)

    def find(self, members, point: int) -> int:
        return self.index[SzElement(tuple(members), point)]


def _admissible_sets(G: FiniteCategory, e: int):
    """Subsets of star(e) containing e, in lexicographic order of the
    sorted member tuple."""
    rest = [g for g in star_of(G, e) if g != e]
    sets = []
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            sets.append(tuple(sorted((e,) + extra)))
    return sorted(sets)


def build_sz(G: FiniteCategory) -> SzExpansion:
    """Construct the expansion of a validated inductive groupoid.

    Elements are enumerated by domain object, then history set, then
    chosen member.  The product follows the defining rule; inverses,
    domains, ranges and the order use their closed forms.  The result
    must pass all four validation levels and its identity set must be
    exactly the pairs whose chosen member is an object; a failure of any
    of these is raised, since it would falsify the construction itself.
    """
    if not (G.validated(LEVEL_INDUCTIVE) and G.validated(LEVEL_GROUPOID)):
        raise MalformedInputError("build_sz needs a validated inductive groupoid")
    elements: list[SzElement] = []
    for e in G.objects:
        for members in _admissible_sets(G, e):
            for u in members:
                elements.append(SzElement(members, u))
    index = {el: i for i, el in enumerate(elements)}
    n = len(elements)
    prod_g = G.prod

    def translate(u: int, members) -> tuple[int, ...]:
        return tuple(sorted(prod_g[u][w] for w in members))

    prod: list[list[int | None]] = [[None] * n for _ in range(n)]
    for i, (U, u) in enumerate((el.members, el.point) for el in elements):
        for j, (V, v) in enumerate((el.members, el.point) for el in elements):
            if G.ran[u] != G.dom[v]:
                continue
            if U != translate(u, V):
                continue
            prod[i][j] = index[SzElement(U, prod_g[u][v])]

    dom = []
    ran = []
    inv = []
    for el in elements:
        U, u = el.members, el.point
        dom.append(index[SzElement(U, G.dom[u])])
        u_inv = G.inv[u]
        inv_set = translate(u_inv, U)
        ran.append(index[SzElement(inv_set, G.ran[u])])
        inv.append(index[SzElement(inv_set, u_inv)])

    def below(i: int, j: int) -> bool:
        U, u = elements[i].members, elements[i].point
        V, v = elements[j].members, elements[j].point
        if not G.order[u][v]:
            return False
        restricted = {G.restriction[G.dom[u]][w] for w in V}
        return restricted.issubset(U)

    order = tuple(tuple(below(i, j) for j in range(n)) for i in range(n))
    labels = tuple(
        "({%s},%s)" % (",".join(G.label(w) for w in el.members), G.label(el.point))
        for el in elements
    )
    raw = FiniteCategory(
        n=n,
        objects=tuple(i for i, el in enumerate(elements) if el.point in G.objects),
        dom=tuple(dom),
        ran=tuple(ran),
        prod=tuple(tuple(row) for row in prod),
        order=order,
        inv=tuple(inv),
        labels=labels,
    )
    validated = validate_all(raw, groupoid=True)
    if isinstance(validated, Failure):
        raise VerificationError(validated)
    return SzExpansion(G, tuple(elements), validated)


def sz_pseudoproduct(sz: SzExpansion, i: int, j: int) -> int:
    """The closed form of the total product on expansion elements.

    Restrict the first history set to the domain of the combined arrow,
    add the translated second history set, and pair with the combined
    arrow itself.
    """
    G = sz.base
    ps = pseudo_table(G)
    U, u = sz.elements[i].members, sz.elements[i].point
    V, v = sz.elements[j].members, sz.elements[j].point
    uv = ps[u][v]
    delta = G.dom[uv]
    first = {G.restriction[delta][w] for w in U}
    second = {ps[u][w] for w in V}
    return sz.find(sorted(first | second), uv)


def check_pseudoproduct_formula(sz: SzExpansion) -> Failure | None:
    """The closed form must agree with the generic pseudoproduct everywhere."""
    generic = pseudo_table(sz.category)
    for i in range(sz.n):
        for j in range(sz.n):
            if sz_pseudoproduct(sz, i, j) != generic[i][j]:
                return Failure(
                    "SZ_PSEUDOPRODUCT_MISMATCH", (i, j, generic[i][j], sz_pseudoproduct(sz, i, j))
                )
    return None


def check_closed_forms(sz: SzExpansion) -> list[Check]:
    """Cross-check every closed form against the scan-based tables.

    The identity set, the restriction formula (E, e)|(A, a) = (E, e|a),
    and the meet formula ((e^f)|(E u F), e^f) are each compared with what
    the validators computed by exhaustive scan.
    """
    G, C = sz.base, sz.category
    checks: list[Check] = []

    expected_objects = tuple(
        i for i, el in enumerate(sz.elements) if el.point in G.objects
    )
    checks.append(
        Check(
            "identities_are_object_pointed_pairs",
            None
            if C.objects == expected_objects
            else Failure("SZ_OBJECTS", (), f"{C.objects} != {expected_objects}"),
        )
    )

    bad = None
    for o in C.objects:
        E_set, e = sz.elements[o].members, sz.elements[o].point
        for x in range(sz.n):
            if not C.order[o][C.dom[x]]:
                continue
            A, a = sz.elements[x].members, sz.elements[x].point
            formula = sz.find(E_set, G.restriction[e][a])
            if C.restriction[o][x] != formula:
                bad = Failure("SZ_RESTRICTION_FORMULA", (o, x, C.restriction[o][x], formula))
                break
        if bad:
            break
    checks.append(Check("restriction_formula", bad))

    bad = None
    for o1 in C.objects:
        E_set, e = sz.elements[o1].members, sz.elements[o1].point
        for o2 in C.objects:
            F_set, f = sz.elements[o2].members, sz.elements[o2].point
            m = G.meet[e][f]
            joined = sorted(set(E_set) | set(F_set))
            restricted = tuple(sorted({G.restriction[m][w] for w in joined}))
            formula = sz.find(restricted, m)
            if C.meet[o1][o2] != formula:
                bad = Failure("SZ_MEET_FORMULA", (o1, o2, C.meet[o1][o2], formula))
                break
        if bad:
            break
    checks.append(Check("meet_formula", bad))

    checks.append(Check("pseudoproduct_formula", check_pseudoproduct_formula(sz)))
    return checks


def iota(sz: SzExpansion) -> ElementMap:
    """The embedding g -> ({dom(g), g}, g) of the base into its expansion."""
    G = sz.base
    values = tuple(sz.find({G.dom[g], g}, g) for g in range(G.n))
    return ElementMap(G, sz.category, values)


def _is_inductive_functor(C: FiniteCategory, D: FiniteCategory, values) -> bool:
    for x in range(C.n):
        for y in range(C.n):
            p = C.prod[x][y]
            if p is None:
                continue
            q = D.prod[values[x]][values[y]]
            if q is None or q != values[p]:
                return False
    for x in range(C.n):
        if D.dom[values[x]] != values[C.dom[x]]:
            return False
        if D.ran[values[x]] != values[C.ran[x]]:
            return False
    for x in range(C.n):
        for y in range(C.n):
            if C.order[x][y] and not D.order[values[x]][values[y]]:
                return False
    for e in C.objects:
        for f in C.objects:
            if D.meet[values[e]][values[f]] != values[C.meet[e][f]]:
                return False
    return True


def find_unique_lift(
    sz: SzExpansion, psi: ElementMap, budget: int = LIFT_BUDGET
) -> ElementMap | Failure:
    """Search for the unique inductive functor from the expansion extending
    a premorphism of the base.

    `psi` must be an ordered groupoid premorphism from sz.base; its values
    force the lift on the embedded copy of the base, and every assignment
    of the remaining elements is tried against the inductive-functor
    axioms.  Exactly one survivor is expected; zero or several is returned
    as a falsification report, while an extension space larger than the
    budget raises, reported distinctly from both.
    """
    if psi.source is not sz.base and psi.source != sz.base:
        raise MalformedInputError("psi must start at the expanded groupoid")
    H = psi.target
    cls = classify_functor_map(psi)
    if not cls.ogp:
        raise MalformedInputError("psi is not an ordered groupoid premorphism")

    embed = iota(sz).values
    forced: dict[int, int] = {}
    for g in range(sz.base.n):
        forced[embed[g]] = psi.values[g]
    free = [i for i in range(sz.n) if i not in forced]
    total = H.n ** len(free)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate extensions exceed the budget of {budget}")

    survivors: list[tuple[int, ...]] = []
    for extension in itertools.product(range(H.n), repeat=len(free)):
        values = [0] * sz.n
        for i, v in forced.items():
            values[i] = v
        for i, v in zip(free, extension):
            values[i] = v
        if _is_inductive_functor(sz.category, H, values):
            survivors.append(tuple(values))
            if len(survivors) > 1:
                break
    if not survivors:
        return Failure("LIFT_MISSING", (), "no inductive functor extends the premorphism")
    if len(survivors) > 1:
        return Failure("LIFT_NOT_UNIQUE", tuple(survivors[:2]))
    return ElementMap(sz.category, H, survivors[0])

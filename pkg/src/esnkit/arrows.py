"""Classification of total maps against every arrow notion in play.

A map between restriction semigroups is tested against the lax product
conditions in both directions (product image below or above the image
product), the matching unary inequalities, the equational strong form,
order preservation and inverse preservation.  A map between inductive
categories is tested against the prefunctor conditions ICP1..ICP5, the
groupoid condition IGP, and plain ordered/inductive functoriality.

Each flag is decided independently by direct quantification over the
source; implications between flags are never used to shortcut a decision,
so the known implications stay testable.  Derived names (vee_r, wedge_r,
strong_wedge_r, ...) are pure conjunctions of decided flags.
"""
from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, fields

from .categories import (
    LEVEL_GROUPOID,
    LEVEL_INDUCTIVE,
    LEVEL_ORDERED,
    FiniteCategory,
    pseudo_table,
)
from .core import BudgetExceeded, Check, Failure, MalformedInputError
from .semigroups import RestrictionStructure

DEFAULT_BUDGET = 10_000_000
BUDGET_ENV_VAR = "ESNKIT_BUDGET"


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class ElementMap:
    """A total function between the element sets of two structures."""

    source: object
    target: object
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != self.source.n:
            raise MalformedInputError(f"{len(values)} values for {self.source.n} elements")
        for v in values:
            if not 0 <= v < self.target.n:
                raise MalformedInputError(f"value {v} out of range")
        object.__setattr__(self, "values", values)


def compose_maps(first: ElementMap, second: ElementMap) -> ElementMap:
    """first then second; the middle structures must coincide."""
    if first.target is not second.source and first.target != second.source:
        raise MalformedInputError("maps are not composable")
    return ElementMap(
        first.source, second.target, tuple(second.values[v] for v in first.values)
    )


def _conj(*vals):
    if any(v is None for v in vals):
        return None
    return all(vals)


@dataclass(frozen=True)
class ArrowClassification:
    """Which arrow axioms a map satisfies; None marks a flag that does not
    apply to the map's kind or to the structures' capabilities."""

    kind: str
    # between restriction semigroups
    products_equal: bool | None = None
    unary_equal: bool | None = None
    vee1: bool | None = None
    vee2: bool | None = None
    wedge1: bool | None = None
    wedge2: bool | None = None
    strong1: bool | None = None
    order_preserving: bool | None = None
    inverse_preserving: bool | None = None
    idempotents_preserved: bool | None = None
    semilattice_preserved: bool | None = None
    # between inductive categories
    preserves_products: bool | None = None
    preserves_domran: bool | None = None
    preserves_objects: bool | None = None
    preserves_meets: bool | None = None
    icp1: bool | None = None
    icp2: bool | None = None
    icp3: bool | None = None
    icp4: bool | None = None
    icp5: bool | None = None
    igp: bool | None = None
    lax_pseudoproducts: bool | None = None

    # semigroup-side conjunctions
    @property
    def morphism(self):
        return _conj(self.products_equal, self.unary_equal)

    @property
    def vee_r(self):
        return _conj(self.vee1, self.vee2)

    @property
    def wedge_r(self):
        return _conj(self.wedge1, self.wedge2)

    @property
    def ordered_wedge_r(self):
        return _conj(self.wedge1, self.wedge2, self.order_preserving)

    @property
    def strong_wedge_r(self):
        return _conj(self.wedge1, self.wedge2, self.strong1)

    @property
    def vee_i(self):
        # only meaningful between inverse semigroups
        return self.vee1 if self.inverse_preserving is not None else None

    @property
    def wedge_i(self):
        return _conj(self.wedge1, self.inverse_preserving)

    @property
    def ordered_wedge_i(self):
        return _conj(self.wedge1, self.inverse_preserving, self.order_preserving)

    # category-side conjunctions
    @property
    def ordered_functor(self):
        return _conj(self.preserves_products, self.preserves_domran, self.icp3)

    @property
    def inductive_functor(self):
        return _conj(self.ordered_functor, self.preserves_meets)

    @property
    def prefunctor(self):
        return _conj(self.icp1, self.icp2, self.icp3, self.icp4)

    @property
    def strong_prefunctor(self):
        return _conj(self.icp1, self.icp2, self.icp3, self.icp4, self.icp5)

    @property
    def ogp(self):
        # An ordered groupoid premorphism's lax product condition must hold
        # through the total pseudoproduct, not just on composable pairs:
        # the weaker quantification admits maps with no functor lift off the
        # expansion (see ogp_composable_only, kept for comparison).
        return _conj(self.lax_pseudoproducts, self.igp, self.icp3)

    @property
    def ogp_composable_only(self):
        return _conj(self.icp1, self.igp, self.icp3)

    def flags(self) -> dict[str, bool]:
        """Every decided flag, atomic and derived, by name."""
        out = {}
        for f in fields(self):
            if f.name == "kind":
                continue
            v = getattr(self, f.name)
            if v is not None:
                out[f.name] = v
        for name in DERIVED_FLAGS:
            v = getattr(self, name)
            if v is not None:
                out[name] = v
        return out


DERIVED_FLAGS = (
    "morphism",
    "vee_r",
    "wedge_r",
    "ordered_wedge_r",
    "strong_wedge_r",
    "vee_i",
    "wedge_i",
    "ordered_wedge_i",
    "ordered_functor",
    "inductive_functor",
    "prefunctor",
    "strong_prefunctor",
    "ogp",
    "ogp_composable_only",
)


def classify_semigroup_map(m: ElementMap) -> ArrowClassification:
    """Decide every semigroup-side flag by exhaustive quantification."""
    S, T = m.source, m.target
    if not isinstance(S, RestrictionStructure) or not isinstance(T, RestrictionStructure):
        raise MalformedInputError("classify_semigroup_map needs restriction structures")
    v = m.values
    ns = S.n
    mul_s, mul_t = S.mul, T.mul
    leq = T.order
    pairs = [(s, t) for s in range(ns) for t in range(ns)]

    products_equal = all(v[mul_s[s][t]] == mul_t[v[s]][v[t]] for s, t in pairs)
    vee1 = all(leq[v[mul_s[s][t]]][mul_t[v[s]][v[t]]] for s, t in pairs)
    wedge1 = all(leq[mul_t[v[s]][v[t]]][v[mul_s[s][t]]] for s, t in pairs)
    strong1 = all(
        mul_t[v[s]][v[t]] == mul_t[T.plus[v[s]]][v[mul_s[s][t]]]
        and mul_t[v[s]][v[t]] == mul_t[v[mul_s[s][t]]][T.star[v[t]]]
        for s, t in pairs
    )
    unary_equal = all(
        v[S.plus[s]] == T.plus[v[s]] and v[S.star[s]] == T.star[v[s]] for s in range(ns)
    )
    vee2 = all(
        leq[v[S.plus[s]]][T.plus[v[s]]] and leq[v[S.star[s]]][T.star[v[s]]]
        for s in range(ns)
    )
    wedge2 = all(
        leq[T.plus[v[s]]][v[S.plus[s]]] and leq[T.star[v[s]]][v[S.star[s]]]
        for s in range(ns)
    )
    order_preserving = all(
        leq[v[s]][v[t]] for s, t in pairs if S.order[s][t]
    )
    t_idem = set(T.base.idempotents())
    idempotents_preserved = all(v[e] in t_idem for e in S.base.idempotents())
    f_set = set(T.E.members)
    semilattice_preserved = all(v[e] in f_set for e in S.E)
    inverse_preserving = None
    if S.inv is not None and T.inv is not None:
        inverse_preserving = all(v[S.inv[s]] == T.inv[v[s]] for s in range(ns))

    return ArrowClassification(
        kind="semigroup",
        products_equal=products_equal,
        unary_equal=unary_equal,
        vee1=vee1,
        vee2=vee2,
        wedge1=wedge1,
        wedge2=wedge2,
        strong1=strong1,
        order_preserving=order_preserving,
        inverse_preserving=inverse_preserving,
        idempotents_preserved=idempotents_preserved,
        semilattice_preserved=semilattice_preserved,
    )


def classify_functor_map(m: ElementMap) -> ArrowClassification:
    """Decide every category-side flag by exhaustive quantification.

    The lax conditions are evaluated through the pseudoproduct, which is
    total, so every flag is decided for arbitrary maps; flags needing a
    capability the structures lack (inverses for IGP) stay None.
    """
    C, D = m.source, m.target
    if not isinstance(C, FiniteCategory) or not isinstance(D, FiniteCategory):
        raise MalformedInputError("classify_functor_map needs categories")
    if not (C.validated(LEVEL_INDUCTIVE) and D.validated(LEVEL_INDUCTIVE)):
        raise MalformedInputError("classification needs inductive validation on both sides")
    v = m.values
    ns = C.n
    leq = D.order
    ps = pseudo_table(C)
    pt = pseudo_table(D)
    pairs = [(s, t) for s in range(ns) for t in range(ns)]
    comp = [(s, t) for s, t in pairs if C.prod[s][t] is not None]

    preserves_products = all(
        D.prod[v[s]][v[t]] is not None and D.prod[v[s]][v[t]] == v[C.prod[s][t]]
        for s, t in comp
    )
    preserves_domran = all(
        D.dom[v[x]] == v[C.dom[x]] and D.ran[v[x]] == v[C.ran[x]] for x in range(ns)
    )
    d_objects = set(D.objects)
    preserves_objects = all(v[e] in d_objects for e in C.objects)
    preserves_meets = all(
        v[e] in d_objects and v[f] in d_objects and D.meet[v[e]][v[f]] == v[C.meet[e][f]]
        for e in C.objects
        for f in C.objects
    )
    icp1 = all(leq[pt[v[s]][v[t]]][v[C.prod[s][t]]] for s, t in comp)
    lax_pseudoproducts = all(leq[pt[v[s]][v[t]]][v[ps[s][t]]] for s, t in pairs)
    icp2 = all(
        leq[D.dom[v[x]]][v[C.dom[x]]] and leq[D.ran[v[x]]][v[C.ran[x]]]
        for x in range(ns)
    )
    icp3 = all(leq[v[s]][v[t]] for s, t in pairs if C.order[s][t])
    icp4 = all(
        leq[pt[v[a]][v[f]]][v[ps[a][f]]] and leq[pt[v[f]][v[a]]][v[ps[f][a]]]
        for a in range(ns)
        for f in C.objects
    )
    icp5 = all(
        D.dom[pt[v[s]][v[t]]] == D.meet[D.dom[v[s]]][D.dom[v[ps[s][t]]]]
        and D.ran[pt[v[s]][v[t]]] == D.meet[D.ran[v[ps[s][t]]]][D.ran[v[t]]]
        for s, t in pairs
    )
    igp = None
    if C.validated(LEVEL_GROUPOID) and D.validated(LEVEL_GROUPOID):
        igp = all(v[C.inv[x]] == D.inv[v[x]] for x in range(ns))

    return ArrowClassification(
        kind="category",
        preserves_products=preserves_products,
        preserves_domran=preserves_domran,
        preserves_objects=preserves_objects,
        preserves_meets=preserves_meets,
        icp1=icp1,
        icp2=icp2,
        icp3=icp3,
        icp4=icp4,
        icp5=icp5,
        igp=igp,
        lax_pseudoproducts=lax_pseudoproducts,
    )


def classify(m: ElementMap) -> ArrowClassification:
    if isinstance(m.source, RestrictionStructure):
        return classify_semigroup_map(m)
    return classify_functor_map(m)


@dataclass
class MapEnumeration:
    """Deterministic enumeration of all maps source -> target, classified.

    Iterating yields (map, classification) pairs passing the flag filter,
    up to `cap`.  `counts` accumulates per-flag tallies over every map
    scanned so far and `scanned` how many that is.  When the full space
    exceeds the budget a seed must be supplied; a uniform sorted sample of
    `budget` maps is then scanned instead.
    """

    source: object
    target: object
    flag: str | None = None
    cap: int | None = None
    budget: int | None = None
    seed: int | None = None

    def __post_init__(self):
        self.counts: dict[str, int] = {}
        self.scanned = 0
        self.total = self.target.n ** self.source.n
        self.budget = resolve_budget(self.budget)
        self.sampled = self.total > self.budget
        if self.sampled and self.seed is None:
            raise BudgetExceeded(
                f"{self.total} maps exceed the budget of {self.budget}; supply a seed to sample"
            )

    def _indices(self):
        if not self.sampled:
            return range(self.total)
        rng = random.Random(self.seed)
        return sorted(rng.sample(range(self.total), self.budget))

    def _values_for(self, k: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.source.n):
            k, d = divmod(k, self.target.n)
            digits.append(d)
        return tuple(reversed(digits))

    def __iter__(self):
        yielded = 0
        for k in self._indices():
            m = ElementMap(self.source, self.target, self._values_for(k))
            cls = classify(m)
            self.scanned += 1
            for name, val in cls.flags().items():
                if val:
                    self.counts[name] = self.counts.get(name, 0) + 1
            if self.flag is not None and not cls.flags().get(self.flag, False):
                continue
            yield m, cls
            yielded += 1
            if self.cap is not None and yielded >= self.cap:
                return


def enumerate_maps(source, target, flag=None, cap=None, budget=None, seed=None) -> MapEnumeration:
    return MapEnumeration(source, target, flag, cap, budget, seed)


def transfer_functor_map(m: ElementMap, partners: tuple[FiniteCategory, FiniteCategory]) -> ElementMap:
    """Reinterpret a semigroup map between the partner categories.

    The function on indices is unchanged; only the structures it is read
    against change.  No implicit coercion happens anywhere else.
    """
    return ElementMap(partners[0], partners[1], m.values)


def _biconditional(name: str, lhs, rhs, witness) -> Check:
    if lhs is None or rhs is None:
        return Check(name, Failure("UNDECIDED", witness, "capability missing"))
    if lhs != rhs:
        return Check(name, Failure("BICONDITIONAL_FAILS", witness, f"{lhs} vs {rhs}"))
    return Check(name)


def _implication(name: str, lhs, rhs, witness) -> Check:
    if lhs and rhs is False:
        return Check(name, Failure("IMPLICATION_FAILS", witness))
    return Check(name)


def transfer_checks(
    sem: ArrowClassification, cat: ArrowClassification, witness: tuple
) -> list[Check]:
    """The transfer biconditionals for one map, classified both ways."""
    checks = [
        _biconditional("vee_r_iff_ordered_functor", sem.vee_r, cat.ordered_functor, witness),
        _biconditional("ordered_wedge_r_iff_prefunctor", sem.ordered_wedge_r, cat.prefunctor, witness),
        _biconditional(
            "strong_wedge_r_iff_strong_prefunctor", sem.strong_wedge_r, cat.strong_prefunctor, witness
        ),
        _biconditional("morphism_iff_inductive_functor", sem.morphism, cat.inductive_functor, witness),
    ]
    if sem.inverse_preserving is not None:
        checks.append(_biconditional("vee_i_iff_vee_r", sem.vee_i, sem.vee_r, witness))
        checks.append(
            _biconditional(
                "ordered_wedge_i_iff_strong_wedge_r", sem.ordered_wedge_i, sem.strong_wedge_r, witness
            )
        )
    if cat.igp is not None:
        checks.append(_biconditional("ogp_iff_strong_prefunctor", cat.ogp, cat.strong_prefunctor, witness))
    return checks


def implication_checks(
    sem: ArrowClassification, cat: ArrowClassification, witness: tuple
) -> list[Check]:
    """Universal implications, asserted redundantly on every classified map."""
    checks = [
        _implication("vee_r_implies_order_preserving", sem.vee_r, sem.order_preserving, witness),
        _implication(
            "vee_r_implies_idempotents_preserved", sem.vee_r, sem.idempotents_preserved, witness
        ),
        _implication(
            "vee_r_implies_semilattice_preserved", sem.vee_r, sem.semilattice_preserved, witness
        ),
        _implication("vee_r_implies_unary_equal", sem.vee_r, sem.unary_equal, witness),
        _implication("strong1_implies_wedge1", sem.strong1, sem.wedge1, witness),
        _implication(
            "strong_implies_ordered_wedge_r", sem.strong_wedge_r, sem.ordered_wedge_r, witness
        ),
        _implication("morphism_implies_vee_r", sem.morphism, sem.vee_r, witness),
        _implication("morphism_implies_strong", sem.morphism, sem.strong_wedge_r, witness),
        _implication(
            "icp5_implies_icp4_given_icp123",
            _conj(cat.icp1, cat.icp2, cat.icp3, cat.icp5),
            cat.icp4,
            witness,
        ),
    ]
    if cat.igp is not None:
        checks.append(_implication("ogp_implies_icp5", cat.ogp, cat.icp5, witness))
        checks.append(_implication("ogp_implies_icp2", cat.ogp, cat.icp2, witness))
    return checks


def verify_transfer_theorems(
    m: ElementMap, partners: tuple[FiniteCategory, FiniteCategory]
) -> list[Check]:
    """Classify one map on both sides of the correspondence and assert the
    transfer biconditionals and the universal implications for it."""
    sem = classify_semigroup_map(m)
    cat = classify_functor_map(transfer_functor_map(m, partners))
    witness = (m.values,)
    return transfer_checks(sem, cat, witness) + implication_checks(sem, cat, witness)


CLOSURE_CLASSES = ("ordered_wedge_r", "strong_wedge_r", "vee_r")


def verify_composition_closure(
    first_pairs, second_pairs
) -> tuple[list[Check], Failure | None]:
    """Check closure of the composable classes over all composable pairs.

    `first_pairs` and `second_pairs` are (map, classification) sequences
    with matching middle structure.  Returns the closure checks plus an
    optional witness that two lax-above maps (wedge both sides, order not
    required) compose to something failing the lax-above product condition;
    such a witness is reported, never asserted to exist.
    """
    checks = {name: Check(name) for name in CLOSURE_CLASSES}
    wedge_witness: Failure | None = None
    for f, cf in first_pairs:
        for g, cg in second_pairs:
            comp = compose_maps(f, g)
            cc = classify_semigroup_map(comp)
            for name in CLOSURE_CLASSES:
                if not checks[name].ok:
                    continue
                if getattr(cf, name) and getattr(cg, name) and not getattr(cc, name):
                    checks[name] = Check(
                        name,
                        Failure(
                            "COMPOSITION_NOT_CLOSED",
                            (f.values, g.values),
                            f"composite leaves {name}",
                        ),
                    )
            if (
                wedge_witness is None
                and cf.wedge_r
                and cg.wedge_r
                and not cc.wedge1
            ):
                wedge_witness = Failure(
                    "WEDGE_COMPOSITION_WITNESS",
                    (f.values, g.values),
                    "unordered wedge premorphisms whose composite fails the lax-above product law",
                )
    return list(checks.values()), wedge_witness


HASSE_SEMIGROUP_NODES = (
    ("REST_vee", "vee_r", False),
    ("REST_wedge", "ordered_wedge_r", False),
    ("REST_strong", "strong_wedge_r", False),
    ("REST_mor", "morphism", False),
    ("INV_vee", "vee_i", True),
    ("INV_wedge", "ordered_wedge_i", True),
    ("INV_mor", "morphism", True),
)

HASSE_CATEGORY_NODES = (
    ("IC_ord", "ordered_functor", False),
    ("IC_pre", "prefunctor", False),
    ("IC_strong", "strong_prefunctor", False),
    ("IC_ind", "inductive_functor", False),
    ("IG_ord", "ordered_functor", True),
    ("IG_ogp", "ogp", True),
    ("IG_ind", "inductive_functor", True),
)


def hasse_memberships(cls: ArrowClassification) -> dict[str, bool | None]:
    """Node membership for one classified arrow.

    Specialized nodes (inverse semigroups, groupoids) read None when the
    endpoints lack the capability.
    """
    out: dict[str, bool | None] = {}
    if cls.kind == "semigroup":
        special_ok = cls.inverse_preserving is not None
        for node, flag, special in HASSE_SEMIGROUP_NODES:
            if special and not special_ok:
                out[node] = None
            else:
                out[node] = getattr(cls, flag)
    else:
        special_ok = cls.igp is not None
        for node, flag, special in HASSE_CATEGORY_NODES:
            if special and not special_ok:
                out[node] = None
            else:
                out[node] = getattr(cls, flag)
    return out


def hasse_report(cls: ArrowClassification) -> str:
    """Textual membership report over the lattice of arrow classes, listed
    from the most general class downward."""
    member = hasse_memberships(cls)
    side = "semigroup arrows" if cls.kind == "semigroup" else "category arrows"
    lines = [f"arrow class membership ({side})"]
    for node in member:
        status = {True: "member", False: "not a member", None: "n/a"}[member[node]]
        lines.append(f"  {node:<12} {status}")
    return "\n".join(lines)

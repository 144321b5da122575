"""Bulk classification of every map between two restriction semigroups.

The exhaustive transfer suite quantifies over all n_target ** n_source
total functions, so the flag predicates are evaluated as vector operations
over blocks of maps: a block is a (B, n_source) array of value rows, and
each universally quantified condition becomes a short loop over source
pairs (or elements) combining table lookups over the whole block.

The semigroup-side flags read only the semigroup tables and the
category-side flags only the category tables (scan-derived pseudoproducts,
meets and orders), so the transfer biconditionals relate two genuinely
independent computations.  Results agree with the scalar classifiers in
`arrows`, which remain the reference; the agreement is part of the test
suite, not assumed here.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arrows import resolve_budget
from .categories import FiniteCategory, pseudo_table
from .core import Check, Failure
from .semigroups import RestrictionStructure

DEFAULT_BLOCK = 1 << 16

BICONDITIONALS = (
    ("vee_r_iff_ordered_functor", "vee_r", "ordered_functor"),
    ("ordered_wedge_r_iff_prefunctor", "ordered_wedge_r", "prefunctor"),
    ("strong_wedge_r_iff_strong_prefunctor", "strong_wedge_r", "strong_prefunctor"),
    ("morphism_iff_inductive_functor", "morphism", "inductive_functor"),
    ("vee_i_iff_vee_r", "vee_i", "vee_r"),
    ("ordered_wedge_i_iff_strong_wedge_r", "ordered_wedge_i", "strong_wedge_r"),
    ("ogp_iff_strong_prefunctor", "ogp", "strong_prefunctor"),
)

IMPLICATIONS = (
    ("vee_r_implies_order_preserving", "vee_r", "order_preserving"),
    ("vee_r_implies_idempotents_preserved", "vee_r", "idempotents_preserved"),
    ("vee_r_implies_semilattice_preserved", "vee_r", "semilattice_preserved"),
    ("vee_r_implies_unary_equal", "vee_r", "unary_equal"),
    ("strong1_implies_wedge1", "strong1", "wedge1"),
    ("strong_implies_ordered_wedge_r", "strong_wedge_r", "ordered_wedge_r"),
    ("morphism_implies_vee_r", "morphism", "vee_r"),
    ("morphism_implies_strong", "morphism", "strong_wedge_r"),
    ("icp5_implies_icp4_given_icp123", "icp123_and_icp5", "icp4"),
    ("ogp_implies_icp5", "ogp", "icp5"),
    ("ogp_implies_icp2", "ogp", "icp2"),
)

COUNTED_FLAGS = (
    "morphism",
    "vee1",
    "vee2",
    "vee_r",
    "wedge1",
    "wedge2",
    "wedge_r",
    "strong1",
    "strong_wedge_r",
    "order_preserving",
    "ordered_wedge_r",
    "inverse_preserving",
    "ordered_wedge_i",
    "ordered_functor",
    "inductive_functor",
    "prefunctor",
    "strong_prefunctor",
    "icp1",
    "icp2",
    "icp3",
    "icp4",
    "icp5",
    "igp",
    "lax_pseudoproducts",
    "ogp",
    "ogp_composable_only",
)


def _partial_to_array(table, n: int, sentinel: int):
    return np.array(
        [[sentinel if v is None else v for v in row] for row in table], dtype=np.intp
    )


@dataclass
class _Side:
    """Numpy views of one structure's tables."""

    n: int
    mul: np.ndarray
    plus: np.ndarray
    star: np.ndarray
    leq: np.ndarray
    inv: np.ndarray | None
    in_E: np.ndarray
    idem: np.ndarray
    prod: np.ndarray
    prod_def: np.ndarray
    dom: np.ndarray
    ran: np.ndarray
    pseudo: np.ndarray
    meet: np.ndarray
    is_object: np.ndarray

    @staticmethod
    def build(R: RestrictionStructure, C: FiniteCategory) -> "_Side":
        n = R.n
        mul = np.array(R.mul, dtype=np.intp).reshape(n, n)
        plus = np.array(R.plus, dtype=np.intp)
        star = np.array(R.star, dtype=np.intp)
        leq = np.array(R.order, dtype=bool).reshape(n, n)
        inv = np.array(R.inv, dtype=np.intp) if R.inv is not None else None
        in_E = np.zeros(n, dtype=bool)
        in_E[list(R.E.members)] = True
        idem = np.array([mul[a, a] == a for a in range(n)])
        prod = _partial_to_array(C.prod, n, 0)
        prod_def = np.array([[v is not None for v in row] for row in C.prod])
        dom = np.array(C.dom, dtype=np.intp)
        ran = np.array(C.ran, dtype=np.intp)
        pseudo = np.array(pseudo_table(C), dtype=np.intp).reshape(n, n)
        meet = _partial_to_array(C.meet, n, 0)
        is_object = np.zeros(n, dtype=bool)
        is_object[list(C.objects)] = True
        return _Side(
            n, mul, plus, star, leq, inv, in_E, idem, prod, prod_def, dom, ran,
            pseudo, meet, is_object,
        )


class TransferSweep:
    """Classify blocks of maps between a fixed source and target pair."""

    def __init__(
        self,
        source: RestrictionStructure,
        target: RestrictionStructure,
        source_cat: FiniteCategory,
        target_cat: FiniteCategory,
    ):
        self.source = source
        self.target = target
        self.source_cat = source_cat
        self.target_cat = target_cat
        self.src = _Side.build(source, source_cat)
        self.tgt = _Side.build(target, target_cat)
        ns = self.src.n
        self.total = self.tgt.n ** ns
        self.pairs = [(s, t) for s in range(ns) for t in range(ns)]
        self.comp_pairs = [
            (s, t) for s, t in self.pairs if source_cat.prod[s][t] is not None
        ]
        self.le_pairs = [(s, t) for s, t in self.pairs if source.order[s][t]]
        self.cat_le_pairs = [(s, t) for s, t in self.pairs if source_cat.order[s][t]]

    def block_values(self, start: int, stop: int) -> np.ndarray:
        """Rows start..stop of the lexicographic enumeration of all maps."""
        ks = np.arange(start, stop, dtype=np.int64)
        cols = np.unravel_index(ks, (self.tgt.n,) * self.src.n)
        return np.stack(cols, axis=1).astype(np.intp)

    def classify_block(self, V: np.ndarray) -> dict[str, np.ndarray]:
        """Decide every flag for a (B, n_source) block of value rows."""
        src, tgt = self.src, self.tgt
        ns = src.n
        B = V.shape[0]
        ok = lambda: np.ones(B, dtype=bool)

        products_equal = ok()
        vee1 = ok()
        wedge1 = ok()
        strong1 = ok()
        for s, t in self.pairs:
            a = V[:, s]
            b = V[:, t]
            ab = tgt.mul[a, b]
            vst = V[:, src.mul[s, t]]
            products_equal &= ab == vst
            vee1 &= tgt.leq[vst, ab]
            wedge1 &= tgt.leq[ab, vst]
            strong1 &= (ab == tgt.mul[tgt.plus[a], vst]) & (ab == tgt.mul[vst, tgt.star[b]])

        unary_equal = ok()
        vee2 = ok()
        wedge2 = ok()
        inverse_preserving = ok() if (src.inv is not None and tgt.inv is not None) else None
        for s in range(ns):
            x = V[:, s]
            vplus = V[:, src.plus[s]]
            vstar = V[:, src.star[s]]
            unary_equal &= (vplus == tgt.plus[x]) & (vstar == tgt.star[x])
            vee2 &= tgt.leq[vplus, tgt.plus[x]] & tgt.leq[vstar, tgt.star[x]]
            wedge2 &= tgt.leq[tgt.plus[x], vplus] & tgt.leq[tgt.star[x], vstar]
            if inverse_preserving is not None:
                inverse_preserving &= V[:, src.inv[s]] == tgt.inv[x]

        order_preserving = ok()
        for s, t in self.le_pairs:
            order_preserving &= tgt.leq[V[:, s], V[:, t]]

        idempotents_preserved = ok()
        for e in np.flatnonzero(src.idem):
            idempotents_preserved &= tgt.idem[V[:, e]]
        semilattice_preserved = ok()
        for e in np.flatnonzero(src.in_E):
            semilattice_preserved &= tgt.in_E[V[:, e]]

        # category side, over the same value rows reinterpreted
        preserves_products = ok()
        icp1 = ok()
        for s, t in self.comp_pairs:
            a = V[:, s]
            b = V[:, t]
            vst = V[:, src.prod[s, t]]
            preserves_products &= tgt.prod_def[a, b] & (tgt.prod[a, b] == vst)
            icp1 &= tgt.leq[tgt.pseudo[a, b], vst]

        lax_pseudoproducts = ok()
        for s, t in self.pairs:
            lax_pseudoproducts &= tgt.leq[
                tgt.pseudo[V[:, s], V[:, t]], V[:, src.pseudo[s, t]]
            ]

        preserves_domran = ok()
        icp2 = ok()
        igp = ok() if (self.source_cat.inv is not None and self.target_cat.inv is not None) else None
        for s in range(ns):
            x = V[:, s]
            vdom = V[:, src.dom[s]]
            vran = V[:, src.ran[s]]
            preserves_domran &= (tgt.dom[x] == vdom) & (tgt.ran[x] == vran)
            icp2 &= tgt.leq[tgt.dom[x], vdom] & tgt.leq[tgt.ran[x], vran]
            if igp is not None:
                igp &= V[:, src.inv[s]] == tgt.inv[x]

        icp3 = ok()
        for s, t in self.cat_le_pairs:
            icp3 &= tgt.leq[V[:, s], V[:, t]]

        icp4 = ok()
        objects = np.flatnonzero(src.is_object)
        for a in range(ns):
            xa = V[:, a]
            for f in objects:
                xf = V[:, f]
                icp4 &= tgt.leq[tgt.pseudo[xa, xf], V[:, src.pseudo[a, f]]]
                icp4 &= tgt.leq[tgt.pseudo[xf, xa], V[:, src.pseudo[f, a]]]

        icp5 = ok()
        for s, t in self.pairs:
            a = V[:, s]
            b = V[:, t]
            pp = tgt.pseudo[a, b]
            vst = V[:, src.pseudo[s, t]]
            icp5 &= tgt.dom[pp] == tgt.meet[tgt.dom[a], tgt.dom[vst]]
            icp5 &= tgt.ran[pp] == tgt.meet[tgt.ran[vst], tgt.ran[b]]

        preserves_objects = ok()
        for e in objects:
            preserves_objects &= tgt.is_object[V[:, e]]
        preserves_meets = preserves_objects.copy()
        for e in objects:
            xe = V[:, e]
            for f in objects:
                xf = V[:, f]
                preserves_meets &= tgt.is_object[xe] & tgt.is_object[xf] & (
                    tgt.meet[xe, xf] == V[:, src.meet[e, f]]
                )

        flags = {
            "products_equal": products_equal,
            "unary_equal": unary_equal,
            "vee1": vee1,
            "vee2": vee2,
            "wedge1": wedge1,
            "wedge2": wedge2,
            "strong1": strong1,
            "order_preserving": order_preserving,
            "idempotents_preserved": idempotents_preserved,
            "semilattice_preserved": semilattice_preserved,
            "preserves_products": preserves_products,
            "preserves_domran": preserves_domran,
            "preserves_objects": preserves_objects,
            "preserves_meets": preserves_meets,
            "icp1": icp1,
            "icp2": icp2,
            "icp3": icp3,
            "icp4": icp4,
            "icp5": icp5,
            "lax_pseudoproducts": lax_pseudoproducts,
        }
        flags["icp123_and_icp5"] = icp1 & icp2 & icp3 & icp5
        flags["morphism"] = products_equal & unary_equal
        flags["vee_r"] = vee1 & vee2
        flags["wedge_r"] = wedge1 & wedge2
        flags["ordered_wedge_r"] = flags["wedge_r"] & order_preserving
        flags["strong_wedge_r"] = flags["wedge_r"] & strong1
        flags["ordered_functor"] = preserves_products & preserves_domran & icp3
        flags["inductive_functor"] = flags["ordered_functor"] & preserves_meets
        flags["prefunctor"] = icp1 & icp2 & icp3 & icp4
        flags["strong_prefunctor"] = flags["prefunctor"] & icp5
        if inverse_preserving is not None:
            flags["inverse_preserving"] = inverse_preserving
            flags["vee_i"] = vee1
            flags["wedge_i"] = wedge1 & inverse_preserving
            flags["ordered_wedge_i"] = flags["wedge_i"] & order_preserving
        if igp is not None:
            flags["igp"] = igp
            flags["ogp"] = lax_pseudoproducts & igp & icp3
            flags["ogp_composable_only"] = icp1 & igp & icp3
        return flags


@dataclass
class SweepOutcome:
    source_name: str
    target_name: str
    total: int
    counts: dict[str, int]
    checks: list[Check]
    witness_cap: int = 5

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def run_transfer_sweep(
    sweep: TransferSweep,
    source_name: str = "source",
    target_name: str = "target",
    block: int = DEFAULT_BLOCK,
    budget: int | None = None,
) -> SweepOutcome:
    """Classify every map, tally the flags, and assert the transfer
    biconditionals and universal implications across the whole space.

    Blocks are processed in ascending index order and merged in that fixed
    order, so counts and the first recorded witnesses are deterministic.
    Witnesses carry the offending map's value row verbatim.
    """
    budget = resolve_budget(budget)
    if sweep.total > budget:
        raise_budget = Failure(
            "BUDGET_EXCEEDED", (), f"{sweep.total} maps exceed budget {budget}"
        )
        return SweepOutcome(source_name, target_name, sweep.total, {}, [Check("budget", raise_budget)])

    counts: dict[str, int] = {}
    bad: dict[str, list[tuple]] = {}
    bad_counts: dict[str, int] = {}

    for start in range(0, sweep.total, block):
        stop = min(start + block, sweep.total)
        V = sweep.block_values(start, stop)
        flags = sweep.classify_block(V)
        for name in COUNTED_FLAGS:
            if name in flags:
                counts[name] = counts.get(name, 0) + int(flags[name].sum())

        def record(name: str, viol: np.ndarray):
            k = int(viol.sum())
            if k:
                bad_counts[name] = bad_counts.get(name, 0) + k
                slots = bad.setdefault(name, [])
                for idx in np.flatnonzero(viol)[: max(0, 5 - len(slots))]:
                    slots.append((start + int(idx), tuple(int(v) for v in V[idx])))

        for name, lhs, rhs in BICONDITIONALS:
            if lhs in flags and rhs in flags:
                record(name, flags[lhs] != flags[rhs])
        for name, lhs, rhs in IMPLICATIONS:
            if lhs in flags and rhs in flags:
                record(name, flags[lhs] & ~flags[rhs])

    checks = []
    for name, lhs, rhs in BICONDITIONALS + IMPLICATIONS:
        if name in bad_counts:
            checks.append(
                Check(
                    name,
                    Failure(
                        "SWEEP_VIOLATION",
                        tuple(bad[name]),
                        f"{bad_counts[name]} of {sweep.total} maps violate this",
                    ),
                )
            )
        else:
            checks.append(Check(name))
    return SweepOutcome(source_name, target_name, sweep.total, counts, checks)


def strong_map_values(sweep: TransferSweep, block: int = DEFAULT_BLOCK) -> np.ndarray:
    """Value rows of every map with the strong flag, in enumeration order."""
    rows = []
    for start in range(0, sweep.total, block):
        stop = min(start + block, sweep.total)
        V = sweep.block_values(start, stop)
        flags = sweep.classify_block(V)
        keep = flags["strong_wedge_r"]
        if keep.any():
            rows.append(V[keep])
    if not rows:
        return np.empty((0, sweep.src.n), dtype=np.intp)
    return np.concatenate(rows, axis=0)


def wedge_map_values(sweep: TransferSweep, block: int = DEFAULT_BLOCK) -> np.ndarray:
    """Value rows of every map with the two-sided lax-above flags."""
    rows = []
    for start in range(0, sweep.total, block):
        stop = min(start + block, sweep.total)
        V = sweep.block_values(start, stop)
        flags = sweep.classify_block(V)
        keep = flags["wedge_r"]
        if keep.any():
            rows.append(V[keep])
    if not rows:
        return np.empty((0, sweep.src.n), dtype=np.intp)
    return np.concatenate(rows, axis=0)


def composition_closure_endo(
    sweep: TransferSweep,
    values: np.ndarray,
    class_flags: tuple[str, ...],
    budget: int | None = None,
) -> tuple[list[Check], int]:
    """Closure of endomap classes under composition, vectorized.

    `values` must hold maps source -> source (endomaps) all carrying every
    flag in `class_flags`; each pair (i, j) is composed as i-then-j and the
    composite is required to carry the flags too.  When the m*m pair space
    exceeds the budget, the outer rows are truncated deterministically.
    Returns one check per flag plus the number of pairs scanned.
    """
    budget = resolve_budget(budget)
    m = values.shape[0]
    outer = m if m * m <= budget else budget // max(m, 1)
    checks = {
        name + "_closed_under_composition": Check(name + "_closed_under_composition")
        for name in class_flags
    }
    for i in range(outer):
        comp = values[:, values[i]]  # row j: first values[i], then values[j]
        flags = sweep.classify_block(comp)
        for name in class_flags:
            key = name + "_closed_under_composition"
            if not checks[key].ok:
                continue
            viol = ~flags[name]
            if viol.any():
                j = int(viol.argmax())
                checks[key] = Check(
                    key,
                    Failure(
                        "COMPOSITION_NOT_CLOSED",
                        (tuple(int(v) for v in values[i]), tuple(int(v) for v in values[j])),
                        f"composite leaves {name}",
                    ),
                )
    return list(checks.values()), outer * m


def wedge_nonclosure_witness(
    sweep: TransferSweep, values: np.ndarray, budget: int | None = None
) -> tuple[Failure | None, int]:
    """Search pairs of lax-above maps for a composite failing the pairwise
    lax-above law; found/not-found is reported, never asserted."""
    budget = resolve_budget(budget)
    m = values.shape[0]
    outer = m if m * m <= budget else budget // max(m, 1)
    for i in range(outer):
        comp = values[:, values[i]]
        flags = sweep.classify_block(comp)
        viol = ~flags["wedge1"]
        if viol.any():
            j = int(viol.argmax())
            return (
                Failure(
                    "WEDGE_COMPOSITION_WITNESS",
                    (tuple(int(v) for v in values[i]), tuple(int(v) for v in values[j])),
                    "composite fails the lax-above product law",
                ),
                i * m + j + 1,
            )
    return None, outer * m

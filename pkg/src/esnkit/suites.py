"""Verification suites: named bundles of checks over corpus structures.

These functions are the single implementation behind both the command-line
interface and the acceptance tests.  Each returns a Report whose bytes,
for fixed inputs and seed, are identical across runs.
"""
from __future__ import annotations

import itertools

from . import corpus
from .arrows import (
    ElementMap,
    classify_functor_map,
    classify_semigroup_map,
    compose_maps,
    enumerate_maps,
    implication_checks,
    resolve_budget,
    transfer_checks,
    transfer_functor_map,
    verify_composition_closure,
)
from .categories import (
    LEVEL_GROUPOID,
    LEVEL_INDUCTIVE,
    FiniteCategory,
    category_lemma_checks,
)
from .core import Check, Failure
from .esn import (
    category_of,
    check_category_tables,
    check_pseudoproduct_is_mul,
    inverse_specialization,
    roundtrip_category,
    roundtrip_semigroup,
    semigroup_of,
)
from .report import Report
from .semigroups import (
    FiniteSemigroup,
    RestrictionStructure,
    check_inverse,
    check_plus_star_identities,
    derive_restriction,
    greens_r,
    natural_order,
    tilde_relations,
)
from .szendrei import SzExpansion, check_closed_forms, find_unique_lift, iota


def restriction_property_checks(R: RestrictionStructure) -> list[Check]:
    """Structural invariants every derived restriction structure must satisfy."""
    checks: list[Check] = []
    n, mul, leq = R.n, R.mul, R.order

    bad = None
    for a in range(n):
        if R.plus[a] not in R.E or R.star[a] not in R.E:
            bad = Failure("UNARY_NOT_IN_E", (a,))
            break
        if R.plus[R.plus[a]] != R.plus[a] or R.star[R.star[a]] != R.star[a]:
            bad = Failure("UNARY_NOT_STABLE", (a,))
            break
        if mul[R.plus[a]][a] != a or mul[a][R.star[a]] != a:
            bad = Failure("UNARY_NOT_IDENTITY", (a,))
            break
    checks.append(Check("unary_operations_wellbehaved", bad))

    bad = None
    for e in R.E:
        if R.plus[e] != e or R.star[e] != e:
            bad = Failure("E_NOT_FIXED", (e,))
            break
    checks.append(Check("semilattice_fixed_by_unaries", bad))

    bad = None
    for a in range(n):
        if not leq[a][a]:
            bad = Failure("ORDER_NOT_REFLEXIVE", (a,))
            break
    if bad is None:
        for a in range(n):
            for b in range(n):
                if a != b and leq[a][b] and leq[b][a]:
                    bad = Failure("ORDER_NOT_ANTISYMMETRIC", (a, b))
                    break
            if bad:
                break
    if bad is None:
        for a in range(n):
            for b in range(n):
                if not leq[a][b]:
                    continue
                for c in range(n):
                    if leq[b][c] and not leq[a][c]:
                        bad = Failure("ORDER_NOT_TRANSITIVE", (a, b, c))
                        break
                if bad:
                    break
            if bad:
                break
    checks.append(Check("natural_order_is_partial_order", bad))

    le_pairs = [(a, b) for a in range(n) for b in range(n) if leq[a][b]]
    bad = None
    for a, b in le_pairs:
        for c, d in le_pairs:
            if not leq[mul[a][c]][mul[b][d]]:
                bad = Failure("ORDER_NOT_COMPATIBLE", (a, c, b, d))
                break
        if bad:
            break
    checks.append(Check("natural_order_compatible_with_product", bad))

    bad = None
    for e in R.E:
        for f in R.E:
            if leq[e][f] != (mul[e][f] == e):
                bad = Failure("ORDER_ON_E_MISMATCH", (e, f))
                break
        if bad:
            break
    checks.append(Check("order_restricts_to_semilattice_order", bad))

    recomputed = natural_order(R)
    if isinstance(recomputed, Failure):
        checks.append(Check("natural_order_consistent", recomputed))
    else:
        checks.append(
            Check(
                "natural_order_consistent",
                None if recomputed == R.order else Failure("ORDER_MISMATCH", ()),
            )
        )

    checks.append(Check("product_unary_identities", check_plus_star_identities(R)))
    return checks


def semigroup_suite(name: str, sg: FiniteSemigroup, E) -> Report:
    """Full check ladder for one semigroup-with-semilattice input."""
    report = Report("check-semigroup", {"structure": name, "n": sg.n})
    derived = derive_restriction(sg, E)
    if isinstance(derived, Failure):
        report.add("restriction_structure", derived)
        return report
    report.add("restriction_structure")
    report.extend(restriction_property_checks(derived))

    cert = check_inverse(sg)
    if not isinstance(cert, Failure):
        report.add("inverse_semigroup")
        tilde_r, _ = tilde_relations(sg, derived.E)
        if set(derived.E.members) == set(sg.idempotents()):
            agree = greens_r(sg).classes == tilde_r.classes
            report.add(
                "greens_r_equals_tilde_r",
                None if agree else Failure("GREENS_MISMATCH", ()),
            )
    report.add("roundtrip", roundtrip_semigroup(derived))
    C = category_of(derived)
    report.add("pseudoproduct_recovers_product", check_pseudoproduct_is_mul(derived, C))
    report.add("category_tables_are_products", check_category_tables(derived, C))
    for cname, failure in category_lemma_checks(C):
        report.add("category_" + cname, failure)
    if derived.inv is not None:
        report.extend(inverse_specialization(derived))
    return report


def category_suite(name: str, C: FiniteCategory) -> Report:
    """Axiom and lemma suite for one validated category."""
    report = Report("check-category", {"structure": name, "n": C.n})
    for level in sorted(C.levels):
        report.add(f"axioms_{level}")
    for cname, failure in category_lemma_checks(C):
        report.add(cname, failure)
    if C.validated(LEVEL_INDUCTIVE):
        report.add("roundtrip", roundtrip_category(C))
    return report


def esn_suite(name: str, value) -> Report:
    """Round-trip suite for a semigroup file or a category."""
    report = Report("esn", {"structure": name})
    if isinstance(value, FiniteCategory):
        report.add("roundtrip_category", roundtrip_category(value))
        return report
    sg, E = value
    derived = derive_restriction(sg, E)
    if isinstance(derived, Failure):
        report.add("restriction_structure", derived)
        return report
    report.add("restriction_structure")
    report.add("roundtrip_semigroup", roundtrip_semigroup(derived))
    C = category_of(derived)
    report.add("pseudoproduct_recovers_product", check_pseudoproduct_is_mul(derived, C))
    if derived.inv is not None:
        report.extend(inverse_specialization(derived))
    return report


def szendrei_suite(base_name: str, lift: bool = True) -> Report:
    """Build the expansion of a corpus groupoid and cross-check everything."""
    G = corpus.category(base_name)
    report = Report("szendrei", {"base": base_name})
    try:
        sz = corpus.expansion(base_name)
    except Exception as exc:  # construction failures are falsifications
        report.add("expansion_builds", Failure("BUILD_FAILED", (), str(exc)))
        return report
    report.add("expansion_builds")
    report.inputs["size"] = sz.n
    for level in ("category", "ordered", "inductive", "groupoid"):
        report.add(
            f"axioms_{level}",
            None if sz.category.validated(level) else Failure("LEVEL_MISSING", (), level),
        )
    report.extend(check_closed_forms(sz))
    emb = iota(sz)
    report.add(
        "embedding_injective",
        None
        if len(set(emb.values)) == G.n
        else Failure("IOTA_NOT_INJECTIVE", ()),
    )
    emb_cls = classify_functor_map(emb)
    report.add(
        "embedding_is_groupoid_premorphism",
        None if emb_cls.ogp else Failure("IOTA_NOT_OGP", ()),
    )
    report.add("roundtrip_category", roundtrip_category(sz.category))
    back = semigroup_of(sz.category)
    cert = check_inverse(back.base)
    report.add(
        "expansion_semigroup_is_inverse", cert if isinstance(cert, Failure) else None
    )
    if lift:
        identity = ElementMap(G, G, tuple(range(G.n)))
        found = find_unique_lift(sz, identity)
        report.add("unique_lift_identity", found if isinstance(found, Failure) else None)
    return report


def lift_suite() -> Report:
    """The unique-lift searches over the expansion corpus."""
    report = Report("unique-lift", {})
    cases = []
    g_z2 = corpus.category("z2")
    cases.append(("identity_on_z2", "z2", ElementMap(g_z2, g_z2, (0, 1))))
    g_ci2 = corpus.category("c_i2")
    cases.append(("identity_on_c_i2", "c_i2", ElementMap(g_ci2, g_ci2, tuple(range(7)))))
    trivial = corpus.category("trivial")
    cases.append(("collapse_z2_to_trivial", "z2", ElementMap(g_z2, trivial, (0, 0))))
    for name, base, psi in cases:
        sz = corpus.expansion(base)
        found = find_unique_lift(sz, psi)
        if isinstance(found, Failure):
            report.add(name, found)
            continue
        recomposed = compose_maps(iota(sz), found)
        if recomposed.values != psi.values:
            report.add(name, Failure("LIFT_DOES_NOT_EXTEND", (found.values,)))
            continue
        lifted_cls = classify_functor_map(found)
        report.add(
            name,
            None
            if lifted_cls.inductive_functor
            else Failure("LIFT_NOT_INDUCTIVE_FUNCTOR", (found.values,)),
        )
    return report


def _scalar_transfer_block(report: Report, src_name: str, tgt_name: str) -> None:
    src = corpus.restriction(src_name)
    tgt = corpus.restriction(tgt_name)
    partners = (
        corpus.category(corpus.partner_category_name(src_name)),
        corpus.category(corpus.partner_category_name(tgt_name)),
    )
    failures: dict[str, Failure] = {}
    names: list[str] = []
    for m, sem in enumerate_maps(src, tgt):
        cat = classify_functor_map(transfer_functor_map(m, partners))
        for c in transfer_checks(sem, cat, (m.values,)) + implication_checks(
            sem, cat, (m.values,)
        ):
            if c.name not in names:
                names.append(c.name)
            if not c.ok and c.name not in failures:
                failures[c.name] = c.failure
    for cname in names:
        report.add(f"{src_name}->{tgt_name}:{cname}", failures.get(cname))


def small_transfer_suite() -> Report:
    """Exhaustive scalar transfer checks over the small corpus hom-sets."""
    report = Report("transfer-small", {})
    for src, tgt in itertools.product(("sl2", "i1"), repeat=2):
        _scalar_transfer_block(report, src, tgt)
    _scalar_transfer_block(report, "i1", "i2")
    _scalar_transfer_block(report, "z2", "z2")
    return report


def composition_suite(budget: int | None = None) -> Report:
    """Closure of the premorphism classes under composition.

    Every composable pair over the two-element endpoints is checked
    exhaustively; the larger endpoint is covered by the vectorized engine
    in the transfer sweep suite.  A witness pair of lax-above maps whose
    composite leaves the class is searched for and archived if found, but
    its existence is never asserted.
    """
    report = Report("composition", {"endpoints": "sl2,i1"})
    endpoints = ("sl2", "i1")
    structures = {name: corpus.restriction(name) for name in endpoints}
    classified = {}
    for a, b in itertools.product(endpoints, repeat=2):
        classified[(a, b)] = [
            (m, cls) for m, cls in enumerate_maps(structures[a], structures[b])
        ]
    witness_found = None
    for a, b, c in itertools.product(endpoints, repeat=3):
        checks, wedge_witness = verify_composition_closure(
            classified[(a, b)], classified[(b, c)]
        )
        for ch in checks:
            report.add(f"{a}->{b}->{c}:{ch.name}", ch.failure)
        if wedge_witness is not None and witness_found is None:
            witness_found = wedge_witness
    report.inputs["wedge_nonclosure_witness"] = (
        "none found" if witness_found is None else str(witness_found.witness)
    )
    report.add("wedge_nonclosure_search_completed")
    return report


def transfer_sweep_suite(budget: int | None = None, block: int | None = None) -> Report:
    """The exhaustive transfer sweep over all endomaps of the seven-element
    symmetric inverse monoid, plus class closure over its filtered pairs."""
    from . import sweep as sweep_mod

    budget = resolve_budget(budget)
    report = Report("transfer-sweep", {"source": "i2", "target": "i2", "budget": budget})
    R = corpus.restriction("i2")
    C = corpus.category("c_i2")
    sw = sweep_mod.TransferSweep(R, R, C, C)
    kwargs = {"budget": budget}
    if block:
        kwargs["block"] = block
    outcome = sweep_mod.run_transfer_sweep(sw, "i2", "i2", **kwargs)
    report.inputs["maps"] = outcome.total
    report.extend(outcome.checks)
    report.counts.update(outcome.counts)

    strong = sweep_mod.strong_map_values(sw)
    checks, scanned = sweep_mod.composition_closure_endo(
        sw, strong, ("strong_wedge_r", "ordered_wedge_r"), budget=budget
    )
    report.inputs["strong_pairs_scanned"] = scanned
    for ch in checks:
        report.add("strong_pairs:" + ch.name, ch.failure)

    wedge = sweep_mod.wedge_map_values(sw)
    witness, scanned = sweep_mod.wedge_nonclosure_witness(sw, wedge, budget=budget)
    report.inputs["wedge_pairs_scanned"] = scanned
    if witness is not None:
        first, second = witness.witness
        f = ElementMap(R, R, first)
        g = ElementMap(R, R, second)
        cf, cg = classify_semigroup_map(f), classify_semigroup_map(g)
        cc = classify_semigroup_map(compose_maps(f, g))
        verified = cf.wedge_r and cg.wedge_r and not cc.wedge1
        report.inputs["wedge_nonclosure_witness"] = str(witness.witness)
        report.add(
            "wedge_nonclosure_witness_verified",
            None if verified else Failure("WITNESS_NOT_VERIFIED", witness.witness),
        )
    else:
        report.inputs["wedge_nonclosure_witness"] = "none found"
        report.add("wedge_nonclosure_search_completed")
    return report


def corpus_check_suite() -> Report:
    """Validation of everything in the corpus, positive and negative cases."""
    report = Report("corpus", {})
    for name in corpus.RESTRICTION_NAMES:
        fx = corpus.semigroup_fixture(name)
        derived = derive_restriction(fx.semigroup, fx.E)
        report.add(
            f"{name}:restriction",
            derived if isinstance(derived, Failure) else None,
        )
    for name in ("pt2", "leftzero2"):
        fx = corpus.semigroup_fixture(name)
        derived = derive_restriction(fx.semigroup, fx.E)
        if isinstance(derived, Failure):
            report.add(f"{name}:rejected_{derived.code}")
        else:
            report.add(
                f"{name}:rejected", Failure("UNEXPECTED_SUCCESS", (), "expected a failure")
            )
    for name in corpus.CATEGORY_NAMES:
        C = corpus.category(name)
        sub = category_suite(name, C)
        for c in sub.checks:
            report.add(f"{name}:{c.name}", c.failure)
    return report

import pytest

from esnkit import corpus
from esnkit.arrows import (
    ElementMap,
    classify_functor_map,
    classify_semigroup_map,
    compose_maps,
    enumerate_maps,
    hasse_memberships,
    hasse_report,
    implication_checks,
    transfer_checks,
    transfer_functor_map,
    verify_composition_closure,
)
from esnkit.core import BudgetExceeded


def identity_map(structure):
    return ElementMap(structure, structure, tuple(range(structure.n)))


class TestClassifySemigroupMap:
    def test_identity_on_i2_has_every_flag(self):
        cls = classify_semigroup_map(identity_map(corpus.restriction("i2")))
        assert cls.morphism and cls.vee_r and cls.strong_wedge_r
        assert cls.ordered_wedge_i and cls.order_preserving
        assert cls.inverse_preserving

    def test_constant_to_distinguished_idempotent_is_morphism(self):
        r = corpus.restriction("i2")
        # element 1 is the partial identity on a single point
        cls = classify_semigroup_map(ElementMap(r, r, (1,) * 7))
        assert cls.morphism
        assert cls.vee_r and cls.strong_wedge_r

    def test_order_swapping_bijection_on_sl2(self):
        r = corpus.restriction("sl2")
        swap = ElementMap(r, r, (1, 0))
        # oracle: brute-force all four premorphism conditions by hand
        mul, leq = r.mul, r.order
        v = swap.values
        vee1 = all(
            leq[v[mul[s][t]]][mul[v[s]][v[t]]] for s in range(2) for t in range(2)
        )
        wedge1 = all(
            leq[mul[v[s]][v[t]]][v[mul[s][t]]] for s in range(2) for t in range(2)
        )
        vee2 = all(leq[v[r.plus[s]]][r.plus[v[s]]] for s in range(2))
        wedge2 = all(leq[r.plus[v[s]]][v[r.plus[s]]] for s in range(2))
        assert (vee1, wedge1, vee2, wedge2) == (False, True, True, True)

        cls = classify_semigroup_map(swap)
        assert cls.vee1 is False and cls.wedge1 is True
        assert cls.order_preserving is False
        assert cls.vee_r is False
        assert cls.wedge_r is True and cls.ordered_wedge_r is False

    def test_inverse_flags_none_without_certificates(self):
        fx = corpus.semigroup_fixture("pt2")
        from esnkit.semigroups import derive_restriction

        r2 = corpus.restriction("i2")
        cls = classify_semigroup_map(identity_map(r2))
        assert cls.inverse_preserving is True
        # strip the certificate and the inverse flags become undecided
        from dataclasses import replace

        stripped = replace(r2, inv=None)
        cls2 = classify_semigroup_map(identity_map(stripped))
        assert cls2.inverse_preserving is None
        assert cls2.vee_i is None and cls2.ordered_wedge_i is None


class TestClassifyFunctorMap:
    def test_identity_functor_all_flags(self):
        cls = classify_functor_map(identity_map(corpus.category("c_i2")))
        assert cls.ordered_functor and cls.inductive_functor
        assert cls.prefunctor and cls.strong_prefunctor
        assert cls.igp and cls.ogp

    def test_collapse_to_trivial_is_ordered_functor(self):
        src = corpus.category("c_sl2")
        tgt = corpus.category("trivial")
        cls = classify_functor_map(ElementMap(src, tgt, (0, 0)))
        assert cls.ordered_functor

    def test_strong_semigroup_map_transfers_to_strong_prefunctor(self):
        r = corpus.restriction("i2")
        C = corpus.category("c_i2")
        for values in [(1,) * 7, tuple(range(7))]:
            sem = classify_semigroup_map(ElementMap(r, r, values))
            cat = classify_functor_map(ElementMap(C, C, values))
            assert sem.strong_wedge_r
            assert cat.strong_prefunctor

    def test_igp_none_on_non_groupoids(self):
        C = corpus.category("c_i2")
        from dataclasses import replace

        stripped = replace(C, levels=C.levels - {"groupoid"})
        cls = classify_functor_map(identity_map(stripped))
        assert cls.igp is None and cls.ogp is None


class TestLiteralReadingCounterexamples:
    """Frozen witnesses showing why the groupoid premorphism product law is
    quantified through the total pseudoproduct, and why the restriction
    lemma about ICP5 keeps its prefunctor hypotheses."""

    def test_composable_only_reading_admits_non_strong_maps(self):
        C = corpus.category("c_i2")
        m = ElementMap(C, C, (0, 0, 0, 0, 0, 0, 1))
        cls = classify_functor_map(m)
        assert cls.icp1 and cls.igp and cls.icp3
        assert cls.ogp_composable_only
        assert not cls.icp5
        assert not cls.lax_pseudoproducts
        assert not cls.ogp
        # and its semigroup avatar is not an ordered lax-above premorphism
        r = corpus.restriction("i2")
        sem = classify_semigroup_map(ElementMap(r, r, m.values))
        assert not sem.ordered_wedge_i

    def test_icp5_alone_does_not_give_icp4(self):
        C = corpus.category("c_i2")
        cls = classify_functor_map(ElementMap(C, C, (0, 0, 0, 0, 0, 0, 2)))
        assert cls.icp5 and not cls.icp4
        assert not (cls.icp1 or cls.icp2 or cls.icp3)


class TestEnumeration:
    def test_sl2_has_four_maps(self):
        r = corpus.restriction("sl2")
        run = enumerate_maps(r, r)
        values = [m.values for m, _ in run]
        assert values == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert run.counts["morphism"] == 3

    def test_i1_named_maps(self):
        r = corpus.restriction("i1")
        run = enumerate_maps(r, r)
        got = {m.values: cls.morphism for m, cls in run}
        # identity, both constants, and the swap
        assert set(got) == {(0, 1), (0, 0), (1, 1), (1, 0)}
        assert got[(0, 1)] is True

    def test_filter_and_cap(self):
        r = corpus.restriction("sl2")
        run = enumerate_maps(r, r, flag="morphism", cap=2)
        assert len(list(run)) == 2

    def test_budget_requires_seed(self):
        r = corpus.restriction("i2")
        with pytest.raises(BudgetExceeded):
            list(enumerate_maps(r, r, budget=1000))

    def test_seeded_sample_is_deterministic(self):
        r = corpus.restriction("i2")
        a = [m.values for m, _ in enumerate_maps(r, r, budget=50, seed=7)]
        b = [m.values for m, _ in enumerate_maps(r, r, budget=50, seed=7)]
        assert a == b and len(a) == 50


class TestTransfer:
    def test_identity_transfer_holds(self):
        r = corpus.restriction("i2")
        C = corpus.category("c_i2")
        m = identity_map(r)
        sem = classify_semigroup_map(m)
        cat = classify_functor_map(transfer_functor_map(m, (C, C)))
        for check in transfer_checks(sem, cat, ()) + implication_checks(sem, cat, ()):
            assert check.ok, check.name

    def test_all_sl2_maps_transfer(self):
        r = corpus.restriction("sl2")
        C = corpus.category("c_sl2")
        for m, sem in enumerate_maps(r, r):
            cat = classify_functor_map(transfer_functor_map(m, (C, C)))
            for check in transfer_checks(sem, cat, (m.values,)):
                assert check.ok, f"{m.values}: {check.name}"


class TestCompositionClosure:
    def test_identity_pairs_close(self):
        r = corpus.restriction("sl2")
        pairs = [(m, cls) for m, cls in enumerate_maps(r, r)]
        checks, witness = verify_composition_closure(pairs, pairs)
        assert all(c.ok for c in checks)
        # the two-element endpoints admit no wedge non-closure witness
        assert witness is None

    def test_compose_maps_values(self):
        r = corpus.restriction("sl2")
        swap = ElementMap(r, r, (1, 0))
        const = ElementMap(r, r, (0, 0))
        assert compose_maps(swap, const).values == (0, 0)
        assert compose_maps(const, swap).values == (1, 1)


class TestHasse:
    def test_identity_inhabits_all_seven_semigroup_nodes(self):
        cls = classify_semigroup_map(identity_map(corpus.restriction("i2")))
        member = hasse_memberships(cls)
        assert all(member[node] for node in member)
        assert len(member) == 7

    def test_swap_is_wedge_but_not_ordered(self):
        cls = classify_semigroup_map(
            ElementMap(corpus.restriction("sl2"), corpus.restriction("sl2"), (1, 0))
        )
        member = hasse_memberships(cls)
        assert member["REST_vee"] is False
        assert member["REST_wedge"] is False  # ordered class
        assert member["REST_mor"] is False

    def test_membership_respects_inclusion_order(self):
        # classes grow upward along the diagram edges
        edges = [
            ("REST_mor", "REST_strong"),
            ("REST_strong", "REST_wedge"),
            ("REST_mor", "REST_vee"),
            ("INV_mor", "INV_vee"),
            ("INV_mor", "INV_wedge"),
        ]
        r = corpus.restriction("i2")
        for m, cls in enumerate_maps(r, r, budget=300, seed=11):
            member = hasse_memberships(cls)
            for small, large in edges:
                if member[small]:
                    assert member[large], (m.values, small, large)

    def test_report_text_shape(self):
        text = hasse_report(
            classify_semigroup_map(identity_map(corpus.restriction("i2")))
        )
        assert "REST_vee" in text and "INV_mor" in text
        assert text.splitlines()[0].startswith("arrow class membership")

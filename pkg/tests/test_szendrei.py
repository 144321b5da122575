import pytest

from esnkit import corpus
from esnkit.arrows import ElementMap, classify_functor_map, compose_maps
from esnkit.categories import pseudo_table
from esnkit.core import BudgetExceeded, Failure, MalformedInputError
from esnkit.szendrei import (
    SzElement,
    build_sz,
    check_closed_forms,
    check_pseudoproduct_formula,
    find_unique_lift,
    iota,
    star_of,
    sz_pseudoproduct,
)


class TestStarOf:
    def test_one_object_group_star_is_everything(self):
        G = corpus.category("z2")
        assert star_of(G, 0) == (0, 1)

    def test_i2_star_of_full_identity(self):
        G = corpus.category("c_i2")
        # arrows with full domain: the identity and the transposition
        assert star_of(G, 0) == (0, 2)

    def test_i2_star_of_empty_object(self):
        G = corpus.category("c_i2")
        assert star_of(G, 6) == (6,)

    def test_non_object_rejected(self):
        with pytest.raises(MalformedInputError):
            star_of(corpus.category("c_i2"), 3)


class TestBuildSz:
    def test_z2_has_three_elements(self):
        sz = corpus.expansion("z2")
        assert sz.n == 3
        assert [(e.members, e.point) for e in sz.elements] == [
            ((0,), 0),
            ((0, 1), 0),
            ((0, 1), 1),
        ]

    def test_c_i2_has_ten_elements(self):
        # oracle: stars of sizes 2, 2, 2, 1 contribute 3 + 3 + 3 + 1
        G = corpus.category("c_i2")
        sizes = sorted(len(star_of(G, e)) for e in G.objects)
        assert sizes == [1, 2, 2, 2]
        assert corpus.expansion("c_i2").n == 10

    @pytest.mark.parametrize("base", ["z2", "c_i2"])
    def test_all_four_validation_levels(self, base):
        C = corpus.expansion(base).category
        for level in ("category", "ordered", "inductive", "groupoid"):
            assert C.validated(level)

    def test_z2_example_product(self):
        sz = corpus.expansion("z2")
        g = sz.find((0, 1), 1)
        one = sz.find((0, 1), 0)
        assert pseudo_table(sz.category)[g][g] == one

    def test_rejects_non_groupoid(self):
        with pytest.raises(MalformedInputError):
            build_sz(corpus.category("c_i2").__class__(
                **{**corpus.category("c_i2").__dict__, "levels": frozenset({"category"})}
            ))


class TestClosedForms:
    @pytest.mark.parametrize("base", ["z2", "c_i2"])
    def test_formulas_match_scans(self, base):
        for check in check_closed_forms(corpus.expansion(base)):
            assert check.ok, f"{base}: {check.name}: {check.failure}"

    def test_pseudoproduct_formula_all_pairs(self):
        for base, pair_count in [("z2", 9), ("c_i2", 100)]:
            sz = corpus.expansion(base)
            assert sz.n * sz.n == pair_count
            assert check_pseudoproduct_formula(sz) is None

    def test_dom_ran_closed_forms(self):
        # domain keeps the history set; range translates it by the inverse
        for base in ("z2", "c_i2"):
            sz = corpus.expansion(base)
            G, C = sz.base, sz.category
            for i, el in enumerate(sz.elements):
                u = el.point
                assert C.dom[i] == sz.find(el.members, G.dom[u])
                translated = sorted(G.prod[G.inv[u]][w] for w in el.members)
                assert C.ran[i] == sz.find(translated, G.ran[u])
                assert C.inv[i] == sz.find(translated, G.inv[u])

    def test_order_closed_form(self):
        for base in ("z2", "c_i2"):
            sz = corpus.expansion(base)
            G, C = sz.base, sz.category
            for i, a in enumerate(sz.elements):
                for j, b in enumerate(sz.elements):
                    expected = G.order[a.point][b.point] and {
                        G.restriction[G.dom[a.point]][w] for w in b.members
                    }.issubset(a.members)
                    assert C.order[i][j] == expected


class TestIota:
    def test_z2_values(self):
        sz = corpus.expansion("z2")
        emb = iota(sz)
        assert emb.values == (sz.find((0,), 0), sz.find((0, 1), 1))

    def test_objects_map_to_objects(self):
        for base in ("z2", "c_i2"):
            sz = corpus.expansion(base)
            emb = iota(sz)
            for e in sz.base.objects:
                assert emb.values[e] in sz.category.objects

    def test_injective_on_c_i2(self):
        sz = corpus.expansion("c_i2")
        emb = iota(sz)
        assert len(set(emb.values)) == 7 and sz.n == 10

    @pytest.mark.parametrize("base", ["z2", "c_i2"])
    def test_iota_is_ordered_groupoid_premorphism(self, base):
        sz = corpus.expansion(base)
        cls = classify_functor_map(iota(sz))
        assert cls.ogp
        # and therefore strong, with the domain/range laxity for free
        assert cls.icp2 and cls.icp5


class TestUniqueLift:
    def test_identity_on_z2(self):
        sz = corpus.expansion("z2")
        G = corpus.category("z2")
        psi = ElementMap(G, G, (0, 1))
        lift = find_unique_lift(sz, psi)
        assert isinstance(lift, ElementMap)
        assert compose_maps(iota(sz), lift).values == psi.values
        assert classify_functor_map(lift).inductive_functor

    def test_identity_on_c_i2(self):
        sz = corpus.expansion("c_i2")
        G = corpus.category("c_i2")
        psi = ElementMap(G, G, tuple(range(7)))
        lift = find_unique_lift(sz, psi)
        assert isinstance(lift, ElementMap)
        assert compose_maps(iota(sz), lift).values == psi.values

    def test_collapse_z2_to_trivial(self):
        sz = corpus.expansion("z2")
        psi = ElementMap(corpus.category("z2"), corpus.category("trivial"), (0, 0))
        lift = find_unique_lift(sz, psi)
        assert isinstance(lift, ElementMap)
        assert lift.values == (0, 0, 0)

    def test_non_premorphism_rejected(self):
        sz = corpus.expansion("c_i2")
        G = corpus.category("c_i2")
        # everything to the full identity except the empty arrow: passes the
        # composable-only conditions but is not a groupoid premorphism
        psi = ElementMap(G, G, (0, 0, 0, 0, 0, 0, 1))
        with pytest.raises(MalformedInputError):
            find_unique_lift(sz, psi)

    def test_budget_guard(self):
        sz = corpus.expansion("c_i2")
        G = corpus.category("c_i2")
        psi = ElementMap(G, G, tuple(range(7)))
        with pytest.raises(BudgetExceeded):
            find_unique_lift(sz, psi, budget=10)

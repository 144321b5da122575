import pytest

from esnkit.categories import (
    FiniteCategory,
    category_lemma_checks,
    corestrict,
    identity_elements,
    pseudoproduct,
    pseudo_table,
    restrict,
    validate_all,
    validate_category,
    validate_groupoid,
    validate_inductive,
    validate_ordered,
)
from esnkit.core import Failure, MalformedInputError
from esnkit import corpus


def one_object_category(table, order=None):
    n = len(table)
    # a monoid with identity 0, seen as a category on a single object
    return FiniteCategory(
        n=n,
        objects=(0,),
        dom=(0,) * n,
        ran=(0,) * n,
        prod=tuple(tuple(row) for row in table),
        order=order or tuple(tuple(a == b for b in range(n)) for a in range(n)),
    )


def discrete_category(n, order):
    return FiniteCategory(
        n=n,
        objects=tuple(range(n)),
        dom=tuple(range(n)),
        ran=tuple(range(n)),
        prod=tuple(tuple(a if a == b else None for b in range(n)) for a in range(n)),
        order=order,
    )


def chain_order(n):
    return tuple(tuple(a <= b for b in range(n)) for a in range(n))


Z3 = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


class TestValidateCategory:
    def test_monoid_is_a_one_object_category(self):
        out = validate_category(one_object_category(Z3))
        assert isinstance(out, FiniteCategory)
        assert out.validated("category")

    def test_discrete_category(self):
        out = validate_category(discrete_category(3, chain_order(3)))
        assert isinstance(out, FiniteCategory)

    def test_product_defined_across_mismatched_objects(self):
        # deliberately corrupt a 2-object discrete category by composing
        # across distinct objects
        bad = FiniteCategory(
            n=2,
            objects=(0, 1),
            dom=(0, 1),
            ran=(0, 1),
            prod=((0, 1), (None, 1)),
            order=chain_order(2),
        )
        out = validate_category(bad)
        assert isinstance(out, Failure)
        # identity uniqueness breaks first: 0 also left-composes with 1
        assert out.code in ("CA3", "COMPOSABILITY", "OBJECTS_MISMATCH")

    def test_objects_must_match_computed_identities(self):
        # element 1 acts as an identity but is not declared as an object
        bad = FiniteCategory(
            n=2,
            objects=(0,),
            dom=(0, 1),
            ran=(0, 1),
            prod=((0, None), (None, 1)),
            order=chain_order(2),
        )
        out = validate_category(bad)
        assert isinstance(out, Failure)
        assert out.code == "OBJECTS_MISMATCH"
        assert out.witness == (1,)

    def test_identity_elements_of_monoid_category(self):
        assert identity_elements(one_object_category(Z3).prod, 3) == (0,)


class TestValidateOrdered:
    def test_equality_order_always_works(self):
        out = validate_ordered(validate_category(one_object_category(Z3)))
        assert isinstance(out, FiniteCategory)
        # restriction of any element to its own domain is the element
        for a in range(3):
            assert out.restriction[0][a] == a

    def test_dropped_reflexivity_is_reported(self):
        order = [[a == b for b in range(3)] for a in range(3)]
        order[1][1] = False
        out = validate_ordered(
            validate_category(one_object_category(Z3, tuple(tuple(r) for r in order)))
        )
        assert isinstance(out, Failure)
        assert out.code == "ORDER_NOT_REFLEXIVE"
        assert out.witness == (1,)

    def test_esn_built_category_is_ordered(self):
        assert corpus.category("c_i2").validated("ordered")


class TestValidateInductive:
    def test_chain_of_objects_has_min_meets(self):
        out = validate_inductive(
            validate_ordered(validate_category(discrete_category(3, chain_order(3))))
        )
        assert isinstance(out, FiniteCategory)
        for e in range(3):
            for f in range(3):
                assert out.meet[e][f] == min(e, f)

    def test_bowtie_has_no_meet(self):
        # two tops (2, 3) over two incomparable bottoms (0, 1)
        leq = [[a == b for b in range(4)] for a in range(4)]
        for bottom in (0, 1):
            for top in (2, 3):
                leq[bottom][top] = True
        out = validate_inductive(
            validate_ordered(
                validate_category(discrete_category(4, tuple(tuple(r) for r in leq)))
            )
        )
        assert isinstance(out, Failure)
        assert out.code == "NO_MEET"
        assert out.witness == (0, 1)

    def test_i2_category_meets_are_domain_intersections(self):
        C = corpus.category("c_i2")
        r = corpus.restriction("i2")
        for e in C.objects:
            for f in C.objects:
                assert C.meet[e][f] == r.mul[e][f]


class TestValidateGroupoid:
    def test_one_object_group(self):
        z2 = ((0, 1), (1, 0))
        out = validate_groupoid(validate_category(one_object_category(z2)))
        assert isinstance(out, FiniteCategory)
        assert out.inv == (0, 1)

    def test_semilattice_category_is_a_groupoid_of_objects(self):
        out = corpus.category("c_sl2")
        got = validate_groupoid(out)
        assert isinstance(got, FiniteCategory)
        assert got.inv == (0, 1)

    def test_missing_inverse_reported(self):
        # the two-element meet semilattice as a monoid: 1 has no inverse
        # through the restricted product once objects separate
        sl2_monoid = one_object_category(((0, 1), (1, 1)))
        out = validate_groupoid(validate_category(sl2_monoid))
        assert isinstance(out, Failure)
        assert out.code == "G"
        assert out.witness == (1,)


class TestRestrictionOperations:
    def test_restrict_to_own_domain_gives_back(self):
        C = corpus.category("c_i2")
        for a in range(C.n):
            assert restrict(C, C.dom[a], a) == a
            assert corestrict(C, a, C.ran[a]) == a

    def test_iterated_restriction_collapses(self):
        C = corpus.category("c_i2")
        for a in range(C.n):
            for e in C.objects:
                if not C.order[e][C.dom[a]]:
                    continue
                for f in C.objects:
                    if C.order[f][e]:
                        assert restrict(C, f, restrict(C, e, a)) == restrict(C, f, a)

    def test_precondition_enforced(self):
        C = corpus.category("c_i2")
        # object 0 is the top identity; it is not below dom of element 6
        with pytest.raises(MalformedInputError):
            restrict(C, 0, 6)

    def test_groupoid_shortcut_consulted(self):
        C = corpus.category("c_i2")
        for a in range(C.n):
            for f in C.objects:
                if C.order[f][C.ran[a]]:
                    assert corestrict(C, a, f) == C.inv[C.restriction[f][C.inv[a]]]


class TestPseudoproduct:
    def test_coincides_with_defined_products(self):
        C = corpus.category("c_i2")
        for a in range(C.n):
            for b in range(C.n):
                if C.prod[a][b] is not None:
                    assert pseudoproduct(C, a, b) == C.prod[a][b]

    def test_object_absorption(self):
        C = corpus.category("c_i2")
        for e in C.objects:
            for a in range(C.n):
                assert pseudoproduct(C, e, a) == C.restriction[C.meet[e][C.dom[a]]][a]
                assert pseudoproduct(C, a, e) == C.corestriction[a][C.meet[C.ran[a]][e]]

    def test_i2_pseudoproducts_equal_semigroup_products(self):
        # element-level half of the round trip, all 49 pairs
        C = corpus.category("c_i2")
        r = corpus.restriction("i2")
        assert pseudo_table(C) == r.mul


class TestLemmaChecks:
    @pytest.mark.parametrize("name", corpus.CATEGORY_NAMES)
    def test_all_corpus_categories(self, name):
        for check_name, failure in category_lemma_checks(corpus.category(name)):
            assert failure is None, f"{name}:{check_name}: {failure}"

    def test_below_bound_uniqueness_oracle(self):
        # direct quantifier scan on one structure, independent of the helper
        C = corpus.category("c_i2")
        for c in range(C.n):
            below = [a for a in range(C.n) if C.order[a][c]]
            for a in below:
                for b in below:
                    if C.dom[a] == C.dom[b] or C.ran[a] == C.ran[b]:
                        assert a == b

"""Agreement between the vectorized sweep engine and the scalar classifiers.

The engine exists only for throughput; the scalar quantifiers in `arrows`
are the reference semantics.  These tests pin the enumeration order and
compare every flag on exhaustive small spaces and on seeded samples of the
large one.
"""
import numpy as np
import pytest

from esnkit import corpus
from esnkit.arrows import ElementMap, classify_functor_map, classify_semigroup_map
from esnkit.sweep import TransferSweep, run_transfer_sweep

FLAG_TO_SCALAR = {
    "products_equal": ("sem", "products_equal"),
    "unary_equal": ("sem", "unary_equal"),
    "vee1": ("sem", "vee1"),
    "vee2": ("sem", "vee2"),
    "wedge1": ("sem", "wedge1"),
    "wedge2": ("sem", "wedge2"),
    "strong1": ("sem", "strong1"),
    "order_preserving": ("sem", "order_preserving"),
    "idempotents_preserved": ("sem", "idempotents_preserved"),
    "semilattice_preserved": ("sem", "semilattice_preserved"),
    "inverse_preserving": ("sem", "inverse_preserving"),
    "morphism": ("sem", "morphism"),
    "vee_r": ("sem", "vee_r"),
    "wedge_r": ("sem", "wedge_r"),
    "ordered_wedge_r": ("sem", "ordered_wedge_r"),
    "strong_wedge_r": ("sem", "strong_wedge_r"),
    "ordered_wedge_i": ("sem", "ordered_wedge_i"),
    "preserves_products": ("cat", "preserves_products"),
    "preserves_domran": ("cat", "preserves_domran"),
    "preserves_objects": ("cat", "preserves_objects"),
    "preserves_meets": ("cat", "preserves_meets"),
    "icp1": ("cat", "icp1"),
    "icp2": ("cat", "icp2"),
    "icp3": ("cat", "icp3"),
    "icp4": ("cat", "icp4"),
    "icp5": ("cat", "icp5"),
    "igp": ("cat", "igp"),
    "lax_pseudoproducts": ("cat", "lax_pseudoproducts"),
    "ordered_functor": ("cat", "ordered_functor"),
    "inductive_functor": ("cat", "inductive_functor"),
    "prefunctor": ("cat", "prefunctor"),
    "strong_prefunctor": ("cat", "strong_prefunctor"),
    "ogp": ("cat", "ogp"),
    "ogp_composable_only": ("cat", "ogp_composable_only"),
}


def sweep_for(src_name, tgt_name):
    return TransferSweep(
        corpus.restriction(src_name),
        corpus.restriction(tgt_name),
        corpus.category(corpus.partner_category_name(src_name)),
        corpus.category(corpus.partner_category_name(tgt_name)),
    )


def assert_block_matches_scalar(sw, values_rows):
    V = np.array(values_rows, dtype=np.intp)
    flags = sw.classify_block(V)
    for k, row in enumerate(values_rows):
        sem = classify_semigroup_map(ElementMap(sw.source, sw.target, tuple(row)))
        cat = classify_functor_map(ElementMap(sw.source_cat, sw.target_cat, tuple(row)))
        for flag, (side, attr) in FLAG_TO_SCALAR.items():
            if flag not in flags:
                continue
            expected = getattr(sem if side == "sem" else cat, attr)
            got = bool(flags[flag][k])
            assert got == expected, f"map {row}: {flag} engine={got} scalar={expected}"


class TestEnumerationOrder:
    def test_block_values_are_lexicographic(self):
        sw = sweep_for("sl2", "sl2")
        V = sw.block_values(0, 4)
        assert V.tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]

    def test_block_values_match_digit_expansion(self):
        sw = sweep_for("i2", "i2")
        V = sw.block_values(823542, 823543)
        assert V.tolist() == [[6] * 7]
        V = sw.block_values(1, 2)
        assert V.tolist() == [[0, 0, 0, 0, 0, 0, 1]]


class TestEngineAgreesWithScalar:
    def test_exhaustive_sl2(self):
        sw = sweep_for("sl2", "sl2")
        assert_block_matches_scalar(sw, [[0, 0], [0, 1], [1, 0], [1, 1]])

    def test_exhaustive_i1_to_i2(self):
        sw = sweep_for("i1", "i2")
        rows = [[a, b] for a in range(7) for b in range(7)]
        assert_block_matches_scalar(sw, rows)

    def test_seeded_sample_of_i2(self):
        import random

        rng = random.Random(20240811)
        rows = [[rng.randrange(7) for _ in range(7)] for _ in range(400)]
        special = [
            list(range(7)),
            [1] * 7,
            [6] * 7,
            [0, 0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 0, 2],
            [0, 0, 1, 0, 0, 0, 0],
            [1, 0, 1, 0, 0, 0, 0],
        ]
        sw = sweep_for("i2", "i2")
        assert_block_matches_scalar(sw, rows + special)


class TestSweepOutcome:
    def test_small_full_sweep_passes(self):
        sw = sweep_for("sl2", "sl2")
        out = run_transfer_sweep(sw, "sl2", "sl2")
        assert out.ok and out.total == 4
        assert out.counts["morphism"] == 3
        assert out.counts["vee_r"] == 3
        assert out.counts["wedge_r"] == 4

    def test_budget_respected(self):
        sw = sweep_for("i2", "i2")
        out = run_transfer_sweep(sw, "i2", "i2", budget=10)
        assert not out.ok
        assert out.checks[0].failure.code == "BUDGET_EXCEEDED"

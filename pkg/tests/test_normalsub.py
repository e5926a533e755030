"""Normal subgroup search against hand counts and a reference oracle."""

import pytest

from etcubic.amalgams import load_catalog
from etcubic.normalsub import SearchBudgetExceeded, normal_subgroups
from etcubic.words import Presentation

from lowindex import normal_tables

CATALOG = load_catalog()


def presentations():
    return {
        "s3": Presentation(("a", "b"), ["a^2", "b^3", "(ab)^2"]),
        "q8": Presentation(("i", "j"), ["i^4", "i^2j^2", "j^-1iji"]),
        "d4": Presentation(("r", "s"), ["r^4", "s^2", "(rs)^2"]),
        "c12": Presentation(("a",), ["a^12"]),
        "a4": Presentation(("x", "y"), ["x^3", "y^3", "(xy)^2"]),
        "dinf": Presentation(("a", "b"), ["a^2", "b^2"]),
        "f2": Presentation(("a", "b"), []),
    }


def index_counts(records):
    counts = {}
    for rec in records:
        counts[rec.index] = counts.get(rec.index, 0) + 1
    return counts


class TestHandCounts:
    # full normal subgroup lattices small enough to check on paper

    def test_s3(self):
        assert index_counts(normal_subgroups(presentations()["s3"], 6)) == \
            {1: 1, 2: 1, 6: 1}

    def test_q8_every_subgroup_normal(self):
        assert index_counts(normal_subgroups(presentations()["q8"], 8)) == \
            {1: 1, 2: 3, 4: 1, 8: 1}

    def test_d4_reflections_not_normal(self):
        assert index_counts(normal_subgroups(presentations()["d4"], 8)) == \
            {1: 1, 2: 3, 4: 1, 8: 1}

    def test_c12_one_per_divisor(self):
        assert index_counts(normal_subgroups(presentations()["c12"], 12)) \
            == {1: 1, 2: 1, 3: 1, 4: 1, 6: 1, 12: 1}

    def test_a4(self):
        assert index_counts(normal_subgroups(presentations()["a4"], 12)) == \
            {1: 1, 3: 1, 12: 1}

    def test_infinite_dihedral(self):
        assert index_counts(normal_subgroups(presentations()["dinf"], 4)) \
            == {1: 1, 2: 3, 4: 1}

    def test_free_group_rank_two(self):
        # kernels of maps onto C2 (three) and C3 (four)
        assert index_counts(normal_subgroups(presentations()["f2"], 3)) == \
            {1: 1, 2: 3, 3: 4}

    def test_free_product_of_two_c3(self):
        # quotients are generated by two elements of order dividing 3:
        # four kernels onto C3, one onto C3 x C3, two onto A4
        g1 = CATALOG["G1"].pres
        assert index_counts(normal_subgroups(g1, 12)) == \
            {1: 1, 3: 4, 9: 1, 12: 2}


class TestAgainstOracle:
    CASES = [
        ("s3", 6), ("q8", 8), ("d4", 8), ("c12", 12), ("a4", 12),
        ("dinf", 6), ("f2", 4),
    ]

    @pytest.mark.parametrize("name,k", CASES)
    def test_small_presentations(self, name, k):
        pres = presentations()[name]
        got = {rec.key() for rec in normal_subgroups(pres, k)}
        expected = {t.key() for t in normal_tables(pres, k)}
        assert got == expected

    @pytest.mark.parametrize("name,k", [
        ("G1", 9), ("G1^1", 8), ("DjM1", 8), ("DjM2^1", 8), ("DjM2^2", 8),
    ])
    def test_catalog_presentations(self, name, k):
        pres = CATALOG[name].pres
        got = {rec.key() for rec in normal_subgroups(pres, k)}
        expected = {t.key() for t in normal_tables(pres, k)}
        assert got == expected


class TestProperties:
    def test_quotient_order_equals_index(self):
        for rec in normal_subgroups(presentations()["q8"], 8):
            assert rec.quotient().order() == rec.index

    def test_deterministic(self):
        pres = CATALOG["DjM1"].pres
        first = [rec.key() for rec in normal_subgroups(pres, 10)]
        second = [rec.key() for rec in normal_subgroups(pres, 10)]
        assert first == second

    def test_budget_is_recoverable(self):
        with pytest.raises(SearchBudgetExceeded):
            normal_subgroups(presentations()["f2"], 6, node_budget=10)

    def test_free_on_keeps_embedding_quotients_only(self):
        # in C3 * C3 the quotient C3 with both generators mapping to the
        # same cube root keeps both factors faithful, but a quotient
        # killing one generator must be dropped
        pres = CATALOG["G1"].pres
        plain = normal_subgroups(pres, 9)
        kept = normal_subgroups(pres, 9, free_on=[("x",), ("y",)])
        assert {r.index for r in plain} == {1, 3, 9}
        assert {r.index for r in kept} == {3, 9}
        assert len(kept) < len(plain)

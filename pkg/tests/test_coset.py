"""Coset enumeration: known indices, regular representations, budgets."""

import pytest

from etcubic.words import Presentation
from etcubic.coset import (
    enumerate_cosets, EnumerationBudgetExceeded, CosetTable,
    permutation_image,
)


def s3():
    return Presentation(("a", "b"), ["a^2", "b^3", "(ab)^2"])


class TestKnownIndices:
    def test_s3_over_cyclic3(self):
        p = s3()
        t = enumerate_cosets(p, [p.parse_word("b")], expected_index=2)
        assert t.n == 2

    def test_s3_over_reflection(self):
        p = s3()
        t = enumerate_cosets(p, [p.parse_word("a")], expected_index=3)
        assert t.n == 3

    def test_s3_regular(self):
        p = s3()
        t = enumerate_cosets(p, [], expected_index=6)
        assert t.n == 6

    def test_a4_regular(self):
        p = Presentation(("x", "y"), ["x^3", "y^3", "(xy)^2"])
        t = enumerate_cosets(p, [], expected_index=12)
        assert t.n == 12

    def test_tetrahedral_b_side(self):
        # <c,d,y | c^2, d^2, [c,d], y^3, (cy)^3, d y^-1 c y> has order 12
        p = Presentation(("c", "d", "y"),
                         ["c^2", "d^2", "[c,d]", "y^3", "(cy)^3",
                          "d y^-1 c y"])
        t = enumerate_cosets(p, [], expected_index=12)
        assert t.n == 12

    def test_s4(self):
        p = Presentation(("a", "b"), ["a^4", "b^2", "(ab)^3"])
        t = enumerate_cosets(p, [], expected_index=24)
        assert t.n == 24

    def test_quaternion(self):
        p = Presentation(("i", "j"), ["i^4", "i^2 j^2", "j^-1 i j i"])
        t = enumerate_cosets(p, [], expected_index=8)
        assert t.n == 8

    def test_trivial_quotient(self):
        p = Presentation(("a",), ["a"])
        t = enumerate_cosets(p, [])
        assert t.n == 1


class TestTableProperties:
    def test_action_consistency(self):
        p = s3()
        t = enumerate_cosets(p, [], expected_index=6)
        a = t.permutation(0)
        b = t.permutation(1)
        # relators act trivially on every coset
        for r in p.relators:
            for c in range(t.n):
                assert t.act(c, r) == c
        # a has order 2, b order 3 as permutations
        assert sorted(a) == list(range(6))
        assert [a[a[i]] for i in range(6)] == list(range(6))
        assert [b[b[b[i]]] for i in range(6)] == list(range(6))

    def test_standardized_deterministic(self):
        p = s3()
        t1 = enumerate_cosets(p, [p.parse_word("a")])
        t2 = enumerate_cosets(p, [p.parse_word("a")])
        assert t1.rows == t2.rows
        assert t1.key() == t2.key()

    def test_standard_form(self):
        # cosets appear in BFS order when scanning row by row
        p = Presentation(("x", "y"), ["x^3", "y^3", "(xy)^2"])
        t = enumerate_cosets(p, [])
        seen = 0
        for row in t.rows:
            for c in row:
                assert c <= seen + 1
                seen = max(seen, c)

    def test_budget_exceeded(self):
        # free product C2 * C3 is infinite
        p = Presentation(("a", "b"), ["a^2", "b^3"])
        with pytest.raises(EnumerationBudgetExceeded):
            enumerate_cosets(p, [], budget=500)

    def test_budget_recoverable(self):
        p = Presentation(("a", "b"), ["a^2", "b^3"])
        try:
            enumerate_cosets(p, [], budget=500)
        except EnumerationBudgetExceeded as e:
            assert e.budget == 500
            assert e.defined >= 500


class TestPermutationImage:
    def test_homomorphic(self):
        p = s3()
        t = enumerate_cosets(p, [], expected_index=6)
        img = permutation_image(t, p.parse_word("ab"))
        a = t.permutation(0)
        b = t.permutation(1)
        assert img == tuple(b[a[i]] for i in range(6))

    def test_core_quotient_group(self):
        p = s3()
        t = enumerate_cosets(p, [p.parse_word("a")])
        g = t.core_quotient()
        # faithful here: the core of <a> in S3 is trivial
        assert g.order() == 6

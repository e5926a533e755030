"""Word arithmetic and presentation parsing."""

import pytest
from hypothesis import given, strategies as st

from etcubic.words import (
    free_reduce, inverse, concat, word_pow, commutator, substitute,
    parse_word, word_to_text, Presentation, WordSyntaxError,
)


GENS = ("a", "b", "c")


def w(text):
    return parse_word(text, GENS)


class TestFreeReduction:
    def test_cancel_adjacent(self):
        assert free_reduce([(0, 1), (0, -1)]) == ()

    def test_cancel_nested(self):
        # a b b^-1 a^-1 collapses completely
        assert free_reduce([(0, 1), (1, 1), (1, -1), (0, -1)]) == ()

    def test_no_cancel(self):
        word = ((0, 1), (1, 1), (0, -1))
        assert free_reduce(word) == word

    def test_inverse_roundtrip(self):
        word = w("a b^-1 c a")
        assert free_reduce(concat(word, inverse(word))) == ()
        assert free_reduce(concat(inverse(word), word)) == ()

    def test_pow(self):
        assert word_pow(w("ab"), 3) == w("ababab")
        assert word_pow(w("ab"), -1) == w("b^-1 a^-1")
        assert word_pow(w("ab"), 0) == ()

    def test_commutator(self):
        assert commutator(w("a"), w("b")) == w("a^-1 b^-1 a b")

    def test_substitute(self):
        # x -> ab, y -> c^-1 in x y^-1 x
        images = {0: w("ab"), 1: w("c^-1")}
        word = parse_word("x y^-1 x", ("x", "y"))
        assert substitute(word, images) == w("ab c ab")


class TestParser:
    def test_single(self):
        assert w("a") == ((0, 1),)

    def test_powers(self):
        assert w("a^3") == ((0, 1),) * 3
        assert w("a^-2") == ((0, -1),) * 2

    def test_parens(self):
        assert w("(ab)^2") == w("abab")
        assert w("(ab)^-1") == w("b^-1 a^-1")

    def test_brackets(self):
        assert w("[a,b]") == w("a^-1 b^-1 a b")
        assert w("[a, bc]") == w("a^-1 c^-1 b^-1 a b c")

    def test_longest_match(self):
        word = parse_word("ab abc", ("a", "ab", "abc", "b", "c"))
        assert word == ((1, 1), (2, 1))

    def test_whitespace_and_identity(self):
        assert w("  ") == ()
        assert w("1") == ()

    def test_reduces(self):
        assert w("a a^-1 b") == ((1, 1),)

    def test_rejects_unknown(self):
        with pytest.raises(WordSyntaxError):
            w("a z")

    def test_rejects_bad_power(self):
        with pytest.raises(WordSyntaxError):
            w("a^")

    def test_rejects_unbalanced(self):
        with pytest.raises(WordSyntaxError):
            w("(ab")

    def test_text_roundtrip(self):
        for text in ["a", "a^3", "ab^-2c", "[a,b]", "(abc)^2 a^-4"]:
            word = w(text)
            assert w(word_to_text(word, GENS)) == word


@given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])),
                max_size=30))
def test_reduce_idempotent(letters):
    once = free_reduce(letters)
    assert free_reduce(once) == once


@given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])),
                max_size=20))
def test_word_times_inverse_is_trivial(letters):
    word = free_reduce(letters)
    assert free_reduce(concat(word, inverse(word))) == ()


class TestPresentation:
    def test_basic(self):
        p = Presentation(("a", "b"), ["a^2", "b^3", "(ab)^2"])
        assert p.gens == ("a", "b")
        assert len(p.relators) == 3
        assert p.relators[0] == ((0, 1), (0, 1))

    def test_subgroups(self):
        p = Presentation(("a", "b"), ["a^2", "b^3"],
                         subgroups={"A": ("a",), "B": ("b",)})
        assert p.subgroup_words("A") == (((0, 1),),)

    def test_restriction(self):
        p = Presentation(("c", "x", "y"),
                         ["c^2", "x^3", "y^3", "(cx)^2", "[c,y]"])
        a = p.restriction(("c", "x"))
        assert a.gens == ("c", "x")
        texts = {a.word_str(r) for r in a.relators}
        assert texts == {"c^2", "x^3", "(cx)^2"} or len(a.relators) == 3

    def test_text_roundtrip(self):
        p = Presentation(("h", "a"), ["h^3", "a^2"],
                         subgroups={"A": ("h",), "B": ("a",)},
                         meta={"kind": "arc", "order_a": "3"},
                         name="tiny")
        text = p.to_text()
        q = Presentation.parse(text)
        assert q.name == p.name
        assert q.gens == p.gens
        assert q.relators == p.relators
        assert q.subgroups == p.subgroups
        assert q.meta == p.meta

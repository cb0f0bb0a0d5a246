from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loophom.errors import DomainError, UsageError
from loophom.words import (
    AlgebraElement,
    Alphabet,
    Leaf,
    Node,
    QuadraticRelation,
    count_words,
    enumerate_words,
    expand_bracket_graded,
    expand_bracket_ungraded,
    multiply,
    render_tree,
    tree_from_json,
    tree_to_json,
)

A3 = Alphabet((1, 1, 1))
Y = Alphabet((2, 2, 3, 3))


def br(a, b):
    return Node(a, b)


@st.composite
def trees(draw, r=3, depth=3):
    if depth == 0 or draw(st.booleans()):
        return Leaf(draw(st.integers(1, r)))
    return Node(draw(trees(r, depth - 1)), draw(trees(r, depth - 1)))


class TestAlphabet:
    def test_rejects_bad_degrees(self):
        with pytest.raises(DomainError):
            Alphabet((1, 0))
        with pytest.raises(DomainError):
            Alphabet(())

    def test_rejects_bad_order(self):
        with pytest.raises(DomainError):
            Alphabet((1, 1), (1, 1))

    def test_deglex(self):
        a = Alphabet((1, 2))
        words = sorted([(2,), (1, 1), (1,), (1, 2), (2, 1)], key=a.key)
        assert words == [(1,), (1, 1), (2,), (1, 2), (2, 1)]

    def test_reordered(self):
        a = A3.with_order((3, 1, 2))
        assert min([(1,), (2,), (3,)], key=a.key) == (3,)


class TestEnumeration:
    def test_counts(self):
        assert len(enumerate_words(A3, 2)) == 9
        assert len(enumerate_words(Alphabet((1, 2)), 5)) == 8

    def test_empty_word(self):
        assert enumerate_words(A3, 0) == [()]
        assert enumerate_words(Y, 1) == []

    def test_sorted_and_distinct(self):
        ws = enumerate_words(Y, 9)
        assert ws == sorted(set(ws), key=Y.key)
        assert all(Y.word_degree(w) == 9 for w in ws)

    @given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.integers(0, 9))
    def test_count_matches_enumeration(self, degs, m):
        a = Alphabet(tuple(degs))
        assert count_words(a, m) == len(enumerate_words(a, m))


class TestElements:
    def test_zero_coefficients_dropped(self):
        e = AlgebraElement(A3, {(1,): 1, (2,): 0})
        assert e.support() == [(1,)]

    def test_arithmetic(self):
        a = AlgebraElement.word(A3, (1, 2))
        b = AlgebraElement.word(A3, (2, 1))
        assert (a - b + b) == a
        assert (a - a).is_zero()
        assert (2 * a).coefficient((1, 2)) == 2

    def test_letter_range(self):
        with pytest.raises(UsageError):
            AlgebraElement.word(A3, (4,))

    def test_leading_word(self):
        e = AlgebraElement(A3, {(1, 2): 1, (2, 1): 3, (3, 3): -1})
        assert e.leading_word() == (3, 3)
        assert e.leading_word(smallest=True) == (1, 2)
        with pytest.raises(DomainError):
            AlgebraElement.zero(A3).leading_word()

    def test_mismatched_alphabets(self):
        with pytest.raises(UsageError):
            AlgebraElement.letter(A3, 1) + AlgebraElement.letter(Y, 1)

    def test_rendering(self):
        e = AlgebraElement(A3, {(1, 2): 1, (2, 1): -1})
        assert str(e) == "u1u2 - u2u1"

    def test_multiplication_example(self):
        # the Y2 relation times u1
        rel = AlgebraElement(Y, {(1, 3): 1, (2, 4): 1, (3, 1): -1, (4, 2): -1})
        out = multiply(rel, AlgebraElement.letter(Y, 1))
        assert dict(out.terms) == {(1, 3, 1): 1, (2, 4, 1): 1, (3, 1, 1): -1, (4, 2, 1): -1}

    @given(st.integers(0, 100))
    def test_product_associative(self, seed):
        import random

        rng = random.Random(seed)

        def rand():
            return AlgebraElement(A3, {tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 2))):
                                       rng.randint(-3, 3) for _ in range(3)})

        a, b, c = rand(), rand(), rand()
        assert (a * b) * c == a * (b * c)


class TestBrackets:
    def test_simple(self):
        e = expand_bracket_ungraded(br(Leaf(1), Leaf(2)), A3)
        assert dict(e.terms) == {(1, 2): 1, (2, 1): -1}

    def test_nested(self):
        t = br(br(Leaf(1), Leaf(2)), Leaf(1))
        e = expand_bracket_ungraded(t, A3)
        assert dict(e.terms) == {(1, 2, 1): 2, (1, 1, 2): -1, (2, 1, 1): -1}

    def test_graded_odd_odd_is_anticommutator(self):
        e = expand_bracket_graded(br(Leaf(1), Leaf(2)), A3)
        assert dict(e.terms) == {(1, 2): 1, (2, 1): 1}

    def test_graded_even_sign(self):
        e = expand_bracket_graded(br(Leaf(1), Leaf(3)), Y)
        assert dict(e.terms) == {(1, 3): 1, (3, 1): -1}

    def test_graded_self_bracket(self):
        # [x, x] = 2 x^2 for odd x and vanishes for even x
        assert dict(expand_bracket_graded(br(Leaf(1), Leaf(1)), A3).terms) == {(1, 1): 2}
        assert expand_bracket_graded(br(Leaf(1), Leaf(1)), Y).is_zero()

    def test_render_and_json(self):
        t = br(br(Leaf(1), Leaf(2)), br(Leaf(1), Leaf(3)))
        assert render_tree(t, A3) == "[[u1,u2],[u1,u3]]"
        assert tree_to_json(t) == [[1, 2], [1, 3]]
        assert tree_from_json(tree_to_json(t)) == t

    @given(trees(), trees())
    def test_antisymmetry(self, a, b):
        ab = expand_bracket_ungraded(br(a, b), A3)
        ba = expand_bracket_ungraded(br(b, a), A3)
        assert ab + ba == AlgebraElement.zero(A3)

    @given(trees(depth=2), trees(depth=2), trees(depth=2))
    def test_jacobi(self, a, b, c):
        total = AlgebraElement.zero(A3)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            total = total + expand_bracket_ungraded(br(x, br(y, z)), A3)
        assert total.is_zero()

    @given(trees(r=4), trees(r=4), trees(r=4))
    def test_graded_jacobi(self, a, b, c):
        alph = Alphabet((1, 2, 3, 1))

        def deg(t):
            return alph.word_degree(t.letters())

        def sgn(x, z):
            return -1 if (deg(x) * deg(z)) % 2 else 1

        total = AlgebraElement.zero(alph)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            total = total + expand_bracket_graded(br(x, br(y, z)), alph).scale(sgn(x, z))
        assert total.is_zero()

    @given(trees(r=4))
    def test_graded_equals_ungraded_for_even_degrees(self, t):
        even = Alphabet((2, 2, 4, 6))
        assert expand_bracket_graded(t, even) == expand_bracket_ungraded(t, even)

    def test_expansion_is_homogeneous(self):
        for a, b in itertools.product(range(1, 4), repeat=2):
            e = expand_bracket_ungraded(br(Leaf(a), br(Leaf(b), Leaf(1))), A3)
            assert e.is_zero() or e.degree() == 3


class TestQuadraticRelation:
    def test_requires_length_two(self):
        with pytest.raises(DomainError):
            QuadraticRelation.from_terms(A3, {(1,): 1})
        with pytest.raises(DomainError):
            QuadraticRelation.from_terms(A3, {})

    def test_requires_homogeneous(self):
        with pytest.raises(DomainError):
            QuadraticRelation.from_terms(Y, {(1, 1): 1, (3, 3): 1})

    def test_matrix(self):
        rel = QuadraticRelation.from_terms(A3, {(1, 2): 1, (2, 1): -1})
        assert rel.degree == 2
        assert rel.matrix() == [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
        assert rel.scaled(3).coefficient(2, 1) == -3

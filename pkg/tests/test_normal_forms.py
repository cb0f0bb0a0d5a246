from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loophom import linalg
from loophom.errors import ComplementError, DomainError, SliceTooLargeError
from loophom.normal_forms import (
    LeadingPair,
    QuotientEngine,
    avoiding_counts,
    avoiding_words,
    hilbert_from_avoiding,
    hilbert_from_series,
    ideal_slice_rank,
    off_diagonal_leading_pair,
    quotient_coordinates,
    verify_complement_basis,
)
from loophom.words import (
    AlgebraElement,
    Alphabet,
    Leaf,
    Node,
    QuadraticRelation,
    enumerate_words,
    expand_bracket_ungraded,
    words_with_prefix_suffix,
)


def ideal_rows(relation, m):
    """Dense rows ``w1 f w2`` spanning the degree-m slice of the ideal."""
    alphabet = relation.alphabet
    index = {w: k for k, w in enumerate(enumerate_words(alphabet, m))}
    rows = []
    for w1, w2 in words_with_prefix_suffix(alphabet, m - relation.degree):
        row = [Fraction(0)] * len(index)
        for w, c in relation.items():
            row[index[w1 + w + w2]] += c
        rows.append(row)
    return rows, index


def in_ideal(x: AlgebraElement, relation) -> bool:
    rows, index = ideal_rows(relation, x.degree())
    vec = [Fraction(0)] * len(index)
    for w, c in x.items():
        vec[index[w]] = c
    return linalg.rank(rows + [vec]) == linalg.rank(rows)


def brute_ideal_rank(relation, m):
    rows, _ = ideal_rows(relation, m)
    return linalg.rank(rows) if rows else 0


class TestAvoiding:
    def test_counts(self):
        a = Alphabet((1, 1, 1))
        lp = LeadingPair(1, 2)
        assert len(avoiding_words(a, lp, 2)) == 8
        assert avoiding_counts(a, lp, 5)[5] == 144

    def test_y2_pair(self):
        a = Alphabet((2, 2, 3, 3))
        assert avoiding_counts(a, LeadingPair(4, 2), 5)[5] == 7
        assert avoiding_counts(a, LeadingPair(1, 3), 5)[5] == 7

    def test_no_factor(self):
        a = Alphabet((1, 2, 1))
        for w in avoiding_words(a, LeadingPair(3, 1), 6):
            assert all(w[k:k + 2] != (3, 1) for k in range(len(w) - 1))

    @given(st.lists(st.integers(1, 3), min_size=2, max_size=4), st.data())
    def test_dp_matches_enumeration(self, degs, data):
        a = Alphabet(tuple(degs))
        r = len(degs)
        alpha = data.draw(st.integers(1, r))
        beta = data.draw(st.integers(1, r).filter(lambda x: x != alpha))
        lp = LeadingPair(alpha, beta)
        counts = avoiding_counts(a, lp, 8)
        assert counts == [len(avoiding_words(a, lp, m)) for m in range(9)]

    def test_pair_must_be_off_diagonal(self):
        with pytest.raises(DomainError):
            LeadingPair(2, 2)


class TestHilbert:
    def test_series(self):
        h = hilbert_from_series(Alphabet((1, 1, 1)), 2, 6)
        assert h.dims == (1, 3, 8, 21, 55, 144, 377)
        assert set(h.provenance) == {"series"}

    def test_free(self):
        assert hilbert_from_series(Alphabet((1, 1)), None, 4).dims == (1, 2, 4, 8, 16)

    def test_series_equals_avoiding(self, x3, y2, h4):
        for p in (x3, y2, h4):
            s = hilbert_from_series(p.alphabet, p.relation_degree, 12)
            a = hilbert_from_avoiding(p.alphabet, p.leading_pair, 12)
            assert s.dims == a.dims


class TestLeadingPair:
    def test_x3(self, x3):
        assert x3.leading_pair == LeadingPair(1, 2)

    def test_y2(self, y2):
        assert y2.leading_pair == LeadingPair(1, 3)

    def test_diagonal_only(self):
        rel = QuadraticRelation.from_terms(Alphabet((1, 1)), {(1, 1): 1, (2, 2): 1})
        with pytest.raises(DomainError):
            off_diagonal_leading_pair(rel)


class TestOracle:
    def test_x3_ranks(self, x3):
        assert ideal_slice_rank(x3.ungraded, 2) == 1
        assert ideal_slice_rank(x3.ungraded, 3) == 6
        assert ideal_slice_rank(x3.graded, 3) == 6

    def test_y2_rank(self, y2):
        assert ideal_slice_rank(y2.ungraded, 5) == 1
        assert ideal_slice_rank(y2.ungraded, 4) == 0

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_matches_dense_rank(self, x3, m):
        for rel in (x3.graded, x3.ungraded):
            assert ideal_slice_rank(rel, m) == brute_ideal_rank(rel, m)

    def test_guard(self, x3):
        with pytest.raises(SliceTooLargeError):
            ideal_slice_rank(x3.ungraded, 9, guard=1000)


class TestVerify:
    def test_x3(self, x3):
        for m in range(1, 7):
            assert verify_complement_basis(x3.graded, x3.leading_pair, m)
            assert verify_complement_basis(x3.ungraded, x3.leading_pair, m)

    def test_y2(self, y2):
        for m in range(1, 9):
            assert verify_complement_basis(y2.ungraded, y2.leading_pair, m)

    def test_wrong_pair(self, x3):
        # (2, 3) does not occur in the relation
        assert not verify_complement_basis(x3.ungraded, LeadingPair(2, 3), 3)

    def test_corrupted_relation(self):
        # -(u1 - u2)^2: a square, so its quotient is bigger than the avoiding count
        a = Alphabet((1, 1))
        rel = QuadraticRelation.from_terms(a, {(1, 1): -1, (1, 2): 1, (2, 1): 1, (2, 2): -1})
        assert verify_complement_basis(rel, LeadingPair(1, 2), 2)
        assert not verify_complement_basis(rel, LeadingPair(1, 2), 3)

    def test_one_sided_factor_is_fine(self):
        # u1(u1 + u2): no overlaps and a terminating rewrite, so still a complement
        a = Alphabet((1, 1))
        rel = QuadraticRelation.from_terms(a, {(1, 2): 1, (1, 1): 1})
        assert all(verify_complement_basis(rel, LeadingPair(1, 2), m) for m in range(2, 6))


class TestCoordinates:
    def test_relation_is_zero(self, x3):
        rel = x3.ungraded
        coords = quotient_coordinates(rel.element, rel, x3.leading_pair)
        assert all(c == 0 for c in coords)

    def test_leading_word_rewrites(self, x3):
        rel, lp = x3.ungraded, x3.leading_pair
        x = AlgebraElement.word(rel.alphabet, lp.word)
        coords = quotient_coordinates(x, rel, lp)
        basis = avoiding_words(rel.alphabet, lp, 2)
        rest = rel.element - x
        assert coords == tuple(-rest.coefficient(w) for w in basis)

    def test_matches_ideal_membership(self, x3):
        rel, lp = x3.ungraded, x3.leading_pair
        t = Node(Node(Leaf(1), Leaf(2)), Leaf(1))
        x = expand_bracket_ungraded(t, rel.alphabet)
        coords = quotient_coordinates(x, rel, lp)
        basis = avoiding_words(rel.alphabet, lp, 3)
        residual = x - AlgebraElement(rel.alphabet, dict(zip(basis, coords)))
        assert residual.is_zero() or in_ideal(residual, rel)

    @pytest.mark.parametrize("which", ["x3", "y2", "h4"])
    def test_random_elements_against_dense_oracle(self, which, request):
        p = request.getfixturevalue(which)
        rel, lp = p.ungraded, p.leading_pair
        rng = random.Random(7)
        m = rel.degree + 2
        words = enumerate_words(rel.alphabet, m)
        basis = avoiding_words(rel.alphabet, lp, m)
        for _ in range(5):
            x = AlgebraElement(rel.alphabet, {rng.choice(words): rng.randint(-3, 3) for _ in range(4)})
            if x.is_zero():
                continue
            coords = quotient_coordinates(x, rel, lp)
            residual = x - AlgebraElement(rel.alphabet, dict(zip(basis, coords)))
            assert residual.is_zero() or in_ideal(residual, rel)

    @given(st.lists(st.tuples(st.integers(0, 26), st.integers(-4, 4)), min_size=1, max_size=4),
           st.lists(st.tuples(st.integers(0, 26), st.integers(-4, 4)), min_size=1, max_size=4),
           st.integers(-3, 3))
    def test_linear(self, xs, ys, c):
        from loophom.corpus import X3
        from loophom.manifold import present

        p = present(X3)
        rel, lp = p.ungraded, p.leading_pair
        words = enumerate_words(rel.alphabet, 3)
        x = AlgebraElement(rel.alphabet, {words[i]: v for i, v in xs})
        y = AlgebraElement(rel.alphabet, {words[i]: v for i, v in ys})
        eng = QuotientEngine(rel, lp)
        lhs = eng.coordinates(x + y.scale(c))
        rx, ry = eng.coordinates(x), eng.coordinates(y)
        rhs = {w: rx.get(w, 0) + c * ry.get(w, 0) for w in set(rx) | set(ry)}
        assert lhs == {w: v for w, v in rhs.items() if v}

    def test_normal_words_are_fixed(self, y2):
        eng = QuotientEngine(y2.ungraded, y2.leading_pair)
        for w in avoiding_words(y2.alphabet, y2.leading_pair, 8):
            assert eng.normal_form_word(w) == {w: 1}

    def test_zero_element(self, x3):
        with pytest.raises(DomainError):
            quotient_coordinates(AlgebraElement.zero(x3.alphabet), x3.ungraded, x3.leading_pair)

    def test_check_refuses_bad_pair(self, x3):
        x = AlgebraElement.word(x3.alphabet, (2, 3))
        with pytest.raises(ComplementError):
            quotient_coordinates(x, x3.ungraded, LeadingPair(2, 3))

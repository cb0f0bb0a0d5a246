from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loophom import linalg
from loophom.errors import DomainError

small = st.integers(-3, 3)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@st.composite
def symmetric(draw, n=None):
    n = n or draw(st.integers(1, 5))
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = Fraction(draw(small))
    return m


@st.composite
def skew(draw):
    n = 2 * draw(st.integers(1, 3))
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(draw(small))
            m[i][j], m[j][i] = v, -v
    return m


class TestDense:
    def test_determinant(self):
        assert linalg.determinant(linalg.to_matrix([[1, 2], [3, 4]])) == -2
        assert linalg.determinant(linalg.identity(4)) == 1

    def test_inverse(self):
        a = linalg.to_matrix([[2, 1], [1, 1]])
        assert linalg.matmul(a, linalg.inverse(a)) == linalg.identity(2)
        with pytest.raises(DomainError):
            linalg.inverse(linalg.to_matrix([[1, 2], [2, 4]]))

    @given(st.integers(1, 4).flatmap(square))
    def test_rank_vs_determinant(self, rows):
        a = linalg.to_matrix(rows)
        full = linalg.rank(a) == len(a)
        assert full == (linalg.determinant(a) != 0)

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
    def test_determinant_multiplicative(self, ab):
        a, b = map(linalg.to_matrix, ab)
        assert linalg.determinant(linalg.matmul(a, b)) == linalg.determinant(a) * linalg.determinant(b)


class TestForms:
    def test_diagonal_is_untouched(self):
        s = linalg.to_matrix([[1, 0], [0, 2]])
        assert linalg.congruence_diagonalize(s) == linalg.identity(2)

    def test_hyperbolic_plane(self):
        s = linalg.to_matrix([[0, 1], [1, 0]])
        p = linalg.congruence_diagonalize(s)
        d = linalg.congruent(s, p)
        assert linalg.is_diagonal(d)
        assert linalg.determinant(p) != 0

    @given(symmetric())
    def test_diagonalize(self, s):
        p = linalg.congruence_diagonalize(s)
        assert linalg.is_diagonal(linalg.congruent(s, p))
        assert linalg.determinant(p) != 0

    def test_diagonalize_rejects_skew(self):
        with pytest.raises(DomainError):
            linalg.congruence_diagonalize(linalg.to_matrix([[0, 1], [-1, 0]]))

    @given(skew())
    def test_symplectic(self, k):
        if linalg.determinant(k) == 0:
            with pytest.raises(DomainError):
                linalg.symplectic_basis(k)
            return
        p = linalg.symplectic_basis(k)
        j = linalg.congruent(k, p)
        n = len(k)
        for i in range(n):
            for t in range(n):
                want = 0
                if i % 2 == 0 and t == i + 1:
                    want = 1
                elif i % 2 == 1 and t == i - 1:
                    want = -1
                assert j[i][t] == want


class TestSparse:
    @given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                         min_size=1, max_size=6)))
    def test_rank_matches_dense(self, rows):
        sparse = [{k: c for k, c in enumerate(row) if c} for row in rows]
        assert linalg.sparse_integer_rank(sparse) == linalg.rank(linalg.to_matrix(rows))

    def test_rank_with_key(self):
        rows = [{"a": 1, "b": 1}, {"a": 2, "b": 2}, {"b": 1}]
        assert linalg.sparse_integer_rank(rows, key=lambda w: -ord(w)) == 2

    def test_solve(self):
        # Y1 + Y2 = e1, Y1 - Y2 = e2
        sol = linalg.solve_sparse([{"Y1": 1, "Y2": 1}, {"Y1": 1, "Y2": -1}],
                                  [{"e1": 1}, {"e2": 1}], ["Y1", "Y2"])
        half = Fraction(1, 2)
        assert sol["Y1"] == {"e1": half, "e2": half}
        assert sol["Y2"] == {"e1": half, "e2": -half}

    def test_singular(self):
        with pytest.raises(linalg.SingularSystemError):
            linalg.solve_sparse([{"Y": 1}, {"Y": 2}], [{}, {}], ["Y", "Z"])
        with pytest.raises(linalg.SingularSystemError):
            linalg.solve_sparse([{"Y": 1}], [{}], ["Y", "Z"])

    @given(st.integers(1, 4).flatmap(square), st.lists(small, min_size=4, max_size=4))
    def test_solve_random(self, rows, b):
        a = linalg.to_matrix(rows)
        n = len(a)
        names = [f"Y{i}" for i in range(n)]
        eqs = [{names[j]: a[i][j] for j in range(n)} for i in range(n)]
        rhs = [{"e": b[i]} for i in range(n)]
        if linalg.determinant(a) == 0:
            with pytest.raises(linalg.SingularSystemError):
                linalg.solve_sparse(eqs, rhs, names)
            return
        sol = linalg.solve_sparse(eqs, rhs, names)
        for i in range(n):
            assert sum(a[i][j] * sol[names[j]].get("e", 0) for j in range(n)) == b[i]

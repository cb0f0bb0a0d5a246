"""Exact linear algebra over the rationals.

Dense helpers work on lists of lists of ``Fraction``.  Sparse helpers work
on rows given as ``dict`` from a hashable column key to a coefficient.
Pivots are chosen by smallest bit size, which keeps intermediate
fractions short; any pivot rule would give the same answers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Hashable, Iterable, Sequence

from .errors import DomainError

Matrix = list  # list[list[Fraction]]


def _bits(x: Fraction) -> int:
    return abs(x.numerator).bit_length() + x.denominator.bit_length()


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def congruent(c: Matrix, a: Matrix) -> Matrix:
    """``A^T C A``."""
    return matmul(matmul(transpose(a), c), a)


def row_echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(map(Fraction, row)) for row in a]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        cand = [i for i in range(r, rows) if m[i][c] != 0]
        if not cand:
            continue
        p = min(cand, key=lambda i: _bits(m[i][c]))
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(row_echelon(a)[1])


def determinant(a: Matrix) -> Fraction:
    n = len(a)
    m = [list(map(Fraction, row)) for row in a]
    det = Fraction(1)
    for c in range(n):
        cand = [i for i in range(c, n) if m[i][c] != 0]
        if not cand:
            return Fraction(0)
        p = min(cand, key=lambda i: _bits(m[i][c]))
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    red, piv = row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise DomainError("matrix is singular")
    return [row[n:] for row in red]


def is_symmetric(a: Matrix) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def is_skew(a: Matrix) -> bool:
    return all(a[i][j] == -a[j][i] for i in range(len(a)) for j in range(i + 1))


def is_diagonal(a: Matrix) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(len(a)) if i != j)


def _bilinear(s: Matrix, v: Sequence[Fraction], w: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for i, vi in enumerate(v):
        if vi:
            row = s[i]
            total += vi * sum((row[j] * wj for j, wj in enumerate(w) if wj), Fraction(0))
    return total


def congruence_diagonalize(s: Matrix) -> Matrix:
    """``P`` with ``P^T S P`` diagonal, for symmetric ``S``.

    Columns of ``P`` are the new basis vectors.  Diagonal matrices come
    back with ``P = I``.
    """
    n = len(s)
    if not is_symmetric(s):
        raise DomainError("congruence diagonalization needs a symmetric matrix")
    if is_diagonal(s):
        return identity(n)
    basis = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]  # list of vectors
    done: list[list[Fraction]] = []
    rest = basis
    while rest:
        # choose an anisotropic vector, combining two if needed
        pick = next((k for k, v in enumerate(rest) if _bilinear(s, v, v) != 0), None)
        if pick is None:
            pair = next(((i, j) for i in range(len(rest)) for j in range(i + 1, len(rest))
                         if _bilinear(s, rest[i], rest[j]) != 0), None)
            if pair is None:
                done.extend(rest)
                break
            i, j = pair
            rest[i] = [a + b for a, b in zip(rest[i], rest[j])]
            pick = i
        v = rest.pop(pick)
        q = _bilinear(s, v, v)
        rest = [[wi - (_bilinear(s, v, w) / q) * vi for wi, vi in zip(w, v)] for w in rest]
        done.append(v)
    return transpose(done)


def symplectic_basis(k: Matrix) -> Matrix:
    """``P`` with ``P^T K P`` a direct sum of ``[[0, 1], [-1, 0]]`` blocks.

    ``K`` must be skew and nondegenerate.  Columns of ``P`` come in pairs
    ``(e_1, f_1, e_2, f_2, ...)``.
    """
    n = len(k)
    if not is_skew(k):
        raise DomainError("symplectic basis needs a skew matrix")
    rest = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    done: list[list[Fraction]] = []
    while rest:
        pair = next(((i, j) for i in range(len(rest)) for j in range(i + 1, len(rest))
                     if _bilinear(k, rest[i], rest[j]) != 0), None)
        if pair is None:
            raise DomainError("skew form is degenerate")
        i, j = pair
        e, f = rest[i], rest[j]
        lam = _bilinear(k, e, f)
        f = [x / lam for x in f]
        others = [w for t, w in enumerate(rest) if t not in (i, j)]
        new_rest = []
        for v in others:
            a = -_bilinear(k, v, f)
            b = _bilinear(k, v, e)
            new_rest.append([vi + a * ei + b * fi for vi, ei, fi in zip(v, e, f)])
        rest = new_rest
        done.extend([e, f])
    return transpose(done)


# -- sparse routines ----------------------------------------------------------

def _primitive(row: dict) -> dict:
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            return row
    if g > 1:
        return {w: c // g for w, c in row.items()}
    return row


def sparse_integer_rank(rows: Iterable[dict], key: Callable | None = None) -> int:
    """Rank of integer rows by fraction-free elimination.

    Each row is reduced against stored pivots on its largest column (under
    ``key``) until it is zero or claims a new pivot.  Rows are kept
    primitive by dividing out the content.
    """
    pivots: dict = {}
    found = 0
    for row in rows:
        row = {w: c for w, c in row.items() if c}
        while row:
            lead = max(row, key=key) if key else max(row)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = _primitive(row)
                found += 1
                break
            a, b = row[lead], p[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {w: c * b for w, c in row.items()}
            for w, c in p.items():
                v = new.get(w, 0) - a * c
                if v:
                    new[w] = v
                else:
                    new.pop(w, None)
            row = _primitive(new)
    return found


class SingularSystemError(DomainError):
    """A square sparse system without a unique solution."""


def _axpy(target: dict, coeff, source: dict) -> None:
    """``target += coeff * source`` dropping zeros."""
    for w, c in source.items():
        v = target.get(w, 0) + coeff * c
        if v:
            target[w] = v
        else:
            target.pop(w, None)


def solve_sparse(equations: Sequence[dict], rhs: Sequence[dict],
                 unknowns: Sequence[Hashable]) -> dict:
    """Solve ``sum_k A[i][k] Y_k = B_i`` where each ``B_i`` is a vector.

    ``equations[i]`` maps unknowns to coefficients, ``rhs[i]`` maps basis
    keys to coefficients.  Returns ``{unknown: vector}``.  Raises
    :class:`SingularSystemError` unless the solution is unique.
    """
    if len(equations) != len(unknowns):
        raise SingularSystemError("system is not square")
    pivot_rows: list[tuple[Hashable, dict, dict]] = []
    where: dict = {}
    for eq, b in zip(equations, rhs):
        eq = {k: Fraction(c) for k, c in eq.items() if c}
        b = {w: Fraction(c) for w, c in b.items() if c}
        # eliminate known pivots, repeating since substitution can add pivots back
        changed = True
        while changed:
            changed = False
            for k in [k for k in eq if k in where]:
                if k not in eq:
                    continue
                _, prow, pb = pivot_rows[where[k]]
                f = eq[k]
                _axpy(eq, -f, prow)
                _axpy(b, -f, pb)
                changed = True
        if not eq:
            raise SingularSystemError("dependent equation")
        k = min(eq, key=lambda u: _bits(eq[u]))
        inv = 1 / eq[k]
        eq = {u: c * inv for u, c in eq.items()}
        b = {w: c * inv for w, c in b.items()}
        where[k] = len(pivot_rows)
        pivot_rows.append((k, eq, b))
    if set(where) != set(unknowns):
        raise SingularSystemError("system does not determine every unknown")
    solution: dict = {}
    for k, eq, b in reversed(pivot_rows):
        value = dict(b)
        for u, c in eq.items():
            if u != k:
                _axpy(value, -c, solution[u])
        solution[k] = value
    return solution

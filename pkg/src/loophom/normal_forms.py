"""Diamond-lemma style bases of a one-relator quadratic algebra.

For a relation ``f`` with a distinguished length-2 word ``ab`` (the leading
pair, coefficient 1) the words avoiding the factor ``ab`` are a candidate
complement of the two-sided ideal ``(f)`` in every degree.  Three things
live here:

* combinatorics of avoiding words (enumeration and a counting recurrence);
* an independent oracle, :func:`ideal_slice_rank`, which eliminates the
  rows ``w1 f w2`` directly;
* :class:`QuotientEngine`, which writes any element in the avoiding-word
  basis.

The engine works degree by degree.  A normal word ``p`` times a letter
``x`` is normal unless ``p`` ends in ``a`` and ``x = b``; then
``p' a b`` is replaced through the relation, which only needs normal forms
of lower degree plus the same kind of overhang symbols ``Y_q = NF(q a b)``
in the current degree.  When the substitution is acyclic (for instance
when every other word of ``f`` is larger than ``ab``) plain recursion
terminates.  Otherwise the overhang symbols of the degree are found by
solving one sparse linear system, which also certifies that the avoiding
words span.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

from . import linalg
from .errors import ComplementError, DomainError, SliceTooLargeError, UsageError
from .series import Series, series_inverse
from .words import (
    AlgebraElement,
    Alphabet,
    QuadraticRelation,
    count_words,
    words_with_prefix_suffix,
)

SLICE_GUARD = 200_000
REWRITE_FUEL = 64


@dataclass(frozen=True)
class LeadingPair:
    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha == self.beta:
            raise DomainError(f"leading pair needs two distinct letters, got ({self.alpha}, {self.alpha})")

    @property
    def word(self) -> tuple[int, int]:
        return (self.alpha, self.beta)


@dataclass(frozen=True)
class HilbertTable:
    """Graded dimensions ``dims[0..N]`` with a provenance tag per entry."""

    dims: tuple[int, ...]
    provenance: tuple[str, ...]

    def __post_init__(self):
        if not self.dims or self.dims[0] != 1:
            raise DomainError("a Hilbert table starts with dims[0] = 1")
        if len(self.provenance) != len(self.dims):
            raise UsageError("one provenance tag per entry")
        if any(x < 0 for x in self.dims):
            raise DomainError("dimensions are non-negative")

    @property
    def order(self) -> int:
        return len(self.dims) - 1


def off_diagonal_leading_pair(relation: QuadraticRelation) -> LeadingPair:
    """Smallest (deg-lex) word ``(i, j)``, ``i != j``, in the support."""
    alphabet = relation.alphabet
    words = [w for w, _ in relation.items() if w[0] != w[1]]
    if not words:
        raise DomainError("relation has no off-diagonal word to lead with")
    return LeadingPair(*min(words, key=alphabet.key))


def _has_factor(w: Sequence[int], a: int, b: int) -> bool:
    return any(w[k] == a and w[k + 1] == b for k in range(len(w) - 1))


def avoiding_words(alphabet: Alphabet, lp: LeadingPair, m: int) -> list[tuple[int, ...]]:
    """Words of loop degree ``m`` with no factor ``(alpha, beta)``, deg-lex."""
    if m < 0:
        return []
    a, b = lp.alpha, lp.beta
    letters = [(x, alphabet.degree(x)) for x in alphabet.order]
    out: list = []

    def extend(prefix: list, remaining: int):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        last = prefix[-1] if prefix else None
        for x, dx in letters:
            if dx <= remaining and not (last == a and x == b):
                prefix.append(x)
                extend(prefix, remaining - dx)
                prefix.pop()

    extend([], m)
    return out


def avoiding_counts(alphabet: Alphabet, lp: LeadingPair, n: int) -> list[int]:
    """``[#avoiding words of degree m for m = 0..n]``.

    ``e[m]`` counts avoiding words ending in ``alpha``; since
    ``alpha != beta`` these are exactly avoiding words of degree
    ``m - |alpha|`` with ``alpha`` appended.
    """
    da = alphabet.degree(lp.alpha)
    total = [0] * (n + 1)
    ends_a = [0] * (n + 1)
    if n >= 0:
        total[0] = 1
    for m in range(1, n + 1):
        acc = 0
        for x in alphabet.letters:
            dx = alphabet.degree(x)
            if dx <= m:
                acc += total[m - dx]
                if x == lp.beta:
                    acc -= ends_a[m - dx]
        total[m] = acc
        ends_a[m] = total[m - da] if da <= m else 0
    return total


def hilbert_from_series(alphabet: Alphabet, relation_degree: int | None, n: int) -> HilbertTable:
    """Coefficients of ``1 / (1 - sum t^|u_i| + t^D)`` through ``n``.

    ``relation_degree=None`` drops the relation term (free algebra).
    """
    terms = {0: 1}
    for d in alphabet.loop_degrees:
        terms[d] = terms.get(d, 0) - 1
    if relation_degree is not None:
        terms[relation_degree] = terms.get(relation_degree, 0) + 1
    inv = series_inverse(Series.from_terms(terms, n))
    dims = []
    for c in inv:
        if c.denominator != 1 or c < 0:
            raise DomainError(f"series coefficient {c} is not a dimension")
        dims.append(int(c))
    return HilbertTable(tuple(dims), ("series",) * (n + 1))


def hilbert_from_avoiding(alphabet: Alphabet, lp: LeadingPair, n: int) -> HilbertTable:
    return HilbertTable(tuple(avoiding_counts(alphabet, lp, n)), ("avoiding-words",) * (n + 1))


# -- oracle -------------------------------------------------------------------

def _sparsifying_change(relation: QuadraticRelation) -> linalg.Matrix:
    """Degree-preserving ``P`` making ``P^T G P`` sparse.

    ``G`` is the coefficient matrix of the relation.  Blocks pairing two
    different degrees become the identity, a symmetric middle block is
    diagonalized, a skew one is put in Darboux form.  The rank of every
    ideal slice is unchanged by any invertible degree-preserving
    substitution, so the oracle may work with the simpler relation.
    """
    alphabet = relation.alphabet
    g = relation.matrix()
    r = alphabet.size
    D = relation.degree
    p = linalg.identity(r)
    by_degree: dict[int, list[int]] = {}
    for i in range(r):
        by_degree.setdefault(alphabet.loop_degrees[i], []).append(i)
    for a, rows in by_degree.items():
        b = D - a
        cols = by_degree.get(b)
        if cols is None or a > b:
            continue
        block = [[g[i][j] for j in cols] for i in rows]
        if a < b:
            if len(rows) != len(cols) or linalg.determinant(block) == 0:
                continue
            inv = linalg.inverse(block)
            for s, j in enumerate(cols):
                for t, k in enumerate(cols):
                    p[j][k] = inv[s][t]
        else:
            if linalg.is_symmetric(block):
                q = linalg.congruence_diagonalize(block)
            elif linalg.is_skew(block) and linalg.determinant(block) != 0:
                q = linalg.symplectic_basis(block)
            else:
                continue
            for s, j in enumerate(rows):
                for t, k in enumerate(rows):
                    p[j][k] = q[s][t]
    return p


def _integer_terms(relation: QuadraticRelation, p: linalg.Matrix) -> dict:
    g = linalg.congruent(relation.matrix(), p)
    r = len(g)
    terms = {(i + 1, j + 1): g[i][j] for i in range(r) for j in range(r) if g[i][j]}
    den = lcm(*(c.denominator for c in terms.values()))
    return {w: int(c * den) for w, c in terms.items()}


@lru_cache(maxsize=512)
def ideal_slice_rank(relation: QuadraticRelation, m: int, guard: int = SLICE_GUARD) -> int:
    """Rank of ``span{w1 f w2}`` in the degree-``m`` word space.

    Independent of :class:`QuotientEngine`: rows are built explicitly and
    reduced by fraction-free integer elimination.
    """
    alphabet = relation.alphabet
    D = relation.degree
    if m < D:
        return 0
    size = count_words(alphabet, m)
    if size > guard:
        raise SliceTooLargeError(
            f"degree {m} word space has {size} words, above the guard of {guard}"
        )
    terms = _integer_terms(relation, _sparsifying_change(relation))
    items = list(terms.items())

    def rows():
        for w1, w2 in words_with_prefix_suffix(alphabet, m - D):
            yield {w1 + w + w2: c for w, c in items}

    return linalg.sparse_integer_rank(rows())


# -- the quotient engine --------------------------------------------------------

class _Cycle(Exception):
    pass


def _accumulate(target: dict, coeff, source: dict) -> None:
    for w, c in source.items():
        v = target.get(w, 0) + coeff * c
        if v:
            target[w] = v
        else:
            del target[w]


class QuotientEngine:
    """Normal forms modulo ``(f)`` in the avoiding-word basis.

    Instances are safe to share between threads; all memo tables are
    filled under one lock.
    """

    def __init__(self, relation: QuadraticRelation, lp: LeadingPair,
                 fuel: int = REWRITE_FUEL, word_memo_limit: int = 2_000_000):
        lead = relation.coefficient(lp.alpha, lp.beta)
        if lead == 0:
            raise ComplementError(
                f"relation has no term on the leading word {lp.word}", degree=relation.degree
            )
        self.relation = relation
        self.lp = lp
        self.alphabet = relation.alphabet
        self.D = relation.degree
        self.fuel = fuel
        self._rest = []
        for w, c in sorted(relation.items(), key=lambda t: self.alphabet.key(t[0])):
            if w != lp.word:
                v = -c / lead
                self._rest.append((w[0], w[1], int(v) if v.denominator == 1 else v))
        self._overhang: dict = {}
        self._solved_levels: set[int] = set()
        self._word_memo: dict = {(): {(): 1}}
        self._word_memo_limit = word_memo_limit
        self._lock = threading.RLock()
        self._depth = 0
        self._active: set = set()
        self.level_solves = 0

    # internals; callers hold the lock
    def _append(self, p: tuple, x: int) -> dict:
        if p and p[-1] == self.lp.alpha and x == self.lp.beta:
            return self._y(p[:-1])
        return {p + (x,): 1}

    def _append_all(self, vec: dict, x: int) -> dict:
        out: dict = {}
        for p, c in vec.items():
            _accumulate(out, c, self._append(p, x))
        return out

    def _y(self, q: tuple) -> dict:
        hit = self._overhang.get(q)
        if hit is not None:
            return hit
        level = self.alphabet.word_degree(q) + self.D
        if level in self._solved_levels:
            raise ComplementError(f"missing overhang symbol in degree {level}", degree=level)
        if q in self._active or self._depth >= self.fuel:
            raise _Cycle()
        outermost = self._depth == 0
        self._active.add(q)
        self._depth += 1
        try:
            value = self._y_expand(q)
        except _Cycle:
            if not outermost:
                raise
            value = None
        finally:
            self._depth -= 1
            self._active.discard(q)
        if value is None:
            self._solve_level(level)
            return self._overhang[q]
        self._overhang[q] = value
        return value

    def _y_expand(self, q: tuple) -> dict:
        out: dict = {}
        for i, j, c in self._rest:
            lower = self._append(q, i)
            for s, e in lower.items():
                _accumulate(out, c * e, self._append(s, j))
        return out

    def _solve_level(self, level: int) -> None:
        """Find every overhang symbol of ``level`` from one sparse system."""
        a, b = self.lp.alpha, self.lp.beta
        qs = avoiding_words(self.alphabet, self.lp, level - self.D)
        equations, rhs = [], []
        saved_depth, saved_active = self._depth, self._active
        self._depth, self._active = 0, set()
        try:
            for q in qs:
                eq = {q: Fraction(1)}
                known: dict = {}
                for i, j, c in self._rest:
                    for s, e in self._append(q, i).items():
                        if s and s[-1] == a and j == b:
                            key = s[:-1]
                            v = eq.get(key, 0) - c * e
                            if v:
                                eq[key] = v
                            else:
                                eq.pop(key, None)
                        else:
                            _accumulate(known, c * e, {s + (j,): 1})
                equations.append(eq)
                rhs.append(known)
        finally:
            self._depth, self._active = saved_depth, saved_active
        try:
            sol = linalg.solve_sparse(equations, rhs, qs)
        except linalg.SingularSystemError as exc:
            raise ComplementError(
                f"avoiding words do not span the quotient in degree {level}: {exc}",
                degree=level,
            ) from None
        for q, vec in sol.items():
            self._overhang[q] = {w: (int(c) if c.denominator == 1 else c) for w, c in vec.items()}
        self._solved_levels.add(level)
        self.level_solves += 1

    def _nf_word(self, w: tuple) -> dict:
        memo = self._word_memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        # walk back to the longest memoized prefix, then forward
        k = len(w) - 1
        while k > 0 and w[:k] not in memo:
            k -= 1
        vec = memo[w[:k]]
        for t in range(k, len(w)):
            vec = self._append_all(vec, w[t])
            if len(memo) < self._word_memo_limit:
                memo[w[: t + 1]] = vec
        return vec

    # public API
    def normal_form_word(self, w: Sequence[int]) -> dict:
        """Sparse coordinates of a single word; do not mutate the result."""
        with self._lock:
            return self._nf_word(tuple(w))

    def coordinates_terms(self, terms) -> dict:
        """Sparse coordinates of ``sum c_w w`` given as ``(w, c)`` pairs."""
        out: dict = {}
        with self._lock:
            for w, c in terms:
                _accumulate(out, c, self._nf_word(tuple(w)))
        return out

    def coordinates(self, x: AlgebraElement) -> dict:
        if x.alphabet != self.alphabet:
            raise UsageError("element and relation use different alphabets")
        out = self.coordinates_terms(x.items())
        return {w: Fraction(c) for w, c in out.items()}

    def ensure_degree(self, m: int) -> None:
        """Compute every overhang symbol up to degree ``m``.

        Raises :class:`ComplementError` if the avoiding words fail to span
        in some degree ``<= m``.
        """
        with self._lock:
            for level in range(self.D, m + 1):
                for q in avoiding_words(self.alphabet, self.lp, level - self.D):
                    self._y(q)

    def __repr__(self) -> str:
        return f"QuotientEngine({self.relation}, lead={self.lp.word})"


_ENGINES: dict = {}
_ENGINES_LOCK = threading.Lock()


def engine_for(relation: QuadraticRelation, lp: LeadingPair) -> QuotientEngine:
    """Shared engine per ``(relation, leading pair)``, created at most once."""
    key = (relation, lp)
    with _ENGINES_LOCK:
        eng = _ENGINES.get(key)
        if eng is None:
            eng = QuotientEngine(relation, lp)
            if len(_ENGINES) > 64:
                _ENGINES.clear()
            _ENGINES[key] = eng
        return eng


def verify_complement_basis(relation: QuadraticRelation, lp: LeadingPair, m: int,
                            guard: int = SLICE_GUARD) -> bool:
    """Do the avoiding words of degree ``m`` form a basis of the quotient?

    Two independent facts are checked: the count matches the oracle's
    dimension, and the avoiding words span (overhang systems solvable in
    every degree up to ``m``).  Spanning plus the right count is a basis.
    """
    if relation.coefficient(lp.alpha, lp.beta) == 0:
        return False
    alphabet = relation.alphabet
    expected = count_words(alphabet, m) - ideal_slice_rank(relation, m, guard)
    if expected != avoiding_counts(alphabet, lp, m)[m]:
        return False
    try:
        engine_for(relation, lp).ensure_degree(m)
    except ComplementError:
        return False
    return True


def quotient_coordinates(x: AlgebraElement, relation: QuadraticRelation,
                         lp: LeadingPair, check: bool = True) -> tuple[Fraction, ...]:
    """Coordinates of homogeneous ``x`` on ``avoiding_words(m)``.

    With ``check`` the complement property is verified for degree ``m``
    first and :class:`ComplementError` raised if it fails.
    """
    if x.is_zero():
        raise DomainError("the zero element has no degree; pass a homogeneous nonzero element")
    m = x.degree()
    if check and not verify_complement_basis(relation, lp, m):
        raise ComplementError(f"avoiding words are not a complement in degree {m}", degree=m)
    sparse = engine_for(relation, lp).coordinates(x)
    return tuple(sparse.get(w, Fraction(0)) for w in avoiding_words(relation.alphabet, lp, m))

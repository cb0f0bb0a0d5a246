"""Lyndon words, standard bracketing, and the standard basis of L(V, R).

A Lyndon word is strictly smaller than each of its proper rotations.  Its
standard factorization ``l = l1 l2`` takes ``l2`` to be the longest proper
Lyndon suffix, and ``b(l) = [b(l1), b(l2)]``.  Expanding ``b(l)`` in the
tensor algebra gives ``l`` plus strictly larger rearrangements of ``l``.

The standard basis keeps a Lyndon word when its bracket stays independent
of the brackets already kept, working modulo the ideal of the (ungraded)
relation.  When the relation's leading word is the smallest word of its
support, rewriting only makes words larger, so for a normal Lyndon word
``l`` the normal form of ``b(l)`` has smallest word ``l`` again.  Those
pivots certify independence without further elimination; the count is
then closed off against the Poincare-Birkhoff-Witt dimension of the
degree, computed from the avoiding-word counts and the lower degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, InconsistencyError, SliceTooLargeError, UsageError
from .normal_forms import (
    SLICE_GUARD,
    LeadingPair,
    avoiding_counts,
    engine_for,
)
from .words import (
    Alphabet,
    BracketTree,
    Leaf,
    Node,
    QuadraticRelation,
    count_words,
    expand_ungraded_terms,
)

COORDINATE_LIMIT = 60_000


def _rotations_smaller(key: tuple) -> bool:
    n = len(key)
    return all(key < key[k:] + key[:k] for k in range(1, n))


def is_lyndon(w: Sequence[int], alphabet: Alphabet | None = None) -> bool:
    """Strictly smallest among its rotations (periodic words fail)."""
    if not w:
        raise DomainError("the empty word is not Lyndon")
    key = alphabet.lex_key(w) if alphabet else tuple(w)
    return _rotations_smaller(key)


@lru_cache(maxsize=64)
def _lyndon_by_degree(alphabet: Alphabet, n: int) -> dict[int, tuple]:
    """Duval's generator over letter ranks, bucketed by loop degree."""
    r = alphabet.size
    degs_by_rank = [alphabet.degree(x) for x in alphabet.order]
    max_len = n // min(alphabet.loop_degrees) if n > 0 else 0
    out: dict[int, list] = {m: [] for m in range(1, n + 1)}
    if max_len == 0:
        return {m: () for m in out}
    w = [-1]
    while w:
        w[-1] += 1
        deg = sum(degs_by_rank[k] for k in w)
        if deg <= n:
            out[deg].append(tuple(alphabet.order[k] for k in w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == r - 1:
            w.pop()
    return {m: tuple(ws) for m, ws in out.items()}


def lyndon_words(alphabet: Alphabet, m: int) -> list[tuple[int, ...]]:
    """Lyndon words of loop degree ``m`` in lexicographic order."""
    if m < 1:
        return []
    return list(_lyndon_by_degree(alphabet, m)[m])


def lyndon_words_upto(alphabet: Alphabet, n: int) -> dict[int, list]:
    table = _lyndon_by_degree(alphabet, n)
    return {m: list(table[m]) for m in range(1, n + 1)}


def _split(key: tuple) -> int:
    """Start of the lexicographically least proper suffix of ``key``."""
    best = 1
    for k in range(2, len(key)):
        if key[k:] < key[best:]:
            best = k
    return best


def standard_factorization(w: Sequence[int], alphabet: Alphabet | None = None):
    """Split a Lyndon word at its longest proper Lyndon suffix.

    For a Lyndon word that suffix is also the lexicographically least
    proper suffix, which is what gets computed.
    """
    w = tuple(w)
    if len(w) < 2:
        raise DomainError("a single letter has no standard factorization")
    if not is_lyndon(w, alphabet):
        raise DomainError(f"{w} is not a Lyndon word")
    k = _split(alphabet.lex_key(w) if alphabet else w)
    return w[:k], w[k:]


@lru_cache(maxsize=250_000)
def _bracket(w: tuple, alphabet: Alphabet | None) -> BracketTree:
    if len(w) == 1:
        return Leaf(w[0])
    k = _split(alphabet.lex_key(w) if alphabet else w)
    return Node(_bracket(w[:k], alphabet), _bracket(w[k:], alphabet))


def bracketing(w: Sequence[int], alphabet: Alphabet | None = None) -> BracketTree:
    """Standard bracketing ``b(l) = [b(l1), b(l2)]``."""
    w = tuple(w)
    if not w:
        raise DomainError("empty word")
    if not is_lyndon(w, alphabet):
        raise DomainError(f"{w} is not a Lyndon word")
    return _bracket(w, alphabet)


def bracket_coefficient(t: BracketTree, w: tuple) -> int:
    """Coefficient of the word ``w`` in the ungraded expansion of ``t``.

    Uses ``[A, B] = AB - BA`` on prefixes, pruning on letter multisets.
    """
    if isinstance(t, Leaf):
        return 1 if w == (t.letter,) else 0
    a, b = t.left, t.right
    la, lb = len(a.letters()), len(b.letters())
    total = 0
    if sorted(w[:la]) == sorted(a.letters()):
        x = bracket_coefficient(a, w[:la])
        if x:
            total += x * bracket_coefficient(b, w[la:])
    if sorted(w[:lb]) == sorted(b.letters()):
        y = bracket_coefficient(b, w[:lb])
        if y:
            total -= y * bracket_coefficient(a, w[lb:])
    return total


@dataclass(frozen=True)
class LyndonBasisEntry:
    """A standard Lyndon word with its bracket and sphere dimension.

    ``certificate`` says how independence was established: ``"coordinates"``
    (explicit normal form) or ``"pivot"`` (leading-word argument).
    """

    word: tuple[int, ...]
    bracket: BracketTree
    loop_degree: int
    certificate: str = "coordinates"

    @property
    def sphere_dim(self) -> int:
        return self.loop_degree + 1


def _has_factor(w, a, b) -> bool:
    return any(w[k] == a and w[k + 1] == b for k in range(len(w) - 1))


def _is_monotone(relation: QuadraticRelation, lp: LeadingPair) -> bool:
    support = [w for w, _ in relation.items()]
    return min(support, key=relation.alphabet.key) == lp.word


def pbw_bound(avoiding: Sequence[int], kept: Sequence[int], m: int) -> int:
    """``a_m`` minus degree ``m`` of ``prod_{k<m} (1 - t^k)^(-kept_k)``.

    With ``kept`` the true Lie dimensions below ``m`` this is the Lie
    dimension in degree ``m``.
    """
    poly = [1] + [0] * m
    for k in range(1, m):
        if kept[k]:
            poly = _power_factor(poly, k, kept[k])
    return avoiding[m] - poly[m]


def _power_factor(poly: list, k: int, e: int) -> list:
    """``poly * (1 - t^k)^(-e)`` via binomial coefficients."""
    n = len(poly) - 1
    factor = [0] * (n + 1)
    c = 1
    for j in range(n // k + 1):
        factor[j * k] = c
        c = c * (e + j) // (j + 1)
    out = [0] * (n + 1)
    for i, x in enumerate(poly):
        if x:
            for j in range(0, n + 1 - i, k):
                out[i + j] += x * factor[j]
    return out


class _Reducer:
    """Greedy independence with pivots on the smallest word."""

    def __init__(self, alphabet: Alphabet):
        self.key = alphabet.key
        self.pivots: dict = {}

    def insert(self, vec: dict) -> bool:
        v = dict(vec)
        key = self.key
        while v:
            w = min(v, key=key)
            p = self.pivots.get(w)
            if p is None:
                c = v[w]
                self.pivots[w] = {u: Fraction(x) / c for u, x in v.items()}
                return True
            c = v[w]
            for u, x in p.items():
                y = v.get(u, 0) - c * x
                if y:
                    v[u] = y
                else:
                    v.pop(u, None)
        return False


def standard_basis_for(relation: QuadraticRelation, lp: LeadingPair, n: int, *,
                       exhaustive: bool = False, order: str = "descending",
                       coordinate_limit: int = COORDINATE_LIMIT,
                       guard: int = SLICE_GUARD) -> list[LyndonBasisEntry]:
    """Standard Lyndon basis of ``L(V, R)`` through loop degree ``n``.

    ``order`` is the processing order of Lyndon words inside a degree;
    ``"ascending"`` is only meaningful with explicit reduction and forces
    ``exhaustive``.  Entries come back sorted by degree, then word.
    """
    if order not in ("descending", "ascending"):
        raise UsageError(f"order must be 'descending' or 'ascending', got {order!r}")
    if order == "ascending":
        exhaustive = True
    alphabet = relation.alphabet
    if n < 1:
        return []
    engine = engine_for(relation, lp)
    monotone = _is_monotone(relation, lp)
    avoid = avoiding_counts(alphabet, lp, n)
    by_degree = lyndon_words_upto(alphabet, n)
    kept_counts = [0] * (n + 1)
    entries: list[LyndonBasisEntry] = []
    a, b = lp.alpha, lp.beta

    def explicit(words, m):
        size = count_words(alphabet, m)
        if size > guard:
            raise SliceTooLargeError(
                f"explicit reduction in degree {m} needs {size} words, above the guard of {guard}"
            )
        seq = words if order == "ascending" else list(reversed(words))
        red = _Reducer(alphabet)
        out = []
        for w in seq:
            t = _bracket(w, alphabet)
            vec = engine.coordinates_terms(expand_ungraded_terms(t).items())
            if red.insert(vec):
                out.append(LyndonBasisEntry(w, t, m, "coordinates"))
        return out

    for m in range(1, n + 1):
        words = by_degree[m]
        if exhaustive:
            found = explicit(words, m)
        else:
            found = []
            fallback = False
            use_coords = count_words(alphabet, m) <= coordinate_limit
            if not use_coords and not monotone:
                fallback = True
            for w in reversed(words):
                if fallback:
                    break
                if _has_factor(w, a, b):
                    continue
                t = _bracket(w, alphabet)
                if use_coords:
                    vec = engine.coordinates_terms(expand_ungraded_terms(t).items())
                    low = min(vec, key=alphabet.key) if vec else None
                    if low != w or vec[w] != 1:
                        fallback = True
                        break
                    found.append(LyndonBasisEntry(w, t, m, "coordinates"))
                else:
                    if bracket_coefficient(t, w) != 1:
                        fallback = True
                        break
                    found.append(LyndonBasisEntry(w, t, m, "pivot"))
            if not fallback:
                bound = pbw_bound(avoid, kept_counts, m)
                if len(found) > bound:
                    raise InconsistencyError(
                        f"{len(found)} independent brackets in degree {m} exceed the "
                        f"dimension {bound} allowed by the avoiding-word count",
                        degree=m,
                    )
                if len(found) < bound:
                    fallback = True
            if fallback:
                found = explicit(words, m)
        kept_counts[m] = len(found)
        entries.extend(found)
    entries.sort(key=lambda e: (e.loop_degree, alphabet.lex_key(e.word)))
    return entries


def standard_basis(presentation, n: int, **options) -> list[LyndonBasisEntry]:
    """Standard basis for a presentation (uses its ungraded relation)."""
    return standard_basis_for(presentation.ungraded, presentation.leading_pair, n, **options)


def counts_by_degree(entries: Sequence[LyndonBasisEntry], n: int) -> list[int]:
    """``[#entries of degree m for m = 1..n]``."""
    counts = [0] * n
    for e in entries:
        if 1 <= e.loop_degree <= n:
            counts[e.loop_degree - 1] += 1
    return counts

"""Graded words, the free associative algebra, and bracket expansion.

Letters are 1-based indices ``1..r``.  A word is a plain tuple of letter
indices; the empty tuple is the unit.  Words are compared deg-lex: loop
degree first, then lexicographically by the alphabet's letter order.  That
single comparison decides leading terms everywhere in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DomainError, UsageError

Word = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """Letters ``u_1..u_r`` with loop degrees and a total order.

    ``order`` lists letter indices from smallest to largest; the default
    is the natural order ``(1, 2, ..., r)``.
    """

    loop_degrees: tuple[int, ...]
    order: tuple[int, ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self):
        degs = tuple(int(x) for x in self.loop_degrees)
        if not degs:
            raise DomainError("an alphabet needs at least one letter")
        if any(x < 1 for x in degs):
            raise DomainError(f"loop degrees must be >= 1, got {list(degs)}")
        r = len(degs)
        order = tuple(self.order) if self.order else tuple(range(1, r + 1))
        if sorted(order) != list(range(1, r + 1)):
            raise DomainError(f"order {list(order)} is not a permutation of 1..{r}")
        names = tuple(self.names) if self.names else tuple(f"u{i}" for i in range(1, r + 1))
        if len(names) != r:
            raise UsageError("one name per letter")
        object.__setattr__(self, "loop_degrees", degs)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "names", names)

    @property
    def size(self) -> int:
        return len(self.loop_degrees)

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(range(1, self.size + 1))

    @cached_property
    def rank(self) -> dict[int, int]:
        """Position of each letter in the order (0 = smallest)."""
        return {letter: k for k, letter in enumerate(self.order)}

    def degree(self, letter: int) -> int:
        return self.loop_degrees[letter - 1]

    def word_degree(self, w: Sequence[int]) -> int:
        degs = self.loop_degrees
        return sum(degs[x - 1] for x in w)

    def key(self, w: Sequence[int]) -> tuple:
        """Sort key realising the deg-lex order."""
        rank = self.rank
        return (self.word_degree(w), tuple(rank[x] for x in w))

    def lex_key(self, w: Sequence[int]) -> tuple:
        rank = self.rank
        return tuple(rank[x] for x in w)

    def with_order(self, order: Sequence[int]) -> "Alphabet":
        return Alphabet(self.loop_degrees, tuple(order), self.names)

    def render(self, w: Sequence[int]) -> str:
        if not w:
            return "1"
        return "".join(self.names[x - 1] for x in w)


def enumerate_words(alphabet: Alphabet, m: int) -> list[Word]:
    """All words of loop degree exactly ``m`` in deg-lex order."""
    if m < 0:
        return []
    by_order = [(x, alphabet.degree(x)) for x in alphabet.order]
    out: list[Word] = []

    def extend(prefix: list, remaining: int):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for x, dx in by_order:
            if dx <= remaining:
                prefix.append(x)
                extend(prefix, remaining - dx)
                prefix.pop()

    # depth-first over letters in increasing order is already lexicographic
    extend([], m)
    return out


def count_words(alphabet: Alphabet, m: int) -> int:
    """Number of words of loop degree ``m`` (transfer recurrence)."""
    if m < 0:
        return 0
    counts = [0] * (m + 1)
    counts[0] = 1
    for k in range(1, m + 1):
        counts[k] = sum(counts[k - d] for d in alphabet.loop_degrees if d <= k)
    return counts[m]


def _clean(terms: Mapping) -> dict:
    return {w: Fraction(c) for w, c in terms.items() if c != 0}


class AlgebraElement:
    """Finite linear combination of words with rational coefficients.

    Zero coefficients are never stored, so two elements are equal exactly
    when their term maps are equal.
    """

    __slots__ = ("alphabet", "_terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Mapping | None = None):
        self.alphabet = alphabet
        self._terms = _clean(terms or {})
        self._hash = None

    @classmethod
    def word(cls, alphabet: Alphabet, w: Iterable[int], coeff=1) -> "AlgebraElement":
        w = tuple(w)
        for x in w:
            if not 1 <= x <= alphabet.size:
                raise UsageError(f"letter {x} outside 1..{alphabet.size}")
        return cls(alphabet, {w: coeff})

    @classmethod
    def letter(cls, alphabet: Alphabet, x: int) -> "AlgebraElement":
        return cls.word(alphabet, (x,))

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "AlgebraElement":
        return cls(alphabet)

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, w: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def support(self) -> list[Word]:
        return sorted(self._terms, key=self.alphabet.key)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {self.alphabet.word_degree(w) for w in self._terms}

    def degree(self) -> int:
        """Loop degree of a homogeneous nonzero element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise DomainError(f"element is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def leading_word(self, smallest: bool = False) -> Word:
        if not self._terms:
            raise DomainError("the zero element has no leading word")
        pick = min if smallest else max
        return pick(self._terms, key=self.alphabet.key)

    def _same(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise UsageError(f"expected an AlgebraElement, got {type(other).__name__}")
        if other.alphabet != self.alphabet:
            raise UsageError("elements live over different alphabets")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return AlgebraElement(self.alphabet, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def scale(self, c) -> "AlgebraElement":
        c = Fraction(c)
        return AlgebraElement(self.alphabet, {w: v * c for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alphabet, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w in self.support():
            c = self._terms[w]
            mono = self.alphabet.render(w)
            if c == 1:
                parts.append(f"+ {mono}")
            elif c == -1:
                parts.append(f"- {mono}")
            elif c < 0:
                parts.append(f"- {-c}*{mono}")
            else:
                parts.append(f"+ {c}*{mono}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Concatenation product extended bilinearly."""
    a._same(b)
    out: dict = {}
    for u, c in a.items():
        for v, e in b.items():
            w = u + v
            out[w] = out.get(w, 0) + c * e
    return AlgebraElement(a.alphabet, out)


# -- bracket trees -----------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    letter: int

    def letters(self) -> tuple[int, ...]:
        return (self.letter,)

    def __str__(self) -> str:
        return f"u{self.letter}"


@dataclass(frozen=True)
class Node:
    left: "BracketTree"
    right: "BracketTree"
    _letters: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_letters", self.left.letters() + self.right.letters())

    def letters(self) -> tuple[int, ...]:
        return self._letters

    def __str__(self) -> str:
        return f"[{self.left},{self.right}]"


BracketTree = Union[Leaf, Node]


def tree_degree(t: BracketTree, alphabet: Alphabet) -> int:
    return alphabet.word_degree(t.letters())


def render_tree(t: BracketTree, alphabet: Alphabet) -> str:
    if isinstance(t, Leaf):
        return alphabet.names[t.letter - 1]
    return f"[{render_tree(t.left, alphabet)},{render_tree(t.right, alphabet)}]"


def tree_to_json(t: BracketTree):
    """Leaves become ints, nodes two-element lists."""
    if isinstance(t, Leaf):
        return t.letter
    return [tree_to_json(t.left), tree_to_json(t.right)]


def tree_from_json(obj) -> BracketTree:
    if isinstance(obj, int):
        return Leaf(obj)
    left, right = obj
    return Node(tree_from_json(left), tree_from_json(right))


def _expand_raw(t: BracketTree, sign_of) -> dict:
    if isinstance(t, Leaf):
        return {(t.letter,): 1}
    a = _expand_raw(t.left, sign_of)
    b = _expand_raw(t.right, sign_of)
    s = sign_of(t.left, t.right)
    out: dict = {}
    for u, c in a.items():
        for v, e in b.items():
            ce = c * e
            out[u + v] = out.get(u + v, 0) + ce
            out[v + u] = out.get(v + u, 0) - s * ce
    return {w: c for w, c in out.items() if c}


def expand_ungraded_terms(t: BracketTree) -> dict:
    """Integer term map of the ungraded expansion (fast path)."""
    return _expand_raw(t, lambda a, b: 1)


def expand_bracket_ungraded(t: BracketTree, alphabet: Alphabet) -> AlgebraElement:
    """Expand with ``[a, b] = ab - ba``."""
    return AlgebraElement(alphabet, expand_ungraded_terms(t))


def expand_bracket_graded(t: BracketTree, alphabet: Alphabet) -> AlgebraElement:
    """Expand with ``[a, b] = ab - (-1)^(|a||b|) ba`` in loop degrees."""

    def sign(a, b):
        return -1 if (tree_degree(a, alphabet) * tree_degree(b, alphabet)) % 2 else 1

    return AlgebraElement(alphabet, _expand_raw(t, sign))


# -- quadratic relations ------------------------------------------------------

@dataclass(frozen=True)
class QuadraticRelation:
    """A single homogeneous relation supported on length-2 words."""

    element: AlgebraElement

    def __post_init__(self):
        el = self.element
        if el.is_zero():
            raise DomainError("the relation is zero")
        if any(len(w) != 2 for w, _ in el.items()):
            raise DomainError("a quadratic relation is supported on length-2 words")
        if not el.is_homogeneous():
            raise DomainError("the relation is not homogeneous")

    @classmethod
    def from_terms(cls, alphabet: Alphabet, terms: Mapping) -> "QuadraticRelation":
        return cls(AlgebraElement(alphabet, terms))

    @property
    def alphabet(self) -> Alphabet:
        return self.element.alphabet

    @property
    def degree(self) -> int:
        return self.element.degree()

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.element.coefficient((i, j))

    def items(self):
        return self.element.items()

    def matrix(self) -> list[list[Fraction]]:
        r = self.alphabet.size
        return [[self.coefficient(i, j) for j in range(1, r + 1)] for i in range(1, r + 1)]

    def scaled(self, c) -> "QuadraticRelation":
        return QuadraticRelation(self.element.scale(c))

    def __str__(self) -> str:
        return str(self.element)


def words_with_prefix_suffix(alphabet: Alphabet, total: int) -> Iterator[tuple[Word, Word]]:
    """Pairs ``(w1, w2)`` with ``deg(w1) + deg(w2) = total``."""
    for k in range(total + 1):
        lefts = enumerate_words(alphabet, k)
        rights = enumerate_words(alphabet, total - k)
        yield from itertools.product(lefts, rights)

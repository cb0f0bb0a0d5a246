"""Cohomology data of a highly connected manifold and its loop presentation.

A :class:`ManifoldDescriptor` records an ``(n-1)``-connected closed
``d``-manifold with ``d <= 3n - 2`` through the degrees ``|x_i|`` of a
basis of the indecomposables and the pairing ``c_ij = <x_i x_j, [M]>``.
The loop homology is the tensor algebra on ``u_i`` (``|u_i| = |x_i| - 1``)
modulo

    l(M) = sum_{i,j} (-1)^(|u_i| + 1) c_ji u_i u_j,

and the ungraded companion ``l^u(M) = sum_{i<j} l_ij (u_i u_j - u_j u_i)``
uses the same coefficients ``l_ij``.

Normalization changes the basis degree by degree so the relation takes a
canonical shape: blocks pairing two different degrees become the
identity, a symmetric middle block is diagonalized, a skew middle block
gets a Darboux basis.  Congruent inputs therefore end up with the same
ungraded relation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import isqrt
from typing import Sequence

from . import linalg
from .errors import DomainError, InconsistencyError, RealizabilityError, ValidationError
from .normal_forms import LeadingPair
from .words import Alphabet, QuadraticRelation


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class ManifoldDescriptor:
    name: str
    n: int
    d: int
    generator_degrees: tuple[int, ...]
    pairing: tuple[tuple[Fraction, ...], ...]
    torsion_primes: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generator_degrees", tuple(int(x) for x in self.generator_degrees))
        object.__setattr__(
            self, "pairing", tuple(tuple(Fraction(c) for c in row) for row in self.pairing)
        )
        object.__setattr__(self, "torsion_primes", tuple(int(p) for p in self.torsion_primes))

    @property
    def r(self) -> int:
        return len(self.generator_degrees)

    @property
    def total_rank(self) -> int:
        return self.r + 2

    def pairing_matrix(self) -> list[list[Fraction]]:
        return [list(row) for row in self.pairing]

    def with_pairing(self, pairing, name: str | None = None) -> "ManifoldDescriptor":
        return replace(self, pairing=tuple(tuple(row) for row in pairing),
                       name=self.name if name is None else name)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    indices: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


def check(desc: ManifoldDescriptor) -> list[Violation]:
    """Every violated hypothesis, not just the first."""
    out: list[Violation] = []
    n, d, degs = desc.n, desc.d, desc.generator_degrees
    r = len(degs)
    if n < 2:
        out.append(Violation("hypothesis", f"n = {n} but n >= 2 is required"))
    if d > 3 * n - 2:
        out.append(Violation("hypothesis", f"d = {d} exceeds 3n - 2 = {3 * n - 2}"))
    if d < n:
        out.append(Violation("hypothesis", f"d = {d} is below the connectivity bound n = {n}"))
    c = desc.pairing
    if len(c) != r or any(len(row) != r for row in c):
        out.append(Violation("shape", f"pairing must be {r}x{r} to match {r} generator degrees"))
        return out
    for i, x in enumerate(degs, start=1):
        if not n <= x <= d - n:
            out.append(Violation("degree", f"|x_{i}| = {x} is outside [{n}, {d - n}]", (i,)))
    for i in range(r):
        for j in range(r):
            if c[i][j] != 0 and degs[i] + degs[j] != d:
                out.append(Violation(
                    "support",
                    f"c_{i + 1}{j + 1} = {c[i][j]} but |x_{i + 1}| + |x_{j + 1}| = {degs[i] + degs[j]} != {d}",
                    (i + 1, j + 1)))
    for i in range(r):
        for j in range(i, r):
            sign = -1 if (degs[i] * degs[j]) % 2 else 1
            if c[i][j] != sign * c[j][i]:
                out.append(Violation(
                    "symmetry",
                    f"c_{i + 1}{j + 1} = {c[i][j]} must equal {'-' if sign < 0 else ''}c_{j + 1}{i + 1} = {c[j][i]}",
                    (i + 1, j + 1)))
    by_degree: dict[int, list[int]] = {}
    for i, x in enumerate(degs):
        by_degree.setdefault(x, []).append(i)
    for k in sorted(set(by_degree) | {d - x for x in by_degree}):
        dual = d - k
        if k > dual:
            continue
        rows, cols = by_degree.get(k, []), by_degree.get(dual, [])
        if len(rows) != len(cols):
            out.append(Violation(
                "duality",
                f"{len(rows)} generator(s) in degree {k} but {len(cols)} in degree {dual}",
                tuple(i + 1 for i in rows + cols)))
            continue
        block = [[c[i][j] for j in cols] for i in rows]
        if linalg.determinant(block) == 0:
            out.append(Violation(
                "duality",
                f"pairing between degrees {k} and {dual} is degenerate",
                tuple(i + 1 for i in rows)))
    for p in desc.torsion_primes:
        if not _is_prime(p):
            out.append(Violation("torsion", f"torsion prime {p} is not prime"))
    return out


@dataclass(frozen=True)
class ValidatedManifold:
    descriptor: ManifoldDescriptor

    @property
    def r(self) -> int:
        return self.descriptor.r

    @property
    def total_rank(self) -> int:
        return self.r + 2

    @property
    def route(self) -> str:
        return "main" if self.r >= 3 else "low-rank"

    @property
    def d(self) -> int:
        return self.descriptor.d

    @property
    def n(self) -> int:
        return self.descriptor.n


def validate(desc: ManifoldDescriptor) -> ValidatedManifold:
    problems = check(desc)
    if problems:
        raise ValidationError(problems)
    return ValidatedManifold(desc)


def hyperbolicity(v: ValidatedManifold) -> str:
    return "hyperbolic" if v.r > 2 else "elliptic"


def loop_alphabet(desc: ManifoldDescriptor, order: Sequence[int] | None = None) -> Alphabet:
    return Alphabet(tuple(x - 1 for x in desc.generator_degrees), tuple(order or ()))


def graded_coefficients(desc: ManifoldDescriptor) -> dict:
    """``l_ij = (-1)^(|u_i| + 1) c_ji`` for every nonzero pair."""
    degs = desc.generator_degrees
    c = desc.pairing
    r = len(degs)
    out = {}
    for i in range(r):
        sign = 1 if (degs[i] - 1) % 2 else -1  # (-1)^(|u_i| + 1) with |u_i| = |x_i| - 1
        for j in range(r):
            if c[j][i]:
                out[(i + 1, j + 1)] = sign * c[j][i]
    return out


def _set_block(a: list, idx: Sequence[int], block: list) -> None:
    for s, i in enumerate(idx):
        for t, j in enumerate(idx):
            a[i][j] = block[s][t]


def normalize_basis(v: ValidatedManifold, order: Sequence[int] | None = None):
    """Degree-preserving basis change to the canonical pairing.

    Returns ``(normalized ValidatedManifold, A, LeadingPair)`` where the new
    pairing is ``A^T C A``.  The leading pair is the deg-lex smallest
    off-diagonal word of the relation under the letter order, and the new
    basis satisfies ``c_{beta alpha} = 1``.
    """
    desc = v.descriptor
    r = desc.r
    if r < 2:
        raise DomainError(f"normalization needs r >= 2, got r = {r}")
    d = desc.d
    degs = desc.generator_degrees
    alphabet = loop_alphabet(desc, order)
    c = desc.pairing_matrix()
    a = linalg.identity(r)
    by_degree: dict[int, list[int]] = {}
    for i, x in enumerate(degs):
        by_degree.setdefault(x, []).append(i)
    for k, rows in by_degree.items():
        dual = d - k
        if k < dual:
            cols = by_degree[dual]
            block = [[c[i][j] for j in cols] for i in rows]
            _set_block(a, cols, linalg.inverse(block))
        elif k == dual:
            block = [[c[i][j] for j in rows] for i in rows]
            if k % 2 == 0:
                _set_block(a, rows, linalg.congruence_diagonalize(block))
            else:
                _set_block(a, rows, linalg.symplectic_basis(block))
    new = linalg.congruent(c, a)
    if all(new[i][j] == 0 for i in range(r) for j in range(r) if i != j):
        # only a diagonal middle block is left: shear x_beta <- x_alpha + x_beta
        middle = [x for x in alphabet.order if degs[x - 1] * 2 == d]
        alpha, beta = middle[0] - 1, middle[1] - 1
        for row in a:
            row[beta] += row[alpha]
        new = linalg.congruent(c, a)
    off = [(i + 1, j + 1) for i in range(r) for j in range(r) if i != j and new[j][i] != 0]
    lp = LeadingPair(*min(off, key=alphabet.key))
    al, be = lp.alpha - 1, lp.beta - 1
    scale = 1 / new[be][al]
    for row in a:
        row[al] *= scale
    new = linalg.congruent(c, a)
    if new[be][al] != 1:
        raise InconsistencyError("normalization failed to make c_{beta alpha} = 1")
    out = desc.with_pairing(new)
    return ValidatedManifold(out), a, lp


@dataclass(frozen=True)
class QuadraticPresentation:
    """Generators, both relations, the leading pair and the basis change."""

    alphabet: Alphabet
    graded: QuadraticRelation
    ungraded: QuadraticRelation
    leading_pair: LeadingPair
    change_matrix: tuple[tuple[Fraction, ...], ...]
    descriptor: ManifoldDescriptor = field(compare=False)
    normalized: ManifoldDescriptor = field(compare=False)

    @property
    def relation_degree(self) -> int:
        return self.graded.degree

    @property
    def loop_degrees(self) -> tuple[int, ...]:
        return self.alphabet.loop_degrees


def build_relation(v: ValidatedManifold, lp: LeadingPair, change_matrix=None,
                   source: ManifoldDescriptor | None = None,
                   order: Sequence[int] | None = None) -> QuadraticPresentation:
    """Graded and ungraded relations of a normalized descriptor.

    Both are rescaled so that the coefficient of the leading word is 1.
    """
    desc = v.descriptor
    alphabet = loop_alphabet(desc, order)
    coeffs = graded_coefficients(desc)
    lead = coeffs.get(lp.word, 0)
    if lead == 0:
        raise InconsistencyError(f"relation has no term on the leading word {lp.word}")
    graded = QuadraticRelation.from_terms(alphabet, {w: c / lead for w, c in coeffs.items()})
    un: dict = {}
    for (i, j), c in coeffs.items():
        if i < j:
            un[(i, j)] = un.get((i, j), 0) + c
            un[(j, i)] = un.get((j, i), 0) - c
    ulead = un.get(lp.word, 0)
    if ulead == 0:
        raise InconsistencyError(f"ungraded relation has no term on {lp.word}")
    ungraded = QuadraticRelation.from_terms(alphabet, {w: c / ulead for w, c in un.items()})
    if change_matrix is None:
        change_matrix = linalg.identity(desc.r)
    return QuadraticPresentation(
        alphabet=alphabet,
        graded=graded,
        ungraded=ungraded,
        leading_pair=lp,
        change_matrix=tuple(tuple(row) for row in change_matrix),
        descriptor=source or desc,
        normalized=desc,
    )


def present(desc: ManifoldDescriptor, order: Sequence[int] | None = None) -> QuadraticPresentation:
    """Validate, normalize and build the presentation in one go."""
    v = validate(desc)
    nv, a, lp = normalize_basis(v, order)
    return build_relation(nv, lp, a, source=desc, order=order)


# -- low rank -------------------------------------------------------------------

@dataclass(frozen=True)
class LowRankType:
    kind: str  # sphere | james | connected-sum-james | product
    dims: tuple[int, ...]
    note: str = ""

    @property
    def label(self) -> str:
        if self.kind == "sphere":
            return f"S^{self.dims[0]}"
        if self.kind == "james":
            return f"J_2 S^{self.dims[0]}"
        if self.kind == "connected-sum-james":
            return f"#^2 J_2({self.dims[0]})"
        return f"S^{self.dims[0]} x S^{self.dims[1]}"

    def __str__(self) -> str:
        return self.label


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    p, s = q.numerator, q.denominator
    return isqrt(p) ** 2 == p and isqrt(s) ** 2 == s


def classify_low_rank(v) -> LowRankType:
    """Rational type of a manifold with ``H^*`` of total rank at most 4.

    Accepts a raw descriptor too; the realizability of a rank-3 ring is
    checked before the general validation so the reason for refusal is
    the specific one.
    """
    desc = v.descriptor if isinstance(v, ValidatedManifold) else v
    r, d = desc.r, desc.d
    if r > 2:
        raise DomainError(f"total rank {r + 2} > 4; use the hyperbolic pipeline")
    if r == 1:
        if d % 2:
            raise RealizabilityError(f"rank 3 needs d even, got d = {d}")
        if (d // 2) % 2:
            raise RealizabilityError(
                f"rank 3 needs x^2 != 0 in degree d/2 = {d // 2}, impossible for an odd class"
            )
    validate(desc)
    if r == 0:
        return LowRankType("sphere", (d,))
    degs = desc.generator_degrees
    if r == 1:
        return LowRankType("james", (d // 2,))
    k = min(degs)
    if k != d - k:
        return LowRankType("product", (k, d - k))
    if k % 2:
        return LowRankType("product", (k, k), "skew middle form; x^2 = y^2 = 0 in a symplectic basis")
    det = linalg.determinant(desc.pairing_matrix())
    if _is_rational_square(-det):
        return LowRankType("product", (k, k), "isotropic middle form; hyperbolic over Q")
    note = ""
    if not _is_rational_square(det):
        note = (f"anisotropic middle form with determinant {det}, not a square; "
                "over Q the ring is Q[x,y]/(xy, x^2 - a y^2) with a not a square")
    return LowRankType("connected-sum-james", (k,), note)


# -- congruence transforms --------------------------------------------------------

def congruence_transform(desc: ManifoldDescriptor, a, name: str | None = None) -> ManifoldDescriptor:
    """Descriptor with pairing ``A^T C A``; ``A`` must preserve degrees."""
    degs = desc.generator_degrees
    r = desc.r
    for i in range(r):
        for j in range(r):
            if a[i][j] != 0 and degs[i] != degs[j]:
                raise DomainError("basis change mixes generators of different degrees")
    if linalg.determinant(linalg.to_matrix(a)) == 0:
        raise DomainError("basis change is singular")
    return desc.with_pairing(linalg.congruent(desc.pairing_matrix(), linalg.to_matrix(a)), name)


def random_degree_preserving(desc: ManifoldDescriptor, rng: random.Random, spread: int = 3):
    """Random invertible integer matrix, block diagonal by degree."""
    r = desc.r
    degs = desc.generator_degrees
    while True:
        a = [[Fraction(0)] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                if degs[i] == degs[j]:
                    a[i][j] = Fraction(rng.randint(-spread, spread))
        if linalg.determinant(a) != 0:
            return a

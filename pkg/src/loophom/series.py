"""Truncated power series over the rationals and Witt/Moebius inversion.

Every coefficient is a :class:`fractions.Fraction`; nothing here touches
floating point.  A :class:`Series` of order ``N`` stores exactly ``N + 1``
coefficients and all operations truncate at ``N``.

The graded Lie dimensions of a quadratic algebra are recovered from the
denominator ``q`` of its Hilbert series by taking ``eta = log q`` and
inverting

    L_m = - sum_{e | m} mu(e) * eta_{m/e} / e.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, InconsistencyError, NonUnitError, UsageError

DEFAULT_ORDER = 12


@dataclass(frozen=True)
class Series:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise UsageError("a series needs at least the constant coefficient")
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )

    @classmethod
    def from_coefficients(cls, coefficients: Iterable, order: int) -> "Series":
        """Pad with zeros or truncate so the result has order ``order``."""
        if order < 0:
            raise UsageError(f"truncation order must be >= 0, got {order}")
        coeffs = [Fraction(c) for c in coefficients][: order + 1]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def from_terms(cls, terms: dict[int, object], order: int) -> "Series":
        coeffs = [Fraction(0)] * (order + 1)
        for k, c in terms.items():
            if k < 0:
                raise UsageError(f"negative exponent {k}")
            if k <= order:
                coeffs[k] += Fraction(c)
        return cls(tuple(coeffs))

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.from_terms({0: 1}, order)

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls.from_terms({}, order)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def _check(self, other: "Series") -> None:
        if not isinstance(other, Series):
            raise UsageError(f"expected a Series, got {type(other).__name__}")
        if other.order != self.order:
            raise UsageError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        return Series(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "Series") -> "Series":
        self._check(other)
        return Series(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "Series":
        return Series(tuple(-a for a in self))

    def __mul__(self, other):
        if isinstance(other, Series):
            return series_mul(self, other)
        return Series(tuple(a * Fraction(other) for a in self))

    __rmul__ = __mul__

    def truncate(self, order: int) -> "Series":
        return Series.from_coefficients(self.coefficients, order)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k and c == 1:
                terms.append(mono)
            elif k and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(t^{self.order + 1})"


def series_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at the common order."""
    a._check(b)
    n = a.order
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(a.coefficients):
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            bj = b.coefficients[j]
            if bj:
                out[i + j] += ai * bj
    return Series(tuple(out))


def _require_unit(a: Series) -> None:
    if a[0] != 1:
        raise NonUnitError(f"constant coefficient must be 1, got {a[0]}")


def series_inverse(a: Series) -> Series:
    """Multiplicative inverse of a series with constant term 1.

    Uses ``b_m = -sum_{k=1}^{m} a_k b_{m-k}``.
    """
    _require_unit(a)
    n = a.order
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(1, m + 1):
            if a[k]:
                acc += a[k] * b[m - k]
        b[m] = -acc
    return Series(tuple(b))


def series_log(a: Series) -> Series:
    """Logarithm of a series with constant term 1.

    Solves ``m b_m = m a_m - sum_{k=1}^{m-1} k b_k a_{m-k}``, which is the
    coefficient form of ``b' a = a'``.
    """
    _require_unit(a)
    n = a.order
    b = [Fraction(0)] * (n + 1)
    for m in range(1, n + 1):
        acc = m * a[m]
        for k in range(1, m):
            if b[k] and a[m - k]:
                acc -= k * b[k] * a[m - k]
        b[m] = acc / m
    return Series(tuple(b))


def moebius(m: int) -> int:
    if m <= 0:
        raise DomainError(f"moebius is defined for m >= 1, got {m}")
    sign = 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            sign = -sign
        p += 1
    if m > 1:
        sign = -sign
    return sign


def divisors(m: int) -> list[int]:
    return [e for e in range(1, m + 1) if m % e == 0]


def lie_dims_from_denominator(q: Series, bound: int | None = None) -> list[int]:
    """Graded Lie dimensions ``[L_1, ..., L_N]`` from a Hilbert denominator.

    ``q`` is the loop-degree denominator ``1 - sum_i t^|u_i| + t^(d-2)``.
    Each ``L_m`` must come out a non-negative integer; anything else means
    the input (or its indexing) is wrong, and :class:`InconsistencyError`
    is raised instead of rounding.
    """
    n = q.order if bound is None else bound
    if n > q.order:
        raise UsageError(f"bound {n} exceeds the series order {q.order}")
    eta = series_log(q)
    dims = []
    for m in range(1, n + 1):
        value = -sum(
            (moebius(e) * eta[m // e] / e for e in divisors(m)), Fraction(0)
        )
        if value.denominator != 1 or value < 0:
            raise InconsistencyError(
                f"Lie dimension in degree {m} is {value}, not a non-negative integer",
                degree=m,
            )
        dims.append(int(value))
    return dims


def witt_product(dims: Sequence[int], order: int) -> Series:
    """``prod_m (1 - t^m)^(-L_m)`` truncated at ``order``.

    ``dims[m - 1]`` is ``L_m``; this is the Hilbert series of the symmetric
    (PBW) algebra on a graded space with those dimensions.
    """
    result = Series.one(order)
    for m, lm in enumerate(dims, start=1):
        if m > order or lm == 0:
            continue
        # (1 - t^m)^(-L) = sum_j C(L + j - 1, j) t^(jm)
        terms = {}
        c = 1
        for j in range(order // m + 1):
            terms[j * m] = c
            c = c * (lm + j) // (j + 1)
        result = series_mul(result, Series.from_terms(terms, order))
    return result


def loop_denominator(loop_degrees: Sequence[int], relation_degree: int,
                     order: int = DEFAULT_ORDER) -> Series:
    """``1 - sum_i t^|u_i| + t^D`` in loop-degree grading."""
    terms: dict[int, int] = {0: 1}
    for deg in loop_degrees:
        if deg < 1:
            raise DomainError(f"loop degrees must be >= 1, got {deg}")
        terms[deg] = terms.get(deg, 0) - 1
    terms[relation_degree] = terms.get(relation_degree, 0) + 1
    return Series.from_terms(terms, order)

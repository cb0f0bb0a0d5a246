"""Built-in descriptors and a generator of random valid ones."""

from __future__ import annotations

import random
from fractions import Fraction

from . import linalg
from .manifold import ManifoldDescriptor


def _matrix(r, entries):
    c = [[0] * r for _ in range(r)]
    for (i, j), v in entries.items():
        c[i - 1][j - 1] = v
    return tuple(tuple(row) for row in c)


X3 = ManifoldDescriptor("X3", 2, 4, (2, 2, 2), _matrix(3, {(1, 1): 1, (2, 2): 1, (3, 3): 1}))

Y2 = ManifoldDescriptor(
    "Y2", 3, 7, (3, 3, 4, 4),
    _matrix(4, {(1, 3): 1, (3, 1): 1, (2, 4): 1, (4, 2): 1}),
)

# two hyperbolic planes in the middle degree of a 4-manifold
H4 = ManifoldDescriptor(
    "H4", 2, 4, (2, 2, 2, 2),
    _matrix(4, {(1, 2): 1, (2, 1): 1, (3, 4): 1, (4, 3): 1}),
)

S4 = ManifoldDescriptor("S4", 2, 4, (), ())
CP2 = ManifoldDescriptor("CP2", 2, 4, (2,), ((1,),))
S3xS4 = ManifoldDescriptor("S3xS4", 3, 7, (3, 4), _matrix(2, {(1, 2): 1, (2, 1): 1}))
S2xS2 = ManifoldDescriptor("S2xS2", 2, 4, (2, 2), _matrix(2, {(1, 2): 1, (2, 1): 1}))
CP2_SHARP_CP2 = ManifoldDescriptor("CP2#CP2", 2, 4, (2, 2), _matrix(2, {(1, 1): 1, (2, 2): 1}))
S3xS3 = ManifoldDescriptor("S3xS3", 3, 6, (3, 3), _matrix(2, {(1, 2): 1, (2, 1): -1}))


def builtin_descriptors() -> dict[str, ManifoldDescriptor]:
    return {d.name: d for d in (X3, Y2, H4, S4, CP2, S3xS4, S2xS2, CP2_SHARP_CP2, S3xS3)}


def _feasible_shapes(max_degree: int):
    """``(n, d)`` with ``2n <= d <= 3n - 2`` and every degree ``<= max_degree``."""
    out = []
    for n in range(2, max_degree + 1):
        for d in range(2 * n, 3 * n - 1):
            if d - n <= max_degree:
                out.append((n, d))
    return out


def _random_invertible(rng: random.Random, k: int, entries) -> list:
    while True:
        m = [[Fraction(rng.choice(entries)) for _ in range(k)] for _ in range(k)]
        if linalg.determinant(m) != 0:
            return m


def _random_symmetric(rng, k, entries):
    while True:
        m = [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                m[i][j] = m[j][i] = Fraction(rng.choice(entries))
        if linalg.determinant(m) != 0:
            return m


def _random_skew(rng, k, entries):
    while True:
        m = [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                v = Fraction(rng.choice(entries))
                m[i][j], m[j][i] = v, -v
        if linalg.determinant(m) != 0:
            return m


def random_descriptor(rng: random.Random, min_r: int = 2, max_r: int = 4,
                      max_degree: int = 6, name: str | None = None) -> ManifoldDescriptor:
    """A random descriptor satisfying every hypothesis.

    Generators come in dual pairs ``(k, d - k)`` plus a middle block when
    ``d`` is even; the middle block is symmetric or skew according to the
    parity of ``d/2``.  Entries are small integers and halves, and the
    generator order is shuffled.
    """
    entries = [-2, -1, 1, 2, 3, Fraction(1, 2), Fraction(-3, 2), 0]
    shapes = _feasible_shapes(max_degree)
    while True:
        n, d = rng.choice(shapes)
        r = rng.randint(min_r, max_r)
        degrees: list[int] = []
        blocks = []
        remaining = r
        s = d // 2 if d % 2 == 0 else None
        while remaining > 0:
            options = []
            if remaining >= 2:
                options += [k for k in range(n, d - n + 1) if k < d - k]
            if s is not None:
                options.append(s)
            if not options:
                break
            k = rng.choice(options)
            if k == s:
                size = 1 if s % 2 == 0 else 2
                if size > remaining:
                    break
                if s % 2 == 0 and remaining >= 2 and rng.random() < 0.5:
                    size = 2
                blocks.append(("mid", s, size))
                degrees += [s] * size
                remaining -= size
            else:
                blocks.append(("dual", k, 1))
                degrees += [k, d - k]
                remaining -= 2
        if remaining != 0:
            continue
        # merge blocks of the same degree so each degree has one pairing block
        count: dict[int, int] = {}
        for kind, k, size in blocks:
            count[k] = count.get(k, 0) + size
        layout = []
        for k in sorted(count):
            layout.append(k)
        gens: list[int] = []
        for k in layout:
            if k == s:
                gens += [k] * count[k]
            else:
                gens += [k] * count[k] + [d - k] * count[k]
        size = len(gens)
        c = [[Fraction(0)] * size for _ in range(size)]
        pos = 0
        for k in layout:
            m = count[k]
            if k == s:
                block = (_random_symmetric if s % 2 == 0 else _random_skew)(rng, m, entries)
                for i in range(m):
                    for j in range(m):
                        c[pos + i][pos + j] = block[i][j]
                pos += m
            else:
                b = _random_invertible(rng, m, entries)
                sign = -1 if (k * (d - k)) % 2 else 1
                for i in range(m):
                    for j in range(m):
                        c[pos + i][pos + m + j] = b[i][j]
                        c[pos + m + j][pos + i] = sign * b[i][j]
                pos += 2 * m
        perm = list(range(size))
        rng.shuffle(perm)
        degs = tuple(gens[p] for p in perm)
        pairing = tuple(tuple(c[p][q] for q in perm) for p in perm)
        label = name or f"random-n{n}-d{d}-r{size}"
        return ManifoldDescriptor(label, n, d, degs, pairing)


def random_corpus(seed: int = 20261019, count: int = 20, **kwargs) -> list[ManifoldDescriptor]:
    rng = random.Random(seed)
    return [random_descriptor(rng, name=f"random-{k:02d}", **kwargs) for k in range(count)]


def acceptance_corpus(seed: int = 20261019) -> list[ManifoldDescriptor]:
    """X3, Y2, the hyperbolic example and 20 random descriptors."""
    return [X3, Y2, H4] + random_corpus(seed, 20)

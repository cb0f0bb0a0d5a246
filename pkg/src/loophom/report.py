"""Headline outputs: loop homology, sphere decomposition, ranks, growth.

Every number that appears in a report is produced by two routes and the
routes are compared before anything is returned:

* Hilbert dimensions: avoiding-word counts, coefficients of ``1/q``, and
  word count minus ideal-slice rank (the last only up to ``oracle_limit``);
* Lie dimensions: Moebius inversion of ``log q`` against the number of
  standard Lyndon words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import InconsistencyError, SliceTooLargeError
from .lyndon import counts_by_degree, standard_basis
from .manifold import (
    ManifoldDescriptor,
    QuadraticPresentation,
    classify_low_rank,
    hyperbolicity,
    normalize_basis,
    build_relation,
    validate,
)
from .normal_forms import (
    avoiding_counts,
    hilbert_from_series,
    ideal_slice_rank,
)
from .series import lie_dims_from_denominator, loop_denominator, witt_product
from .words import count_words, render_tree, tree_to_json

DEFAULT_MAX_DEGREE = 12
ORACLE_LIMIT = 8

GAMMA_CAVEAT = (
    "valid after inverting finitely many primes (torsion primes of H*, plus "
    "Hurewicz denominators, plus implementation-chosen scalings)"
)


@dataclass(frozen=True)
class ReportConfig:
    max_degree: int = DEFAULT_MAX_DEGREE
    oracle_limit: int = ORACLE_LIMIT
    order: tuple[int, ...] | None = None
    growth_tolerance: Fraction = Fraction(1, 20)


def decimal_str(x: Fraction, places: int = 6) -> str:
    """Round-half-up decimal rendering without going through floats."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = (x * 10 ** places * 2 + 1) // 2
    whole, frac = divmod(int(scaled), 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


def _q_tilde(p: QuadraticPresentation, order: int):
    return loop_denominator(p.loop_degrees, p.relation_degree, order)


# -- loop homology ------------------------------------------------------------

def hilbert_three_way(p: QuadraticPresentation, n: int, oracle_limit: int = ORACLE_LIMIT,
                      relation=None) -> dict:
    """Per-degree dimensions from the three routes and their agreement."""
    relation = relation or p.graded
    series = hilbert_from_series(p.alphabet, p.relation_degree, n).dims
    avoid = avoiding_counts(p.alphabet, p.leading_pair, n)
    oracle: list = []
    for m in range(n + 1):
        if m > oracle_limit:
            oracle.append(None)
            continue
        try:
            oracle.append(count_words(p.alphabet, m) - ideal_slice_rank(relation, m))
        except SliceTooLargeError:
            oracle.append(None)
    provenance = []
    agree = True
    for m in range(n + 1):
        tags = ["series"]
        if avoid[m] == series[m]:
            tags.append("avoiding-words")
        else:
            agree = False
        if oracle[m] is not None:
            if oracle[m] == series[m]:
                tags.append("oracle")
            else:
                agree = False
        provenance.append("+".join(tags))
    witt = witt_product(lie_dims_from_denominator(_q_tilde(p, n)), n)
    pbw = [int(c) for c in witt] == list(series)
    return {
        "dims": list(series),
        "provenance": provenance,
        "routes": {"series": list(series), "avoiding_words": avoid, "oracle": oracle},
        "oracle_limit": min(oracle_limit, n),
        "agreement": agree,
        "pbw_reconstruction": pbw,
    }


def presentation_text(p: QuadraticPresentation) -> str:
    names = ", ".join(p.alphabet.names)
    return f"T({names}) / ({p.graded})"


def presentation_section(p: QuadraticPresentation) -> dict:
    return {
        "generators": [
            {"name": nm, "loop_degree": deg}
            for nm, deg in zip(p.alphabet.names, p.alphabet.loop_degrees)
        ],
        "letter_order": list(p.alphabet.order),
        "relation_degree": p.relation_degree,
        "graded_relation": str(p.graded),
        "ungraded_relation": str(p.ungraded),
        "leading_pair": list(p.leading_pair.word),
        "normalized_pairing": [[_frac_json(c) for c in row] for row in p.normalized.pairing],
        "change_matrix": [[_frac_json(c) for c in row] for row in p.change_matrix],
        "text": presentation_text(p),
    }


def loop_homology_report(p: QuadraticPresentation, n: int,
                         oracle_limit: int = ORACLE_LIMIT) -> dict:
    table = hilbert_three_way(p, n, oracle_limit)
    if not table["agreement"]:
        bad = next(m for m in range(n + 1) if "avoiding-words" not in table["provenance"][m]
                   or (table["routes"]["oracle"][m] is not None and "oracle" not in table["provenance"][m]))
        raise InconsistencyError(f"Hilbert routes disagree in degree {bad}", degree=bad)
    return {"presentation": presentation_section(p), "hilbert": table}


# -- decomposition --------------------------------------------------------------

@dataclass(frozen=True)
class PiDecomposition:
    max_degree: int
    multiplicities: dict
    witnesses: dict
    entries: tuple = field(default=(), compare=False, repr=False)
    caveat: str = GAMMA_CAVEAT

    def to_json(self) -> dict:
        return {
            "max_sphere_dim": self.max_degree,
            "multiplicities": {str(j): k for j, k in self.multiplicities.items()},
            "witnesses": {str(j): [list(w) for w in ws] for j, ws in self.witnesses.items()},
            "caveat": self.caveat,
        }


def sphere_decomposition(p: QuadraticPresentation, s: int, **basis_options) -> PiDecomposition:
    """Summands ``pi_* S^j`` for sphere dimensions ``j <= s``."""
    top = s - 1
    if top < 1:
        return PiDecomposition(s, {}, {})
    dims = lie_dims_from_denominator(_q_tilde(p, top))
    entries = standard_basis(p, top, **basis_options)
    counts = counts_by_degree(entries, top)
    for m in range(1, top + 1):
        if dims[m - 1] != counts[m - 1]:
            raise InconsistencyError(
                f"degree {m}: Moebius gives {dims[m - 1]} but {counts[m - 1]} standard Lyndon words",
                degree=m,
            )
    mult = {m + 1: dims[m - 1] for m in range(1, top + 1) if dims[m - 1]}
    wit: dict = {}
    for e in entries:
        wit.setdefault(e.sphere_dim, []).append(e.word)
    n = p.descriptor.n
    if mult and min(mult) < n:
        raise InconsistencyError(f"sphere S^{min(mult)} below the connectivity bound {n}")
    return PiDecomposition(s, mult, {j: wit[j] for j in sorted(wit)}, tuple(entries))


def rational_ranks(dec: PiDecomposition, s: int | None = None) -> dict:
    """``rank pi_s(M) (x) Q`` for ``2 <= s <= S``.

    ``pi_s S^j (x) Q`` is ``Q`` when ``s = j`` or when ``j`` is even and
    ``s = 2j - 1``, zero otherwise.
    """
    top = dec.max_degree if s is None else s
    mult = dec.multiplicities
    out = {}
    for k in range(2, top + 1):
        total = mult.get(k, 0)
        if (k + 1) % 2 == 0 and ((k + 1) // 2) % 2 == 0:
            total += mult.get((k + 1) // 2, 0)
        out[k] = total
    return out


# -- growth ---------------------------------------------------------------------

def _poly_eval(coeffs: Sequence[int], t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def smallest_positive_root(coeffs: Sequence[int], tol: Fraction = Fraction(1, 10 ** 15)):
    """Bracket ``(lo, hi)`` around the smallest root of ``q`` in ``(0, 1]``.

    ``q(0) = 1`` and ``q`` changes sign on ``[0, 1]`` for the polynomials
    met here; the first sign change on a fine grid is refined by exact
    bisection.  Returns ``None`` if there is no sign change.
    """
    steps = 4096
    prev = Fraction(0)
    for k in range(1, steps + 1):
        t = Fraction(k, steps)
        if _poly_eval(coeffs, t) <= 0:
            lo, hi = prev, t
            break
        prev = t
    else:
        return None
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _poly_eval(coeffs, mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def moore_report(dec: PiDecomposition, hilbert: Sequence[int], p: QuadraticPresentation,
                 tolerance: Fraction = Fraction(1, 20), tail: int = 3) -> dict:
    """Lie dimensions keep appearing, and the Hilbert series grows at the root rate."""
    top = dec.max_degree - 1
    degs = p.loop_degrees
    g = 0
    for x in degs:
        g = gcd(g, x)
    g = gcd(g, p.relation_degree)
    m0 = min(degs)
    window = [m for m in range(m0, top + 1) if m % g == 0]
    mult = dec.multiplicities
    gaps = [m for m in window if not mult.get(m + 1)]
    D = p.relation_degree
    poly = [0] * (max(max(degs), D) + 1)
    poly[0] = 1
    for x in degs:
        poly[x] -= 1
    poly[D] += 1
    bracket = smallest_positive_root(poly)
    ratios = []
    reference = None
    if bracket is not None:
        lo, hi = bracket
        reference = 2 / (lo + hi)
        for m in range(1, len(hilbert)):
            if hilbert[m - 1] > 0:
                ratio = Fraction(hilbert[m], hilbert[m - 1])
                dev = abs(ratio - reference) / reference
                ratios.append({
                    "m": m,
                    "ratio": decimal_str(ratio),
                    "relative_deviation": decimal_str(dev),
                    "within_tolerance": dev <= tolerance,
                })
    tail_ok = bool(ratios) and all(r["within_tolerance"] for r in ratios[-tail:])
    return {
        "window": [window[0], window[-1]] if window else None,
        "step": g,
        "populated": not gaps and bool(window),
        "gaps": gaps,
        "max_sphere_dim_found": max(mult) if mult else None,
        "growth_reference": decimal_str(reference) if reference is not None else None,
        "ratios": ratios,
        "tolerance": decimal_str(tolerance, 4),
        "tail_converged": tail_ok,
        "conclusion": (
            "If standard Lyndon words keep occurring in arbitrarily large degree "
            f"(observed here for every loop degree in the window up to {top}), then "
            "for all but finitely many primes p the p-local homotopy groups of M "
            "have no exponent."
        ),
    }


# -- document assembly ----------------------------------------------------------

def _frac_json(c: Fraction):
    c = Fraction(c)
    return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def descriptor_echo(desc: ManifoldDescriptor) -> dict:
    return {
        "name": desc.name,
        "n": desc.n,
        "d": desc.d,
        "generator_degrees": list(desc.generator_degrees),
        "pairing": [[_frac_json(c) for c in row] for row in desc.pairing],
        "torsion_primes": list(desc.torsion_primes),
    }


def low_rank_ranks(kind: str, dims: Sequence[int], top: int) -> dict:
    """Rational ranks of the low-rank model spaces, degrees ``2..top``."""
    ranks = {k: 0 for k in range(2, top + 1)}

    def bump(k):
        if 2 <= k <= top:
            ranks[k] += 1

    if kind == "sphere":
        d = dims[0]
        bump(d)
        if d % 2 == 0:
            bump(2 * d - 1)
    elif kind == "james":
        s = dims[0]
        bump(s)
        bump(3 * s - 1)
    elif kind == "connected-sum-james":
        s = dims[0]
        bump(s)
        bump(s)
        bump(2 * s - 1)
        bump(2 * s - 1)
    else:
        for x in dims:
            bump(x)
            if x % 2 == 0:
                bump(2 * x - 1)
    return ranks


def build_report(desc: ManifoldDescriptor, config: ReportConfig = ReportConfig()) -> dict:
    """The full report document as plain JSON-ready data."""
    v = validate(desc)
    n = config.max_degree
    doc: dict = {
        "input_echo": descriptor_echo(desc),
        "validation": {
            "valid": True,
            "r": v.r,
            "total_rank": v.total_rank,
            "route": v.route,
            "hyperbolicity": hyperbolicity(v),
        },
        "presentation": None,
        "hilbert": None,
        "lie_dims": None,
        "decomposition": None,
        "rational_ranks": None,
        "classification": None,
        "moore": None,
        "caveats": [GAMMA_CAVEAT],
    }
    if v.r <= 2:
        t = classify_low_rank(v)
        doc["classification"] = {"type": t.kind, "label": t.label, "dims": list(t.dims), "note": t.note}
        doc["rational_ranks"] = {str(k): x for k, x in low_rank_ranks(t.kind, t.dims, n).items()}
        doc["moore"] = {"applicable": False,
                        "reason": "rationally elliptic (total rank <= 4); no exponential growth"}
        return doc
    nv, a, lp = normalize_basis(v, config.order)
    p = build_relation(nv, lp, a, source=desc, order=config.order)
    loop = loop_homology_report(p, n, config.oracle_limit)
    doc["presentation"] = loop["presentation"]
    doc["hilbert"] = loop["hilbert"]
    doc["lie_dims"] = lie_dims_from_denominator(_q_tilde(p, n))
    dec = sphere_decomposition(p, n)
    doc["decomposition"] = dec.to_json()
    doc["decomposition"]["brackets"] = {
        str(e.sphere_dim): [] for e in dec.entries
    }
    for e in dec.entries:
        doc["decomposition"]["brackets"][str(e.sphere_dim)].append(render_tree(e.bracket, p.alphabet))
    doc["rational_ranks"] = {str(k): x for k, x in rational_ranks(dec).items()}
    doc["classification"] = {"type": "hyperbolic", "label": "rationally hyperbolic", "dims": [], "note": ""}
    doc["moore"] = {"applicable": True,
                    **moore_report(dec, doc["hilbert"]["dims"], p, config.growth_tolerance)}
    return doc


def basis_rows(p: QuadraticPresentation, n: int) -> list[dict]:
    """Rows of the standard-basis table, lex-ordered inside each degree."""
    rows = []
    for e in standard_basis(p, n):
        rows.append({
            "loop_degree": e.loop_degree,
            "sphere_dim": e.sphere_dim,
            "word": list(e.word),
            "bracket": tree_to_json(e.bracket),
            "bracket_text": render_tree(e.bracket, p.alphabet),
            "certificate": e.certificate,
        })
    return rows

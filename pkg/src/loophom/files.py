"""Descriptor files: strict JSON in, canonical JSON out.

Pairing entries are integers or rationals written as ``"p/q"`` strings.
Floats are refused because they are not exact.  Serialization uses a
fixed key order and reduced fractions, so parse/serialize is idempotent.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import DescriptorParseError
from .manifold import ManifoldDescriptor

KEYS = ("name", "n", "d", "generator_degrees", "pairing", "torsion_primes")
REQUIRED = KEYS[:-1]
_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def _locate(text: str, needle: str):
    """Line and column (1-based) of the first occurrence of ``needle``."""
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_rational(value, path: str, text: str = "") -> Fraction:
    if isinstance(value, bool):
        raise DescriptorParseError("booleans are not numbers", path=path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        line, col = _locate(text, json.dumps(value)) if text else (None, None)
        raise DescriptorParseError(
            f"float {value!r} is not exact; write it as an integer or \"p/q\"",
            line, col, path)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        line, col = _locate(text, json.dumps(value)) if text else (None, None)
        if not m:
            raise DescriptorParseError(f"malformed rational {value!r}", line, col, path)
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise DescriptorParseError(f"zero denominator in {value!r}", line, col, path)
        return Fraction(num, den)
    raise DescriptorParseError(f"expected a rational, got {type(value).__name__}", path=path)


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DescriptorParseError(f"expected an integer, got {value!r}", path=path)
    return value


def descriptor_from_data(data, text: str = "") -> ManifoldDescriptor:
    if not isinstance(data, dict):
        raise DescriptorParseError("top level must be a JSON object")
    unknown = sorted(set(data) - set(KEYS))
    if unknown:
        raise DescriptorParseError(f"unknown key(s): {', '.join(unknown)}")
    missing = [k for k in REQUIRED if k not in data]
    if missing:
        raise DescriptorParseError(f"missing key(s): {', '.join(missing)}")
    name = data["name"]
    if not isinstance(name, str):
        raise DescriptorParseError("name must be a string", path="name")
    n = _int(data["n"], "n")
    d = _int(data["d"], "d")
    degs = data["generator_degrees"]
    if not isinstance(degs, list):
        raise DescriptorParseError("generator_degrees must be a list", path="generator_degrees")
    degs = [_int(x, f"generator_degrees[{i}]") for i, x in enumerate(degs)]
    pairing = data["pairing"]
    if not isinstance(pairing, list) or any(not isinstance(row, list) for row in pairing):
        raise DescriptorParseError("pairing must be a list of lists", path="pairing")
    if len(pairing) != len(degs) or any(len(row) != len(degs) for row in pairing):
        raise DescriptorParseError(
            f"pairing must be {len(degs)}x{len(degs)} to match generator_degrees", path="pairing")
    matrix = [[parse_rational(x, f"pairing[{i}][{j}]", text) for j, x in enumerate(row)]
              for i, row in enumerate(pairing)]
    primes = data.get("torsion_primes", [])
    if not isinstance(primes, list):
        raise DescriptorParseError("torsion_primes must be a list", path="torsion_primes")
    primes = [_int(x, f"torsion_primes[{i}]") for i, x in enumerate(primes)]
    return ManifoldDescriptor(name, n, d, tuple(degs), tuple(map(tuple, matrix)), tuple(primes))


def parse_descriptor(text: str) -> ManifoldDescriptor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorParseError(exc.msg, exc.lineno, exc.colno) from None
    return descriptor_from_data(data, text)


def load_descriptor(path) -> ManifoldDescriptor:
    return parse_descriptor(Path(path).read_text(encoding="utf-8"))


def rational_to_json(c: Fraction):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def descriptor_to_data(desc: ManifoldDescriptor) -> dict:
    return {
        "name": desc.name,
        "n": desc.n,
        "d": desc.d,
        "generator_degrees": list(desc.generator_degrees),
        "pairing": [[rational_to_json(c) for c in row] for row in desc.pairing],
        "torsion_primes": list(desc.torsion_primes),
    }


def serialize_descriptor(desc: ManifoldDescriptor) -> str:
    """Canonical text: fixed key order, one pairing row per line."""
    data = descriptor_to_data(desc)
    rows = [json.dumps(row, separators=(", ", ": ")) for row in data["pairing"]]
    if rows:
        pairing = "[\n    " + ",\n    ".join(rows) + "\n  ]"
    else:
        pairing = "[]"
    parts = [
        f'  "name": {json.dumps(data["name"])}',
        f'  "n": {data["n"]}',
        f'  "d": {data["d"]}',
        f'  "generator_degrees": {json.dumps(data["generator_degrees"], separators=(", ", ": "))}',
        f'  "pairing": {pairing}',
        f'  "torsion_primes": {json.dumps(data["torsion_primes"], separators=(", ", ": "))}',
    ]
    return "{\n" + ",\n".join(parts) + "\n}\n"


def save_descriptor(desc: ManifoldDescriptor, path) -> None:
    Path(path).write_text(serialize_descriptor(desc), encoding="utf-8")

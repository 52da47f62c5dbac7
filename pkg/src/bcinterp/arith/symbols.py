"""Symbol alphabet: fixed global ranking of generator and variable names.

Base generators are the square roots ``qh`` (q^(1/2)), ``th`` (t^(1/2)),
``s`` and ``ah1..ah4`` (a_i^(1/2)), followed by the auxiliary symbol ``u``
and any extra parameter names; variables ``x1..``, ``y1..`` and ``z`` come
last.  q, t and a_i are never symbols of their own.
"""

from __future__ import annotations

import re
from functools import lru_cache

BASE = ("qh", "th", "s", "ah1", "ah2", "ah3", "ah4", "u")
_BASE_INDEX = {name: i for i, name in enumerate(BASE)}
_VAR_RE = re.compile(r"([xyz])(\d*)\Z")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")

# generators printed with half-integer exponents under a friendlier name
HALF_DISPLAY = {"qh": "q", "th": "t", "ah1": "a1", "ah2": "a2", "ah3": "a3", "ah4": "a4"}
DISPLAY_TO_HALF = {v: k for k, v in HALF_DISPLAY.items()}


class SymbolError(ValueError):
    pass


@lru_cache(maxsize=None)
def symbol_rank(name: str):
    if name in _BASE_INDEX:
        return (0, _BASE_INDEX[name], "")
    m = _VAR_RE.match(name)
    if m:
        letter, digits = m.groups()
        return (2, "xyz".index(letter), int(digits) if digits else 0)
    if not _IDENT_RE.match(name) or name in DISPLAY_TO_HALF:
        raise SymbolError(f"invalid or reserved symbol name {name!r}")
    return (1, 0, name)


def canonical(names) -> tuple:
    """Sorted, duplicate-free alphabet for an iterable of symbol names."""
    return _canonical(frozenset(names))


@lru_cache(maxsize=8192)
def _canonical(names: frozenset) -> tuple:
    return tuple(sorted(names, key=symbol_rank))


@lru_cache(maxsize=4096)
def merge(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    return _canonical(frozenset(a) | frozenset(b))


@lru_cache(maxsize=4096)
def embedding(src: tuple, dst: tuple) -> tuple:
    """Positions of ``src`` symbols inside ``dst``."""
    pos = {n: i for i, n in enumerate(dst)}
    try:
        return tuple(pos[n] for n in src)
    except KeyError as exc:
        raise SymbolError(f"symbol {exc.args[0]!r} missing from target alphabet") from None


def xs(n: int) -> tuple:
    return tuple(f"x{i}" for i in range(1, n + 1))


def ys(n: int) -> tuple:
    return tuple(f"y{i}" for i in range(1, n + 1))

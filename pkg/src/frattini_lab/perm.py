"""Permutations as int32 image arrays, plus cycle-notation I/O.

Points are 0-based internally and 1-based in cycle notation.  Products apply
the left factor first: ``mul(a, b)[x] == b[a[x]]``.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

import numpy as np

from ._kernels import PERM_DTYPE
from .errors import ParseError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def identity(n: int) -> np.ndarray:
    return np.arange(n, dtype=PERM_DTYPE)


def as_perm(a: Sequence[int] | np.ndarray, n: int | None = None) -> np.ndarray:
    """Validate and freeze an image array."""
    arr = np.array(a, dtype=PERM_DTYPE).ravel()
    if n is not None and len(arr) != n:
        raise ValueError(f"expected a permutation of degree {n}, got length {len(arr)}")
    if len(arr) and not np.array_equal(np.sort(arr), np.arange(len(arr))):
        raise ValueError("image array is not a permutation")
    arr.setflags(write=False)
    return arr


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return b[a]


def inv(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(len(a), dtype=a.dtype)
    return out


def conj(a: np.ndarray, g: np.ndarray) -> np.ndarray:
    """a^g = g^-1 a g."""
    return g[a[inv(g)]]


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """[a, b] = a^-1 b^-1 a b."""
    return b[a[inv(b)[inv(a)]]]


def is_identity(a: np.ndarray) -> bool:
    return bool((a == np.arange(len(a))).all())


def perm_order(a: np.ndarray) -> int:
    from math import lcm

    seen = np.zeros(len(a), dtype=bool)
    out = 1
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = a[x]
            length += 1
        out = lcm(out, length)
    return out


def power(a: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        a, k = inv(a), -k
    out = identity(len(a))
    base = a
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def parse_cycles(text: str, n: int) -> np.ndarray:
    """Parse ``(1 2 3)(4 5)`` (1-based, commas optional) into an image array of degree n.

    Cycles are composed left to right.  ``()`` or an empty string is the identity.
    """
    stripped = text.strip()
    out = identity(n)
    if stripped in ("", "()", "1", "id"):
        return out
    rest = _CYCLE_RE.sub("", stripped)
    if rest.strip():
        raise ParseError(f"malformed cycle notation: {text!r}")
    for body in _CYCLE_RE.findall(stripped):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        if not tokens:
            continue
        try:
            pts = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer point in cycle {body!r}") from None
        if len(set(pts)) != len(pts):
            raise ParseError(f"repeated point in cycle {body!r}")
        for p in pts:
            if not 1 <= p <= n:
                raise ParseError(f"point {p} out of range 1..{n}")
        cyc = identity(n)
        for i, p in enumerate(pts):
            cyc[p - 1] = pts[(i + 1) % len(pts)] - 1
        out = mul(out, cyc)
    return out


def format_cycles(a: np.ndarray) -> str:
    seen = np.zeros(len(a), dtype=bool)
    parts = []
    for start in range(len(a)):
        if seen[start] or a[start] == start:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(str(x + 1))
            x = int(a[x])
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def stack(perms: Iterable[np.ndarray], n: int) -> np.ndarray:
    perms = list(perms)
    if not perms:
        return np.empty((0, n), dtype=PERM_DTYPE)
    return np.ascontiguousarray(np.stack(perms).astype(PERM_DTYPE, copy=False))

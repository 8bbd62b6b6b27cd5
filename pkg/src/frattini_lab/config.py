"""Size caps.  ``FRATTINI_LAB_CAP`` overrides the enumeration cap."""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    enumeration: int = 1_000_000
    lattice: int = 2000
    table: int = 2500
    index: int = 10_000
    points: int = 100_000


def _from_env() -> Caps:
    caps = Caps()
    env = os.environ.get("FRATTINI_LAB_CAP")
    if env:
        caps = replace(caps, enumeration=int(env))
    return caps


_current = _from_env()


def caps() -> Caps:
    return _current


def set_caps(**kwargs) -> Caps:
    global _current
    _current = replace(_current, **kwargs)
    return _current


@contextmanager
def override_caps(**kwargs):
    global _current
    saved = _current
    _current = replace(_current, **kwargs)
    try:
        yield _current
    finally:
        _current = saved

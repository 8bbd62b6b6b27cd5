"""Deterministic Schreier-Sims: base and strong generating set for a permutation group.

Used for order and membership without enumerating the group, and (with a
restricted set of eligible base points) for certifying and evaluating
homomorphisms through their graph subgroup.
"""

from __future__ import annotations

from math import prod

import numpy as np

from .perm import identity, inv, is_identity


class IneligibleResidue(Exception):
    """A sifted residue is nontrivial but fixes every eligible base point."""

    def __init__(self, residue: np.ndarray):
        super().__init__("nontrivial element fixing all eligible points")
        self.residue = residue


class _Level:
    __slots__ = ("point", "gens", "trans")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[np.ndarray] = []
        # orbit point -> (u, u^-1) with u[point] == orbit point
        self.trans: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def rebuild(self, n: int) -> None:
        ident = identity(n)
        trans = {self.point: (ident, ident)}
        queue = [self.point]
        for beta in queue:
            u = trans[beta][0]
            for s in self.gens:
                delta = int(s[beta])
                if delta not in trans:
                    w = s[u]
                    trans[delta] = (w, inv(w))
                    queue.append(delta)
        self.trans = trans


class StabChain:
    """Stabilizer chain G = G_0 >= G_1 >= ... >= G_k = 1 along a base b_0, ..., b_{k-1}.

    ``base_prefix`` points are always placed first (even with trivial basic
    orbits).  ``eligible`` restricts which further points may become base
    points; if a residue fixes every eligible point but is not the identity,
    :class:`IneligibleResidue` is raised carrying that residue.
    """

    def __init__(self, degree: int, gens, base_prefix=(), eligible: int | None = None):
        self.degree = degree
        self.eligible = degree if eligible is None else eligible
        self.levels: list[_Level] = [_Level(int(b)) for b in base_prefix]
        gens = [np.asarray(g) for g in gens if not is_identity(np.asarray(g))]
        self.gens = gens
        self._build(gens)

    # -- construction -------------------------------------------------------

    def _new_point(self, g: np.ndarray) -> int:
        moved = np.flatnonzero(g[: self.eligible] != np.arange(self.eligible))
        if not len(moved):
            raise IneligibleResidue(g)
        return int(moved[0])

    def _build(self, gens: list[np.ndarray]) -> None:
        n = self.degree
        for g in gens:
            if all(g[lv.point] == lv.point for lv in self.levels):
                self.levels.append(_Level(self._new_point(g)))
        for i, lv in enumerate(self.levels):
            fixed = [lev.point for lev in self.levels[:i]]
            lv.gens = [g for g in gens if all(g[b] == b for b in fixed)]
            lv.rebuild(n)

        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            changed = False
            for beta, (u, _) in list(lv.trans.items()):
                for s in lv.gens:
                    uinv_img = lv.trans[int(s[beta])][1]
                    h = uinv_img[s[u]]
                    if is_identity(h):
                        continue
                    res, j = self.strip(h, start=i + 1)
                    if j < len(self.levels):
                        pass
                    elif not is_identity(res):
                        self.levels.append(_Level(self._new_point(res)))
                    else:
                        continue
                    for lev in self.levels[i + 1 : j + 1]:
                        lev.gens.append(res)
                        lev.rebuild(n)
                    i = j
                    changed = True
                    break
                if changed:
                    break
            if not changed:
                i -= 1

    # -- queries ------------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def orbit_sizes(self) -> list[int]:
        return [len(lv.trans) for lv in self.levels]

    def order(self) -> int:
        return prod(self.orbit_sizes())

    def strip(self, g: np.ndarray, start: int = 0, stop: int | None = None) -> tuple[np.ndarray, int]:
        """Sift g through levels [start, stop); return (residue, level where it stopped)."""
        stop = len(self.levels) if stop is None else stop
        for j in range(start, stop):
            lv = self.levels[j]
            beta = int(g[lv.point])
            t = lv.trans.get(beta)
            if t is None:
                return g, j
            g = t[1][g]
        return g, stop

    def contains(self, g: np.ndarray) -> bool:
        if len(g) != self.degree:
            return False
        res, j = self.strip(np.asarray(g))
        return j == len(self.levels) and is_identity(res)

    def stabilizer_gens(self, level: int) -> list[np.ndarray]:
        """Strong generators of the pointwise stabilizer of the first ``level`` base points."""
        if level >= len(self.levels):
            return []
        return list(self.levels[level].gens)

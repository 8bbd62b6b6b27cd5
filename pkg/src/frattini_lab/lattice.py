"""Subgroup lattices, maximal subgroups and the Frattini subgroup.

Subgroups of a tabled group are handled as bitmasks over its canonical
element list (Python ints, bit i = element i), which makes inclusion and
intersection tests cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .config import caps
from .errors import CapExceeded, MembershipError, PreconditionError
from .groups import FiniteGroup, Subgroup, is_subgroup_of
from .homs import is_normal
from .structure import intersection, normal_core


def _to_int(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def _from_int(bits: int, m: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((m + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:m].astype(bool)


@dataclass
class SubgroupLattice:
    parent: FiniteGroup
    subgroups: list[Subgroup]
    masks: list[int] = field(repr=False)
    maximal: list[bool]

    def __len__(self) -> int:
        return len(self.subgroups)

    def maximal_subgroups(self) -> list[Subgroup]:
        return [H for H, flag in zip(self.subgroups, self.maximal) if flag]

    def normal_subgroups(self) -> list[Subgroup]:
        return [H for H in self.subgroups if is_normal(self.parent, H)]

    def orders(self) -> list[int]:
        return [H.order() for H in self.subgroups]

    def find(self, H: FiniteGroup) -> int:
        key = _to_int(self.parent.mask_of(H))
        return self.masks.index(key)

    def report(self) -> dict:
        return {
            "group": self.parent.name,
            "order": self.parent.order(),
            "subgroup_count": len(self),
            "maximal_subgroup_orders": sorted(H.order() for H in self.maximal_subgroups()),
        }


def _require_lattice_size(G: FiniteGroup) -> None:
    cap = caps().lattice
    if G.order() > cap:
        raise CapExceeded(f"group order {G.order()} exceeds lattice cap {cap}; use frattini_upper_bound")


def all_subgroups(G: FiniteGroup) -> SubgroupLattice:
    """Every subgroup of G: cyclic subgroups, closed under joins until nothing new appears."""
    _require_lattice_size(G)
    memo = G.__dict__.setdefault("_lattice_memo", {})
    if "lattice" in memo:
        return memo["lattice"]
    T = G.table
    m = G.order()

    found: dict[int, tuple[int, ...]] = {}
    cyclic: list[tuple[int, int]] = []  # (mask, generator index)
    for i in range(m):
        mask = K.table_closure(T, np.array([i]))
        key = _to_int(mask)
        if key not in found:
            found[key] = (i,) if i else ()
            cyclic.append((key, i))

    work = list(found.items())
    pos = 0
    while pos < len(work):
        key, gens = work[pos]
        pos += 1
        for ckey, c in cyclic:
            if (key >> c) & 1:
                continue
            joined = _to_int(K.table_closure(T, np.array(gens + (c,))))
            if joined not in found:
                found[joined] = gens + (c,)
                work.append((joined, gens + (c,)))

    def sort_key(item):
        key, _ = item
        return (bin(key).count("1"), tuple(np.flatnonzero(_from_int(key, m))))

    items = sorted(found.items(), key=sort_key)
    masks = [k for k, _ in items]
    subgroups = []
    for key, gens in items:
        H = Subgroup(G, G.elements[list(gens)] if gens else [], check=False)
        H.__dict__["parent_mask"] = _from_int(key, m)
        subgroups.append(H)
    full = masks[-1]
    sizes = [bin(k).count("1") for k in masks]
    maximal = []
    for i, key in enumerate(masks):
        if key == full:
            maximal.append(False)
            continue
        above = any(
            sizes[j] > sizes[i] and sizes[j] % sizes[i] == 0 and (masks[j] & key) == key
            for j in range(i + 1, len(masks) - 1)
        )
        maximal.append(not above)
    lat = SubgroupLattice(G, subgroups, masks, maximal)
    memo["lattice"] = lat
    return lat


def maximal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return all_subgroups(G).maximal_subgroups()


def is_maximal(G: FiniteGroup, H: FiniteGroup) -> bool:
    """H < G is maximal iff <H, g> = G for every g outside H (one g per coset suffices)."""
    if not is_subgroup_of(H, G):
        raise MembershipError("H is not a subgroup of G")
    index = G.order() // H.order()
    if index > caps().index:
        raise CapExceeded(f"index {index} exceeds cap {caps().index}")
    if index == 1:
        return False
    order = G.order()
    if G.has_table():
        T = G.table
        hidx = np.flatnonzero(G.mask_of(H))
        hgens = G.index_of(H.gens_matrix()) if H.generators else np.empty(0, np.int64)
        covered = np.zeros(order, dtype=bool)
        covered[hidx] = True
        for g in range(order):
            if covered[g]:
                continue
            if K.table_closure(T, np.append(hgens, g)).sum() != order:
                return False
            covered[T[hidx, g]] = True
        return True
    E = G.elements
    covered = np.zeros(order, dtype=bool)
    covered[G.index_of(H.elements)] = True
    Hel = H.elements
    for g in range(order):
        if covered[g]:
            continue
        J = Subgroup(G, list(H.generators) + [E[g]], check=False)
        if J.order() != order:
            return False
        covered[G.index_of(E[g][Hel])] = True
    return True


@dataclass
class FrattiniResult:
    group: FiniteGroup
    frattini: Subgroup
    mode: str
    maximal_subgroups_used: list[Subgroup] = field(repr=False)

    def order(self) -> int:
        return self.frattini.order()

    def report(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.group.order(),
            "frattini_order": self.frattini.order(),
            "mode": self.mode,
            "maximal_subgroup_orders": sorted(M.order() for M in self.maximal_subgroups_used),
        }


def frattini(G: FiniteGroup) -> FrattiniResult:
    """Exact Frattini subgroup (equal to the finite-index variant for finite G)."""
    lat = all_subgroups(G)
    maxes = lat.maximal_subgroups()
    mask = -1
    for key, flag in zip(lat.masks, lat.maximal):
        if flag:
            mask &= key
    if not maxes:
        mask = lat.masks[-1]
    phi = G.subgroup_from_mask(_from_int(mask, G.order()), name="Phi")
    return FrattiniResult(G, phi, "exact", maxes)


def frattini_upper_bound(G: FiniteGroup, candidates, *, core: bool = False) -> FrattiniResult:
    """Intersection of verified maximal subgroups: a subgroup guaranteed to contain Phi(G).

    With ``core=True`` the normal core of the intersection is returned, which
    is still an upper bound (Phi(G) is normal) and is normal in G.
    """
    cands = list(candidates)
    for M in cands:
        if not is_maximal(G, M):
            raise PreconditionError("candidate is not a maximal subgroup")
    bound = intersection(G, *cands)
    if core:
        bound = normal_core(G, bound)
    bound.name = "Phi_bound"
    return FrattiniResult(G, bound, "upper-bound", cands)


def point_stabilizer(G: FiniteGroup, point: int) -> Subgroup:
    """Stabilizer of a point (0-based), from a chain whose base starts there."""
    from .schreier_sims import StabChain

    ch = StabChain(G.degree, G.generators, base_prefix=[point])
    return Subgroup(G, ch.stabilizer_gens(1), name=f"Stab({point + 1})", check=False)


def maximal_point_stabilizers(G: FiniteGroup) -> list[Subgroup]:
    """Point stabilizers (one per orbit) that pass the maximality check."""
    out = []
    seen = np.zeros(G.degree, dtype=bool)
    for x in range(G.degree):
        if seen[x]:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in G.generators:
                z = int(g[y])
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        seen[list(orbit)] = True
        if len(orbit) == 1:
            continue
        H = point_stabilizer(G, x)
        if G.order() // H.order() <= caps().index and is_maximal(G, H):
            out.append(H)
    return out

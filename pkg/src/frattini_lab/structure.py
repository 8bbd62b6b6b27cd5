"""Canonical structural subgroups: closures, centre, commutators, centralizers, series, socle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _kernels as K
from . import perm as P
from .errors import MembershipError, PreconditionError
from .groups import FiniteGroup, Subgroup, is_subgroup_of
from .homs import is_normal


def _check_members(G: FiniteGroup, S) -> list[np.ndarray]:
    out = []
    for s in S:
        s = P.as_perm(s, G.degree)
        if s not in G:
            raise MembershipError(f"{P.format_cycles(s)} is not in the group")
        out.append(s)
    return out


def subgroup_generated(G: FiniteGroup, S: Iterable) -> Subgroup:
    return Subgroup(G, _check_members(G, S), check=False)


def normal_closure(G: FiniteGroup, S: Iterable, *, checked: bool = False) -> Subgroup:
    """Smallest normal subgroup of G containing S."""
    gens = list(S) if checked else _check_members(G, S)
    H = Subgroup(G, gens, check=False)
    i = 0
    while i < len(H.generators):
        h = H.generators[i]
        for g in G.generators:
            c = P.conj(h, g)
            if c not in H:
                H = Subgroup(G, list(H.generators) + [c], check=False)
        i += 1
    return H


def intersection(G: FiniteGroup, *subs: FiniteGroup) -> Subgroup:
    """Intersection of subgroups of G (the whole of G for no arguments)."""
    if not subs:
        return G.whole() if not isinstance(G, Subgroup) else Subgroup(G, G.generators, check=False)
    if G.has_table():
        mask = np.ones(G.order(), dtype=bool)
        for H in subs:
            mask &= G.mask_of(H)
        return G.subgroup_from_mask(mask)
    smallest = min(subs, key=lambda H: H.order())
    keep = [e for e in smallest.elements if all(e in H for H in subs if H is not smallest)]
    # rebuild greedily from the surviving elements
    out = Subgroup(G, [], check=False)
    for e in keep:
        if e not in out:
            out = Subgroup(G, list(out.generators) + [e], check=False)
    return out


def center(G: FiniteGroup) -> Subgroup:
    mask = K.commuting_mask(G.elements, G.gens_matrix())
    return G.subgroup_from_mask(mask, name="Z")


def centralizer(G: FiniteGroup, H: FiniteGroup) -> Subgroup:
    if not is_subgroup_of(H, G):
        raise MembershipError("H is not a subgroup of G")
    if not H.generators:
        return G.subgroup_from_mask(np.ones(G.order(), dtype=bool), name="C")
    mask = K.commuting_mask(G.elements, H.gens_matrix())
    return G.subgroup_from_mask(mask, name="C")


def commutator(G: FiniteGroup, A: FiniteGroup, B: FiniteGroup) -> Subgroup:
    """[A, B] for A, B normal in G: normal closure of commutators of their generators."""
    gens = [P.commutator(a, b) for a in A.generators for b in B.generators]
    return normal_closure(G, [c for c in gens if not P.is_identity(c)], checked=True)


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    H = commutator(G, G, G)
    H.name = "[G,G]"
    return H


def commutator_subgroup_scan(G: FiniteGroup) -> Subgroup:
    """[G, G] from all pairwise commutators of elements (slow; an independent cross-check)."""
    E = G.elements
    mask = np.zeros(G.order(), dtype=bool)
    for a in E:
        comms = np.stack([P.commutator(a, b) for b in E])
        mask[G.index_of(comms)] = True
    return normal_closure(G, G.elements[mask], checked=True)


@dataclass
class NilpotencyResult:
    nilpotent: bool
    orders: list[int]
    series: list[Subgroup] = field(repr=False)

    def __bool__(self) -> bool:
        return self.nilpotent


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    cur = Subgroup(G, G.generators, check=False)
    series = [cur]
    while cur.order() > 1:
        nxt = commutator(G, cur, G)
        if nxt.order() == cur.order():
            break
        series.append(nxt)
        cur = nxt
    return series


def is_nilpotent(G: FiniteGroup) -> NilpotencyResult:
    series = lower_central_series(G)
    orders = [H.order() for H in series]
    return NilpotencyResult(orders[-1] == 1, orders, series)


def conjugacy_classes(G: FiniteGroup) -> np.ndarray:
    """Class label per element (labels numbered by first element in canonical order)."""
    E = G.elements
    m = len(E)
    moves = []
    for g in G.generators:
        ginv = P.inv(g)
        moves.append(G.index_of(g[E[:, ginv]]))
    label = np.arange(m, dtype=np.int64)
    while True:
        new = label.copy()
        for mv in moves:
            np.minimum.at(new, mv, label)
            np.minimum(new, new[mv], out=new)
        if np.array_equal(new, label):
            break
        label = new
    _, label = np.unique(label, return_inverse=True)
    return label


def class_representatives(G: FiniteGroup) -> list[np.ndarray]:
    labels = conjugacy_classes(G)
    _, first = np.unique(labels, return_index=True)
    return [G.elements[i] for i in np.sort(first)]


def normal_closures_of_elements(G: FiniteGroup) -> list[Subgroup]:
    """Distinct normal closures of single nontrivial elements, sorted by order."""
    out: list[Subgroup] = []
    for r in class_representatives(G)[1:]:
        N = normal_closure(G, [r], checked=True)
        if not any(M.order() == N.order() and N.issubset(M) for M in out):
            out.append(N)
    out.sort(key=lambda H: H.order())
    return out


def minimal_normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    closures = normal_closures_of_elements(G)
    return [N for N in closures if not any(M.order() < N.order() and M.issubset(N) for M in closures)]


def is_simple(G: FiniteGroup) -> bool:
    if G.order() == 1:
        return False
    return all(N.order() == G.order() for N in normal_closures_of_elements(G))


@dataclass
class SemisimpleCheck:
    is_simple: bool
    is_product_of_nonabelian_simples: bool
    factors: list[Subgroup]


def socle_semisimple_check(G: FiniteGroup) -> SemisimpleCheck:
    """Simplicity, and whether G is a direct product of nonabelian simple groups.

    The trivial group counts as the empty product.
    """
    if G.order() == 1:
        return SemisimpleCheck(False, True, [])
    simple = is_simple(G)
    if simple:
        return SemisimpleCheck(True, not G.is_abelian(), [Subgroup(G, G.generators, check=False)] if not G.is_abelian() else [])
    mins = minimal_normal_subgroups(G)
    ok = True
    prod_order = 1
    for M in mins:
        if M.is_abelian() or not is_simple(M):
            ok = False
            break
        prod_order *= M.order()
    if ok:
        ok = prod_order == G.order()
        for i, A in enumerate(mins):
            for B in mins[i + 1 :]:
                if not all(np.array_equal(P.mul(a, b), P.mul(b, a)) for a in A.generators for b in B.generators):
                    ok = False
    return SemisimpleCheck(False, ok, mins if ok else [])


def normal_core(G: FiniteGroup, H: FiniteGroup) -> Subgroup:
    """Intersection of all G-conjugates of H."""
    if not is_subgroup_of(H, G):
        raise MembershipError("H is not a subgroup of G")
    conjugates = [Subgroup(G, H.generators, check=False)]
    i = 0
    while i < len(conjugates):
        C = conjugates[i]
        for g in G.generators:
            D = Subgroup(G, [P.conj(h, g) for h in C.generators], check=False)
            if not any(X.issubset(D) and D.issubset(X) for X in conjugates):
                conjugates.append(D)
        i += 1
    core = intersection(G, *conjugates)
    core.name = "core"
    return core


def require_normal(G: FiniteGroup, N: FiniteGroup, what: str = "N") -> None:
    if not is_normal(G, N):
        raise PreconditionError(f"{what} is not normal in G")

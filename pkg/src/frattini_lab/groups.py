"""Finite permutation groups, subgroups, and matrix groups over prime fields.

Every group is held as a permutation group.  A matrix group over F_q is
stored as its (faithful) action on the nonzero row vectors of F_q^N, with the
matrix data kept alongside so elements can be converted back.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from . import perm as P
from .config import caps
from .errors import CapExceeded, MembershipError
from .schreier_sims import StabChain


class FiniteGroup:
    """A permutation group of a given degree, generated by ``generators``.

    Heavy data (stabilizer chain, sorted element list, Cayley table) is built
    lazily and cached; none of it changes the group's observable value.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[str | Sequence[int] | np.ndarray] = (),
        *,
        name: str | None = None,
        matrix: "MatrixInfo | None" = None,
    ):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        if degree > caps().points:
            raise CapExceeded(f"degree {degree} exceeds point cap {caps().points}")
        self.degree = degree
        gens: list[np.ndarray] = []
        seen: set[bytes] = set()
        for g in generators:
            a = P.parse_cycles(g, degree) if isinstance(g, str) else P.as_perm(g, degree)
            key = a.tobytes()
            if key not in seen:
                seen.add(key)
                gens.append(a)
        self.generators: tuple[np.ndarray, ...] = tuple(gens)
        self.name = name
        self.matrix = matrix

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"<{type(self).__name__} {label} degree={self.degree} gens={len(self.generators)}>"

    # -- basic data ---------------------------------------------------------

    @cached_property
    def identity(self) -> np.ndarray:
        e = P.identity(self.degree)
        e.setflags(write=False)
        return e

    @cached_property
    def chain(self) -> StabChain:
        return StabChain(self.degree, self.generators)

    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    def is_trivial(self) -> bool:
        return self.order() == 1

    def __contains__(self, g) -> bool:
        return self.chain.contains(np.asarray(g))

    def contains(self, g) -> bool:
        return g in self

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(np.array_equal(P.mul(a, b), P.mul(b, a)) for i, a in enumerate(gens) for b in gens[i + 1 :])

    def gens_matrix(self) -> np.ndarray:
        return P.stack(self.generators, self.degree)

    # -- enumeration --------------------------------------------------------

    @cached_property
    def elements(self) -> np.ndarray:
        """All elements, sorted lexicographically by image array (identity first)."""
        order = self.order()
        cap = caps().enumeration
        if order > cap:
            raise CapExceeded(f"group order {order} exceeds enumeration cap {cap}")
        rows = K.closure_rows(self.gens_matrix(), cap)
        if rows is None or len(rows) != order:  # pragma: no cover - guarded by the order check
            raise CapExceeded("closure enumeration did not match the stabilizer-chain order")
        rows = rows[np.lexsort(rows.T[::-1])]
        rows.setflags(write=False)
        return rows

    @cached_property
    def _sorted_keys(self) -> tuple[np.ndarray, np.ndarray]:
        keys = K.row_view(self.elements)
        order = np.argsort(keys, kind="stable")
        return keys[order], order

    def index_of(self, rows) -> np.ndarray:
        """Positions of the given permutations in :attr:`elements` (-1 where absent)."""
        rows = np.atleast_2d(np.asarray(rows, dtype=K.PERM_DTYPE))
        if rows.shape[1] != self.degree:
            return np.full(len(rows), -1, dtype=np.int64)
        skeys, order = self._sorted_keys
        q = K.row_view(rows)
        pos = np.searchsorted(skeys, q)
        pos[pos >= len(skeys)] = 0
        hit = skeys[pos] == q
        return np.where(hit, order[pos], -1).astype(np.int64)

    def index(self, g) -> int:
        i = int(self.index_of(g)[0])
        if i < 0:
            raise MembershipError("element is not in the group")
        return i

    @cached_property
    def table(self) -> np.ndarray:
        """Cayley table: ``table[i, j]`` is the index of ``elements[i] * elements[j]``."""
        m = self.order()
        if m > caps().table:
            raise CapExceeded(f"group order {m} exceeds Cayley-table cap {caps().table}")
        E = self.elements
        t = np.empty((m, m), dtype=np.int64)
        for j in range(m):
            t[:, j] = self.index_of(E[j][E])
        t.setflags(write=False)
        return t

    def has_table(self) -> bool:
        return self.order() <= caps().table

    @cached_property
    def inverse_index(self) -> np.ndarray:
        E = self.elements
        inv_rows = np.empty_like(E)
        np.put_along_axis(inv_rows, E.astype(np.int64), np.arange(self.degree, dtype=E.dtype)[None, :].repeat(len(E), 0), axis=1)
        return self.index_of(inv_rows)

    def element_orders(self) -> np.ndarray:
        return np.array([P.perm_order(e) for e in self.elements], dtype=np.int64)

    # -- subgroups ----------------------------------------------------------

    def subgroup(self, gens: Iterable, *, name: str | None = None) -> "Subgroup":
        return Subgroup(self, gens, name=name)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [], name="1", check=False)

    def whole(self) -> "Subgroup":
        return Subgroup(self, self.generators, name=self.name, check=False)

    def mask_of(self, H: "FiniteGroup") -> np.ndarray:
        """Boolean mask over :attr:`elements` marking the members of H (H must lie in self)."""
        if self.has_table():
            idx = self.index_of(H.gens_matrix()) if H.generators else np.empty(0, np.int64)
            if (idx < 0).any():
                raise MembershipError("subgroup generator outside the group")
            return K.table_closure(self.table, idx)
        mask = np.zeros(self.order(), dtype=bool)
        idx = self.index_of(H.elements)
        if (idx < 0).any():
            raise MembershipError("subgroup element outside the group")
        mask[idx] = True
        return mask

    def subgroup_from_mask(self, mask: np.ndarray, *, name: str | None = None) -> "Subgroup":
        """Subgroup with the given element set, generated greedily in canonical order."""
        idx = np.flatnonzero(mask)
        gens: list[int] = []
        if self.has_table():
            cur = np.zeros(len(mask), dtype=bool)
            cur[0] = True
            for i in idx:
                if not cur[i]:
                    gens.append(int(i))
                    cur = K.table_closure(self.table, np.array(gens))
            if not np.array_equal(cur, mask):
                raise MembershipError("mask is not closed under multiplication")
            H = Subgroup(self, self.elements[gens], name=name, check=False)
            H.__dict__["parent_mask"] = cur
            return H
        sub = Subgroup(self, [], name=name, check=False)
        for i in idx:
            e = self.elements[i]
            if e not in sub:
                sub = Subgroup(self, list(sub.generators) + [e], name=name, check=False)
        if sub.order() != len(idx):
            raise MembershipError("mask is not closed under multiplication")
        return sub


class Subgroup(FiniteGroup):
    """A subgroup of ``parent`` given by generators that are verified to lie in it."""

    def __init__(self, parent: FiniteGroup, gens: Iterable, *, name: str | None = None, check: bool = True):
        super().__init__(parent.degree, gens, name=name, matrix=parent.matrix)
        self.parent = parent
        if check:
            for g in self.generators:
                if g not in parent:
                    raise MembershipError(f"generator {P.format_cycles(g)} is not in the parent group")

    @cached_property
    def parent_mask(self) -> np.ndarray:
        return self.parent.mask_of(self)

    def issubset(self, other: FiniteGroup) -> bool:
        return all(g in other for g in self.generators)

    def same_as(self, other: FiniteGroup) -> bool:
        return self.order() == other.order() and self.issubset(other)

    def index_in_parent(self) -> int:
        return self.parent.order() // self.order()


def same_elements(A: FiniteGroup, B: FiniteGroup) -> bool:
    return A.degree == B.degree and A.order() == B.order() and all(g in B for g in A.generators)


def is_subgroup_of(A: FiniteGroup, B: FiniteGroup) -> bool:
    return A.degree == B.degree and all(g in B for g in A.generators)


def as_group(H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Detach a subgroup into a standalone group with the same generators."""
    return FiniteGroup(H.degree, H.generators, name=name or H.name, matrix=H.matrix)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def group_from_perm_generators(n: int, gens: Iterable[str | Sequence[int]], *, name: str | None = None) -> FiniteGroup:
    """Build a permutation group on points 1..n from cycle strings or 0-based image arrays."""
    if n < 1:
        raise ValueError("need at least one point")
    if n > caps().points:
        raise CapExceeded(f"{n} points exceeds cap {caps().points}")
    perms = [P.parse_cycles(g, n) if isinstance(g, str) else P.as_perm(g, n) for g in gens]
    return FiniteGroup(n, perms, name=name)


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class MatrixInfo:
    """Vector indexing for a matrix group acting on nonzero row vectors of F_q^N.

    Vector v = (v_0, ..., v_{N-1}) has code sum v_i q^(N-1-i); point = code - 1.
    """

    q: int
    N: int

    @property
    def npoints(self) -> int:
        return self.q**self.N - 1

    def vectors(self) -> np.ndarray:
        codes = np.arange(1, self.q**self.N, dtype=np.int64)
        digits = np.empty((len(codes), self.N), dtype=np.int64)
        for i in range(self.N):
            digits[:, i] = (codes // self.q ** (self.N - 1 - i)) % self.q
        return digits

    def codes(self, vecs: np.ndarray) -> np.ndarray:
        weights = self.q ** np.arange(self.N - 1, -1, -1, dtype=np.int64)
        return (np.asarray(vecs, dtype=np.int64) % self.q) @ weights

    def to_perm(self, M: np.ndarray) -> np.ndarray:
        V = self.vectors()
        img = (V @ (np.asarray(M, dtype=np.int64) % self.q)) % self.q
        return P.as_perm(self.codes(img) - 1)

    def to_matrix(self, g: np.ndarray) -> np.ndarray:
        basis = np.eye(self.N, dtype=np.int64)
        pts = self.codes(basis) - 1
        return self.vectors()[np.asarray(g)[pts]]


def det_mod(M, q: int) -> int:
    """Determinant of an integer matrix modulo a prime q (Gaussian elimination)."""
    A = [[int(x) % q for x in row] for row in M]
    n = len(A)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % q
        inv = pow(A[c][c], -1, q)
        for r in range(c + 1, n):
            f = A[r][c] * inv % q
            if f:
                A[r] = [(x - f * y) % q for x, y in zip(A[r], A[c])]
    return det % q


def group_from_matrix_generators(q: int, N: int, gens: Iterable, *, name: str | None = None) -> FiniteGroup:
    """Matrix group over F_q generated by invertible N x N integer matrices (reduced mod q)."""
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    if N < 1:
        raise ValueError("dimension must be positive")
    info = MatrixInfo(q, N)
    if info.npoints > caps().points:
        raise CapExceeded(f"{info.npoints} nonzero vectors exceeds point cap {caps().points}")
    perms = []
    for M in gens:
        M = np.asarray(M, dtype=np.int64) % q
        if M.shape != (N, N):
            raise ValueError(f"expected a {N}x{N} matrix, got shape {M.shape}")
        if det_mod(M, q) == 0:
            raise ValueError(f"singular generator mod {q}: {M.tolist()}")
        perms.append(info.to_perm(M))
    return FiniteGroup(info.npoints, perms, name=name, matrix=info)


def matrix_of(G: FiniteGroup, g: np.ndarray) -> np.ndarray:
    if G.matrix is None:
        raise ValueError("group has no matrix representation")
    return G.matrix.to_matrix(g)


# ---------------------------------------------------------------------------
# standard families (test corpus helpers)
# ---------------------------------------------------------------------------


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return FiniteGroup(max(n, 1), [], name=f"S{n}")
    gens = ["(1 2)"] + (["(" + " ".join(map(str, range(1, n + 1))) + ")"] if n > 2 else [])
    return group_from_perm_generators(n, gens, name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        return FiniteGroup(max(n, 1), [], name=f"A{n}")
    gens = [f"(1 2 {k})" for k in range(3, n + 1)]
    return group_from_perm_generators(n, gens, name=f"A{n}")


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup(1, [], name="Z1")
    return group_from_perm_generators(n, ["(" + " ".join(map(str, range(1, n + 1))) + ")"], name=f"Z{n}")


def direct_product(*groups: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """External direct product acting on the disjoint union of the point sets."""
    total = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            a = P.identity(total)
            a[offset : offset + G.degree] = g + offset
            gens.append(a)
        offset += G.degree
    return FiniteGroup(total, gens, name=name or "x".join(G.name or "?" for G in groups))


def embed_factor(groups: Sequence[FiniteGroup], which: int, g: np.ndarray) -> np.ndarray:
    total = sum(G.degree for G in groups)
    offset = sum(G.degree for G in groups[:which])
    a = P.identity(total)
    a[offset : offset + groups[which].degree] = np.asarray(g) + offset
    return a

"""Reduction of cyclotomic representations mod split primes, classical group orders,
image recognition, and symplectic transvection groups."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod
from pathlib import Path

import numpy as np

from . import _kernels as K
from .config import caps
from .cyclotomic import CycloMatrix, HermitianForm, is_split_prime, make_reduction_map, reduce_matrix, unitary_special_check
from .errors import CapExceeded, PreconditionError
from .groups import FiniteGroup, Subgroup, det_mod, group_from_matrix_generators, is_prime
from .homs import quotient
from .io import RepFile, parse_rep_file
from .reports import LemmaReport


@dataclass
class RepData:
    p: int
    N: int
    labels: list[str]
    matrices: list[CycloMatrix]
    hermitian: HermitianForm | None = None
    genus: int | None = None

    def word(self, w) -> CycloMatrix:
        """Product of generators along a word of (index, exponent>=0) pairs."""
        out = CycloMatrix.identity(self.p, self.N)
        for i, e in w:
            for _ in range(e):
                out = out @ self.matrices[i]
        return out


class UnitarityViolation(PreconditionError):
    def __init__(self, failures: list[str]):
        super().__init__("generators not special unitary: " + ", ".join(failures))
        self.failures = failures


def rep_from_file(rf: RepFile) -> RepData:
    failures = []
    if rf.hermitian is not None:
        for label, M in zip(rf.labels, rf.matrices):
            chk = unitary_special_check(M, rf.hermitian)
            if not (chk["special"] and chk["unitary"]):
                bad = [k for k in ("special", "unitary") if not chk[k]]
                failures.append(f"{label} ({'/'.join(bad)})")
    if failures:
        raise UnitarityViolation(failures)
    genus = int(rf.metadata["genus"]) if "genus" in rf.metadata else None
    return RepData(rf.p, rf.N, rf.labels, rf.matrices, rf.hermitian, genus)


def ingest_rep(source: str | Path, *, strict: bool = False) -> RepData:
    """Parse and validate a representation file (path or file text)."""
    text = Path(source).read_text(encoding="utf-8") if not str(source).lstrip().startswith("cyclo") else str(source)
    return rep_from_file(parse_rep_file(text, strict=strict))


def reduce_rep(rep: RepData, q: int, *, name: str | None = None) -> FiniteGroup:
    if not is_split_prime(rep.p, q):
        raise PreconditionError(f"q={q} does not split completely in Z[zeta_{rep.p}]")
    pi = make_reduction_map(rep.p, q)
    mats = [reduce_matrix(M, pi) for M in rep.matrices]
    return group_from_matrix_generators(q, rep.N, mats, name=name or f"red({rep.p},{q})")


# ---------------------------------------------------------------------------
# classical groups
# ---------------------------------------------------------------------------


def classical_group_order(kind: str, *, N: int | None = None, q: int | None = None, g: int | None = None) -> int:
    kind = kind.lower()
    if q is None or not is_prime(q):
        raise ValueError("q must be a prime")
    if kind in ("sl", "psl"):
        if N is None or N < 1:
            raise ValueError("N must be a positive integer")
        order = q ** (N * (N - 1) // 2) * prod(q**i - 1 for i in range(2, N + 1))
        return order if kind == "sl" else order // gcd(N, q - 1)
    if kind == "sp":
        if g is None or g < 1:
            raise ValueError("g must be a positive integer")
        return q ** (g * g) * prod(q ** (2 * i) - 1 for i in range(1, g + 1))
    raise ValueError(f"unknown kind {kind!r}")


def scalar_subgroup(G: FiniteGroup) -> Subgroup:
    """Scalar matrices lambda*I in G (those with lambda^N = 1 when G <= SL)."""
    info = G.matrix
    if info is None:
        raise ValueError("not a matrix group")
    gens = []
    for lam in range(1, info.q):
        if pow(lam, info.N, info.q) != 1:
            continue
        perm = info.to_perm(np.eye(info.N, dtype=np.int64) * lam)
        if perm in G:
            gens.append(perm)
    return Subgroup(G, gens, name="scalars", check=False)


def psl_image(G: FiniteGroup) -> FiniteGroup:
    Z = scalar_subgroup(G)
    Q, _ = quotient(G, Z, name=f"P({G.name})")
    return Q


def recognize_image(G: FiniteGroup, kind: str, *, N: int | None = None, q: int | None = None, g: int | None = None) -> bool:
    """Exact-order recognition of SL(N,q), PSL(N,q) (as G modulo scalars) or Sp(2g,q)."""
    info = G.matrix
    if info is None:
        raise ValueError("recognition needs a matrix group")
    q = info.q if q is None else q
    kind = kind.lower()
    if kind in ("sl", "psl"):
        N = info.N if N is None else N
        if (N, q) != (info.N, info.q):
            return False
        if any(det_mod(info.to_matrix(x), q) != 1 for x in G.generators):
            return False
        order = G.order() if kind == "sl" else psl_image(G).order()
        return order == classical_group_order(kind, N=N, q=q)
    if kind == "sp":
        g = info.N // 2 if g is None else g
        if info.N != 2 * g or info.q != q:
            return False
        J = SymplecticSpace(g, q).form
        for x in G.generators:
            M = info.to_matrix(x)
            if not np.array_equal((M @ J @ M.T) % q, J % q):
                return False
        return G.order() == classical_group_order("sp", g=g, q=q)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# symplectic spaces and transvections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymplecticSpace:
    """(Z/p)^(2g) with basis e_1..e_g, f_1..f_g and <e_i, f_i> = 1."""

    g: int
    p: int

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("genus must be positive")
        if not is_prime(self.p) or self.p == 2:
            raise ValueError("p must be an odd prime")

    @cached_property
    def form(self) -> np.ndarray:
        g = self.g
        J = np.zeros((2 * g, 2 * g), dtype=np.int64)
        J[:g, g:] = np.eye(g, dtype=np.int64)
        J[g:, :g] = -np.eye(g, dtype=np.int64)
        return J % self.p

    def pair(self, x, y) -> int:
        return int(np.asarray(x) @ self.form @ np.asarray(y)) % self.p


def transvection_matrix(space: SymplecticSpace, v) -> np.ndarray:
    """Matrix of x -> x + <x, v> v acting on row vectors: T = I + (J v^T) v."""
    v = np.asarray(v, dtype=np.int64) % space.p
    if v.shape != (2 * space.g,):
        raise ValueError("vector has the wrong length")
    if not v.any():
        raise ValueError("transvection needs a nonzero vector")
    T = np.eye(2 * space.g, dtype=np.int64) + np.outer(space.form @ v, v)
    return T % space.p


def projective_points(dim: int, p: int) -> list[np.ndarray]:
    """Nonzero vectors of (Z/p)^dim whose first nonzero coordinate is 1."""
    out = []
    for v in itertools.product(range(p), repeat=dim):
        nz = next((c for c in v if c), 0)
        if nz == 1:
            out.append(np.array(v, dtype=np.int64))
    return out


def transvection_group(g: int, p: int) -> FiniteGroup:
    space = SymplecticSpace(g, p)
    mats = [transvection_matrix(space, v) for v in projective_points(2 * g, p)]
    return group_from_matrix_generators(p, 2 * g, mats, name=f"T({2 * g},{p})")


def closure_order(G: FiniteGroup) -> int | None:
    """Order by breadth-first closure (independent of the stabilizer chain); None if over the cap."""
    rows = K.closure_rows(G.gens_matrix(), caps().enumeration)
    return None if rows is None else len(rows)


def sp_generation_check(g: int, p: int, *, enumerate_closure: bool = True) -> LemmaReport:
    rep = LemmaReport("sp-generation", inputs={"g": g, "p": p})
    if p ** (2 * g) > caps().points:
        raise CapExceeded(f"p^(2g) = {p ** (2 * g)} exceeds point cap")
    space = SymplecticSpace(g, p)
    vecs = projective_points(2 * g, p)
    mats = [transvection_matrix(space, v) for v in vecs]
    J = space.form
    rep.check(
        "every transvection preserves the form",
        all(np.array_equal((T.T @ J @ T) % p, J) for T in mats),
        {"generators": len(mats)},
    )
    G = group_from_matrix_generators(p, 2 * g, mats, name=f"T({2 * g},{p})")
    target = classical_group_order("sp", g=g, q=p)
    order = G.order()
    rep.check("order of the transvection group equals |Sp(2g,p)|", order == target, {"group": order, "Sp": target})
    if enumerate_closure:
        co = closure_order(G)
        rep.check("closure enumeration agrees", co == target, {"closure": -1 if co is None else co})
    return rep


def random_word(rng: random.Random, k: int, length: int):
    return [(rng.randrange(k), rng.randrange(1, 4)) for _ in range(length)]


def reduction_check(rep: RepData, q: int, *, enumerate_closure: bool = True) -> LemmaReport:
    """Reduce mod q and compare the image with SL(N, q)."""
    from .cyclotomic import multiplicative_order

    out = LemmaReport("reduction", inputs={"p": rep.p, "q": q, "N": rep.N, "generators": len(rep.matrices)})
    split = out.check("q splits completely (q = 1 mod p)", is_split_prime(rep.p, q), {"q mod p": q % rep.p})
    if not split:
        return out
    pi = make_reduction_map(rep.p, q)
    out.check("pi(zeta) has order p", multiplicative_order(pi.r, q) == rep.p, {"pi(zeta)": pi.r})
    G = reduce_rep(rep, q)
    target = classical_group_order("sl", N=rep.N, q=q)
    out.check("image order equals |SL(N,q)|", G.order() == target, {"image": G.order(), "SL": target})
    out.check("image recognized as SL(N,q)", recognize_image(G, "sl"), {})
    if enumerate_closure:
        co = closure_order(G)
        out.check("closure enumeration agrees", co == G.order(), {"closure": -1 if co is None else co})
    return out

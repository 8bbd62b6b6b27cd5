"""Homomorphisms given by generator images, certified through the graph subgroup, and quotients."""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels as K
from . import perm as P
from .config import caps
from .errors import CapExceeded, HomomorphismError, MembershipError, NotNormalError
from .groups import FiniteGroup, Subgroup
from .schreier_sims import IneligibleResidue, StabChain


def _graph_gens(source: FiniteGroup, target: FiniteGroup, images: Sequence[np.ndarray]) -> list[np.ndarray]:
    n, m = source.degree, target.degree
    out = []
    for g, h in zip(source.generators, images):
        a = np.empty(n + m, dtype=K.PERM_DTYPE)
        a[:n] = g
        a[n:] = np.asarray(h) + n
        out.append(a)
    return out


class Homomorphism:
    """A map ``source -> target`` determined by one image per source generator.

    Construction fails with :class:`HomomorphismError` unless the graph
    subgroup <(g_i, images_i)> of source x target meets 1 x target trivially,
    which is exactly the condition for the assignment to extend.
    """

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence, *, name: str | None = None):
        if len(images) != len(source.generators):
            raise HomomorphismError(f"need {len(source.generators)} images, got {len(images)}")
        imgs = []
        for h in images:
            h = P.as_perm(h, target.degree)
            if h not in target:
                raise MembershipError(f"image {P.format_cycles(h)} is not in the target group")
            imgs.append(h)
        self.source = source
        self.target = target
        self.images: tuple[np.ndarray, ...] = tuple(imgs)
        self.name = name
        n = source.degree
        gens = _graph_gens(source, target, imgs)
        try:
            self._graph = StabChain(n + target.degree, gens, eligible=n)
        except IneligibleResidue as exc:
            witness = exc.residue[n:] - n
            raise HomomorphismError(
                "generator images do not extend to a homomorphism: the identity would map to "
                + P.format_cycles(witness.astype(K.PERM_DTYPE)),
                witness=witness,
            ) from None
        if self._graph.order() != source.order():  # pragma: no cover - implied by the chain
            raise HomomorphismError("graph subgroup order differs from source order")

    def __repr__(self) -> str:
        return f"<Homomorphism {self.name or ''} {self.source!r} -> {self.target!r}>"

    def graph_order(self) -> int:
        return self._graph.order()

    def __call__(self, g) -> np.ndarray:
        g = np.asarray(g, dtype=K.PERM_DTYPE)
        n, m = self.source.degree, self.target.degree
        a = np.empty(n + m, dtype=K.PERM_DTYPE)
        a[:n] = g
        a[n:] = np.arange(n, n + m)
        res, j = self._graph.strip(a)
        if j < len(self._graph.levels) or not np.array_equal(res[:n], np.arange(n)):
            raise MembershipError("element is not in the source group")
        return P.inv(res[n:] - n).astype(K.PERM_DTYPE)

    def map_many(self, rows: np.ndarray) -> np.ndarray:
        return P.stack((self(r) for r in rows), self.target.degree)

    @cached_property
    def image(self) -> Subgroup:
        return Subgroup(self.target, self.images, name="im", check=False)

    def is_surjective(self) -> bool:
        return self.image.order() == self.target.order()

    @cached_property
    def _kernel_chain(self) -> StabChain:
        n, m = self.source.degree, self.target.degree
        return StabChain(n + m, _graph_gens(self.source, self.target, self.images), base_prefix=range(n, n + m))

    @cached_property
    def kernel(self) -> Subgroup:
        n, m = self.source.degree, self.target.degree
        gens = [s[:n] for s in self._kernel_chain.stabilizer_gens(m)]
        return Subgroup(self.source, gens, name="ker", check=False)

    def lift(self, h) -> np.ndarray:
        """Some source element mapping to h (h must lie in the image)."""
        n, m = self.source.degree, self.target.degree
        a = np.empty(n + m, dtype=K.PERM_DTYPE)
        a[:n] = np.arange(n)
        a[n:] = np.asarray(h) + n
        res, _ = self._kernel_chain.strip(a, stop=m)
        if not np.array_equal(res[n:], np.arange(n, n + m)):
            raise MembershipError("element is not in the image")
        return P.inv(res[:n]).astype(K.PERM_DTYPE)

    def map_subgroup(self, H: FiniteGroup) -> Subgroup:
        return Subgroup(self.target, [self(g) for g in H.generators], check=False)

    def preimage(self, M: FiniteGroup) -> Subgroup:
        gens = list(self.kernel.generators) + [self.lift(h) for h in M.generators]
        return Subgroup(self.source, gens, check=False)


def hom_from_images(source: FiniteGroup, target: FiniteGroup, images: Sequence, *, name: str | None = None) -> Homomorphism:
    return Homomorphism(source, target, images, name=name)


def identity_hom(G: FiniteGroup) -> Homomorphism:
    return Homomorphism(G, G, list(G.generators), name="id")


def compose(f: Homomorphism, g: Homomorphism) -> Homomorphism:
    """x -> g(f(x))."""
    return Homomorphism(f.source, g.target, [g(f(x)) for x in f.source.generators])


# ---------------------------------------------------------------------------
# normality and quotients
# ---------------------------------------------------------------------------


def is_normal(G: FiniteGroup, N: FiniteGroup) -> bool:
    if not all(h in G for h in N.generators):
        return False
    return all(P.conj(h, g) in N for h in N.generators for g in G.generators)


def _coset_labels_rows(G: FiniteGroup, N: FiniteGroup) -> np.ndarray:
    E = G.elements
    labels = np.arange(len(E), dtype=np.int64)
    for nn in N.elements:
        labels = np.minimum(labels, G.index_of(E[:, nn]))
    _, labels = np.unique(labels, return_inverse=True)
    return labels


def _coset_action_bfs(G: FiniteGroup, N: FiniteGroup) -> list[np.ndarray]:
    index = G.order() // N.order()
    if index > caps().index:
        raise CapExceeded(f"index {index} exceeds cap {caps().index}")
    reps = [G.identity]
    images: list[list[int]] = [[] for _ in G.generators]
    for c, r in enumerate(reps):
        for k, x in enumerate(G.generators):
            y = P.mul(r, x)
            for d, s in enumerate(reps):
                if P.mul(y, P.inv(s)) in N:
                    images[k].append(d)
                    break
            else:
                images[k].append(len(reps))
                reps.append(y)
    return [np.array(im, dtype=K.PERM_DTYPE) for im in images]


def quotient(G: FiniteGroup, N: FiniteGroup, *, name: str | None = None) -> tuple[FiniteGroup, Homomorphism]:
    """G/N as a permutation group on the cosets of N, with the canonical projection.

    Cosets are numbered by their first element in the canonical element order,
    so the coset N itself is point 0.
    """
    if not is_normal(G, N):
        raise NotNormalError("subgroup is not normal in the group")
    label = name or f"{G.name or 'G'}/{N.name or 'N'}"
    if N.order() == 1:
        Q = FiniteGroup(G.degree, G.generators, name=label, matrix=G.matrix)
        return Q, Homomorphism(G, Q, list(G.generators), name="proj")
    index = G.order() // N.order()
    if index == 1:
        Q = FiniteGroup(1, [], name=label)
        return Q, Homomorphism(G, Q, [Q.identity] * len(G.generators), name="proj")

    if G.order() <= caps().enumeration and G.has_table():
        labels = K.coset_labels(G.table, np.flatnonzero(G.mask_of(N)))
        gens_idx = G.index_of(G.gens_matrix())
        reps = np.full(index, -1, dtype=np.int64)
        for i in range(len(labels) - 1, -1, -1):
            reps[labels[i]] = i
        images = [labels[G.table[reps, j]].astype(K.PERM_DTYPE) for j in gens_idx]
    elif G.order() <= caps().enumeration and G.order() * N.order() <= 50_000_000:
        labels = _coset_labels_rows(G, N)
        E = G.elements
        first = np.full(index, -1, dtype=np.int64)
        for i in range(len(labels) - 1, -1, -1):
            first[labels[i]] = i
        images = [labels[G.index_of(x[E[first]])].astype(K.PERM_DTYPE) for x in G.generators]
    else:
        images = _coset_action_bfs(G, N)
    Q = FiniteGroup(index, images, name=label)
    return Q, Homomorphism(G, Q, images, name="proj")

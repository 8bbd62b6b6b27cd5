"""Hot inner loops, in two interchangeable flavours.

Every kernel exists as a numba ``@njit`` function (suffix ``_nb``) and as a
pure-numpy function (suffix ``_np``).  The public name is bound to one of them
at import time.  Set ``FRATTINI_LAB_NUMBA=0`` to force the numpy path; it is
also used automatically when numba cannot be imported.

Conventions shared with the rest of the package: a permutation of degree n is
an int32 array ``a`` with ``a[x]`` the image of point ``x``; the product
``a * b`` applies ``a`` first, so as an array it is ``b[a]``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

USE_NUMBA = _HAVE_NUMBA and os.environ.get("FRATTINI_LAB_NUMBA", "1").lower() not in ("0", "false", "no", "off")

PERM_DTYPE = np.int32


def row_view(rows: np.ndarray) -> np.ndarray:
    """View each row of a 2-D array as one opaque void scalar (for sort/unique/searchsorted)."""
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


# ---------------------------------------------------------------------------
# closure enumeration: all elements of <gens>, breadth first from the identity
# ---------------------------------------------------------------------------


def closure_rows_np(gens: np.ndarray, cap: int) -> np.ndarray | None:
    k, n = gens.shape
    ident = np.arange(n, dtype=PERM_DTYPE)[None, :]
    seen = row_view(ident).copy()
    found = [ident]
    frontier = ident
    while len(frontier):
        cand = np.concatenate([g[frontier] for g in gens]) if k else frontier[:0]
        if not len(cand):
            break
        cv = row_view(cand)
        _, first = np.unique(cv, return_index=True)
        first.sort()
        cand, cv = cand[first], cv[first]
        pos = np.searchsorted(seen, cv)
        pos[pos == len(seen)] = 0
        new = seen[pos] != cv
        frontier = cand[new]
        if not len(frontier):
            break
        found.append(frontier)
        total = sum(len(f) for f in found)
        if total > cap:
            return None
        seen = np.sort(np.concatenate([seen, cv[new]]))
    return np.concatenate(found)


if _HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _row_hash(row):
        h = np.uint64(14695981039346656037)
        for v in row:
            h ^= np.uint64(v)
            h *= np.uint64(1099511628211)
        return h

    @njit(cache=True, nogil=True)
    def _closure_rows_nb(gens, cap):
        k, n = gens.shape
        size = 256
        buf = np.empty((size, n), np.int32)
        for i in range(n):
            buf[0, i] = i
        tsize = 1024
        table = np.full(tsize, -1, np.int64)
        table[_row_hash(buf[0]) & np.uint64(tsize - 1)] = 0
        count = 1
        head = 0
        tmp = np.empty(n, np.int32)
        while head < count:
            for g in range(k):
                for i in range(n):
                    tmp[i] = gens[g, buf[head, i]]
                slot = _row_hash(tmp) & np.uint64(tsize - 1)
                found = False
                while table[slot] >= 0:
                    j = table[slot]
                    same = True
                    for i in range(n):
                        if buf[j, i] != tmp[i]:
                            same = False
                            break
                    if same:
                        found = True
                        break
                    slot = (slot + np.uint64(1)) & np.uint64(tsize - 1)
                if found:
                    continue
                if count >= cap:
                    return buf[:0], False
                if count == size:
                    size *= 2
                    nbuf = np.empty((size, n), np.int32)
                    nbuf[:count] = buf[:count]
                    buf = nbuf
                buf[count] = tmp
                table[slot] = count
                count += 1
                if 2 * count > tsize:
                    tsize *= 4
                    table = np.full(tsize, -1, np.int64)
                    for j in range(count):
                        s = _row_hash(buf[j]) & np.uint64(tsize - 1)
                        while table[s] >= 0:
                            s = (s + np.uint64(1)) & np.uint64(tsize - 1)
                        table[s] = j
            head += 1
        return buf[:count].copy(), True

    def closure_rows_nb(gens: np.ndarray, cap: int) -> np.ndarray | None:
        gens = np.ascontiguousarray(gens, dtype=np.int32)
        if gens.shape[0] == 0:
            return np.arange(gens.shape[1], dtype=np.int32)[None, :]
        rows, ok = _closure_rows_nb(gens, cap)
        return rows if ok else None

    # -----------------------------------------------------------------------

    @njit(cache=True, nogil=True)
    def table_closure_nb(table, gens):
        m = table.shape[0]
        mask = np.zeros(m, np.bool_)
        queue = np.empty(m, np.int64)
        mask[0] = True
        queue[0] = 0
        head = 0
        tail = 1
        while head < tail:
            a = queue[head]
            head += 1
            for g in gens:
                b = table[a, g]
                if not mask[b]:
                    mask[b] = True
                    queue[tail] = b
                    tail += 1
        return mask

    @njit(cache=True, nogil=True)
    def coset_labels_nb(table, sub):
        m = table.shape[0]
        labels = np.full(m, -1, np.int64)
        nxt = 0
        for g in range(m):
            if labels[g] >= 0:
                continue
            for h in sub:
                labels[table[h, g]] = nxt
            nxt += 1
        return labels

    @njit(cache=True, nogil=True)
    def commuting_mask_nb(elements, perms):
        m, n = elements.shape
        out = np.ones(m, np.bool_)
        for e in range(m):
            for p in range(perms.shape[0]):
                for x in range(n):
                    # (e*p)[x] = p[e[x]] ; (p*e)[x] = e[p[x]]
                    if perms[p, elements[e, x]] != elements[e, perms[p, x]]:
                        out[e] = False
                        break
                if not out[e]:
                    break
        return out


def table_closure_np(table: np.ndarray, gens: np.ndarray) -> np.ndarray:
    mask = np.zeros(table.shape[0], dtype=bool)
    mask[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    gens = np.asarray(gens, dtype=np.int64)
    while len(frontier) and len(gens):
        cand = np.unique(table[np.ix_(frontier, gens)])
        frontier = cand[~mask[cand]]
        mask[frontier] = True
    return mask


def coset_labels_np(table: np.ndarray, sub: np.ndarray) -> np.ndarray:
    # right coset Hg = table[sub, g]; first element (lowest index) names the coset
    rep = table[np.asarray(sub, dtype=np.int64), :].min(axis=0)
    _, labels = np.unique(rep, return_inverse=True)
    return labels.astype(np.int64)


def commuting_mask_np(elements: np.ndarray, perms: np.ndarray) -> np.ndarray:
    out = np.ones(len(elements), dtype=bool)
    for p in perms:
        out &= (p[elements] == elements[:, p]).all(axis=1)
    return out


if USE_NUMBA:
    closure_rows = closure_rows_nb

    def table_closure(table: np.ndarray, gens) -> np.ndarray:
        return table_closure_nb(table, np.asarray(gens, dtype=np.int64))

    def coset_labels(table: np.ndarray, sub) -> np.ndarray:
        return coset_labels_nb(table, np.asarray(sub, dtype=np.int64))

    def commuting_mask(elements: np.ndarray, perms: np.ndarray) -> np.ndarray:
        return commuting_mask_nb(np.ascontiguousarray(elements), np.ascontiguousarray(perms, dtype=elements.dtype))

else:
    closure_rows = closure_rows_np
    table_closure = table_closure_np
    coset_labels = coset_labels_np
    commuting_mask = commuting_mask_np


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"

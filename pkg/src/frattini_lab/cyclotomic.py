"""Exact arithmetic in Z[zeta_p] and reduction modulo split primes.

Elements are integer coefficient vectors in the power basis 1, z, ..., z^(p-2),
where z^(p-1) = -(1 + z + ... + z^(p-2)).  Coefficients are Python ints, so
there is no overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionError
from .groups import is_prime


def check_p(p: int, strict: bool = False) -> None:
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ValueError(f"p={p} must be an odd prime")
    if strict and p % 4 != 3:
        raise ValueError(f"p={p} is not 3 mod 4")


def _fold(p: int, raw: Sequence[int]) -> tuple[int, ...]:
    """Reduce a coefficient list of any length to canonical form (z^p = 1, then drop z^(p-1))."""
    full = [0] * p
    for i, c in enumerate(raw):
        full[i % p] += int(c)
    top = full[p - 1]
    return tuple(c - top for c in full[: p - 1])


@dataclass(frozen=True)
class CycloInt:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError(f"need {self.p - 1} coefficients, got {len(self.coeffs)}")

    # constructors
    @classmethod
    def from_int(cls, p: int, c: int) -> "CycloInt":
        return cls(p, (int(c),) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycloInt":
        raw = [0] * p
        raw[k % p] = 1
        return cls(p, _fold(p, raw))

    # ring operations
    def _coerce(self, other) -> "CycloInt":
        if isinstance(other, int):
            return CycloInt.from_int(self.p, other)
        if not isinstance(other, CycloInt):
            return NotImplemented
        if other.p != self.p:
            raise ValueError(f"mismatched p: {self.p} vs {other.p}")
        return other

    def __add__(self, other) -> "CycloInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloInt":
        return CycloInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycloInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "CycloInt":
        return (-self) + other

    def __mul__(self, other) -> "CycloInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        raw = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        raw[(i + j) % p] += a * b
        return CycloInt(p, _fold(p, raw))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycloInt":
        if k < 0:
            raise ValueError("negative powers are not defined in Z[zeta_p]")
        out = CycloInt.from_int(self.p, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, k: int) -> "CycloInt":
        """Image under the automorphism z -> z^k (k prime to p)."""
        if k % self.p == 0:
            raise ValueError("k must be prime to p")
        raw = [0] * self.p
        for i, c in enumerate(self.coeffs):
            raw[(i * k) % self.p] += c
        return CycloInt(self.p, _fold(self.p, raw))

    def conjugate(self) -> "CycloInt":
        return self.galois(-1)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_int(self) -> bool:
        return not any(self.coeffs[1:])

    def norm(self) -> int:
        """Field norm: product of all Galois conjugates (a rational integer)."""
        out = self
        for k in range(2, self.p):
            out = out * self.galois(k)
        if not out.is_int():  # pragma: no cover - algebraic identity
            raise ArithmeticError("norm is not rational")
        return out.coeffs[0]

    def exact_div(self, other: "CycloInt") -> "CycloInt":
        """self / other, which must be exact in Z[zeta_p]."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Z[zeta_p]")
        co = CycloInt.from_int(self.p, 1)
        for k in range(2, self.p):
            co = co * other.galois(k)
        num = self * co
        den = (other * co).coeffs[0]
        if any(c % den for c in num.coeffs):
            raise ArithmeticError("division is not exact in Z[zeta_p]")
        return CycloInt(self.p, tuple(c // den for c in num.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_int() and self.coeffs[0] == other
        if isinstance(other, CycloInt):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"CycloInt(p={self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return " + ".join(terms) or "0"


def cyclo_normalize(p: int, raw: Iterable[int], *, strict: bool = False) -> CycloInt:
    """Canonical form of sum raw[i] z^i; raw may have any length (powers are taken mod p)."""
    check_p(p, strict)
    return CycloInt(p, _fold(p, list(raw)))


def cyclo_add(a: CycloInt, b: CycloInt) -> CycloInt:
    return a + b


def cyclo_neg(a: CycloInt) -> CycloInt:
    return -a


def cyclo_mul(a: CycloInt, b: CycloInt) -> CycloInt:
    return a * b


def cyclo_conjugate(a: CycloInt) -> CycloInt:
    return a.conjugate()


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycloMatrix:
    p: int
    rows: tuple[tuple[CycloInt, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for r in self.rows:
            if len(r) != n:
                raise ValueError("matrix is not square")
            for e in r:
                if e.p != self.p:
                    raise ValueError("entries with mismatched p")

    @property
    def N(self) -> int:
        return len(self.rows)

    @classmethod
    def from_entries(cls, p: int, entries) -> "CycloMatrix":
        """Entries may be CycloInt, ints, or coefficient lists."""

        def conv(e):
            if isinstance(e, CycloInt):
                return e
            if isinstance(e, int):
                return CycloInt.from_int(p, e)
            return cyclo_normalize(p, e)

        return cls(p, tuple(tuple(conv(e) for e in row) for row in entries))

    @classmethod
    def identity(cls, p: int, N: int) -> "CycloMatrix":
        return cls.from_entries(p, [[1 if i == j else 0 for j in range(N)] for i in range(N)])

    @classmethod
    def diag(cls, p: int, entries) -> "CycloMatrix":
        N = len(entries)
        zero = CycloInt.from_int(p, 0)
        d = [CycloInt.from_int(p, e) if isinstance(e, int) else e for e in entries]
        return cls(p, tuple(tuple(d[i] if i == j else zero for j in range(N)) for i in range(N)))

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        if self.p != other.p or self.N != other.N:
            raise ValueError("incompatible matrices")
        n = self.N
        zero = CycloInt.from_int(self.p, 0)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(tuple(row))
        return CycloMatrix(self.p, tuple(out))

    def conjugate_transpose(self) -> "CycloMatrix":
        n = self.N
        return CycloMatrix(self.p, tuple(tuple(self.rows[j][i].conjugate() for j in range(n)) for i in range(n)))

    def det(self) -> CycloInt:
        return det_bareiss(self)

    def coeff_lists(self) -> list[list[list[int]]]:
        return [[list(e.coeffs) for e in row] for row in self.rows]


def det_bareiss(M: CycloMatrix) -> CycloInt:
    """Fraction-free Gaussian elimination; each division is exact in Z[zeta_p]."""
    n = M.N
    p = M.p
    if n == 0:
        return CycloInt.from_int(p, 1)
    A = [list(r) for r in M.rows]
    sign = 1
    prev = CycloInt.from_int(p, 1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not A[r][k].is_zero()), None)
            if swap is None:
                return CycloInt.from_int(p, 0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


@dataclass(frozen=True)
class HermitianForm:
    matrix: CycloMatrix

    def __post_init__(self):
        if self.matrix.conjugate_transpose() != self.matrix:
            raise ValueError("form is not Hermitian")

    @property
    def p(self) -> int:
        return self.matrix.p

    @property
    def N(self) -> int:
        return self.matrix.N


def unitary_special_check(M: CycloMatrix, H: HermitianForm | None) -> dict:
    if H is not None and (H.N != M.N or H.p != M.p):
        raise ValueError("dimension or p mismatch between matrix and form")
    special = M.det() == 1
    unitary = None
    if H is not None:
        unitary = (M.conjugate_transpose() @ H.matrix @ M) == H.matrix
    return {"special": special, "unitary": unitary}


# ---------------------------------------------------------------------------
# split primes and reduction maps
# ---------------------------------------------------------------------------


def is_split_prime(p: int, q: int) -> bool:
    """q splits completely in Z[zeta_p] iff q = 1 mod p."""
    if not (is_prime(p) and is_prime(q)):
        raise ValueError("p and q must be prime")
    if p == q:
        raise ValueError("q must differ from p")
    return q % p == 1


def multiplicative_order(r: int, q: int) -> int:
    r %= q
    if r == 0:
        raise ValueError("0 has no multiplicative order")
    k, x = 1, r
    while x != 1:
        x = x * r % q
        k += 1
    return k


@dataclass(frozen=True)
class ReductionMap:
    """Z[zeta_p] -> F_q sending zeta_p to r, a residue of multiplicative order p."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        if self.q % self.p != 1:
            raise PreconditionError(f"q={self.q} does not split in Z[zeta_{self.p}]")
        if pow(self.r, self.p, self.q) != 1 or self.r % self.q == 1:
            raise PreconditionError(f"r={self.r} does not have order {self.p} mod {self.q}")

    def __call__(self, a: CycloInt | int) -> int:
        if isinstance(a, int):
            return a % self.q
        if a.p != self.p:
            raise ValueError("mismatched p")
        out = 0
        rk = 1
        for c in a.coeffs:
            out = (out + c * rk) % self.q
            rk = rk * self.r % self.q
        return out

    def inverse_frobenius(self) -> "ReductionMap":
        """The map sending zeta to r^-1 (the conjugate prime ideal)."""
        return ReductionMap(self.p, self.q, pow(self.r, -1, self.q))


def make_reduction_map(p: int, q: int) -> ReductionMap:
    """Reduction with r the smallest residue of order exactly p mod q."""
    check_p(p)
    if not is_split_prime(p, q):
        raise PreconditionError(f"q={q} does not split completely in Z[zeta_{p}]")
    for r in range(2, q):
        if pow(r, p, q) == 1:
            return ReductionMap(p, q, r)
    raise AssertionError("unreachable: a split prime has elements of order p")  # pragma: no cover


def reduce_matrix(M: CycloMatrix, pi: ReductionMap) -> list[list[int]]:
    if M.p != pi.p:
        raise ValueError("mismatched p")
    return [[pi(e) for e in row] for row in M.rows]

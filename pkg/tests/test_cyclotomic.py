import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from frattini_lab.cyclotomic import (
    CycloInt,
    CycloMatrix,
    HermitianForm,
    ReductionMap,
    check_p,
    cyclo_add,
    cyclo_conjugate,
    cyclo_mul,
    cyclo_neg,
    cyclo_normalize,
    det_bareiss,
    is_split_prime,
    make_reduction_map,
    multiplicative_order,
    reduce_matrix,
    unitary_special_check,
)
from frattini_lab.errors import PreconditionError
from frattini_lab.groups import det_mod

import oracles

PRIMES = [3, 5, 7, 11]


def cyclo(p, max_coeff=5):
    return st.lists(st.integers(-max_coeff, max_coeff), min_size=p - 1, max_size=p - 1).map(lambda c: CycloInt(p, tuple(c)))


any_pair = st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(cyclo(p), cyclo(p)))


def z(p, k=1):
    return CycloInt.zeta(p, k)


def test_normalize_examples():
    assert cyclo_normalize(7, [0, 0, 0, 0, 0, 0, 1]).coeffs == (-1,) * 6
    assert cyclo_normalize(7, [3]).coeffs == (3, 0, 0, 0, 0, 0)
    raw = [0] * 11
    raw[10] = raw[1] = 1
    assert cyclo_normalize(11, raw).coeffs == (-1, 0) + (-1,) * 8


def test_multiplication_examples():
    for p in PRIMES:
        assert (z(p) * z(p, p - 2)).coeffs == (-1,) * (p - 1)
    one_plus = CycloInt.from_int(7, 1) + z(7)
    one_minus = CycloInt.from_int(7, 1) - z(7)
    assert cyclo_mul(one_plus, one_minus).coeffs == (1, 0, -1, 0, 0, 0)


def test_conjugate_examples():
    assert cyclo_conjugate(CycloInt.from_int(7, 4)) == 4
    real = z(7) + z(7, -1)
    assert real.conjugate() == real
    assert z(7).conjugate().coeffs == (-1,) * 6


def test_strict_mode():
    check_p(7, strict=True)
    check_p(5)
    with pytest.raises(ValueError):
        check_p(5, strict=True)
    for bad in (2, 9, 1):
        with pytest.raises(ValueError):
            check_p(bad)


def test_mismatched_p():
    with pytest.raises(ValueError):
        z(5) + z(7)


@given(any_pair)
def test_against_complex_embedding(pair):
    a, b = pair
    p = a.p
    va, vb = oracles.cyclo_value(a.coeffs, p), oracles.cyclo_value(b.coeffs, p)
    assert abs(oracles.cyclo_value((a * b).coeffs, p) - va * vb) < 1e-6 * (1 + abs(va * vb))
    assert abs(oracles.cyclo_value((a + b).coeffs, p) - (va + vb)) < 1e-9 * (1 + abs(va) + abs(vb))
    assert abs(oracles.cyclo_value(a.conjugate().coeffs, p) - va.conjugate()) < 1e-9 * (1 + abs(va))


@given(any_pair)
def test_ring_axioms(pair):
    a, b = pair
    assert cyclo_add(a, b) == cyclo_add(b, a)
    assert cyclo_mul(a, b) == cyclo_mul(b, a)
    assert cyclo_add(a, cyclo_neg(a)).is_zero()
    assert a * 1 == a
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert cyclo_normalize(a.p, list(a.coeffs)) == a


@given(any_pair)
def test_norm_and_exact_division(pair):
    a, b = pair
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a
    assert (a * b).norm() == a.norm() * b.norm()
    p = a.p
    prod = 1
    for k in range(1, p):
        prod *= oracles.cyclo_value(a.galois(k).coeffs, p)
    assert abs(prod - a.norm()) < 1e-6 * (1 + abs(a.norm()))


def test_split_primes():
    assert is_split_prime(7, 29) and is_split_prime(5, 11)
    assert not is_split_prime(7, 13)
    with pytest.raises(ValueError):
        is_split_prime(7, 15)
    with pytest.raises(ValueError):
        is_split_prime(7, 7)


def test_reduction_map_choice():
    assert make_reduction_map(5, 11).r == 3
    assert make_reduction_map(7, 29).r == 7
    with pytest.raises(PreconditionError):
        make_reduction_map(7, 13)
    with pytest.raises(PreconditionError):
        ReductionMap(5, 11, 1)


@pytest.mark.parametrize("p,q", [(3, 7), (3, 13), (5, 11), (5, 31), (7, 29), (7, 43), (11, 23)])
def test_reduction_is_ring_hom(p, q):
    pi = make_reduction_map(p, q)
    assert pow(pi.r, p, q) == 1 and pi.r != 1 and multiplicative_order(pi.r, q) == p
    assert pi(z(p)) == pi.r
    rng = random.Random(p * 1000 + q)
    for _ in range(1000):
        a = CycloInt(p, tuple(rng.randint(-50, 50) for _ in range(p - 1)))
        b = CycloInt(p, tuple(rng.randint(-50, 50) for _ in range(p - 1)))
        assert pi(a + b) == (pi(a) + pi(b)) % q
        assert pi(a * b) == pi(a) * pi(b) % q
        # conjugating then reducing is reducing through the other prime
        assert pi(a.conjugate()) == pi.inverse_frobenius()(a)
    assert pi(17) == 17 % q


def _random_matrix(rng, p, n):
    return CycloMatrix.from_entries(p, [[[rng.randint(-2, 2) for _ in range(p - 1)] for _ in range(n)] for _ in range(n)])


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (5, 3), (7, 3), (3, 4)])
def test_determinant_multiplicative_and_reduces(p, n):
    rng = random.Random(p * 10 + n)
    q = next(q for q in range(p + 1, 200) if q % p == 1 and all(q % d for d in range(2, q)))
    pi = make_reduction_map(p, q)
    for _ in range(10):
        A, B = _random_matrix(rng, p, n), _random_matrix(rng, p, n)
        assert det_bareiss(A @ B) == det_bareiss(A) * det_bareiss(B)
        red = reduce_matrix(A, pi)
        assert det_mod(np.array(red), q) == pi(A.det())


def test_reduce_matrix_example():
    pi = make_reduction_map(5, 11)
    M = CycloMatrix.diag(5, [z(5), z(5, 4)])
    assert reduce_matrix(M, pi) == [[3, 0], [0, 4]]
    assert reduce_matrix(CycloMatrix.identity(5, 2), pi) == [[1, 0], [0, 1]]


def test_unitary_special_examples():
    H = HermitianForm(CycloMatrix.identity(7, 2))
    assert unitary_special_check(CycloMatrix.identity(7, 2), H) == {"special": True, "unitary": True}
    assert unitary_special_check(CycloMatrix.diag(7, [z(7), z(7, -1)]), H) == {"special": True, "unitary": True}
    assert unitary_special_check(CycloMatrix.diag(7, [2, 1]), H) == {"special": False, "unitary": False}
    assert unitary_special_check(CycloMatrix.identity(7, 2), None)["unitary"] is None
    with pytest.raises(ValueError):
        unitary_special_check(CycloMatrix.identity(7, 3), H)


def test_hermitian_validation():
    with pytest.raises(ValueError):
        HermitianForm(CycloMatrix.from_entries(7, [[1, [0, 1, 0, 0, 0, 0]], [[0, 1, 0, 0, 0, 0], 1]]))


def test_exact_division_failure():
    with pytest.raises(ArithmeticError):
        CycloInt.from_int(5, 1).exact_div(CycloInt.from_int(5, 2))
    with pytest.raises(ZeroDivisionError):
        z(5).exact_div(CycloInt.from_int(5, 0))

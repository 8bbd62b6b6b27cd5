import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frattini_lab import perm as P
from frattini_lab.errors import HomomorphismError, MembershipError, NotNormalError
from frattini_lab.groups import FiniteGroup, Subgroup, alternating_group, cyclic_group, direct_product, symmetric_group
from frattini_lab.homs import Homomorphism, compose, identity_hom, is_normal, quotient
from frattini_lab.lattice import all_subgroups
from frattini_lab.structure import (
    center,
    centralizer,
    commutator_subgroup,
    commutator_subgroup_scan,
    conjugacy_classes,
    intersection,
    is_nilpotent,
    is_simple,
    lower_central_series,
    minimal_normal_subgroups,
    normal_closure,
    normal_core,
    socle_semisimple_check,
)

import oracles

small_groups = st.integers(2, 5).flatmap(lambda n: st.lists(st.permutations(range(n)), min_size=1, max_size=2)).map(
    lambda gens: FiniteGroup(len(gens[0]), gens)
)


def test_sign_homomorphism():
    S3 = symmetric_group(3)
    Z2 = cyclic_group(2)
    sign = Homomorphism(S3, Z2, [Z2.identity if P.perm_order(g) == 3 else Z2.generators[0] for g in S3.generators])
    assert sign.is_surjective()
    assert sign.kernel.order() == 3
    assert sign.graph_order() == 6


def test_non_homomorphism_rejected_with_witness():
    S3 = symmetric_group(3)
    Z3 = cyclic_group(3)
    with pytest.raises(HomomorphismError) as err:
        Homomorphism(S3, Z3, [Z3.generators[0], Z3.generators[0]])
    assert err.value.witness is not None


def test_wrong_image_count():
    with pytest.raises(HomomorphismError):
        Homomorphism(symmetric_group(3), cyclic_group(2), [])


def test_lift_and_preimage():
    S4 = symmetric_group(4)
    V4 = Subgroup(S4, ["(1 2)(3 4)", "(1 3)(2 4)"])
    Q, proj = quotient(S4, V4)
    assert Q.order() == 6
    assert proj.kernel.order() == 4
    for h in Q.elements:
        assert np.array_equal(proj(proj.lift(h)), h)
    pre = proj.preimage(Subgroup(Q, [Q.elements[1]]))
    assert pre.order() == 4 * P.perm_order(Q.elements[1])


def test_lift_outside_image():
    Z4 = cyclic_group(4)
    f = Homomorphism(Z4, Z4, [P.power(Z4.generators[0], 2)])
    with pytest.raises(MembershipError):
        f.lift(Z4.generators[0])


def test_quotient_requires_normal():
    S3 = symmetric_group(3)
    with pytest.raises(NotNormalError):
        quotient(S3, Subgroup(S3, ["(1 2)"]))


def test_quotient_edge_cases():
    A5 = alternating_group(5)
    Q, proj = quotient(A5, A5.trivial_subgroup())
    assert Q.order() == 60 and proj.kernel.order() == 1
    Q, proj = quotient(A5, A5.whole())
    assert Q.order() == 1


@settings(max_examples=40)
@given(small_groups, st.data())
def test_quotient_multiplicativity_and_hom_soundness(G, data):
    normals = all_subgroups(G).normal_subgroups()
    N = data.draw(st.sampled_from(normals))
    Q, proj = quotient(G, N)
    assert Q.order() * N.order() == G.order()
    assert proj.kernel.order() == N.order()
    assert proj.image.order() * proj.kernel.order() == G.order()
    E = G.elements
    for _ in range(5):
        i, j = data.draw(st.integers(0, len(E) - 1)), data.draw(st.integers(0, len(E) - 1))
        assert np.array_equal(proj(P.mul(E[i], E[j])), P.mul(proj(E[i]), proj(E[j])))


@settings(max_examples=40)
@given(small_groups)
def test_lagrange(G):
    for H in all_subgroups(G).subgroups:
        assert G.order() % H.order() == 0


def test_compose_and_identity():
    S4 = symmetric_group(4)
    V4 = Subgroup(S4, ["(1 2)(3 4)", "(1 3)(2 4)"])
    _, proj = quotient(S4, V4)
    c = compose(identity_hom(S4), proj)
    assert c.kernel.order() == 4


def test_normal_closure_and_core():
    S4 = symmetric_group(4)
    assert normal_closure(S4, [P.parse_cycles("(1 2)(3 4)", 4)]).order() == 4
    assert normal_closure(S4, [P.parse_cycles("(1 2)", 4)]).order() == 24
    assert normal_core(S4, Subgroup(S4, ["(1 2 3 4)", "(1 3)"])).order() == 4
    assert normal_core(S4, Subgroup(S4, ["(1 2)"])).order() == 1


def _oracle(G):
    gens = [tuple(g) for g in G.generators]
    return oracles.closure(gens, G.degree)


@pytest.mark.parametrize("name", ["q8", "d8", "s3", "a4", "s4", "sl23", "s3xz5", "a5"])
def test_center_and_derived_against_scans(group, name):
    G = group(name)
    elements = {tuple(e) for e in G.elements.tolist()}
    assert center(G).order() == len(oracles.center(elements))
    assert commutator_subgroup(G).order() == len(oracles.derived(elements, G.degree))
    assert commutator_subgroup(G).same_as(commutator_subgroup_scan(G))


def test_centralizer_of_a5_in_s5():
    S5 = symmetric_group(5)
    assert centralizer(S5, Subgroup(S5, alternating_group(5).generators)).order() == 1


def test_nilpotency():
    Q8 = FiniteGroup(8, ["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"])
    res = is_nilpotent(Q8)
    assert res.nilpotent and res.orders == [8, 2, 1]
    S3 = symmetric_group(3)
    res = is_nilpotent(S3)
    assert not res.nilpotent and res.orders == [6, 3]
    assert [H.order() for H in lower_central_series(S3)] == [6, 3]


@pytest.mark.parametrize("name,classes", [("s4", 5), ("a5", 5), ("q8", 5), ("sl23", 7), ("s5", 7), ("psl27", 6)])
def test_class_counts(group, name, classes):
    assert conjugacy_classes(group(name)).max() + 1 == classes


def test_simplicity_and_socle():
    A5, S5 = alternating_group(5), symmetric_group(5)
    assert is_simple(A5) and not is_simple(S5) and not is_simple(FiniteGroup(1, []))
    chk = socle_semisimple_check(direct_product(A5, A5))
    assert chk.is_product_of_nonabelian_simples and len(chk.factors) == 2
    z2 = socle_semisimple_check(cyclic_group(2))
    assert z2.is_simple and not z2.is_product_of_nonabelian_simples
    assert socle_semisimple_check(FiniteGroup(1, [])).is_product_of_nonabelian_simples
    assert not socle_semisimple_check(S5).is_product_of_nonabelian_simples
    assert [M.order() for M in minimal_normal_subgroups(S5)] == [60]


def test_intersection():
    S4 = symmetric_group(4)
    A4 = Subgroup(S4, alternating_group(4).generators)
    D8 = Subgroup(S4, ["(1 2 3 4)", "(1 3)"])
    assert intersection(S4, A4, D8).order() == 4
    assert is_normal(S4, intersection(S4, A4, D8))

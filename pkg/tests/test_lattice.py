import pytest

from frattini_lab.config import override_caps
from frattini_lab.errors import CapExceeded, PreconditionError
from frattini_lab.groups import FiniteGroup, Subgroup, alternating_group, symmetric_group
from frattini_lab.lattice import (
    all_subgroups,
    frattini,
    frattini_upper_bound,
    is_maximal,
    maximal_point_stabilizers,
    maximal_subgroups,
    point_stabilizer,
)

# Frozen from tests/oracles.py (closure of every pair of elements, plain Python
# sets).  z2xa5 has five 3-generated subgroups Z2 x V4 that the pair oracle
# cannot see: 159 + 5.  psl27 is too large for the oracle; 179 is the
# classical count.
LATTICE = {
    "trivial": (1, 1, []),
    "z4": (3, 2, [2]),
    "z6": (4, 1, [2, 3]),
    "z8": (4, 4, [4]),
    "z12": (6, 2, [4, 6]),
    "z16": (5, 8, [8]),
    "v4": (5, 1, [2, 2, 2]),
    "q8": (6, 2, [4, 4, 4]),
    "d8": (10, 2, [4, 4, 4]),
    "s3": (6, 1, [2, 2, 2, 3]),
    "a4": (10, 1, [3, 3, 3, 3, 4]),
    "s4": (30, 1, [6, 6, 6, 6, 8, 8, 8, 12]),
    "sl23": (15, 2, [6, 6, 6, 6, 8]),
    "s3xz5": (12, 1, [6, 10, 10, 10, 15]),
    "a5": (59, 1, [6] * 10 + [10] * 6 + [12] * 5),
    "s5": (156, 1, [12] * 10 + [20] * 6 + [24] * 5 + [60]),
    "z2xa5": (159 + 5, 1, [12] * 10 + [20] * 6 + [24] * 5 + [60]),
    "psl27": (179, 1, None),
}


@pytest.mark.parametrize("name", sorted(LATTICE))
def test_lattice_against_frozen_oracle(group, name):
    G = group(name)
    count, phi, maxes = LATTICE[name]
    lat = all_subgroups(G)
    assert len(lat) == count
    assert frattini(G).order() == phi
    if maxes is not None:
        assert sorted(M.order() for M in maximal_subgroups(G)) == maxes


@pytest.mark.parametrize("name", ["s4", "a5", "q8", "sl23"])
def test_maximal_flags_agree_with_coset_scan(group, name):
    G = group(name)
    lat = all_subgroups(G)
    for H, flag in zip(lat.subgroups, lat.maximal):
        assert is_maximal(G, H) == flag


def test_frattini_of_trivial_is_trivial():
    assert frattini(FiniteGroup(1, [])).order() == 1


def test_lattice_cap():
    with override_caps(lattice=10):
        with pytest.raises(CapExceeded):
            all_subgroups(symmetric_group(4))


def test_upper_bound_from_point_stabilizers():
    S5 = symmetric_group(5)
    cands = maximal_point_stabilizers(S5)
    assert [M.order() for M in cands] == [24]
    res = frattini_upper_bound(S5, cands)
    assert res.mode == "upper-bound" and res.order() == 24
    assert frattini(S5).frattini.issubset(res.frattini)
    res = frattini_upper_bound(S5, cands, core=True)
    assert res.order() == 1


def test_upper_bound_rejects_non_maximal():
    S4 = symmetric_group(4)
    with pytest.raises(PreconditionError):
        frattini_upper_bound(S4, [Subgroup(S4, ["(1 2)"])])


def test_upper_bound_empty_candidates_is_whole_group():
    A4 = alternating_group(4)
    assert frattini_upper_bound(A4, []).order() == 12


def test_point_stabilizer():
    assert point_stabilizer(symmetric_group(6), 2).order() == 120


def test_frattini_report_fields():
    rep = frattini(symmetric_group(4)).report()
    assert rep["frattini_order"] == 1 and rep["mode"] == "exact"
    assert rep["maximal_subgroup_orders"] == [6, 6, 6, 6, 8, 8, 8, 12]

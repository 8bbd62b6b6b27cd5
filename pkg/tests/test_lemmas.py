import random

import pytest

from frattini_lab import perm as P
from frattini_lab.errors import HomomorphismError, PreconditionError
from frattini_lab.groups import FiniteGroup, Subgroup, alternating_group, cyclic_group, symmetric_group
from frattini_lab.config import override_caps
from frattini_lab.homs import Homomorphism, identity_hom, quotient
from frattini_lab.lemmas import (
    QuotientFamily,
    allenby_pipeline,
    check_fFN,
    check_frattini_nilpotent,
    check_hom_frattini_inclusion,
    check_profinite_center,
    quotient_epimorphisms,
    random_km_instances,
    residual_instance_check,
    verify_km_identity,
)
from frattini_lab.lattice import all_subgroups
from frattini_lab.reports import LemmaReport
from frattini_lab.structure import center, commutator_subgroup


def test_frattini_nilpotent_examples(group):
    for name, phi in (("s4", 1), ("z8", 4), ("trivial", 1), ("q8", 2)):
        rep = check_frattini_nilpotent(group(name))
        assert rep.passed
        assert rep.summary_orders()["Phi"] == phi


def test_hom_inclusion_examples(group):
    Z8, Z4 = group("z8"), group("z4")
    rep = check_hom_frattini_inclusion(Homomorphism(Z8, Z4, list(Z4.generators)))
    assert rep.passed
    orders = rep.steps[0].orders
    assert orders == {"Phi(source)": 4, "alpha(Phi(source))": 2, "Phi(target)": 2}
    Q8 = group("q8")
    _, to_v4 = quotient(Q8, center(Q8))
    assert check_hom_frattini_inclusion(to_v4).steps[0].orders["alpha(Phi(source))"] == 1
    assert check_hom_frattini_inclusion(identity_hom(group("s4"))).passed


def test_hom_inclusion_needs_epimorphism():
    Z4 = cyclic_group(4)
    f = Homomorphism(Z4, Z4, [P.power(Z4.generators[0], 2)])
    with pytest.raises(HomomorphismError):
        check_hom_frattini_inclusion(f)


def test_ffn_examples(group):
    SL = group("sl23")
    Q8 = commutator_subgroup(SL)
    rep = check_fFN(SL, Q8)
    assert rep.passed and rep.steps[1].orders == {"Phi(N)": 2, "Phi(G)": 2}
    Z8 = group("z8")
    rep = check_fFN(Z8, Subgroup(Z8, [P.power(Z8.generators[0], 2)]))
    assert rep.passed and rep.steps[1].orders == {"Phi(N)": 2, "Phi(G)": 4}
    assert check_fFN(group("a5"), group("a5").trivial_subgroup()).passed
    with pytest.raises(PreconditionError):
        check_fFN(symmetric_group(3), Subgroup(symmetric_group(3), ["(1 2)"]))


def test_km_examples():
    S4 = symmetric_group(4)
    A4 = Subgroup(S4, alternating_group(4).generators)
    V4 = Subgroup(S4, ["(1 2)(3 4)", "(1 3)(2 4)"])
    S3 = Subgroup(S4, ["(1 2)", "(1 2 3)"])
    rep = verify_km_identity(S4, V4, A4, S3)
    assert rep.passed and rep.steps[0].orders["KM n N"] == 12
    C3 = Subgroup(S4, ["(1 2 3)"])
    assert verify_km_identity(S4, V4, A4, C3).steps[0].orders["K(M n N)"] == 12
    assert verify_km_identity(S4, S4.trivial_subgroup(), A4, S3).steps[0].orders["K(M n N)"] == 3
    with pytest.raises(PreconditionError):
        verify_km_identity(S4, A4, V4, S3)


def test_km_random_instances(group):
    rng = random.Random(5)
    G = group("d8")
    for K, N, M in random_km_instances(G, 30, rng):
        assert verify_km_identity(G, K, N, M).passed


def _projections():
    G = FiniteGroup(8, ["(1 2 3)", "(1 2)", "(4 5 6 7 8)"])
    S3 = FiniteGroup(3, ["(1 2 3)", "(1 2)"])
    Z5 = FiniteGroup(5, ["(1 2 3 4 5)"])
    return G, Homomorphism(G, S3, [g[:3] for g in G.generators]), Homomorphism(G, Z5, [g[3:] - 3 for g in G.generators])


def test_residual_examples(group):
    G, p1, p2 = _projections()
    rep = residual_instance_check(QuotientFamily(G, [p1, p2]))
    assert rep.passed and rep.hypotheses_met
    assert [s.kind for s in rep.steps] == ["hypothesis", "hypothesis", "assert"]
    Q8 = group("q8")
    _, to_v4 = quotient(Q8, center(Q8))
    rep = residual_instance_check(QuotientFamily(Q8, [to_v4]))
    assert not rep.hypotheses_met
    assert rep.steps[0].orders == {"intersection": 2}
    assert rep.steps[-1].kind == "observation" and rep.notes
    rep = residual_instance_check(QuotientFamily(FiniteGroup(1, []), []))
    assert rep.passed and rep.hypotheses_met


def test_quotient_family_validation():
    Z4 = cyclic_group(4)
    with pytest.raises(HomomorphismError):
        QuotientFamily(Z4, [Homomorphism(Z4, Z4, [P.power(Z4.generators[0], 2)])])
    with pytest.raises(PreconditionError):
        QuotientFamily(cyclic_group(3), [identity_hom(Z4)])


def test_profinite_center_examples(group):
    rep = check_profinite_center(group("sl23"))
    assert rep.passed and rep.steps[0].orders == {"Z": 2, "[G,G]": 8, "Z n [G,G]": 2, "Phi": 2}
    assert check_profinite_center(group("s3")).steps[0].orders["Z"] == 1
    assert check_profinite_center(group("q8")).steps[0].orders == {"Z": 2, "[G,G]": 2, "Z n [G,G]": 2, "Phi": 2}


def test_allenby_on_s5():
    S5 = symmetric_group(5)
    A5 = alternating_group(5)
    rep = allenby_pipeline(S5, Subgroup(S5, A5.generators), identity_hom(A5), P.parse_cycles("(1 2 3)", 5))
    assert rep.passed
    o = rep.summary_orders()
    assert (o["K"], o["C"], o["G2"], o["H"], o["N n Phi(G)"]) == (1, 1, 120, 1, 1)
    assert any("core" in n for n in rep.notes)


def test_allenby_preconditions():
    S5 = symmetric_group(5)
    A5 = alternating_group(5)
    N = Subgroup(S5, A5.generators)
    with pytest.raises(PreconditionError):
        allenby_pipeline(S5, N, identity_hom(A5), P.identity(5))
    with pytest.raises(PreconditionError):
        allenby_pipeline(S5, Subgroup(S5, ["(1 2)"]), identity_hom(A5), P.parse_cycles("(1 2 3)", 5))
    Z3 = cyclic_group(3)
    with pytest.raises(PreconditionError):
        allenby_pipeline(Z3, Z3.whole(), identity_hom(Z3), Z3.generators[0])


def test_allenby_with_upper_bound_mode():
    S5 = symmetric_group(5)
    A5 = alternating_group(5)
    with override_caps(lattice=100):
        rep = allenby_pipeline(S5, Subgroup(S5, A5.generators), identity_hom(A5), P.parse_cycles("(1 2 3)", 5))
    assert rep.passed
    assert any("upper bound" in n for n in rep.notes)


@pytest.mark.parametrize("name", ["s4", "sl23", "d8", "s3xz5"])
def test_quotient_epimorphisms_cover_normal_subgroups(group, name):
    G = group(name)
    homs = quotient_epimorphisms(G)
    assert all(f.is_surjective() for f in homs)
    assert sorted(f.kernel.order() for f in homs) == sorted(N.order() for N in all_subgroups(G).normal_subgroups())


def test_failing_report_carries_witness():
    rep = LemmaReport("demo")
    rep.check("holds", True)
    rep.check("breaks", False, {"x": 2}, ["(1 2)"])
    assert rep.verdict == "fail"
    assert rep.failing_steps()[0].witnesses == ["(1 2)"]
    assert list(rep.to_dict()) == ["lemma", "verdict", "inputs", "hypotheses_met", "steps", "notes", "error"]

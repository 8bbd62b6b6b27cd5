import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frattini_lab.errors import ParseError
from frattini_lab.presentation import (
    AbelianInvariants,
    Presentation,
    abelianization,
    alternating_obstruction,
    determinantal_divisors,
    free_reduce,
    invert_word,
    parse_presentation,
    smith_normal_form,
)

import oracles
from conftest import DATA


def test_parse_examples():
    P = parse_presentation("gens: a ; rels: a^2")
    assert P.generators == ("a",) and P.relators == ((1, 1),)
    assert parse_presentation("gens: a b ; rels:").relators == ()
    with pytest.raises(ParseError):
        parse_presentation("gens: a ; rels: b^2")


@pytest.mark.parametrize(
    "text,word",
    [
        ("a*b*A", (1, 2, -1)),
        ("abA", (1, 2, -1)),
        ("(a*b)^2", (1, 2, 1, 2)),
        ("a^-2", (-1, -1)),
        ("[a,b]", (-1, -2, 1, 2)),
        ("a*A", ()),
        ("1", ()),
    ],
)
def test_word_grammar(text, word):
    assert parse_presentation(f"gens: a b ; rels: {text}").relators == (word,)


@pytest.mark.parametrize("text", ["gens: a ; rels: (a", "gens: a ; rels: a^", "gens: a ; rels: [a]", "rels: a", "gens: A ; rels:", "gens: a a ; rels:"])
def test_malformed(text):
    with pytest.raises(ParseError):
        parse_presentation(text)


@pytest.mark.parametrize(
    "text,rank,torsion",
    [
        ("gens: a ; rels: a^2", 0, (2,)),
        ("gens: a b ; rels:", 2, ()),
        ("gens: a b ; rels: a^2*b^-3", 1, ()),
        ("gens: a b ; rels: a^2, b^3, [a,b]", 0, (6,)),
        ("gens: a b ; rels: a^3, b^2, (a*b)^3", 0, (3,)),
        ("gens: a b c ; rels: a^4, b^6, c^9", 0, (6, 36)),
        ("gens: a b ; rels: a^2, b^2, (a*b)^2", 0, (2, 2)),
    ],
)
def test_abelianization(text, rank, torsion):
    inv = abelianization(parse_presentation(text))
    assert (inv.rank, inv.torsion) == (rank, torsion)


def test_bundled_presentations():
    inv = abelianization(parse_presentation((DATA / "presentations" / "z2.pres").read_text()))
    assert (inv.rank, inv.torsion) == (0, (2,))
    inv = abelianization(parse_presentation((DATA / "presentations" / "trefoil.pres").read_text()))
    assert (inv.rank, inv.torsion) == (1, ())


def test_obstruction():
    assert alternating_obstruction(AbelianInvariants(0, (2,))) == {"blocks_A3": True, "blocks_A4": True}
    assert alternating_obstruction(AbelianInvariants(0, (3,))) == {"blocks_A3": False, "blocks_A4": False}
    assert alternating_obstruction(AbelianInvariants(1, (2,))) == {"blocks_A3": False, "blocks_A4": False}
    assert alternating_obstruction(AbelianInvariants(0, (2, 6))) == {"blocks_A3": False, "blocks_A4": False}
    assert alternating_obstruction(AbelianInvariants(0, ()))["blocks_A3"]


def test_invariants_validation():
    with pytest.raises(ValueError):
        AbelianInvariants(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianInvariants(0, (1,))
    assert str(AbelianInvariants(2, (2, 4))) == "Z^2 + Z/2 + Z/4"


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))
)


@settings(max_examples=500)
@given(matrices)
def test_snf_divisibility_and_determinantal_divisors(M):
    factors = smith_normal_form(M)
    assert all(d > 0 for d in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    dets = oracles.determinantal_divisors(M)
    nonzero = [d for d in dets if d]
    assert determinantal_divisors(factors) == nonzero


def test_snf_small_cases():
    assert smith_normal_form([[2, -3]]) == [1]
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_normal_form([[0, 0]]) == []
    assert smith_normal_form([]) == []


def _random_presentation(rng: random.Random) -> Presentation:
    n = rng.randint(1, 3)
    rels = []
    for _ in range(rng.randint(0, 3)):
        w = [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(1, 6))]
        rels.append(free_reduce(w))
    return Presentation(tuple("abc"[:n]), tuple(r for r in rels if r))


def test_tietze_and_shuffle_invariance():
    rng = random.Random(11)
    for _ in range(200):
        P = _random_presentation(rng)
        base = abelianization(P)
        if P.relators:
            r = P.relators[rng.randrange(len(P.relators))]
            s = P.relators[rng.randrange(len(P.relators))]
            g = [rng.choice([1, -1]) * rng.randint(1, len(P.generators))]
            conj = free_reduce(invert_word(g) + r + tuple(g))
            extra = free_reduce(conj + invert_word(s))
            assert abelianization(Presentation(P.generators, P.relators + (extra,))) == base
        shuffled = list(P.relators)
        rng.shuffle(shuffled)
        assert abelianization(Presentation(P.generators, tuple(shuffled))) == base


def test_free_reduce_and_format():
    assert free_reduce([1, 2, -2, -1, 3]) == (3,)
    P = Presentation(("a", "b"), ())
    assert P.format_word((1, -2)) == "a*b^-1"
    assert P.format_word(()) == "1"

"""Group law, group-ring arithmetic and the structural maps."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services import group_algebra as ga
from services.errors import TagMismatchError
from services.group_algebra import (
    DIHEDRAL_ONE,
    E,
    S,
    DihedralWord,
    GroupRingElement,
    GroupTag,
    SemidirectPair,
)
from services.scalars import I, gaussian

powers = st.integers(min_value=-20, max_value=20)
dihedral_words = st.builds(DihedralWord, powers, st.integers(min_value=0, max_value=1))
semidirect_pairs = st.builds(SemidirectPair, powers, powers)
coefficients = st.tuples(
    st.fractions(min_value=-3, max_value=3, max_denominator=6),
    st.fractions(min_value=-3, max_value=3, max_denominator=6),
)


def ring_elements(group: GroupTag):
    small = st.integers(min_value=-5, max_value=5)
    elements = (st.builds(DihedralWord, small, st.integers(min_value=0, max_value=1))
                if group == GroupTag.DIHEDRAL else st.builds(SemidirectPair, small, small))
    return st.lists(st.tuples(elements, coefficients), max_size=4).map(
        lambda pairs: GroupRingElement.from_terms(group, pairs))


def test_dihedral_relations():
    assert E * E == DIHEDRAL_ONE
    assert E * S * E == S.inverse()
    assert DihedralWord(2, 1) * DihedralWord(3, 1) == DihedralWord(-1, 0)


def test_dihedral_mul_matches_rewriting():
    # brute force: push every e to the right using eS = S⁻¹e
    def rewrite(letters):
        power, flip = 0, 0
        for letter in letters:
            if letter == "S":
                power += -1 if flip else 1
            else:
                flip ^= 1
        return DihedralWord(power, flip)

    def spell(w):
        return ("S" * w.power if w.power >= 0 else "") + "e" * w.flip

    for m in range(0, 4):
        for p in range(0, 4):
            for a in (0, 1):
                for b in (0, 1):
                    g, h = DihedralWord(m, a), DihedralWord(p, b)
                    assert g * h == rewrite(spell(g) + spell(h))


def test_inverse_and_associativity():
    words = list(ga.dihedral_words(3))
    for g in words:
        assert g * g.inverse() == DIHEDRAL_ONE
    for g in words[:6]:
        for h in words[:6]:
            for k in words[:6]:
                assert (g * h) * k == g * (h * k)


def test_semidirect_mul():
    assert SemidirectPair(1, 0) * SemidirectPair(1, 0) == SemidirectPair(2, 0)
    assert SemidirectPair(0, 1) * SemidirectPair(1, 0) == SemidirectPair(-1, 1)
    assert SemidirectPair(4, -3) * ga.SEMIDIRECT_ONE == SemidirectPair(4, -3)
    g = SemidirectPair(2, 3)
    assert g * g.inverse() == ga.SEMIDIRECT_ONE


def test_ring_mul_idempotents():
    assert ga.P1 * ga.P1 == ga.P1
    assert ga.P2 * ga.P2 == ga.P2
    one = GroupRingElement.one(GroupTag.DIHEDRAL)
    a = ga.word(3, 1, coeff=gaussian("2/3", "-1")) + ga.word(-2)
    assert one * a == a
    assert a * one == a


def test_ring_star():
    assert ga.word(1).star() == ga.word(-1)
    assert ga.P1.star() == ga.P1
    assert ga.word(0, 1, coeff=I).star() == ga.word(0, 1, coeff=-I)


def test_mixed_groups_rejected():
    with pytest.raises(TagMismatchError):
        ga.word(1) + ga.pair(1, 0)
    with pytest.raises(TagMismatchError):
        ga.word(1) * ga.pair(1, 0)


def test_zero_terms_dropped():
    a = ga.word(2) - ga.word(2)
    assert not a
    assert a == GroupRingElement.zero(GroupTag.DIHEDRAL)


def test_conjugacy_classes():
    assert ga.conjugacy_class(E, 3) == {DihedralWord(2 * m, 1) for m in range(-3, 4)}
    assert ga.conjugacy_class(DIHEDRAL_ONE, 5) == {DIHEDRAL_ONE}
    assert ga.conjugacy_class(DihedralWord(2, 0), 3) == {DihedralWord(2, 0), DihedralWord(-2, 0)}
    assert ga.conjugacy_class(DihedralWord(1, 1), 2) == {DihedralWord(k, 1) for k in range(-5, 6, 2)}


def test_semidirect_centre():
    for n in (-2, 2, 4):
        assert ga.semidirect_conjugacy_class(SemidirectPair(0, n), 2) == {SemidirectPair(0, n)}
    assert SemidirectPair(-1, 0) in ga.semidirect_conjugacy_class(SemidirectPair(1, 0), 1)


def test_quotient_hom():
    assert ga.quotient_hom(ga.pair(1, 0)) == ga.word(1)
    assert ga.quotient_hom(ga.pair(0, 2)) == GroupRingElement.one(GroupTag.DIHEDRAL)
    assert ga.quotient_hom(ga.half_sum(ga.V)) == ga.P1
    x, y = ga.pair(2, 1) + ga.pair(-1, 0), ga.pair(1, 3, coeff=2)
    assert ga.quotient_hom(x * y) == ga.quotient_hom(x) * ga.quotient_hom(y)
    with pytest.raises(TagMismatchError):
        ga.quotient_hom(ga.word(1))


def test_alpha_minus_one():
    assert ga.alpha_minus_one(ga.P2) == ga.P1
    one = GroupRingElement.one(GroupTag.DIHEDRAL)
    assert ga.alpha_minus_one(one) == one
    assert ga.alpha_minus_one(ga.P1) == ga.P2_EXCHANGED
    x, y = ga.word(2, 1) + ga.word(-1), ga.word(1, 1, coeff=3)
    assert ga.alpha_minus_one(x * y) == ga.alpha_minus_one(x) * ga.alpha_minus_one(y)


def test_circle_maps():
    u = ga.pair(1, 0)
    assert ga.circle_to_dihedral(u) == ga.word(1)
    assert ga.circle_to_semidirect(u) == u
    with pytest.raises(TagMismatchError):
        ga.check_circle(ga.pair(0, 1))


def test_json_keeps_exact_coefficients():
    a = ga.word(3, 1, coeff=gaussian("-3/2", "1/7")) + ga.word(-4)
    payload = ga.to_json_dict(a)
    assert payload["group"] == "dihedral"
    assert {"elem": [3, 1], "re": "-3/2", "im": "1/7"} in payload["terms"]
    assert ga.loads(ga.dumps(a)) == a


@settings(max_examples=1000, deadline=None)
@given(dihedral_words, dihedral_words, dihedral_words)
def test_dihedral_associativity(g, h, k):
    assert (g * h) * k == g * (h * k)
    assert g * g.inverse() == DIHEDRAL_ONE


@settings(max_examples=1000, deadline=None)
@given(semidirect_pairs, semidirect_pairs, semidirect_pairs)
def test_semidirect_associativity(g, h, k):
    assert (g * h) * k == g * (h * k)
    assert g.inverse() * g == ga.SEMIDIRECT_ONE


def test_defining_relations_hold_far_out():
    for m in range(-50, 51):
        assert E * DihedralWord(m, 0) * E == DihedralWord(-m, 0)
    assert ga.V * ga.U * ga.V.inverse() == ga.U.inverse()


@pytest.mark.parametrize("group", [GroupTag.DIHEDRAL, GroupTag.SEMIDIRECT])
def test_star_is_an_anti_involution(group):
    @settings(max_examples=500, deadline=None)
    @given(ring_elements(group), ring_elements(group))
    def check(a, b):
        assert a.star().star() == a
        assert (a * b).star() == b.star() * a.star()

    check()


@settings(max_examples=500, deadline=None)
@given(ring_elements(GroupTag.DIHEDRAL), ring_elements(GroupTag.DIHEDRAL))
def test_alpha_minus_one_is_multiplicative(a, b):
    assert ga.alpha_minus_one(a * b) == ga.alpha_minus_one(a) * ga.alpha_minus_one(b)


@settings(max_examples=300, deadline=None)
@given(ring_elements(GroupTag.SEMIDIRECT), ring_elements(GroupTag.SEMIDIRECT))
def test_quotient_is_multiplicative(x, y):
    assert ga.quotient_hom(x * y) == ga.quotient_hom(x) * ga.quotient_hom(y)


def test_quotient_kernel_is_even_powers_of_V():
    one = GroupRingElement.one(GroupTag.DIHEDRAL)
    for n in range(-20, 21):
        assert ga.quotient_hom(ga.pair(0, 2 * n)) == one
    assert ga.quotient_hom(ga.pair(0, 1)) == ga.word(0, 1)


@pytest.mark.parametrize("payload", [
    {"terms": []},
    {"group": "dihedral", "terms": [{"re": "1/2"}]},
    {"group": "dihedral", "terms": [{"elem": [1], "re": "1"}]},
    {"group": "dihedral", "terms": [{"elem": ["a", 0]}]},
    {"group": "dihedral", "terms": "S"},
    {"group": "free", "terms": []},
])
def test_malformed_json_rejected(payload):
    with pytest.raises(ValueError):
        ga.from_json_dict(payload)

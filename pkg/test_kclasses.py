"""K-theory representatives, element parsing and pairing tables."""
import pytest

from services import group_algebra as ga
from services.errors import TagMismatchError, UnknownNameError
from services.fredholm import QUOTIENT, catalog, even_pairing, pullback
from services.group_algebra import GroupRingElement, GroupTag
from services.kclasses import (
    AlgebraTag,
    ClassKind,
    is_projection,
    is_unitary,
    pairing_table,
    parse_element,
    resolve_element,
    standard_classes,
)


def test_algebra_aliases():
    assert AlgebraTag.parse("CT") == AlgebraTag.CT
    assert AlgebraTag.parse("C(T)") == AlgebraTag.CT
    assert AlgebraTag.parse(" A ") == AlgebraTag.A
    with pytest.raises(UnknownNameError):
        AlgebraTag.parse("D")


def test_standard_classes():
    a_classes = standard_classes("A")
    assert [k.label for k in a_classes] == ["[1]", "[P1]", "[P2]"]
    assert a_classes[2].element == ga.half_sum(ga.DihedralWord(1, 1))
    b_odd = [k for k in standard_classes(AlgebraTag.B) if k.kind == ClassKind.UNITARY]
    assert ga.pair(0, 1) in [k.element for k in b_odd]
    for tag in AlgebraTag:
        assert all(k.is_valid() for k in standard_classes(tag))


def test_projection_and_unitary_predicates():
    assert is_projection(ga.P1)
    assert is_projection(ga.P2_EXCHANGED)
    assert not is_projection(ga.half_sum(ga.S))
    assert is_unitary(ga.word(1, 1))
    assert is_unitary(ga.pair(3, -2))
    assert not is_unitary(ga.P1)


def test_parse_element():
    assert parse_element("P2'", "A") == ga.P2_EXCHANGED
    assert parse_element("[P1]", "A") == ga.P1
    assert parse_element("1", "B") == GroupRingElement.one(GroupTag.SEMIDIRECT)
    assert parse_element("U^-1", "B") == ga.pair(-1, 0)
    assert parse_element("V2", "B") == ga.pair(0, 2)
    assert parse_element("Se", "A") == ga.word(1, 1)
    assert parse_element("S^-3", "A") == ga.word(-3)
    with pytest.raises(UnknownNameError):
        parse_element("V", "CT")
    with pytest.raises(UnknownNameError):
        parse_element("P1", "B")


def test_resolve_element():
    payload = ga.to_json_dict(ga.P1)
    assert resolve_element(payload, "A") == ga.P1
    assert resolve_element(ga.P2, AlgebraTag.A) == ga.P2
    with pytest.raises(TagMismatchError):
        resolve_element(ga.pair(1, 0), "A")


def test_table_A():
    table = pairing_table("A", N=32, n_max=2)
    assert table.matrix() == [[1, 1, 1], [0, 1, 0], [0, 0, 1]]
    assert table.stabilized
    assert pairing_table("A", N=16).matrix() == table.matrix()


def test_table_B():
    table = pairing_table("B")
    assert table.modules == ["w0_B", "w1_B"]
    assert table.classes == ["[1]", "[V]", "[U]"]
    assert table.matrix() == [[1, None, None], [None, 1, 0]]
    assert table.value("w1_B", "[V]") == 1


def test_table_circle():
    table = pairing_table("CT")
    assert table.matrix() == [[1, None], [None, 1]]
    payload = table.to_dict()
    assert payload["algebra"] == "C(T)"
    assert len(payload["cells"]) == 2


@pytest.mark.parametrize("name", ["w0_A", "w1_A", "w2_A"])
def test_quotient_compatibility(name):
    M = catalog(name)
    pulled = pullback(M, QUOTIENT)
    for rep in standard_classes(AlgebraTag.B):
        if rep.kind != ClassKind.PROJECTION:
            continue
        assert (even_pairing(pulled, rep.element, N=16).value
                == even_pairing(M, ga.quotient_hom(rep.element), N=16).value)


def test_scalar_module_over_B_matches_quotient():
    one_b = GroupRingElement.one(GroupTag.SEMIDIRECT)
    expected = even_pairing(catalog("w0_A"), ga.quotient_hom(one_b), N=16).value
    assert even_pairing(catalog("w0_B"), one_b, N=16).value == expected == 1

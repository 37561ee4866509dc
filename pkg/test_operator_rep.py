"""Windowed representations, symmetry operators and exact numerics."""
import cmath
import math

import pytest

from services import group_algebra as ga
from services.errors import DimensionMismatchError, OutOfRangeError, WindowTooSmallError
from services.group_algebra import GroupRingElement, GroupTag
from services.operator_rep import (
    REPRESENTATIONS,
    Backend,
    RepresentationName,
    Window,
    WindowKind,
    anticommutator,
    commutator,
    from_entries,
    get_representation,
    homotopy_operator_Ft,
    identity,
    phase_operator_F0,
    rank,
    represent,
    sign_operator,
    trace,
)
from services.scalars import ONE, ZERO, gaussian

PI0 = get_representation(RepresentationName.PI0_DIHEDRAL)
PI1 = get_representation(RepresentationName.PI1_DIHEDRAL)
PI2 = get_representation(RepresentationName.PI2_DIHEDRAL)


def test_window_indexing():
    w = Window.plane(3)
    assert w.size == 49
    for c in w.coords():
        assert w.coord_of(w.index_of(c)) == c
    assert w.index_of((4, 0)) is None
    assert Window.line(8).index_of(-8) == 0


def test_reflections_on_the_line():
    w = Window.line(8)
    e1 = represent(PI1, ga.word(0, 1), w)
    assert e1.entry(-3, 3) == ONE
    assert e1.entry(-3, 3, 1, 1) == -ONE
    e2 = represent(PI2, ga.word(0, 1), w)
    assert e2.entry(-4, 3) == ONE


INTERIOR_GENERATORS = {
    GroupTag.DIHEDRAL: [ga.word(1), ga.word(-1), ga.word(0, 1)],
    GroupTag.SEMIDIRECT: [ga.pair(1, 0), ga.pair(-1, 0), ga.pair(0, 1), ga.pair(0, -1)],
}


@pytest.mark.parametrize("name", [n for n, s in REPRESENTATIONS.items() if s.window_kind != WindowKind.POINT])
def test_interior_unitarity(name):
    spec = REPRESENTATIONS[name]
    w = Window.plane(4) if spec.window_kind == WindowKind.PLANE else Window.line(6)
    gens = INTERIOR_GENERATORS[spec.group]
    if name == RepresentationName.PI1_CIRCLE:
        gens = [g for g in gens if all(x.n == 0 for x in g.terms)]
    for g in gens:
        P = represent(spec, g, w)
        X = P.adjoint() @ P
        entries = X.entries()
        for j in set(range(P.dim)) - P.leaks:
            column = {i: v for (i, c), v in entries.items() if c == j}
            assert column == {j: ONE}, (name, str(g), j)


def test_unit_is_identity():
    w = Window.line(5)
    one = represent(PI1, GroupRingElement.one(GroupTag.DIHEDRAL), w)
    assert one.entries() == identity(w, 2).entries()


def test_radius_beyond_window():
    with pytest.raises(WindowTooSmallError) as exc:
        represent(PI0, ga.word(9), Window.line(8))
    assert exc.value.required == 9


def test_representation_is_multiplicative_inside():
    w = Window.line(12)
    a, b = ga.word(2, 1) + ga.word(1), ga.word(-1, 1, coeff=gaussian("1/2"))
    prod = represent(PI1, a, w) @ represent(PI1, b, w)
    direct = represent(PI1, a * b, w)
    for (i, j), v in direct.entries().items():
        coord, _ = direct.locate(j)
        if abs(coord) <= 8:
            assert prod.entries().get((i, j)) == v


def test_sign_operator():
    w = Window.line(6)
    F = sign_operator(w)
    assert F.entry(0, 0) == ONE
    assert F.entry(-1, -1) == -ONE
    assert (F @ F).entries() == identity(w).entries()


def test_phase_operator():
    w = Window.plane(4)
    F0 = phase_operator_F0(w)
    assert F0.entry((0, 0), (0, 0)) == 1
    assert F0.entry((1, 0), (1, 0)) == 1
    assert abs(F0.entry((0, 1), (0, 1)) - 1j) < 1e-15
    assert (F0 @ F0.adjoint() - identity(w, 1, Backend.FLOAT)).is_zero(1e-12)


def test_homotopy_operator():
    w = Window.plane(5)
    F0, Ft0 = phase_operator_F0(w), homotopy_operator_Ft(w, 0)
    assert (F0 - Ft0).is_zero(1e-15)
    assert homotopy_operator_Ft(w, 1).entry((3, 5), (3, 5)) == 1
    for t in ("0", "1/3", "1"):
        assert homotopy_operator_Ft(w, t).entry((-2, 0), (-2, 0)) == -1
    half = homotopy_operator_Ft(w, "1/2").entry((3, 4), (3, 4))
    assert cmath.isclose(half, complex(3, 2) / math.sqrt(13), abs_tol=1e-15)
    with pytest.raises(OutOfRangeError):
        homotopy_operator_Ft(w, "3/2")


def test_commutators_on_the_line():
    w = Window.line(8)
    F = sign_operator(w)
    anti = anticommutator(F, represent(PI0, ga.word(0, 1), w))
    assert anti.entries() == {(F.flat_index(0), F.flat_index(0)): gaussian(2)}
    comm = commutator(F, represent(PI0, ga.word(1), w))
    assert comm.entries() == {(F.flat_index(0), F.flat_index(-1)): gaussian(2)}
    assert rank(comm) == 1
    assert commutator(F, identity(w)).is_zero()


def test_trace_and_rank():
    w = Window.line(3)
    A = from_entries(w, 1, {(0, 0): 2, (1, 1): gaussian("1/2", 1), (2, 0): 5})
    assert trace(A) == gaussian("5/2", 1)
    assert rank(A) == 2
    assert rank(from_entries(w, 1, {})) == 0
    assert rank(A.to_float()) == 2


def test_mismatched_windows():
    with pytest.raises(DimensionMismatchError):
        identity(Window.line(3)) @ identity(Window.line(4))
    with pytest.raises(DimensionMismatchError):
        identity(Window.line(3)) + identity(Window.line(3), backend=Backend.FLOAT)


def test_leaks_mark_truncated_columns():
    w = Window.line(4)
    S = represent(PI0, ga.word(1), w)
    assert S.leaks == frozenset({S.flat_index(4)})
    assert S.interior_exact
    S2 = S @ S
    assert S.flat_index(3) in S2.leaks


def test_dump_is_sorted_and_exact():
    w = Window.line(2)
    A = from_entries(w, 1, {(w.index_of(1), w.index_of(-1)): gaussian("-1/3"), (0, 0): ONE})
    assert A.dump().splitlines() == ["-2 -2 0 0 1/1 0/1", "1 -1 0 0 -1/3 0/1"]
    assert A.entry(-2, -2) == ONE
    assert A.entry(0, 0) == ZERO

"""Cochains, the boundary b, periodicity S and the coboundary solvers."""
import numpy as np
import pytest

from services import cyclic
from services import group_algebra as ga
from services.cyclic import (
    Cochain0,
    CocycleCochain1,
    ExplicitCochain,
    LinearFunctional,
    boundary_b,
    cocycle_from_data,
    duality_matrix,
    is_cyclic,
    pair_with_projection,
    periodicity_S,
    psi_0,
    psi_1,
    psi_2,
    psi_k,
    random_cocycle,
    run_suite,
    solve_1_coboundary,
    solve_2_coboundary,
    verify_equal,
    verify_solve_1,
    verify_solve_2,
)
from services.errors import ArityMismatchError, NoSolutionError, SymmetryViolationError, UnknownNameError
from services.group_algebra import DIHEDRAL_ONE, DihedralWord, E, S
from services.scalars import HALF, ONE, ZERO, gaussian

WORDS = list(ga.dihedral_words(4))


def test_distinguished_cocycles_on_projections():
    assert psi_0()(DIHEDRAL_ONE) == ONE
    assert psi_1()(ga.P1) == ONE
    assert psi_2()(ga.P1) == ZERO
    assert psi_2()(ga.P2) == ONE


def test_evaluation_arity():
    with pytest.raises(ArityMismatchError):
        psi_0()(S, S)


def test_boundary_of_traces():
    b = {m: gaussian(m * m - 3 * m) for m in range(-10, 11)}
    psi = LinearFunctional({1: 2, -1: 2}, lambda m: b[m])
    bpsi = boundary_b(psi)
    for m in range(-3, 4):
        for n in range(-3, 4):
            assert bpsi(DihedralWord(m, 0), DihedralWord(n, 0)) == ZERO
            assert bpsi(DihedralWord(m, 0), DihedralWord(n, 1)) == b[m + n] - b[n - m]
    zero = boundary_b(Cochain0())
    assert all(zero.value(x, y) == ZERO for x in WORDS for y in WORDS)


def test_b_squared_vanishes():
    psi = Cochain0({0: 3, 2: "1/2", -2: "1/2"}, b0=1, b1=-4)
    assert verify_equal("bb", boundary_b(boundary_b(psi)), None, 4).passed
    phi = CocycleCochain1({0: 1, 3: "-2/3"}, {1: 5, -1: -5})
    assert verify_equal("b phi", boundary_b(phi), None, 5).passed


def test_cyclicity():
    assert is_cyclic(psi_0(), 5)
    rng = np.random.default_rng(11)
    assert is_cyclic(random_cocycle(rng, support=4), 6)
    lopsided = ExplicitCochain(1, {(S, E): 1})
    assert not is_cyclic(lopsided, 2)
    assert is_cyclic(periodicity_S(psi_k(1)), 2)


def test_traces_are_class_functions():
    psi = Cochain0({1: 2, -1: 2}, b0=5, b1=7)
    for g in WORDS:
        for x in ga.conjugacy_class(g, 3):
            assert psi(x) == psi(g)


def test_periodicity():
    assert periodicity_S(psi_0())(DIHEDRAL_ONE, DIHEDRAL_ONE, DIHEDRAL_ONE) == ONE
    S2 = periodicity_S(psi_k(2))
    for p in range(-3, 4):
        for q in range(-3, 4):
            for r in range(-3, 4):
                expected = ONE if abs(p + q + r) == 2 else ZERO
                assert S2(DihedralWord(p, 0), DihedralWord(q, 0), DihedralWord(r, 0)) == expected
    psi = Cochain0({0: 1}, b0=3, b1=-1)
    for p in (ga.P1, ga.P2):
        assert periodicity_S(psi)(p, p, p) == psi(p)


def test_cocycle_from_data():
    a = cocycle_from_data("0", {"a": {0: 1}})
    assert all(a(w) == psi_0()(w) for w in WORDS)
    b = cocycle_from_data("trace", {"b1": 2})
    assert all(b(w) == psi_2()(w) for w in WORDS)
    zero = cocycle_from_data("1", {})
    assert all(zero(x, y) == ZERO for x in WORDS for y in WORDS)
    with pytest.raises(SymmetryViolationError):
        cocycle_from_data("0", {"a": {1: 1}})
    with pytest.raises(SymmetryViolationError):
        cocycle_from_data("1", {"d": {2: 1}})
    with pytest.raises(UnknownNameError):
        cocycle_from_data("7", {})


def test_cocycle_form_sums_agree():
    # Σ_{k=0}^{m-1} c_{n+m-1-2k} for m >= 1
    c = {n: gaussian(n + 20) for n in range(-12, 13)}
    phi = CocycleCochain1(c)
    for m in range(1, 5):
        for n in range(-4, 5):
            expected = sum((c[n + m - 1 - 2 * k] for k in range(m)), ZERO)
            assert phi(DihedralWord(m, 0), DihedralWord(n, 1)) == expected


def test_solve_1_small_cases():
    zero = solve_1_coboundary(CocycleCochain1())
    assert all(zero(w) == ZERO for w in WORDS)
    psi = solve_1_coboundary(CocycleCochain1({1: 1}))
    assert psi.b(2) == ONE
    assert psi.b(0) == ZERO
    phi = CocycleCochain1({-3: 2, 0: "1/3", 4: -1}, {2: "5/2", -2: "-5/2"})
    assert verify_solve_1(phi, 10).passed


def test_solve_1_random_round_trips():
    suite = run_suite("solve-1", seed=7)
    assert suite.passed
    assert len(suite.reports) == 200
    assert suite.to_dict()["summary"] == "200/200"


def test_solve_2_coefficients():
    phi = solve_2_coboundary(2)
    assert phi.alpha(3, -1) == gaussian(2)
    assert phi.alpha(1, 1) == ZERO
    k1 = solve_2_coboundary(1, 0)
    assert k1.gamma(1, 0) == ZERO
    assert k1.gamma(0, 1) == ZERO
    shifted = solve_2_coboundary(1, 1)
    assert shifted.gamma(1, 0) == -ONE
    assert shifted.gamma(0, 1) == ONE
    assert is_cyclic(shifted, 4)
    with pytest.raises(NoSolutionError):
        solve_2_coboundary(0)


def test_solve_2_for_all_k():
    for k in range(1, 9):
        for c_k in (0, 1, "-3/2"):
            assert verify_solve_2(k, c_k, bound=12).passed, (k, c_k)


def test_duality():
    identity = [[ONE if i == j else ZERO for j in range(3)] for i in range(3)]
    assert duality_matrix() == identity
    raw = duality_matrix([psi_0(), psi_1(), psi_2()])
    assert raw == [[ONE, HALF, HALF], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]
    assert pair_with_projection(periodicity_S(psi_0()), ga.P1) == HALF
    for k in (1, 2, 3):
        for p in (ga.word(0), ga.P1, ga.P2):
            assert pair_with_projection(periodicity_S(psi_k(k)), p) == pair_with_projection(psi_k(k), p)


def test_tabulate_and_json():
    table = psi_k(1).tabulate(2)
    assert table.table == {(DihedralWord(1, 0),): ONE, (DihedralWord(-1, 0),): ONE}
    payload = table.to_json_dict(2)
    assert payload["kind"] == "explicit"
    assert payload["support"][0] == {"args": [[-1, 0]], "re": "1/1", "im": "0/1"}
    assert psi_2().to_json_dict()["b1"] == {"re": "2/1", "im": "0/1"}


def test_suites():
    assert run_suite("verify-0", seed=1, count=5, bound=4).passed
    assert run_suite("verify-1", seed=2, count=5, bound=5).passed
    duality = run_suite("duality")
    assert duality.passed
    assert duality.extra["matrix"] == [["1/1", "0/1", "0/1"], ["0/1", "1/1", "0/1"], ["0/1", "0/1", "1/1"]]
    assert duality.extra["raw_matrix"][0] == ["1/1", "1/2", "1/2"]
    assert run_suite("solve-2", k=3).passed


def test_suites_are_reproducible():
    first = run_suite("verify-1", seed=3, count=4, bound=4).to_dict()
    again = run_suite("verify-1", seed=3, count=4, bound=4).to_dict()
    assert first == again


def test_suite_errors():
    with pytest.raises(UnknownNameError):
        run_suite("verify-2")
    with pytest.raises(NoSolutionError):
        run_suite("solve-2", k=0)
    with pytest.raises(ValueError):
        run_suite("solve-1", bound=8)
    assert cyclic.CYCLIC_SUBCOMMANDS == ("verify-0", "verify-1", "solve-1", "solve-2", "duality")

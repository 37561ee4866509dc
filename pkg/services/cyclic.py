"""Cyclic cochains on CΓ, the boundary b, periodicity S and coboundary solvers.

Cochains are functionals on (n+1)-tuples of dihedral words, extended
multilinearly to group-ring elements. Each concrete class stores the data that
defines it rather than a value table:

* ``Cochain0``: traces, given by aₙ = ψ(Sⁿ) (even in n), b₀ = ψ(e), b₁ = ψ(Se)
* ``LinearFunctional``: an arbitrary degree-0 functional (output of the 1-coboundary solver)
* ``CocycleCochain1``: the general 1-cocycle, given by (cₙ, dₙ) with d odd
* ``CoefficientCochain1``: a 1-cochain given by coefficient families α, β, γ
* ``RuleCochain``: any degree, value computed by a rule (bψ, bφ, Sψ)
* ``ExplicitCochain``: finite value table, zero elsewhere
"""
import itertools
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from services import group_algebra as ga
from services.errors import (
    ArityMismatchError,
    NoSolutionError,
    NotAProjectionError,
    SymmetryViolationError,
    TagMismatchError,
    UnknownNameError,
)
from services.group_algebra import DihedralWord, GroupRingElement, GroupTag, dihedral_mul, dihedral_words
from services.scalars import ONE, ZERO, Scalar, as_scalar, format_rational, gaussian, rational

logger = logging.getLogger(__name__)

Words = Tuple[DihedralWord, ...]
MAX_REPORTED_FAILURES = 20


def _clean(data: Optional[Mapping[int, object]]) -> Dict[int, Scalar]:
    out = {}
    for n, v in (data or {}).items():
        v = as_scalar(v)
        if v:
            out[int(n)] = v
    return out


def _scalar_list(data: Mapping[int, Scalar]) -> List[dict]:
    return [{"n": n, "re": format_rational(v.x), "im": format_rational(v.y)} for n, v in sorted(data.items())]


def _scalar_dict(v: Scalar) -> dict:
    return {"re": format_rational(v.x), "im": format_rational(v.y)}


class Cochain(ABC):
    """Degree-n functional on (n+1)-tuples."""

    degree: int = 0
    name: str = ""

    @abstractmethod
    def value(self, *words: DihedralWord) -> Scalar:
        """Value on group elements."""

    def __call__(self, *args) -> Scalar:
        """Multilinear evaluation on words or elements of CΓ.

        Raises:
            ArityMismatchError: number of arguments is not degree + 1.
        """
        if len(args) != self.degree + 1:
            raise ArityMismatchError(
                f"{self.name or type(self).__name__} has degree {self.degree}; "
                f"expected {self.degree + 1} arguments, got {len(args)}"
            )
        expanded = []
        for a in args:
            if isinstance(a, DihedralWord):
                expanded.append([(a, ONE)])
            elif isinstance(a, GroupRingElement):
                if a.group != GroupTag.DIHEDRAL:
                    raise TagMismatchError("cochains are defined on CΓ")
                expanded.append(list(a.terms.items()))
            else:
                raise TypeError(f"cannot evaluate a cochain on {type(a).__name__}")
        total = ZERO
        for combo in itertools.product(*expanded):
            coeff = ONE
            for _, c in combo:
                coeff = coeff * c
            v = self.value(*(w for w, _ in combo))
            if v:
                total += coeff * v
        return total

    def tabulate(self, bound: int) -> "ExplicitCochain":
        """Explicit table of the nonzero values on words with |m| <= bound."""
        words = list(dihedral_words(bound))
        table = {}
        for args in itertools.product(words, repeat=self.degree + 1):
            v = self.value(*args)
            if v:
                table[args] = v
        return ExplicitCochain(self.degree, table, name=self.name)

    def to_json_dict(self, bound: int) -> dict:
        return self.tabulate(bound).to_json_dict(bound)


@dataclass
class Cochain0(Cochain):
    """Trace on CΓ: ψ(Sⁿ) = aₙ, ψ(S^{2n}e) = b₀, ψ(S^{2n+1}e) = b₁."""

    a: Dict[int, Scalar] = field(default_factory=dict)
    b0: Scalar = ZERO
    b1: Scalar = ZERO
    name: str = ""
    degree: int = field(default=0, init=False)

    def __post_init__(self):
        self.a = _clean(self.a)
        self.b0, self.b1 = as_scalar(self.b0), as_scalar(self.b1)
        for n, v in self.a.items():
            if self.a.get(-n, ZERO) != v:
                raise SymmetryViolationError(f"a_{n} = {v} but a_{-n} = {self.a.get(-n, ZERO)}; a must be even")

    def value(self, w: DihedralWord) -> Scalar:
        if w.flip == 0:
            return self.a.get(w.power, ZERO)
        return self.b1 if w.power % 2 else self.b0

    def __add__(self, other: "Cochain0") -> "Cochain0":
        a = dict(self.a)
        for n, v in other.a.items():
            a[n] = a.get(n, ZERO) + v
        return Cochain0(a, self.b0 + other.b0, self.b1 + other.b1)

    def scale(self, k) -> "Cochain0":
        k = as_scalar(k)
        return Cochain0({n: k * v for n, v in self.a.items()}, k * self.b0, k * self.b1, name=self.name)

    def to_json_dict(self, bound: Optional[int] = None) -> dict:
        return {
            "degree": 0,
            "kind": "trace",
            "name": self.name,
            "a": _scalar_list(self.a),
            "b0": _scalar_dict(self.b0),
            "b1": _scalar_dict(self.b1),
        }


class LinearFunctional(Cochain):
    """Degree-0 functional ψ(S^m) = a_m, ψ(S^m e) = b(m); need not be a trace."""

    degree = 0

    def __init__(self, a: Mapping[int, object], b: Callable[[int], Scalar], name: str = ""):
        self.a = _clean(a)
        self._b = b
        self._b_cache: Dict[int, Scalar] = {}
        self.name = name

    def b(self, m: int) -> Scalar:
        if m not in self._b_cache:
            self._b_cache[m] = self._b(m)
        return self._b_cache[m]

    def value(self, w: DihedralWord) -> Scalar:
        if w.flip == 0:
            return self.a.get(w.power, ZERO)
        return self.b(w.power)

    def to_json_dict(self, bound: int) -> dict:
        return {
            "degree": 0,
            "kind": "functional",
            "name": self.name,
            "bound": bound,
            "a": _scalar_list(self.a),
            "b": _scalar_list({m: self.b(m) for m in range(-bound, bound + 1) if self.b(m)}),
        }


class CocycleCochain1(Cochain):
    """General 1-cocycle on CΓ from data (cₙ, dₙ), d₋ₙ = −dₙ.

        φ(S^m, Sⁿ)     = 0
        φ(S^m, Sⁿe)    = sign(m) Σ_{j=0}^{|m|-1} c_{n-|m|+1+2j}
        φ(S^m e, Sⁿ)   = −φ(Sⁿ, S^m e)
        φ(S^m e, Sⁿe)  = d_{n-m}

    For m >= 1 the sum is Σ_{k=0}^{m-1} c_{n+m-1-2k}, the same set of terms.
    """

    degree = 1

    def __init__(self, c: Mapping[int, object] = None, d: Mapping[int, object] = None, name: str = ""):
        self.c = _clean(c)
        self.d = _clean(d)
        self.name = name
        for n, v in self.d.items():
            if self.d.get(-n, ZERO) != -v:
                raise SymmetryViolationError(f"d_{n} = {v} but d_{-n} = {self.d.get(-n, ZERO)}; d must be odd")

    def mixed(self, m: int, n: int) -> Scalar:
        """φ(S^m, Sⁿe)."""
        if m == 0 or not self.c:
            return ZERO
        total = ZERO
        k = abs(m)
        for j in range(k):
            v = self.c.get(n - k + 1 + 2 * j)
            if v is not None:
                total += v
        return total if m > 0 else -total

    def value(self, x: DihedralWord, y: DihedralWord) -> Scalar:
        if x.flip == 0 and y.flip == 0:
            return ZERO
        if x.flip == 0:
            return self.mixed(x.power, y.power)
        if y.flip == 0:
            return -self.mixed(y.power, x.power)
        return self.d.get(y.power - x.power, ZERO)

    def to_json_dict(self, bound: Optional[int] = None) -> dict:
        return {"degree": 1, "kind": "cocycle", "name": self.name,
                "c": _scalar_list(self.c), "d": _scalar_list(self.d)}


CoefficientFamily = Callable[[int, int], Scalar]


class CoefficientCochain1(Cochain):
    """1-cochain from coefficient families:

        φ(S^m, Sⁿ) = α_{m,n},  φ(S^m, Sⁿe) = β_{m,n},
        φ(Sⁿe, S^m) = −β_{m,n}, φ(S^m e, Sⁿe) = γ_{m,n}
    """

    degree = 1

    def __init__(self, alpha: CoefficientFamily, beta: CoefficientFamily, gamma: CoefficientFamily,
                 name: str = ""):
        self.alpha, self.beta, self.gamma = alpha, beta, gamma
        self.name = name

    def value(self, x: DihedralWord, y: DihedralWord) -> Scalar:
        if x.flip == 0 and y.flip == 0:
            return self.alpha(x.power, y.power)
        if x.flip == 0:
            return self.beta(x.power, y.power)
        if y.flip == 0:
            return -self.beta(y.power, x.power)
        return self.gamma(x.power, y.power)


class RuleCochain(Cochain):
    def __init__(self, degree: int, rule: Callable[..., Scalar], name: str = ""):
        self.degree = degree
        self.rule = rule
        self.name = name

    def value(self, *words: DihedralWord) -> Scalar:
        return self.rule(*words)


class ExplicitCochain(Cochain):
    """Finite value table, zero off the table."""

    def __init__(self, degree: int, table: Mapping[Words, object], name: str = ""):
        self.degree = degree
        self.name = name
        self.table: Dict[Words, Scalar] = {}
        for args, v in table.items():
            if len(args) != degree + 1:
                raise ArityMismatchError(f"table entry {args} does not have {degree + 1} arguments")
            v = as_scalar(v)
            if v:
                self.table[tuple(args)] = v

    def value(self, *words: DihedralWord) -> Scalar:
        return self.table.get(words, ZERO)

    def to_json_dict(self, bound: Optional[int] = None) -> dict:
        return {
            "degree": self.degree,
            "kind": "explicit",
            "name": self.name,
            "bound": bound,
            "support": [
                {"args": [w.as_list() for w in args], **_scalar_dict(v)}
                for args, v in sorted(self.table.items())
            ],
        }


# ── Boundary, cyclicity, periodicity ───────────────────────────────────────────

def boundary_b(c: Cochain) -> Cochain:
    """Hochschild boundary on degrees 0 and 1.

        (bψ)(x, y)    = ψ(xy) − ψ(yx)
        (bφ)(x, y, z) = φ(xy, z) − φ(x, yz) + φ(zx, y)
    """
    if c.degree == 0:
        def rule0(x, y):
            return c.value(dihedral_mul(x, y)) - c.value(dihedral_mul(y, x))
        return RuleCochain(1, rule0, name=f"b({c.name})")
    if c.degree == 1:
        def rule1(x, y, z):
            return (c.value(dihedral_mul(x, y), z) - c.value(x, dihedral_mul(y, z))
                    + c.value(dihedral_mul(z, x), y))
        return RuleCochain(2, rule1, name=f"b({c.name})")
    raise ArityMismatchError(f"boundary_b is implemented on degrees 0 and 1, got degree {c.degree}")


def is_cyclic(c: Cochain, bound: int) -> bool:
    """Cyclicity on all word tuples with |m| <= bound.

    degree 0: ψ(xy) = ψ(yx); degree 1: φ(x,y) = −φ(y,x); degree 2: φ(x,y,z) = φ(z,x,y).
    """
    words = list(dihedral_words(bound))
    if c.degree == 0:
        return all(c.value(dihedral_mul(x, y)) == c.value(dihedral_mul(y, x)) for x in words for y in words)
    if c.degree == 1:
        return all(c.value(x, y) == -c.value(y, x) for x in words for y in words)
    if c.degree == 2:
        return all(c.value(x, y, z) == c.value(z, x, y) for x, y, z in itertools.product(words, repeat=3))
    raise ArityMismatchError(f"is_cyclic is implemented on degrees 0-2, got degree {c.degree}")


def periodicity_S(psi: Cochain, bound: Optional[int] = None) -> Cochain:
    """Sψ(x, y, z) = ψ(xyz); tabulated when a bound is given."""
    if psi.degree != 0:
        raise ArityMismatchError("periodicity_S is applied to degree-0 cocycles")

    def rule(x, y, z):
        return psi.value(dihedral_mul(dihedral_mul(x, y), z))

    out = RuleCochain(2, rule, name=f"S({psi.name})")
    return out.tabulate(bound) if bound is not None else out


# ── Classification data ────────────────────────────────────────────────────────

def cocycle_from_data(kind: str, data: Mapping) -> Cochain:
    """Build a cocycle from classification data.

    kind ``"0"`` / ``"trace"``: {"a": {n: v}, "b0": v, "b1": v}
    kind ``"1"`` / ``"cocycle"``: {"c": {n: v}, "d": {n: v}}

    Raises:
        SymmetryViolationError: a not even or d not odd.
        UnknownNameError: unknown kind.
    """
    if kind in ("0", "trace"):
        return Cochain0(dict(data.get("a", {})), data.get("b0", 0), data.get("b1", 0), name=data.get("name", ""))
    if kind in ("1", "cocycle"):
        return CocycleCochain1(data.get("c", {}), data.get("d", {}), name=data.get("name", ""))
    raise UnknownNameError(f"unknown cocycle kind '{kind}'")


def psi_0() -> Cochain0:
    return Cochain0({0: 1}, name="psi_0")


def psi_1() -> Cochain0:
    return Cochain0(b0=2, name="psi_1")


def psi_2() -> Cochain0:
    return Cochain0(b1=2, name="psi_2")


def psi_k(k: int) -> Cochain0:
    """ψ_k(Sⁿ) = 1 iff n = ±k, zero on reflections."""
    return Cochain0({k: 1, -k: 1}, name=f"psi_{k}")


def distinguished_cocycles() -> List[Cochain0]:
    return [psi_0(), psi_1(), psi_2()]


def dual_basis() -> List[Cochain0]:
    """ψ₀′ = ψ₀ − ½ψ₁ − ½ψ₂, ψ₁, ψ₂: exactly dual to (1, P₁, P₂)."""
    half = gaussian("1/2")
    psi0_dual = psi_0() + psi_1().scale(-half) + psi_2().scale(-half)
    psi0_dual.name = "psi_0'"
    return [psi0_dual, psi_1(), psi_2()]


def standard_projections() -> List[Tuple[str, GroupRingElement]]:
    return [("[1]", GroupRingElement.one(GroupTag.DIHEDRAL)), ("[P1]", ga.P1), ("[P2]", ga.P2)]


def pair_with_projection(c: Cochain, p: GroupRingElement) -> Scalar:
    """(n!)⁻¹ c(p, ..., p) for a cochain of degree 2n.

    Raises:
        NotAProjectionError: p² ≠ p.
    """
    if c.degree % 2:
        raise ArityMismatchError(f"pairing needs an even-degree cochain, got degree {c.degree}")
    if p * p != p:
        raise NotAProjectionError(f"{p} is not idempotent")
    n = c.degree // 2
    return c(*([p] * (c.degree + 1))) * gaussian(f"1/{math.factorial(n)}")


def duality_matrix(basis: Optional[Sequence[Cochain]] = None) -> List[List[Scalar]]:
    """[pair(ψᵢ, Pⱼ)] over (1, P₁, P₂); defaults to the dual basis."""
    basis = dual_basis() if basis is None else basis
    return [[pair_with_projection(psi, p) for _, p in standard_projections()] for psi in basis]


# ── Coboundary solvers ─────────────────────────────────────────────────────────

def _prefix_b(c: Mapping[int, Scalar]) -> Callable[[int], Scalar]:
    """b with b_{n+1} − b_{n-1} = cₙ and b₀ = b₋₁ = 0."""

    def total(indices) -> Scalar:
        s = ZERO
        for i in indices:
            v = c.get(i)
            if v is not None:
                s += v
        return s

    def b(n: int) -> Scalar:
        if n % 2 == 0:
            m = n // 2
            if m > 0:
                return total(range(1, 2 * m, 2))
            return -total(range(2 * m + 1, 0, 2))
        m = (n - 1) // 2
        if m >= 0:
            return total(range(0, 2 * m + 1, 2))
        return -total(range(2 * m + 2, -1, 2))

    return b


def solve_1_coboundary(phi: CocycleCochain1) -> LinearFunctional:
    """ψ with bψ = φ: a_m = −d_m for m > 0 (0 otherwise), b from prefix sums of c."""
    if not isinstance(phi, CocycleCochain1):
        raise TypeError("solve_1_coboundary expects a cocycle given by (c, d) data")
    a = {m: -v for m, v in phi.d.items() if m > 0}
    logger.debug("solve_1_coboundary |c|=%s |d|=%s", len(phi.c), len(phi.d))
    return LinearFunctional(a, _prefix_b(phi.c), name=f"solve_1({phi.name})")


def solve_2_coboundary(k: int, c_k=0) -> CoefficientCochain1:
    """φ with bφ = Sψ_k, k ≠ 0.

        α_{m,n} = (m−n)/(m+n) on m + n = ±k
        β ≡ 0
        γ_{m,n} = 2n/k − c_k on m − n = k,  −2m/k + c_k on m − n = −k

    Raises:
        NoSolutionError: k = 0, where Sψ₀ is not a coboundary.
    """
    if k == 0:
        raise NoSolutionError("Sψ_0 is not a coboundary: ψ_0 pairs nontrivially with [1]")
    ck = as_scalar(c_k)
    kq = rational(k)

    def alpha(m: int, n: int) -> Scalar:
        if abs(m + n) != abs(k):
            return ZERO
        return gaussian(rational(m - n) / rational(m + n))

    def beta(m: int, n: int) -> Scalar:
        return ZERO

    def gamma(m: int, n: int) -> Scalar:
        if m - n == k:
            return gaussian(rational(2 * n) / kq) - ck
        if m - n == -k:
            return gaussian(rational(-2 * m) / kq) + ck
        return ZERO

    return CoefficientCochain1(alpha, beta, gamma, name=f"solve_2({k})")


# ── Verification ───────────────────────────────────────────────────────────────

@dataclass
class VerificationReport:
    identity: str
    bound: int
    tuples_checked: int = 0
    failures: List[dict] = field(default_factory=list)
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "bound": self.bound,
            "tuples_checked": self.tuples_checked,
            "passed": self.passed,
            "failures": self.failures,
        }


def verify_equal(identity: str, lhs: Cochain, rhs: Optional[Cochain], bound: int) -> VerificationReport:
    """Compare two cochains (rhs None means zero) on all word tuples with |m| <= bound."""
    if rhs is not None and rhs.degree != lhs.degree:
        raise ArityMismatchError(f"comparing degree {lhs.degree} with degree {rhs.degree}")
    report = VerificationReport(identity, bound)
    words = list(dihedral_words(bound))
    for args in itertools.product(words, repeat=lhs.degree + 1):
        report.tuples_checked += 1
        left = lhs.value(*args)
        right = rhs.value(*args) if rhs is not None else ZERO
        if left != right:
            report.failure_count += 1
            if len(report.failures) < MAX_REPORTED_FAILURES:
                report.failures.append({
                    "args": [str(w) for w in args],
                    "lhs": _scalar_dict(left),
                    "rhs": _scalar_dict(right),
                })
    logger.debug("verify %s bound=%s checked=%s failures=%s",
                 identity, bound, report.tuples_checked, report.failure_count)
    return report


def verify_b_squared(psi: Cochain, bound: int) -> VerificationReport:
    return verify_equal(f"b(b {psi.name or 'psi'}) = 0", boundary_b(boundary_b(psi)), None, bound)


def verify_cocycle(phi: Cochain, bound: int) -> VerificationReport:
    return verify_equal(f"b {phi.name or 'phi'} = 0", boundary_b(phi), None, bound)


def verify_solve_1(phi: CocycleCochain1, bound: int = 16) -> VerificationReport:
    return verify_equal("b(solve_1(phi)) = phi", boundary_b(solve_1_coboundary(phi)), phi, bound)


def verify_solve_2(k: int, c_k=0, bound: int = 12) -> VerificationReport:
    return verify_equal(f"b(solve_2({k})) = S psi_{k}",
                        boundary_b(solve_2_coboundary(k, c_k)), periodicity_S(psi_k(k)), bound)


# ── Randomized suites ──────────────────────────────────────────────────────────

def _random_rational(rng: np.random.Generator) -> Scalar:
    num = int(rng.integers(-6, 7))
    den = int(rng.integers(1, 5))
    return gaussian(f"{num}/{den}")


def random_cochain0(rng: np.random.Generator, support: int = 8) -> Cochain0:
    a = {}
    for n in range(0, support + 1):
        if rng.random() < 0.5:
            v = _random_rational(rng)
            a[n] = v
            a[-n] = v
    return Cochain0(a, _random_rational(rng), _random_rational(rng), name="psi")


def random_cocycle(rng: np.random.Generator, support: int = 8) -> CocycleCochain1:
    c = {n: _random_rational(rng) for n in range(-support, support + 1) if rng.random() < 0.5}
    d = {}
    for n in range(1, support + 1):
        if rng.random() < 0.5:
            v = _random_rational(rng)
            d[n] = v
            d[-n] = -v
    return CocycleCochain1(c, d, name="phi")


@dataclass
class SuiteReport:
    suite: str
    seed: Optional[int]
    reports: List[VerificationReport] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed_count(self) -> int:
        return sum(r.passed for r in self.reports)

    @property
    def passed(self) -> bool:
        return self.passed_count == len(self.reports)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "summary": f"{self.passed_count}/{len(self.reports)}",
            "reports": [r.to_dict() for r in self.reports],
            **self.extra,
        }


def suite_verify_0(seed: int = 0, count: int = 100, bound: int = 12, support: int = 4) -> SuiteReport:
    """b∘b = 0 on random traces, plus cyclicity of the distinguished cocycles."""
    rng = np.random.default_rng(seed)
    suite = SuiteReport("verify-0", seed)
    for psi in distinguished_cocycles():
        ok = is_cyclic(psi, bound)
        report = VerificationReport(f"{psi.name} is a trace", bound, tuples_checked=(4 * bound + 2) ** 2,
                                    failure_count=0 if ok else 1)
        suite.reports.append(report)
    for _ in range(count):
        suite.reports.append(verify_b_squared(random_cochain0(rng, support), bound))
    return suite


def suite_verify_1(seed: int = 0, count: int = 100, bound: int = 12, support: int = 8) -> SuiteReport:
    """Random (c, d) data give antisymmetric 1-cocycles."""
    rng = np.random.default_rng(seed)
    suite = SuiteReport("verify-1", seed)
    for _ in range(count):
        phi = random_cocycle(rng, support)
        suite.reports.append(verify_cocycle(phi, bound))
        anti = is_cyclic(phi, bound)
        suite.reports.append(VerificationReport("phi(x,y) = -phi(y,x)", bound,
                                                tuples_checked=(4 * bound + 2) ** 2,
                                                failure_count=0 if anti else 1))
    return suite


def suite_solve_1(seed: int = 0, count: int = 200, bound: int = 16, support: int = 8) -> SuiteReport:
    if bound < 2 * support:
        raise ValueError(f"bound {bound} is too small for data support {support}; need >= {2 * support}")
    rng = np.random.default_rng(seed)
    suite = SuiteReport("solve-1", seed)
    for _ in range(count):
        suite.reports.append(verify_solve_1(random_cocycle(rng, support), bound))
    return suite


def suite_solve_2(ks: Sequence[int] = range(1, 9), c_values: Sequence = (0, 1, "-3/2"),
                  bound: int = 12) -> SuiteReport:
    suite = SuiteReport("solve-2", None)
    for k in ks:
        for c_k in c_values:
            report = verify_solve_2(k, c_k, bound)
            report.identity += f" (c_k = {c_k})"
            suite.reports.append(report)
    return suite


def suite_duality() -> SuiteReport:
    """Dual basis pairs to the identity; S preserves every pairing."""
    suite = SuiteReport("duality", None)
    raw = duality_matrix(distinguished_cocycles())
    dual = duality_matrix()
    identity = [[ONE if i == j else ZERO for j in range(3)] for i in range(3)]
    labels = [label for label, _ in standard_projections()]
    suite.reports.append(VerificationReport("[pair(psi_i', P_j)] = identity", 0, tuples_checked=9,
                                            failure_count=0 if dual == identity else 1))
    mismatches = 0
    for psi in distinguished_cocycles():
        S_psi = periodicity_S(psi)
        for _, p in standard_projections():
            if pair_with_projection(S_psi, p) != pair_with_projection(psi, p):
                mismatches += 1
    suite.reports.append(VerificationReport("pair(S psi, P) = pair(psi, P)", 0, tuples_checked=9,
                                            failure_count=mismatches))
    suite.extra = {
        "classes": labels,
        "raw_matrix": [[format_rational(v.x) for v in row] for row in raw],
        "matrix": [[format_rational(v.x) for v in row] for row in dual],
    }
    return suite


CYCLIC_SUBCOMMANDS = ("verify-0", "verify-1", "solve-1", "solve-2", "duality")


def run_suite(subcommand: str, seed: int = 0, bound: Optional[int] = None, count: Optional[int] = None,
              k: Optional[int] = None, c_k="0") -> SuiteReport:
    """Dispatch a named verification suite; unset knobs take each suite's defaults.

    Raises:
        UnknownNameError: subcommand is not one of CYCLIC_SUBCOMMANDS.
    """
    logger.info("cyclic %s seed=%s bound=%s count=%s k=%s", subcommand, seed, bound, count, k)
    if subcommand == "verify-0":
        return suite_verify_0(seed, count or 100, bound or 12)
    if subcommand == "verify-1":
        return suite_verify_1(seed, count or 100, bound or 12)
    if subcommand == "solve-1":
        return suite_solve_1(seed, count or 200, bound or 16)
    if subcommand == "solve-2":
        if k is not None:
            if k == 0:
                raise NoSolutionError("Sψ_0 is not a coboundary: ψ_0 pairs nontrivially with [1]")
            return suite_solve_2([k], [c_k], bound or 12)
        return suite_solve_2(bound=bound or 12)
    if subcommand == "duality":
        return suite_duality()
    raise UnknownNameError(f"unknown cyclic subcommand '{subcommand}'. Known: {', '.join(CYCLIC_SUBCOMMANDS)}")

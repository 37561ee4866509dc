"""Fredholm module catalog and K-theory pairings.

Even modules pair with projections through the stabilized trace
(-1)^n Tr(γ π(p) [F, π(p)]^{2n}); odd modules pair with unitaries through the
index of the compression E π(u) E, E = ½(1 + F).
"""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from services import group_algebra as ga
from services.errors import (
    BackendError,
    NonStabilizedError,
    NotAProjectionError,
    NotUnitaryError,
    TagMismatchError,
    UnknownNameError,
    WindowTooSmallError,
)
from services.group_algebra import GroupRingElement, GroupTag
from services.kclasses import ALGEBRA_GROUP, AlgebraTag, is_projection, is_unitary
from services.operator_rep import (
    DEFAULT_TOLERANCE,
    Backend,
    RepresentationName,
    RepresentationSpec,
    Window,
    WindowedOperator,
    WindowKind,
    commutator,
    distance,
    get_representation,
    grading_operator,
    homotopy_operator_Ft,
    identity,
    max_norm,
    off_diagonal,
    phase_operator_F0,
    rank,
    rectangular_rank_float,
    represent,
    shell_columns,
    sign_operator,
    trace,
    with_group,
)
from services.scalars import I, Scalar, format_scalar, is_integer, to_complex, to_int

logger = logging.getLogger(__name__)

StructureRecipe = Callable[[Window, Backend], WindowedOperator]


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class AlgebraMap:
    """*-homomorphism source → target given on the group ring."""

    name: str
    source: AlgebraTag
    target: AlgebraTag
    apply: Callable[[GroupRingElement], GroupRingElement] = field(compare=False, repr=False)

    @property
    def is_identity(self) -> bool:
        return self.name == "id"


def identity_map(algebra: AlgebraTag) -> AlgebraMap:
    return AlgebraMap("id", algebra, algebra, lambda a: a)


ALPHA_MINUS_ONE = AlgebraMap("alpha_-1", AlgebraTag.A, AlgebraTag.A, ga.alpha_minus_one)
INCLUSION_B = AlgebraMap("i", AlgebraTag.CT, AlgebraTag.B, ga.circle_to_semidirect)
INCLUSION_A = AlgebraMap("j", AlgebraTag.CT, AlgebraTag.A, ga.circle_to_dihedral)
QUOTIENT = AlgebraMap("q", AlgebraTag.B, AlgebraTag.A, ga.quotient_hom)


@dataclass(frozen=True)
class FredholmModule:
    """(H, π, F) with optional grading γ; H is ``rep.blocks`` copies of a window."""

    name: str
    parity: Parity
    algebra: AlgebraTag
    rep: RepresentationSpec
    symmetry: StructureRecipe = field(compare=False, repr=False)
    grading: Optional[StructureRecipe] = field(default=None, compare=False, repr=False)
    backend: Backend = Backend.EXACT
    exact_capable: bool = True
    twist: Tuple[AlgebraMap, ...] = ()
    description: str = field(default="", compare=False)

    def window(self, N: int) -> Window:
        if self.rep.window_kind == WindowKind.POINT:
            return Window.point()
        return Window(self.rep.window_kind, N)

    def resolve_backend(self, backend: Optional[Backend] = None) -> Backend:
        backend = Backend(backend) if backend else self.backend
        if backend == Backend.EXACT and not self.exact_capable:
            raise BackendError(f"{self.name} has irrational entries; only the float backend applies")
        return backend

    def pull_to_rep(self, a: GroupRingElement) -> GroupRingElement:
        """Apply the pullback maps, most recent first, landing in the representation's ring."""
        expected = ALGEBRA_GROUP[self.algebra]
        if a.group != expected:
            raise TagMismatchError(f"{self.name} is a module over {self.algebra.value}; got a {a.group.value} element")
        if self.algebra == AlgebraTag.CT:
            ga.check_circle(a)
        for alpha in reversed(self.twist):
            a = alpha.apply(a)
        return a

    def pi(self, a: GroupRingElement, w: Window, backend: Optional[Backend] = None,
           margin: int = 0) -> WindowedOperator:
        return represent(self.rep, self.pull_to_rep(a), w, margin=margin,
                         backend=self.resolve_backend(backend))

    def F(self, w: Window, backend: Optional[Backend] = None) -> WindowedOperator:
        return self.symmetry(w, self.resolve_backend(backend))

    def gamma(self, w: Window, backend: Optional[Backend] = None) -> Optional[WindowedOperator]:
        if self.grading is None:
            return None
        return self.grading(w, self.resolve_backend(backend))

    def summary(self) -> dict:
        return {
            "name": self.name,
            "parity": self.parity.value,
            "algebra": self.algebra.value,
            "representation": self.rep.name.value,
            "window": self.rep.window_kind.value,
            "backend": self.backend.value,
            "pullbacks": [m.name for m in self.twist],
            "description": self.description,
        }


# ── Catalog ────────────────────────────────────────────────────────────────────

def _flip_F(w: Window, backend: Backend) -> WindowedOperator:
    """[[0, 1], [1, 0]] on C ⊕ C."""
    one = identity(w, 1, backend)
    return off_diagonal(one, one)


def _graded_sign_F(w: Window, backend: Backend) -> WindowedOperator:
    """F₁ = [[0, iF], [-iF, 0]] with F the sign operator."""
    f = sign_operator(w, backend)
    return off_diagonal(f.scale(I), f.scale(-I))


def _sign_F(w: Window, backend: Backend) -> WindowedOperator:
    return sign_operator(w, backend)


def _gamma(w: Window, backend: Backend) -> WindowedOperator:
    return grading_operator(w, backend)


def _phase_F(w: Window, backend: Backend) -> WindowedOperator:
    f0 = phase_operator_F0(w)
    return off_diagonal(f0, f0.adjoint())


def homotopy_symmetry(t) -> StructureRecipe:
    """F̃_t = [[0, F_t], [F_t*, 0]] on ℓ²(Z²) ⊕ ℓ²(Z²)."""
    t = Fraction(t)

    def recipe(w: Window, backend: Backend) -> WindowedOperator:
        ft = homotopy_operator_Ft(w, t)
        return off_diagonal(ft, ft.adjoint())

    return recipe


def _scalar_rep(group: GroupTag) -> RepresentationSpec:
    return with_group(get_representation(RepresentationName.PHI_SCALAR), group)


def _build_catalog() -> Dict[str, FredholmModule]:
    rep = get_representation
    modules = [
        FredholmModule("z0_CT", Parity.EVEN, AlgebraTag.CT, _scalar_rep(GroupTag.SEMIDIRECT),
                       _flip_F, _gamma, description="C ⊕ C, φ(U) = 1, off-diagonal F"),
        FredholmModule("z1_CT", Parity.ODD, AlgebraTag.CT, rep(RepresentationName.PI1_CIRCLE),
                       _sign_F, description="ℓ²(Z), U = shift, F = sign"),
        FredholmModule("w0_A", Parity.EVEN, AlgebraTag.A, _scalar_rep(GroupTag.DIHEDRAL),
                       _flip_F, _gamma, description="C ⊕ C, φ(S) = φ(e) = 1, off-diagonal F"),
        FredholmModule("w1_A", Parity.EVEN, AlgebraTag.A, rep(RepresentationName.PI1_DIHEDRAL),
                       _graded_sign_F, _gamma, description="ℓ²(Z) ⊕ ℓ²(Z), π₁, F₁ = [[0, iF], [-iF, 0]]"),
        FredholmModule("w2_A", Parity.EVEN, AlgebraTag.A, rep(RepresentationName.PI2_DIHEDRAL),
                       _graded_sign_F, _gamma, description="ℓ²(Z) ⊕ ℓ²(Z), π₁∘α₋₁, F₁"),
        FredholmModule("w0_B", Parity.EVEN, AlgebraTag.B, _scalar_rep(GroupTag.SEMIDIRECT),
                       _flip_F, _gamma, description="C ⊕ C, φ(U) = φ(V) = 1, off-diagonal F"),
        FredholmModule("w1_B", Parity.ODD, AlgebraTag.B, rep(RepresentationName.PI1_SEMIDIRECT_INDUCED),
                       _sign_F, description="ℓ²(Z), π₁′(U) = I, π₁′(V) = shift, F = sign"),
        FredholmModule("d1z1_B", Parity.EVEN, AlgebraTag.B, rep(RepresentationName.PI_L2Z2),
                       _phase_F, _gamma, backend=Backend.FLOAT, exact_capable=False,
                       description="ℓ²(Z²) ⊕ ℓ²(Z²), F̃₀ = [[0, F₀], [F₀*, 0]]"),
    ]
    return {m.name: m for m in modules}


_CATALOG = _build_catalog()


def catalog_names() -> List[str]:
    return list(_CATALOG)


def catalog(name: str) -> FredholmModule:
    """Look up a catalog module.

    Raises:
        UnknownNameError: name is not in the catalog.
    """
    try:
        return _CATALOG[name]
    except KeyError:
        raise UnknownNameError(f"unknown module '{name}'. Known: {', '.join(_CATALOG)}")


def boundary_image(name: str) -> FredholmModule:
    """Catalog identity ∂₀(z0_CT) = z1_CT."""
    if name != "z0_CT":
        raise UnknownNameError(f"no boundary image recorded for '{name}'")
    return catalog("z1_CT")


def pullback(M: FredholmModule, alpha: AlgebraMap) -> FredholmModule:
    """Same H, F, γ with representation a ↦ π(α(a))."""
    if alpha.target != M.algebra:
        raise TagMismatchError(f"{alpha.name} lands in {alpha.target.value}, {M.name} is over {M.algebra.value}")
    if alpha.is_identity:
        return M
    return replace(M, name=f"{alpha.name}*({M.name})", algebra=alpha.source, twist=M.twist + (alpha,))


def homotopy_module(t) -> FredholmModule:
    """y_t: i*(∂₁(z₁)) with F̃₀ replaced by F̃_t."""
    base = pullback(catalog("d1z1_B"), INCLUSION_B)
    return replace(base, name=f"y_{Fraction(t)}", symmetry=homotopy_symmetry(t))


def generators(algebra: AlgebraTag) -> List[GroupRingElement]:
    if algebra == AlgebraTag.A:
        return [ga.word(1, 0), ga.word(0, 1)]
    if algebra == AlgebraTag.B:
        return [ga.pair(1, 0), ga.pair(0, 1)]
    return [ga.pair(1, 0)]


# ── Pairings ───────────────────────────────────────────────────────────────────

@dataclass
class PairingResult:
    module: str
    klass: str
    value: int
    stabilized: bool
    window_used: int
    degrees_checked: List[int] = field(default_factory=list)
    values: List[object] = field(default_factory=list)
    kernel_dims: Optional[Tuple[int, int]] = None

    def to_dict(self) -> dict:
        out = {
            "module": self.module,
            "class": self.klass,
            "value": self.value,
            "stabilized": self.stabilized,
            "window": self.window_used,
        }
        if self.degrees_checked:
            out["degrees"] = self.degrees_checked
        if self.kernel_dims is not None:
            out["kernel_dims"] = list(self.kernel_dims)
        return out


def margin_required(radius: int, n_max: int) -> int:
    """N needed for a degree-2n pairing of an element with support radius r."""
    return radius * (2 * n_max + 1) + 2


def _integer_value(v, tol: float):
    if isinstance(v, Scalar):
        return to_int(v) if is_integer(v) else None
    nearest = round(v.real)
    return nearest if abs(v - nearest) <= tol else None


def even_pairing(M: FredholmModule, p: GroupRingElement, n_max: int = 2, N: int = 32,
                 backend: Optional[Backend] = None, tol: float = DEFAULT_TOLERANCE,
                 label: Optional[str] = None) -> PairingResult:
    """⟨ch(M), [p]⟩ via value(n) = (-1)^n Tr(γ π(p) [F, π(p)]^{2n}), n = 1..n_max.

    Raises:
        NotAProjectionError: p fails p² = p = p*.
        WindowTooSmallError: N violates the margin rule.
        NonStabilizedError: value(n_max) differs from value(n_max - 1).
        BackendError: the module only has a float realization.
    """
    if M.parity != Parity.EVEN:
        raise TagMismatchError(f"{M.name} is odd; use odd_pairing")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if not M.exact_capable:
        raise BackendError(f"{M.name}: commutators are compact but not finite rank; the trace does not stabilize")
    if not is_projection(p):
        raise NotAProjectionError(f"{p} is not a projection")

    target = M.pull_to_rep(p)
    w = M.window(N)
    if w.kind != WindowKind.POINT:
        required = margin_required(target.radius(), n_max)
        if N < required:
            raise WindowTooSmallError(
                f"pairing {M.name} with radius-{target.radius()} element at degree {n_max} needs N >= {required}",
                required=required,
            )

    backend = M.resolve_backend(backend)
    logger.debug("even_pairing module=%s class=%s N=%s n_max=%s backend=%s",
                 M.name, label or p, N, n_max, backend.value)
    P = M.pi(p, w, backend)
    F = M.F(w, backend)
    gamma = M.gamma(w, backend)
    C = commutator(F, P)
    C2 = C @ C
    X = gamma @ P
    values = []
    for n in range(1, n_max + 1):
        X = X @ C2
        if not X.interior_exact:
            raise WindowTooSmallError(f"truncation reached the trace support at degree {n}", required=2 * N)
        tr = trace(X)
        values.append(-tr if n % 2 else tr)

    ints = [_integer_value(v, tol) for v in values]
    stabilized = ints[-1] is not None and ints[-1] == ints[-2]
    if not stabilized:
        shown = [format_scalar(v) if isinstance(v, Scalar) else str(v) for v in values]
        raise NonStabilizedError(f"{M.name} against {label or p}: values {shown} did not stabilize", values=shown)
    return PairingResult(M.name, label or str(p), ints[-1], True, N,
                         degrees_checked=list(range(1, n_max + 1)), values=ints)


def _real(v) -> float:
    return float(to_complex(v).real) if isinstance(v, Scalar) else float(v.real)


def _bandwidth(op: WindowedOperator) -> int:
    width = 0
    for i, j in op.entries():
        (ri, _), (cj, _) = op.locate(i), op.locate(j)
        width = max(width, abs(ri - cj))
    return width


def _compression_kernel(op: WindowedOperator, rows: List[int], cols: List[int], tol: float) -> int:
    """dim ker of the rows×cols submatrix."""
    row_pos = {r: k for k, r in enumerate(rows)}
    col_pos = {c: k for k, c in enumerate(cols)}
    if op.backend == Backend.EXACT:
        dod: Dict[int, Dict[int, Scalar]] = {}
        for (i, j), v in op.entries().items():
            if i in row_pos and j in col_pos:
                dod.setdefault(row_pos[i], {})[col_pos[j]] = v
        if not dod:
            return len(cols)
        return len(cols) - int(DomainMatrix(dod, (len(rows), len(cols)), QQ_I).rank())
    sub = op.matrix.tocsr()[rows, :][:, cols]
    return len(cols) - rectangular_rank_float(sub, tol)


def odd_pairing(M: FredholmModule, u: GroupRingElement, N: int = 32,
                backend: Optional[Backend] = None, tol: float = DEFAULT_TOLERANCE,
                label: Optional[str] = None) -> PairingResult:
    """Index pairing k₊ − k₋ of the compressions of π(u)* and π(u) to E = ½(1+F).

    Domain indices are kept ``bandwidth`` away from the window edge so that no
    column of the compression is truncated.

    Raises:
        NotUnitaryError: u*u ≠ 1 or uu* ≠ 1.
        WindowTooSmallError: N < support radius + bandwidth + 2.
    """
    if M.parity != Parity.ODD:
        raise TagMismatchError(f"{M.name} is even; use even_pairing")
    if not is_unitary(u):
        raise NotUnitaryError(f"{u} is not unitary")

    backend = M.resolve_backend(backend)
    w = M.window(N)
    U = M.pi(u, w, backend)
    b = _bandwidth(U)
    required = M.pull_to_rep(u).radius() + b + 2
    if N < required:
        raise WindowTooSmallError(f"index of {M.name} needs N >= {required}", required=required)

    F = M.F(w, backend)
    positive = sorted(i for (i, j), v in F.entries().items() if i == j and _real(v) > 0)
    inner = [i for i in positive if abs(U.locate(i)[0]) <= N - b]
    logger.debug("odd_pairing module=%s class=%s N=%s bandwidth=%s", M.name, label or u, N, b)

    k_minus = _compression_kernel(U, positive, inner, tol)
    k_plus = _compression_kernel(U.adjoint(), positive, inner, tol)
    return PairingResult(M.name, label or str(u), k_plus - k_minus, True, N, kernel_dims=(k_plus, k_minus))


def degeneracy_check(M: FredholmModule, gens: Sequence[GroupRingElement], N: int = 16,
                     backend: Optional[Backend] = None, tol: float = DEFAULT_TOLERANCE) -> bool:
    """True iff [F, π(g)] vanishes for every generator."""
    w = M.window(N)
    F = M.F(w, backend)
    for g in gens:
        C = commutator(F, M.pi(g, w, backend))
        if not C.is_zero(tol):
            logger.debug("degeneracy_check %s: [F, π(%s)] has max-norm %s", M.name, g, max_norm(C))
            return False
    return True


# ── Module verification ────────────────────────────────────────────────────────

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class ModuleReport:
    module: str
    window: int
    backend: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> dict:
        return {
            "module": self.module,
            "window": self.window,
            "backend": self.backend,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _close(A: WindowedOperator, B: WindowedOperator, tol: float) -> Tuple[bool, float]:
    if A.backend == Backend.EXACT and B.backend == Backend.EXACT:
        d = max_norm(A - B)
        return d == 0, d
    d = distance(A, B)
    return d <= tol, d


def commutator_ranks(M: FredholmModule, N: int, backend: Optional[Backend] = None) -> Dict[str, int]:
    w = M.window(N)
    F = M.F(w, backend)
    return {str(g): rank(commutator(F, M.pi(g, w, backend))) for g in generators(M.algebra)}


def commutator_shell_norms(M: FredholmModule, gen: GroupRingElement, radii: Sequence[int],
                           N: Optional[int] = None) -> List[Tuple[int, float]]:
    """Max-norm of [F, π(gen)] on columns with R <= max(|p|,|q|) <= 2R, per R."""
    if M.rep.window_kind != WindowKind.PLANE:
        raise TagMismatchError(f"{M.name} does not act on ℓ²(Z²)")
    needed = 2 * max(radii) + 2
    N = max(N or 0, needed)
    w = M.window(N)
    C = commutator(M.F(w, Backend.FLOAT), M.pi(gen, w, Backend.FLOAT))
    logger.debug("commutator_shell_norms module=%s N=%s radii=%s", M.name, N, list(radii))
    return [(R, max_norm(C, shell_columns(C, R, 2 * R))) for R in radii]


def verify_module(M: FredholmModule, N: int = 16, tol: float = DEFAULT_TOLERANCE,
                  backend: Optional[Backend] = None) -> ModuleReport:
    """Check F = F*, F² = 1, grading relations and the compactness proxy."""
    backend = M.resolve_backend(backend)
    w = M.window(N)
    report = ModuleReport(M.name, N, backend.value)
    F = M.F(w, backend)
    one = identity(w, M.rep.blocks, backend)

    ok, d = _close(F, F.adjoint(), tol)
    report.checks.append(CheckResult("self_adjoint", ok, f"|F - F*| = {d:.3g}"))
    ok, d = _close(F @ F, one, tol)
    report.checks.append(CheckResult("involution", ok, f"|F² - 1| = {d:.3g}"))

    gens = generators(M.algebra)
    if M.parity == Parity.EVEN:
        g = M.gamma(w, backend)
        ok1, _ = _close(g, g.adjoint(), tol)
        ok2, _ = _close(g @ g, one, tol)
        ok3, d3 = _close(g @ F, -(F @ g), tol)
        ok4 = all(_close(g @ M.pi(x, w, backend), M.pi(x, w, backend) @ g, tol)[0] for x in gens)
        report.checks.append(CheckResult("grading_self_adjoint", ok1))
        report.checks.append(CheckResult("grading_involution", ok2))
        report.checks.append(CheckResult("grading_anticommutes", ok3, f"|γF + Fγ| = {d3:.3g}"))
        report.checks.append(CheckResult("grading_commutes_with_pi", ok4))

    if backend == Backend.EXACT:
        if w.kind == WindowKind.POINT:
            report.checks.append(CheckResult("finite_rank_commutators", True, "finite-dimensional H"))
        else:
            small, large = commutator_ranks(M, N, backend), commutator_ranks(M, N + 8, backend)
            report.checks.append(CheckResult(
                "finite_rank_commutators", small == large,
                f"ranks at N={N}: {small}; at N={N + 8}: {large}",
            ))
    else:
        radii = [r for r in (N // 8, N // 4, (N - 2) // 2) if r >= 1]
        radii = sorted(set(radii))
        gen = generators(M.algebra)[-1]
        norms = commutator_shell_norms(M, gen, radii, N)
        decreasing = all(a[1] > b[1] for a, b in zip(norms, norms[1:]))
        bounded = all(v <= 4 / R for R, v in norms)
        report.checks.append(CheckResult(
            "compact_commutators", decreasing and bounded,
            "shell norms " + ", ".join(f"R={R}: {v:.3g}" for R, v in norms),
        ))
    logger.info("verify_module %s N=%s passed=%s", M.name, N, report.passed)
    return report


def homotopy_check(N: int = 32, t_grid: Sequence = (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1),
                   tol: float = DEFAULT_TOLERANCE) -> ModuleReport:
    """Verify the path y_t from i*(∂₁(z₁)) to a degenerate module."""
    report = ModuleReport("y_t", N, Backend.FLOAT.value)
    base = pullback(catalog("d1z1_B"), INCLUSION_B)
    w = base.window(N)
    one = identity(w, base.rep.blocks, Backend.FLOAT)
    for t in t_grid:
        t = Fraction(t)
        Ft = homotopy_symmetry(t)(w, Backend.FLOAT)
        ok1, d1 = _close(Ft, Ft.adjoint(), tol)
        ok2, d2 = _close(Ft @ Ft, one, tol)
        report.checks.append(CheckResult(f"t={t}: self_adjoint", ok1, f"{d1:.3g}"))
        report.checks.append(CheckResult(f"t={t}: involution", ok2, f"{d2:.3g}"))

    d0 = distance(homotopy_symmetry(0)(w, Backend.FLOAT), base.F(w))
    report.checks.append(CheckResult("y_0 = i*(d1z1_B)", d0 <= 1e-15, f"{d0:.3g}"))
    degenerate = degeneracy_check(homotopy_module(1), [ga.pair(1, 0)], N=N, tol=tol)
    report.checks.append(CheckResult("y_1 degenerate on U", degenerate))
    logger.info("homotopy_check N=%s passed=%s", N, report.passed)
    return report

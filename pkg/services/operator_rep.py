"""Windowed sparse operators on ℓ²(Z), ℓ²(Z²) and C.

An operator lives on one of three windows:

* ``line``: the interval [−N, N] of ℓ²(Z)
* ``plane``: the box [−N, N]² of ℓ²(Z²)
* ``point``: a single basis vector (the C of the scalar modules)

and acts on ``blocks`` copies of it (H ⊕ H for graded modules). Basis vector
(block b, local index i) has flat index ``b * window.size + i``.

Every representation used here is monomial: a group element sends a basis
vector to ± another basis vector. Images that fall outside the window are
dropped; the flat index of every such column is recorded in ``leaks`` so
that callers can tell which computed columns are trustworthy.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy import sparse
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from services.errors import (
    DimensionMismatchError,
    OutOfRangeError,
    TagMismatchError,
    UnknownNameError,
    WindowTooSmallError,
)
from services.group_algebra import (
    DihedralWord,
    GroupElement,
    GroupRingElement,
    GroupTag,
    SemidirectPair,
)
from services.scalars import ONE, ZERO, Scalar, as_scalar, conjugate, format_rational, to_complex

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-12


class WindowKind(str, Enum):
    LINE = "line"
    PLANE = "plane"
    POINT = "point"


class Backend(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


Coord = Union[int, Tuple[int, int]]


@dataclass(frozen=True)
class Window:
    kind: WindowKind
    N: int = 0

    def __post_init__(self):
        if self.kind != WindowKind.POINT and self.N < 1:
            raise WindowTooSmallError(f"window size N must be >= 1, got {self.N}", required=1)

    @classmethod
    def line(cls, N: int) -> "Window":
        return cls(WindowKind.LINE, N)

    @classmethod
    def plane(cls, N: int) -> "Window":
        return cls(WindowKind.PLANE, N)

    @classmethod
    def point(cls) -> "Window":
        return cls(WindowKind.POINT, 0)

    @property
    def width(self) -> int:
        return 2 * self.N + 1

    @property
    def size(self) -> int:
        if self.kind == WindowKind.LINE:
            return self.width
        if self.kind == WindowKind.PLANE:
            return self.width * self.width
        return 1

    def coords(self) -> List[Coord]:
        if self.kind == WindowKind.LINE:
            return list(range(-self.N, self.N + 1))
        if self.kind == WindowKind.PLANE:
            r = range(-self.N, self.N + 1)
            return [(p, q) for p in r for q in r]
        return [0]

    def index_of(self, coord: Coord) -> Optional[int]:
        """Local index of a coordinate, or None when it lies outside the window."""
        N = self.N
        if self.kind == WindowKind.LINE:
            return coord + N if -N <= coord <= N else None
        if self.kind == WindowKind.PLANE:
            p, q = coord
            if -N <= p <= N and -N <= q <= N:
                return (p + N) * self.width + (q + N)
            return None
        return 0 if coord == 0 else None

    def coord_of(self, index: int) -> Coord:
        if self.kind == WindowKind.LINE:
            return index - self.N
        if self.kind == WindowKind.PLANE:
            p, q = divmod(index, self.width)
            return (p - self.N, q - self.N)
        return 0

    def describe(self) -> str:
        if self.kind == WindowKind.LINE:
            return f"[-{self.N},{self.N}]"
        if self.kind == WindowKind.PLANE:
            return f"[-{self.N},{self.N}]^2"
        return "point"


# ── Representations ────────────────────────────────────────────────────────────

# action(g, block, coord) -> (image coord, sign) or None when g acts as zero
Action = Callable[[GroupElement, int, Coord], Optional[Tuple[Coord, int]]]


class RepresentationName(str, Enum):
    PI0_DIHEDRAL = "pi0_dihedral"
    PI1_DIHEDRAL = "pi1_dihedral"
    PI2_DIHEDRAL = "pi2_dihedral"
    PI1_SEMIDIRECT_INDUCED = "pi1_semidirect_induced"
    PI_L2Z2 = "pi_l2Z2"
    PHI_SCALAR = "phi_scalar"
    PI1_CIRCLE = "pi1_circle"


@dataclass(frozen=True)
class RepresentationSpec:
    name: RepresentationName
    window_kind: WindowKind
    group: GroupTag
    blocks: int
    action: Action = field(compare=False, repr=False)
    summary: str = field(default="", compare=False)


def _parity_sign(k: int) -> int:
    return -1 if k % 2 else 1


def _dihedral_base(g: DihedralWord, n: int) -> int:
    # S^m e^ε e_n = e_{m + (-1)^ε n}
    return g.power + _parity_sign(g.flip) * n


def _pi0(g, block, n):
    return _dihedral_base(g, n), 1


def _pi1(g, block, n):
    return _dihedral_base(g, n), _parity_sign(g.flip * block)


def _pi2(g, block, n):
    # e e_n = e_{-(n+1)}, so S^m e e_n = e_{m-n-1}
    return _dihedral_base(g, n) - g.flip, _parity_sign(g.flip * block)


def _pi1_circle(g: SemidirectPair, block, k):
    if g.n != 0:
        raise TagMismatchError(f"{g} is not a power of U; pi1_circle only represents C(T)")
    return k + g.m, 1


def _pi1_induced(g: SemidirectPair, block, k):
    return k + g.n, 1


def _pi_l2z2(g: SemidirectPair, block, coord):
    p, q = coord
    p2 = p + g.n
    return (p2, q + g.m * _parity_sign(p2)), 1


def _phi_scalar(g, block, coord):
    # φ ≡ 1 on group elements on the first summand, 0 on the second
    return (0, 1) if block == 0 else None


REPRESENTATIONS: Dict[RepresentationName, RepresentationSpec] = {
    spec.name: spec
    for spec in (
        RepresentationSpec(RepresentationName.PI0_DIHEDRAL, WindowKind.LINE, GroupTag.DIHEDRAL, 1,
                           _pi0, "S e_n = e_{n+1}, e e_n = e_{-n}"),
        RepresentationSpec(RepresentationName.PI1_DIHEDRAL, WindowKind.LINE, GroupTag.DIHEDRAL, 2,
                           _pi1, "S ↦ diag(S, S), e ↦ diag(e, -e), e e_n = e_{-n}"),
        RepresentationSpec(RepresentationName.PI2_DIHEDRAL, WindowKind.LINE, GroupTag.DIHEDRAL, 2,
                           _pi2, "S ↦ diag(S, S), e ↦ diag(e, -e), e e_n = e_{-(n+1)}"),
        RepresentationSpec(RepresentationName.PI1_SEMIDIRECT_INDUCED, WindowKind.LINE,
                           GroupTag.SEMIDIRECT, 1, _pi1_induced, "U ↦ I, V e_k = e_{k+1}"),
        RepresentationSpec(RepresentationName.PI_L2Z2, WindowKind.PLANE, GroupTag.SEMIDIRECT, 2,
                           _pi_l2z2, "V e_{p,q} = e_{p+1,q}, U e_{p,q} = e_{p,q+(-1)^p}"),
        RepresentationSpec(RepresentationName.PHI_SCALAR, WindowKind.POINT, GroupTag.DIHEDRAL, 2,
                           _phi_scalar, "φ ⊕ 0 on C ⊕ C, φ(S) = φ(e) = 1"),
        RepresentationSpec(RepresentationName.PI1_CIRCLE, WindowKind.LINE, GroupTag.SEMIDIRECT, 1,
                           _pi1_circle, "U e_k = e_{k+1}"),
    )
}


def get_representation(name) -> RepresentationSpec:
    try:
        return REPRESENTATIONS[RepresentationName(name)]
    except ValueError:
        raise UnknownNameError(f"unknown representation '{name}'")


def with_group(spec: RepresentationSpec, group: GroupTag) -> RepresentationSpec:
    """Same action read on another group ring (used by the scalar modules over B)."""
    return RepresentationSpec(spec.name, spec.window_kind, group, spec.blocks, spec.action, spec.summary)


# ── Operators ──────────────────────────────────────────────────────────────────

Entry = Tuple[int, int]


def _build_matrix(entries: Dict[Entry, object], dim: int, backend: Backend):
    if backend == Backend.EXACT:
        dod: Dict[int, Dict[int, Scalar]] = {}
        for (i, j), v in entries.items():
            if v:
                dod.setdefault(i, {})[j] = v
        return DomainMatrix(dod, (dim, dim), QQ_I)
    rows, cols, data = [], [], []
    for (i, j), v in entries.items():
        rows.append(i)
        cols.append(j)
        data.append(v)
    return sparse.csr_matrix(
        (np.asarray(data, dtype=np.complex128), (rows, cols)), shape=(dim, dim), dtype=np.complex128
    )


def _exact_dod(matrix) -> Dict[int, Dict[int, Scalar]]:
    return matrix.to_sparse().rep


def _row_support(matrix, backend: Backend, rows: Iterable[int]) -> set:
    out = set()
    if backend == Backend.EXACT:
        dod = _exact_dod(matrix)
        for i in rows:
            out.update(j for j, v in dod.get(i, {}).items() if v)
        return out
    csr = matrix.tocsr()
    for i in rows:
        lo, hi = csr.indptr[i], csr.indptr[i + 1]
        out.update(int(j) for j, v in zip(csr.indices[lo:hi], csr.data[lo:hi]) if v != 0)
    return out


def _column_support(matrix, backend: Backend, cols: Iterable[int]) -> set:
    cols = set(cols)
    if not cols:
        return set()
    out = set()
    if backend == Backend.EXACT:
        for i, row in _exact_dod(matrix).items():
            if any(v and j in cols for j, v in row.items()):
                out.add(i)
        return out
    csc = matrix.tocsc()
    for j in cols:
        lo, hi = csc.indptr[j], csc.indptr[j + 1]
        out.update(int(i) for i, v in zip(csc.indices[lo:hi], csc.data[lo:hi]) if v != 0)
    return out


@dataclass(frozen=True)
class WindowedOperator:
    """Square operator on ``blocks`` copies of a window."""

    window: Window
    blocks: int
    matrix: object = field(repr=False)
    backend: Backend = Backend.EXACT
    leaks: FrozenSet[int] = frozenset()
    adjoint_leaks: FrozenSet[int] = frozenset()

    @property
    def dim(self) -> int:
        return self.blocks * self.window.size

    # structure
    def _check(self, other: "WindowedOperator") -> None:
        if (self.window, self.blocks, self.backend) != (other.window, other.blocks, other.backend):
            raise DimensionMismatchError(
                f"operators on {self.window.describe()}x{self.blocks} ({self.backend.value}) and "
                f"{other.window.describe()}x{other.blocks} ({other.backend.value}) cannot be combined"
            )

    def _like(self, matrix, leaks, adjoint_leaks) -> "WindowedOperator":
        return WindowedOperator(self.window, self.blocks, matrix, self.backend,
                                frozenset(leaks), frozenset(adjoint_leaks))

    # arithmetic
    def __matmul__(self, other: "WindowedOperator") -> "WindowedOperator":
        self._check(other)
        if self.backend == Backend.EXACT:
            product = self.matrix.matmul(other.matrix)
        else:
            product = (self.matrix @ other.matrix).tocsr()
        leaks = set(other.leaks) | _row_support(other.matrix, self.backend, self.leaks)
        adjoint_leaks = set(self.adjoint_leaks) | _column_support(
            self.matrix, self.backend, other.adjoint_leaks
        )
        return self._like(product, leaks, adjoint_leaks)

    def __add__(self, other: "WindowedOperator") -> "WindowedOperator":
        self._check(other)
        return self._like(self.matrix + other.matrix, self.leaks | other.leaks,
                          self.adjoint_leaks | other.adjoint_leaks)

    def __sub__(self, other: "WindowedOperator") -> "WindowedOperator":
        self._check(other)
        return self._like(self.matrix - other.matrix, self.leaks | other.leaks,
                          self.adjoint_leaks | other.adjoint_leaks)

    def __neg__(self) -> "WindowedOperator":
        return self.scale(-1)

    def scale(self, k) -> "WindowedOperator":
        if self.backend == Backend.EXACT:
            matrix = self.matrix * as_scalar(k)
        else:
            matrix = self.matrix * (to_complex(k) if isinstance(k, Scalar) else complex(k))
        return self._like(matrix, self.leaks, self.adjoint_leaks)

    def power(self, k: int) -> "WindowedOperator":
        out = identity(self.window, self.blocks, self.backend)
        for _ in range(k):
            out = out @ self
        return out

    def adjoint(self) -> "WindowedOperator":
        if self.backend == Backend.EXACT:
            dod: Dict[int, Dict[int, Scalar]] = {}
            for i, row in _exact_dod(self.matrix).items():
                for j, v in row.items():
                    dod.setdefault(j, {})[i] = conjugate(v)
            matrix = DomainMatrix(dod, (self.dim, self.dim), QQ_I)
        else:
            matrix = self.matrix.conj().T.tocsr()
        return self._like(matrix, self.adjoint_leaks, self.leaks)

    def to_float(self) -> "WindowedOperator":
        if self.backend == Backend.FLOAT:
            return self
        entries = {k: to_complex(v) for k, v in self.entries().items()}
        return WindowedOperator(self.window, self.blocks, _build_matrix(entries, self.dim, Backend.FLOAT),
                                Backend.FLOAT, self.leaks, self.adjoint_leaks)

    # inspection
    def entries(self) -> Dict[Entry, object]:
        """Nonzero entries keyed by flat (row, col)."""
        if self.backend == Backend.EXACT:
            return {(i, j): v for i, row in _exact_dod(self.matrix).items() for j, v in row.items() if v}
        coo = self.matrix.tocoo()
        return {(int(i), int(j)): complex(v) for i, j, v in zip(coo.row, coo.col, coo.data) if v != 0}

    def flat_index(self, coord: Coord, block: int = 0) -> int:
        local = self.window.index_of(coord)
        if local is None or not 0 <= block < self.blocks:
            raise OutOfRangeError(f"{coord} (block {block}) is outside {self.window.describe()}")
        return block * self.window.size + local

    def locate(self, flat: int) -> Tuple[Coord, int]:
        block, local = divmod(flat, self.window.size)
        return self.window.coord_of(local), block

    def entry(self, row: Coord, col: Coord, block_r: int = 0, block_c: int = 0):
        i, j = self.flat_index(row, block_r), self.flat_index(col, block_c)
        if self.backend == Backend.EXACT:
            return _exact_dod(self.matrix).get(i, {}).get(j, ZERO)
        return complex(self.matrix[i, j])

    def nonzero_columns(self) -> set:
        return {j for (_, j) in self.entries()}

    def is_zero(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        return max_norm(self) <= (0 if self.backend == Backend.EXACT else tol)

    @property
    def interior_exact(self) -> bool:
        """No nonzero computed column was built from a truncated image."""
        return not (self.leaks & self.nonzero_columns())

    def dump(self) -> str:
        """Coordinate list "row col block_r block_c re im", one line per entry."""
        lines = []
        for (i, j), v in self.entries().items():
            (rc, br), (cc, bc) = self.locate(i), self.locate(j)
            if self.backend == Backend.EXACT:
                re, im = format_rational(v.x), format_rational(v.y)
            else:
                re, im = repr(float(v.real)), repr(float(v.imag))
            key = (_coord_key(rc), _coord_key(cc), br, bc)
            lines.append((key, f"{_coord_text(rc)} {_coord_text(cc)} {br} {bc} {re} {im}"))
        return "\n".join(text for _, text in sorted(lines))


def _coord_key(c: Coord):
    return c if isinstance(c, tuple) else (c,)


def _coord_text(c: Coord) -> str:
    return f"{c[0]},{c[1]}" if isinstance(c, tuple) else str(c)


def from_entries(window: Window, blocks: int, entries: Dict[Entry, object],
                 backend: Backend = Backend.EXACT) -> WindowedOperator:
    dim = blocks * window.size
    if backend == Backend.EXACT:
        entries = {k: as_scalar(v) for k, v in entries.items()}
    else:
        entries = {k: (to_complex(v) if isinstance(v, Scalar) else complex(v)) for k, v in entries.items()}
    return WindowedOperator(window, blocks, _build_matrix(entries, dim, backend), backend)


def identity(window: Window, blocks: int = 1, backend: Backend = Backend.EXACT) -> WindowedOperator:
    dim = blocks * window.size
    return from_entries(window, blocks, {(i, i): ONE for i in range(dim)}, backend)


def zero(window: Window, blocks: int = 1, backend: Backend = Backend.EXACT) -> WindowedOperator:
    return from_entries(window, blocks, {}, backend)


def diagonal(window: Window, values: Callable[[Coord], object], backend: Backend) -> WindowedOperator:
    """Single-block diagonal operator with entry values(coord)."""
    entries = {(i, i): values(c) for i, c in enumerate(window.coords())}
    return from_entries(window, 1, entries, backend)


def block_matrix(parts: List[List[Optional[WindowedOperator]]]) -> WindowedOperator:
    """Assemble single-block operators into a k×k block operator."""
    k = len(parts)
    template = next(op for row in parts for op in row if op is not None)
    size = template.window.size
    entries: Dict[Entry, object] = {}
    leaks, adjoint_leaks = set(), set()
    for r, row in enumerate(parts):
        for c, op in enumerate(row):
            if op is None:
                continue
            template._check(op)
            if op.blocks != 1:
                raise DimensionMismatchError("block_matrix expects single-block parts")
            for (i, j), v in op.entries().items():
                entries[(r * size + i, c * size + j)] = v
            leaks.update(c * size + j for j in op.leaks)
            adjoint_leaks.update(r * size + i for i in op.adjoint_leaks)
    out = from_entries(template.window, k, entries, template.backend)
    return WindowedOperator(out.window, k, out.matrix, out.backend, frozenset(leaks), frozenset(adjoint_leaks))


def represent(spec: RepresentationSpec, a: GroupRingElement, w: Window, margin: int = 0,
              backend: Backend = Backend.EXACT) -> WindowedOperator:
    """Windowed matrix of π(a) for a monomial representation.

    Raises:
        TagMismatchError: a is not in the group ring the representation acts on.
        WindowTooSmallError: support radius of a exceeds N - margin.
    """
    if a.group != spec.group:
        raise TagMismatchError(f"{spec.name.value} represents {spec.group.value} elements, got {a.group.value}")
    if w.kind != spec.window_kind:
        raise DimensionMismatchError(f"{spec.name.value} acts on {spec.window_kind.value} windows")
    if w.kind != WindowKind.POINT:
        r = a.radius()
        if r > w.N - margin:
            raise WindowTooSmallError(
                f"support radius {r} needs N >= {r + margin}, window has N = {w.N}", required=r + margin
            )

    size = w.size
    coords = w.coords()
    entries: Dict[Entry, Scalar] = {}
    leaks, adjoint_leaks = set(), set()
    for g, coeff in a.terms.items():
        for block in range(spec.blocks):
            for col, coord in enumerate(coords):
                image = spec.action(g, block, coord)
                if image is None:
                    continue
                target, sign = image
                flat_col = block * size + col
                row = w.index_of(target)
                if row is None:
                    leaks.add(flat_col)
                    continue
                key = (block * size + row, flat_col)
                entries[key] = entries.get(key, ZERO) + (coeff if sign > 0 else -coeff)
            # rows reached from outside the window are the truncated columns of π(a)*
            for col, coord in enumerate(coords):
                image = spec.action(g.inverse(), block, coord)
                if image is not None and w.index_of(image[0]) is None:
                    adjoint_leaks.add(block * size + col)

    op = from_entries(w, spec.blocks, entries, backend)
    return WindowedOperator(w, spec.blocks, op.matrix, backend, frozenset(leaks), frozenset(adjoint_leaks))


# ── Symmetry operators ─────────────────────────────────────────────────────────

def sign(n: int) -> int:
    """sign(n) = +1 for n >= 0, -1 otherwise."""
    return 1 if n >= 0 else -1


def sign_operator(w: Window, backend: Backend = Backend.EXACT) -> WindowedOperator:
    if w.kind != WindowKind.LINE:
        raise DimensionMismatchError("sign_operator acts on line windows")
    return diagonal(w, lambda n: sign(n), backend)


def _phase(p: int, q: int, scale: float) -> complex:
    if p == 0 and q == 0:
        return 1.0 + 0j
    if q == 0 or scale == 0.0:
        return complex(sign(p))
    z = complex(p, scale * q)
    return z / abs(z)


def phase_operator_F0(w: Window) -> WindowedOperator:
    """Diagonal (p+iq)/|p+iq| on ℓ²(Z²), with e_{0,0} fixed."""
    if w.kind != WindowKind.PLANE:
        raise DimensionMismatchError("phase_operator_F0 acts on plane windows")
    return diagonal(w, lambda c: _phase(c[0], c[1], 1.0), Backend.FLOAT)


def homotopy_operator_Ft(w: Window, t) -> WindowedOperator:
    """Diagonal (p + i(1-t)q)/|p + i(1-t)q|, sign(p) on q = 0; sign(p) everywhere at t = 1."""
    if w.kind != WindowKind.PLANE:
        raise DimensionMismatchError("homotopy_operator_Ft acts on plane windows")
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise OutOfRangeError(f"homotopy parameter must lie in [0, 1], got {t}")
    scale = float(1 - t)
    return diagonal(w, lambda c: _phase(c[0], c[1], scale), Backend.FLOAT)


def grading_operator(w: Window, backend: Backend = Backend.EXACT) -> WindowedOperator:
    """γ = diag(1, -1) on H ⊕ H."""
    one = identity(w, 1, backend)
    return block_matrix([[one, None], [None, -one]])


def off_diagonal(upper: WindowedOperator, lower: WindowedOperator) -> WindowedOperator:
    """[[0, upper], [lower, 0]]."""
    return block_matrix([[None, upper], [lower, None]])


# ── Commutators and numerics ───────────────────────────────────────────────────

def commutator(A: WindowedOperator, B: WindowedOperator) -> WindowedOperator:
    return A @ B - B @ A


def anticommutator(A: WindowedOperator, B: WindowedOperator) -> WindowedOperator:
    return A @ B + B @ A


def rank(A: WindowedOperator, tol: float = DEFAULT_TOLERANCE) -> int:
    """Exact rank by elimination over Q(i); numerical rank for the float backend."""
    if A.backend == Backend.EXACT:
        if not A.entries():
            return 0
        return int(A.matrix.rank())
    return rectangular_rank_float(A.matrix, tol)


def rectangular_rank_float(matrix, tol: float = DEFAULT_TOLERANCE) -> int:
    dense = matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix)
    if dense.size == 0 or not np.any(dense):
        return 0
    return int(np.linalg.matrix_rank(dense, tol=tol))


def trace(A: WindowedOperator):
    if A.backend == Backend.EXACT:
        dod = _exact_dod(A.matrix)
        total = ZERO
        for i, row in dod.items():
            total += row.get(i, ZERO)
        return total
    return complex(A.matrix.diagonal().sum())


def max_norm(A: WindowedOperator, columns: Optional[Iterable[int]] = None) -> float:
    """Largest entry modulus, optionally restricted to the given flat columns."""
    allowed = set(columns) if columns is not None else None
    best = 0.0
    for (_, j), v in A.entries().items():
        if allowed is not None and j not in allowed:
            continue
        best = max(best, abs(to_complex(v)) if isinstance(v, Scalar) else abs(v))
    return best


def shell_columns(A: WindowedOperator, inner: int, outer: int) -> List[int]:
    """Flat columns whose plane coordinate has inner <= max(|p|,|q|) <= outer."""
    if A.window.kind != WindowKind.PLANE:
        raise DimensionMismatchError("shells are defined on plane windows")
    cols = []
    for flat in range(A.dim):
        (p, q), _ = A.locate(flat)
        if inner <= max(abs(p), abs(q)) <= outer:
            cols.append(flat)
    return cols


def distance(A: WindowedOperator, B: WindowedOperator) -> float:
    """Max-norm of A - B (float view)."""
    return max_norm(A.to_float() - B.to_float())

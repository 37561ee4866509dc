"""Group and group-ring arithmetic for Γ = Z⋊Z₂ and G = Z⋊Z.

Γ is generated by S (infinite order) and e (order two) with eSe = S⁻¹; every
element has the canonical form S^m e^ε with e on the right. G is Z² with
(m,n)(p,q) = (m + (-1)^n p, n + q), U = (1,0), V = (0,1).

Group-ring scalars are exact Gaussian rationals (see services.scalars).
"""
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, Mapping, Set, Tuple, Union

from services.errors import TagMismatchError
from services.scalars import (
    ONE,
    ZERO,
    Scalar,
    as_scalar,
    conjugate,
    format_rational,
    format_scalar,
    gaussian,
)

logger = logging.getLogger(__name__)


class GroupTag(str, Enum):
    DIHEDRAL = "dihedral"
    SEMIDIRECT = "semidirect"


# ── Group elements ─────────────────────────────────────────────────────────────

@dataclass(frozen=True, order=True)
class DihedralWord:
    """S^power e^flip."""

    power: int = 0
    flip: int = 0

    def __post_init__(self):
        if self.flip not in (0, 1):
            raise ValueError(f"flip must be 0 or 1, got {self.flip}")

    tag = GroupTag.DIHEDRAL

    def __mul__(self, other: "DihedralWord") -> "DihedralWord":
        return dihedral_mul(self, other)

    def inverse(self) -> "DihedralWord":
        if self.flip:
            return self
        return DihedralWord(-self.power, 0)

    def radius(self) -> int:
        return abs(self.power) + self.flip

    def as_list(self):
        return [self.power, self.flip]

    def __str__(self) -> str:
        base = "1" if self.power == 0 else ("S" if self.power == 1 else f"S^{self.power}")
        if not self.flip:
            return base
        return "e" if self.power == 0 else f"{base}e"


@dataclass(frozen=True, order=True)
class SemidirectPair:
    """(m, n) = U^m V^n in G."""

    m: int = 0
    n: int = 0

    tag = GroupTag.SEMIDIRECT

    def __mul__(self, other: "SemidirectPair") -> "SemidirectPair":
        return semidirect_mul(self, other)

    def inverse(self) -> "SemidirectPair":
        sign = -1 if self.n % 2 else 1
        return SemidirectPair(-sign * self.m, -self.n)

    def radius(self) -> int:
        return max(abs(self.m), abs(self.n))

    def as_list(self):
        return [self.m, self.n]

    def __str__(self) -> str:
        return f"({self.m},{self.n})"


GroupElement = Union[DihedralWord, SemidirectPair]

S = DihedralWord(1, 0)
E = DihedralWord(0, 1)
DIHEDRAL_ONE = DihedralWord(0, 0)
U = SemidirectPair(1, 0)
V = SemidirectPair(0, 1)
SEMIDIRECT_ONE = SemidirectPair(0, 0)


def dihedral_mul(g: DihedralWord, h: DihedralWord) -> DihedralWord:
    """S^m e^a · S^p e^b = S^(m + (-1)^a p) e^(a+b)."""
    sign = -1 if g.flip else 1
    return DihedralWord(g.power + sign * h.power, (g.flip + h.flip) % 2)


def semidirect_mul(g: SemidirectPair, h: SemidirectPair) -> SemidirectPair:
    sign = -1 if g.n % 2 else 1
    return SemidirectPair(g.m + sign * h.m, g.n + h.n)


def identity_of(tag: GroupTag) -> GroupElement:
    return DIHEDRAL_ONE if tag == GroupTag.DIHEDRAL else SEMIDIRECT_ONE


def element_from_list(tag: GroupTag, values) -> GroupElement:
    a, b = (int(v) for v in values)
    return DihedralWord(a, b) if tag == GroupTag.DIHEDRAL else SemidirectPair(a, b)


def conjugacy_class(g: DihedralWord, bound: int) -> Set[DihedralWord]:
    """All hgh⁻¹ with conjugator h = S^m e^ε, |m| ≤ bound."""
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    out = set()
    for m in range(-bound, bound + 1):
        for flip in (0, 1):
            h = DihedralWord(m, flip)
            out.add(h * g * h.inverse())
    return out


def semidirect_conjugacy_class(g: SemidirectPair, bound: int) -> Set[SemidirectPair]:
    """Conjugates of g in G by (m, n) with |m|, |n| ≤ bound."""
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    out = set()
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            h = SemidirectPair(m, n)
            out.add(h * g * h.inverse())
    return out


def dihedral_words(bound: int) -> Iterator[DihedralWord]:
    """S^m and S^m e for |m| ≤ bound."""
    for m in range(-bound, bound + 1):
        yield DihedralWord(m, 0)
        yield DihedralWord(m, 1)


# ── Group ring ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class GroupRingElement:
    """Finitely supported map group element → Gaussian rational.

    Zero coefficients are never stored.
    """

    group: GroupTag
    terms: Mapping[GroupElement, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for g, c in self.terms.items():
            if g.tag != self.group:
                raise TagMismatchError(f"{g} is not an element of the {self.group.value} group")
            c = as_scalar(c)
            if c:
                clean[g] = c
        object.__setattr__(self, "terms", clean)

    # construction
    @classmethod
    def zero(cls, group: GroupTag) -> "GroupRingElement":
        return cls(group, {})

    @classmethod
    def one(cls, group: GroupTag) -> "GroupRingElement":
        return cls(group, {identity_of(group): ONE})

    @classmethod
    def of(cls, g: GroupElement, coeff=ONE) -> "GroupRingElement":
        return cls(g.tag, {g: as_scalar(coeff)})

    @classmethod
    def from_terms(cls, group: GroupTag, pairs: Iterable[Tuple[GroupElement, object]]):
        acc: Dict[GroupElement, Scalar] = {}
        for g, c in pairs:
            acc[g] = acc.get(g, ZERO) + as_scalar(c)
        return cls(group, acc)

    # arithmetic
    def _check(self, other: "GroupRingElement") -> None:
        if self.group != other.group:
            raise TagMismatchError(
                f"cannot combine {self.group.value} and {other.group.value} elements"
            )

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        acc = dict(self.terms)
        for g, c in other.terms.items():
            acc[g] = acc.get(g, ZERO) + c
        return GroupRingElement(self.group, acc)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def scale(self, coeff) -> "GroupRingElement":
        k = as_scalar(coeff)
        return GroupRingElement(self.group, {g: k * c for g, c in self.terms.items()})

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        return ring_mul(self, other)

    def star(self) -> "GroupRingElement":
        return ring_star(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.group, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, g: GroupElement) -> Scalar:
        return self.terms.get(g, ZERO)

    def support(self):
        return sorted(self.terms)

    def radius(self) -> int:
        return max((g.radius() for g in self.terms), default=0)

    def map_elements(self, fn) -> "GroupRingElement":
        """Linear extension of a map on group elements (fn may change the tag)."""
        pairs = [(fn(g), c) for g, c in self.terms.items()]
        if not pairs:
            return self
        return GroupRingElement.from_terms(pairs[0][0].tag, pairs)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({format_scalar(c)})·{g}" for g, c in sorted(self.terms.items()))


def ring_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Convolution product over the group law."""
    a._check(b)
    acc: Dict[GroupElement, Scalar] = {}
    for g, x in a.terms.items():
        for h, y in b.terms.items():
            gh = g * h
            acc[gh] = acc.get(gh, ZERO) + x * y
    return GroupRingElement(a.group, acc)


def ring_star(a: GroupRingElement) -> GroupRingElement:
    """(Σ c_g g)* = Σ conj(c_g) g⁻¹."""
    return GroupRingElement(a.group, {g.inverse(): conjugate(c) for g, c in a.terms.items()})


def ring_power(a: GroupRingElement, k: int) -> GroupRingElement:
    out = GroupRingElement.one(a.group)
    for _ in range(k):
        out = out * a
    return out


# ── Named elements ─────────────────────────────────────────────────────────────

def word(power: int = 0, flip: int = 0, coeff=ONE) -> GroupRingElement:
    return GroupRingElement.of(DihedralWord(power, flip), coeff)


def pair(m: int = 0, n: int = 0, coeff=ONE) -> GroupRingElement:
    return GroupRingElement.of(SemidirectPair(m, n), coeff)


def half_sum(g: GroupElement) -> GroupRingElement:
    """½(1 + g)."""
    half = gaussian("1/2")
    return GroupRingElement.from_terms(g.tag, [(identity_of(g.tag), half), (g, half)])


P1 = half_sum(E)                       # ½(1+e)
P2 = half_sum(DihedralWord(1, 1))      # ½(1+Se)
P2_EXCHANGED = half_sum(DihedralWord(-1, 1))  # ½(1+eS) = ½(1+S⁻¹e)


# ── Structural homomorphisms ───────────────────────────────────────────────────

def quotient_word(g: SemidirectPair) -> DihedralWord:
    return DihedralWord(g.m, g.n % 2)


def quotient_hom(b: GroupRingElement) -> GroupRingElement:
    """CG → CΓ induced by U ↦ S, V ↦ e."""
    if b.group != GroupTag.SEMIDIRECT:
        raise TagMismatchError("quotient_hom expects an element of CG")
    if not b.terms:
        return GroupRingElement.zero(GroupTag.DIHEDRAL)
    return b.map_elements(quotient_word)


def alpha_minus_one_word(g: DihedralWord) -> DihedralWord:
    """S ↦ S, e ↦ S⁻¹e, so S^m e ↦ S^(m-1) e."""
    return DihedralWord(g.power - g.flip, g.flip)


def alpha_minus_one(a: GroupRingElement) -> GroupRingElement:
    if a.group != GroupTag.DIHEDRAL:
        raise TagMismatchError("α₋₁ acts on CΓ")
    if not a.terms:
        return a
    return a.map_elements(alpha_minus_one_word)


def circle_to_dihedral(a: GroupRingElement) -> GroupRingElement:
    """C(T) → A, U ↦ S. C(T) elements are supported on {(m, 0)} ⊂ G."""
    check_circle(a)
    if not a.terms:
        return GroupRingElement.zero(GroupTag.DIHEDRAL)
    return a.map_elements(lambda g: DihedralWord(g.m, 0))


def circle_to_semidirect(a: GroupRingElement) -> GroupRingElement:
    """C(T) → B, U ↦ U."""
    check_circle(a)
    return a


def check_circle(a: GroupRingElement) -> None:
    if a.group != GroupTag.SEMIDIRECT or any(g.n != 0 for g in a.terms):
        raise TagMismatchError("C(T) elements are supported on powers of U")


# ── JSON ───────────────────────────────────────────────────────────────────────

def to_json_dict(a: GroupRingElement) -> dict:
    return {
        "group": a.group.value,
        "terms": [
            {"elem": g.as_list(), "re": format_rational(c.x), "im": format_rational(c.y)}
            for g, c in sorted(a.terms.items())
        ],
    }


def from_json_dict(payload: Mapping) -> GroupRingElement:
    """Inverse of to_json_dict.

    Raises:
        ValueError: malformed payload (missing group, bad term, non-integer elem).
    """
    if not isinstance(payload, Mapping) or "group" not in payload:
        raise ValueError("group-ring element needs a 'group' field")
    tag = GroupTag(payload["group"])
    terms = payload.get("terms", [])
    if not isinstance(terms, list):
        raise ValueError("'terms' must be a list")
    pairs = []
    for t in terms:
        elem = t.get("elem") if isinstance(t, Mapping) else None
        if not isinstance(elem, list) or len(elem) != 2 or not all(isinstance(v, int) for v in elem):
            raise ValueError(f"term {t!r} needs 'elem' as a pair of integers")
        pairs.append((element_from_list(tag, elem), gaussian(t.get("re", "0/1"), t.get("im", "0/1"))))
    return GroupRingElement.from_terms(tag, pairs)


def dumps(a: GroupRingElement) -> str:
    return json.dumps(to_json_dict(a), sort_keys=True)


def loads(text: str) -> GroupRingElement:
    return from_json_dict(json.loads(text))

"""K-theory class representatives and the assembled pairing tables."""
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from services import group_algebra as ga
from services.errors import TagMismatchError, UnknownNameError
from services.group_algebra import GroupRingElement, GroupTag

logger = logging.getLogger(__name__)


class AlgebraTag(str, Enum):
    A = "A"
    B = "B"
    CT = "C(T)"

    @classmethod
    def parse(cls, value: str) -> "AlgebraTag":
        aliases = {"A": cls.A, "B": cls.B, "C(T)": cls.CT, "CT": cls.CT, "C_T": cls.CT}
        try:
            return aliases[value.strip()]
        except KeyError:
            raise UnknownNameError(f"unknown algebra '{value}'. Known: A, B, C(T)")


ALGEBRA_GROUP: Dict[AlgebraTag, GroupTag] = {
    AlgebraTag.A: GroupTag.DIHEDRAL,
    AlgebraTag.B: GroupTag.SEMIDIRECT,
    AlgebraTag.CT: GroupTag.SEMIDIRECT,
}


class ClassKind(str, Enum):
    PROJECTION = "projection"
    UNITARY = "unitary"


@dataclass(frozen=True)
class KClassRep:
    kind: ClassKind
    element: GroupRingElement
    algebra: AlgebraTag
    label: str

    def is_valid(self) -> bool:
        if self.kind == ClassKind.PROJECTION:
            return is_projection(self.element)
        return is_unitary(self.element)


def is_projection(a: GroupRingElement) -> bool:
    """a² = a = a*."""
    return a * a == a and a.star() == a


def is_unitary(a: GroupRingElement) -> bool:
    """a*a = aa* = 1."""
    one = GroupRingElement.one(a.group)
    return a.star() * a == one and a * a.star() == one


def standard_classes(algebra) -> List[KClassRep]:
    """Generators the pairing tables are built on.

    Raises:
        UnknownNameError: algebra is not one of A, B, C(T).
    """
    tag = algebra if isinstance(algebra, AlgebraTag) else AlgebraTag.parse(algebra)
    P, U = ClassKind.PROJECTION, ClassKind.UNITARY
    if tag == AlgebraTag.A:
        return [
            KClassRep(P, GroupRingElement.one(GroupTag.DIHEDRAL), tag, "[1]"),
            KClassRep(P, ga.P1, tag, "[P1]"),
            KClassRep(P, ga.P2, tag, "[P2]"),
        ]
    if tag == AlgebraTag.B:
        return [
            KClassRep(P, GroupRingElement.one(GroupTag.SEMIDIRECT), tag, "[1]"),
            KClassRep(U, ga.pair(0, 1), tag, "[V]"),
            KClassRep(U, ga.pair(1, 0), tag, "[U]"),
        ]
    return [
        KClassRep(P, GroupRingElement.one(GroupTag.SEMIDIRECT), tag, "[1]"),
        KClassRep(U, ga.pair(1, 0), tag, "[U]"),
    ]


_POWER = re.compile(r"^(?P<base>[A-Za-z]+)(?:\^?(?P<exp>-?\d+))?$")


def parse_element(label: str, algebra) -> GroupRingElement:
    """Named elements: 1, P1, P2, P2', S, e, Se, U, V with optional exponent (U^-1, V2).

    P2' is ½(1 + eS), the α₋₁-image of P1.
    """
    tag = algebra if isinstance(algebra, AlgebraTag) else AlgebraTag.parse(algebra)
    text = label.strip().strip("[]")
    group = ALGEBRA_GROUP[tag]
    if text == "1":
        return GroupRingElement.one(group)
    if tag == AlgebraTag.A:
        named = {"P1": ga.P1, "P2": ga.P2, "P2'": ga.P2_EXCHANGED}
        if text in named:
            return named[text]
    match = _POWER.match(text)
    if match:
        base, exp = match.group("base"), int(match.group("exp") or 1)
        gens = {
            AlgebraTag.A: {"S": ga.word(1, 0), "e": ga.word(0, 1), "Se": ga.word(1, 1)},
            AlgebraTag.B: {"U": ga.pair(1, 0), "V": ga.pair(0, 1)},
            AlgebraTag.CT: {"U": ga.pair(1, 0)},
        }[tag]
        if base in gens:
            g = gens[base]
            return ga.ring_power(g if exp >= 0 else g.star(), abs(exp))
    raise UnknownNameError(f"unknown element '{label}' for algebra {tag.value}")


@dataclass
class PairingTable:
    algebra: AlgebraTag
    window: int
    degree: int
    modules: List[str]
    classes: List[str]
    cells: Dict[tuple, object] = field(default_factory=dict)

    def value(self, module: str, klass: str) -> Optional[int]:
        cell = self.cells.get((module, klass))
        return cell.value if cell is not None else None

    def matrix(self) -> List[List[Optional[int]]]:
        return [[self.value(m, c) for c in self.classes] for m in self.modules]

    @property
    def stabilized(self) -> bool:
        return all(c.stabilized for c in self.cells.values())

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra.value,
            "window": self.window,
            "degree": self.degree,
            "modules": self.modules,
            "classes": self.classes,
            "matrix": self.matrix(),
            "cells": [c.to_dict() for c in self.cells.values()],
        }


_TABLE_MODULES = {
    AlgebraTag.A: ["w0_A", "w1_A", "w2_A"],
    AlgebraTag.B: ["w0_B", "w1_B"],
    AlgebraTag.CT: ["z0_CT", "z1_CT"],
}


def pairing_table(algebra, N: int = 32, n_max: int = 2, backend=None) -> PairingTable:
    """Pair every module of the algebra with every class of matching parity.

    Cells of mismatched parity (even module, unitary class) are left empty.
    """
    from services import fredholm

    tag = algebra if isinstance(algebra, AlgebraTag) else AlgebraTag.parse(algebra)
    classes = standard_classes(tag)
    table = PairingTable(tag, N, n_max, list(_TABLE_MODULES[tag]), [k.label for k in classes])
    for name in table.modules:
        module = fredholm.catalog(name)
        for k in classes:
            if module.parity == fredholm.Parity.EVEN and k.kind == ClassKind.PROJECTION:
                cell = fredholm.even_pairing(module, k.element, n_max=n_max, N=N, backend=backend, label=k.label)
            elif module.parity == fredholm.Parity.ODD and k.kind == ClassKind.UNITARY:
                cell = fredholm.odd_pairing(module, k.element, N=N, backend=backend, label=k.label)
            else:
                continue
            table.cells[(name, k.label)] = cell
    logger.info("pairing_table %s N=%s n_max=%s cells=%s", tag.value, N, n_max, len(table.cells))
    return table


def check_group(a: GroupRingElement, algebra: AlgebraTag) -> None:
    if a.group != ALGEBRA_GROUP[algebra]:
        raise TagMismatchError(f"{a} is not an element of {algebra.value}")


def resolve_element(spec, algebra) -> GroupRingElement:
    """A named element (see parse_element) or a serialized group-ring element."""
    tag = algebra if isinstance(algebra, AlgebraTag) else AlgebraTag.parse(algebra)
    if isinstance(spec, GroupRingElement):
        a = spec
    elif isinstance(spec, dict):
        a = ga.from_json_dict(spec)
    else:
        a = parse_element(str(spec), tag)
    check_group(a, tag)
    return a

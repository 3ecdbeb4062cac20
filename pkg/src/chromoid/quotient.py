"""The universal quotient groupoid of a colored groupoid.

Objects of the quotient are classes of identity colors, morphisms are
classes of morphism colors, and composition is computed through
composable representatives.  Well-definedness (independence of the
representative, constancy of endpoints and inverses on classes) is
asserted during construction: a violation raises InvariantViolation and
signals corrupt input or a bug, never a normal outcome.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import Coloring
from .congruence import (
    ColorPartition,
    morphism_color_partition,
    object_color_partition,
)
from .core import FinCategory, FinGroupoid, validate_groupoid
from .errors import ChromoidError, InvariantViolation

__all__ = ["QuotientResult", "GroupTable", "build_quotient", "group_table", "quotient_group"]


@dataclass(frozen=True)
class QuotientResult:
    """The quotient groupoid together with the projection data.

    s0/s1 map color indices to quotient object/morphism indices;
    pi_objects/pi_morphisms are the composites with the coloring, i.e.
    the universal projection on objects and morphisms.
    """

    u: FinGroupoid
    s0: dict[int, int]
    s1: tuple[int, ...]
    pi_objects: tuple[int, ...]
    pi_morphisms: tuple[int, ...]
    object_partition: ColorPartition
    morphism_partition: ColorPartition


def _class_name(cls: tuple[int, ...], labels: tuple[str, ...]) -> str:
    return "[" + min(labels[c] for c in cls) + "]"


def build_quotient(gpd: FinGroupoid, col: Coloring, *, unchecked: bool = False) -> QuotientResult:
    """Quotient the groupoid by the color congruence.

    Refuses (PreconditionError) when the decomposition axiom or the
    inverse-color condition fails, unless unchecked=True.
    """
    p1 = morphism_color_partition(gpd, col, unchecked=unchecked)
    p0 = object_color_partition(gpd, col, p1)
    assign = col.assign
    l0 = [assign[gpd.identity[x]] for x in range(gpd.n_objects)]

    pi_objects = tuple(p0.class_of[c] for c in l0)
    pi_morphisms = tuple(p1.class_of[assign[f]] for f in range(gpd.n_morphisms))

    n_qobj = p0.n_classes
    n_qmor = p1.n_classes
    obj_names = tuple(_class_name(cls, col.labels) for cls in p0.classes)
    mor_names = tuple(_class_name(cls, col.labels) for cls in p1.classes)

    members: list[list[int]] = [[] for _ in range(n_qmor)]
    for f in range(gpd.n_morphisms):
        members[pi_morphisms[f]].append(f)

    # Endpoints must be constant on each class.
    src = [-1] * n_qmor
    tgt = [-1] * n_qmor
    for q, fs in enumerate(members):
        srcs = {pi_objects[gpd.src[f]] for f in fs}
        tgts = {pi_objects[gpd.tgt[f]] for f in fs}
        if len(srcs) != 1 or len(tgts) != 1:
            raise InvariantViolation(f"endpoints of quotient morphism {mor_names[q]} are not constant")
        src[q] = srcs.pop()
        tgt[q] = tgts.pop()

    # Identities: the class of the identity color, constant per quotient object.
    identity = [-1] * n_qobj
    for x in range(gpd.n_objects):
        q = pi_morphisms[gpd.identity[x]]
        o = pi_objects[x]
        if identity[o] == -1:
            identity[o] = q
        elif identity[o] != q:
            raise InvariantViolation(f"identity of quotient object {obj_names[o]} is not well defined")
    if -1 in identity:
        raise InvariantViolation("a quotient object carries no identity")

    # Inverses must be constant on each class.
    inverse = [-1] * n_qmor
    for f in range(gpd.n_morphisms):
        q = pi_morphisms[f]
        qi = pi_morphisms[gpd.inverse[f]]
        if inverse[q] == -1:
            inverse[q] = qi
        elif inverse[q] != qi:
            raise InvariantViolation(f"inverse of quotient morphism {mor_names[q]} is not well defined")

    # Composition through representatives: scan the first class in index
    # order and, for each candidate, the second class in index order; a
    # composable pair must exist whenever the boundary condition holds.
    by_tgt_class: list[dict[int, list[int]]] = [dict() for _ in range(n_qmor)]
    for q, fs in enumerate(members):
        for g in fs:
            by_tgt_class[q].setdefault(gpd.tgt[g], []).append(g)

    compose: dict[tuple[int, int], int] = {}
    for a in range(n_qmor):
        for b in range(n_qmor):
            if src[a] != tgt[b]:
                continue
            result = None
            for f in members[a]:
                gs = by_tgt_class[b].get(gpd.src[f])
                if gs:
                    result = pi_morphisms[gpd.compose[(f, gs[0])]]
                    break
            if result is None:
                raise InvariantViolation(
                    f"no composable representatives for {mor_names[a]} ∘ {mor_names[b]}"
                )
            compose[(a, b)] = result

    base = FinCategory(obj_names, mor_names, tuple(src), tuple(tgt), tuple(identity), compose)
    u = FinGroupoid(base, tuple(inverse))
    report = validate_groupoid(u)
    if not report.ok:
        raise InvariantViolation(f"quotient failed groupoid validation: {report.violations[0]}")

    s0 = {c: p0.class_of[c] for c in sorted(col.identity_colors)}
    s1 = tuple(p1.class_of[c] for c in range(col.n_colors))
    return QuotientResult(u, s0, s1, pi_objects, pi_morphisms, p0, p1)


@dataclass(frozen=True)
class GroupTable:
    """Multiplication table of a one-object quotient, with a coarse
    classification: "cyclic(k)" or an element-order profile."""

    elements: tuple[str, ...]
    mul: tuple[tuple[int, ...], ...]
    unit: int
    inv: tuple[int, ...]
    classification: str


def element_order(mul: tuple[tuple[int, ...], ...], unit: int, g: int) -> int:
    order, acc = 1, g
    while acc != unit:
        acc = mul[acc][g]
        order += 1
    return order


def group_table(u: FinGroupoid) -> GroupTable:
    """The morphism group of a one-object groupoid."""
    if u.n_objects != 1:
        raise ChromoidError(f"groupoid has {u.n_objects} objects, not 1; morphisms form no group")
    n = u.n_morphisms
    mul = tuple(tuple(u.compose[(a, b)] for b in range(n)) for a in range(n))
    unit = u.identity[0]
    orders = sorted(element_order(mul, unit, g) for g in range(n))
    if max(orders) == n:
        classification = f"cyclic({n})"
    else:
        profile = ",".join(f"{k}^{orders.count(k)}" for k in sorted(set(orders)))
        classification = f"non-cyclic(orders: {profile})"
    return GroupTable(u.morphisms, mul, unit, u.inverse, classification)


def quotient_group(qr: QuotientResult) -> GroupTable:
    """The morphism group of a one-object quotient."""
    return group_table(qr.u)

"""Congruence of morphism colors under composition, and the induced
identification of identity colors.

The morphism-color relation is the least one that contains the diagonal
and is closed under composing on the right with a common color:

    a related b,  c a color,  a' in step(a, c),  b' in step(b, c)
        =>  a' related b'

where step(x, c) collects the colors of composites f∘g over all f of
color x and g of color c.  The closure is computed over unordered pairs;
transitivity is *asserted* afterwards (it is a theorem for valid input,
not something the algorithm forces), and a violation raises loudly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .coloring import Coloring, check_colored_category, check_inverse_compat
from .core import FinGroupoid
from .errors import InvariantViolation, PreconditionError

__all__ = [
    "StepTable",
    "ColorPartition",
    "color_step_table",
    "morphism_color_partition",
    "object_color_partition",
]


@dataclass(frozen=True)
class StepTable:
    """step[(x, c)] = { color of f∘g : color(f) = x, color(g) = c }."""

    step: Mapping[tuple[int, int], frozenset[int]]


@dataclass(frozen=True)
class ColorPartition:
    """A partition of a color set into classes, canonically ordered.

    Each class is sorted ascending; classes are ordered by their minimum
    element, which doubles as the canonical representative.
    """

    domain: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_classes(classes: Iterable[Iterable[int]]) -> "ColorPartition":
        canon = tuple(sorted((tuple(sorted(set(c))) for c in classes), key=lambda c: c[0]))
        domain = tuple(sorted({x for c in canon for x in c}))
        if len(domain) != sum(len(c) for c in canon):
            raise InvariantViolation("classes are not disjoint")
        return ColorPartition(domain, canon)

    @cached_property
    def class_of(self) -> dict[int, int]:
        return {x: i for i, cls in enumerate(self.classes) for x in cls}

    def repr_of(self, color: int) -> int:
        return self.classes[self.class_of[color]][0]

    @property
    def n_classes(self) -> int:
        return len(self.classes)


def color_step_table(gpd: FinGroupoid, col: Coloring) -> StepTable:
    assign = col.assign
    step: dict[tuple[int, int], set[int]] = {}
    for (f, g), h in gpd.compose.items():
        step.setdefault((assign[f], assign[g]), set()).add(assign[h])
    return StepTable({key: frozenset(val) for key, val in step.items()})


def require_quotient_preconditions(gpd: FinGroupoid, col: Coloring) -> None:
    """Refuse (PreconditionError) unless the decomposition axiom and the
    inverse-color condition both hold; the congruence is only meaningful
    under them."""
    reports = [check_colored_category(gpd, col), check_inverse_compat(gpd, col)]
    failing = [r for r in reports if not r.ok]
    if failing:
        names = ", ".join(r.name for r in failing)
        raise PreconditionError(f"required checks failed: {names}", failing)


def _closure_pairs(step: StepTable, n_colors: int) -> set[tuple[int, int]]:
    """Fixpoint of the pair-propagation rule, seeded with the diagonal.

    Pairs are stored unordered as (min, max); the rule's premise is a single
    pair, so a worklist processing each inserted pair once reaches the
    fixpoint.  Deterministic: colors iterate in index order.
    """
    related: set[tuple[int, int]] = {(a, a) for a in range(n_colors)}
    work = deque(sorted(related))
    while work:
        a, b = work.popleft()
        for c in range(n_colors):
            sa = step.step.get((a, c))
            sb = step.step.get((b, c)) if b != a else sa
            if not sa or not sb:
                continue
            for ap in sa:
                for bp in sb:
                    pair = (ap, bp) if ap <= bp else (bp, ap)
                    if pair not in related:
                        related.add(pair)
                        work.append(pair)
    return related


def _assert_transitive(pairs: set[tuple[int, int]], what: str) -> None:
    neighbors: dict[int, set[int]] = {}
    for a, b in pairs:
        neighbors.setdefault(a, set()).add(b)
        neighbors.setdefault(b, set()).add(a)
    for a, bs in neighbors.items():
        for b in bs:
            missing = neighbors[b] - bs - {a}
            if missing:
                c = min(missing)
                raise InvariantViolation(
                    f"{what} relation is not transitive without closure: "
                    f"({a},{b}) and ({b},{c}) related but ({a},{c}) is not"
                )


def _partition_from_pairs(domain: Iterable[int], pairs: set[tuple[int, int]]) -> ColorPartition:
    classes: dict[int, set[int]] = {x: {x} for x in domain}
    for a, b in pairs:
        ca, cb = classes[a], classes[b]
        if ca is cb:
            continue
        if len(ca) < len(cb):
            ca, cb = cb, ca
        ca.update(cb)
        for x in cb:
            classes[x] = ca
    unique = {id(c): c for c in classes.values()}
    return ColorPartition.from_classes(unique.values())


def morphism_color_partition(
    gpd: FinGroupoid, col: Coloring, *, unchecked: bool = False
) -> ColorPartition:
    """The congruence classes of morphism colors.

    Refuses when the decomposition axiom or the inverse-color condition
    fails, since the fixpoint rule is only sound under them; pass
    unchecked=True to override (results are then not meaningful in general).
    """
    if not unchecked:
        require_quotient_preconditions(gpd, col)
    step = color_step_table(gpd, col)
    pairs = _closure_pairs(step, col.n_colors)
    _assert_transitive(pairs, "morphism-color")
    return _partition_from_pairs(range(col.n_colors), pairs)


def object_color_partition(
    gpd: FinGroupoid, col: Coloring, morph_part: ColorPartition
) -> ColorPartition:
    """Identify identity colors whose objects support congruent morphisms.

    For each morphism-color class K, the identity colors of the sources of
    K-colored morphisms form a clique.  The union of cliques must already
    be transitive, and building it from targets instead of sources must
    give the same partition; both are asserted rather than forced.
    """
    assign = col.assign
    l0 = [col.assign[gpd.identity[x]] for x in range(gpd.n_objects)]

    def clique_pairs(end_of):
        members: dict[int, set[int]] = {}
        for f in range(gpd.n_morphisms):
            members.setdefault(morph_part.class_of[assign[f]], set()).add(l0[end_of[f]])
        pairs: set[tuple[int, int]] = {(a, a) for a in col.identity_colors}
        for group in members.values():
            group = sorted(group)
            for i, a in enumerate(group):
                for b in group[i:]:
                    pairs.add((a, b))
        return pairs

    src_pairs = clique_pairs(gpd.src)
    _assert_transitive(src_pairs, "identity-color")
    tgt_pairs = clique_pairs(gpd.tgt)
    if src_pairs != tgt_pairs:
        raise InvariantViolation("source- and target-built identity relations differ")
    return _partition_from_pairs(sorted(col.identity_colors), src_pairs)

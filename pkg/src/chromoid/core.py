"""Finite categories and groupoids with explicit composition tables.

Objects and morphisms are interned densely: index i refers to the i-th
entry of the name tuple.  The composition table maps a pair of morphism
indices (f, g) with src(f) = tgt(g) to the index of f∘g ("f after g").
Lookups on non-composable pairs return None rather than raising.

All values are immutable after construction and every operation here is
a pure function, so instances can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import StructuralError

__all__ = [
    "Violation",
    "ValidationReport",
    "FinCategory",
    "FinGroupoid",
    "validate_category",
    "validate_groupoid",
    "factorizations",
]


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: tuple[str, ...]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of one check: empty violation list means the check passed."""

    name: str
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _check_unique(names, kind):
    seen = {}
    for i, name in enumerate(names):
        if name in seen:
            raise StructuralError(f"duplicate {kind} name {name!r} at indices {seen[name]} and {i}")
        seen[name] = i


@dataclass(frozen=True)
class FinCategory:
    """A finite category given by explicit source/target/identity/composition data."""

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identity: tuple[int, ...]
    compose: Mapping[tuple[int, int], int]

    def __post_init__(self):
        n_obj, n_mor = len(self.objects), len(self.morphisms)
        _check_unique(self.objects, "object")
        _check_unique(self.morphisms, "morphism")
        if len(self.src) != n_mor or len(self.tgt) != n_mor:
            raise StructuralError("src/tgt length does not match the number of morphisms")
        if len(self.identity) != n_obj:
            raise StructuralError("identity length does not match the number of objects")
        for i, x in enumerate(self.src):
            if not 0 <= x < n_obj:
                raise StructuralError(f"src of morphism {i} references unknown object {x}")
        for i, x in enumerate(self.tgt):
            if not 0 <= x < n_obj:
                raise StructuralError(f"tgt of morphism {i} references unknown object {x}")
        for x, f in enumerate(self.identity):
            if not 0 <= f < n_mor:
                raise StructuralError(f"identity of object {x} references unknown morphism {f}")
        for (f, g), h in self.compose.items():
            for m in (f, g, h):
                if not 0 <= m < n_mor:
                    raise StructuralError(f"compose entry ({f},{g})->{h} references unknown morphism {m}")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def object_index(self, name: str) -> int:
        try:
            return self._object_index[name]
        except KeyError:
            raise StructuralError(f"unknown object {name!r}") from None

    def morphism_index(self, name: str) -> int:
        try:
            return self._morphism_index[name]
        except KeyError:
            raise StructuralError(f"unknown morphism {name!r}") from None

    @cached_property
    def _object_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.objects)}

    @cached_property
    def _morphism_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.morphisms)}

    @cached_property
    def by_source(self) -> tuple[tuple[int, ...], ...]:
        """Morphism indices grouped by source object, each group in index order."""
        out = [[] for _ in self.objects]
        for f, x in enumerate(self.src):
            out[x].append(f)
        return tuple(tuple(g) for g in out)

    @cached_property
    def by_target(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.objects]
        for f, x in enumerate(self.tgt):
            out[x].append(f)
        return tuple(tuple(g) for g in out)

    def composable(self, f: int, g: int) -> bool:
        return self.src[f] == self.tgt[g]

    def composite(self, f: int, g: int) -> int | None:
        """f∘g if defined, else None (a distinct result, not an error)."""
        return self.compose.get((f, g))


@dataclass(frozen=True)
class FinGroupoid:
    """A finite category together with an inverse for every morphism."""

    base: FinCategory
    inverse: tuple[int, ...]

    def __post_init__(self):
        n_mor = self.base.n_morphisms
        if len(self.inverse) != n_mor:
            raise StructuralError("inverse length does not match the number of morphisms")
        for f, g in enumerate(self.inverse):
            if not 0 <= g < n_mor:
                raise StructuralError(f"inverse of morphism {f} references unknown morphism {g}")

    # Convenience passthroughs so groupoids can be used wherever the
    # underlying category data is needed.
    @property
    def objects(self):
        return self.base.objects

    @property
    def morphisms(self):
        return self.base.morphisms

    @property
    def src(self):
        return self.base.src

    @property
    def tgt(self):
        return self.base.tgt

    @property
    def identity(self):
        return self.base.identity

    @property
    def compose(self):
        return self.base.compose

    @property
    def n_objects(self):
        return self.base.n_objects

    @property
    def n_morphisms(self):
        return self.base.n_morphisms


def as_category(value: FinCategory | FinGroupoid) -> FinCategory:
    return value.base if isinstance(value, FinGroupoid) else value


def validate_category(cat: FinCategory) -> ValidationReport:
    """Check the category laws; the report lists every violation with a witness.

    Pure and idempotent: identical input yields an identical report.
    """
    cat = as_category(cat)
    violations: list[Violation] = []
    mor = cat.morphisms

    for x, f in enumerate(cat.identity):
        if cat.src[f] != x or cat.tgt[f] != x:
            violations.append(Violation("identity-endomorphism", (cat.objects[x], mor[f])))

    # Totality on composable pairs, and nothing else.
    for g in range(cat.n_morphisms):
        for f in cat.by_source[cat.tgt[g]]:
            if (f, g) not in cat.compose:
                violations.append(Violation("composition-missing", (mor[f], mor[g])))
    for (f, g), h in sorted(cat.compose.items()):
        if cat.src[f] != cat.tgt[g]:
            violations.append(Violation("composition-spurious", (mor[f], mor[g])))
        elif cat.src[h] != cat.src[g] or cat.tgt[h] != cat.tgt[f]:
            violations.append(Violation("composition-boundary", (mor[f], mor[g], mor[h])))

    for f in range(cat.n_morphisms):
        right = cat.composite(f, cat.identity[cat.src[f]])
        if right is not None and right != f:
            violations.append(Violation("unit-law", (mor[f], mor[cat.identity[cat.src[f]]])))
        left = cat.composite(cat.identity[cat.tgt[f]], f)
        if left is not None and left != f:
            violations.append(Violation("unit-law", (mor[cat.identity[cat.tgt[f]]], mor[f])))

    for (f, g), fg in sorted(cat.compose.items()):
        if cat.src[f] != cat.tgt[g]:
            continue
        for h in cat.by_target[cat.src[g]]:
            gh = cat.composite(g, h)
            if gh is None:
                continue  # already reported as composition-missing
            lhs = cat.composite(fg, h)
            rhs = cat.composite(f, gh)
            if lhs is not None and rhs is not None and lhs != rhs:
                violations.append(Violation("associativity", (mor[f], mor[g], mor[h])))

    return ValidationReport("category", tuple(sorted(violations, key=lambda v: (v.rule, v.witness))))


def validate_groupoid(gpd: FinGroupoid) -> ValidationReport:
    """Check the inverse laws on top of an already-valid base category."""
    cat = gpd.base
    mor = cat.morphisms
    violations: list[Violation] = []
    for f, g in enumerate(gpd.inverse):
        if gpd.inverse[g] != f:
            violations.append(Violation("inverse-involution", (mor[f], mor[g])))
        if cat.src[g] != cat.tgt[f] or cat.tgt[g] != cat.src[f]:
            violations.append(Violation("inverse-boundary", (mor[f], mor[g])))
            continue
        if cat.composite(g, f) != cat.identity[cat.src[f]]:
            violations.append(Violation("inverse-left", (mor[f], mor[g])))
        if cat.composite(f, g) != cat.identity[cat.tgt[f]]:
            violations.append(Violation("inverse-right", (mor[f], mor[g])))
    return ValidationReport("groupoid", tuple(sorted(violations, key=lambda v: (v.rule, v.witness))))


def factorizations(cat: FinCategory | FinGroupoid, h: int) -> list[tuple[int, int]]:
    """All composable pairs (f, g) with f∘g = h, sorted by index."""
    cat = as_category(cat)
    if not 0 <= h < cat.n_morphisms:
        raise StructuralError(f"unknown morphism index {h}")
    return sorted(pair for pair, c in cat.compose.items() if c == h)

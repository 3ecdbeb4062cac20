"""Colorings of morphisms and the axioms a colored category may satisfy.

A coloring is a total map from morphisms to interned colors.  The color
set is always exactly the image of the map, interned densely in order of
first occurrence along the morphism index order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import FinCategory, FinGroupoid, ValidationReport, Violation, as_category
from .errors import StructuralError

__all__ = [
    "Coloring",
    "NCountTable",
    "make_coloring",
    "n_count",
    "check_colored_category",
    "check_inverse_compat",
    "check_schemoid",
    "check_move_lemmas",
]


@dataclass(frozen=True)
class Coloring:
    """Total color assignment: assign[f] is the color index of morphism f.

    labels intern the colors (index -> display label); identity_colors is
    the subset of colors worn by identity morphisms.
    """

    labels: tuple[str, ...]
    assign: tuple[int, ...]
    identity_colors: frozenset[int]

    def __post_init__(self):
        _check = set(self.assign)
        if self.labels and _check != set(range(len(self.labels))):
            raise StructuralError("color interning is not dense: labels must be exactly the image")
        if not self.identity_colors <= _check:
            raise StructuralError("identity colors outside the color image")

    @property
    def n_colors(self) -> int:
        return len(self.labels)

    @property
    def colors(self) -> range:
        return range(len(self.labels))

    def color_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructuralError(f"unknown color {label!r}") from None

    def is_discrete(self) -> bool:
        """One color per morphism (the coloring is injective)."""
        return len(set(self.assign)) == len(self.assign)


def make_coloring(cat: FinCategory | FinGroupoid, labels_by_morphism: Sequence[str]) -> Coloring:
    """Intern a per-morphism label sequence into a Coloring for cat."""
    cat = as_category(cat)
    if len(labels_by_morphism) != cat.n_morphisms:
        raise StructuralError(
            f"expected {cat.n_morphisms} labels, got {len(labels_by_morphism)}"
        )
    interned: dict[str, int] = {}
    assign = []
    for label in labels_by_morphism:
        if label not in interned:
            interned[label] = len(interned)
        assign.append(interned[label])
    labels = tuple(interned)
    identity_colors = frozenset(assign[f] for f in cat.identity)
    return Coloring(labels, tuple(assign), identity_colors)


def _check_coloring(cat: FinCategory, col: Coloring) -> None:
    if len(col.assign) != cat.n_morphisms:
        raise StructuralError("coloring does not match the category's morphism count")


@dataclass(frozen=True)
class NCountTable:
    """Factorization counts n(h, a, b) = #{(f, g) composable : colors (a, b), f∘g = h}.

    raw holds the nonzero per-morphism counts keyed by (h, a, b);
    constants holds (color-of-h, a, b) -> count for the entries on which
    every morphism of that color agrees.
    """

    raw: Mapping[tuple[int, int, int], int]
    constants: Mapping[tuple[int, int, int], int]


def _raw_counts(cat: FinCategory, col: Coloring) -> dict[tuple[int, int, int], int]:
    counts: dict[tuple[int, int, int], int] = {}
    assign = col.assign
    for (f, g), h in cat.compose.items():
        key = (h, assign[f], assign[g])
        counts[key] = counts.get(key, 0) + 1
    return counts


def n_count(cat: FinCategory | FinGroupoid, col: Coloring, h: int, a: int, b: int) -> int:
    """Number of composable pairs (f, g) with colors (a, b) and f∘g = h."""
    cat = as_category(cat)
    _check_coloring(cat, col)
    if not 0 <= h < cat.n_morphisms:
        raise StructuralError(f"unknown morphism index {h}")
    for c in (a, b):
        if not 0 <= c < col.n_colors:
            raise StructuralError(f"unknown color index {c}")
    assign = col.assign
    return sum(
        1
        for (f, g), k in cat.compose.items()
        if k == h and assign[f] == a and assign[g] == b
    )


def _by_color(col: Coloring, n_morphisms: int) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in col.colors]
    for f in range(n_morphisms):
        out[col.assign[f]].append(f)
    return out


def check_colored_category(cat: FinCategory | FinGroupoid, col: Coloring) -> ValidationReport:
    """Decomposition axiom: if any morphism of color c has an (a, b)-colored
    factorization, every morphism of color c has one.

    Failure witnesses are (g, label a, label b) where g lacks the factorization.
    """
    cat = as_category(cat)
    _check_coloring(cat, col)
    raw = _raw_counts(cat, col)
    supports: list[set[tuple[int, int]]] = [set() for _ in range(cat.n_morphisms)]
    for (h, a, b) in raw:
        supports[h].add((a, b))
    class_support: dict[int, set[tuple[int, int]]] = {}
    for h in range(cat.n_morphisms):
        class_support.setdefault(col.assign[h], set()).update(supports[h])
    violations = []
    for g in range(cat.n_morphisms):
        for (a, b) in sorted(class_support[col.assign[g]] - supports[g]):
            violations.append(
                Violation("decomposition", (cat.morphisms[g], col.labels[a], col.labels[b]))
            )
    return ValidationReport(
        "colored-category", tuple(sorted(violations, key=lambda v: v.witness))
    )


def check_inverse_compat(gpd: FinGroupoid, col: Coloring) -> ValidationReport:
    """The color of inverses must be constant on each color class."""
    _check_coloring(gpd.base, col)
    inv_color: dict[int, int] = {}
    first: dict[int, int] = {}
    violations = []
    for f in range(gpd.n_morphisms):
        c = col.assign[f]
        ci = col.assign[gpd.inverse[f]]
        if c not in inv_color:
            inv_color[c] = ci
            first[c] = f
        elif inv_color[c] != ci:
            violations.append(
                Violation("inverse-color", (gpd.morphisms[first[c]], gpd.morphisms[f]))
            )
    return ValidationReport(
        "inverse-compatibility", tuple(sorted(violations, key=lambda v: v.witness))
    )


def check_schemoid(
    cat: FinCategory | FinGroupoid, col: Coloring
) -> tuple[ValidationReport, NCountTable]:
    """Same-colored morphisms must have equal factorization counts for every
    color pair (a, b).  Finite sets, so bijections reduce to equal cardinality.

    On pass, the returned table's constants carry the structure numbers
    (color-of-h, a, b) -> count.
    """
    cat = as_category(cat)
    _check_coloring(cat, col)
    raw = _raw_counts(cat, col)
    per_h: list[dict[tuple[int, int], int]] = [{} for _ in range(cat.n_morphisms)]
    for (h, a, b), k in raw.items():
        per_h[h][(a, b)] = k
    by_color = _by_color(col, cat.n_morphisms)

    violations = []
    constants: dict[tuple[int, int, int], int] = {}
    for c, members in enumerate(by_color):
        ref = members[0]
        keys = set().union(*(per_h[h].keys() for h in members))
        for (a, b) in sorted(keys):
            vals = {per_h[h].get((a, b), 0) for h in members}
            if len(vals) == 1:
                constants[(c, a, b)] = vals.pop()
            else:
                bad = next(h for h in members if per_h[h].get((a, b), 0) != per_h[ref].get((a, b), 0))
                violations.append(
                    Violation(
                        "factorization-count",
                        (cat.morphisms[ref], cat.morphisms[bad], col.labels[a], col.labels[b]),
                    )
                )
    report = ValidationReport("schemoid", tuple(sorted(violations, key=lambda v: v.witness)))
    return report, NCountTable(raw, constants)


def check_move_lemmas(gpd: FinGroupoid, col: Coloring) -> ValidationReport:
    """Transport of colors across same-colored morphisms.

    For f, g with a common color, each of the four statements below must
    hold for every applicable t; witnesses are triples (f, g, t):
      source/source: src(t) = src(f) admits q of color of t with src(q) = src(g)
      target/target: tgt(t) = tgt(f) admits q with tgt(q) = tgt(g)
      source/target: tgt(t) = src(f) admits q with tgt(q) = src(g)
      target/source: src(t) = tgt(f) admits q with src(q) = tgt(g)

    Each statement reduces to equality of available color sets at the two
    objects, since only colors and endpoints of t matter.
    """
    cat = gpd.base
    _check_coloring(cat, col)
    colors_out = [frozenset(col.assign[f] for f in cat.by_source[x]) for x in range(cat.n_objects)]
    colors_in = [frozenset(col.assign[f] for f in cat.by_target[x]) for x in range(cat.n_objects)]
    by_color = _by_color(col, cat.n_morphisms)

    variants = (
        ("source-source", cat.src, colors_out, cat.by_source),
        ("target-target", cat.tgt, colors_in, cat.by_target),
        ("source-target", cat.src, colors_in, cat.by_target),
        ("target-source", cat.tgt, colors_out, cat.by_source),
    )
    violations = []
    for rule, end_of, avail, morphs_at in variants:
        for members in by_color:
            f = members[0]
            for g in members[1:]:
                missing = avail[end_of[f]] - avail[end_of[g]]
                for c in sorted(missing):
                    t = next(m for m in morphs_at[end_of[f]] if col.assign[m] == c)
                    violations.append(
                        Violation(rule, (cat.morphisms[f], cat.morphisms[g], cat.morphisms[t]))
                    )
                missing_rev = avail[end_of[g]] - avail[end_of[f]]
                for c in sorted(missing_rev):
                    t = next(m for m in morphs_at[end_of[g]] if col.assign[m] == c)
                    violations.append(
                        Violation(rule, (cat.morphisms[g], cat.morphisms[f], cat.morphisms[t]))
                    )
    return ValidationReport(
        "move-lemmas", tuple(sorted(violations, key=lambda v: (v.rule, v.witness)))
    )

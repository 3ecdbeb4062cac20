"""Constructors for concrete instances: translation action groupoids of
(Z/nZ)^d, their projection and Hamming-weight colorings, discrete and
trivial colorings, one-object group groupoids, and disjoint unions.

Element ordering is lexicographic on tuples, which fixes every morphism
and object index and therefore all downstream class representatives;
identical parameters always produce bit-identical serialized output.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

from .coloring import Coloring, make_coloring
from .core import FinCategory, FinGroupoid, as_category
from .errors import ResourceLimitError, StructuralError

__all__ = [
    "ActionGroupoid",
    "max_morphisms",
    "action_groupoid",
    "pi_coloring",
    "hamming_coloring",
    "discrete_coloring",
    "trivial_coloring",
    "one_object_group",
    "disjoint_union",
]

_GUARD_ENV = "CHROMOID_MAX_MORPHISMS"
_GUARD_DEFAULT = 10**6


def max_morphisms() -> int:
    """Resource guard for generated instances, overridable via the
    CHROMOID_MAX_MORPHISMS environment variable."""
    raw = os.environ.get(_GUARD_ENV)
    return int(raw) if raw else _GUARD_DEFAULT


@dataclass(frozen=True)
class ActionGroupoid(FinGroupoid):
    """The groupoid of the translation action of (Z/nZ)^d on itself.

    Objects are the group elements x; a morphism (g, x) runs from x to
    g+x.  The modulus and arity are kept so colorings that need the
    acting element can recover it.
    """

    n: int
    d: int

    @property
    def group_elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(product(range(self.n), repeat=self.d))


def _vec_name(v: tuple[int, ...]) -> str:
    return ".".join(str(x) for x in v)


def action_groupoid(n: int, d: int) -> ActionGroupoid:
    """Build (Z/nZ)^d acting on itself: n^d objects and n^(2d) morphisms.

    compose((g, y), (h, x)) = (g+h, x) when y = h+x; the inverse of
    (g, x) is (-g, g+x); the identity on x is (0, x).
    """
    if n < 2 or d < 1:
        raise StructuralError(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    n_mor = n ** (2 * d)
    limit = max_morphisms()
    if n_mor > limit:
        raise ResourceLimitError(f"n^(2d) = {n_mor} morphisms exceeds the guard of {limit}")

    elements = tuple(product(range(n), repeat=d))
    index = {e: i for i, e in enumerate(elements)}
    size = len(elements)

    def add(a, b):
        return tuple((x + y) % n for x, y in zip(a, b))

    def neg(a):
        return tuple((-x) % n for x in a)

    objects = tuple(_vec_name(x) for x in elements)
    morphisms = tuple(f"{_vec_name(g)}|{_vec_name(x)}" for g in elements for x in elements)
    mor_index = lambda g, x: index[g] * size + index[x]

    src = tuple(index[x] for g in elements for x in elements)
    tgt = tuple(index[add(g, x)] for g in elements for x in elements)
    identity = tuple(mor_index(elements[0], x) for x in elements)
    inverse = tuple(mor_index(neg(g), add(g, x)) for g in elements for x in elements)

    compose = {}
    for g in elements:
        for h in elements:
            gh = add(g, h)
            for x in elements:
                compose[(mor_index(g, add(h, x)), mor_index(h, x))] = mor_index(gh, x)

    base = FinCategory(objects, morphisms, src, tgt, identity, compose)
    return ActionGroupoid(base, inverse, n, d)


def _require_action(gpd) -> ActionGroupoid:
    if not isinstance(gpd, ActionGroupoid):
        raise StructuralError("this coloring is only defined on action groupoids")
    return gpd


def pi_coloring(gpd: FinGroupoid) -> Coloring:
    """Color each morphism (g, x) by the acting element g."""
    ag = _require_action(gpd)
    labels = [_vec_name(g) for g in ag.group_elements for _ in ag.group_elements]
    return make_coloring(ag, labels)


def hamming_coloring(gpd: FinGroupoid) -> Coloring:
    """Color each morphism (g, x) by the Hamming weight of g (decimal label)."""
    ag = _require_action(gpd)
    labels = [
        str(sum(1 for c in g if c != 0))
        for g in ag.group_elements
        for _ in ag.group_elements
    ]
    return make_coloring(ag, labels)


def discrete_coloring(cat: FinCategory | FinGroupoid) -> Coloring:
    """One color per morphism, labeled by the morphism's name."""
    cat = as_category(cat)
    return make_coloring(cat, list(cat.morphisms))


def trivial_coloring(cat: FinCategory | FinGroupoid) -> Coloring:
    """A single color "0" on every morphism."""
    cat = as_category(cat)
    return make_coloring(cat, ["0"] * cat.n_morphisms)


def one_object_group(table: list[list[int]], names: list[str] | None = None) -> FinGroupoid:
    """A one-object groupoid whose morphisms form the given group.

    table[a][b] is the product a·b (a after b).  The table is validated:
    a two-sided unit, associativity, and inverses must exist, and a
    violation is reported with a witness.
    """
    k = len(table)
    if any(len(row) != k for row in table):
        raise StructuralError("multiplication table is not square")
    for a in range(k):
        for b in range(k):
            if not 0 <= table[a][b] < k:
                raise StructuralError(f"table entry ({a},{b}) = {table[a][b]} is out of range")
    units = [e for e in range(k) if all(table[e][b] == b and table[b][e] == b for b in range(k))]
    if not units:
        raise StructuralError("no two-sided unit in the table")
    unit = units[0]
    for a in range(k):
        for b in range(k):
            for c in range(k):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise StructuralError(f"table is not associative at ({a},{b},{c})")
    inverse = []
    for a in range(k):
        invs = [b for b in range(k) if table[a][b] == unit and table[b][a] == unit]
        if not invs:
            raise StructuralError(f"element {a} has no inverse")
        inverse.append(invs[0])

    if names is None:
        names = [f"g{a}" for a in range(k)]
    elif len(names) != k:
        raise StructuralError("names length does not match the table")
    base = FinCategory(
        objects=("*",),
        morphisms=tuple(names),
        src=(0,) * k,
        tgt=(0,) * k,
        identity=(unit,),
        compose={(a, b): table[a][b] for a in range(k) for b in range(k)},
    )
    return FinGroupoid(base, tuple(inverse))


def disjoint_union(a: FinGroupoid, b: FinGroupoid, sep: str = "/") -> FinGroupoid:
    """Disjoint union of two groupoids; names are prefixed "A<sep>"/"B<sep>"."""
    objects = tuple(f"A{sep}{x}" for x in a.objects) + tuple(f"B{sep}{x}" for x in b.objects)
    morphisms = tuple(f"A{sep}{f}" for f in a.morphisms) + tuple(f"B{sep}{f}" for f in b.morphisms)
    oa, ma = a.n_objects, a.n_morphisms
    src = tuple(a.src) + tuple(x + oa for x in b.src)
    tgt = tuple(a.tgt) + tuple(x + oa for x in b.tgt)
    identity = tuple(a.identity) + tuple(f + ma for f in b.identity)
    compose = dict(a.compose)
    compose.update({(f + ma, g + ma): h + ma for (f, g), h in b.compose.items()})
    inverse = tuple(a.inverse) + tuple(f + ma for f in b.inverse)
    base = FinCategory(objects, morphisms, src, tgt, identity, compose)
    return FinGroupoid(base, inverse)

"""Colored functors, the universal factorization through the quotient,
induced functors between quotients, and a groupoid isomorphism search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .builders import discrete_coloring
from .coloring import Coloring
from .core import (
    FinCategory,
    FinGroupoid,
    ValidationReport,
    Violation,
    as_category,
)
from .errors import ChromoidError, InvariantViolation, ResourceLimitError, StructuralError
from .quotient import QuotientResult, build_quotient

__all__ = [
    "ColoredFunctor",
    "identity_functor",
    "check_colored_functor",
    "compose_colored_functors",
    "universal_functor",
    "factor_through_quotient",
    "induced_functor",
    "groupoid_isomorphic",
]


@dataclass(frozen=True)
class ColoredFunctor:
    """A functor together with a color map gamma on source colors.

    f_obj/f_mor map source indices to target indices; gamma[c] is the
    target color assigned to source color c.  Equality is componentwise.
    """

    source_cat: FinCategory | FinGroupoid
    source_col: Coloring
    target_cat: FinCategory | FinGroupoid
    target_col: Coloring
    f_obj: tuple[int, ...]
    f_mor: tuple[int, ...]
    gamma: tuple[int, ...]

    def __post_init__(self):
        s, t = as_category(self.source_cat), as_category(self.target_cat)
        if len(self.f_obj) != s.n_objects or len(self.f_mor) != s.n_morphisms:
            raise StructuralError("object/morphism maps are not total on the source")
        if len(self.gamma) != self.source_col.n_colors:
            raise StructuralError("gamma is not total on the source colors")
        for x in self.f_obj:
            if not 0 <= x < t.n_objects:
                raise StructuralError(f"object map hits unknown target object {x}")
        for f in self.f_mor:
            if not 0 <= f < t.n_morphisms:
                raise StructuralError(f"morphism map hits unknown target morphism {f}")
        for c in self.gamma:
            if not 0 <= c < self.target_col.n_colors:
                raise StructuralError(f"gamma hits unknown target color {c}")


def identity_functor(cat: FinCategory | FinGroupoid, col: Coloring) -> ColoredFunctor:
    c = as_category(cat)
    return ColoredFunctor(
        cat, col, cat, col,
        tuple(range(c.n_objects)), tuple(range(c.n_morphisms)), tuple(range(col.n_colors)),
    )


def check_colored_functor(F: ColoredFunctor) -> ValidationReport:
    """Verify the functor laws and the color law gamma(l(f)) = l'(F(f))."""
    s, t = as_category(F.source_cat), as_category(F.target_cat)
    violations = []
    for f in range(s.n_morphisms):
        if t.src[F.f_mor[f]] != F.f_obj[s.src[f]]:
            violations.append(Violation("source", (s.morphisms[f],)))
        if t.tgt[F.f_mor[f]] != F.f_obj[s.tgt[f]]:
            violations.append(Violation("target", (s.morphisms[f],)))
        if F.target_col.assign[F.f_mor[f]] != F.gamma[F.source_col.assign[f]]:
            violations.append(Violation("color", (s.morphisms[f],)))
    for x in range(s.n_objects):
        if F.f_mor[s.identity[x]] != t.identity[F.f_obj[x]]:
            violations.append(Violation("identity", (s.objects[x],)))
    for (f, g), h in sorted(s.compose.items()):
        image = t.composite(F.f_mor[f], F.f_mor[g])
        if image != F.f_mor[h]:
            violations.append(Violation("composition", (s.morphisms[f], s.morphisms[g])))
    return ValidationReport(
        "colored-functor", tuple(sorted(violations, key=lambda v: (v.rule, v.witness)))
    )


def compose_colored_functors(F2: ColoredFunctor, F1: ColoredFunctor) -> ColoredFunctor:
    """Componentwise composition F2 after F1."""
    if F1.target_cat != F2.source_cat or F1.target_col != F2.source_col:
        raise StructuralError("functor boundaries do not match")
    return ColoredFunctor(
        F1.source_cat,
        F1.source_col,
        F2.target_cat,
        F2.target_col,
        tuple(F2.f_obj[x] for x in F1.f_obj),
        tuple(F2.f_mor[f] for f in F1.f_mor),
        tuple(F2.gamma[c] for c in F1.gamma),
    )


def universal_functor(
    gpd: FinGroupoid, col: Coloring, qr: QuotientResult | None = None
) -> ColoredFunctor:
    """The projection onto the quotient, as a colored functor to the
    quotient with its discrete coloring."""
    if qr is None:
        qr = build_quotient(gpd, col)
    return ColoredFunctor(
        gpd, col, qr.u, discrete_coloring(qr.u), qr.pi_objects, qr.pi_morphisms, qr.s1
    )


def _require_discrete(col: Coloring, what: str) -> None:
    if not col.is_discrete():
        raise ChromoidError(f"{what} is not discrete (the coloring must be injective)")


def factor_through_quotient(
    gpd: FinGroupoid, col: Coloring, F: ColoredFunctor, qr: QuotientResult | None = None
) -> ColoredFunctor:
    """The unique functor from the quotient whose composite with the
    projection equals F (a functor to a discrete target).

    The class maps are defined through representatives; disagreement
    between representatives of one class signals a bug or corrupt input
    and raises InvariantViolation.  The composite equality is re-checked
    before returning.
    """
    if F.source_cat != gpd or F.source_col != col:
        raise StructuralError("functor does not start at the given colored groupoid")
    _require_discrete(F.target_col, "factorization target")
    report = check_colored_functor(F)
    if not report.ok:
        raise ChromoidError(f"not a colored functor: {report.violations[0]}")
    if qr is None:
        qr = build_quotient(gpd, col)
    u = qr.u

    f_obj = [-1] * u.n_objects
    for x in range(gpd.n_objects):
        q = qr.pi_objects[x]
        if f_obj[q] == -1:
            f_obj[q] = F.f_obj[x]
        elif f_obj[q] != F.f_obj[x]:
            raise InvariantViolation(f"object representatives of class {u.objects[q]} disagree")
    f_mor = [-1] * u.n_morphisms
    for f in range(gpd.n_morphisms):
        q = qr.pi_morphisms[f]
        if f_mor[q] == -1:
            f_mor[q] = F.f_mor[f]
        elif f_mor[q] != F.f_mor[f]:
            raise InvariantViolation(f"morphism representatives of class {u.morphisms[q]} disagree")
    u_col = discrete_coloring(u)
    gamma = [-1] * u.n_morphisms
    for c in range(col.n_colors):
        q = qr.s1[c]
        if gamma[q] == -1:
            gamma[q] = F.gamma[c]
        elif gamma[q] != F.gamma[c]:
            raise InvariantViolation(f"color representatives of class {u.morphisms[q]} disagree")

    factored = ColoredFunctor(
        u, u_col, F.target_cat, F.target_col, tuple(f_obj), tuple(f_mor), tuple(gamma)
    )
    composite = compose_colored_functors(factored, universal_functor(gpd, col, qr))
    if composite != F:
        raise InvariantViolation("factorization composite does not reproduce the input functor")
    return factored


def induced_functor(
    gpd: FinGroupoid,
    col: Coloring,
    gpd2: FinGroupoid,
    col2: Coloring,
    F: ColoredFunctor,
    qr: QuotientResult | None = None,
    qr2: QuotientResult | None = None,
) -> ColoredFunctor:
    """The functor between quotients induced by a colored functor.

    Classes map through gamma; gamma must send whole source classes into
    single target classes, which is asserted with a witness pair.
    """
    if F.source_cat != gpd or F.source_col != col:
        raise StructuralError("functor does not start at the given source pair")
    if F.target_cat != gpd2 or F.target_col != col2:
        raise StructuralError("functor does not end at the given target pair")
    report = check_colored_functor(F)
    if not report.ok:
        raise ChromoidError(f"not a colored functor: {report.violations[0]}")
    if qr is None:
        qr = build_quotient(gpd, col)
    if qr2 is None:
        qr2 = build_quotient(gpd2, col2)
    u, u2 = qr.u, qr2.u

    f_mor = [-1] * u.n_morphisms
    witness_color = [-1] * u.n_morphisms
    for c in range(col.n_colors):
        q = qr.s1[c]
        image = qr2.s1[F.gamma[c]]
        if f_mor[q] == -1:
            f_mor[q] = image
            witness_color[q] = c
        elif f_mor[q] != image:
            raise ChromoidError(
                "gamma is not constant on congruence classes: colors "
                f"{col.labels[witness_color[q]]!r} and {col.labels[c]!r} "
                "are congruent but their images are not"
            )
    f_obj = [-1] * u.n_objects
    for x in range(gpd.n_objects):
        q = qr.pi_objects[x]
        image = qr2.pi_objects[F.f_obj[x]]
        if f_obj[q] == -1:
            f_obj[q] = image
        elif f_obj[q] != image:
            raise ChromoidError("induced object map is not constant on classes")

    induced = ColoredFunctor(
        u,
        discrete_coloring(u),
        u2,
        discrete_coloring(u2),
        tuple(f_obj),
        tuple(f_mor),
        tuple(f_mor),
    )
    report = check_colored_functor(induced)
    if not report.ok:
        raise InvariantViolation(f"induced functor breaks a functor law: {report.violations[0]}")
    return induced


# ---------------------------------------------------------------------------
# Groupoid isomorphism.
#
# A connected groupoid is determined up to isomorphism by its object count
# and its vertex group, so the search decomposes into components, matches
# them by (object count, vertex group), and assembles an explicit pair of
# bijections from transport morphisms and a vertex-group isomorphism.


def _components(gpd: FinGroupoid) -> list[list[int]]:
    parent = list(range(gpd.n_objects))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in range(gpd.n_morphisms):
        a, b = find(gpd.src[f]), find(gpd.tgt[f])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(gpd.n_objects):
        groups.setdefault(find(x), []).append(x)
    return [sorted(g) for g in sorted(groups.values())]


def _vertex_group(gpd: FinGroupoid, x: int) -> tuple[list[int], list[list[int]]]:
    loops = [f for f in gpd.base.by_source[x] if gpd.tgt[f] == x]
    pos = {f: i for i, f in enumerate(loops)}
    table = [[pos[gpd.compose[(a, b)]] for b in loops] for a in loops]
    return loops, table


def _group_isomorphism(t1: list[list[int]], t2: list[list[int]]) -> list[int] | None:
    """Backtracking search for a table isomorphism, pruned by element order."""
    k = len(t1)
    if len(t2) != k:
        return None

    def orders(t):
        unit = next(e for e in range(len(t)) if all(t[e][b] == b == t[b][e] for b in range(len(t))))
        out = []
        for g in range(len(t)):
            o, acc = 1, g
            while acc != unit:
                acc = t[acc][g]
                o += 1
            out.append(o)
        return out

    o1, o2 = orders(t1), orders(t2)
    if sorted(o1) != sorted(o2):
        return None
    candidates = [[h for h in range(k) if o2[h] == o1[g]] for g in range(k)]
    phi = [-1] * k
    used = [False] * k

    def consistent(g):
        for a in range(k):
            if phi[a] == -1:
                continue
            for x, y in ((a, g), (g, a)):
                prod = t1[x][y]
                if phi[prod] != -1 and t2[phi[x]][phi[y]] != phi[prod]:
                    return False
        return True

    def extend(g):
        if g == k:
            return True
        for h in candidates[g]:
            if used[h]:
                continue
            phi[g] = h
            used[h] = True
            if consistent(g) and extend(g + 1):
                return True
            phi[g] = -1
            used[h] = False
        return False

    return phi if extend(0) else None


def groupoid_isomorphic(
    a: FinGroupoid, b: FinGroupoid
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """An explicit isomorphism (object map, morphism map) or None.

    Guarded at 64 objects / 5000 morphisms per side.
    """
    for g in (a, b):
        if g.n_objects > 64 or g.n_morphisms > 5000:
            raise ResourceLimitError("isomorphism search guard exceeded (64 objects / 5000 morphisms)")
    if a.n_objects != b.n_objects or a.n_morphisms != b.n_morphisms:
        return None

    comps_a, comps_b = _components(a), _components(b)
    if sorted(map(len, comps_a)) != sorted(map(len, comps_b)):
        return None

    f_obj = [-1] * a.n_objects
    f_mor = [-1] * a.n_morphisms
    used_b = [False] * len(comps_b)
    for comp_a in comps_a:
        loops_a, table_a = _vertex_group(a, comp_a[0])
        match = None
        for j, comp_b in enumerate(comps_b):
            if used_b[j] or len(comp_b) != len(comp_a):
                continue
            loops_b, table_b = _vertex_group(b, comp_b[0])
            phi = _group_isomorphism(table_a, table_b)
            if phi is not None:
                match = (comp_b, loops_b, phi)
                used_b[j] = True
                break
        if match is None:
            return None
        comp_b, loops_b, phi = match
        _map_component(a, b, comp_a, comp_b, loops_a, loops_b, phi, f_obj, f_mor)

    iso = (tuple(f_obj), tuple(f_mor))
    if not _is_isomorphism(a, b, *iso):
        raise InvariantViolation("assembled isomorphism failed verification")
    return iso


def _map_component(a, b, comp_a, comp_b, loops_a, loops_b, phi, f_obj, f_mor):
    base_a, base_b = comp_a[0], comp_b[0]
    pos_a = {f: i for i, f in enumerate(loops_a)}

    def transport(gpd, base, objects):
        # tau[o]: a morphism base -> o (identity at the base object).
        tau = {}
        for o in objects:
            if o == base:
                tau[o] = gpd.identity[base]
            else:
                tau[o] = next(f for f in gpd.base.by_source[base] if gpd.tgt[f] == o)
        return tau

    tau = transport(a, base_a, comp_a)
    sigma = transport(b, base_b, comp_b)
    for o, op in zip(comp_a, comp_b):
        f_obj[o] = op
    pair = dict(zip(comp_a, comp_b))
    for o in comp_a:
        for f in a.base.by_source[o]:
            p = a.tgt[f]
            loop = a.compose[(a.compose[(a.inverse[tau[p]], f)], tau[o])]
            image_loop = loops_b[phi[pos_a[loop]]]
            f_mor[f] = b.compose[(b.compose[(sigma[pair[p]], image_loop)], b.inverse[sigma[pair[o]]])]


def _is_isomorphism(a: FinGroupoid, b: FinGroupoid, f_obj, f_mor) -> bool:
    if sorted(f_obj) != list(range(b.n_objects)) or sorted(f_mor) != list(range(b.n_morphisms)):
        return False
    for f in range(a.n_morphisms):
        if b.src[f_mor[f]] != f_obj[a.src[f]] or b.tgt[f_mor[f]] != f_obj[a.tgt[f]]:
            return False
    for x in range(a.n_objects):
        if f_mor[a.identity[x]] != b.identity[f_obj[x]]:
            return False
    for (f, g), h in a.compose.items():
        if b.compose.get((f_mor[f], f_mor[g])) != f_mor[h]:
            return False
    return True

import pytest

import chromoid as ch
from cases import (
    colored_functors_to_discrete,
    cyclic_groupoid,
    hamming,
    klein_groupoid,
    parse_mor,
    pi_pair,
    two_component,
)


def inclusion_h12_h22():
    """H(1,2) -> H(2,2) by padding vectors with a trailing zero."""
    g1, c1 = hamming(1, 2)
    g2, c2 = hamming(2, 2)
    f_obj = tuple(g2.objects.index(name + ".0") for name in g1.objects)
    f_mor = []
    for name in g1.morphisms:
        gv, xv = name.split("|")
        f_mor.append(g2.base.morphism_index(f"{gv}.0|{xv}.0"))
    gamma = tuple(c2.color_index(c1.labels[c]) for c in range(c1.n_colors))
    return ch.ColoredFunctor(g1, c1, g2, c2, f_obj, tuple(f_mor), gamma)


def parity_functor():
    """H(1,2) -> one-object Z/2 sending (g, x) to g."""
    g, col = hamming(1, 2)
    z2 = cyclic_groupoid(2)
    z2_col = ch.discrete_coloring(z2)
    f_mor = tuple(parse_mor(name)[0][0] for name in g.morphisms)
    gamma = tuple(z2_col.assign[f_mor[g.base.morphism_index(name)]] for name in ("0|0", "1|0"))
    return ch.ColoredFunctor(g, col, z2, z2_col, (0, 0), f_mor, gamma)


def test_identity_functor_checks():
    g, col = hamming(2, 2)
    F = ch.identity_functor(g, col)
    assert ch.check_colored_functor(F).ok


def test_inclusion_checks():
    assert ch.check_colored_functor(inclusion_h12_h22()).ok


def test_parity_functor_checks():
    assert ch.check_colored_functor(parity_functor()).ok


def test_broken_color_map_witnessed():
    g, col = hamming(1, 2)
    F = ch.identity_functor(g, col)
    bad = ch.ColoredFunctor(g, col, g, col, F.f_obj, F.f_mor, (1, 0))
    report = ch.check_colored_functor(bad)
    assert not report.ok
    assert all(v.rule == "color" for v in report.violations)


def test_broken_composition_witnessed():
    g = cyclic_groupoid(4)
    col = ch.discrete_coloring(g)
    # Transposition of g1 and g2 fixes identities but breaks the table.
    swap = (0, 2, 1, 3)
    bad = ch.ColoredFunctor(g, col, g, col, (0,), swap, swap)
    report = ch.check_colored_functor(bad)
    assert not report.ok
    assert any(v.rule == "composition" for v in report.violations)


def test_composition_with_identity():
    F = inclusion_h12_h22()
    left = ch.compose_colored_functors(ch.identity_functor(F.target_cat, F.target_col), F)
    right = ch.compose_colored_functors(F, ch.identity_functor(F.source_cat, F.source_col))
    assert left == F
    assert right == F


def test_composition_boundary_mismatch():
    F = inclusion_h12_h22()
    with pytest.raises(ch.StructuralError):
        ch.compose_colored_functors(F, F)


def test_factor_projection_gives_identity():
    for fixture in [hamming(1, 2), hamming(2, 2), hamming(2, 3), pi_pair(1, 3)]:
        g, col = fixture
        qr = ch.build_quotient(g, col)
        pi = ch.universal_functor(g, col, qr)
        factored = ch.factor_through_quotient(g, col, pi, qr)
        assert factored == ch.identity_functor(qr.u, ch.discrete_coloring(qr.u))


def test_factor_parity_functor():
    g, col = hamming(1, 2)
    qr = ch.build_quotient(g, col)
    F = parity_functor()
    factored = ch.factor_through_quotient(g, col, F, qr)
    assert ch.check_colored_functor(factored).ok
    pi = ch.universal_functor(g, col, qr)
    assert ch.compose_colored_functors(factored, pi) == F
    # U(H(1,2)) is itself Z/2, so the factored map is an isomorphism here.
    assert sorted(factored.f_mor) == [0, 1]


def test_factor_round_trip_through_enumeration():
    g, col = hamming(1, 2)
    qr = ch.build_quotient(g, col)
    u_col = ch.discrete_coloring(qr.u)
    pi = ch.universal_functor(g, col, qr)
    targets = [cyclic_groupoid(2), cyclic_groupoid(4), klein_groupoid()]
    seen = 0
    for tgt in targets:
        tgt_col = ch.discrete_coloring(tgt)
        for H in colored_functors_to_discrete(qr.u, u_col, tgt, tgt_col):
            F = ch.compose_colored_functors(H, pi)
            assert ch.factor_through_quotient(g, col, F, qr) == H
            seen += 1
    assert seen >= 5


def test_factor_uniqueness_by_perturbation():
    g, col = hamming(1, 2)
    qr = ch.build_quotient(g, col)
    pi = ch.universal_functor(g, col, qr)
    F = parity_functor()
    factored = ch.factor_through_quotient(g, col, F, qr)
    tgt = F.target_cat
    for q in range(qr.u.n_morphisms):
        for m in range(tgt.n_morphisms):
            if m == factored.f_mor[q]:
                continue
            f_mor = list(factored.f_mor)
            f_mor[q] = m
            gamma = tuple(F.target_col.assign[x] for x in f_mor)
            other = ch.ColoredFunctor(
                qr.u, factored.source_col, tgt, F.target_col,
                factored.f_obj, tuple(f_mor), gamma,
            )
            assert ch.compose_colored_functors(other, pi) != F


def test_factor_rejects_non_discrete_target():
    g, col = hamming(2, 2)
    with pytest.raises(ch.ChromoidError):
        ch.factor_through_quotient(g, col, ch.identity_functor(g, col))


def test_factor_rejects_wrong_source():
    g, col = hamming(1, 2)
    g2, col2 = hamming(2, 2)
    with pytest.raises(ch.StructuralError):
        ch.factor_through_quotient(g2, col2, parity_functor())


def test_induced_from_inclusion_is_identity_on_z2():
    F = inclusion_h12_h22()
    qr = ch.build_quotient(F.source_cat, F.source_col)
    qr2 = ch.build_quotient(F.target_cat, F.target_col)
    ind = ch.induced_functor(F.source_cat, F.source_col, F.target_cat, F.target_col, F, qr, qr2)
    assert ch.check_colored_functor(ind).ok
    assert ind.f_mor == tuple(range(qr.u.n_morphisms))
    assert qr.u.morphisms == qr2.u.morphisms == ("[0]", "[1]")


def test_induced_collapse_pi_to_weight():
    g, picol = pi_pair(2, 2)
    _, wcol = hamming(2, 2)
    # Identity on the groupoid; gamma reads off the Hamming weight.
    gamma = []
    for c in range(picol.n_colors):
        f = picol.assign.index(c)
        gamma.append(wcol.assign[f])
    F = ch.ColoredFunctor(
        g, picol, g, wcol,
        tuple(range(g.n_objects)), tuple(range(g.n_morphisms)), tuple(gamma),
    )
    assert ch.check_colored_functor(F).ok
    qr = ch.build_quotient(g, picol)
    qr2 = ch.build_quotient(g, wcol)
    ind = ch.induced_functor(g, picol, g, wcol, F, qr, qr2)
    # (Z/2)^2 -> Z/2 by weight parity: a surjective homomorphism.
    assert qr.u.n_morphisms == 4
    assert qr2.u.n_morphisms == 2
    assert sorted(set(ind.f_mor)) == [0, 1]
    unit2 = qr2.u.identity[0]
    kernel = [q for q in range(4) if ind.f_mor[q] == unit2]
    assert len(kernel) == 2


def test_induced_rejects_mismatched_boundaries():
    F = inclusion_h12_h22()
    g2, col2 = hamming(2, 2)
    with pytest.raises(ch.StructuralError):
        ch.induced_functor(g2, col2, g2, col2, F)
    g1, col1 = hamming(1, 2)
    with pytest.raises(ch.StructuralError):
        ch.induced_functor(g1, col1, g1, col1, F)


def test_isomorphic_self_and_relabeling():
    g, _ = hamming(1, 3)
    iso = ch.groupoid_isomorphic(g, g)
    assert iso is not None
    relabeled = ch.FinGroupoid(
        ch.FinCategory(
            tuple(f"ob{i}" for i in range(g.n_objects)),
            tuple(f"mo{i}" for i in range(g.n_morphisms)),
            g.src, g.tgt, g.identity, dict(g.compose),
        ),
        g.inverse,
    )
    assert ch.groupoid_isomorphic(g, relabeled) is not None


def test_z4_not_isomorphic_to_klein():
    assert ch.groupoid_isomorphic(cyclic_groupoid(4), klein_groupoid()) is None
    # Cross-check with a tiny exhaustive search over all 4! morphism maps.
    import itertools

    z4, kl = cyclic_groupoid(4), klein_groupoid()
    found = False
    for perm in itertools.permutations(range(4)):
        if all(
            kl.compose[(perm[a], perm[b])] == perm[z4.compose[(a, b)]]
            for a in range(4)
            for b in range(4)
        ):
            found = True
    assert not found


def test_isomorphism_distinguishes_component_shapes():
    two = two_component(shared=True)[0]
    z2 = cyclic_groupoid(2)
    assert ch.groupoid_isomorphic(two, z2) is None
    assert ch.groupoid_isomorphic(two, ch.disjoint_union(z2, z2)) is not None


def test_isomorphism_counts_mismatch():
    assert ch.groupoid_isomorphic(cyclic_groupoid(2), cyclic_groupoid(3)) is None


def test_isomorphism_nontrivial_multi_object():
    a = ch.action_groupoid(2, 2)
    b = ch.action_groupoid(2, 2)
    iso = ch.groupoid_isomorphic(a, b)
    assert iso is not None
    f_obj, f_mor = iso
    assert sorted(f_obj) == list(range(a.n_objects))
    assert sorted(f_mor) == list(range(a.n_morphisms))


def test_isomorphism_guard():
    big = ch.action_groupoid(3, 4)
    with pytest.raises(ch.ResourceLimitError):
        ch.groupoid_isomorphic(big, big)

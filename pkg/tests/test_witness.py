"""Witness families, collapsed products, and the zero-block certification."""

import random
from fractions import Fraction

import pytest

from tck import (
    ChevalleyAutomorphism,
    ConsistencyError,
    DomainError,
    ProductAutomorphism,
    ScalingAutomorphism,
    WitnessSequence,
    build_root_system,
    character_lattice_member,
    diagram_symmetries,
    entrywise_constraint_system,
    generate_witnesses,
    graph_automorphism_matrix,
    obstruction_check,
    pattern_determinant,
    prime_support,
    product_aut_power_action,
    project_product_to_first_factor,
    reduced_obstruction_check,
    supports_pairwise_disjoint,
    twisted_power_product,
    x_alpha,
)
from tck.linalg import diagonal_entries, identity_matrix, is_diagonal, mat_eq

TYPES = ("A1", "A2", "A3", "B2", "D4", "G2")


def _nontrivial_symmetry(rs):
    for sigma in diagram_symmetries(rs):
        if sigma.order > 1:
            return sigma
    return None


def test_generate_witnesses_shapes():
    rs = build_root_system("A1")
    w = generate_witnesses(rs, 1)
    assert w.count == 1
    assert w.primes == ((2,),)
    assert diagonal_entries(w.elements[0]) == [Fraction(4), Fraction(1, 4), Fraction(1)]
    rs2 = build_root_system("A2")
    w2 = generate_witnesses(rs2, 2)
    assert w2.primes == ((2, 3), (5, 7))
    assert len(w2.diagonals[0]) == len(rs2.roots)
    with pytest.raises(DomainError):
        generate_witnesses(rs, 0)


@pytest.mark.parametrize("name", TYPES)
def test_witness_supports_disjoint_across_the_family(name):
    rs = build_root_system(name)
    witnesses = generate_witnesses(rs, 6)
    phi = ChevalleyAutomorphism(
        rs, graph=_nontrivial_symmetry(rs), field=ScalingAutomorphism((Fraction(2),))
    )
    products = [twisted_power_product(phi, g, 6) for g in witnesses.elements]
    root_count = len(rs.roots)
    for n in range(root_count):
        # per root position, entries and collapsed entries use fresh primes
        assert supports_pairwise_disjoint([d[n] for d in witnesses.diagonals])
        assert supports_pairwise_disjoint(
            [diagonal_entries(p)[n] for p in products]
        )
    # whole-family support unions are disjoint block by block
    unions = []
    for g, p in zip(witnesses.elements, products):
        support = set()
        for n in range(root_count):
            support |= prime_support(diagonal_entries(g)[n])
            support |= prime_support(diagonal_entries(p)[n])
        unions.append(support)
    for i in range(len(unions)):
        for j in range(i + 1, len(unions)):
            assert not unions[i] & unions[j]


def test_field_part_fixes_rational_witnesses():
    rs = build_root_system("A3")
    sigma = _nontrivial_symmetry(rs)
    delta = ScalingAutomorphism((Fraction(3),))
    phi = ChevalleyAutomorphism(rs, graph=sigma, field=delta)
    rho = graph_automorphism_matrix(rs, sigma)
    g = generate_witnesses(rs, 1).elements[0]
    assert mat_eq(phi.apply(g), rho.apply(g))


def test_twisted_power_product_values():
    rs = build_root_system("A1")
    w = generate_witnesses(rs, 1)
    g = w.elements[0]
    phi = ChevalleyAutomorphism(rs, field=ScalingAutomorphism((Fraction(2),)))
    product = twisted_power_product(phi, g, 6)
    # trivial graph part: the collapse is a plain sixth power
    assert diagonal_entries(product) == [Fraction(4) ** 6, Fraction(4) ** -6, Fraction(1)]
    single = twisted_power_product(phi, g, 1)
    assert mat_eq(single, g)
    with pytest.raises(DomainError):
        twisted_power_product(phi, g, 0)


def test_twisted_power_product_input_validation():
    rs = build_root_system("A2")
    g = generate_witnesses(rs, 1).elements[0]
    inner = ChevalleyAutomorphism(rs, inner=x_alpha(rs, rs.roots[0], Fraction(1)))
    with pytest.raises(DomainError):
        twisted_power_product(inner, g, 6)
    plain = ChevalleyAutomorphism(rs, field=ScalingAutomorphism((Fraction(2),)))
    with pytest.raises(DomainError):
        twisted_power_product(plain, x_alpha(rs, rs.roots[0], Fraction(1)), 6)


def test_product_automorphism_validation():
    a2 = build_root_system("A2")
    b2 = build_root_system("B2")
    delta = ScalingAutomorphism((Fraction(2),))
    f_a2 = ChevalleyAutomorphism(a2, field=delta)
    f_b2 = ChevalleyAutomorphism(b2, field=delta)
    with pytest.raises(DomainError):
        ProductAutomorphism([f_a2, f_b2], (1, 0))
    with pytest.raises(DomainError):
        ProductAutomorphism([f_a2, f_a2], (0, 0))
    with pytest.raises(DomainError):
        ProductAutomorphism([], ())
    mixed = ChevalleyAutomorphism(a2, field=ScalingAutomorphism((Fraction(2), Fraction(3))))
    with pytest.raises(DomainError):
        ProductAutomorphism([f_a2, mixed], (0, 1))
    product = ProductAutomorphism([f_a2, f_a2], (1, 0))
    assert product.k == 2
    assert product.permutation_order == 2


def test_product_power_action_routes_agree():
    # the closed form is validated against direct iteration inside the call
    rs = build_root_system("A2")
    sigma = _nontrivial_symmetry(rs)
    rng = random.Random(41)
    factories = [
        lambda: ChevalleyAutomorphism(rs, field=ScalingAutomorphism((Fraction(2),))),
        lambda: ChevalleyAutomorphism(
            rs, graph=sigma, field=ScalingAutomorphism((Fraction(3),))
        ),
        lambda: ChevalleyAutomorphism(rs, graph=sigma),
    ]
    for _ in range(100):
        k = rng.randrange(1, 4)
        factors = [rng.choice(factories)() for _ in range(k)]
        perm = list(range(k))
        rng.shuffle(perm)
        product = ProductAutomorphism(factors, tuple(perm))
        witnesses = generate_witnesses(rs, k)
        summands = list(witnesses.elements)
        r = rng.randrange(1, 8)
        out = product_aut_power_action(product, summands, r)
        assert len(out) == k
        for x in out:
            assert is_diagonal(x)
    with pytest.raises(DomainError):
        product_aut_power_action(product, summands[:-1] + [summands[0][:-1]], 1)


def test_constraint_system_blocks_and_characters():
    rs = build_root_system("A1")
    dim = 3
    ident = identity_matrix(dim)
    delta = ScalingAutomorphism((Fraction(2),))
    constraints = entrywise_constraint_system(rs, ident, ident, delta)
    assert len(constraints) == dim * dim
    blocks = {}
    for c in constraints:
        blocks[c.block] = blocks.get(c.block, 0) + 1
        # identity products and no correction force trivial characters
        assert c.eigencharacter == 1
        assert c.power == 6
    assert blocks == {"Q": 4, "R": 2, "S": 2, "T": 1}


def test_constraint_system_tracks_witness_entries():
    rs = build_root_system("A1")
    w = generate_witnesses(rs, 2)
    delta = ScalingAutomorphism((Fraction(2),))
    phi = ChevalleyAutomorphism(rs, field=delta)
    first = twisted_power_product(phi, w.elements[0], 6)
    second = twisted_power_product(phi, w.elements[1], 6)
    constraints = entrywise_constraint_system(rs, first, second, delta)
    b1 = diagonal_entries(first)
    b2 = diagonal_entries(second)
    for c in constraints:
        m, n = c.position
        assert c.coefficient == 1 / b1[m]
        assert c.witness_part == b2[n]
        assert c.eigencharacter == c.coefficient * c.witness_part


def test_constraint_system_correction_validation():
    rs = build_root_system("A1")
    ident = identity_matrix(3)
    delta = ScalingAutomorphism((Fraction(2),))
    with pytest.raises(DomainError):
        entrywise_constraint_system(rs, ident, ident, delta, correction=[Fraction(1)])
    with pytest.raises(DomainError):
        entrywise_constraint_system(rs, ident, ident, delta, correction=[1, 0])
    with pytest.raises(DomainError):
        entrywise_constraint_system(rs, ident, ident, None)


def test_obstruction_certificate_a2():
    rs = build_root_system("A2")
    witnesses = generate_witnesses(rs, 6)
    delta = ScalingAutomorphism((Fraction(2),))
    certificate = obstruction_check(rs, witnesses, None, delta, 3)
    assert certificate.verdict == "obstructed"
    assert certificate.index == 3
    assert certificate.bound == 2
    assert certificate.family_size == 6
    assert certificate.generators == (Fraction(64),)
    assert certificate.uncertified == ()
    assert len(certificate.entries) == 48
    assert {e.block for e in certificate.entries} == {"Q", "S"}
    assert sum(1 for e in certificate.entries if e.block == "Q") == 36
    for entry in certificate.entries[:8]:
        assert not character_lattice_member(entry.eigencharacter, certificate.generators)
        assert entry.family_size == 6
    det = pattern_determinant(certificate)
    assert not det


def test_obstruction_inconclusive_at_low_index():
    rs = build_root_system("A2")
    witnesses = generate_witnesses(rs, 4)
    delta = ScalingAutomorphism((Fraction(2),))
    for index in (1, 2):
        certificate = obstruction_check(rs, witnesses, None, delta, index)
        assert certificate.verdict == "inconclusive"
        assert certificate.entries == ()
    with pytest.raises(DomainError):
        obstruction_check(rs, witnesses, None, delta, 5)
    with pytest.raises(DomainError):
        obstruction_check(rs, witnesses, None, delta, 0)


def test_obstruction_with_graph_part():
    rs = build_root_system("A3")
    witnesses = generate_witnesses(rs, 4)
    sigma = _nontrivial_symmetry(rs)
    delta = ScalingAutomorphism((Fraction(2),))
    certificate = obstruction_check(rs, witnesses, sigma, delta, 3)
    assert certificate.verdict == "obstructed"
    # 12 roots and rank 3: the root-indexed columns carry 15 * 12 entries
    assert len(certificate.entries) == 180
    assert not pattern_determinant(certificate)


def test_obstruction_rejects_type_mismatch():
    a2 = build_root_system("A2")
    b2 = build_root_system("B2")
    witnesses = generate_witnesses(b2, 3)
    with pytest.raises(DomainError):
        obstruction_check(a2, witnesses, None, ScalingAutomorphism((Fraction(2),)), 3)


def test_obstruction_detects_support_collisions():
    rs = build_root_system("A2")
    w = generate_witnesses(rs, 3)
    collided = WitnessSequence(
        rs,
        (w.primes[0], w.primes[0], w.primes[2]),
        (w.elements[0], w.elements[0], w.elements[2]),
        (w.diagonals[0], w.diagonals[0], w.diagonals[2]),
    )
    with pytest.raises(ConsistencyError):
        obstruction_check(rs, collided, None, ScalingAutomorphism((Fraction(2),)), 3)


def test_obstruction_correction_keeps_the_verdict():
    rs = build_root_system("A2")
    witnesses = generate_witnesses(rs, 5)
    delta = ScalingAutomorphism((Fraction(2),))
    correction = [Fraction(11)] * len(rs.roots)
    certificate = obstruction_check(rs, witnesses, None, delta, 4, correction=correction)
    assert certificate.verdict == "obstructed"


def test_trdeg_two_scaling_raises_the_bound():
    rs = build_root_system("A2")
    witnesses = generate_witnesses(rs, 6)
    delta = ScalingAutomorphism((Fraction(2), Fraction(3)))
    assert obstruction_check(rs, witnesses, None, delta, 3).verdict == "inconclusive"
    assert obstruction_check(rs, witnesses, None, delta, 4).verdict == "obstructed"


def test_single_factor_reduction_matches_direct_route():
    rs = build_root_system("A2")
    witnesses = generate_witnesses(rs, 5)
    delta = ScalingAutomorphism((Fraction(2),))
    product = ProductAutomorphism([ChevalleyAutomorphism(rs, field=delta)], (0,))
    reduction = project_product_to_first_factor(product, witnesses)
    assert reduction.exponent == 6
    assert reduction.permutation_order == 1
    assert reduction.scaling.scalars == delta.scalars
    direct = obstruction_check(rs, witnesses, None, delta, 4)
    via_product = reduced_obstruction_check(reduction, 4)
    assert via_product.verdict == direct.verdict == "obstructed"
    assert via_product.entries == direct.entries


def test_two_factor_swap_reduction():
    rs = build_root_system("A2")
    witnesses = generate_witnesses(rs, 4)
    f1 = ChevalleyAutomorphism(rs, field=ScalingAutomorphism((Fraction(2),)))
    f2 = ChevalleyAutomorphism(rs, field=ScalingAutomorphism((Fraction(3),)))
    product = ProductAutomorphism([f1, f2], (1, 0))
    reduction = project_product_to_first_factor(product, witnesses)
    assert reduction.permutation_order == 2
    assert reduction.exponent == 12
    assert reduction.scaling.scalars == (Fraction(6),)
    assert reduction.power_scaling.scalars == (Fraction(6) ** 6,)
    # field parts fix the rational witnesses: the collapse is a 12th power
    for g, p in zip(witnesses.elements, reduction.products):
        assert diagonal_entries(p) == [e**12 for e in diagonal_entries(g)]
    certificate = reduced_obstruction_check(reduction, 3)
    assert certificate.verdict == "obstructed"
    assert not pattern_determinant(certificate)


def test_three_cycle_reduction_composes_the_fields():
    rs = build_root_system("A1")
    witnesses = generate_witnesses(rs, 3)
    fields = (Fraction(2), Fraction(2), Fraction(3))
    factors = [
        ChevalleyAutomorphism(rs, field=ScalingAutomorphism((c,))) for c in fields
    ]
    product = ProductAutomorphism(factors, (1, 2, 0))
    reduction = project_product_to_first_factor(product, witnesses)
    assert reduction.permutation_order == 3
    assert reduction.exponent == 18
    assert reduction.scaling.scalars == (Fraction(12),)
    certificate = reduced_obstruction_check(reduction, 3)
    assert certificate.verdict == "obstructed"

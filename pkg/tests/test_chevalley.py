"""Adjoint Chevalley generators and the four-part automorphism."""

import random
from fractions import Fraction

import pytest

from tck import (
    ChevalleyAutomorphism,
    ConsistencyError,
    DomainError,
    ScalingAutomorphism,
    RationalFunction,
    adjoint_dimension,
    build_root_system,
    commutator_factors,
    commutator_relation_check,
    diagram_symmetries,
    extend_symmetry_to_roots,
    graph_automorphism_matrix,
    h_alpha,
    n_alpha,
    reduce_mod_p,
    x_alpha,
)
from tck.linalg import diagonal_entries, identity_matrix, is_diagonal, mat_eq, mat_mul

SCALARS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3, 5))


def test_adjoint_dimensions():
    assert adjoint_dimension(build_root_system("A1")) == 3
    assert adjoint_dimension(build_root_system("A2")) == 8
    assert adjoint_dimension(build_root_system("G2")) == 14
    assert adjoint_dimension(build_root_system("D4")) == 28


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_root_group_additivity(name):
    rs = build_root_system(name)
    for alpha in rs.roots:
        for t in SCALARS:
            for u in (Fraction(3), Fraction(-1, 2)):
                assert mat_eq(
                    mat_mul(x_alpha(rs, alpha, t), x_alpha(rs, alpha, u)),
                    x_alpha(rs, alpha, t + u),
                )
    assert mat_eq(x_alpha(rs, rs.roots[0], 0), identity_matrix(adjoint_dimension(rs)))


@pytest.mark.parametrize("name", ["A2", "B2"])
def test_torus_multiplicativity(name):
    rs = build_root_system(name)
    for alpha in rs.positive_roots:
        for t in SCALARS:
            for u in (Fraction(2), Fraction(-1, 3)):
                assert mat_eq(
                    mat_mul(h_alpha(rs, alpha, t), h_alpha(rs, alpha, u)),
                    h_alpha(rs, alpha, t * u),
                )
        assert mat_eq(h_alpha(rs, alpha, 1), identity_matrix(adjoint_dimension(rs)))


def test_torus_matrices_are_diagonal_characters():
    rs = build_root_system("A2")
    alpha = rs.positive_roots[0]
    h = h_alpha(rs, alpha, Fraction(5))
    assert is_diagonal(h)
    entries = diagonal_entries(h)
    for i, beta in enumerate(rs.roots):
        assert entries[i] == Fraction(5) ** rs.cartan_integer(beta, alpha)
    for k in range(len(rs.roots), adjoint_dimension(rs)):
        assert entries[k] == 1


def test_weight_conjugation():
    rs = build_root_system("B2")
    for alpha in rs.positive_roots[: rs.rank]:
        h = h_alpha(rs, alpha, Fraction(3))
        h_inv = h_alpha(rs, alpha, Fraction(1, 3))
        for beta in rs.roots:
            expected = x_alpha(
                rs, beta, Fraction(3) ** rs.cartan_integer(beta, alpha) * Fraction(1, 2)
            )
            got = mat_mul(mat_mul(h, x_alpha(rs, beta, Fraction(1, 2))), h_inv)
            assert mat_eq(got, expected)


def test_weyl_conjugation_permutes_root_groups():
    rs = build_root_system("A2")
    alpha = rs.positive_roots[0]
    n = n_alpha(rs, alpha, Fraction(1))
    n_inv = n_alpha(rs, alpha, Fraction(-1))
    for beta in rs.roots:
        conj = mat_mul(mat_mul(n, x_alpha(rs, beta, Fraction(2))), n_inv)
        # image is x over the reflected root with the same magnitude
        reflected = tuple(
            b - rs.cartan_integer(beta, alpha) * a for a, b in zip(alpha, beta)
        )
        options = [x_alpha(rs, reflected, Fraction(2)), x_alpha(rs, reflected, Fraction(-2))]
        assert any(mat_eq(conj, option) for option in options)
    with pytest.raises(DomainError):
        n_alpha(rs, alpha, 0)
    with pytest.raises(DomainError):
        h_alpha(rs, alpha, 0)


def test_commutator_relation_across_types():
    for name in ("A2", "B2"):
        rs = build_root_system(name)
        for alpha in rs.roots:
            for beta in rs.roots:
                if beta in (alpha, rs.negate(alpha)):
                    continue
                assert commutator_relation_check(rs, alpha, beta, Fraction(2), Fraction(1, 3))


def test_commutator_relation_g2_samples():
    rs = build_root_system("G2")
    rng = random.Random(2)
    pairs = [
        (a, b) for a in rs.roots for b in rs.roots if b not in (a, rs.negate(a))
    ]
    for a, b in rng.sample(pairs, 20):
        assert commutator_relation_check(rs, a, b, Fraction(-1), Fraction(2))


def test_commutator_factors_shape():
    rs = build_root_system("A2")
    a, b = rs.positive_roots[0], rs.positive_roots[1]
    factors = commutator_factors(rs, a, b)
    assert [(gamma, i, j) for gamma, i, j, _ in factors] == [(rs.add(a, b), 1, 1)]
    assert factors[0][3] in (Fraction(1), Fraction(-1))
    with pytest.raises(DomainError):
        commutator_factors(rs, a, a)
    with pytest.raises(DomainError):
        commutator_factors(rs, a, rs.negate(a))


def test_g2_commutator_reaches_depth_three():
    rs = build_root_system("G2")
    simple = rs.positive_roots[: rs.rank]
    degrees = {
        (i, j) for a in simple for b in simple if a != b
        for _, i, j, _ in commutator_factors(rs, a, b)
    }
    assert (3, 1) in degrees or (1, 3) in degrees


@pytest.mark.parametrize("name", ["A2", "A3", "D4"])
def test_graph_realization_is_an_automorphism(name):
    rs = build_root_system(name)
    rng = random.Random(5)
    for sigma in diagram_symmetries(rs):
        real = graph_automorphism_matrix(rs, sigma)
        for _ in range(3):
            alpha = rng.choice(rs.roots)
            beta = rng.choice(rs.roots)
            x = mat_mul(x_alpha(rs, alpha, Fraction(2)), x_alpha(rs, beta, Fraction(-1, 2)))
            assert mat_eq(real.apply(x), mat_mul(real.apply(x_alpha(rs, alpha, Fraction(2))),
                                                 real.apply(x_alpha(rs, beta, Fraction(-1, 2)))))
        # sends each root group to the root group of the image root
        for alpha in rs.roots:
            image = real.apply(x_alpha(rs, alpha, Fraction(3)))
            target = extend_symmetry_to_roots(rs, sigma, alpha)
            assert any(
                mat_eq(image, x_alpha(rs, target, s)) for s in (Fraction(3), Fraction(-3))
            )


def test_graph_realization_order():
    rs = build_root_system("D4")
    sigma = next(s for s in diagram_symmetries(rs) if s.order == 3)
    real = graph_automorphism_matrix(rs, sigma)
    x = x_alpha(rs, rs.positive_roots[0], Fraction(1, 2))
    y = x
    for _ in range(3):
        y = real.apply(y)
    assert mat_eq(y, x)


def test_automorphism_part_order():
    # field acts before graph: on rational matrices only the graph part shows
    rs = build_root_system("A2")
    sigma = diagram_symmetries(rs)[1]
    delta = ScalingAutomorphism((Fraction(7),))
    phi = ChevalleyAutomorphism(rs, graph=sigma, field=delta)
    g = h_alpha(rs, rs.positive_roots[0], Fraction(4))
    expected = graph_automorphism_matrix(rs, sigma).apply(g)
    assert mat_eq(phi.apply(g), expected)


def test_field_part_scales_variable_entries():
    rs = build_root_system("A1")
    delta = ScalingAutomorphism((Fraction(3),))
    phi = ChevalleyAutomorphism(rs, field=delta)
    t = RationalFunction.variable(1, 0)
    x = x_alpha(rs, rs.positive_roots[0], t)
    image = phi.apply(x)
    expected = x_alpha(rs, rs.positive_roots[0], t * 3)
    for row_got, row_want in zip(image, expected):
        for got, want in zip(row_got, row_want):
            assert got == want


def test_inner_part_conjugates():
    rs = build_root_system("A2")
    g = n_alpha(rs, rs.positive_roots[0], Fraction(1))
    phi = ChevalleyAutomorphism(rs, inner=g)
    x = x_alpha(rs, rs.positive_roots[1], Fraction(5))
    from tck.linalg import mat_inv, mat_product

    assert mat_eq(phi.apply(x), mat_product([g, x, mat_inv(g)]))


def test_diagonal_part_must_be_a_character():
    rs = build_root_system("A2")
    dim = adjoint_dimension(rs)
    bogus = identity_matrix(dim)
    bogus[0][0] = Fraction(2)  # breaks the opposite-root cancellation
    with pytest.raises(DomainError):
        ChevalleyAutomorphism(rs, diagonal=bogus)
    good = h_alpha(rs, rs.positive_roots[0], Fraction(2))
    phi = ChevalleyAutomorphism(rs, diagonal=good)
    assert mat_eq(phi.apply(identity_matrix(dim)), identity_matrix(dim))


def test_reduce_mod_p():
    rs = build_root_system("A1")
    x = x_alpha(rs, rs.positive_roots[0], Fraction(1, 2))
    reduced = reduce_mod_p(x, 3)
    assert all(0 <= e < 3 for row in reduced for e in row)
    # 1/2 = 2 mod 3
    assert reduced[0][2] != 0
    with pytest.raises(DomainError):
        reduce_mod_p(x, 2)
    with pytest.raises(DomainError):
        reduce_mod_p(x, 4)

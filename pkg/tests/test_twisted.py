"""Finite-group twisted classes, isogredience, and descriptors."""

import json
import random

import pytest

from tck import (
    ConsistencyError,
    DomainError,
    FiniteGroup,
    GroupAutomorphism,
    ResourceLimitError,
    all_automorphisms,
    automorphism_from_descriptor,
    center,
    closure,
    element_order,
    group_descriptor,
    group_from_descriptor,
    induced_automorphism,
    inner_twist_invariance,
    isogredience_count,
    reidemeister_number,
    subgroup,
    telescoping_product_check,
    twisted_classes,
)


def s3():
    return closure([(1, 0, 2), (1, 2, 0)])


def s4():
    return closure([(1, 0, 2, 3), (1, 2, 3, 0)])


def d4():
    return closure([(1, 2, 3, 0), (3, 2, 1, 0)])


def q8():
    return closure([((0, 2), (1, 0)), ((1, 1), (1, 2))], modulus=3)


def test_closure_sizes_and_orders():
    groups = {"S3": (s3(), 6), "S4": (s4(), 24), "D4": (d4(), 8), "Q8": (q8(), 8)}
    for name, (g, size) in groups.items():
        assert len(g) == size
    assert element_order(s3(), (1, 2, 0)) == 3
    assert element_order(q8(), ((0, 2), (1, 0))) == 4
    g = d4()
    assert sorted(element_order(g, x) for x in g.elements) == [1, 2, 2, 2, 2, 2, 4, 4]


def test_identity_twist_recovers_conjugacy_classes():
    for g, classes in ((s3(), 3), (s4(), 5), (d4(), 5), (q8(), 5)):
        ident = GroupAutomorphism.identity(g)
        assert reidemeister_number(g, ident) == classes


def test_partition_blocks_cover_the_group():
    g = s4()
    for phi in (GroupAutomorphism.identity(g), GroupAutomorphism.inner(g, g.elements[5])):
        partition = twisted_classes(g, phi)
        assert partition.count == len(partition.blocks)
        assert sum(len(b) for b in partition.blocks) == len(g)
        seen = {x for b in partition.blocks for x in b}
        assert seen == set(g.elements)


def test_twisted_classes_are_twist_orbits():
    g = s3()
    phi = GroupAutomorphism.inner(g, (1, 2, 0))
    partition = twisted_classes(g, phi)
    index = {x: k for k, block in enumerate(partition.blocks) for x in block}
    for x in g.elements:
        for z in g.elements:
            moved = g.mul(g.mul(z, x), g.inv(phi(z)))
            assert index[moved] == index[x]


def test_inner_twists_preserve_the_count():
    rng = random.Random(23)
    g = q8()
    autos = all_automorphisms(g)
    for phi in rng.sample(autos, 6):
        for h in g.elements:
            assert inner_twist_invariance(g, phi, h)
            composed = phi.compose(GroupAutomorphism.inner(g, h))
            assert reidemeister_number(g, composed) == reidemeister_number(g, phi)


def test_automorphism_group_sizes():
    assert len(all_automorphisms(s3())) == 6
    assert len(all_automorphisms(d4())) == 8
    assert len(all_automorphisms(q8())) == 24


def test_from_generator_images_validates():
    g = s3()
    with pytest.raises(DomainError):
        # collapsing a 3-cycle onto a transposition is no automorphism
        GroupAutomorphism.from_generator_images(g, [(1, 0, 2), (1, 0, 2)])
    flip = GroupAutomorphism.inner(g, (0, 2, 1))
    rebuilt = GroupAutomorphism.from_generator_images(g, [flip(x) for x in g.generators])
    assert rebuilt == flip


def test_centers():
    assert len(center(s3())) == 1
    assert len(center(q8())) == 2
    assert len(center(d4())) == 2
    assert set(center(d4()).elements) <= set(d4().elements)


def test_automorphism_algebra():
    g = q8()
    autos = all_automorphisms(g)
    rng = random.Random(1)
    for _ in range(10):
        a, b = rng.choice(autos), rng.choice(autos)
        c = a.compose(b)
        for x in g.elements:
            assert c(x) == a(b(x))
        assert a.compose(a.inverse()) == GroupAutomorphism.identity(g)
    cubed = autos[3] ** 3
    assert cubed(g.elements[4]) == autos[3](autos[3](autos[3](g.elements[4])))


def test_induced_automorphism_on_quotient():
    g = s4()
    v4 = subgroup(g, [(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)])
    quotient, phi_bar = induced_automorphism(g, v4, GroupAutomorphism.identity(g))
    assert len(quotient) == 6
    assert reidemeister_number(quotient, phi_bar) == 3
    # the projected count never exceeds the upstairs count
    assert 3 <= reidemeister_number(g, GroupAutomorphism.identity(g))


def test_induced_automorphism_rejects_bad_subgroups():
    g = s4()
    not_normal = subgroup(g, [(0, 1, 2, 3), (1, 0, 2, 3)])
    with pytest.raises(DomainError):
        induced_automorphism(g, not_normal, GroupAutomorphism.identity(g))


def test_isogredience_counts():
    for g, expected in ((s3(), 3), (d4(), 4), (q8(), 4)):
        result = isogredience_count(g, GroupAutomorphism.identity(g))
        assert result.count == expected
    # centerless case: isogredience equals the plain twisted count
    g = s3()
    for phi in all_automorphisms(g):
        assert isogredience_count(g, phi).count == reidemeister_number(g, phi)


def test_isogredience_rejects_foreign_automorphism():
    with pytest.raises(DomainError):
        isogredience_count(s3(), GroupAutomorphism.identity(s3()))


def test_telescoping_identity_sweep():
    g = d4()
    rng = random.Random(8)
    autos = all_automorphisms(g)
    for _ in range(40):
        phi = rng.choice(autos)
        y = rng.choice(g.elements)
        z = rng.choice(g.elements)
        m = rng.randrange(1, 7)
        assert telescoping_product_check(g, phi, y, z, m)
    with pytest.raises(DomainError):
        telescoping_product_check(g, autos[0], g.elements[0], g.elements[1], 0)


def test_closure_cap(monkeypatch):
    with pytest.raises(ResourceLimitError):
        closure([(1, 2, 3, 0), (1, 0, 2, 3)], cap=10)
    monkeypatch.setenv("TCK_CLOSURE_CAP", "5")
    with pytest.raises(ResourceLimitError):
        s4()
    monkeypatch.setenv("TCK_CLOSURE_CAP", "not a number")
    with pytest.raises(DomainError):
        s4()


def test_group_descriptor_roundtrip():
    for g in (s3(), q8()):
        descriptor = group_descriptor(g)
        json.dumps(descriptor)  # must be serializable as given
        rebuilt = group_from_descriptor(descriptor)
        assert len(rebuilt) == len(g)
        assert set(rebuilt.elements) == set(g.elements)
        for a in g.elements[:4]:
            for b in g.elements[:4]:
                assert rebuilt.mul(a, b) == g.mul(a, b)


def test_automorphism_descriptor():
    g = s3()
    descriptor = {"images": [[1, 0, 2], [2, 0, 1]]}
    phi = automorphism_from_descriptor(g, descriptor)
    assert phi((1, 0, 2)) == (1, 0, 2)
    with pytest.raises(DomainError):
        automorphism_from_descriptor(g, {"images": [[1, 0, 2]]})


def test_group_from_descriptor_rejects_junk():
    with pytest.raises(DomainError):
        group_from_descriptor({"encoding": "perm"})
    with pytest.raises(DomainError):
        group_from_descriptor({"encoding": "poem", "generators": []})

"""Brute-force twisted conjugacy on finite groups.

Elements are canonical hashable encodings: permutations as image tuples,
matrices over Z/m as row tuples with entries reduced into [0, m).  Groups
are built by breadth-first closure from generators, so element order is
discovery order and every derived quantity is deterministic.

The twisting action of z on y is z y phi(z)^-1.  Orbits are computed by
union-find restricted to generator moves; that is enough because the acting
set is a group.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product as cartesian_product
from typing import Iterable

from .errors import ConsistencyError, DomainError, ResourceLimitError

DEFAULT_CLOSURE_CAP = 200000


def closure_cap() -> int:
    raw = os.environ.get("TCK_CLOSURE_CAP")
    if raw is None:
        return DEFAULT_CLOSURE_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise DomainError(f"TCK_CLOSURE_CAP must be an integer, got {raw!r}") from exc
    if value < 1:
        raise DomainError("TCK_CLOSURE_CAP must be positive")
    return value


class PermOps:
    """Permutations of range(degree), encoded as image tuples."""

    encoding = "perm"

    def __init__(self, degree: int):
        self.degree = degree
        self.identity = tuple(range(degree))

    def canonical(self, raw):
        image = tuple(int(v) for v in raw)
        if sorted(image) != list(range(self.degree)):
            raise DomainError(f"{raw!r} is not a permutation of {self.degree} points")
        return image

    def mul(self, a, b):
        # apply b first, then a, matching matrix composition
        return tuple(a[v] for v in b)

    def inv(self, a):
        out = [0] * self.degree
        for i, v in enumerate(a):
            out[v] = i
        return tuple(out)


class MatModOps:
    """Invertible size x size matrices over Z/m, encoded as row tuples.

    The modulus need not be prime: inverses are found by powering until the
    identity recurs, which works for any invertible element of a finite
    monoid and detects non-invertible input by cycle revisit.
    """

    encoding = "matmod"

    def __init__(self, size: int, modulus: int):
        if modulus < 2:
            raise DomainError(f"matrix encoding needs a modulus >= 2, got {modulus}")
        self.size = size
        self.modulus = modulus
        self.identity = tuple(
            tuple(1 if i == j else 0 for j in range(size)) for i in range(size)
        )

    def canonical(self, raw):
        p = self.modulus
        rows = tuple(tuple(int(v) % p for v in row) for row in raw)
        if len(rows) != self.size or any(len(r) != self.size for r in rows):
            raise DomainError(f"matrix is not {self.size}x{self.size}")
        return rows

    def mul(self, a, b):
        p = self.modulus
        n = self.size
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n))
            for i in range(n)
        )

    def inv(self, a):
        seen = {a}
        previous, current = a, self.mul(a, a)
        while current != self.identity:
            if current in seen:
                raise DomainError(f"matrix {a} is not invertible mod {self.modulus}")
            seen.add(current)
            previous, current = current, self.mul(current, a)
        return previous


class FiniteGroup:
    """Closure of a generator list, with parent words kept for extension."""

    def __init__(self, ops, elements, generators, parents):
        self.ops = ops
        self.elements = tuple(elements)
        self.generators = tuple(generators)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.identity = ops.identity
        # parents[i] = (parent index, generator position) or None at identity
        self._parents = parents
        self._inverses: dict = {}

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.index

    def mul(self, a, b):
        return self.ops.mul(a, b)

    def inv(self, a):
        cached = self._inverses.get(a)
        if cached is None:
            cached = self.ops.inv(a)
            self._inverses[a] = cached
        return cached

    def conjugate(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))

    def commutator(self, a, b):
        return self.mul(self.mul(a, b), self.inv(self.mul(b, a)))


def _closure(ops, generators, cap=None) -> FiniteGroup:
    cap = closure_cap() if cap is None else cap
    gens = []
    for g in generators:
        c = ops.canonical(g)
        ops.inv(c)  # rejects non-invertible input before closure starts
        if c not in gens:
            gens.append(c)
    elements = [ops.identity]
    parents = [None]
    seen = {ops.identity: 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        for pos, g in enumerate(gens):
            y = ops.mul(x, g)
            if y not in seen:
                if len(elements) >= cap:
                    raise ResourceLimitError(
                        f"closure exceeded cap {cap}; partial size {len(elements)}"
                    )
                seen[y] = len(elements)
                elements.append(y)
                parents.append((head, pos))
        head += 1
    return FiniteGroup(ops, elements, gens, parents)


def closure(generators, modulus: int | None = None, cap: int | None = None) -> FiniteGroup:
    """Breadth-first closure of permutation or matrix generators."""
    generators = list(generators)
    if modulus is not None:
        if not generators:
            raise DomainError("matrix closure needs at least one generator for its size")
        ops = MatModOps(len(tuple(generators[0])), modulus)
        return _closure(ops, generators, cap)
    degree = len(tuple(generators[0])) if generators else 0
    return _closure(PermOps(degree), generators, cap)


def subgroup(G: FiniteGroup, elements: Iterable, cap: int | None = None) -> FiniteGroup:
    sub = _closure(G.ops, elements, cap)
    missing = [x for x in sub.elements if x not in G.index]
    if missing:
        raise DomainError(f"element {missing[0]} lies outside the ambient group")
    return sub


def element_order(G: FiniteGroup, x) -> int:
    order = 1
    power = x
    while power != G.identity:
        power = G.mul(power, x)
        order += 1
    return order


def all_automorphisms(G: FiniteGroup) -> list["GroupAutomorphism"]:
    """Every automorphism, by exhausting generator images of matching order."""
    orders = {x: element_order(G, x) for x in G.elements}
    candidates = [
        [x for x in G.elements if orders[x] == orders[g]] for g in G.generators
    ]
    found = []
    for images in cartesian_product(*candidates):
        try:
            found.append(GroupAutomorphism.from_generator_images(G, images))
        except DomainError:
            continue
    return found


def center(G: FiniteGroup) -> FiniteGroup:
    central = [
        x
        for x in G.elements
        if all(G.mul(x, g) == G.mul(g, x) for g in G.generators)
    ]
    return subgroup(G, central)


class GroupAutomorphism:
    """Bijective homomorphism given by generator images, fully tabulated."""

    def __init__(self, group: FiniteGroup, table: dict):
        self.group = group
        self.table = table

    @classmethod
    def from_generator_images(cls, group: FiniteGroup, images) -> "GroupAutomorphism":
        images = [group.ops.canonical(im) for im in images]
        if len(images) != len(group.generators):
            raise DomainError(
                f"expected {len(group.generators)} generator images, got {len(images)}"
            )
        for im in images:
            if im not in group.index:
                raise DomainError(f"image {im} lies outside the group")
        table = {group.identity: group.identity}
        for i, x in enumerate(group.elements):
            if i == 0:
                continue
            parent, pos = group._parents[i]
            table[x] = group.mul(table[group.elements[parent]], images[pos])
        # Multiplication-table consistency makes the tree-defined map a
        # homomorphism; bijectivity then follows from surjectivity.
        if len(set(table.values())) != len(group):
            raise DomainError("generator images do not extend to a bijection")
        for x in group.elements:
            fx = table[x]
            for g, fg in zip(group.generators, images):
                if table[group.mul(x, g)] != group.mul(fx, fg):
                    raise DomainError(
                        "generator images do not extend to a homomorphism"
                    )
        return cls(group, table)

    @classmethod
    def identity(cls, group: FiniteGroup) -> "GroupAutomorphism":
        return cls(group, {x: x for x in group.elements})

    @classmethod
    def inner(cls, group: FiniteGroup, g) -> "GroupAutomorphism":
        g = group.ops.canonical(g)
        if g not in group.index:
            raise DomainError(f"{g} lies outside the group")
        return cls(group, {x: group.conjugate(g, x) for x in group.elements})

    def __call__(self, x):
        return self.table[x]

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        if other.group is not self.group:
            raise DomainError("automorphisms act on different groups")
        return GroupAutomorphism(self.group, {x: self.table[other.table[x]] for x in self.group.elements})

    def inverse(self) -> "GroupAutomorphism":
        return GroupAutomorphism(self.group, {v: k for k, v in self.table.items()})

    def __pow__(self, n: int) -> "GroupAutomorphism":
        base = self if n >= 0 else self.inverse()
        result = GroupAutomorphism.identity(self.group)
        for _ in range(abs(n)):
            result = base.compose(result)
        return result

    def __eq__(self, other):
        return (
            isinstance(other, GroupAutomorphism)
            and self.group is other.group
            and self.table == other.table
        )


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            if rj < ri:
                ri, rj = rj, ri
            self.parent[rj] = ri


@dataclass(frozen=True)
class TwistedClassPartition:
    blocks: tuple
    automorphism: GroupAutomorphism

    @property
    def count(self) -> int:
        return len(self.blocks)


def _orbit_blocks(G: FiniteGroup, moves) -> tuple:
    uf = _UnionFind(len(G))
    for i, x in enumerate(G.elements):
        for move in moves:
            uf.union(i, G.index[move(x)])
    grouped: dict[int, list] = {}
    for i, x in enumerate(G.elements):
        grouped.setdefault(uf.find(i), []).append(x)
    return tuple(tuple(block) for _, block in sorted(grouped.items()))


def twisted_classes(G: FiniteGroup, phi: GroupAutomorphism) -> TwistedClassPartition:
    if phi.group is not G:
        raise DomainError("automorphism acts on a different group")
    moves = [
        (lambda z: lambda y: G.mul(G.mul(z, y), G.inv(phi(z))))(z) for z in G.generators
    ]
    blocks = _orbit_blocks(G, moves)
    if sum(len(b) for b in blocks) != len(G):
        raise ConsistencyError("twisted classes do not partition the group")
    return TwistedClassPartition(blocks, phi)


def reidemeister_number(G: FiniteGroup, phi: GroupAutomorphism) -> int:
    return twisted_classes(G, phi).count


def inner_twist_invariance(G: FiniteGroup, phi: GroupAutomorphism, g) -> bool:
    g = G.ops.canonical(g)
    if g not in G.index:
        raise DomainError(f"{g} lies outside the group")
    twisted = phi.compose(GroupAutomorphism.inner(G, g))
    return reidemeister_number(G, twisted) == reidemeister_number(G, phi)


def _coset_leaders(G: FiniteGroup, N: FiniteGroup) -> dict:
    leader = {}
    for x in G.elements:
        coset = [G.mul(x, n) for n in N.elements]
        best = min(coset)
        for y in coset:
            leader[y] = best
    return leader


class _QuotientOps:
    def __init__(self, G: FiniteGroup, leader: dict):
        self.encoding = G.ops.encoding
        self._G = G
        self._leader = leader
        self.identity = leader[G.identity]

    def canonical(self, raw):
        x = self._G.ops.canonical(raw)
        if x not in self._leader:
            raise DomainError(f"{x} lies outside the group")
        return self._leader[x]

    def mul(self, a, b):
        return self._leader[self._G.mul(a, b)]

    def inv(self, a):
        return self._leader[self._G.inv(a)]


def induced_automorphism(G: FiniteGroup, N, phi: GroupAutomorphism):
    """Quotient by a phi-invariant normal subgroup with the induced map."""
    if not isinstance(N, FiniteGroup):
        N = subgroup(G, N)
    elif any(x not in G.index for x in N.elements):
        raise DomainError("subgroup lies outside the ambient group")
    n_set = set(N.elements)
    for g in G.generators:
        for n in N.elements:
            if G.conjugate(g, n) not in n_set:
                raise DomainError(f"subgroup is not normal: conjugate of {n} escapes")
    if {phi(n) for n in N.elements} != n_set:
        raise DomainError("automorphism does not preserve the subgroup")
    leader = _coset_leaders(G, N)
    qops = _QuotientOps(G, leader)
    quotient = _closure(qops, [leader[g] for g in G.generators])
    images = [leader[phi(g)] for g in quotient.generators]
    phi_bar = GroupAutomorphism.from_generator_images(quotient, images)
    return quotient, phi_bar


@dataclass(frozen=True)
class IsogredienceClassCount:
    count: int
    automorphism: GroupAutomorphism


def isogredience_count(G: FiniteGroup, phi: GroupAutomorphism) -> IsogredienceClassCount:
    """Orbit count of the twists phi_s phi, computed two independent ways.

    Route one enumerates orbits of s under s -> g s phi(g)^-1 and s -> s c
    with c central.  Route two is the Reidemeister number of the induced
    automorphism on the central quotient.  The two counts must agree.
    """
    if phi.group is not G:
        raise DomainError("automorphism acts on a different group")
    Z = center(G)
    moves = [
        (lambda g: lambda s: G.mul(G.mul(g, s), G.inv(phi(g))))(g) for g in G.generators
    ]
    moves.extend((lambda c: lambda s: G.mul(s, c))(c) for c in Z.elements)
    direct = len(_orbit_blocks(G, moves))
    quotient, phi_bar = induced_automorphism(G, Z, phi)
    via_quotient = reidemeister_number(quotient, phi_bar)
    if direct != via_quotient:
        raise ConsistencyError(
            f"isogredience routes disagree: direct {direct}, quotient {via_quotient}"
        )
    return IsogredienceClassCount(direct, phi)


def telescoping_product_check(G: FiniteGroup, phi: GroupAutomorphism, y, z, m: int) -> bool:
    """Identity behind pushing a twisted product through a conjugating element."""
    if m < 1:
        raise DomainError("telescoping length must be at least 1")
    y = G.ops.canonical(y)
    z = G.ops.canonical(z)
    if y not in G.index or z not in G.index:
        raise DomainError("arguments lie outside the group")

    def product(base):
        acc = base
        current = base
        for _ in range(m - 1):
            current = phi(current)
            acc = G.mul(acc, current)
        return acc

    x = G.mul(G.mul(z, y), G.inv(phi(z)))
    left = product(x)
    phi_m_z = z
    for _ in range(m):
        phi_m_z = phi(phi_m_z)
    right = G.mul(G.mul(z, product(y)), G.inv(phi_m_z))
    return left == right


def group_descriptor(G: FiniteGroup) -> dict:
    gens = [
        [list(row) for row in g] if G.ops.encoding == "matmod" else list(g)
        for g in G.generators
    ]
    out = {"encoding": G.ops.encoding, "generators": gens}
    if G.ops.encoding == "matmod":
        out["modulus"] = G.ops.modulus
    return out


def group_from_descriptor(descriptor: dict, cap: int | None = None) -> FiniteGroup:
    try:
        encoding = descriptor["encoding"]
        generators = descriptor["generators"]
    except KeyError as exc:
        raise DomainError(f"group descriptor missing key {exc}") from exc
    if encoding == "perm":
        return closure([tuple(g) for g in generators], cap=cap)
    if encoding == "matmod":
        if "modulus" not in descriptor:
            raise DomainError("matmod descriptor needs a modulus")
        return closure(
            [tuple(tuple(row) for row in g) for g in generators],
            modulus=descriptor["modulus"],
            cap=cap,
        )
    raise DomainError(f"unknown encoding {encoding!r}")


def automorphism_from_descriptor(G: FiniteGroup, descriptor: dict) -> GroupAutomorphism:
    if "images" not in descriptor:
        raise DomainError("automorphism descriptor missing 'images'")
    images = [
        tuple(tuple(row) for row in im) if G.ops.encoding == "matmod" else tuple(im)
        for im in descriptor["images"]
    ]
    return GroupAutomorphism.from_generator_images(G, images)

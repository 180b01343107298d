"""Irreducible reduced root systems in simple-root coordinates.

Roots are integer coefficient tuples over the simple roots.  The full system
is generated from the Cartan matrix by closing the simple roots under simple
reflections; positive roots are ordered by height and then lexicographically,
and the negative roots mirror that order.  Structure constants for a Chevalley
basis are fixed by the extraspecial-pair convention: for each non-simple
positive root the decomposition with the smallest first summand gets a
positive constant, and every other constant follows from antisymmetry, the
negation symmetry N(-a,-b) = -N(a,b), the three-term rotation identity, and
the four-term Jacobi-type identity on quadruples summing to zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import ConsistencyError, DomainError

Root = tuple[int, ...]

_FAMILIES = {"A", "B", "C", "D", "E", "F", "G"}

# Classical root counts, used as an independent check on the reflection closure.
def _expected_root_count(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1)
    if family in ("B", "C"):
        return 2 * rank * rank
    if family == "D":
        return 2 * rank * (rank - 1)
    if family == "E":
        return {6: 72, 7: 126, 8: 240}[rank]
    if family == "F":
        return 48
    return 12  # G2


def _admissible(family: str, rank: int) -> bool:
    if family == "A":
        return rank >= 1
    if family == "B":
        return rank >= 2
    if family == "C":
        return rank >= 3
    if family == "D":
        return rank >= 4
    if family == "E":
        return rank in (6, 7, 8)
    if family == "F":
        return rank == 4
    if family == "G":
        return rank == 2
    return False


@dataclass(frozen=True)
class RootSystemType:
    """Family letter plus rank, e.g. A2, D4, G2."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _FAMILIES or not _admissible(self.family, self.rank):
            raise DomainError(f"no irreducible root system of type {self.family}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        text = text.strip()
        if len(text) < 2 or text[0].upper() not in _FAMILIES or not text[1:].isdigit():
            raise DomainError(f"cannot parse root system type {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """Cartan matrix with entry [i][j] = <alpha_i, alpha_j^vee>, Bourbaki numbering."""
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def edge(i, j):
        a[i][j] = -1
        a[j][i] = -1

    if family in ("A", "B", "C"):
        for i in range(rank - 1):
            edge(i, i + 1)
        if family == "B" and rank >= 2:
            # alpha_{rank} is short: <alpha_{rank-1}, alpha_rank^vee> = -2
            a[rank - 2][rank - 1] = -2
        if family == "C":
            a[rank - 1][rank - 2] = -2
    elif family == "D":
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 3, rank - 1)
    elif family == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for i, j in zip(chain, chain[1:]):
            edge(i, j)
        edge(1, 3)
    elif family == "F":
        for i in range(3):
            edge(i, i + 1)
        a[1][2] = -2
    else:  # G2
        edge(0, 1)
        a[1][0] = -3
    return a


class RootSystem:
    """An irreducible root system with a fixed root order and bilinear form."""

    def __init__(self, type_: RootSystemType):
        self.type = type_
        self.rank = type_.rank
        self.cartan = tuple(tuple(row) for row in _cartan_matrix(type_.family, type_.rank))
        self._half_lengths = self._solve_half_lengths()
        positives = self._close_under_reflections()
        positives.sort(key=lambda r: (sum(r), r))
        self.positive_roots: tuple[Root, ...] = tuple(positives)
        self.roots: tuple[Root, ...] = self.positive_roots + tuple(
            tuple(-c for c in r) for r in self.positive_roots
        )
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        if len(self.roots) != _expected_root_count(type_.family, type_.rank):
            raise ConsistencyError(
                f"{type_}: closure found {len(self.roots)} roots, "
                f"expected {_expected_root_count(type_.family, type_.rank)}"
            )

    def _solve_half_lengths(self) -> tuple[Fraction, ...]:
        # d_i = (alpha_i, alpha_i)/2, determined up to one global scale by
        # requiring the bilinear form to be symmetric across each diagram edge.
        d = [None] * self.rank
        d[0] = Fraction(1)
        queue = [0]
        while queue:
            i = queue.pop()
            for j in range(self.rank):
                if j != i and self.cartan[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * self.cartan[j][i] / self.cartan[i][j]
                    queue.append(j)
        if any(v is None for v in d):
            raise ConsistencyError("disconnected Dynkin diagram")
        return tuple(d)

    def _close_under_reflections(self) -> list[Root]:
        simple = [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]
        seen = set(simple)
        queue = list(simple)
        while queue:
            beta = queue.pop()
            for j in range(self.rank):
                pairing = sum(beta[i] * self.cartan[i][j] for i in range(self.rank))
                image = list(beta)
                image[j] -= pairing
                image_t = tuple(image)
                if image_t not in seen:
                    seen.add(image_t)
                    queue.append(image_t)
        positives = []
        for r in seen:
            if all(c >= 0 for c in r):
                positives.append(r)
            elif not all(c <= 0 for c in r):
                raise ConsistencyError(f"root {r} has mixed signs")
        return positives

    # -- basic queries ------------------------------------------------------

    def is_root(self, beta) -> bool:
        return tuple(beta) in self.root_index

    def check_root(self, beta) -> Root:
        beta = tuple(beta)
        if beta not in self.root_index:
            raise DomainError(f"{beta} is not a root of {self.type}")
        return beta

    def negate(self, beta: Root) -> Root:
        return tuple(-c for c in beta)

    def add(self, beta: Root, gamma: Root) -> Root:
        return tuple(b + c for b, c in zip(beta, gamma))

    def height(self, beta: Root) -> int:
        return sum(beta)

    def inner(self, beta, gamma) -> Fraction:
        total = Fraction(0)
        for i, b in enumerate(beta):
            if not b:
                continue
            for j, c in enumerate(gamma):
                if c:
                    total += b * c * self.cartan[i][j] * self._half_lengths[j]
        return total

    def squared_length(self, beta) -> Fraction:
        return self.inner(beta, beta)

    def cartan_integer(self, beta, alpha) -> int:
        """<beta, alpha^vee> = 2(beta, alpha)/(alpha, alpha)."""
        beta = self.check_root(beta)
        alpha = self.check_root(alpha)
        value = 2 * self.inner(beta, alpha) / self.squared_length(alpha)
        if value.denominator != 1:
            raise ConsistencyError(f"non-integral Cartan pairing for {beta}, {alpha}")
        return int(value)

    def coroot_coordinates(self, alpha) -> tuple[int, ...]:
        """alpha^vee expanded over the simple coroots; entries are integers."""
        alpha = self.check_root(alpha)
        d_alpha = self.squared_length(alpha) / 2
        coords = []
        for i, m in enumerate(alpha):
            value = m * self._half_lengths[i] / d_alpha
            if value.denominator != 1:
                raise ConsistencyError(f"non-integral coroot coordinate for {alpha}")
            coords.append(int(value))
        return tuple(coords)

    def root_string_down(self, alpha: Root, beta: Root) -> int:
        """Largest p with beta - p*alpha still a root."""
        p = 0
        current = beta
        while True:
            current = tuple(b - a for b, a in zip(current, alpha))
            if current in self.root_index:
                p += 1
            else:
                return p

    @cached_property
    def constants(self) -> "ChevalleyBasisData":
        return ChevalleyBasisData(self)

    def __repr__(self):
        return f"RootSystem({self.type})"


def build_root_system(type_or_text) -> RootSystem:
    """Construct the root system for a type such as ``"B3"`` or a RootSystemType."""
    if isinstance(type_or_text, RootSystem):
        return type_or_text
    if isinstance(type_or_text, RootSystemType):
        return RootSystem(type_or_text)
    return RootSystem(RootSystemType.parse(type_or_text))


def cartan_integer(rs: RootSystem, beta, alpha) -> int:
    return rs.cartan_integer(beta, alpha)


@dataclass(frozen=True)
class DiagramSymmetry:
    """Permutation of simple-root indices preserving the Cartan matrix."""

    permutation: tuple[int, ...]

    @property
    def order(self) -> int:
        n = 1
        current = self.permutation
        identity = tuple(range(len(self.permutation)))
        while current != identity:
            current = tuple(self.permutation[i] for i in current)
            n += 1
        return n

    def __call__(self, index: int) -> int:
        return self.permutation[index]


def diagram_symmetries(rs: RootSystem) -> list[DiagramSymmetry]:
    """All Dynkin diagram symmetries, identity first, in lexicographic order."""
    out = []
    for perm in itertools.permutations(range(rs.rank)):
        if all(
            rs.cartan[perm[i]][perm[j]] == rs.cartan[i][j]
            for i in range(rs.rank)
            for j in range(rs.rank)
        ):
            out.append(DiagramSymmetry(perm))
    return out


def extend_symmetry_to_roots(rs: RootSystem, symmetry: DiagramSymmetry, beta) -> Root:
    """Linear extension of a diagram symmetry; maps roots to roots."""
    beta = rs.check_root(beta)
    image = [0] * rs.rank
    for i, c in enumerate(beta):
        image[symmetry.permutation[i]] = c
    image_t = tuple(image)
    if image_t not in rs.root_index:
        raise ConsistencyError(f"diagram symmetry image {image_t} left the root system")
    return image_t


class ChevalleyBasisData:
    """Structure constants N(a, b) with [e_a, e_b] = N(a, b) e_{a+b}.

    Signs follow the extraspecial-pair convention.  Positive pairs are reduced
    to extraspecial ones through the length-weighted four-term identity, valid
    for a+b+c+d = 0 with no two of them opposite:

        N(a,b)N(c,d)/(a+b,a+b) + N(b,c)N(a,d)/(b+c,b+c)
            + N(c,a)N(b,d)/(c+a,c+a) = 0,

    mixed-sign pairs rotate through the three-term identity

        N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b)       (a+b+c = 0),

    and negative pairs use N(-a,-b) = -N(a,b).  All magnitudes come out as
    p+1 for the root string length p, which the tests verify together with the
    Jacobi identity.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._memo: dict[tuple[Root, Root], Fraction] = {}
        self._extraspecial: dict[Root, tuple[Root, Root]] = {}
        n_pos = len(rs.positive_roots)
        for gamma in rs.positive_roots:
            if sum(gamma) == 1:
                continue
            for alpha in rs.positive_roots:
                beta = tuple(g - a for g, a in zip(gamma, alpha))
                if beta in rs.root_index and rs.root_index[beta] < n_pos:
                    self._extraspecial[gamma] = (alpha, beta)
                    break  # positive roots are scanned in the fixed order
        self.pairs: dict[tuple[Root, Root], int] = {}
        for a in rs.roots:
            for b in rs.roots:
                s = rs.add(a, b)
                if s in rs.root_index:
                    value = self._n(a, b)
                    if value.denominator != 1:
                        raise ConsistencyError(f"non-integral constant at {a}, {b}")
                    self.pairs[(a, b)] = int(value)

    def n(self, a, b) -> int:
        """N(a, b), with 0 when a+b is not a root."""
        return self.pairs.get((tuple(a), tuple(b)), 0)

    def extraspecial_pair(self, gamma) -> tuple[Root, Root]:
        return self._extraspecial[tuple(gamma)]

    # -- internal computation ----------------------------------------------

    def _n(self, a: Root, b: Root) -> Fraction:
        s = self.rs.add(a, b)
        if s not in self.rs.root_index:
            return Fraction(0)
        key = (a, b)
        if key in self._memo:
            return self._memo[key]
        # Guard against re-entry; every recursion below strictly lowers the
        # height of the pair's sum, so a cycle would be a bug.
        value = self._compute(a, b)
        self._memo[key] = value
        return value

    def _compute(self, a: Root, b: Root) -> Fraction:
        rs = self.rs
        idx = rs.root_index
        n_pos = len(rs.positive_roots)
        a_pos = idx[a] < n_pos
        b_pos = idx[b] < n_pos
        if a_pos and b_pos:
            if idx[a] > idx[b]:
                return -self._n(b, a)
            gamma = rs.add(a, b)
            first, second = self._extraspecial[gamma]
            if (a, b) == (first, second):
                return Fraction(rs.root_string_down(a, b) + 1)
            # Four-term identity on (first, second, -a, -b); the ordering
            # argument rules out opposite members, so each length below is
            # taken at a nonzero lattice vector.
            na = rs.negate(a)
            nb = rs.negate(b)
            lead = self._n(first, second)
            term1 = self._n(second, na) * self._n(first, nb) / rs.squared_length(
                rs.add(second, na)
            )
            term2 = self._n(na, first) * self._n(second, nb) / rs.squared_length(
                rs.add(na, first)
            )
            return rs.squared_length(gamma) * (term1 + term2) / lead
        if not a_pos and not b_pos:
            return -self._n(rs.negate(a), rs.negate(b))
        if not a_pos:
            return -self._n(b, a)
        # a positive, b negative; rotate to a pure-sign pair.
        w = rs.add(a, b)
        c = rs.negate(w)
        if idx[w] < n_pos:
            # (b, c) are both negative with b + c = -a.
            return self._n(b, c) * rs.squared_length(w) / rs.squared_length(a)
        return self._n(c, a) * rs.squared_length(w) / rs.squared_length(b)


def structure_constants(rs: RootSystem) -> ChevalleyBasisData:
    return rs.constants

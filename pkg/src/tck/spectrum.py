"""Closed-form Reidemeister counts and spectra for lattice-like families.

For an automorphism of Z^n given by a unimodular matrix M, the twisted
class of y is the coset y + (I - M)Z^n, so the count is the cokernel order
|det(M - I)|, or infinite when that determinant vanishes.  The Smith normal
form is the workhorse: it gives cokernel orders both over Z and over Z/m,
the latter feeding the brute-force cross-checks.

The discrete rank-two nilpotent lattice (upper unitriangular 3x3 integer
matrices) gets the product formula |det(M - I)| * |det M - 1| from its
abelianization/center splitting, validated here by exhaustive enumeration
on the mod-m quotients.  The lamplighter criterion and the two-generator
metabelian case table are carried as closed-form data with membership
predicates; no group element of those families is ever constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import isprime

from .errors import ConsistencyError, DomainError
from .fields import prime_support
from .linalg import int_matrix, mat_det, mat_mul
from .twisted import FiniteGroup, GroupAutomorphism, closure, reidemeister_number


def _validate_integer_matrix(matrix) -> list[list[int]]:
    rows = [list(row) for row in matrix]
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise DomainError("expected a nonempty square matrix")
    for row in rows:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise DomainError(f"entry {x!r} is not an integer")
    return rows


def int_det(matrix) -> int:
    value = mat_det(int_matrix(matrix))
    return int(value)


@dataclass(frozen=True)
class SmithNormalForm:
    diagonal: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def smith_normal_form(matrix) -> SmithNormalForm:
    """Diagonalize an integer matrix as U*M*V = D with unimodular U, V.

    Diagonal entries are nonnegative and each divides the next.  The
    returned transforms are verified before the result is released.
    """
    a = _validate_integer_matrix(matrix)
    n = len(a)
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_sub(i, j, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i, j, q):
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        while True:
            pivot = None
            for i in range(k, n):
                for j in range(k, n):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(k, pivot[0])
            swap_cols(k, pivot[1])
            if a[k][k] < 0:
                a[k] = [-x for x in a[k]]
                u[k] = [-x for x in u[k]]
            dirty = False
            for i in range(k + 1, n):
                q = a[i][k] // a[k][k]
                if q:
                    row_sub(i, k, q)
                if a[i][k]:
                    dirty = True
            for j in range(k + 1, n):
                q = a[k][j] // a[k][k]
                if q:
                    col_sub(j, k, q)
                if a[k][j]:
                    dirty = True
            if dirty:
                continue
            offender = next(
                (
                    i
                    for i in range(k + 1, n)
                    if any(a[i][j] % a[k][k] for j in range(k + 1, n))
                ),
                None,
            )
            if offender is None:
                break
            # Fold the non-divisible row into the pivot row; the next pass
            # shrinks the pivot until it divides everything remaining.
            row_sub(k, offender, -1)

    diagonal = tuple(a[i][i] for i in range(n))
    for i in range(n - 1):
        if diagonal[i + 1] and (diagonal[i] == 0 or diagonal[i + 1] % diagonal[i]):
            raise ConsistencyError(f"divisibility chain broken at {diagonal}")
    if any(a[i][j] for i in range(n) for j in range(n) if i != j):
        raise ConsistencyError("reduction left an off-diagonal entry")
    product = mat_mul(mat_mul(u, _validate_integer_matrix(matrix)), v)
    if any(
        product[i][j] != (diagonal[i] if i == j else 0)
        for i in range(n)
        for j in range(n)
    ):
        raise ConsistencyError("transforms do not reproduce the diagonal")
    if abs(int_det(u)) != 1 or abs(int_det(v)) != 1:
        raise ConsistencyError("transform is not unimodular")
    return SmithNormalForm(
        diagonal,
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in v),
    )


class ExtendedCount:
    """A positive integer or infinity."""

    __slots__ = ("value",)

    def __init__(self, value: int | None):
        if value is not None:
            value = int(value)
            if value < 1:
                raise DomainError(f"count must be positive, got {value}")
        object.__setattr__(self, "value", value)

    def __setattr__(self, *_):
        raise AttributeError("ExtendedCount is immutable")

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __eq__(self, other):
        if isinstance(other, ExtendedCount):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(("ExtendedCount", self.value))

    def __str__(self):
        return "infinity" if self.value is None else str(self.value)

    def __repr__(self):
        return f"ExtendedCount({self})"


INFINITY = ExtendedCount(None)


def _require_unimodular(matrix) -> list[list[int]]:
    rows = _validate_integer_matrix(matrix)
    if abs(int_det(rows)) != 1:
        raise DomainError("matrix is not unimodular")
    return rows


def reidemeister_zn(matrix) -> ExtendedCount:
    """Twisted class count for the Z^n automorphism given by a unimodular matrix."""
    m = _require_unimodular(matrix)
    n = len(m)
    shifted = [[m[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    snf = smith_normal_form(shifted)
    if any(d == 0 for d in snf.diagonal):
        return INFINITY
    count = 1
    for d in snf.diagonal:
        count *= d
    if count != abs(int_det(shifted)):
        raise ConsistencyError("cokernel order disagrees with the determinant")
    return ExtendedCount(count)


def zn_fullness_witness(n: int, m: int) -> list[list[int]]:
    """A unimodular n x n matrix whose twisted class count is exactly m.

    The 2 x 2 core [[0, 1], [-1, 2 - m]] hits m directly.  In higher rank
    the padding blocks are (-1), each worth a factor 2, so even targets
    split as core times padding when the power of two allows; all other
    targets use the companion matrix of x^n + m*x^(n-1) - 1, whose value at
    1 is m.
    """
    if n < 2:
        raise DomainError("rank must be at least 2: rank one admits only 2 and infinity")
    if m < 1:
        raise DomainError("target count must be at least 1")
    if n == 2:
        witness = [[0, 1], [-1, 2 - m]]
    else:
        padding = 2 ** (n - 2)
        if m % padding == 0:
            core = m // padding
            witness = [[0, 1] + [0] * (n - 2), [-1, 2 - core] + [0] * (n - 2)]
            for i in range(n - 2):
                row = [0] * n
                row[2 + i] = -1
                witness.append(row)
        else:
            witness = [[0] * n for _ in range(n)]
            for i in range(1, n):
                witness[i][i - 1] = 1
            witness[0][n - 1] = 1
            witness[n - 1][n - 1] = -m
    achieved = reidemeister_zn(witness)
    if achieved != m:
        raise ConsistencyError(f"witness for {m} computes {achieved}")
    return witness


def cokernel_order_mod(matrix, m: int) -> int:
    """Order of the cokernel of an integer matrix acting on (Z/m)^n."""
    if m < 1:
        raise DomainError("modulus must be positive")
    snf = smith_normal_form(matrix)
    order = 1
    for d in snf.diagonal:
        order *= gcd(d, m)
    return order


def heisenberg_reidemeister(matrix) -> ExtendedCount:
    """Count for the nilpotent lattice automorphism over the 2x2 abelianized map.

    The center transforms by det M, so the two factors are the cokernel
    orders on the abelianization and on the center; a zero in either place
    means infinitely many classes.  Finite values are always even because
    finiteness forces det M = -1.
    """
    m = _require_unimodular(matrix)
    if len(m) != 2:
        raise DomainError("expected a 2x2 matrix")
    abelian = int_det([[m[0][0] - 1, m[0][1]], [m[1][0], m[1][1] - 1]])
    central = int_det(m) - 1
    if abelian == 0 or central == 0:
        return INFINITY
    return ExtendedCount(abs(abelian) * abs(central))


def heisenberg_group(m: int, cap: int | None = None) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z/m, generated by the two slots."""
    if m < 2:
        raise DomainError("modulus must be at least 2")
    x = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    y = ((1, 0, 0), (0, 1, 1), (0, 0, 1))
    group = closure([x, y], modulus=m, cap=cap)
    if len(group) != m**3:
        raise ConsistencyError(f"expected order {m**3}, closure found {len(group)}")
    return group


def heisenberg_automorphism(group: FiniteGroup, matrix) -> GroupAutomorphism:
    """Lift of a unimodular 2x2 matrix through the generator images.

    The first generator maps to x^a y^c, the second to x^b y^d (columns of
    the matrix).  Over even moduli the lift can fail to be a homomorphism;
    that surfaces as a domain error from the image verification.
    """
    m2 = _require_unimodular(matrix)
    if len(m2) != 2:
        raise DomainError("expected a 2x2 matrix")
    (a, b), (c, d) = m2
    x, y = group.generators

    def power(base, k):
        k %= group.ops.modulus
        acc = group.identity
        for _ in range(k):
            acc = group.mul(acc, base)
        return acc

    images = [group.mul(power(x, a), power(y, c)), group.mul(power(x, b), power(y, d))]
    return GroupAutomorphism.from_generator_images(group, images)


def heisenberg_oracle(matrix, m: int) -> int:
    """Brute-force twisted class count on the mod-m unitriangular group."""
    if m < 2:
        raise DomainError("modulus must be at least 2")
    group = heisenberg_group(m)
    phi = heisenberg_automorphism(group, matrix)
    return reidemeister_number(group, phi)


def heisenberg_cokernel_product(matrix, m: int) -> int:
    """The mod-m shadow of the closed-form count: both cokernel factors."""
    rows = _require_unimodular(matrix)
    if len(rows) != 2:
        raise DomainError("expected a 2x2 matrix")
    shifted = [[rows[0][0] - 1, rows[0][1]], [rows[1][0], rows[1][1] - 1]]
    return cokernel_order_mod(shifted, m) * gcd(int_det(rows) - 1, m)


def lamplighter_r_infinity(n: int) -> bool:
    """Whether every automorphism of the order-n lamplighter has infinite count."""
    if n < 2:
        raise DomainError("lamp group order must be at least 2")
    return n % 2 == 0 or n % 3 == 0


def _prime_power_exponent(p: int, w: int) -> int | None:
    """k >= 1 with p^k = w, else None."""
    if w < p:
        return None
    k = 0
    while w % p == 0:
        w //= p
        k += 1
    return k if w == 1 else None


@dataclass(frozen=True)
class SpectrumDescriptor:
    """Symbolic spectrum of a two-parameter metabelian family.

    `case` is one of equal-units, opposite-units, reciprocal-pair, generic;
    membership of any concrete positive integer or infinity is decidable
    through `contains`.  In the opposite-units case the 4*p^l member family
    requires l >= 1; the boundary l = 0 is excluded as the set is written.
    """

    case: str
    prime: int
    set_form: str

    def contains(self, value) -> bool:
        if isinstance(value, ExtendedCount):
            if not value.is_finite:
                return True
            value = value.value
        elif value == "infinity":
            return True
        if not isinstance(value, int) or isinstance(value, bool):
            raise DomainError(f"membership query needs a positive integer, got {value!r}")
        if value < 1:
            raise DomainError("membership query needs a positive integer")
        p = self.prime
        if self.case == "generic":
            return False
        if value % 2:
            return False
        w = value // 2
        if self.case == "equal-units":
            return gcd(w, p) == 1
        if self.case == "opposite-units":
            top = 0
            shrunk = w
            while shrunk % p == 0:
                shrunk //= p
                top += 1
            for ell in range(1, top + 1):
                rest = w // p**ell
                if rest == 2:
                    return True
                if _prime_power_exponent(p, rest + 1) or _prime_power_exponent(p, rest - 1):
                    return True
            return False
        if self.case == "reciprocal-pair":
            if value == 4:
                return True
            if _prime_power_exponent(p, w - 1) or _prime_power_exponent(p, w + 1):
                return True
            return False
        raise ConsistencyError(f"unknown case {self.case!r}")


def _unit_power(p: int, value: Fraction) -> None:
    if not value:
        raise DomainError("diagonal values must be nonzero")
    support = prime_support(value)
    if support - {p}:
        raise DomainError(
            f"{value} is not a unit once {p} is inverted (extra primes {sorted(support - {p})})"
        )


def metabelian_spectrum(r, s, p: int) -> SpectrumDescriptor:
    """Spectrum descriptor for diag(r, s) acting on the rank-two p-local lattice."""
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    r = Fraction(r)
    s = Fraction(s)
    _unit_power(p, r)
    _unit_power(p, s)
    if r == s and abs(r) == 1:
        return SpectrumDescriptor(
            "equal-units",
            p,
            f"{{2n : n >= 1, gcd(n, {p}) = 1}} U {{infinity}}",
        )
    if r == -s and abs(r) == 1:
        return SpectrumDescriptor(
            "opposite-units",
            p,
            f"{{2*{p}^l*({p}^k - 1), 2*{p}^l*({p}^k + 1), 4*{p}^l : k >= 1, l >= 1}}"
            " U {infinity}",
        )
    if r * s == 1 and abs(r) != 1:
        return SpectrumDescriptor(
            "reciprocal-pair",
            p,
            f"{{2*({p}^l - 1), 2*({p}^l + 1) : l >= 1}} U {{4}} U {{infinity}}",
        )
    return SpectrumDescriptor("generic", p, "{infinity}")


def abelian_oracle_count(matrix, m: int) -> int:
    """Brute-force twisted class count of a unimodular matrix acting on (Z/m)^n.

    The group is realized by its translations; the matrix automorphism
    permutes translations through the index mixing.  This is the slow
    independent check against the Smith-form cokernel order.
    """
    rows = _require_unimodular(matrix)
    n = len(rows)
    if m < 2:
        raise DomainError("modulus must be at least 2")
    size = m**n

    def decode(index):
        coords = []
        for _ in range(n):
            coords.append(index % m)
            index //= m
        return coords

    def encode(coords):
        index = 0
        for c in reversed(coords):
            index = index * m + c % m
        return index

    def translation(vector):
        return tuple(
            encode([a + b for a, b in zip(decode(i), vector)]) for i in range(size)
        )

    basis = []
    for k in range(n):
        vector = [0] * n
        vector[k] = 1
        basis.append(translation(vector))
    group = closure(basis)
    if len(group) != size:
        raise ConsistencyError(f"translation closure has order {len(group)}, expected {size}")
    images = [
        translation([rows[i][k] for i in range(n)]) for k in range(n)
    ]
    phi = GroupAutomorphism.from_generator_images(group, images)
    return reidemeister_number(group, phi)

"""Adjoint Chevalley group elements as exact matrices.

The underlying module is the Lie algebra in its Chevalley basis, ordered as
e_beta for beta running over ``rs.roots`` (positives by height then
lexicographically, followed by the mirrored negatives) and then the Cartan
elements h_1, ..., h_l attached to the simple roots.  Every matrix in this
module is written against that basis, so the dimension is always
len(rs.roots) + rs.rank.

Generators:

    x_alpha(t)   exp(t ad e_alpha); the series terminates because ad e_alpha
                 is nilpotent.
    n_alpha(t)   x_alpha(t) x_{-alpha}(-1/t) x_alpha(t); monomial, realizes
                 the reflection in alpha on root spaces.
    h_alpha(t)   n_alpha(t) n_alpha(-1); diagonal with entry t^<beta, alpha^v>
                 at e_beta and 1 on the Cartan block.

Automorphisms come in four families (inner, diagonal, field, graph) and a
composite applies them in the fixed order inner, diagonal, field, graph.
A diagram symmetry is realized as conjugation by a signed permutation matrix;
the signs are forced by the structure constants and are recorded per root,
since the naive unsigned permutation need not respect the brackets.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import isprime

from .errors import ConsistencyError, DomainError
from .fields import Polynomial, RationalFunction, ScalingAutomorphism, apply_scaling
from .linalg import (
    Matrix,
    identity_matrix,
    is_diagonal,
    mat_eq,
    mat_inv,
    mat_mul,
    mat_product,
    mat_scale,
)
from .roots import DiagramSymmetry, RootSystem, extend_symmetry_to_roots


def adjoint_dimension(rs: RootSystem) -> int:
    return len(rs.roots) + rs.rank


def _coerce_scalar(t):
    if isinstance(t, int):
        return Fraction(t)
    if isinstance(t, Polynomial):
        return RationalFunction.from_polynomial(t)
    if isinstance(t, (Fraction, RationalFunction)):
        return t
    raise DomainError(f"unsupported scalar {t!r}")


def _scalar_inverse(t):
    if isinstance(t, RationalFunction):
        return t.reciprocal()
    return 1 / t


def bracket_coordinates(rs: RootSystem, i: int, j: int) -> dict[int, Fraction]:
    """Bracket of basis elements i and j as a sparse coordinate vector."""
    m = len(rs.roots)
    if i >= m and j >= m:
        return {}
    if i >= m:
        sign, i, j = -1, j, i
    else:
        sign = 1
    if j >= m:
        # [e_alpha, h_t] = -<alpha, alpha_t^v> e_alpha, flipped by `sign`
        # when the Cartan element came first.
        t = j - m
        alpha = rs.roots[i]
        c = sum(alpha[s] * rs.cartan[s][t] for s in range(rs.rank))
        return {i: Fraction(-sign * c)} if c else {}
    alpha, beta = rs.roots[i], rs.roots[j]
    if beta == rs.negate(alpha):
        coords = rs.coroot_coordinates(alpha)
        return {m + k: Fraction(c) for k, c in enumerate(coords) if c}
    total = rs.add(alpha, beta)
    if rs.is_root(total):
        return {rs.root_index[total]: Fraction(rs.constants.n(alpha, beta))}
    return {}


@lru_cache(maxsize=None)
def ad_matrix(rs: RootSystem, alpha) -> Matrix:
    """Matrix of ad e_alpha on the adjoint basis."""
    alpha = rs.check_root(alpha)
    dim = adjoint_dimension(rs)
    out = [[Fraction(0)] * dim for _ in range(dim)]
    i = rs.root_index[alpha]
    for j in range(dim):
        for k, c in bracket_coordinates(rs, i, j).items():
            out[k][j] = c
    return out


@lru_cache(maxsize=None)
def _exp_terms(rs: RootSystem, alpha) -> tuple:
    """Nonzero terms (ad e_alpha)^k / k! of the terminating exponential."""
    n = ad_matrix(rs, alpha)
    terms = []
    power = n
    k = 1
    while any(x for row in power for x in row):
        terms.append(power)
        k += 1
        power = mat_scale(mat_mul(power, n), Fraction(1, k))
    return tuple(terms)


@lru_cache(maxsize=None)
def _exp_entries(rs: RootSystem, alpha) -> tuple:
    """Sparse view of the exponential terms: (i, j, c, k) adds c*t^k at (i, j)."""
    out = []
    for k, term in enumerate(_exp_terms(rs, alpha), start=1):
        for i, row in enumerate(term):
            for j, c in enumerate(row):
                if c:
                    out.append((i, j, c, k))
    return tuple(out)


def x_alpha(rs: RootSystem, alpha, t) -> Matrix:
    alpha = rs.check_root(alpha)
    t = _coerce_scalar(t)
    result = identity_matrix(adjoint_dimension(rs))
    if not t:
        return result
    powers = {}
    for i, j, c, k in _exp_entries(rs, alpha):
        if k not in powers:
            powers[k] = t ** k
        result[i][j] = result[i][j] + c * powers[k]
    return result


def n_alpha(rs: RootSystem, alpha, t) -> Matrix:
    alpha = rs.check_root(alpha)
    t = _coerce_scalar(t)
    if not t:
        raise DomainError("n_alpha requires t != 0")
    neg = rs.negate(alpha)
    return mat_product(
        [x_alpha(rs, alpha, t), x_alpha(rs, neg, -_scalar_inverse(t)), x_alpha(rs, alpha, t)]
    )


def h_alpha(rs: RootSystem, alpha, t) -> Matrix:
    alpha = rs.check_root(alpha)
    t = _coerce_scalar(t)
    if not t:
        raise DomainError("h_alpha requires t != 0")
    return mat_mul(n_alpha(rs, alpha, t), n_alpha(rs, alpha, Fraction(-1)))


class GraphMatrixRealization:
    """A diagram symmetry as a signed basis permutation of the adjoint module.

    Simple roots carry sign +1; the sign of a composite root is forced by
    requiring the permutation to respect the bracket at its extraspecial
    decomposition, and opposite roots share a sign.  Construction verifies
    bracket compatibility on every basis pair, so conjugation by ``matrix``
    is an algebra (hence group) automorphism.
    """

    def __init__(self, rs: RootSystem, symmetry: DiagramSymmetry):
        if len(symmetry.permutation) != rs.rank:
            raise DomainError("symmetry rank does not match the root system")
        self.rs = rs
        self.symmetry = symmetry
        data = rs.constants
        signs: dict = {}
        for beta in rs.positive_roots:
            if sum(beta) == 1:
                signs[beta] = 1
                continue
            a, b = data.extraspecial_pair(beta)
            ra = extend_symmetry_to_roots(rs, symmetry, a)
            rb = extend_symmetry_to_roots(rs, symmetry, b)
            ratio = Fraction(data.n(ra, rb), data.n(a, b))
            if ratio != 1 and ratio != -1:
                raise ConsistencyError(f"sign ratio {ratio} at {beta} is not a unit")
            signs[beta] = signs[a] * signs[b] * int(ratio)
        for beta in rs.positive_roots:
            signs[rs.negate(beta)] = signs[beta]
        self.signs = signs

        m = len(rs.roots)
        dim = adjoint_dimension(rs)
        matrix = [[Fraction(0)] * dim for _ in range(dim)]
        for i, beta in enumerate(rs.roots):
            image = extend_symmetry_to_roots(rs, symmetry, beta)
            matrix[rs.root_index[image]][i] = Fraction(signs[beta])
        for t in range(rs.rank):
            matrix[m + symmetry(t)][m + t] = Fraction(1)
        self.matrix = matrix
        self.inverse = [list(col) for col in zip(*matrix)]
        self._verify()

    def _basis_image(self, i: int) -> tuple[int, int]:
        rs = self.rs
        m = len(rs.roots)
        if i < m:
            beta = rs.roots[i]
            image = extend_symmetry_to_roots(rs, self.symmetry, beta)
            return rs.root_index[image], self.signs[beta]
        return m + self.symmetry(i - m), 1

    def _verify(self):
        rs = self.rs
        dim = adjoint_dimension(rs)
        images = [self._basis_image(i) for i in range(dim)]
        for i in range(dim):
            pi, si = images[i]
            for j in range(i + 1, dim):
                pj, sj = images[j]
                pushed = {}
                for k, c in bracket_coordinates(rs, i, j).items():
                    pk, sk = images[k]
                    pushed[pk] = c * sk
                direct = {
                    k: c * si * sj for k, c in bracket_coordinates(rs, pi, pj).items()
                }
                if pushed != direct:
                    raise ConsistencyError(
                        f"sign table breaks the bracket at basis pair ({i}, {j})"
                    )

    def apply(self, x: Matrix) -> Matrix:
        return mat_product([self.matrix, x, self.inverse])


@lru_cache(maxsize=None)
def graph_automorphism_matrix(rs: RootSystem, symmetry: DiagramSymmetry) -> GraphMatrixRealization:
    return GraphMatrixRealization(rs, symmetry)


def _validate_torus_matrix(rs: RootSystem, h: Matrix):
    dim = adjoint_dimension(rs)
    if len(h) != dim or len(h[0]) != dim:
        raise DomainError("diagonal part has the wrong dimension")
    if not is_diagonal(h):
        raise DomainError("diagonal part is not diagonal")
    m = len(rs.roots)
    entries = [h[i][i] for i in range(dim)]
    if any(not e for e in entries):
        raise DomainError("diagonal part is singular")
    for k in range(m, dim):
        if entries[k] != 1:
            raise DomainError("diagonal part must fix the Cartan block")
    # Root entries must form a character: multiplicative on root sums and
    # inverse on opposite roots.
    for i, beta in enumerate(rs.roots):
        j = rs.root_index[rs.negate(beta)]
        if entries[i] * entries[j] != 1:
            raise DomainError(f"diagonal entries at {beta} and its negative do not cancel")
    for i, beta in enumerate(rs.roots):
        for j, gamma in enumerate(rs.roots):
            total = rs.add(beta, gamma)
            if rs.is_root(total):
                if entries[i] * entries[j] != entries[rs.root_index[total]]:
                    raise DomainError(
                        f"diagonal entries are not multiplicative at {beta} + {gamma}"
                    )


class ChevalleyAutomorphism:
    """Composite automorphism: inner, then diagonal, then field, then graph.

    Any of the four parts may be omitted.  The diagonal part must be a
    character-consistent torus matrix; the field part acts entrywise and
    fixes rational constants; the graph part conjugates by the signed
    permutation realization of a diagram symmetry.
    """

    def __init__(self, rs: RootSystem, inner: Matrix | None = None,
                 diagonal: Matrix | None = None,
                 graph: DiagramSymmetry | None = None,
                 field: ScalingAutomorphism | None = None):
        self.rs = rs
        dim = adjoint_dimension(rs)
        if inner is not None:
            if len(inner) != dim or len(inner[0]) != dim:
                raise DomainError("inner part has the wrong dimension")
            self._inner_inverse = mat_inv(inner)
        else:
            self._inner_inverse = None
        self.inner = inner
        if diagonal is not None:
            _validate_torus_matrix(rs, diagonal)
            self._diagonal_inverse = mat_inv(diagonal)
        else:
            self._diagonal_inverse = None
        self.diagonal = diagonal
        self.graph = graph
        self._graph_realization = (
            graph_automorphism_matrix(rs, graph) if graph is not None else None
        )
        self.field = field

    def _apply_field(self, x: Matrix) -> Matrix:
        delta = self.field
        out = []
        for i, row in enumerate(x):
            new_row = []
            for j, entry in enumerate(row):
                if isinstance(entry, Fraction):
                    new_row.append(entry)
                    continue
                if isinstance(entry, Polynomial):
                    entry = RationalFunction.from_polynomial(entry)
                if not isinstance(entry, RationalFunction):
                    raise DomainError(f"entry ({i}, {j}) is not a field element")
                if entry.nvars != delta.variable_count:
                    raise DomainError(
                        f"entry ({i}, {j}) lives over {entry.nvars} variables, "
                        f"the field automorphism over {delta.variable_count}"
                    )
                new_row.append(apply_scaling(delta, entry))
            out.append(new_row)
        return out

    def apply(self, x: Matrix) -> Matrix:
        dim = adjoint_dimension(self.rs)
        if len(x) != dim or len(x[0]) != dim:
            raise DomainError("matrix dimension does not match the root system")
        if self.inner is not None:
            x = mat_product([self.inner, x, self._inner_inverse])
        if self.diagonal is not None:
            x = mat_product([self.diagonal, x, self._diagonal_inverse])
        if self.field is not None:
            x = self._apply_field(x)
        if self._graph_realization is not None:
            x = self._graph_realization.apply(x)
        return x

    def __call__(self, x: Matrix) -> Matrix:
        return self.apply(x)


def apply_automorphism(phi: ChevalleyAutomorphism, x: Matrix) -> Matrix:
    return phi.apply(x)


def _string_product(rs: RootSystem, base, step, count) -> Fraction:
    """(1/count!) N(step, base) N(step, step+base) ... over `count` brackets."""
    data = rs.constants
    value = Fraction(1)
    current = base
    for _ in range(count):
        value *= data.n(step, current)
        current = rs.add(step, current)
    for k in range(2, count + 1):
        value /= k
    return value


def commutator_factors(rs: RootSystem, alpha, beta) -> list[tuple]:
    """Factors (gamma, i, j, constant) of the closed commutator form.

    The commutator x_beta(u)^-1 x_alpha(t)^-1 x_beta(u) x_alpha(t) equals the
    product of x_{i alpha + j beta}(constant * (-t)^i * u^j) over the returned
    factors, taken in order.
    """
    alpha = rs.check_root(alpha)
    beta = rs.check_root(beta)
    if beta == alpha or beta == rs.negate(alpha):
        raise DomainError("commutator form requires beta != +-alpha")
    factors = []
    pairs = sorted(
        ((i, j) for i in range(1, 4) for j in range(1, 4)),
        key=lambda p: (p[0] + p[1], p[0]),
    )
    for i, j in pairs:
        gamma = tuple(i * a + j * b for a, b in zip(alpha, beta))
        if not rs.is_root(gamma):
            continue
        if j == 1:
            c = _string_product(rs, beta, alpha, i)
        elif i == 1:
            c = Fraction(-1) ** j * _string_product(rs, alpha, beta, j)
        elif (i, j) == (3, 2):
            c = Fraction(1, 3) * _string_product(rs, alpha, rs.add(alpha, beta), 2)
        elif (i, j) == (2, 3):
            c = Fraction(-2, 3) * _string_product(rs, beta, rs.add(beta, alpha), 2)
        else:
            raise ConsistencyError(f"unexpected root string pair ({i}, {j})")
        if c.denominator != 1:
            raise ConsistencyError(f"commutator constant {c} at ({i}, {j}) is not integral")
        factors.append((gamma, i, j, c))
    return factors


def commutator_relation_check(rs: RootSystem, alpha, beta, t, u) -> bool:
    """Whether the group commutator matches its structure-constant expansion."""
    alpha = rs.check_root(alpha)
    beta = rs.check_root(beta)
    t = _coerce_scalar(t)
    u = _coerce_scalar(u)
    factors = commutator_factors(rs, alpha, beta)
    left = mat_product(
        [
            x_alpha(rs, beta, -u),
            x_alpha(rs, alpha, -t),
            x_alpha(rs, beta, u),
            x_alpha(rs, alpha, t),
        ]
    )
    right = identity_matrix(adjoint_dimension(rs))
    for gamma, i, j, c in factors:
        right = mat_mul(right, x_alpha(rs, gamma, c * (-t) ** i * u**j))
    return mat_eq(left, right)


def reduce_mod_p(x: Matrix, p: int) -> list[list[int]]:
    """Entrywise reduction of a rational matrix modulo a prime."""
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    out = []
    for i, row in enumerate(x):
        new_row = []
        for j, entry in enumerate(row):
            if isinstance(entry, int):
                entry = Fraction(entry)
            if not isinstance(entry, Fraction):
                raise DomainError(f"entry ({i}, {j}) is not rational")
            if entry.denominator % p == 0:
                raise DomainError(f"entry ({i}, {j}) = {entry} has denominator divisible by {p}")
            new_row.append(entry.numerator * pow(entry.denominator, -1, p) % p)
        out.append(new_row)
    return out

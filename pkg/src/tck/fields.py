"""Exact arithmetic over Q and over rational function fields Q(T1,...,Tk).

Rationals are stdlib Fraction values throughout.  Polynomials are sparse maps
from exponent tuples to Fraction coefficients, rational functions are
normalized quotients of those, and scaling automorphisms act by T_i -> c_i T_i
with nonzero rational c_i.  The prime support map sends a nonzero rational to
the set of primes dividing its reduced numerator or denominator; families of
rationals with pairwise disjoint supports are multiplicatively independent,
which is what the eigenvector counting bound below exploits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from .errors import ConsistencyError, DomainError

Exponent = tuple[int, ...]


def prime_support(x) -> frozenset[int]:
    """Primes dividing the reduced numerator or denominator of x != 0."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("prime support is undefined at 0")
    primes = set(factorint(abs(x.numerator))) | set(factorint(x.denominator))
    return frozenset(primes)


def supports_pairwise_disjoint(values) -> bool:
    """True when the prime supports of the given nonzero rationals are pairwise disjoint."""
    seen: set[int] = set()
    for v in values:
        support = prime_support(v)
        if seen & support:
            return False
        seen |= support
    return True


def _grlex_key(exps: Exponent):
    return (sum(exps), exps)


class Polynomial:
    """Sparse multivariate polynomial over Q.

    ``terms`` maps exponent tuples (one entry per variable, entries >= 0) to
    nonzero Fraction coefficients; the zero polynomial has an empty map.
    Where an order on terms matters it is graded lexicographic.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Exponent, Fraction]):
        self.nvars = nvars
        self.terms = terms

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        value = Fraction(value)
        if value == 0:
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise DomainError(f"variable index {index} out of range for {nvars} variables")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps, coefficient=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != nvars or any(e < 0 for e in exps):
            raise DomainError(f"bad exponent tuple {exps} for {nvars} variables")
        coefficient = Fraction(coefficient)
        if coefficient == 0:
            return cls.zero(nvars)
        return cls(nvars, {exps: coefficient})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DomainError("polynomials over different variable counts")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, Fraction(0)) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return Polynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Polynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power; use a RationalFunction")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.nvars)
        return Polynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """Graded-lex leading term of a nonzero polynomial."""
        if self.is_zero:
            raise DomainError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(f"T{i + 1}^{e}" for i, e in enumerate(exps) if e)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def serialize_polynomial(p: Polynomial) -> list[str]:
    """Sparse term list, each term rendered as ``coef:[e1,e2,...]``."""
    out = []
    for exps, c in p.sorted_terms():
        out.append(f"{c}:[{','.join(str(e) for e in exps)}]")
    return out


def parse_polynomial(nvars: int, terms: list[str]) -> Polynomial:
    result = Polynomial.zero(nvars)
    for item in terms:
        coef_text, _, exp_text = item.partition(":")
        exp_text = exp_text.strip()
        if not (exp_text.startswith("[") and exp_text.endswith("]")):
            raise DomainError(f"malformed polynomial term {item!r}")
        body = exp_text[1:-1].strip()
        exps = tuple(int(e) for e in body.split(",")) if body else ()
        result = result + Polynomial.monomial(nvars, exps, Fraction(coef_text))
    return result


def _proportionality(p: Polynomial, q: Polynomial) -> Fraction | None:
    """Return c with p == c*q for nonzero p, q, or None."""
    if p.terms.keys() != q.terms.keys():
        return None
    ratio = None
    for exps, c in p.terms.items():
        r = c / q.terms[exps]
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    return ratio


class RationalFunction:
    """Quotient of two polynomials over the same variables.

    Normalization divides numerator and denominator by the denominator's
    graded-lex leading coefficient and cancels any common monomial factor.
    Representations are not forced into lowest terms; equality is decided by
    cross-multiplication, which is exact and avoids multivariate gcds.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if num.nvars != den.nvars:
            raise DomainError("numerator and denominator over different variable counts")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            self.num = num
            self.den = Polynomial.constant(den.nvars, 1)
            return
        nvars = num.nvars
        shift = [
            min(
                min(e[i] for e in num.terms),
                min(e[i] for e in den.terms),
            )
            for i in range(nvars)
        ]
        if any(shift):
            def unshift(p):
                return Polynomial(
                    nvars,
                    {tuple(e[i] - shift[i] for i in range(nvars)): c for e, c in p.terms.items()},
                )

            num = unshift(num)
            den = unshift(den)
        _, lead = den.leading_term()
        inv = 1 / lead
        self.num = num.scale(inv)
        self.den = den.scale(inv)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "RationalFunction":
        return cls(p, Polynomial.constant(p.nvars, 1))

    @classmethod
    def constant(cls, nvars: int, value) -> "RationalFunction":
        return cls.from_polynomial(Polynomial.constant(nvars, value))

    @classmethod
    def variable(cls, nvars: int, index: int) -> "RationalFunction":
        return cls.from_polynomial(Polynomial.variable(nvars, index))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self):
        return not self.is_zero

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise DomainError("rational functions over different variable counts")
            return other
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DomainError("rational functions over different variable counts")
            return RationalFunction.from_polynomial(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalFunction":
        if self.is_zero:
            raise ZeroDivisionError("reciprocal of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.reciprocal()

    def __pow__(self, n: int):
        if n < 0:
            return self.reciprocal() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # Hashing would need a canonical form; equality classes are enough here.
        raise TypeError("RationalFunction is not hashable")

    def __repr__(self):
        if self.den == Polynomial.constant(self.nvars, 1):
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


@dataclass(frozen=True)
class ScalingAutomorphism:
    """Field automorphism of Q(T1,...,Tk) sending T_i to scalars[i]*T_i."""

    scalars: tuple[Fraction, ...]

    def __post_init__(self):
        coerced = tuple(Fraction(c) for c in self.scalars)
        if any(c == 0 for c in coerced):
            raise DomainError("scaling automorphism needs nonzero scalars")
        object.__setattr__(self, "scalars", coerced)

    @property
    def variable_count(self) -> int:
        return len(self.scalars)

    def character(self, exps) -> Fraction:
        """Multiplier picked up by the monomial with the given exponents."""
        out = Fraction(1)
        for c, e in zip(self.scalars, exps):
            out *= c ** e
        return out

    def compose(self, other: "ScalingAutomorphism") -> "ScalingAutomorphism":
        if other.variable_count != self.variable_count:
            raise DomainError("scaling automorphisms over different variable counts")
        return ScalingAutomorphism(tuple(a * b for a, b in zip(self.scalars, other.scalars)))

    def inverse(self) -> "ScalingAutomorphism":
        return ScalingAutomorphism(tuple(1 / c for c in self.scalars))

    def __pow__(self, n: int) -> "ScalingAutomorphism":
        return ScalingAutomorphism(tuple(c ** n for c in self.scalars))

    @classmethod
    def identity(cls, nvars: int) -> "ScalingAutomorphism":
        return cls((Fraction(1),) * nvars)


def _scale_polynomial(delta: ScalingAutomorphism, p: Polynomial) -> Polynomial:
    if p.nvars != delta.variable_count:
        raise DomainError("polynomial and scaling automorphism disagree on variable count")
    return Polynomial(p.nvars, {e: c * delta.character(e) for e, c in p.terms.items()})


def apply_scaling(delta: ScalingAutomorphism, f: RationalFunction) -> RationalFunction:
    """Image of f under T_i -> c_i T_i."""
    if isinstance(f, Polynomial):
        return _scale_polynomial(delta, f)
    if not isinstance(f, RationalFunction):
        raise DomainError("apply_scaling expects a RationalFunction or Polynomial")
    return RationalFunction(_scale_polynomial(delta, f.num), _scale_polynomial(delta, f.den))


def eigencharacter(delta: ScalingAutomorphism, f: RationalFunction) -> Fraction | None:
    """The rational lambda with delta(f) = lambda*f, or None when f is no eigenvector.

    Decided by cross-multiplication, so f need not be stored in lowest terms.
    """
    if isinstance(f, (int, Fraction)):
        if Fraction(f) == 0:
            raise DomainError("eigencharacter is undefined at 0")
        return Fraction(1)
    if f.nvars != delta.variable_count:
        raise DomainError("rational function and scaling automorphism disagree on variable count")
    if f.is_zero:
        raise DomainError("eigencharacter is undefined at 0")
    left = _scale_polynomial(delta, f.num) * f.den
    right = f.num * _scale_polynomial(delta, f.den)
    return _proportionality(left, right)


def disjoint_eigenfamily_count(delta: ScalingAutomorphism, alpha, pairs) -> int:
    """Count nonzero members of an eigenvector family with disjoint-support multipliers.

    Each pair (a_i, z_i) must satisfy a_i != 1, the supports of the a_i must be
    pairwise disjoint, and every nonzero z_i must be a delta-eigenvector with
    eigencharacter alpha*a_i.  Multiplicative independence of the a_i then
    caps the nonzero count at k+1, the transcendence degree of the function
    field plus one; exceeding the cap would contradict that independence, so
    it is reported as an internal inconsistency rather than a domain error.
    """
    alpha = Fraction(alpha)
    if alpha == 0:
        raise DomainError("common factor alpha must be nonzero")
    k = delta.variable_count
    multipliers = []
    count = 0
    for position, (a, z) in enumerate(pairs):
        a = Fraction(a)
        if a == 1:
            raise DomainError(f"pair {position}: multiplier 1 is not allowed")
        multipliers.append(a)
        if isinstance(z, RationalFunction) and z.is_zero:
            continue
        if isinstance(z, (int, Fraction)) and Fraction(z) == 0:
            continue
        observed = eigencharacter(delta, z)
        if observed != alpha * a:
            raise DomainError(
                f"pair {position}: eigencharacter {observed} does not match required {alpha * a}"
            )
        count += 1
    if not supports_pairwise_disjoint(multipliers):
        raise DomainError("multiplier supports are not pairwise disjoint")
    if count > k + 1:
        raise ConsistencyError(f"{count} nonzero members exceed the bound {k + 1}")
    return count


def character_lattice_member(lam, generators) -> bool:
    """Is lam a product of integer powers of the given nonzero rationals?

    Works on prime exponent vectors: membership in the subgroup of Q* generated
    by the generators reduces to an integer linear system, solved through the
    Smith normal form of the exponent matrix.  Only positive generators arise
    here (even powers), so a negative lam is never a member.
    """
    from .spectrum import smith_normal_form  # local import: spectrum depends on fields

    lam = Fraction(lam)
    if lam == 0:
        raise DomainError("0 is not a unit")
    gens = [Fraction(g) for g in generators]
    if any(g <= 0 for g in gens):
        raise DomainError("character lattice generators must be positive")
    if lam < 0:
        return False
    if lam == 1:
        return True
    primes = sorted(set().union(prime_support(lam), *(prime_support(g) for g in gens if g != 1)))

    def exponent_vector(x):
        vec = []
        for p in primes:
            e = 0
            num, den = x.numerator, x.denominator
            while num % p == 0:
                num //= p
                e += 1
            while den % p == 0:
                den //= p
                e -= 1
            vec.append(e)
        return vec

    target = exponent_vector(lam)
    rows = [exponent_vector(g) for g in gens if g != 1]
    if not rows:
        return False
    # Pad to a square system; zero rows and columns do not change solvability
    # of x*A = v over Z.
    size = max(len(rows), len(primes))
    matrix = [row + [0] * (size - len(primes)) for row in rows]
    matrix += [[0] * size for _ in range(size - len(rows))]
    target = target + [0] * (size - len(primes))
    decomp = smith_normal_form(matrix)
    # x*A = v is solvable over Z iff w = v*V clears the diagonal divisibility.
    w = [sum(target[i] * decomp.right[i][j] for i in range(size)) for j in range(size)]
    for j in range(size):
        d = decomp.diagonal[j]
        if d == 0:
            if w[j] != 0:
                return False
        elif w[j] % d != 0:
            return False
    return True

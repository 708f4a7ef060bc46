import json
import logging
import math
import numbers
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from sympy import Matrix
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import multiset_permutations

from config import Config
from .exactlinalg import SymMatrix
from .partitions import Partition, conjugate, generate_partitions

logger = logging.getLogger(__name__)


class Basis(str, Enum):
    """Bases of the degree-d symmetric functions"""

    MONOMIAL = "m"
    MTILDE = "mtilde"
    SCHUR = "s"
    NSCHUR = "ns"


def to_rational(value):
    """
    Coerce an integer, Fraction or "p/q" string to a Fraction

    Floats are refused: every boundary of the Lorentzian regions is closed and
    must be decided exactly.
    """
    if isinstance(value, bool):
        raise ValueError(f"booleans are not coefficients ({value!r})")
    if isinstance(value, float):
        raise ValueError(f"floats are not exact rationals ({value!r}); pass \"p/q\" strings")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"malformed rational '{value}'") from e
    raise ValueError(f"unsupported coefficient type {type(value).__name__}")


def format_rational(value):
    return str(Fraction(value))


def factorial_of(vector):
    """α! = product of the factorials of the entries."""
    return math.prod(math.factorial(v) for v in vector)


def _as_partition(key):
    if isinstance(key, Partition):
        return key
    if isinstance(key, str):
        return Partition.parse(key)
    return Partition(key)


@dataclass(frozen=True)
class SymPoly:
    """
    Homogeneous symmetric function of degree d in one of the four bases

    Attributes:
        degree: Degree d
        basis: Basis tag
        coeffs: Partition of d -> Fraction; zero coefficients are dropped
    """

    degree: int
    basis: Basis
    coeffs: Mapping

    def __post_init__(self):
        if isinstance(self.degree, bool) or not isinstance(self.degree, numbers.Integral) or self.degree < 0:
            raise ValueError(f"degree must be a non-negative integer, got {self.degree!r}")
        try:
            basis = Basis(self.basis)
        except ValueError as e:
            raise ValueError(f"unknown basis '{self.basis}' (expected m, mtilde, s or ns)") from e

        cleaned = {}
        for key, value in dict(self.coeffs).items():
            lam = _as_partition(key)
            if lam.weight != self.degree:
                raise ValueError(
                    f"partition {lam} has weight {lam.weight} but the degree is {self.degree}"
                )
            q = to_rational(value)
            if q:
                cleaned[lam] = q

        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(
            self, "coeffs", MappingProxyType(dict(sorted(cleaned.items(), reverse=True)))
        )

    @classmethod
    def from_values(cls, degree, basis, values):
        """
        Build from coefficients listed in generation order of the partitions of d

        Args:
            degree: Degree d
            basis: Basis tag
            values: One coefficient per partition of d, largest partition first
        """
        keys = generate_partitions(degree)
        values = list(values)
        if len(values) != len(keys):
            raise ValueError(
                f"degree {degree} has {len(keys)} partitions, got {len(values)} coefficients"
            )
        return cls(degree, basis, dict(zip(keys, values)))

    def coefficient(self, lam):
        return self.coeffs.get(Partition(lam), Fraction(0))

    def values(self):
        """Coefficients in generation order, zeros included."""
        return [self.coefficient(lam) for lam in generate_partitions(self.degree)]

    def support(self):
        return list(self.coeffs)

    @property
    def is_zero(self):
        return not self.coeffs

    def scaled(self, factor):
        q = to_rational(factor)
        return SymPoly(self.degree, self.basis, {lam: q * c for lam, c in self.coeffs.items()})

    def _combine(self, other, sign):
        if not isinstance(other, SymPoly):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError(f"cannot add degree {self.degree} and degree {other.degree}")
        if other.basis != self.basis:
            other = convert_basis(other, self.basis)
        merged = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            merged[lam] = merged.get(lam, Fraction(0)) + sign * c
        return SymPoly(self.degree, self.basis, merged)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def to_dict(self):
        return {
            "degree": self.degree,
            "basis": self.basis.value,
            "coeffs": {str(lam): format_rational(c) for lam, c in self.coeffs.items()},
        }

    @classmethod
    def from_dict(cls, data, default_basis=None):
        """
        Build from the JSON document form

        Args:
            data: {"degree": d, "basis": ..., "coeffs": {"[2,1]": "5/3", ...}}
            default_basis: Basis used when the document has no "basis" key
        """
        if not isinstance(data, dict):
            raise ValueError("symmetric function document must be a JSON object")
        missing = [key for key in ("degree", "coeffs") if key not in data]
        if missing:
            raise ValueError(f"symmetric function document is missing {missing}")
        basis = data.get("basis", default_basis)
        if basis is None:
            raise ValueError("symmetric function document has no basis and none was given")
        if not isinstance(data["coeffs"], dict):
            raise ValueError("'coeffs' must map serialized partitions to rationals")
        return cls(data["degree"], basis, data["coeffs"])

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text, default_basis=None):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"malformed JSON: {e}") from e
        return cls.from_dict(data, default_basis)


@dataclass(frozen=True)
class DensePoly:
    """
    Explicit homogeneous polynomial in n variables

    Attributes:
        nvars: Number of variables n
        degree: Total degree d of every term
        terms: Exponent vector (tuple of length n) -> Fraction; zeros dropped
    """

    nvars: int
    degree: int
    terms: Mapping

    def __post_init__(self):
        cleaned = {}
        for key, value in dict(self.terms).items():
            alpha = tuple(int(v) for v in key)
            if len(alpha) != self.nvars:
                raise ValueError(f"exponent vector {alpha} does not have {self.nvars} entries")
            if any(v < 0 for v in alpha):
                raise ValueError(f"exponent vector {alpha} has a negative entry")
            if sum(alpha) != self.degree:
                raise ValueError(
                    f"inhomogeneous polynomial: term {alpha} has degree {sum(alpha)}, expected {self.degree}"
                )
            q = to_rational(value)
            if q:
                cleaned[alpha] = cleaned.get(alpha, Fraction(0)) + q
        cleaned = {alpha: c for alpha, c in cleaned.items() if c}
        object.__setattr__(
            self, "terms", MappingProxyType(dict(sorted(cleaned.items(), reverse=True)))
        )

    @classmethod
    def linear_form(cls, nvars, weights):
        """Σ w_i x_i for a mapping variable index (0-based) -> weight."""
        terms = {}
        for i, w in dict(weights).items():
            alpha = [0] * nvars
            alpha[i] = 1
            terms[tuple(alpha)] = w
        return cls(nvars, 1, terms)

    @classmethod
    def constant(cls, nvars, value=1):
        return cls(nvars, 0, {(0,) * nvars: value})

    def coefficient(self, alpha):
        return self.terms.get(tuple(alpha), Fraction(0))

    def support(self):
        return list(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def scaled(self, factor):
        q = to_rational(factor)
        return DensePoly(self.nvars, self.degree, {a: q * c for a, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        if (other.nvars, other.degree) != (self.nvars, self.degree):
            raise ValueError(
                f"cannot add a degree-{other.degree} polynomial in {other.nvars} variables "
                f"to a degree-{self.degree} polynomial in {self.nvars} variables"
            )
        merged = dict(self.terms)
        for alpha, c in other.terms.items():
            merged[alpha] = merged.get(alpha, Fraction(0)) + c
        return DensePoly(self.nvars, self.degree, merged)

    def __mul__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError(f"cannot multiply polynomials in {self.nvars} and {other.nvars} variables")
        product = {}
        for alpha, c in self.terms.items():
            for beta, e in other.terms.items():
                key = tuple(a + b for a, b in zip(alpha, beta))
                product[key] = product.get(key, Fraction(0)) + c * e
        return DensePoly(self.nvars, self.degree + other.degree, product)

    def tensor(self, other):
        """Product with a polynomial in a disjoint alphabet placed after these variables."""
        product = {
            alpha + beta: c * e
            for alpha, c in self.terms.items()
            for beta, e in other.terms.items()
        }
        return DensePoly(self.nvars + other.nvars, self.degree + other.degree, product)

    def derivative(self, alpha):
        """
        ∂^α of the polynomial

        Args:
            alpha: Exponent vector of the derivative

        Returns:
            DensePoly of degree d - |α|
        """
        alpha = tuple(alpha)
        if len(alpha) != self.nvars or any(a < 0 for a in alpha):
            raise ValueError(f"{alpha} is not a derivative multi-index in {self.nvars} variables")
        order = sum(alpha)
        if order > self.degree:
            raise ValueError(f"derivative of order {order} exceeds the degree {self.degree}")
        result = {}
        for beta, c in self.terms.items():
            if all(b >= a for a, b in zip(alpha, beta)):
                falling = math.prod(math.perm(b, a) for a, b in zip(alpha, beta))
                result[tuple(b - a for a, b in zip(alpha, beta))] = c * falling
        return DensePoly(self.nvars, self.degree - order, result)

    def hessian_at(self, alpha):
        """
        Hessian of the quadratic ∂^α g for |α| = d - 2

        Entry (i, j) is ∂^(α+e_i+e_j) g, i.e. c_β·β! with β = α + e_i + e_j.
        """
        alpha = tuple(alpha)
        if sum(alpha) != self.degree - 2:
            raise ValueError(f"Hessian needs |α| = {self.degree - 2}, got {sum(alpha)}")
        rows = []
        for i in range(self.nvars):
            row = []
            for j in range(self.nvars):
                beta = list(alpha)
                beta[i] += 1
                beta[j] += 1
                row.append(self.coefficient(beta) * factorial_of(beta))
            rows.append(row)
        return SymMatrix.from_rows(rows)

    def restrict_last(self):
        """Set the last variable to zero."""
        if self.nvars < 1:
            raise ValueError("no variable left to set to zero")
        return DensePoly(
            self.nvars - 1,
            self.degree,
            {alpha[:-1]: c for alpha, c in self.terms.items() if alpha[-1] == 0},
        )

    def permuted(self, order):
        """Rename variables: old variable i becomes variable order[i]."""
        if sorted(order) != list(range(self.nvars)):
            raise ValueError(f"{order} is not a permutation of 0..{self.nvars - 1}")
        permuted = {}
        for alpha, c in self.terms.items():
            beta = [0] * self.nvars
            for i, a in enumerate(alpha):
                beta[order[i]] = a
            permuted[tuple(beta)] = c
        return DensePoly(self.nvars, self.degree, permuted)

    def normalized(self):
        """The normalization N: coefficientwise division by α!."""
        return DensePoly(
            self.nvars, self.degree, {a: c / factorial_of(a) for a, c in self.terms.items()}
        )

    def is_symmetric(self):
        # Adjacent transpositions generate the symmetric group.
        for alpha, c in self.terms.items():
            for i in range(self.nvars - 1):
                swapped = list(alpha)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                if self.coefficient(swapped) != c:
                    return False
        return True


@dataclass(frozen=True)
class BiSymPoly:
    """
    Symmetric function in two alphabets, in the product monomial basis m_μ(x)·m_ν(y)

    Attributes:
        terms: (x-partition, y-partition) -> Fraction; zeros dropped
    """

    terms: Mapping

    def __post_init__(self):
        cleaned = {}
        for (mu, nu), value in dict(self.terms).items():
            q = to_rational(value)
            if q:
                cleaned[(_as_partition(mu), _as_partition(nu))] = q
        object.__setattr__(
            self, "terms", MappingProxyType(dict(sorted(cleaned.items(), reverse=True)))
        )

    def x_degrees(self):
        return sorted({mu.weight for mu, _ in self.terms})

    def expand(self, nx, ny):
        """Explicit polynomial in nx x-variables followed by ny y-variables."""
        total = None
        for (mu, nu), c in self.terms.items():
            left = expand(SymPoly(mu.weight, Basis.MONOMIAL, {mu: 1}), nx)
            right = expand(SymPoly(nu.weight, Basis.MONOMIAL, {nu: 1}), ny)
            piece = left.tensor(right).scaled(c)
            total = piece if total is None else total + piece
        if total is None:
            raise ValueError("zero polynomial")
        return total


@lru_cache(maxsize=None)
def _tableaux(shape, content):
    rows = [[0] * length for length in shape]
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    remaining = list(content)
    found = []

    def fill(index):
        if index == len(cells):
            found.append(tuple(tuple(row) for row in rows))
            return
        r, c = cells[index]
        low = 1
        if c > 0:
            low = max(low, rows[r][c - 1])
        if r > 0:
            low = max(low, rows[r - 1][c] + 1)
        for value in range(low, len(remaining) + 1):
            if remaining[value - 1]:
                remaining[value - 1] -= 1
                rows[r][c] = value
                fill(index + 1)
                remaining[value - 1] += 1
        rows[r][c] = 0

    fill(0)
    return tuple(found)


def semistandard_tableaux(shape, content):
    """
    All semistandard Young tableaux of a shape and content

    Cells are filled row by row; entries weakly increase along rows and
    strictly increase down columns.

    Args:
        shape: Partition λ
        content: Multiplicity of each entry value 1, 2, ...

    Returns:
        List of tableaux, each a tuple of rows
    """
    shape = Partition(shape)
    content = tuple(int(v) for v in content)
    if any(v < 0 for v in content):
        raise ValueError(f"content {content} has a negative multiplicity")
    if shape.weight != sum(content):
        raise ValueError(
            f"unequal weights: shape {shape} has {shape.weight} cells, content sums to {sum(content)}"
        )
    return list(_tableaux(shape, content))


@lru_cache(maxsize=None)
def kostka(lam, mu):
    """
    Kostka number K_{λ,μ}: SSYT of shape λ and content μ

    Args:
        lam: Shape partition
        mu: Content partition of the same weight

    Returns:
        Non-negative integer
    """
    return len(semistandard_tableaux(Partition(lam), Partition(mu)))


def hook_length_count(lam):
    """Standard Young tableaux of shape λ by the hook length formula."""
    lam = Partition(lam)
    columns = conjugate(lam)
    hooks = math.prod(
        (lam[i] - j - 1) + (columns[j] - i - 1) + 1
        for i in range(len(lam))
        for j in range(lam[i])
    )
    return math.factorial(lam.weight) // hooks


@lru_cache(maxsize=None)
def kostka_matrix(d):
    """
    Kostka matrix of degree d, rows λ and columns μ in generation order

    Upper unitriangular, since generation order extends dominance order.
    """
    keys = generate_partitions(d)
    logger.debug(f"Building the degree-{d} Kostka matrix ({len(keys)}x{len(keys)})")
    return tuple(tuple(kostka(lam, mu) for mu in keys) for lam in keys)


@lru_cache(maxsize=None)
def inverse_kostka_matrix(d):
    """Exact inverse of the degree-d Kostka matrix (integer entries)."""
    K = kostka_matrix(d)
    size = len(K)
    inverse = DomainMatrix.from_Matrix(Matrix(size, size, [v for row in K for v in row]))
    inverse = inverse.to_field().inv().to_Matrix()
    return tuple(tuple(int(inverse[i, j]) for j in range(size)) for i in range(size))


@lru_cache(maxsize=None)
def _position(d):
    return {lam: i for i, lam in enumerate(generate_partitions(d))}


def _to_mtilde(f):
    d = f.degree
    if f.basis is Basis.MTILDE:
        return dict(f.coeffs)
    if f.basis is Basis.MONOMIAL:
        return {lam: c * factorial_of(lam) for lam, c in f.coeffs.items()}

    K = kostka_matrix(d)
    index = _position(d)
    keys = generate_partitions(d)
    result = {}
    for lam, a in f.coeffs.items():
        row = K[index[lam]]
        for j, mu in enumerate(keys):
            if row[j]:
                result[mu] = result.get(mu, Fraction(0)) + a * row[j]
    if f.basis is Basis.SCHUR:
        result = {mu: c * factorial_of(mu) for mu, c in result.items()}
    return result


def _from_mtilde(coeffs, d, target):
    if target is Basis.MTILDE:
        return coeffs
    if target is Basis.MONOMIAL:
        return {lam: c / factorial_of(lam) for lam, c in coeffs.items()}

    if target is Basis.SCHUR:
        coeffs = {mu: c / factorial_of(mu) for mu, c in coeffs.items()}
    inverse = inverse_kostka_matrix(d)
    index = _position(d)
    keys = generate_partitions(d)
    result = {}
    for mu, c in coeffs.items():
        row = inverse[index[mu]]
        for j, lam in enumerate(keys):
            if row[j]:
                result[lam] = result.get(lam, Fraction(0)) + c * row[j]
    return result


def convert_basis(f, target):
    """
    Exact change of basis

    Every conversion passes through the normalized monomial basis m̃:
    m and m̃ differ by the diagonal λ! factor, s and Ns go through the
    Kostka matrix (and its inverse on the way back).

    Args:
        f: SymPoly
        target: Basis tag or its string value

    Returns:
        SymPoly in the target basis
    """
    target = Basis(target)
    if f.basis is target:
        return f
    return SymPoly(f.degree, target, _from_mtilde(_to_mtilde(f), f.degree, target))


def expand(f, n):
    """
    Monomial expansion of the n-variable truncation f_n

    Args:
        f: SymPoly in any basis
        n: Number of variables

    Returns:
        DensePoly; the coefficient of x^α is c_[α]/α! in terms of the m̃ coefficients
    """
    if n < 1:
        raise ValueError(f"expansion needs at least one variable, got n={n}")
    terms = {}
    for lam, c in _to_mtilde(f).items():
        if len(lam) > n:
            continue
        weight = c / factorial_of(lam)
        for alpha in multiset_permutations(list(lam) + [0] * (n - len(lam))):
            terms[tuple(alpha)] = weight
    return DensePoly(n, f.degree, terms)


def from_dense(g):
    """
    Read the m-basis coefficients off a symmetric polynomial

    Only partitions with at most g.nvars parts are visible in n variables.
    """
    if not g.is_symmetric():
        raise ValueError("polynomial is not symmetric")
    coeffs = {}
    for lam in generate_partitions(g.degree):
        if len(lam) <= g.nvars:
            c = g.coefficient(list(lam) + [0] * (g.nvars - len(lam)))
            if c:
                coeffs[lam] = c
    return SymPoly(g.degree, Basis.MONOMIAL, coeffs)


def multiply(f, g):
    """Product of two symmetric functions, returned in the basis of f."""
    nvars = max(1, f.degree + g.degree)
    product = from_dense(expand(f, nvars) * expand(g, nvars))
    return convert_basis(product, f.basis)


def normalize(f):
    """The operator N on symmetric functions: m_λ ↦ m̃_λ."""
    return SymPoly(f.degree, Basis.MTILDE, convert_basis(f, Basis.MONOMIAL).coeffs)


def schur_negative_coefficients(f):
    """Partitions whose Schur-basis coefficient is negative."""
    return [lam for lam, c in convert_basis(f, Basis.SCHUR).coeffs.items() if c < 0]


def omega_normalized(f):
    """
    N ∘ ω ∘ N⁻¹: sends Ns_λ to Ns_λ' and is extended linearly

    Args:
        f: SymPoly

    Returns:
        SymPoly in the basis of f
    """
    ns = convert_basis(f, Basis.NSCHUR)
    flipped = SymPoly(f.degree, Basis.NSCHUR, {conjugate(lam): c for lam, c in ns.coeffs.items()})
    return convert_basis(flipped, f.basis)


def hall_with_schur_x(f, lam, strict=False):
    """
    Pair the x-alphabet of f with s_λ(x) under the Hall inner product

    Uses ⟨m_μ, s_λ⟩ = (K⁻¹)_{μλ}. Components of f whose x-degree differs from
    |λ| pair to zero.

    Args:
        f: BiSymPoly
        lam: Partition
        strict: Refuse inputs that have other x-degrees instead of dropping them

    Returns:
        SymPoly in the m basis over the y-alphabet
    """
    lam = Partition(lam)
    d = lam.weight
    if strict and any(deg != d for deg in f.x_degrees()):
        raise ValueError(f"mixed x-degrees {f.x_degrees()} for pairing with s_{lam}")

    inverse = inverse_kostka_matrix(d)
    index = _position(d)
    column = index[lam]
    result = {}
    y_degree = None
    for (mu, nu), c in f.terms.items():
        if mu.weight != d:
            continue
        if y_degree is None:
            y_degree = nu.weight
        elif nu.weight != y_degree:
            raise ValueError(f"mixed y-degrees in the x-degree {d} component")
        pairing = inverse[index[mu]][column]
        if pairing:
            result[nu] = result.get(nu, Fraction(0)) + c * pairing

    return SymPoly(y_degree or 0, Basis.MONOMIAL, result)


def _complement_partition(lam, n, m):
    columns = list(conjugate(lam)) + [0] * m
    return Partition(n - columns[m - k] for k in range(1, m + 1))


def dual_cauchy_check(n, m):
    """
    Check Π(x_i + y_j) = Σ_λ s_λ(x)·s_λ̃'(y) by exact expansion

    λ runs over partitions inside the n x m box and λ̃' is the complement of
    the conjugate, λ̃'_k = n - λ'_{m+1-k}.

    Args:
        n: Number of x-variables
        m: Number of y-variables

    Returns:
        True if both sides agree term by term
    """
    if n < 1 or m < 1:
        raise ValueError(f"dual Cauchy identity needs n, m >= 1 (got {n}, {m})")
    if n * m > Config.DUAL_CAUCHY_MAX_CELLS:
        raise ValueError(
            f"n*m = {n * m} exceeds SYMLOR_DUAL_CAUCHY_MAX_CELLS={Config.DUAL_CAUCHY_MAX_CELLS}"
        )

    try:
        lhs = DensePoly.constant(n + m)
        for i in range(n):
            for j in range(m):
                lhs = lhs * DensePoly.linear_form(n + m, {i: 1, n + j: 1})

        rhs = DensePoly(n + m, n * m, {})
        for weight in range(n * m + 1):
            for lam in generate_partitions(weight):
                if len(lam) > n or (lam and lam[0] > m):
                    continue
                other = _complement_partition(lam, n, m)
                sx = expand(SymPoly(weight, Basis.SCHUR, {lam: 1}), n)
                sy = expand(SymPoly(other.weight, Basis.SCHUR, {other: 1}), m)
                rhs = rhs + sx.tensor(sy)

        agree = lhs == rhs
        logger.info(f"✓ Dual Cauchy identity n={n}, m={m}: {'holds' if agree else 'FAILS'}")
        return agree

    except Exception as e:
        logger.error(f"Error checking the dual Cauchy identity: {e}")
        raise

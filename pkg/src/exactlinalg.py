import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from sympy import Matrix
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)


def _rational(value):
    if isinstance(value, float):
        raise ValueError(f"floats are not exact rationals ({value!r})")
    return Fraction(value)


@dataclass(frozen=True)
class SymMatrix:
    """
    Square symmetric matrix with exact rational entries

    Attributes:
        entries: Tuple of rows, each a tuple of Fractions
    """

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(_rational(v) for v in row) for row in self.entries)
        size = len(rows)
        if any(len(row) != size for row in rows):
            raise ValueError(f"matrix is not square ({[len(r) for r in rows]} columns, {size} rows)")
        for i in range(size):
            for j in range(i + 1, size):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(row) for row in rows))

    @property
    def dim(self):
        return len(self.entries)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def is_nonnegative(self):
        return all(v >= 0 for row in self.entries for v in row)

    def scaled_congruence(self, diagonal):
        """D A D for the diagonal matrix D = diag(diagonal)."""
        d = [_rational(v) for v in diagonal]
        if len(d) != self.dim:
            raise ValueError(f"diagonal has {len(d)} entries for a {self.dim}x{self.dim} matrix")
        return SymMatrix.from_rows(
            [[d[i] * self.entries[i][j] * d[j] for j in range(self.dim)] for i in range(self.dim)]
        )

    def permuted(self, order):
        """Simultaneous row/column permutation: new row i is old row order[i]."""
        if sorted(order) != list(range(self.dim)):
            raise ValueError(f"{order} is not a permutation of 0..{self.dim - 1}")
        return SymMatrix.from_rows(
            [[self.entries[a][b] for b in order] for a in order]
        )

    def to_domain_matrix(self):
        return DomainMatrix.from_Matrix(Matrix(self.entries))


class OpCounter:
    """Additive count of exact arithmetic operations spent by one check"""

    def __init__(self):
        self.count = 0

    def add(self, ops=1):
        self.count += ops
        return self.count


def determinant_cost(size):
    """
    Operation charge for one size x size determinant

    Counts the multiplications, subtractions and divisions of one fraction-free
    elimination pass; depends on the size only.
    """
    if size <= 1:
        return 0
    return sum(3 * (size - k) ** 2 + 1 for k in range(1, size)) + 1


def _index_set(S, dim):
    indices = sorted(set(S))
    if not indices:
        raise ValueError("principal minor needs a nonempty index set")
    if indices[0] < 1 or indices[-1] > dim:
        raise ValueError(f"index set {indices} is not inside [1, {dim}]")
    return indices


def principal_minor(A, S):
    """
    Exact principal minor det(A[S])

    Args:
        A: SymMatrix
        S: Nonempty collection of 1-based indices

    Returns:
        Fraction
    """
    indices = [i - 1 for i in _index_set(S, A.dim)]
    det = A.to_domain_matrix().to_field().extract(indices, indices).det()
    return Fraction(int(det.numerator), int(det.denominator))


def _integral_domain_matrix(A):
    # Clearing one positive common denominator keeps every minor's sign.
    scale = math.lcm(*(v.denominator for row in A.entries for v in row))
    return DomainMatrix.from_Matrix(
        Matrix(A.dim, A.dim, [int(v * scale) for row in A.entries for v in row])
    )


def at_most_one_positive_eigenvalue(A, counter=None):
    """
    Decide whether a non-negative symmetric matrix has at most one positive eigenvalue

    Uses the signed principal minor criterion (-1)^(|S|-1) det A[S] >= 0 over
    every nonempty S, visited by increasing size and then lexicographically, so
    the first violation found is the certificate.

    Args:
        A: SymMatrix with non-negative entries
        counter: Optional OpCounter charged per minor

    Returns:
        (True, None) or (False, violating index set as a 1-based tuple)
    """
    if not A.is_nonnegative():
        raise ValueError("minor criterion requires nonnegative matrix")

    integral = _integral_domain_matrix(A)
    for size in range(1, A.dim + 1):
        sign = 1 if size % 2 == 1 else -1
        for subset in combinations(range(A.dim), size):
            minor = integral.extract(list(subset), list(subset)).det()
            if counter is not None:
                counter.add(determinant_cost(size) + 1)
            if sign * minor < 0:
                witness = tuple(i + 1 for i in subset)
                logger.debug(f"Signed minor violated on S={witness} (det={minor})")
                return False, witness
    return True, None


def positive_eigenvalue_count(A):
    """
    Number of positive eigenvalues of a symmetric matrix, computed exactly

    The characteristic polynomial of a symmetric matrix is real-rooted, so
    Descartes' rule of signs on its coefficients is exact.
    """
    if A.dim == 0:
        return 0
    coefficients = A.to_domain_matrix().to_field().charpoly()
    signs = [1 if c > 0 else -1 for c in coefficients if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

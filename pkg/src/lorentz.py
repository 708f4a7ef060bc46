import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

import networkx as nx
from tqdm import tqdm

from config import Config
from .exactlinalg import OpCounter, SymMatrix, at_most_one_positive_eigenvalue
from .partitions import (
    Partition,
    block_structure,
    compositions,
    dominance_covers,
    dominance_leq,
    generate_partitions,
)
from .symfunc import Basis, convert_basis, expand

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Mode:
    """
    Function mode (all truncations) or polynomial mode in a fixed number of variables

    Attributes:
        nvars: Number of variables n, or None in function mode
    """

    nvars: Optional[int] = None

    def __post_init__(self):
        if self.nvars is not None and self.nvars < 1:
            raise ValueError(f"polynomial mode needs at least one variable, got n={self.nvars}")

    @classmethod
    def function(cls):
        return cls(None)

    @classmethod
    def polynomial(cls, nvars):
        return cls(int(nvars))

    @classmethod
    def parse(cls, name, nvars=None):
        """Mode from the CLI spelling: 'function' or 'polynomial' plus n."""
        if name == "function":
            return cls.function()
        if name == "polynomial":
            if nvars is None:
                raise ValueError("polynomial mode requires --nvars")
            return cls.polynomial(nvars)
        raise ValueError(f"unknown mode '{name}' (expected function or polynomial)")

    @property
    def is_function(self):
        return self.nvars is None

    def admits(self, lam):
        """Whether the partition survives truncation to n variables."""
        return self.nvars is None or len(lam) <= self.nvars

    def __str__(self):
        return "function" if self.is_function else f"polynomial(n={self.nvars})"


class FailureKind(str, Enum):
    NONNEG = "nonneg"
    SUPPORT_M = "support-M"
    DOMINANCE_D = "dominance-D"
    HESSIAN_H = "hessian-H"


@dataclass(frozen=True)
class Failure:
    kind: FailureKind
    witness: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a Lorentzian test with its certificate

    Attributes:
        lorentzian: The decision
        failure: First failed condition and its witness, None when Lorentzian
        op_count: Arithmetic operations spent
    """

    lorentzian: bool
    failure: Optional[Failure] = None
    op_count: int = 0

    def __post_init__(self):
        if self.lorentzian and self.failure is not None:
            raise ValueError("a Lorentzian verdict cannot carry a failure")
        if not self.lorentzian and self.failure is None:
            raise ValueError("a negative verdict needs a failure certificate")

    def to_dict(self):
        failure = None
        if self.failure is not None:
            failure = {"kind": self.failure.kind.value, "witness": self.failure.witness}
        return {"lorentzian": self.lorentzian, "failure": failure, "opCount": self.op_count}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


class HaynsworthBlock(NamedTuple):
    """Diagonal block pI + q(J - I) of a Hessian, located by its 1-based start"""

    start: int
    size: int
    p: Fraction
    q: Fraction

    @property
    def linear_eigenvalue(self):
        return self.p - self.q


def _coefficients(f, mode):
    g = convert_basis(f, Basis.MTILDE)
    if g.is_zero:
        raise ValueError("zero polynomial")
    coeffs = {lam: c for lam, c in g.coeffs.items() if mode.admits(lam)}
    if not coeffs:
        raise ValueError(f"zero polynomial (every term vanishes in {mode.nvars} variables)")
    return g.degree, coeffs


def _bumped(coeffs, mu, *positions):
    """c_{μ + e_{p1} + e_{p2}}, positions 1-based and allowed past ℓ(μ)."""
    vector = list(mu) + [0] * 2
    for p in positions:
        vector[p - 1] += 1
    return coeffs.get(Partition.from_composition(vector), Fraction(0))


def _first_negative(coeffs, d, mode, counter):
    for lam in generate_partitions(d):
        if not mode.admits(lam):
            continue
        counter.add()
        if coeffs.get(lam, 0) < 0:
            return lam
    return None


def _support_maxima(coeffs, counter):
    support = [lam for lam in sorted(coeffs, reverse=True) if coeffs[lam] != 0]
    maxima = []
    for lam in support:
        dominated = False
        for other in support:
            if other == lam:
                continue
            counter.add()
            if dominance_leq(lam, other):
                dominated = True
                break
        if not dominated:
            maxima.append(lam)
    return maxima


def check_support_M(f, mode=None, counter=None):
    """
    Condition (M): the m-support has a unique dominance-maximal element

    Args:
        f: SymPoly with non-negative coefficients
        mode: Mode; polynomial mode only sees partitions with at most n parts
        counter: Optional OpCounter

    Returns:
        (True, (maximum,)) or (False, (first maximal, second maximal))
    """
    mode = mode or Mode.function()
    counter = counter or OpCounter()
    _, coeffs = _coefficients(f, mode)
    if any(c < 0 for c in coeffs.values()):
        raise ValueError("support test needs non-negative coefficients")
    maxima = _support_maxima(coeffs, counter)
    if len(maxima) == 1:
        return True, (maxima[0],)
    return False, (maxima[0], maxima[1])


def check_dominance_D(f, mode=None, counter=None):
    """
    Condition (D): c_μ >= c_λ for every cover μ ⋖ λ

    Args:
        f: SymPoly with non-negative coefficients
        mode: Mode; polynomial mode only compares partitions with at most n parts
        counter: Optional OpCounter

    Returns:
        (True, None) or (False, (μ, λ)) for the first failing cover
    """
    mode = mode or Mode.function()
    counter = counter or OpCounter()
    d, coeffs = _coefficients(f, mode)
    if any(c < 0 for c in coeffs.values()):
        raise ValueError("dominance test needs non-negative coefficients")
    for lam in generate_partitions(d):
        if not mode.admits(lam):
            continue
        for mu in dominance_covers(lam):
            if not mode.admits(mu):
                continue
            counter.add()
            if coeffs.get(mu, 0) < coeffs.get(lam, 0):
                return False, (mu, lam)
    return True, None


def _collapsed_hessian(coeffs, mu, nvars, counter):
    blocks = block_structure(mu, nvars)
    k = blocks.k
    trailing = None if nvars is None else nvars - k
    size = blocks.ell + (0 if trailing == 0 else 1)
    rows = [[Fraction(0)] * size for _ in range(size)]

    for t, (m_t, n_t) in enumerate(zip(blocks.start_indices, blocks.block_sizes)):
        diagonal = _bumped(coeffs, mu, m_t, m_t)
        if n_t > 1:
            diagonal += (n_t - 1) * _bumped(coeffs, mu, m_t, m_t + 1)
            counter.add(2)
        rows[t][t] = n_t * diagonal
        counter.add()
        for s in range(t):
            m_s, n_s = blocks.start_indices[s], blocks.block_sizes[s]
            rows[s][t] = rows[t][s] = n_s * n_t * _bumped(coeffs, mu, m_s, m_t)
            counter.add(2)

    if trailing == 0:
        return SymMatrix.from_rows(rows)

    last = size - 1
    for s, (m_s, n_s) in enumerate(zip(blocks.start_indices, blocks.block_sizes)):
        entry = n_s * _bumped(coeffs, mu, m_s, k + 1)
        counter.add()
        if trailing is not None:
            entry *= trailing
            counter.add()
        rows[s][last] = rows[last][s] = entry

    if trailing is None:
        rows[last][last] = _bumped(coeffs, mu, k + 1, k + 2)
    else:
        corner = _bumped(coeffs, mu, k + 1, k + 1)
        if trailing > 1:
            corner += (trailing - 1) * _bumped(coeffs, mu, k + 1, k + 2)
            counter.add(2)
        rows[last][last] = trailing * corner
        counter.add()
    return SymMatrix.from_rows(rows)


def reduced_hessian(f, mu, mode, counter=None):
    """
    The reduced Hessian of ∂^μ f: M(μ) in function mode, Q(μ) in polynomial mode

    One row per block of equal parts of μ plus one for the block of untouched
    variables. Polynomial mode keeps that block's size n - k as a number in the
    entries rather than as a matrix dimension.

    Args:
        f: SymPoly
        mu: Partition of deg f - 2
        mode: Mode
        counter: Optional OpCounter

    Returns:
        SymMatrix of size ℓ + 1
    """
    mu = Partition(mu)
    d, coeffs = _coefficients(f, mode)
    if mu.weight != d - 2:
        raise ValueError(f"μ = {mu} must have weight {d - 2}")
    if not mode.is_function and mode.nvars < len(mu) + 2:
        raise ValueError(f"too few variables for μ = {mu} (n = {mode.nvars})")
    return _collapsed_hessian(coeffs, mu, mode.nvars, counter or OpCounter())


def haynsworth_blocks(f, mu, n):
    """
    Diagonal blocks of size >= 2 in the Hessian of ∂^μ f_n

    Each block contributes n_t - 1 linear eigenvalues p_t - q_t with
    eigenvectors e_j - e_{m_t}; the untouched variables form the last block.

    Args:
        f: SymPoly
        mu: Partition of deg f - 2
        n: Number of variables, at least ℓ(μ)

    Returns:
        List of HaynsworthBlock
    """
    mu = Partition(mu)
    _, coeffs = _coefficients(f, Mode.polynomial(n))
    blocks = block_structure(mu, n)
    found = []
    for m_t, n_t in zip(blocks.start_indices, blocks.block_sizes):
        if n_t >= 2:
            found.append(HaynsworthBlock(
                m_t, n_t, _bumped(coeffs, mu, m_t, m_t), _bumped(coeffs, mu, m_t, m_t + 1)
            ))
    if blocks.trailing_block_size >= 2:
        k = blocks.k
        found.append(HaynsworthBlock(
            k + 1,
            blocks.trailing_block_size,
            _bumped(coeffs, mu, k + 1, k + 1),
            _bumped(coeffs, mu, k + 1, k + 2),
        ))
    return found


def _fail(kind, witness, counter):
    logger.info(f"Not Lorentzian: {kind.value} fails with {witness}")
    return Verdict(False, Failure(kind, witness), counter.count)


def is_lorentzian(f, mode=None):
    """
    Decide whether a symmetric function (or its n-variable truncation) is Lorentzian

    Checks, in order: non-negativity, a unique maximal support element (M),
    monotone coefficients along dominance covers (D), and the signature of
    the reduced Hessian at every μ ⊢ d - 2 in generation order. The first
    failure is returned as the certificate.

    Args:
        f: SymPoly in any basis
        mode: Mode (function mode by default)

    Returns:
        Verdict
    """
    mode = mode or Mode.function()
    counter = OpCounter()
    d, coeffs = _coefficients(f, mode)

    negative = _first_negative(coeffs, d, mode, counter)
    if negative is not None:
        return _fail(FailureKind.NONNEG, {"partition": str(negative)}, counter)

    if d <= 1:
        return Verdict(True, None, counter.count)

    maxima = _support_maxima(coeffs, counter)
    if len(maxima) > 1:
        return _fail(FailureKind.SUPPORT_M, {"maxima": [str(maxima[0]), str(maxima[1])]}, counter)

    ok, pair = check_dominance_D(f, mode, counter)
    if not ok:
        return _fail(FailureKind.DOMINANCE_D, {"lower": str(pair[0]), "upper": str(pair[1])}, counter)

    for mu in generate_partitions(d - 2):
        if not mode.admits(mu):
            continue
        matrix = _collapsed_hessian(coeffs, mu, mode.nvars, counter)
        ok, subset = at_most_one_positive_eigenvalue(matrix, counter)
        logger.debug(f"μ={mu}: reduced Hessian of size {matrix.dim} {'passes' if ok else 'fails'}")
        if not ok:
            return _fail(FailureKind.HESSIAN_H, {"mu": str(mu), "minor": list(subset)}, counter)

    return Verdict(True, None, counter.count)


def _moved(vector, source, target):
    moved = list(vector)
    moved[source] -= 1
    moved[target] += 1
    return tuple(moved)


@lru_cache(maxsize=256)
def _exchange_witness(points):
    ordered = sorted(points, reverse=True)
    n = len(ordered[0]) if ordered else 0
    for x in ordered:
        for y in ordered:
            for i in range(n):
                if x[i] <= y[i]:
                    continue
                if not any(
                    x[j] < y[j] and _moved(x, i, j) in points and _moved(y, j, i) in points
                    for j in range(n)
                ):
                    return x, y, i + 1
    return None


def is_m_convex(support):
    """
    Exhaustive check of the symmetric exchange axiom

    For all x, y in the set and every i with x_i > y_i there must be a j with
    x_j < y_j such that x - e_i + e_j and y + e_i - e_j are both in the set.

    Args:
        support: Iterable of equal-length, equal-weight exponent vectors

    Returns:
        (True, None) or (False, (x, y, i)) with i 1-based
    """
    points = frozenset(tuple(int(v) for v in vector) for vector in support)
    if len({len(p) for p in points}) > 1 or len({sum(p) for p in points}) > 1:
        raise ValueError("exchange axiom needs vectors of one length and one weight")
    witness = _exchange_witness(points)
    return (True, None) if witness is None else (False, witness)


def _indecomposable(poly):
    graph = nx.Graph()
    for alpha in poly.terms:
        active = [i for i, a in enumerate(alpha) if a]
        graph.add_nodes_from(active)
        graph.add_edges_from(zip(active, active[1:]))
    return graph.number_of_nodes() <= 1 or nx.is_connected(graph)


def oracle_is_lorentzian(g):
    """
    Brute-force Lorentzian test straight from the definition

    Checks M-convexity of the support, indecomposability of ∂^α g for
    |α| <= d - 2 and the Hessian signature of ∂^α g for every |α| = d - 2.

    Args:
        g: DensePoly with non-negative coefficients

    Returns:
        Verdict
    """
    if g.nvars > Config.ORACLE_MAX_VARS or g.degree > Config.ORACLE_MAX_DEGREE:
        raise ValueError(
            f"oracle limited to {Config.ORACLE_MAX_VARS} variables and degree "
            f"{Config.ORACLE_MAX_DEGREE} (got n={g.nvars}, d={g.degree})"
        )
    if any(c < 0 for c in g.terms.values()):
        raise ValueError("oracle needs non-negative coefficients")
    if g.is_zero:
        raise ValueError("zero polynomial")

    counter = OpCounter()
    d, n = g.degree, g.nvars
    if d <= 1:
        return Verdict(True, None, counter.count)

    try:
        ok, exchange = is_m_convex(g.support())
        if not ok:
            x, y, i = exchange
            return _fail(FailureKind.SUPPORT_M, {"exchange": [list(x), list(y), i]}, counter)

        for order in range(d - 1):
            for alpha in compositions(order, n):
                if not _indecomposable(g.derivative(alpha)):
                    return _fail(FailureKind.SUPPORT_M, {"decomposable": list(alpha)}, counter)

        for alpha in compositions(d - 2, n):
            ok, subset = at_most_one_positive_eigenvalue(g.hessian_at(alpha), counter)
            if not ok:
                return _fail(
                    FailureKind.HESSIAN_H, {"alpha": list(alpha), "minor": list(subset)}, counter
                )

        return Verdict(True, None, counter.count)

    except Exception as e:
        logger.error(f"Error in the brute-force oracle: {e}")
        raise


def is_nu_m_concave(f, n):
    """
    M-concavity of ν_f(α) = log c_[α] on the n-variable support

    Compares products of coefficients exactly instead of sums of logarithms.

    Args:
        f: SymPoly with positive coefficients on an M-convex support
        n: Number of variables

    Returns:
        (True, None) or (False, (α, β, i)) with i 1-based
    """
    g = convert_basis(f, Basis.MTILDE)
    if g.is_zero:
        raise ValueError("zero polynomial")
    if any(c < 0 for c in g.coeffs.values()):
        raise ValueError("ν_f needs positive coefficients")

    value = {}
    for alpha in compositions(g.degree, n):
        c = g.coefficient(Partition.from_composition(alpha))
        if c:
            value[alpha] = c

    ok, _ = is_m_convex(value)
    if not ok:
        raise ValueError("support of f is not M-convex")

    ordered = sorted(value, reverse=True)
    for alpha in ordered:
        for beta in ordered:
            for i in range(n):
                if alpha[i] <= beta[i]:
                    continue
                best = None
                for j in range(n):
                    if alpha[j] >= beta[j]:
                        continue
                    left, right = _moved(alpha, i, j), _moved(beta, j, i)
                    if left in value and right in value:
                        product = value[left] * value[right]
                        best = product if best is None or product > best else best
                if best is None or value[alpha] * value[beta] > best:
                    return False, (alpha, beta, i + 1)
    return True, None


class LorentzianTester:
    """
    Runs the reduced tester, the oracle and the op-count bench in one mode
    """

    def __init__(self, mode=None):
        """
        Initialize the tester

        Args:
            mode: Mode (function mode by default)
        """
        self.mode = mode or Mode.function()
        logger.info(f"Initialized LorentzianTester in {self.mode} mode")

    def check(self, f):
        """
        Reduced test of a symmetric function

        Args:
            f: SymPoly

        Returns:
            Verdict
        """
        try:
            verdict = is_lorentzian(f, self.mode)
            if verdict.lorentzian:
                logger.info(f"✓ Lorentzian in {self.mode} mode (opCount={verdict.op_count})")
            return verdict
        except Exception as e:
            logger.error(f"Error checking degree-{f.degree} input: {e}")
            raise

    def oracle(self, f):
        """
        Expand the truncation and run the brute-force oracle on it

        Args:
            f: SymPoly

        Returns:
            Verdict
        """
        if self.mode.is_function:
            raise ValueError("the oracle works on polynomials; give polynomial mode with --nvars")
        verdict = oracle_is_lorentzian(expand(f, self.mode.nvars))
        if verdict.lorentzian:
            logger.info(f"✓ Oracle: Lorentzian in {self.mode.nvars} variables")
        return verdict

    def bench(self, f, nvars_list=None):
        """
        opCount of the polynomial-mode test for each variable count

        Args:
            f: SymPoly
            nvars_list: Variable counts (default Config.BENCH_NVARS)

        Returns:
            Dict n -> opCount
        """
        nvars_list = tuple(nvars_list or Config.BENCH_NVARS)
        counts = {}
        for n in tqdm(nvars_list, desc="bench", disable=not Config.SHOW_PROGRESS):
            counts[n] = is_lorentzian(f, Mode.polynomial(n)).op_count
        logger.info(f"✓ opCounts {counts}")
        return counts

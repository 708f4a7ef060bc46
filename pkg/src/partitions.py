import json
import logging
import operator
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate, zip_longest
from typing import Optional

from sympy.utilities.iterables import multiset_permutations, partitions as _sympy_partitions

logger = logging.getLogger(__name__)


class Partition(tuple):
    """
    Integer partition: a weakly decreasing tuple of positive parts

    Trailing zeros are dropped on construction, so every partition has exactly
    one key form in coefficient maps. Equal to (and hashes like) the plain tuple
    of its parts.
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = [operator.index(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing, got {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_composition(cls, vector):
        """
        Sort an exponent vector into its partition [α]

        Args:
            vector: Iterable of non-negative integers

        Returns:
            Partition with the non-zero entries in decreasing order
        """
        entries = [operator.index(v) for v in vector]
        if any(v < 0 for v in entries):
            raise ValueError(f"exponent vectors must be non-negative, got {entries}")
        return cls(sorted((v for v in entries if v), reverse=True))

    @classmethod
    def parse(cls, text):
        """
        Parse the bracketed serialization, e.g. "[2,1,1]" or "[]"

        Args:
            text: Serialized partition

        Returns:
            Partition
        """
        try:
            parts = json.loads(text)
        except (TypeError, json.JSONDecodeError) as e:
            raise ValueError(f"malformed partition '{text}': {e}") from e
        if not isinstance(parts, list) or any(
            isinstance(p, bool) or not isinstance(p, int) for p in parts
        ):
            raise ValueError(f"malformed partition '{text}': expected a list of integers")
        return cls(parts)

    @property
    def weight(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def conjugate(self):
        return conjugate(self)

    def __str__(self):
        return "[" + ",".join(str(p) for p in self) + "]"

    def __repr__(self):
        return f"Partition({self})"


@dataclass(frozen=True)
class BlockStructure:
    """
    Runs of equal parts of a partition μ

    Attributes:
        k: Length of μ
        ell: Number of distinct part values (blocks)
        start_indices: 1-based index m_t where block t starts (m_1 = 1)
        block_sizes: n_t, the size of block t
        values: Common part value of each block, strictly decreasing
        trailing_block_size: n - k when an ambient variable count n is given
    """

    k: int
    ell: int
    start_indices: tuple
    block_sizes: tuple
    values: tuple
    trailing_block_size: Optional[int] = None


@lru_cache(maxsize=None)
def _partitions_of(d):
    if d == 0:
        return (Partition(),)
    found = []
    for multiplicities in _sympy_partitions(d):
        parts = []
        for part in sorted(multiplicities, reverse=True):
            parts.extend([part] * multiplicities[part])
        found.append(Partition(parts))
    return tuple(sorted(found, reverse=True))


def generate_partitions(d):
    """
    All partitions of d in reverse-lexicographic (largest-first) order

    Args:
        d: Non-negative integer

    Returns:
        List of Partition objects
    """
    d = operator.index(d)
    if d < 0:
        raise ValueError(f"cannot partition a negative integer ({d})")
    return list(_partitions_of(d))


def partitions_of_length(d, n):
    """Partitions of d with at most n parts, in generation order."""
    return [lam for lam in _partitions_of(d) if len(lam) <= n]


def dominance_leq(mu, lam):
    """
    Dominance order test μ ⪯ λ

    Args:
        mu: Partition
        lam: Partition of the same weight

    Returns:
        True if every prefix sum of mu is at most the matching prefix sum of lam
    """
    if sum(mu) != sum(lam):
        raise ValueError(f"incomparable weights: {Partition(mu)} and {Partition(lam)}")
    rows = list(zip_longest(mu, lam, fillvalue=0))
    lower = accumulate(p for p, _ in rows)
    upper = accumulate(q for _, q in rows)
    return all(a <= b for a, b in zip(lower, upper))


def dominance_covers(lam):
    """
    Partitions covered by λ in dominance order

    A cover moves one unit from row i down to a later row k, either into the
    next row (k = i + 1) or across a run so that rows i and k end up equal.

    Args:
        lam: Partition

    Returns:
        List of covered partitions in generation order
    """
    lam = Partition(lam)
    padded = list(lam) + [0]
    covers = set()
    for i in range(len(lam)):
        for k in range(i + 1, len(padded)):
            moved = padded.copy()
            moved[i] -= 1
            moved[k] += 1
            if any(moved[j] < moved[j + 1] for j in range(len(moved) - 1)):
                continue
            if k == i + 1 or moved[i] == moved[k]:
                covers.add(Partition(moved))
    return sorted(covers, reverse=True)


def conjugate(lam):
    """Transpose of the Young diagram of λ."""
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def block_structure(mu, n=None):
    """
    Split μ into blocks of equal parts (boundaries at strict descents)

    Args:
        mu: Partition
        n: Ambient variable count, or None in function mode

    Returns:
        BlockStructure
    """
    mu = Partition(mu)
    if n is not None and n < len(mu):
        raise ValueError(f"ambient variable count {n} is smaller than the length of {mu}")

    starts, sizes, values = [], [], []
    for index, part in enumerate(mu, start=1):
        if values and values[-1] == part:
            sizes[-1] += 1
        else:
            starts.append(index)
            sizes.append(1)
            values.append(part)

    return BlockStructure(
        k=len(mu),
        ell=len(starts),
        start_indices=tuple(starts),
        block_sizes=tuple(sizes),
        values=tuple(values),
        trailing_block_size=None if n is None else n - len(mu),
    )


def permutohedron_contains(t, lam):
    """
    Membership of an integer vector in the permutohedron P(λ)

    The subset-sum bounds are tightest on the largest entries of t, so it is
    enough to compare sorted prefix sums.

    Args:
        t: Integer vector with non-negative entries
        lam: Partition

    Returns:
        True if t lies in the convex hull of the rearrangements of λ
    """
    entries = sorted((operator.index(v) for v in t), reverse=True)
    lam = Partition(lam)
    if sum(entries) != lam.weight:
        return False
    bound = list(accumulate(list(lam) + [0] * max(0, len(entries) - len(lam))))
    return all(s <= b for s, b in zip(accumulate(entries), bound))


def dominance_interval(lam):
    """The interval [1^d, λ] in generation order."""
    lam = Partition(lam)
    return [mu for mu in _partitions_of(lam.weight) if dominance_leq(mu, lam)]


@lru_cache(maxsize=None)
def _compositions(d, n):
    vectors = []
    for lam in partitions_of_length(d, n):
        padded = list(lam) + [0] * (n - len(lam))
        vectors.extend(tuple(v) for v in multiset_permutations(padded))
    return tuple(sorted(vectors, reverse=True))


def compositions(d, n):
    """
    All exponent vectors of n variables with total degree d

    Args:
        d: Total degree
        n: Number of variables

    Returns:
        List of tuples in reverse-lexicographic order
    """
    if d < 0 or n < 0:
        raise ValueError(f"compositions need d, n >= 0 (got d={d}, n={n})")
    if n == 0:
        return [()] if d == 0 else []
    return list(_compositions(d, n))

import logging
from fractions import Fraction

import numpy as np

from config import Config
from .partitions import generate_partitions
from .symfunc import Basis, SymPoly

logger = logging.getLogger(__name__)


def default_rng(seed=None):
    """numpy Generator seeded from Config.RANDOM_SEED unless a seed is given."""
    return np.random.default_rng(Config.RANDOM_SEED if seed is None else seed)


def random_rationals(rng, count, max_numerator=12, max_denominator=4, zero_probability=0.15):
    """
    Non-negative rationals p/q with small numerators and denominators

    Args:
        rng: numpy Generator
        count: How many values
        max_numerator: Largest numerator
        max_denominator: Largest denominator
        zero_probability: Chance of an exact zero

    Returns:
        List of Fractions
    """
    numerators = rng.integers(0, max_numerator + 1, size=count)
    denominators = rng.integers(1, max_denominator + 1, size=count)
    zeros = rng.random(count) < zero_probability
    return [
        Fraction(0) if z else Fraction(int(p), int(q))
        for p, q, z in zip(numerators, denominators, zeros)
    ]


def random_sympoly(rng, degree, chain=True, **kwargs):
    """
    Random non-zero m̃-basis symmetric function of a given degree

    With chain=True the values are sorted so that coefficients never decrease
    down the generation order, which satisfies every dominance inequality and
    leaves the Hessian conditions to decide; otherwise the coefficients are
    independent.

    Args:
        rng: numpy Generator
        degree: Degree d
        chain: Bias the sample towards the dominance-monotone cone
        **kwargs: Passed to random_rationals

    Returns:
        SymPoly in the m̃ basis
    """
    keys = generate_partitions(degree)
    values = random_rationals(rng, len(keys), **kwargs)
    if chain:
        values.sort()
    if not any(values):
        values[-1] = Fraction(1)
    return SymPoly.from_values(degree, Basis.MTILDE, values)


def random_signed_sympoly(rng, degree, negative_probability=0.1, **kwargs):
    """Chain-biased sample with an occasional coefficient flipped negative."""
    f = random_sympoly(rng, degree, **kwargs)
    values = [-v if rng.random() < negative_probability else v for v in f.values()]
    if not any(values):
        values[-1] = Fraction(1)
    return SymPoly.from_values(degree, Basis.MTILDE, values)

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from config import Config
from .exactlinalg import SymMatrix, at_most_one_positive_eigenvalue
from .lorentz import Mode, is_lorentzian
from .partitions import Partition, dominance_covers, generate_partitions
from .symfunc import Basis, convert_basis, to_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegionVerdict:
    """
    Membership in a closed semialgebraic region of Lorentzian coefficients

    Attributes:
        member: Whether the coefficients lie in the region
        failed_inequality: The first violated inequality, written out, or None
    """

    member: bool
    failed_inequality: Optional[str] = None

    def __post_init__(self):
        if self.member != (self.failed_inequality is None):
            raise ValueError("a region verdict fails exactly when it names an inequality")

    def to_dict(self):
        return {"member": self.member, "failedInequality": self.failed_inequality}


MEMBER = RegionVerdict(True)


def _outside(tag):
    logger.debug(f"Outside the region: {tag}")
    return RegionVerdict(False, tag)


def _rationals(*values):
    return [to_rational(v) for v in values]


def _chain(names, values):
    """0 <= v1 <= v2 <= ... as one printed condition."""
    tag = " <= ".join(["0"] + list(names))
    bounds = [Fraction(0)] + list(values)
    if any(lo > hi for lo, hi in zip(bounds, bounds[1:])):
        return tag
    return None


def _theorem_n(mode, minimum, degree):
    if mode.nvars < minimum:
        raise ValueError(
            f"the degree-{degree} closed form needs at least {minimum} variables (n = {mode.nvars})"
        )


def degree2(a, b, mode=None):
    """
    a m̃_2 + b m̃_11 is Lorentzian iff 0 <= a <= b (not both zero)

    The region is the same in every mode with at least two variables.
    """
    mode = mode or Mode.function()
    if not mode.is_function:
        _theorem_n(mode, 2, 2)
    a, b = _rationals(a, b)
    if a == 0 and b == 0:
        return _outside("nonzero")
    failed = _chain("ab", (a, b))
    return _outside(failed) if failed else MEMBER


def degree3(a, b, c, mode=None):
    """
    Membership of a m̃_3 + b m̃_21 + c m̃_111

    Function mode: 0 <= a <= b <= c and ac <= b^2. Polynomial mode in n + 1
    variables (n + 1 >= 3): the chain and ab + (n-1)ac <= nb^2.

    Args:
        a, b, c: Rational coefficients
        mode: Mode

    Returns:
        RegionVerdict
    """
    mode = mode or Mode.function()
    a, b, c = _rationals(a, b, c)
    if a == 0 and b == 0 and c == 0:
        return _outside("nonzero")
    failed = _chain("abc", (a, b, c))
    if failed:
        return _outside(failed)

    if mode.is_function:
        if a * c > b * b:
            return _outside("ac <= b^2")
        return MEMBER

    _theorem_n(mode, 3, 3)
    n = mode.nvars - 1
    if a * b + (n - 1) * a * c > n * b * b:
        return _outside("ab + (n-1)ac <= nb^2")
    return MEMBER


def degree3_nschur(a, b, c, mode=None):
    """
    Membership of a Ns_3 + b Ns_21 + c Ns_111

    a, b, b + c >= 0 and ac - (1/n) a (b + c) <= b^2, where n + 1 is the
    number of variables; function mode is the limit ac <= b^2.
    """
    mode = mode or Mode.function()
    a, b, c = _rationals(a, b, c)
    if a == 0 and b == 0 and c == 0:
        return _outside("nonzero")
    for tag, value in (("a >= 0", a), ("b >= 0", b), ("b + c >= 0", b + c)):
        if value < 0:
            return _outside(tag)

    if mode.is_function:
        if a * c > b * b:
            return _outside("ac <= b^2")
        return MEMBER

    _theorem_n(mode, 3, 3)
    n = mode.nvars - 1
    if a * c - a * (b + c) / n > b * b:
        return _outside("ac - (1/n)a(b + c) <= b^2")
    return MEMBER


def degree4(a, b, c, d, e, mode=None):
    """
    Membership of a m̃_4 + b m̃_31 + c m̃_22 + d m̃_211 + e m̃_1111

    Args:
        a, b, c, d, e: Rational coefficients
        mode: Function mode, or polynomial mode with n >= 4

    Returns:
        RegionVerdict
    """
    mode = mode or Mode.function()
    a, b, c, d, e = _rationals(a, b, c, d, e)
    if not any((a, b, c, d, e)):
        return _outside("nonzero")
    failed = _chain("abcde", (a, b, c, d, e))
    if failed:
        return _outside(failed)

    if mode.is_function:
        if a * d > b * b:
            return _outside("ad <= b^2")
        if (b + c) * e > 2 * d * d:
            return _outside("(b+c)e <= 2d^2")
        return MEMBER

    _theorem_n(mode, 4, 4)
    n = mode.nvars
    if a * (c + d * (n - 2)) > (n - 1) * b * b:
        return _outside("a(c+d(n-2)) <= (n-1)b^2")
    if (b + c) * (d + e * (n - 3)) > 2 * (n - 2) * d * d:
        return _outside("(b+c)(d+e(n-3)) <= 2(n-2)d^2")
    return MEMBER


def degree5_fn(a, b, c, d, e, f, g):
    """
    Membership of the quintic a m̃_5 + b m̃_41 + c m̃_32 + d m̃_311 + e m̃_221 + f m̃_2111 + g m̃_11111

    Function mode only; the last condition is the determinant of the reduced
    Hessian at μ = (2,1).
    """
    a, b, c, d, e, f, g = _rationals(a, b, c, d, e, f, g)
    if not any((a, b, c, d, e, f, g)):
        return _outside("nonzero")
    failed = _chain("abcdefg", (a, b, c, d, e, f, g))
    if failed:
        return _outside(failed)

    if a * d > b * b:
        return _outside("ad <= b^2")
    if (d + 2 * e) * g > 3 * f * f:
        return _outside("(d+2e)g <= 3f^2")
    if b * f > d * d:
        return _outside("bf <= d^2")
    if c * f > e * e:
        return _outside("cf <= e^2")
    det = b * (c * f - e * e) - c * (c * f - d * e) + d * (c * e - c * d)
    if det < 0:
        return _outside("det[[b,c,d],[c,c,e],[d,e,f]] >= 0")
    return MEMBER


def _label(lam):
    return "c" + "".join(str(p) for p in lam)


def _sextic_coefficients(c):
    coeffs = {}
    for key, value in dict(c).items():
        lam = Partition.parse(key) if isinstance(key, str) else Partition(key)
        if lam.weight != 6:
            raise ValueError(f"partition {lam} has weight {lam.weight}, expected 6")
        coeffs[lam] = to_rational(value)
    return {lam: coeffs.get(lam, Fraction(0)) for lam in generate_partitions(6)}


def degree6_fn(c):
    """
    Membership of the sextic Σ c_λ m̃_λ in function mode

    Checks non-negativity, monotonicity along every dominance cover, three
    quadratic inequalities and the signature of the two 3 x 3 matrices
    Q_31 and Q_211.

    Args:
        c: Mapping partition of 6 -> rational; missing partitions are zero

    Returns:
        RegionVerdict
    """
    c = _sextic_coefficients(c)
    if not any(c.values()):
        return _outside("nonzero")
    for lam, value in c.items():
        if value < 0:
            return _outside(f"{_label(lam)} >= 0")
    for lam in generate_partitions(6):
        for mu in dominance_covers(lam):
            if c[mu] < c[lam]:
                return _outside(f"{_label(lam)} <= {_label(mu)}")

    def at(*parts):
        return c[Partition(parts)]

    if at(6) * at(4, 1, 1) > at(5, 1) ** 2:
        return _outside("c6 c411 <= c51^2")
    if at(2, 2, 1, 1) * (at(4, 2) + at(3, 3)) > 2 * at(3, 2, 1) ** 2:
        return _outside("c2211(c42 + c33) <= 2 c321^2")
    if at(1, 1, 1, 1, 1, 1) * (at(3, 1, 1, 1) + 3 * at(2, 2, 1, 1)) > 4 * at(2, 1, 1, 1, 1) ** 2:
        return _outside("c111111(c3111 + 3 c2211) <= 4 c21111^2")

    q31 = SymMatrix.from_rows([
        [at(5, 1), at(4, 2), at(4, 1, 1)],
        [at(4, 2), at(3, 3), at(3, 2, 1)],
        [at(4, 1, 1), at(3, 2, 1), at(3, 1, 1, 1)],
    ])
    q211 = SymMatrix.from_rows([
        [at(4, 1, 1), at(3, 2, 1), at(3, 1, 1, 1)],
        [at(3, 2, 1), (at(3, 2, 1) + at(2, 2, 2)) / 2, at(2, 2, 1, 1)],
        [at(3, 1, 1, 1), at(2, 2, 1, 1), at(2, 1, 1, 1, 1)],
    ])
    for tag, matrix in (("Q31 has one positive eigenvalue", q31), ("Q211 has one positive eigenvalue", q211)):
        ok, subset = at_most_one_positive_eigenvalue(matrix)
        if not ok:
            logger.debug(f"{tag.split()[0]} fails on minor {subset}")
            return _outside(tag)
    return MEMBER


_CLOSED_FORM_MIN_VARS = {2: 2, 3: 3, 4: 4}


def region_verdict(f, mode=None):
    """
    Decide f by the closed form for its degree

    Degrees 5 and 6 have closed forms in function mode only; those
    polynomial-mode queries, degrees outside 2..6 and variable counts below
    a closed form's range go to the general tester, tagged by failure kind.

    Args:
        f: SymPoly in any basis
        mode: Mode

    Returns:
        RegionVerdict
    """
    mode = mode or Mode.function()
    g = convert_basis(f, Basis.MTILDE)
    values = g.values()
    degree = g.degree

    if degree in _CLOSED_FORM_MIN_VARS and (
        mode.is_function or mode.nvars >= _CLOSED_FORM_MIN_VARS[degree]
    ):
        closed = {2: degree2, 3: degree3, 4: degree4}[degree]
        return closed(*values, mode=mode)
    if degree == 5 and mode.is_function:
        return degree5_fn(*values)
    if degree == 6 and mode.is_function:
        return degree6_fn(dict(zip(generate_partitions(6), values)))

    if g.is_zero:
        return _outside("nonzero")
    logger.debug(f"No closed form for degree {degree} in {mode} mode; using the general tester")
    verdict = is_lorentzian(g, mode)
    if verdict.lorentzian:
        return MEMBER
    return _outside(verdict.failure.kind.value)


def simplex_grid(steps):
    """
    Rational points (i, j, k) / steps with i + j + k = steps

    Args:
        steps: Subdivisions per side

    Returns:
        List of (a, b, c) Fraction triples, a outermost
    """
    if steps < 1:
        raise ValueError(f"simplex grid needs at least one step, got {steps}")
    i, j = np.meshgrid(np.arange(steps + 1), np.arange(steps + 1), indexing="ij")
    keep = i + j <= steps
    points = np.stack([i[keep], j[keep], steps - i[keep] - j[keep]], axis=1)
    return [tuple(Fraction(int(v), steps) for v in row) for row in points]


def degree3_region_table(steps=None):
    """
    Sample the degree-3 regions on the simplex a + b + c = 1

    Columns n2 and n5 are polynomial mode with 3 and 6 variables (the cubic
    inequality's n is one less than the variable count); fn is function mode.

    Args:
        steps: Subdivisions per side (default Config.REGION_STEPS)

    Returns:
        pandas DataFrame with columns a, b, c, n2, n5, fn
    """
    steps = Config.REGION_STEPS if steps is None else steps
    modes = {"n2": Mode.polynomial(3), "n5": Mode.polynomial(6), "fn": Mode.function()}
    rows = []
    try:
        for a, b, c in tqdm(simplex_grid(steps), desc="region", disable=not Config.SHOW_PROGRESS):
            row = {"a": str(a), "b": str(b), "c": str(c)}
            for column, mode in modes.items():
                row[column] = degree3(a, b, c, mode).member
            rows.append(row)
    except Exception as e:
        logger.error(f"Error sampling the degree-3 region: {e}")
        raise

    table = pd.DataFrame(rows, columns=["a", "b", "c", "n2", "n5", "fn"])
    logger.info(
        f"✓ Sampled {len(table)} points: "
        + ", ".join(f"{column}={int(table[column].sum())}" for column in modes)
    )
    return table

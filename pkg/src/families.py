import logging
import math
from dataclasses import dataclass

import networkx as nx
import numpy as np
from tqdm import tqdm

from config import Config
from .partitions import Partition, conjugate, dominance_interval
from .symfunc import Basis, DensePoly, SymPoly, convert_basis, from_dense, kostka

logger = logging.getLogger(__name__)


def elementary(d):
    """e_d as a symmetric function: the single term m̃_{1^d}."""
    if d < 1:
        raise ValueError(f"elementary symmetric function needs d >= 1, got {d}")
    return SymPoly(d, Basis.MTILDE, {Partition([1] * d): 1})


def mconvex_generating(lam):
    """
    Σ m̃_μ over the dominance interval [1^d, λ]

    Args:
        lam: Partition λ, the unique maximal element of the support

    Returns:
        SymPoly in the m̃ basis with every coefficient 1 on [1^d, λ]
    """
    lam = Partition(lam)
    return SymPoly(lam.weight, Basis.MTILDE, {mu: 1 for mu in dominance_interval(lam)})


def normalized_schur(lam):
    """Ns_λ = Σ_μ K_{λμ} m̃_μ."""
    lam = Partition(lam)
    return convert_basis(SymPoly(lam.weight, Basis.NSCHUR, {lam: 1}), Basis.MTILDE)


# Ballot numbers and the two-column Schur polynomials


def ballot(k, l):
    """
    Ballot number C_{k,ℓ} = binom(k+ℓ, ℓ) - binom(k+ℓ, ℓ-1)

    Counts standard Young tableaux of shape (k, ℓ). Any negative index gives 0.

    Args:
        k: Length of the first row
        l: Length of the second row, at most k

    Returns:
        Non-negative integer
    """
    if k < 0 or l < 0:
        return 0
    if k < l:
        raise ValueError(f"ballot number needs k >= l (got k={k}, l={l})")
    below = math.comb(k + l, l - 1) if l >= 1 else 0
    return math.comb(k + l, l) - below


def ballot_hessian_inequality(k, l):
    """(k+1)ℓ(k+ℓ-2)² >= k(ℓ-1)(k+ℓ)(k+ℓ-1), the reduced two-column Hessian condition."""
    return (k + 1) * l * (k + l - 2) ** 2 >= k * (l - 1) * (k + l) * (k + l - 1)


def _two_column_shape(s, t):
    return conjugate(Partition((s, t)))


def two_column_quadratic_data(s, t, p):
    """
    Coefficients of the quadratic ∂^μ Ns_γ for γ = (s,t)' and μ = (2^p, 1^q)

    With k = s - p and ℓ = t - p (q = k + ℓ - 2), the variables split into p
    with exponent 2 in μ, q with exponent 1 (x) and the untouched ones (y).
    The quadratic has a on x_i x_j, b on x_i y_j, c1 on y_i y_j and c2 on
    y_i²/2. Each value is cross-checked against the Kostka number it equals
    whenever the content partition exists.

    Args:
        s: Length of the first column
        t: Length of the second column, at most s
        p: Number of exponent-2 variables, at most t

    Returns:
        (a, b, c1, c2) as integers
    """
    if not s >= t >= p >= 0:
        raise ValueError(f"two-column data needs s >= t >= p >= 0 (got s={s}, t={t}, p={p})")
    k, l = s - p, t - p
    q = k + l - 2
    a = ballot(k - 2, l - 2)
    b = ballot(k - 1, l - 1)
    c1 = ballot(k, l)
    c2 = b

    if q >= 0:
        gamma = _two_column_shape(s, t)
        checks = [
            ("b", b, [2] * (p + 1) + [1] * q),
            ("c1", c1, [2] * p + [1] * (q + 2)),
        ]
        if q >= 2:
            checks.append(("a", a, [2] * (p + 2) + [1] * (q - 2)))
        for name, value, content in checks:
            expected = kostka(gamma, Partition(content))
            if value != expected:
                raise ValueError(
                    f"ballot value {name}={value} disagrees with K_{{{gamma},{Partition(content)}}}={expected}"
                )
    return a, b, c1, c2


def two_column_inequalities(s, t, p):
    """
    The two-column Hessian conditions at μ = (2^p, 1^q)

    Returns:
        Dict inequality -> whether it holds; c2 <= c1 applies for ℓ >= 1 and
        (q-1)a c1 <= q b² for ℓ >= 2
    """
    a, b, c1, c2 = two_column_quadratic_data(s, t, p)
    k, l = s - p, t - p
    q = k + l - 2
    results = {}
    if l >= 1:
        results["c2 <= c1"] = c2 <= c1
    if l >= 2:
        results["(q-1)a c1 <= q b^2"] = (q - 1) * a * c1 <= q * b * b
    return results


# Dyck paths, indifference graphs and chromatic symmetric functions


@dataclass(frozen=True)
class DyckPath:
    """
    Lattice path of N and E steps from (0,0) to (n,n) that never goes below the diagonal

    Attributes:
        steps: Step string over {N, E}
    """

    steps: str

    def __post_init__(self):
        if set(self.steps) - {"N", "E"}:
            raise ValueError(f"Dyck path '{self.steps}' may only contain N and E steps")
        height = 0
        for step in self.steps:
            height += 1 if step == "N" else -1
            if height < 0:
                raise ValueError(f"Dyck path '{self.steps}' goes below the diagonal")
        if height != 0:
            raise ValueError(f"Dyck path '{self.steps}' does not end on the diagonal")

    @classmethod
    def parse(cls, text):
        return cls(text.strip().upper())

    @property
    def semilength(self):
        return len(self.steps) // 2

    def heights(self):
        """h_i: number of N steps taken before the i-th E step."""
        found, north = [], 0
        for step in self.steps:
            if step == "N":
                north += 1
            else:
                found.append(north)
        return found

    def __str__(self):
        return self.steps


def dyck_paths(n):
    """All Dyck paths of semilength n, N-first lexicographic order."""
    if n < 0:
        raise ValueError(f"semilength must be non-negative, got {n}")
    paths = []

    def extend(prefix, north, east):
        if north == east == n:
            paths.append(DyckPath(prefix))
            return
        if north < n:
            extend(prefix + "N", north + 1, east)
        if east < north:
            extend(prefix + "E", north, east + 1)

    extend("", 0, 0)
    return paths


@dataclass(frozen=True)
class IndifferenceGraph:
    """
    Graph on [n] read off a Dyck path

    Attributes:
        nvertices: Vertex count n
        edges: Frozenset of pairs (i, j), 1 <= i < j <= n
    """

    nvertices: int
    edges: frozenset

    @property
    def graph(self):
        g = nx.Graph()
        g.add_nodes_from(range(1, self.nvertices + 1))
        g.add_edges_from(self.edges)
        return g


def indifference_graph(path):
    """
    Indifference graph G(d) of a Dyck path

    The square in column i and row j (i < j) lies between the path and the
    diagonal exactly when j <= h_i, so those pairs are the edges.
    """
    heights = path.heights()
    edges = frozenset(
        (i, j)
        for i, h in enumerate(heights, start=1)
        for j in range(i + 1, h + 1)
    )
    return IndifferenceGraph(path.semilength, edges)


def is_abelian(G):
    """G is cobipartite: its complement is bipartite."""
    graph = G.graph if isinstance(G, IndifferenceGraph) else G
    return nx.is_bipartite(nx.complement(graph))


def abelian_dyck_paths(n):
    return [path for path in dyck_paths(n) if is_abelian(indifference_graph(path))]


def chromatic_symmetric(G, n):
    """
    Chromatic symmetric polynomial X_G in n variables by brute force

    Sums x_κ(1)···x_κ(|V|) over every proper coloring κ: V -> [n]. Colorings
    are enumerated as integer arrays, one chunk per color of the first vertex.

    Args:
        G: IndifferenceGraph or networkx graph
        n: Number of colors (variables)

    Returns:
        (DensePoly, SymPoly in the m basis read off the expansion)
    """
    graph = G.graph if isinstance(G, IndifferenceGraph) else G
    vertices = sorted(graph.nodes)
    size = len(vertices)
    limit = Config.CHROMATIC_MAX_VERTICES
    if size > limit or n > limit:
        raise ValueError(
            f"brute-force colorings are limited to {limit} vertices and colors "
            f"(got {size} vertices, {n} colors); raise SYMLOR_CHROMATIC_MAX_VERTICES"
        )
    if size == 0 or n < 1:
        raise ValueError("chromatic symmetric polynomial needs at least one vertex and one color")

    position = {v: i for i, v in enumerate(vertices)}
    edges = [(position[u], position[v]) for u, v in graph.edges]
    logger.info(f"Enumerating {n ** size} colorings of a {size}-vertex graph with {len(edges)} edges")

    try:
        if size == 1:
            rest = np.zeros((1, 0), dtype=int)
        else:
            rest = np.indices((n,) * (size - 1)).reshape(size - 1, -1).T
        counts = {}
        for first in tqdm(range(n), desc="colorings", disable=not Config.SHOW_PROGRESS):
            colorings = np.hstack([np.full((len(rest), 1), first), rest])
            proper = np.ones(len(colorings), dtype=bool)
            for u, v in edges:
                proper &= colorings[:, u] != colorings[:, v]
            exponents = (colorings[proper][:, :, None] == np.arange(n)).sum(axis=1)
            if len(exponents) == 0:
                continue
            rows, multiplicity = np.unique(exponents, axis=0, return_counts=True)
            for row, m in zip(rows, multiplicity):
                key = tuple(int(v) for v in row)
                counts[key] = counts.get(key, 0) + int(m)

        dense = DensePoly(n, size, counts)
        symmetric = from_dense(dense)
        logger.info(f"✓ X_G has {len(dense.terms)} monomials, m-support {[str(l) for l in symmetric.support()]}")
        return dense, symmetric

    except Exception as e:
        logger.error(f"Error enumerating colorings: {e}")
        raise


def chromatic_r_numbers(X, nvertices):
    """
    r_i = c_(2^i 1^(|V|-2i)) / (i! (|V|-2i)!) from an m-basis X_G

    Needs X read off in at least |V| variables so that no partition is lost.

    Args:
        X: SymPoly (any basis) of degree |V|
        nvertices: Vertex count |V|

    Returns:
        List [r_0, r_1, ...] of non-negative integers
    """
    m = convert_basis(X, Basis.MONOMIAL)
    if m.degree != nvertices:
        raise ValueError(f"X_G has degree {m.degree} but the graph has {nvertices} vertices")
    shapes = {
        Partition([2] * i + [1] * (nvertices - 2 * i)): i for i in range(nvertices // 2 + 1)
    }
    stray = [str(lam) for lam in m.support() if lam not in shapes]
    if stray:
        raise ValueError(f"X_G is supported outside the shapes 2^i 1^(n-2i): {stray}")

    r = []
    for lam, i in shapes.items():
        value = m.coefficient(lam) / (math.factorial(i) * math.factorial(nvertices - 2 * i))
        if value < 0 or value.denominator != 1:
            raise ValueError(f"r_{i} = {value} is not a non-negative integer")
        r.append(int(value))
    return r

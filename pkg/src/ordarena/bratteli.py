"""Exact construction and verification of the inductive systems presenting
the step-function groups as limits of (Z^k, Z^k_+), plus diagram export.

For each dimension k the level data consists of the matrix A_n (a_n on the
diagonal, 1 elsewhere) scaled by 1/a_n! into C_n, a closed-form inverse,
the integer b_n, and the connecting matrix B computed both from its closed
form and as C_{n+1}^{-1} C_n; the two routes must agree exactly and every
derived integrality or positivity failure is fatal, because the choice
a_0 = k+2, a_{n+1} = 2(a_n+1) - k + 1 guarantees them.

The omega-level stack glues the per-dimension systems through the
last-coordinate duplication map D_k, choosing levels n_k so that every
positive generator has a strictly positive integer preimage.  Limits over
infinite fundamental sequences are represented structurally (level spaces,
collapse thresholds, reuse of homeomorphic predecessors): integer matrix
data exists only where the stages are finite, and the general case
composes those same shapes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ordarena import ordinal
from ordarena.linalg import Matrix, identity, mat_eq, mat_inv, mat_mul, mat_vec
from ordarena.ordinal import Ord


class BratteliError(ValueError):
    """Fatal arithmetic mismatch; indicates an implementation bug."""


def a_seq(k: int, n_max: int) -> list[int]:
    """a_0 = k + 2, then a_n = 2(a_{n-1} + 1) - k + 1."""
    if k < 1:
        raise ValueError("k must be at least 1")
    seq = [k + 2]
    for _ in range(n_max):
        seq.append(2 * (seq[-1] + 1) - k + 1)
    return seq


def _matrix_a(k: int, a: int) -> Matrix:
    return [[Fraction(a if i == j else 1) for j in range(k)] for i in range(k)]


def _matrix_a_inverse_closed_form(k: int, a: int) -> Matrix:
    den = Fraction(a * a + a * (k - 2) - k + 1)
    return [[Fraction(a + k - 2 if i == j else -1) / den for j in range(k)] for i in range(k)]


@dataclass(frozen=True)
class LevelData:
    k: int
    n: int
    a_n: int
    a_next: int
    matrix: Matrix = field(compare=False)
    matrix_inverse: Matrix = field(compare=False)
    scaled: Matrix = field(compare=False)          # C_n = A_n / a_n!
    b_n: int = 0
    connecting: Matrix = field(default=None, compare=False)   # B_{n,n+1}


def level(k: int, n: int) -> LevelData:
    """All exact data of one level, with every closed form cross-verified."""
    seq = a_seq(k, n + 1)
    a_n, a_next = seq[n], seq[n + 1]
    if a_next + k - 1 != 2 * (a_n + 1):
        raise BratteliError("recursion identity a_{n+1} + k - 1 = 2(a_n + 1) failed")

    big_a = _matrix_a(k, a_n)
    inv_closed = _matrix_a_inverse_closed_form(k, a_n)
    inv_generic = mat_inv(big_a)
    if not mat_eq(inv_closed, inv_generic):
        raise BratteliError("closed-form inverse disagrees with exact inversion")
    if not mat_eq(mat_mul(inv_closed, big_a), identity(k)):
        raise BratteliError("inverse does not invert")

    fact_n, fact_next = factorial(a_n), factorial(a_next)
    scaled = [[x / fact_n for x in row] for row in big_a]

    b_exact = Fraction(fact_next, fact_n * (a_next * a_next + a_next * (k - 2) - k + 1))
    if b_exact.denominator != 1:
        raise BratteliError(f"b_{n} = {b_exact} is not an integer for k={k}")
    b_n = int(b_exact)

    diag = b_n * (a_n * (a_next + k - 2) - k + 1)
    off = b_n * (a_next - a_n)
    closed_b = [[Fraction(diag if i == j else off) for j in range(k)] for i in range(k)]

    next_scaled = [[x / fact_next for x in row] for row in _matrix_a(k, a_next)]
    product_b = mat_mul(mat_inv(next_scaled), scaled)
    if not mat_eq(closed_b, product_b):
        raise BratteliError("closed-form B disagrees with C_{n+1}^{-1} C_n")
    if any(x <= 0 for row in closed_b for x in row):
        raise BratteliError("connecting matrix must be strictly positive")
    if not mat_eq(mat_mul(next_scaled, closed_b), scaled):
        raise BratteliError("commuting triangle C_{n+1} B = C_n failed")

    return LevelData(k, n, a_n, a_next, big_a, inv_closed, scaled, b_n, closed_b)


def theta(k: int, n: int) -> Matrix:
    """The embedding matrix C_n of level n."""
    fact = factorial(a_seq(k, n)[n])
    return [[x / fact for x in row] for row in _matrix_a(k, a_seq(k, n)[n])]


def preimage(k: int, n: int, x: list[int]) -> list[int]:
    """Integer y with C_{n+1} y = x / a_n!; integrality is guaranteed and any
    failure is fatal."""
    lv = level(k, n)
    fact_n = factorial(lv.a_n)
    next_inv = mat_inv(theta(k, n + 1))
    y = [v / fact_n for v in mat_vec(next_inv, [Fraction(v) for v in x])]
    if any(v.denominator != 1 for v in y):
        raise BratteliError(f"preimage is not integral: {y}")
    y_int = [int(v) for v in y]
    image = mat_vec(theta(k, n + 1), [Fraction(v) for v in y_int])
    if image != [Fraction(v, fact_n) for v in x]:
        raise BratteliError("preimage does not map back to x / a_n!")
    return y_int


def positive_preimage(k: int, n: int, x: list[int], search_cap: int = 64) -> tuple[int, list[int]]:
    """(m, y') with strictly positive integer y' and C_{m+1}((a_m!/a_n!) y')
    = x / a_n!, where m comes from the growth inequality on the a-sequence."""
    if any(v <= 0 for v in x):
        raise ValueError("all entries of x must be strictly positive")
    total = sum(x)
    threshold = max(Fraction(total - xi, xi) for xi in x) - k + 2
    seq = a_seq(k, n + search_cap + 1)
    m = None
    for cand in range(n, n + search_cap):
        if seq[cand + 1] > threshold:
            m = cand
            break
    if m is None:
        raise BratteliError("no level satisfied the growth inequality within the cap")
    lv = level(k, m)
    a_next = lv.a_next
    y = [lv.b_n * ((a_next + k - 2) * xi - (total - xi)) for xi in x]
    if any(v <= 0 for v in y):
        raise BratteliError(f"positive preimage has a non-positive entry: {y}")
    scale = Fraction(factorial(lv.a_n), factorial(seq[n]))
    if scale.denominator != 1:
        raise BratteliError("factorial ratio a_m!/a_n! is not integral")
    scaled = [int(scale) * v for v in y]
    image = mat_vec(theta(k, m + 1), [Fraction(v) for v in scaled])
    if image != [Fraction(v, factorial(seq[n])) for v in x]:
        raise BratteliError("scaled positive preimage does not map back to x / a_n!")
    return m, y


# -- the omega-level stack -------------------------------------------------------


def duplication_matrix(k: int) -> Matrix:
    """(k+1) x k matrix repeating the last coordinate."""
    rows = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    rows.append([Fraction(int(j == k - 1)) for j in range(k)])
    return rows


@dataclass
class StackedSystem:
    k_max: int
    chosen_levels: dict[int, int]                  # k -> n_k
    connecting: dict[int, Matrix]                  # k -> E_{k,k+1}, (k+1) x k


def stack_omega(k_max: int, seed_level: int = 1, search_cap: int = 50,
                value_cap: int = 20_000) -> StackedSystem:
    """Glue the per-dimension systems along duplication maps; each level
    n_{k+1} is the first making every generator's preimage a strictly
    positive integer vector."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    chosen = {1: seed_level}
    connecting: dict[int, Matrix] = {}
    for k in range(1, k_max):
        d_k = duplication_matrix(k)
        a_here = a_seq(k, chosen[k])[chosen[k]]
        fact_here = factorial(a_here)
        lhs_int = mat_mul(d_k, _matrix_a(k, a_here))       # integer part of D_k C
        big = k + 1
        seq = a_seq(big, search_cap)
        found = None
        for cand in range(search_cap):
            a_cand = seq[cand]
            if a_cand > value_cap:
                break
            den = a_cand * a_cand + a_cand * (big - 2) - big + 1
            num = [[Fraction(a_cand + big - 2 if i == j else -1) for j in range(big)]
                   for i in range(big)]
            scalar = Fraction(factorial(a_cand), fact_here * den)
            e = [[scalar * x for x in row] for row in mat_mul(num, lhs_int)]
            if all(x.denominator == 1 and x > 0 for row in e for x in row):
                found = (cand, e)
                break
        if found is None:
            raise BratteliError(
                f"no level below the caps gives positive integer preimages of the "
                f"generators of Z^{k}_+")
        cand, e = found
        lhs = [[x / fact_here for x in row] for row in lhs_int]
        if not mat_eq(mat_mul(theta(big, cand), e), lhs):
            raise BratteliError("defining identity C^(k+1) E = D_k C^(k) failed")
        chosen[k + 1] = cand
        connecting[k] = e
    return StackedSystem(k_max, chosen, connecting)


# -- limit stages over fundamental sequences ---------------------------------------


@dataclass(frozen=True)
class CollapseMap:
    """Restriction map between successor spaces: keep values up to the
    threshold, extend constantly above it."""

    threshold: Ord


@dataclass
class LimitLevel:
    space: Ord                                # the successor ordinal alpha_n + 1
    finite_dim: int | None                    # len of the space when finite
    ms: tuple[str, int]                       # homeomorphism invariant
    reuses: int | None = None                 # index of a homeomorphic earlier level


@dataclass
class LimitDiagram:
    supremum: Ord
    levels: list[LimitLevel]
    maps: list[CollapseMap]
    matrices: list[Matrix] | None = None      # concrete when all levels are finite


def limit_diagram(beta: Ord, fundamental: list[Ord], depth: int) -> LimitDiagram:
    """Stacked presentation of the group over [0, beta] along a fundamental
    sequence; concrete duplication matrices when the stages are finite,
    structural shape data otherwise."""
    if not beta.is_limit:
        raise ValueError("beta must be a limit ordinal")
    fundamental = list(fundamental)[:depth] if depth else []
    for i in range(len(fundamental) - 1):
        if not fundamental[i] < fundamental[i + 1]:
            raise ValueError("fundamental sequence must be strictly increasing")
    for a in fundamental:
        if not a < beta:
            raise ValueError("fundamental sequence must stay below its supremum")

    levels: list[LimitLevel] = []
    maps: list[CollapseMap] = []
    seen_ms: dict[tuple[str, int], int] = {}
    all_finite = True
    for i, alpha in enumerate(fundamental):
        space = ordinal.succ(alpha)
        inv = ordinal.ms_invariant(space)
        key = (ordinal.format_ord(inv[0]), inv[1])
        reuse = seen_ms.get(key)
        if reuse is None:
            seen_ms[key] = i
        dim = space.to_int() if space.is_finite else None
        if dim is None:
            all_finite = False
        levels.append(LimitLevel(space, dim, key, reuse))
        if i + 1 < len(fundamental):
            maps.append(CollapseMap(alpha))

    matrices = None
    if all_finite and levels:
        matrices = []
        for i in range(len(levels) - 1):
            src = levels[i].finite_dim
            dst = levels[i + 1].finite_dim
            threshold = maps[i].threshold.to_int()
            rows = []
            for p in range(dst):
                q = min(p, threshold)
                rows.append([Fraction(int(j == q)) for j in range(src)])
            matrices.append(rows)
    return LimitDiagram(beta, levels, maps, matrices)


# -- diagram assembly and export ----------------------------------------------------


@dataclass
class Diagram:
    """Leveled multigraph: vertex counts per level and edge-multiplicity
    matrices (rows = target vertices, columns = source vertices)."""

    vertex_counts: list[int]
    edges: list[list[list[int]]]
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.edges and len(self.edges) != len(self.vertex_counts) - 1:
            raise ValueError("need one edge matrix per adjacent level pair")
        for i, m in enumerate(self.edges):
            if len(m) != self.vertex_counts[i + 1] or \
                    any(len(row) != self.vertex_counts[i] for row in m):
                raise ValueError(f"edge matrix {i} has the wrong shape")
        if not self.labels:
            self.labels = [f"L{i}" for i in range(len(self.vertex_counts))]


def diagram_for_dimension(k: int, levels: int) -> Diagram:
    """Diagram of the dimension-k system: edge multiplicities are the
    connecting-matrix entries."""
    edges = []
    for n in range(levels):
        lv = level(k, n)
        edges.append([[int(x) for x in row] for row in lv.connecting])
    return Diagram([k] * (levels + 1), edges)


def diagram_for_stack(stack: StackedSystem) -> Diagram:
    counts = list(range(1, stack.k_max + 1))
    edges = [[[int(x) for x in row] for row in stack.connecting[k]]
             for k in range(1, stack.k_max)]
    return Diagram(counts, edges)


def export(diagram: Diagram, fmt: str) -> str:
    if fmt.upper() == "DOT":
        lines = ["digraph bratteli {", "  rankdir=TB;"]
        for lvl, count in enumerate(diagram.vertex_counts):
            for i in range(count):
                lines.append(f"  L{lvl}_{i} [shape=circle];")
        for lvl, matrix in enumerate(diagram.edges):
            for j, row in enumerate(matrix):
                for i, mult in enumerate(row):
                    if mult:
                        lines.append(f"  L{lvl}_{i} -> L{lvl + 1}_{j} [label={mult}];")
        lines.append("}")
        return "\n".join(lines)
    if fmt.upper() == "JSON":
        return json.dumps({
            "levels": [{"vertices": c, "label": diagram.labels[i]}
                       for i, c in enumerate(diagram.vertex_counts)],
            "edges": diagram.edges,
        }, indent=2)
    raise ValueError(f"unknown format {fmt!r}")


def parse_diagram(text: str) -> Diagram:
    data = json.loads(text)
    return Diagram(
        [lvl["vertices"] for lvl in data["levels"]],
        [[[int(x) for x in row] for row in m] for m in data["edges"]],
        [lvl["label"] for lvl in data["levels"]],
    )

"""Rational step functions on clopen interval partitions of a successor
ordinal space [0, top], with the cellwise order and the strict order.

A partition is coded by its breakpoints 0 = b_0 < ... < b_k = top; the
cells are [0, b_1], [b_1+1, b_2], ..., [b_{k-1}+1, b_k].  A step function
holds one rational per cell.  The canonical form merges adjacent equal
values, which makes it the minimal partition carrying the function.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from ordarena import ordinal
from ordarena.ordinal import Ord, OrdinalError


class Order(enum.Enum):
    LEQ = "leq"   # cellwise <=
    LL = "ll"     # equal, or cellwise strictly <


@dataclass(frozen=True)
class IntervalPartition:
    """Breakpoints 0 = b_0 < ... < b_k = top of a partition of [0, top]."""

    breakpoints: tuple[Ord, ...]

    def __post_init__(self):
        bps = self.breakpoints
        if len(bps) < 2:
            raise ValueError("partition needs breakpoints 0 = b_0 < ... < b_k = top with k >= 1")
        if bps[0] != ordinal.ZERO:
            raise ValueError("first breakpoint must be 0")
        for i in range(len(bps) - 1):
            if not bps[i] < bps[i + 1]:
                raise ValueError("breakpoints must be strictly increasing")

    @property
    def top(self) -> Ord:
        return self.breakpoints[-1]

    @property
    def cell_count(self) -> int:
        return len(self.breakpoints) - 1

    def cell_index(self, x: Ord) -> int:
        """Index of the cell containing the point x."""
        if x > self.top:
            raise ValueError(f"point {x} outside space [0, {self.top}]")
        below = sum(1 for b in self.breakpoints if b < x)
        return max(0, below - 1)


@dataclass(frozen=True)
class StepFunction:
    partition: IntervalPartition
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.partition.cell_count:
            raise ValueError("value count must equal cell count")

    @property
    def top(self) -> Ord:
        return self.partition.top

    def value_at(self, x: Ord) -> Fraction:
        return self.values[self.partition.cell_index(x)]

    def canonical(self) -> "StepFunction":
        bps = list(self.partition.breakpoints)
        vals = list(self.values)
        i = 0
        while i < len(vals) - 1:
            if vals[i] == vals[i + 1]:
                del bps[i + 1]
                del vals[i]
            else:
                i += 1
        return StepFunction(IntervalPartition(tuple(bps)), tuple(vals))

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.partition.breakpoints == b.partition.breakpoints and a.values == b.values

    def __hash__(self):
        c = self.canonical()
        return hash((c.partition.breakpoints, c.values))

    def __add__(self, other: "StepFunction") -> "StepFunction":
        f, g = refine(self, other)
        return StepFunction(f.partition, tuple(a + b for a, b in zip(f.values, g.values)))

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        f, g = refine(self, other)
        return StepFunction(f.partition, tuple(a - b for a, b in zip(f.values, g.values)))

    def __neg__(self) -> "StepFunction":
        return StepFunction(self.partition, tuple(-v for v in self.values))

    def scale(self, c) -> "StepFunction":
        c = Fraction(c)
        return StepFunction(self.partition, tuple(c * v for v in self.values))

    def to_json(self) -> dict:
        return {
            "ambient": ordinal.format_ord(self.top),
            "breakpoints": [ordinal.format_ord(b) for b in self.partition.breakpoints],
            "values": [str(v) for v in self.values],
        }


def step(breakpoints, values) -> StepFunction:
    bps = tuple(b if isinstance(b, Ord) else ordinal.parse(str(b)) for b in breakpoints)
    vals = tuple(Fraction(v) for v in values)
    return StepFunction(IntervalPartition(bps), vals).canonical()


def constant(value, top: Ord) -> StepFunction:
    return StepFunction(IntervalPartition((ordinal.ZERO, top)), (Fraction(value),))


def from_json(data: dict) -> StepFunction:
    return step(data["breakpoints"], [Fraction(v) for v in data["values"]])


def refine(f: StepFunction, g: StepFunction) -> tuple[StepFunction, StepFunction]:
    """Rewrite both functions on the union of their breakpoints."""
    if f.top != g.top:
        raise OrdinalError(f"ambient mismatch: {f.top} vs {g.top}")
    merged = sorted(set(f.partition.breakpoints) | set(g.partition.breakpoints))
    part = IntervalPartition(tuple(merged))
    fv = tuple(f.value_at(merged[i + 1]) for i in range(len(merged) - 1))
    gv = tuple(g.value_at(merged[i + 1]) for i in range(len(merged) - 1))
    return StepFunction(part, fv), StepFunction(part, gv)


def refine_many(fns: list[StepFunction]) -> list[StepFunction]:
    if not fns:
        return []
    top = fns[0].top
    if any(f.top != top for f in fns):
        raise OrdinalError("ambient mismatch")
    merged = sorted(set().union(*(f.partition.breakpoints for f in fns)))
    part = IntervalPartition(tuple(merged))
    out = []
    for f in fns:
        out.append(StepFunction(part, tuple(f.value_at(merged[i + 1]) for i in range(len(merged) - 1))))
    return out


def compare(f: StepFunction, g: StepFunction, order: Order = Order.LEQ) -> bool:
    fa, ga = refine(f, g)
    if order is Order.LEQ:
        return all(a <= b for a, b in zip(fa.values, ga.values))
    if f == g:
        return True
    return all(a < b for a, b in zip(fa.values, ga.values))


def simplicity_witness(g: StepFunction, f: StepFunction) -> int:
    """n with -n*g << f << n*g, for g strictly positive.

    This witnesses that every non-zero positive element of the strict-order
    group is an order unit.  n = floor(max|f| / min g) + 1, re-verified.
    """
    gc = g.canonical()
    if not gc.values or any(v <= 0 for v in gc.values):
        raise ValueError("g must be strictly positive (0 << g, g != 0)")
    eps_val = min(gc.values)
    big = max((abs(v) for v in f.values), default=Fraction(0))
    n = int(big / eps_val) + 1
    ng = g.scale(n)
    assert compare(-ng, f, Order.LL) and compare(f, ng, Order.LL), "witness failed re-verification"
    return n


def riesz_interpolate(x0: StepFunction, x1: StepFunction, y0: StepFunction, y1: StepFunction) -> StepFunction:
    """z with x_i <= z <= y_j, given x_i <= y_j for all four pairs."""
    for xi in (x0, x1):
        for yj in (y0, y1):
            if not compare(xi, yj, Order.LEQ):
                raise ValueError("interpolation premise x_i <= y_j fails")
    rx0, rx1, ry0, ry1 = refine_many([x0, x1, y0, y1])
    z = StepFunction(rx0.partition, tuple(max(a, b) for a, b in zip(rx0.values, rx1.values)))
    for xi in (x0, x1):
        assert compare(xi, z, Order.LEQ)
    for yj in (y0, y1):
        assert compare(z, yj, Order.LEQ)
    return z.canonical()


def unperforation_check(f: StepFunction, n: int) -> bool:
    """Evaluates the implication (n*f >= 0 => f >= 0); always true here."""
    if n <= 0:
        raise ValueError("n must be positive")
    zero = constant(0, f.top)
    if not compare(zero, f.scale(n), Order.LEQ):
        return True
    return compare(zero, f, Order.LEQ)


@dataclass(frozen=True)
class PartitionIso:
    """Value-transporting isomorphism S(src) -> S(dst) for partitions with
    equally many breakpoints.  Unital and order-preserving both ways."""

    src: IntervalPartition
    dst: IntervalPartition

    def __call__(self, f: StepFunction) -> StepFunction:
        fc = f.canonical()
        if not set(fc.partition.breakpoints) <= set(self.src.breakpoints):
            raise ValueError("function does not belong to the source step subgroup")
        vals = tuple(f.value_at(self.src.breakpoints[i + 1]) for i in range(self.src.cell_count))
        return StepFunction(self.dst, vals).canonical()

    def inverse(self) -> "PartitionIso":
        return PartitionIso(self.dst, self.src)


def partition_iso(src: IntervalPartition, dst: IntervalPartition) -> PartitionIso:
    if len(src.breakpoints) != len(dst.breakpoints):
        raise ValueError("breakpoint counts differ")
    return PartitionIso(src, dst)


def random_step_function(rng, top: Ord, max_cells: int = 3, value_pool=None) -> StepFunction:
    """Seeded random element of the step-function group on [0, top]."""
    pts = {ordinal.ZERO, top}
    for _ in range(rng.randrange(max_cells)):
        pts.add(ordinal.random_below(rng, top))
    bps = tuple(sorted(pts))
    if value_pool is None:
        vals = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(len(bps) - 1)]
    else:
        vals = [rng.choice(value_pool) for _ in range(len(bps) - 1)]
    return StepFunction(IntervalPartition(bps), tuple(Fraction(v) for v in vals)).canonical()

"""Exact feasibility of homogeneous linear inequality systems via
Fourier-Motzkin elimination, used for polyhedral cone inclusion checks.

A system is a list of (coefficients, strict) rows, each meaning
``coeffs . c > 0`` (strict) or ``coeffs . c >= 0``.  Eliminating every
variable leaves only constant constraints; the system is feasible iff no
``0 > 0`` row survives.  Intermediate row counts are capped: the caller
falls back to a bounded-enumeration oracle when the cap trips.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Row = tuple[tuple[Fraction, ...], bool]


class ConeBlowupError(RuntimeError):
    """Raised when elimination exceeds the configured row cap."""


def _normalize(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    nums = [c.numerator for c in coeffs]
    dens = [c.denominator for c in coeffs]
    common_den = 1
    for d in dens:
        common_den = common_den * d // gcd(common_den, d)
    ints = [n * (common_den // d) for n, d in zip(nums, dens)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints)


def feasible(rows: list[Row], nvars: int, cap: int = 4000) -> bool:
    """True iff some c in Q^nvars satisfies every row."""
    system = {( _normalize(coeffs), strict) for coeffs, strict in rows}
    for _ in range(nvars):
        # contradiction check on rows that are already constant
        for coeffs, strict in system:
            if strict and all(c == 0 for c in coeffs):
                return False
        # pick the variable minimizing the pos*neg product
        remaining = [j for j in range(nvars) if any(c[j] != 0 for c, _ in system)]
        if not remaining:
            break
        def cost(j):
            pos = sum(1 for c, _ in system if c[j] > 0)
            neg = sum(1 for c, _ in system if c[j] < 0)
            return pos * neg
        var = min(remaining, key=cost)
        keep: set[Row] = set()
        pos_rows: list[Row] = []
        neg_rows: list[Row] = []
        for coeffs, strict in system:
            if coeffs[var] > 0:
                pos_rows.append((coeffs, strict))
            elif coeffs[var] < 0:
                neg_rows.append((coeffs, strict))
            else:
                keep.add((coeffs, strict))
        for pc, ps in pos_rows:
            for nc, ns in neg_rows:
                combo = tuple(pc[j] * (-nc[var]) + nc[j] * pc[var] for j in range(nvars))
                keep.add((_normalize(combo), ps or ns))
                if len(keep) > cap:
                    raise ConeBlowupError(f"row cap {cap} exceeded")
        system = keep
    for coeffs, strict in system:
        if strict and all(c == 0 for c in coeffs):
            return False
    return True


def implies(rows: list[Row], target: Row, nvars: int, cap: int = 4000) -> bool:
    """True iff every solution of ``rows`` satisfies ``target``."""
    coeffs, strict = target
    negated = (tuple(-c for c in coeffs), not strict)
    return not feasible(rows + [negated], nvars, cap)


def cones_equal(a_rows: list[tuple[Fraction, ...]], b_rows: list[tuple[Fraction, ...]],
                nvars: int, strict: bool, cap: int = 4000) -> bool:
    """Equality of {c : A c > 0 cellwise} (strict) or {c : A c >= 0} with the
    corresponding B-side set, by double inclusion."""
    sys_a: list[Row] = [(r, strict) for r in a_rows]
    sys_b: list[Row] = [(r, strict) for r in b_rows]
    for target in sys_b:
        if not implies(sys_a, target, nvars, cap):
            return False
    for target in sys_a:
        if not implies(sys_b, target, nvars, cap):
            return False
    return True

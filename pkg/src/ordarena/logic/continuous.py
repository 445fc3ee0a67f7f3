"""Symbolic continuous formulas over the pointed operator-algebra language.

This is a compiler with static metadata only: formulas carry an ordinal
rank, a Lipschitz modulus descriptor and a range interval, and are never
evaluated on an algebra.  Infinitary family nodes must be handed a common
modulus and range that dominate every member; construction rejects
violations.

The quantifier-free obstruction formula used for projection detection
takes the max of multiplicativity and contraction defects over a
deterministic net of the coordinate polydisc with per-coordinate spacing
delta/n; the net is enumerated lexicographically and always contains the
standard basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ordarena import ordinal
from ordarena.ordinal import Ord
from ordarena.pigame import GaussianRational, gq

UNIT_CONSTANT = "c"   # the distinguished constant symbol


# -- star polynomials -------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    coeff: GaussianRational
    factors: tuple[tuple[str, bool], ...]   # (name, starred), in order


@dataclass(frozen=True)
class StarPolynomial:
    monomials: tuple[Monomial, ...]

    @staticmethod
    def variable(name: str) -> "StarPolynomial":
        return StarPolynomial((Monomial(gq(1), ((name, False),)),))

    @staticmethod
    def constant(value: GaussianRational) -> "StarPolynomial":
        return StarPolynomial((Monomial(value, ()),))

    def __add__(self, other: "StarPolynomial") -> "StarPolynomial":
        return _collect(self.monomials + other.monomials)

    def __sub__(self, other: "StarPolynomial") -> "StarPolynomial":
        return self + other.scale(gq(-1))

    def __mul__(self, other: "StarPolynomial") -> "StarPolynomial":
        out = []
        for m1 in self.monomials:
            for m2 in other.monomials:
                out.append(Monomial(m1.coeff * m2.coeff, m1.factors + m2.factors))
        return _collect(tuple(out))

    def scale(self, c: GaussianRational) -> "StarPolynomial":
        return _collect(tuple(Monomial(c * m.coeff, m.factors) for m in self.monomials))

    def star(self) -> "StarPolynomial":
        out = []
        for m in self.monomials:
            factors = tuple((name, not starred) for (name, starred) in reversed(m.factors))
            out.append(Monomial(m.coeff.conj(), factors))
        return _collect(tuple(out))

    def substitute(self, mapping: dict[str, "StarPolynomial"]) -> "StarPolynomial":
        total = StarPolynomial(())
        for m in self.monomials:
            acc = StarPolynomial.constant(m.coeff)
            for (name, starred) in m.factors:
                p = mapping.get(name, StarPolynomial.variable(name))
                acc = acc * (p.star() if starred else p)
            total = total + acc
        return total

    def variables(self) -> frozenset[str]:
        return frozenset(n for m in self.monomials for (n, _) in m.factors)

    def norm_upper_bound(self) -> Fraction:
        """Upper bound of the norm on contraction arguments (|re|+|im| bounds
        each coefficient modulus)."""
        return sum((abs(m.coeff.re) + abs(m.coeff.im) for m in self.monomials), Fraction(0))

    def occurrences(self, name: str) -> int:
        return sum(sum(1 for (n, _) in m.factors if n == name) for m in self.monomials)

    def lipschitz_in(self, name: str) -> Fraction:
        """Lipschitz bound in one variable over contraction arguments."""
        out = Fraction(0)
        for m in self.monomials:
            hits = sum(1 for (n, _) in m.factors if n == name)
            out += (abs(m.coeff.re) + abs(m.coeff.im)) * hits
        return out

    def __str__(self):
        if not self.monomials:
            return "0"
        parts = []
        for m in self.monomials:
            factors = "".join(n + ("*" if starred else "") for (n, starred) in m.factors)
            parts.append(f"({m.coeff}){factors}" if factors else f"({m.coeff})")
        return " + ".join(parts)


def _collect(monomials: tuple[Monomial, ...]) -> StarPolynomial:
    acc: dict[tuple, GaussianRational] = {}
    order: list[tuple] = []
    for m in monomials:
        if m.factors not in acc:
            order.append(m.factors)
            acc[m.factors] = m.coeff
        else:
            acc[m.factors] = acc[m.factors] + m.coeff
    kept = tuple(Monomial(acc[f], f) for f in order if acc[f] != gq(0))
    return StarPolynomial(kept)


# -- formula nodes ----------------------------------------------------------------


@dataclass(frozen=True)
class NormAtom:
    poly: StarPolynomial
    # the outer norm connective is 1-Lipschitz in its polynomial argument
    lipschitz: Fraction = Fraction(1)


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class MaxOf:
    operands: tuple["ContinuousFormula", ...]


@dataclass(frozen=True)
class MinOf:
    operands: tuple["ContinuousFormula", ...]


@dataclass(frozen=True)
class DotMinus:
    left: "ContinuousFormula"
    right: "ContinuousFormula"


@dataclass(frozen=True)
class InfBlock:
    variables: tuple[str, ...]
    domain: int                  # quantification ball index
    body: "ContinuousFormula"


@dataclass(frozen=True)
class SupBlock:
    variables: tuple[str, ...]
    domain: int
    body: "ContinuousFormula"


@dataclass(frozen=True)
class PhiRef:
    """Opaque reference to the projection-obstruction formula applied to
    *-monomial arguments; expand() materializes it."""

    n: int
    delta: Fraction
    args: tuple[StarPolynomial, ...]

    def expand(self) -> "ContinuousFormula":
        bundle = build_phi_n_delta(self.n, self.delta)
        mapping = {f"x{i}": arg for i, arg in enumerate(self.args)}
        return substitute_formula(bundle.formula, mapping)


@dataclass(frozen=True)
class CountableMax:
    prototypes: tuple["ContinuousFormula", ...]
    modulus: Fraction
    range_interval: tuple[Fraction, Fraction]

    def __post_init__(self):
        _validate_family(self.prototypes, self.modulus, self.range_interval)


@dataclass(frozen=True)
class CountableMin:
    prototypes: tuple["ContinuousFormula", ...]
    modulus: Fraction
    range_interval: tuple[Fraction, Fraction]

    def __post_init__(self):
        _validate_family(self.prototypes, self.modulus, self.range_interval)


ContinuousFormula = Union[NormAtom, Const, MaxOf, MinOf, DotMinus, InfBlock, SupBlock,
                          PhiRef, CountableMax, CountableMin]


def _validate_family(prototypes, modulus: Fraction, rng: tuple[Fraction, Fraction]):
    if not prototypes:
        raise ValueError("a family node needs at least one prototype")
    for p in prototypes:
        m = modulus_bound(p)
        if m is None or m > modulus:
            raise ValueError("family member exceeds the common modulus")
        lo, hi = range_interval(p)
        if lo < rng[0] or hi > rng[1]:
            raise ValueError("family member exceeds the common range")


def rank(phi: ContinuousFormula) -> Ord:
    if isinstance(phi, (NormAtom, Const, PhiRef)):
        return ordinal.ZERO
    if isinstance(phi, (MaxOf, MinOf)):
        best = ordinal.ZERO
        for c in phi.operands:
            r = rank(c)
            if best < r:
                best = r
        return best
    if isinstance(phi, DotMinus):
        left, right = rank(phi.left), rank(phi.right)
        return left if right < left else right
    if isinstance(phi, (CountableMax, CountableMin)):
        best = ordinal.ZERO
        for c in phi.prototypes:
            r = rank(c)
            if best < r:
                best = r
        return best
    if isinstance(phi, (InfBlock, SupBlock)):
        return ordinal.add(rank(phi.body), ordinal.fin(len(phi.variables)))
    raise TypeError(f"not a continuous formula: {phi!r}")


def free_variables(phi: ContinuousFormula) -> frozenset[str]:
    if isinstance(phi, NormAtom):
        return phi.poly.variables() - {UNIT_CONSTANT}
    if isinstance(phi, Const):
        return frozenset()
    if isinstance(phi, PhiRef):
        out: frozenset[str] = frozenset()
        for arg in phi.args:
            out |= arg.variables()
        return out - {UNIT_CONSTANT}
    if isinstance(phi, (MaxOf, MinOf)):
        out = frozenset()
        for c in phi.operands:
            out |= free_variables(c)
        return out
    if isinstance(phi, DotMinus):
        return free_variables(phi.left) | free_variables(phi.right)
    if isinstance(phi, (CountableMax, CountableMin)):
        out = frozenset()
        for c in phi.prototypes:
            out |= free_variables(c)
        return out
    if isinstance(phi, (InfBlock, SupBlock)):
        return free_variables(phi.body) - set(phi.variables)
    raise TypeError(f"not a continuous formula: {phi!r}")


def range_interval(phi: ContinuousFormula) -> tuple[Fraction, Fraction]:
    if isinstance(phi, NormAtom):
        return (Fraction(0), phi.poly.norm_upper_bound())
    if isinstance(phi, Const):
        return (phi.value, phi.value)
    if isinstance(phi, PhiRef):
        # conservative: the expanded max of norm atoms is bounded by the
        # worst pairwise product bound over unit-modulus net coefficients
        bound = Fraction(0)
        for arg in phi.args:
            bound = max(bound, arg.norm_upper_bound())
        size = max(Fraction(1), bound)
        hi = (phi.n * size) ** 2 + phi.n * size
        return (Fraction(0), hi)
    if isinstance(phi, (MaxOf, MinOf)):
        los, his = zip(*(range_interval(c) for c in phi.operands))
        return (min(los), max(his))
    if isinstance(phi, DotMinus):
        llo, lhi = range_interval(phi.left)
        rlo, rhi = range_interval(phi.right)
        return (Fraction(0), max(Fraction(0), lhi - rlo))
    if isinstance(phi, (CountableMax, CountableMin)):
        return phi.range_interval
    if isinstance(phi, (InfBlock, SupBlock)):
        return range_interval(phi.body)
    raise TypeError(f"not a continuous formula: {phi!r}")


def modulus_bound(phi: ContinuousFormula) -> Optional[Fraction]:
    """A Lipschitz constant valid for every free variable, or None when no
    bound is known."""
    fv = free_variables(phi)
    if not fv:
        return Fraction(0)
    bounds = [lipschitz_in(phi, v) for v in fv]
    if any(b is None for b in bounds):
        return None
    return max(bounds)


def lipschitz_in(phi: ContinuousFormula, var: str) -> Optional[Fraction]:
    if isinstance(phi, NormAtom):
        return phi.poly.lipschitz_in(var)
    if isinstance(phi, Const):
        return Fraction(0)
    if isinstance(phi, PhiRef):
        worst = Fraction(0)
        degree = Fraction(2 * phi.n * phi.n)  # pair products of linear combinations
        for arg in phi.args:
            worst = max(worst, arg.lipschitz_in(var))
        return degree * worst if worst else Fraction(0)
    if isinstance(phi, (MaxOf, MinOf)):
        vals = [lipschitz_in(c, var) for c in phi.operands]
        if any(v is None for v in vals):
            return None
        return max(vals)
    if isinstance(phi, DotMinus):
        left = lipschitz_in(phi.left, var)
        right = lipschitz_in(phi.right, var)
        if left is None or right is None:
            return None
        return left + right
    if isinstance(phi, (CountableMax, CountableMin)):
        return phi.modulus if var in free_variables(phi) else Fraction(0)
    if isinstance(phi, (InfBlock, SupBlock)):
        if var in phi.variables:
            return Fraction(0)
        return lipschitz_in(phi.body, var)
    raise TypeError(f"not a continuous formula: {phi!r}")


def substitute_formula(phi: ContinuousFormula, mapping: dict[str, StarPolynomial]) -> ContinuousFormula:
    if isinstance(phi, NormAtom):
        return NormAtom(phi.poly.substitute(mapping), phi.lipschitz)
    if isinstance(phi, Const):
        return phi
    if isinstance(phi, MaxOf):
        return MaxOf(tuple(substitute_formula(c, mapping) for c in phi.operands))
    if isinstance(phi, MinOf):
        return MinOf(tuple(substitute_formula(c, mapping) for c in phi.operands))
    if isinstance(phi, DotMinus):
        return DotMinus(substitute_formula(phi.left, mapping), substitute_formula(phi.right, mapping))
    if isinstance(phi, PhiRef):
        return PhiRef(phi.n, phi.delta, tuple(a.substitute(mapping) for a in phi.args))
    if isinstance(phi, (InfBlock, SupBlock)):
        inner = {k: v for k, v in mapping.items() if k not in phi.variables}
        cls = InfBlock if isinstance(phi, InfBlock) else SupBlock
        return cls(phi.variables, phi.domain, substitute_formula(phi.body, inner))
    raise TypeError(f"substitution not supported on {phi!r}")


# -- the quantifier-free obstruction formula ---------------------------------------


def self_n_spacing(n: int, delta: Fraction) -> Fraction:
    return Fraction(delta, n)


def _grid_1d(step: Fraction) -> list[GaussianRational]:
    """Gaussian-rational grid of the closed unit disc with the given mesh,
    enumerated lexicographically."""
    if step <= 0:
        raise ValueError("grid step must be positive")
    reach = int(1 / step)
    points = []
    for p in range(-reach, reach + 1):
        for q in range(-reach, reach + 1):
            z = GaussianRational(p * step, q * step)
            if z.abs2() <= 1:
                points.append(z)
    return points


@dataclass(frozen=True)
class PhiBundle:
    n: int
    delta: Fraction
    net: tuple[tuple[GaussianRational, ...], ...]
    singles: tuple[StarPolynomial, ...]
    pairs: dict
    formula: MaxOf

    @property
    def rank(self) -> Ord:
        return rank(self.formula)

    @property
    def modulus(self) -> Optional[Fraction]:
        return modulus_bound(self.formula)


def build_phi_n_delta(n: int, delta, net_cap: int = 4096) -> PhiBundle:
    """Net, linear polynomials, pair obstruction polynomials, and the max
    formula over all their defect norms."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if n < 1:
        raise ValueError("n must be at least 1")
    grid = _grid_1d(self_n_spacing(n, delta))
    if len(grid) ** n > net_cap:
        raise ValueError(f"net of size {len(grid)}^{n} exceeds the cap {net_cap}; "
                         "keep the symbolic reference instead")
    net: list[tuple[GaussianRational, ...]] = [()]
    for _ in range(n):
        net = [v + (z,) for v in net for z in grid]
    basis = []
    for i in range(n):
        e = tuple(gq(1) if j == i else gq(0) for j in range(n))
        basis.append(e)
    seen = set(net)
    for e in basis:
        if e not in seen:
            net.append(e)
    xs = [StarPolynomial.variable(f"x{i}") for i in range(n)]
    singles = []
    for b in net:
        p = StarPolynomial(())
        for i in range(n):
            p = p + xs[i].scale(b[i])
        singles.append(p)
    pair_polys = {}
    operands: list[ContinuousFormula] = []
    for h0, b0 in enumerate(net):
        for h1, b1 in enumerate(net):
            cross = StarPolynomial(())
            for i in range(n):
                cross = cross + xs[i].scale(b0[i] * b1[i])
            p = singles[h0] * singles[h1] - cross
            pair_polys[(h0, h1)] = p
            operands.append(NormAtom(p))
    for h0 in range(len(net)):
        operands.append(DotMinus(NormAtom(singles[h0]), Const(Fraction(1))))
    formula = MaxOf(tuple(operands))
    return PhiBundle(n, delta, tuple(net), tuple(singles), pair_polys, formula)


# -- the atomic translation to the pointed algebra language ------------------------


def translate_v_atomic(n0: int, n1: int, m0: int = 1, m1: int = 1, delta=Fraction(1, 2)) -> InfBlock:
    """Atomic translation of a balanced semigroup equation: three nested inf
    blocks over a max of norm terms, with the obstruction formula embedded
    by reference.  Finite rank, 1-Lipschitz in the free variables."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    zs = [StarPolynomial.variable(f"z{i}") for i in range(n0)]
    ws = [StarPolynomial.variable(f"w{j}") for j in range(n1)]
    vs = [f"v{i}" for i in range(n0 + m0)]
    us = [f"u{j}" for j in range(n1 + m1)]
    unit = StarPolynomial.variable(UNIT_CONSTANT)
    vpol = [StarPolynomial.variable(v) for v in vs]
    upol = [StarPolynomial.variable(u) for u in us]
    visom = StarPolynomial.variable("v")

    operands: list[ContinuousFormula] = []
    for i in range(n0):
        operands.append(NormAtom(vpol[i].star() * vpol[i] - zs[i]))
    for j in range(n1):
        operands.append(NormAtom(upol[j].star() * upol[j] - ws[j]))
    for t in range(m0):
        operands.append(NormAtom(vpol[n0 + t].star() * vpol[n0 + t] - unit))
    for t in range(m1):
        operands.append(NormAtom(upol[n1 + t].star() * upol[n1 + t] - unit))
    sum_v = StarPolynomial(())
    for p in vpol:
        sum_v = sum_v + p * p.star()
    sum_u = StarPolynomial(())
    for p in upol:
        sum_u = sum_u + p * p.star()
    operands.append(NormAtom(visom * visom.star() - sum_v))
    operands.append(NormAtom(visom.star() * visom - sum_u))
    phi_args = tuple([p * p.star() for p in vpol] + [p * p.star() for p in upol])
    operands.append(PhiRef(n0 + n1 + m0 + m1, delta, phi_args))

    body = MaxOf(tuple(operands))
    inner = InfBlock(tuple(us), 1, body)
    middle = InfBlock(tuple(vs), 1, inner)
    outer = InfBlock(("v",), 1, middle)

    result_rank = rank(outer)
    assert result_rank.is_finite, "the atomic translation must have finite rank"
    assert result_rank < ordinal.OMEGA
    for name in [f"z{i}" for i in range(n0)] + [f"w{j}" for j in range(n1)]:
        bound = lipschitz_in(outer, name)
        assert bound == 1, f"expected the translation to be 1-Lipschitz in {name}"
    return outer


# -- scalar stability constants -----------------------------------------------------


def ulam_delta_prime(delta) -> Fraction:
    """Tolerance amplification for approximate homomorphisms: 5d + 4d^2."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    return 5 * delta + 4 * delta * delta


def matrix_entry_delta(eps, n: int) -> Fraction:
    """Entrywise tolerance guaranteeing a matrix-norm tolerance: eps / n^2."""
    eps = Fraction(eps)
    if eps <= 0 or n <= 0:
        raise ValueError("inputs must be positive")
    return eps / (n * n)

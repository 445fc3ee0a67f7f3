"""Two deciders for order games.

``BruteForceSolver`` is the oracle: exact minimax over the full finite game
tree (every clock drop, every probe, every answer), memoized on the set of
answered pairs plus the clock.  It only needs the structures to be finite.

``decide_equiv_finite_clock`` is the scalable path for ordinal orders: a
back-and-forth recursion on interval types.  Two pointed orders stay
n-equivalent iff every canonical probe on either side has an answer whose
two flanking intervals are (n-1)-equivalent; intervals are re-expressed as
ordinals through left subtraction and the recursion is memoized on the
interval-type pair.  The canonical probe set (CNF partial sums, closed
under +-1 and one level of w^j*c sub-sampling, j,c bounded by the clock)
is validated empirically against the brute-force oracle; any observed
incompleteness must be recorded in the findings registry, never patched
silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from ordarena import findings, ordinal
from ordarena.efgame.game import (
    GameError,
    GamePosition,
    Move,
    PlayerI,
    PlayerII,
    Side,
)
from ordarena.efgame.structures import OrdinalOrder, Structure
from ordarena.ordinal import Ord, left_subtract, pred, succ


class SolverCapError(RuntimeError):
    pass


class BruteForceSolver:
    """Exact minimax for games on finite structures."""

    def __init__(self, a: Structure, b: Structure, node_cap: int = 2_000_000):
        if a.elements() is None or b.elements() is None:
            raise ValueError("brute force needs finite structures")
        self.a = a
        self.b = b
        self.node_cap = node_cap
        self.nodes = 0
        self._memo: dict[tuple[frozenset, int], bool] = {}
        self._valid: dict[frozenset, bool] = {}

    def _pairs_valid(self, pairs: frozenset) -> bool:
        if pairs not in self._valid:
            self._valid[pairs] = self.a.partial_iso_holds(self.b, pairs)
        return self._valid[pairs]

    def ii_wins_from(self, pairs: frozenset, clock: int) -> bool:
        key = (pairs, clock)
        if key in self._memo:
            return self._memo[key]
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise SolverCapError(f"node cap {self.node_cap} exceeded")
        if not self._pairs_valid(pairs):
            # a violated partial map can never be repaired by later rounds
            result = False
        elif clock == 0:
            result = True
        else:
            result = True
            for m in range(clock):
                for side, probe_struct, other in ((Side.A, self.a, self.b), (Side.B, self.b, self.a)):
                    for x in probe_struct.elements():
                        extended = (
                            pairs | {(x, y)} if side is Side.A else pairs | {(y, x)}
                            for y in other.elements()
                        )
                        if not any(self.ii_wins_from(p, m) for p in extended):
                            result = False
                            break
                    if not result:
                        break
                if not result:
                    break
        self._memo[key] = result
        return result

    def solve(self, clock: int) -> "SolveResult":
        ii = self.ii_wins_from(frozenset(), clock)
        if ii:
            return SolveResult("II", BruteForceII(self), None)
        return SolveResult("I", None, BruteForceI(self))


@dataclass
class SolveResult:
    winner: str
    strategy_ii: Optional["BruteForceII"]
    strategy_i: Optional["BruteForceI"]

    @property
    def certificate(self):
        return self.strategy_ii if self.winner == "II" else self.strategy_i


class BruteForceII(PlayerII):
    provenance = "BruteForce"

    def __init__(self, solver: BruteForceSolver):
        self.solver = solver

    def answer(self, position: GamePosition, move: Move, a: Structure, b: Structure):
        pairs = frozenset(position.pairs())
        m = move.clock.to_int()
        other = b if move.side is Side.A else a
        candidates = sorted(other.elements(), key=other.sort_key)
        for y in candidates:
            ext = {(move.element, y)} if move.side is Side.A else {(y, move.element)}
            if self.solver.ii_wins_from(pairs | ext, m):
                return y
        if not candidates:
            raise GameError("ELEMENT_NOT_IN_STRUCTURE", "no element available to answer with")
        findings.record("brute_force.ii", "no winning answer from a supposedly winning position",
                        pairs=sorted(map(str, pairs)), clock=m)
        return candidates[0]


class BruteForceI(PlayerI):
    provenance = "BruteForce"

    def __init__(self, solver: BruteForceSolver):
        self.solver = solver

    def move(self, position: GamePosition, a: Structure, b: Structure) -> Move:
        pairs = frozenset(position.pairs())
        clock = position.clock.to_int()
        fallback = None
        for m in range(clock):
            for side, probe_struct, other in ((Side.A, a, b), (Side.B, b, a)):
                for x in sorted(probe_struct.elements(), key=probe_struct.sort_key):
                    if fallback is None:
                        fallback = Move(ordinal.fin(m), side, x)
                    extended = (
                        pairs | {(x, y)} if side is Side.A else pairs | {(y, x)}
                        for y in other.elements()
                    )
                    if not any(self.solver.ii_wins_from(p, m) for p in extended):
                        return Move(ordinal.fin(m), side, x)
        if fallback is None:
            raise GameError("ELEMENT_NOT_IN_STRUCTURE", "no probe available")
        return fallback


# -- interval-type recursion for ordinal orders --------------------------------


def _partial_sums(lam: Ord, coeff_window: int) -> list[Ord]:
    """CNF-prefix boundary points of [0, lam); large coefficient runs only
    contribute a front and back window of multiples."""
    sums = [ordinal.ZERO]
    acc = ordinal.ZERO
    for (e, c) in lam.terms:
        unit = ordinal.omega_pow(ordinal._exp_ord(e))
        front = min(c, coeff_window)
        picks = set(range(1, front + 1)) | set(range(max(1, c - coeff_window + 1), c + 1))
        for j in sorted(picks):
            sums.append(ordinal.add(acc, ordinal.mul(unit, ordinal.fin(j))))
        acc = ordinal.add(acc, ordinal.mul(unit, ordinal.fin(c)))
    return sums


def probe_points(lam: Ord, clock: int) -> list[Ord]:
    """Canonical probe set for the order [0, lam) at a finite clock."""
    if not lam.terms:
        return []
    pts: set[Ord] = set()
    offsets = []
    for j in range(clock + 1):
        base = ordinal.omega_pow(ordinal.fin(j))
        for c in range(clock + 1):
            offsets.append(ordinal.mul(base, ordinal.fin(c)))
    for s in _partial_sums(lam, clock + 2):
        for off in offsets:
            p = ordinal.add(s, off)
            if p < lam:
                pts.add(p)
        if s.is_successor:
            p = pred(s)
            if p < lam:
                pts.add(p)
    return sorted(pts)


def _mirror_candidates(x: Ord, src: Ord, dst: Ord, clock: int) -> list[Ord]:
    """Answer candidates in [0, dst) for a probe x in [0, src): the canonical
    probes of dst plus boundary-translated copies of x's CNF offset."""
    cands = set(probe_points(dst, clock))
    if x < dst:
        cands.add(x)
    src_sums = [s for s in _partial_sums(src, clock + 2) if s <= x]
    if src_sums:
        base = max(src_sums)
        delta = left_subtract(base, x)
        for q in _partial_sums(dst, clock + 2):
            cand = ordinal.add(q, delta)
            if cand < dst:
                cands.add(cand)
    return sorted(cands)


class EquivContext:
    """Memoized interval-type equivalence decisions.

    Entries are idempotent pure facts, so sharing a context between threads
    is safe (at worst a decision is recomputed); callers wanting full
    isolation pass their own instance.
    """

    def __init__(self):
        self._memo: dict[tuple[Ord, Ord, int], tuple[bool, Optional[tuple[int, Ord]]]] = {}

    def equiv(self, a: Ord, b: Ord, clock: int) -> bool:
        return self._decide(a, b, clock)[0]

    def winning_probe(self, a: Ord, b: Ord, clock: int) -> Optional[tuple[int, Ord]]:
        """(side, point) of a probe proving inequivalence; side 0 is `a`."""
        return self._decide(a, b, clock)[1]

    def _decide(self, a: Ord, b: Ord, clock: int) -> tuple[bool, Optional[tuple[int, Ord]]]:
        if clock == 0 or a == b:
            return (True, None)
        key = (a, b, clock)
        if key in self._memo:
            return self._memo[key]
        # reserve the slot to guard against cycles (there are none: flanks
        # always come from strictly fewer remaining rounds)
        result: tuple[bool, Optional[tuple[int, Ord]]] = (True, None)
        for side, (p, q) in enumerate(((a, b), (b, a))):
            for x in probe_points(p, clock):
                if not self._has_answer(x, p, q, clock):
                    result = (False, (side, x))
                    break
            if not result[0]:
                break
        self._memo[key] = result
        return result

    def _has_answer(self, x: Ord, p: Ord, q: Ord, clock: int) -> bool:
        right_p = left_subtract(succ(x), p)
        for y in _mirror_candidates(x, p, q, clock):
            if self.equiv(x, y, clock - 1) and self.equiv(right_p, left_subtract(succ(y), q), clock - 1):
                return True
        return False


_SHARED_CONTEXT = EquivContext()


@dataclass
class EquivResult:
    equivalent: bool
    strategy: Any  # PlayerII certificate when equivalent, PlayerI otherwise
    context: EquivContext


def decide_equiv_finite_clock(a: Ord, b: Ord, clock: int,
                              context: Optional[EquivContext] = None) -> EquivResult:
    """Decide the order game [0,a) vs [0,b) at a finite clock."""
    ctx = context or _SHARED_CONTEXT
    if ctx.equiv(a, b, clock):
        return EquivResult(True, IntervalII(ctx), ctx)
    return EquivResult(False, IntervalI(ctx), ctx)


# -- gap bookkeeping shared by the interval strategies --------------------------


@dataclass(frozen=True)
class _Gap:
    lo: Optional[Ord]       # marked point below the gap (None = start)
    hi: Optional[Ord]       # marked point above the gap (None = end)
    lo_mate: Optional[Ord]
    hi_mate: Optional[Ord]

    def type_in(self, length: Ord) -> Ord:
        start = ordinal.ZERO if self.lo is None else succ(self.lo)
        end = length if self.hi is None else self.hi
        return left_subtract(start, end)

    def absolute(self, offset: Ord) -> Ord:
        return offset if self.lo is None else ordinal.add(succ(self.lo), offset)

    def offset_of(self, x: Ord) -> Ord:
        start = ordinal.ZERO if self.lo is None else succ(self.lo)
        return left_subtract(start, x)


def _gaps(pairs) -> list[_Gap]:
    """Gaps of the probed side, with mates carried along.  pairs come as
    (probed-side point, other-side point)."""
    marked = sorted(set(pairs))
    gaps = []
    prev = (None, None)
    for (p, mate) in marked:
        gaps.append(_Gap(prev[0], p, prev[1], mate))
        prev = (p, mate)
    gaps.append(_Gap(prev[0], None, prev[1], None))
    return gaps


def _oriented_pairs(position: GamePosition, probe_side: Side):
    out = []
    for (pa, pb) in position.pairs():
        out.append((pa, pb) if probe_side is Side.A else (pb, pa))
    return out


class IntervalII(PlayerII):
    """Certificate Player II built from interval-type decisions."""

    provenance = "BruteForce"

    def __init__(self, context: EquivContext):
        self.ctx = context

    def answer(self, position: GamePosition, move: Move, a: Structure, b: Structure):
        probe_struct = a if move.side is Side.A else b
        other = b if move.side is Side.A else a
        assert isinstance(probe_struct, OrdinalOrder) and isinstance(other, OrdinalOrder)
        x = move.element
        m = move.clock.to_int() if move.clock.is_finite else None
        oriented = _oriented_pairs(position, move.side)
        for (p, mate) in oriented:
            if p == x:
                return mate
        if not probe_struct.partial_iso_holds(other, oriented):
            # inherited a broken position: any legal element will do
            if other.length.terms:
                return ordinal.ZERO
            raise GameError("NO_ANSWER", "opposite structure is empty")
        gap = next(g for g in _gaps(oriented)
                   if (g.lo is None or g.lo < x) and (g.hi is None or x < g.hi))
        mate_gap = _Gap(gap.lo_mate, gap.hi_mate, gap.lo, gap.hi)
        ga = gap.type_in(probe_struct.length)
        gb = mate_gap.type_in(other.length)
        off = gap.offset_of(x)
        right_a = left_subtract(succ(off), ga)
        if m is not None:
            # window m+1 mirrors the decision step that justified this gap:
            # a probe answered at clock m+1 has its flanks checked at m
            for cand in _mirror_candidates(off, ga, gb, m + 1):
                if self.ctx.equiv(off, cand, m) and \
                        self.ctx.equiv(right_a, left_subtract(succ(cand), gb), m):
                    return mate_gap.absolute(cand)
        else:
            findings.record("interval.ii", "infinite clock handed to an interval certificate",
                            clock=str(move.clock))
        if gb.terms:
            findings.record("interval.ii", "no verified answer in the mate gap",
                            probe=str(x), gap_a=str(ga), gap_b=str(gb), clock=m)
            cand = off if off < gb else ordinal.ZERO
            return mate_gap.absolute(cand)
        # the mate gap is empty: there is no non-losing answer at all
        raise GameError("NO_ANSWER", "every answer breaks the order pattern")


class IntervalI(PlayerI):
    """Certificate Player I: descends into an inequivalent gap pair."""

    provenance = "BruteForce"

    def __init__(self, context: EquivContext):
        self.ctx = context

    def move(self, position: GamePosition, a: Structure, b: Structure) -> Move:
        assert isinstance(a, OrdinalOrder) and isinstance(b, OrdinalOrder)
        clock = position.clock.to_int()
        if not a.partial_iso_holds(b, position.pairs()):
            # the map is already broken: run the clock out
            elt = position.pairs()[0][0]
            return Move(ordinal.ZERO, Side.A, elt)
        oriented = _oriented_pairs(position, Side.A)
        for gap in _gaps(oriented):
            ga = gap.type_in(a.length)
            mate_gap = _Gap(gap.lo_mate, gap.hi_mate, gap.lo, gap.hi)
            gb = mate_gap.type_in(b.length)
            probe = self.ctx.winning_probe(ga, gb, clock)
            if probe is None:
                continue
            side_idx, off = probe
            if side_idx == 0:
                return Move(ordinal.fin(clock - 1), Side.A, gap.absolute(off))
            return Move(ordinal.fin(clock - 1), Side.B, mate_gap.absolute(off))
        findings.record("interval.i", "no inequivalent gap from a supposedly winning position",
                        pairs=[(str(x), str(y)) for x, y in oriented], clock=clock)
        return Move(ordinal.fin(clock - 1), Side.A, ordinal.ZERO)

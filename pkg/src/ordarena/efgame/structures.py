"""Pluggable discrete structures for the clocked back-and-forth game.

A structure adapter supplies element membership, an optional finite
enumeration (for the exhaustive solver), a seeded element sampler, and the
final-position win check: whether a_i -> b_i extends to an isomorphism of
the generated substructures.  Win checks are symmetric in the two sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Optional

from ordarena import ordinal
from ordarena.dimgroup import check_partial_iso_group
from ordarena.dimgroup.stepfn import StepFunction, from_json as step_from_json, random_step_function
from ordarena.ordinal import Ord


class Structure:
    kind = "abstract"

    def __contains__(self, x) -> bool:
        raise NotImplementedError

    def elements(self) -> Optional[list]:
        """Finite element list, or None when not enumerable."""
        return None

    def sample(self, rng):
        raise NotImplementedError

    def sort_key(self, x):
        return x

    def partial_iso_holds(self, other: "Structure", pairs: Iterable[tuple[Any, Any]]) -> bool:
        raise NotImplementedError

    def element_to_json(self, x):
        raise NotImplementedError

    def element_from_json(self, data):
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


def _order_pattern_ok(lt_a, lt_b, pairs) -> bool:
    pairs = list(pairs)
    for i in range(len(pairs)):
        for j in range(len(pairs)):
            ai, bi = pairs[i]
            aj, bj = pairs[j]
            if (ai == aj) != (bi == bj):
                return False
            if lt_a(ai, aj) != lt_b(bi, bj):
                return False
    return True


class LinearOrder(Structure):
    def lt(self, x, y) -> bool:
        raise NotImplementedError

    def partial_iso_holds(self, other, pairs) -> bool:
        if not isinstance(other, LinearOrder):
            raise TypeError("cannot match a linear order against a different kind")
        return _order_pattern_ok(self.lt, other.lt, pairs)


@dataclass(frozen=True)
class FiniteOrder(LinearOrder):
    """The linear order {0 < 1 < ... < n-1}."""

    n: int
    kind = "finite-order"

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.n

    def elements(self):
        return list(range(self.n))

    def sample(self, rng):
        if self.n == 0:
            raise ValueError("empty order has no elements")
        return rng.randrange(self.n)

    def lt(self, x, y) -> bool:
        return x < y

    def element_to_json(self, x):
        return x

    def element_from_json(self, data):
        if not isinstance(data, int) or data not in self:
            raise ValueError(f"{data!r} is not a point of {self.describe()}")
        return data

    def describe(self) -> str:
        return f"order:{self.n}"


@dataclass(frozen=True)
class OrdinalOrder(LinearOrder):
    """The linear order of all ordinals below ``length``."""

    length: Ord
    kind = "ordinal-order"

    def __contains__(self, x) -> bool:
        return isinstance(x, Ord) and x < self.length

    def elements(self):
        if self.length.is_finite:
            return [ordinal.fin(i) for i in range(self.length.to_int())]
        return None

    def sample(self, rng):
        return ordinal.random_below(rng, self.length)

    def lt(self, x, y) -> bool:
        return x < y

    def element_to_json(self, x):
        return ordinal.format_ord(x)

    def element_from_json(self, data):
        x = ordinal.parse(str(data))
        if x not in self:
            raise ValueError(f"{data!r} is not a point of {self.describe()}")
        return x

    def describe(self) -> str:
        return f"order:{ordinal.format_ord(self.length)}"


@dataclass(frozen=True)
class DimGroupStructure(Structure):
    """Step-function group on the space [0, top] with unit and both orders.

    Elements are StepFunction values; the win check is the generated
    ordered-subgroup isomorphism decision (unit always included).
    """

    top: Ord
    kind = "dimension-group"

    def __contains__(self, x) -> bool:
        return isinstance(x, StepFunction) and x.top == self.top

    def sample(self, rng):
        return random_step_function(rng, self.top)

    def sort_key(self, x: StepFunction):
        c = x.canonical()
        return (len(c.values), c.partition.breakpoints, c.values)

    def partial_iso_holds(self, other, pairs) -> bool:
        if not isinstance(other, DimGroupStructure):
            raise TypeError("cannot match a dimension group against a different kind")
        return check_partial_iso_group(list(pairs), self.top, other.top).ii_wins

    def element_to_json(self, x: StepFunction):
        return x.to_json()

    def element_from_json(self, data):
        f = step_from_json(data)
        if f not in self:
            raise ValueError(f"step function on wrong space (expected top {self.top})")
        return f

    def describe(self) -> str:
        return f"group:{ordinal.format_ord(self.top)}"

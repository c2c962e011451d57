"""Constructive realization of a single crossing change by region crossing changes.

For a reduced knot diagram, splice at the crossing, keep one of the two
resulting components, checkerboard-color its regions and take every region of
the original diagram that lies in a black region.  Nugatory crossings are
peeled off one at a time: the diagram is spliced at a nugatory crossing whose
far side is reduced, the problem is solved on the near side and the answer is
lifted back, correcting it with a checkerboard set of the far side when the
nugatory crossing would otherwise change.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagram import (
    BLACK,
    WHITE,
    Diagram,
    PreconditionError,
    SpliceResult,
    checkerboard,
    reducible_crossings,
    format_pd,
    splice,
)
from .moves import rcc_effect

__all__ = ["RealizationTrace", "Step", "realize", "replay", "select_reducible"]

REDUCED = "reduced"
SPECIAL = "one-reducible-special"
INDUCTIVE = "inductive"


@dataclass(frozen=True)
class Step:
    """One level of the construction, innermost first in a trace.

    For the base cases ``black`` is the pulled-back black set and ``result``
    equals it.  For an inductive level ``region_map`` sends regions of this
    diagram to the previous step's diagram, ``lifted`` is the preimage of the
    previous result and ``adjustment`` is the far-side black set (empty when
    no correction was needed).
    """

    case: str
    diagram: str
    crossing: int
    spliced_crossing: int
    anchor: tuple[int, str] | None
    black: frozenset[int] = frozenset()
    region_map: tuple[int, ...] = ()
    lifted: frozenset[int] = frozenset()
    adjustment: frozenset[int] = frozenset()
    result: frozenset[int] = frozenset()
    corner_checks: tuple[tuple[int, str, int], ...] = ()

    def to_dict(self) -> dict:
        out = {
            "case": self.case,
            "diagram": self.diagram,
            "crossing": self.crossing,
            "spliced_crossing": self.spliced_crossing,
            "anchor": list(self.anchor) if self.anchor else None,
            "result": sorted(self.result),
        }
        if self.case == INDUCTIVE:
            out["region_map"] = list(self.region_map)
            out["lifted"] = sorted(self.lifted)
            out["adjustment"] = sorted(self.adjustment)
        else:
            out["black"] = sorted(self.black)
            out["corner_checks"] = [list(c) for c in self.corner_checks]
        return out


@dataclass(frozen=True)
class RealizationTrace:
    crossing: int
    steps: tuple[Step, ...] = field(default_factory=tuple)

    @property
    def result(self) -> frozenset[int]:
        return self.steps[-1].result

    def to_json(self, **kwargs) -> str:
        payload = {
            "crossing": self.crossing,
            "result": sorted(self.result),
            "steps": [s.to_dict() for s in self.steps],
        }
        return json.dumps(payload, **kwargs)


def replay(trace: RealizationTrace) -> frozenset[int]:
    """Recompute the final region set from the recorded steps alone."""
    current: frozenset[int] | None = None
    for step in trace.steps:
        if step.case == INDUCTIVE:
            if current is None:
                raise ValueError("trace starts with an inductive step")
            lifted = frozenset(r for r, img in enumerate(step.region_map) if img in current)
            current = lifted ^ step.adjustment
        else:
            current = step.black
    if current is None:
        raise ValueError("empty trace")
    return current


def _near_far(d: Diagram, cprime: int, c: int) -> SpliceResult | None:
    """Splice at ``cprime`` oriented so that ``c`` persists on ``d1``."""
    s = splice(d, cprime)
    if c in s.crossings_1:
        return s
    if c in s.crossings_2:
        return s.swapped()
    return None


def select_reducible(d: Diagram, c: int) -> int:
    """A nugatory crossing other than ``c`` whose far side is reduced and
    whose near side keeps ``c``."""
    reducible = reducible_crossings(d)
    if not reducible or reducible == {c}:
        raise PreconditionError("no nugatory crossing other than the target")
    for cp in sorted(reducible - {c}):
        s = _near_far(d, cp, c)
        if s is not None and not reducible_crossings(s.d2):
            return cp
    raise AssertionError(f"no admissible nugatory crossing in {format_pd(d)}")


def _corner_checks(d: Diagram, s: SpliceResult, black: frozenset[int]) -> tuple:
    checks = []
    for j in range(d.n):
        count = sum(1 for k in range(4) if d.corner_region(j, k) in black)
        if j == s.crossing:
            kind, ok = "spliced", count in (1, 3)
        elif j in s.crossings_1:
            kind, ok = "d1", count == 2
        elif j in s.crossings_2:
            kind, ok = "d2", count in (0, 4)
        else:
            kind, ok = "inter", count == 2
        if not ok:
            raise AssertionError(f"crossing {j} ({kind}) meets {count} black corners")
        checks.append((j, kind, count))
    return tuple(checks)


def _other_side_region(d: Diagram, s: SpliceResult) -> int:
    # any edge of the forgotten loop lies inside a single region of d1
    return s.region_map_1[d.side_region(s.loop2[0], 0)]


def _base_case(d: Diagram, c: int, case: str) -> Step:
    s = splice(d, c)
    anchor = (_other_side_region(d, s), WHITE) if case == SPECIAL else None
    board = checkerboard(s.d1, anchor)
    black = frozenset(r for r in range(d.m) if board.color(s.region_map_1[r]) == BLACK)
    checks = _corner_checks(d, s, black)
    return Step(case, format_pd(d), c, c, anchor, black=black, result=black,
                corner_checks=checks)


def _realize(d: Diagram, c: int, steps: list[Step]) -> frozenset[int]:
    reducible = reducible_crossings(d)
    if not reducible:
        step = _base_case(d, c, REDUCED)
        steps.append(step)
        return step.result
    if reducible == {c}:
        step = _base_case(d, c, SPECIAL)
        steps.append(step)
        return step.result

    cp = select_reducible(d, c)
    s = _near_far(d, cp, c)
    assert s is not None
    if len(reducible_crossings(s.d1)) != len(reducible) - 1:
        raise AssertionError("nugatory count did not drop by one")
    inner = _realize(s.d1, s.crossings_1[c], steps)
    lifted = frozenset(r for r in range(d.m) if s.region_map_1[r] in inner)
    adjustment: frozenset[int] = frozenset()
    touching = sum(1 for k in range(4) if d.corner_region(cp, k) in lifted)
    if touching % 2:
        # color the far side with the region holding the near side white
        holder = s.region_map_2[d.side_region(s.loop1[0], 0)]
        anchor = (holder, WHITE)
        board = checkerboard(s.d2, anchor)
        adjustment = frozenset(r for r in range(d.m) if board.color(s.region_map_2[r]) == BLACK)
        r1 = _other_side_region(d, s)
        # every black region lies inside r1, so subtracting or adding is a toggle
        inside = adjustment <= lifted if r1 in inner else not adjustment & lifted
        if not inside:
            raise AssertionError("far-side black regions are not uniformly in or out")
    else:
        anchor = None
    result = lifted ^ adjustment
    steps.append(Step(INDUCTIVE, format_pd(d), c, cp, anchor, region_map=s.region_map_1,
                      lifted=lifted, adjustment=adjustment, result=result))
    return result


def realize(d: Diagram, c: int) -> RealizationTrace:
    """Region set whose RCC changes exactly crossing ``c`` of the knot diagram ``d``."""
    if not d.is_knot:
        raise PreconditionError("realize needs a knot diagram")
    if not 0 <= c < d.n:
        raise IndexError(f"crossing {c} out of range")
    steps: list[Step] = []
    result = _realize(d, c, steps)
    if rcc_effect(d, result) != {c}:
        raise AssertionError(f"realized set {sorted(result)} does not change exactly crossing {c}")
    return RealizationTrace(c, tuple(steps))

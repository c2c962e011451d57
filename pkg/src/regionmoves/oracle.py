"""Exhaustive reference answers for small diagrams.

Every subset of regions is applied one region at a time, toggling crossing
states straight from the corner lists of the regions.  Building the tables
never touches the incidence matrix or the GF(2) solvers, so
:func:`cross_check` can hold those up against them.
"""

from __future__ import annotations

import os
import random
from collections.abc import Iterable
from dataclasses import dataclass

from .diagram import Diagram, all_descending_targets, serialize_pd, total_linking_number
from .moves import rfcc_realizability, solve_rcc, solve_rfcc, untie_by_rcc, untie_by_rfcc

__all__ = [
    "DEFAULT_ORACLE_CAP",
    "EffectTable",
    "OracleCapError",
    "brute_solve",
    "brute_untie",
    "cross_check",
    "enumerate_effects",
    "oracle_cap",
]

DEFAULT_ORACLE_CAP = 20


class OracleCapError(ValueError):
    pass


def oracle_cap() -> int:
    """Region cap, overridable through ``REGIONMOVES_ORACLE_CAP``."""
    return int(os.environ.get("REGIONMOVES_ORACLE_CAP", DEFAULT_ORACLE_CAP))


@dataclass(frozen=True)
class EffectTable:
    """Effects of all ``2**m`` region subsets, indexed by subset bitmask.

    Crossing sets are stored as bitmasks over crossing indices.
    """

    diagram: str
    n: int
    m: int
    rcc: tuple[int, ...]
    rfcc: tuple[int, ...]

    def effects(self, mode: str) -> tuple[int, ...]:
        if mode == "rcc":
            return self.rcc
        if mode == "rfcc":
            return self.rfcc
        raise ValueError(f"unknown mode {mode!r}")


def enumerate_effects(d: Diagram, cap: int | None = None) -> EffectTable:
    cap = oracle_cap() if cap is None else cap
    m, n = d.m, d.n
    if m > cap:
        raise OracleCapError(f"{m} regions exceed the oracle cap {cap}")
    touched = []
    for region in d.regions:
        state = 0
        for crossing, _ in region.corners:
            state ^= 1 << crossing  # once per corner: odd counts survive
        touched.append(state)
    everything = (1 << n) - 1
    rcc = []
    rfcc = []
    for subset in range(1 << m):
        a = b = 0
        for r in range(m):
            if subset >> r & 1:
                a ^= touched[r]
                b ^= everything ^ touched[r]
        rcc.append(a)
        rfcc.append(b)
    return EffectTable(serialize_pd(d), n, m, tuple(rcc), tuple(rfcc))


def _bits(indices: Iterable[int]) -> int:
    return sum(1 << i for i in set(indices))


def _subset(bits: int) -> frozenset[int]:
    return frozenset(i for i in range(bits.bit_length()) if bits >> i & 1)


def brute_solve(table: EffectTable, mode: str, target: Iterable[int]) -> list[frozenset[int]]:
    goal = _bits(target)
    hits = [_subset(s) for s, e in enumerate(table.effects(mode)) if e == goal]
    return sorted(hits, key=lambda s: (len(s), sorted(s)))


def brute_untie(table: EffectTable, d: Diagram, mode: str = "rcc") -> bool:
    """Whether some region subset turns ``d`` into a descending diagram or the
    mirror of one, trying every component order and basepoint."""
    if d.num_components < 2:
        raise ValueError("brute_untie is for links")
    everything = (1 << d.n) - 1
    goals = {_bits(t) for t in all_descending_targets(d)}
    return any(e in goals or e ^ everything in goals for e in table.effects(mode))


def cross_check(d: Diagram, cap: int | None = None, full_targets: int = 10,
                samples: int = 100, seed: int = 0) -> list[str]:
    """Compare the GF(2) solvers and decision procedures with brute force.

    All ``2**n`` targets are checked when ``n <= full_targets``; otherwise
    ``samples`` random targets.  Returns a list of disagreements.
    """
    table = enumerate_effects(d, cap)
    problems = []
    if d.n <= full_targets:
        targets = range(1 << d.n)
    else:
        rng = random.Random(seed)
        targets = [rng.getrandbits(d.n) for _ in range(samples)]
    for bits in targets:
        target = _subset(bits)
        for mode, solver in (("rcc", solve_rcc), ("rfcc", solve_rfcc)):
            if solver(d, target) != brute_solve(table, mode, target):
                problems.append(f"{mode} target {sorted(target)}: solver and brute force differ")
    if d.is_knot:
        report = rfcc_realizability(d)
        for v in report.per_crossing:
            if v.realizable != bool(brute_solve(table, "rfcc", {v.crossing})):
                problems.append(f"crossing {v.crossing}: realizability verdict differs")
    elif d.num_components >= 2:
        even = total_linking_number(d) % 2 == 0
        for mode, untie in (("rcc", untie_by_rcc), ("rfcc", untie_by_rfcc)):
            criterion, witness = untie(d)
            if criterion != even or (witness is not None) != even:
                problems.append(f"{mode}: linking-number criterion and witness disagree")
            if brute_untie(table, d, mode) != even:
                problems.append(f"{mode}: brute-force untying disagrees with the criterion")
    return problems

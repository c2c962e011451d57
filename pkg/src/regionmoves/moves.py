"""Region crossing changes (RCC) and region freeze crossing changes (RFCC).

Region and crossing sets are ``frozenset``s of indices.  A crossing touches a
region when it has an odd number of corners in it, which makes the effect of
any sequence of region moves a linear function of the set of regions used:

* RCC about ``s`` changes the crossings ``A @ s``;
* RFCC about ``s`` changes ``A @ s``, complemented when ``|s|`` is odd.
"""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass, field

from . import gf2
from .diagram import (
    Diagram,
    PreconditionError,
    all_descending_targets,
    change_crossings,
    descending_target,
    is_descending,
    mirror,
    serialize_pd,
    total_linking_number,
)
from .gf2 import DEFAULT_CAP, Gf2Matrix, bits_to_indices, indices_to_bits

__all__ = [
    "CrossingVerdict",
    "PATH_ODD_INEFFECTIVE",
    "PATH_STAR_PARITY",
    "RealizabilityReport",
    "apply_rcc",
    "apply_rfcc",
    "canonical_order",
    "incidence_matrix",
    "ineffective_sets",
    "rcc_effect",
    "rfcc_effect",
    "rfcc_realizability",
    "solve_rcc",
    "solve_rfcc",
    "star_condition",
    "untie_by_rcc",
    "untie_by_rfcc",
    "untie_knot",
]

RegionSet = frozenset[int]
CrossingSet = frozenset[int]

# decision-path tags of the report's JSON schema
PATH_ODD_INEFFECTIVE = "thm3.4"
PATH_STAR_PARITY = "thm3.5"


def canonical_order(sets: Iterable[Iterable[int]]) -> list[RegionSet]:
    """Smallest first, ties broken by the sorted index tuple."""
    return sorted((frozenset(s) for s in sets), key=lambda s: (len(s), sorted(s)))


def _regions_bits(d: Diagram, s: Iterable[int]) -> int:
    s = frozenset(s)
    for r in s:
        if not 0 <= r < d.m:
            raise IndexError(f"region {r} out of range")
    return indices_to_bits(s)


def _crossings_bits(d: Diagram, s: Iterable[int]) -> int:
    s = frozenset(s)
    for c in s:
        if not 0 <= c < d.n:
            raise IndexError(f"crossing {c} out of range")
    return indices_to_bits(s)


def incidence_matrix(d: Diagram) -> Gf2Matrix:
    """``n x m`` matrix with entry 1 where the crossing has an odd corner count."""
    rows = [0] * d.n
    for region in d.regions:
        for crossing, _ in region.corners:
            rows[crossing] ^= 1 << region.index
    return Gf2Matrix(tuple(rows), d.m)


def rcc_effect(d: Diagram, s: Iterable[int]) -> CrossingSet:
    return frozenset(bits_to_indices(incidence_matrix(d).mul(_regions_bits(d, s))))


def rfcc_effect(d: Diagram, s: Iterable[int]) -> CrossingSet:
    s = frozenset(s)
    effect = rcc_effect(d, s)
    if len(s) % 2:
        effect = frozenset(range(d.n)) - effect
    return effect


def apply_rcc(d: Diagram, s: Iterable[int]) -> Diagram:
    return change_crossings(d, rcc_effect(d, s))


def apply_rfcc(d: Diagram, s: Iterable[int]) -> Diagram:
    return change_crossings(d, rfcc_effect(d, s))


def ineffective_sets(d: Diagram, cap: int = DEFAULT_CAP) -> list[RegionSet]:
    """All region sets whose RCC changes nothing (the kernel of the incidence matrix)."""
    sols = gf2.solve_all(incidence_matrix(d), 0, cap)
    return canonical_order(bits_to_indices(x) for x in sols)


def solve_rcc(d: Diagram, target: Iterable[int], cap: int = DEFAULT_CAP) -> list[RegionSet]:
    b = _crossings_bits(d, target)
    sols = gf2.solve_all(incidence_matrix(d), b, cap)
    return canonical_order(bits_to_indices(x) for x in sols)


def solve_rfcc(d: Diagram, target: Iterable[int], cap: int = DEFAULT_CAP) -> list[RegionSet]:
    b = _crossings_bits(d, target)
    a = incidence_matrix(d)
    ones = (1 << d.n) - 1
    sols = gf2.solve_with_parity(a, b, 0, cap) + gf2.solve_with_parity(a, b ^ ones, 1, cap)
    return canonical_order(bits_to_indices(x) for x in sols)


def _require_knot(d: Diagram) -> None:
    if not d.is_knot:
        raise PreconditionError("this operation needs a knot diagram")


def star_condition(d: Diagram, crossing: int) -> bool:
    """Whether changing ``crossing`` by RCC needs an odd number of regions.

    Only meaningful when every ineffective set has even size; otherwise a
    :class:`PreconditionError` is raised.
    """
    _require_knot(d)
    if any(len(s) % 2 for s in ineffective_sets(d)):
        raise PreconditionError("some ineffective region set has odd cardinality")
    parities = {len(s) % 2 for s in solve_rcc(d, {crossing})}
    if len(parities) != 1:
        raise AssertionError("witness parities are not uniform")
    return parities.pop() == 1


@dataclass(frozen=True)
class CrossingVerdict:
    crossing: int
    star: bool
    rcc_witnesses: tuple[RegionSet, ...]
    rfcc_witnesses: tuple[RegionSet, ...]

    @property
    def realizable(self) -> bool:
        return bool(self.rfcc_witnesses)


@dataclass(frozen=True)
class RealizabilityReport:
    diagram: str
    n: int
    m: int
    ineffective: tuple[RegionSet, ...]
    path: str
    star_crossings: tuple[int, ...]
    per_crossing: tuple[CrossingVerdict, ...] = field(default_factory=tuple)

    @property
    def star_count(self) -> int:
        return len(self.star_crossings)

    @property
    def unrealizable(self) -> tuple[int, ...]:
        return tuple(v.crossing for v in self.per_crossing if not v.realizable)

    def to_dict(self) -> dict:
        def arr(sets: Iterable[RegionSet]) -> list[list[int]]:
            return [sorted(s) for s in sets]

        return {
            "diagram": self.diagram,
            "n": self.n,
            "m": self.m,
            "ineffective": arr(self.ineffective),
            "path": self.path,
            "star_crossings": list(self.star_crossings),
            "per_crossing": [
                {
                    "crossing": v.crossing,
                    "rcc_witnesses": arr(v.rcc_witnesses),
                    "rfcc_witnesses": arr(v.rfcc_witnesses),
                }
                for v in self.per_crossing
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def rfcc_realizability(d: Diagram) -> RealizabilityReport:
    """Classify every crossing change of a knot diagram as RFCC-realizable or not.

    With an odd ineffective set every crossing is realizable.  Otherwise the
    crossings satisfying the star condition decide: all crossings are
    realizable when their number is even, and exactly those crossings are not
    when it is odd.  The verdicts are checked against direct solving.
    """
    _require_knot(d)
    ineffective = ineffective_sets(d)
    odd_kernel = any(len(s) % 2 for s in ineffective)
    path = PATH_ODD_INEFFECTIVE if odd_kernel else PATH_STAR_PARITY
    verdicts = []
    for c in range(d.n):
        rcc = tuple(solve_rcc(d, {c}))
        star = not odd_kernel and all(len(s) % 2 for s in rcc)
        verdicts.append(CrossingVerdict(c, star, rcc, tuple(solve_rfcc(d, {c}))))
    stars = tuple(v.crossing for v in verdicts if v.star)
    for v in verdicts:
        predicted = odd_kernel or len(stars) % 2 == 0 or not v.star
        if predicted != v.realizable:
            raise AssertionError(f"crossing {v.crossing}: decision disagrees with direct solving")
    return RealizabilityReport(
        serialize_pd(d), d.n, d.m, tuple(ineffective), path, stars, tuple(verdicts)
    )


# ---------------------------------------------------------------------------
# Untying


def untie_knot(d: Diagram, mode: str = "rcc") -> RegionSet:
    """A region set whose move turns ``d`` into a descending diagram (or, for
    RFCC with an odd set, the mirror of one)."""
    _require_knot(d)
    target = descending_target(d)
    if mode == "rcc":
        witnesses = solve_rcc(d, target)
    elif mode == "rfcc":
        witnesses = solve_rfcc(d, target) or solve_rfcc(d, frozenset(range(d.n)) - target)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if not witnesses:
        raise AssertionError("no untying witness for a knot diagram")
    best = witnesses[0]
    result = apply_rcc(d, best) if mode == "rcc" else apply_rfcc(d, best)
    if not (is_descending(result) or is_descending(mirror(result))):
        raise AssertionError("untying witness does not produce a descending diagram")
    return best


def _untie_link(d: Diagram, mode: str, cap: int) -> tuple[bool, RegionSet | None]:
    if d.num_components < 2:
        raise PreconditionError("link untying needs at least two components; use untie_knot")
    criterion = total_linking_number(d) % 2 == 0
    everything = frozenset(range(d.n))
    for target in all_descending_targets(d):
        if mode == "rcc":
            witnesses = solve_rcc(d, target, cap)
        else:
            witnesses = solve_rfcc(d, target, cap) or solve_rfcc(d, everything - target, cap)
        if witnesses:
            return criterion, witnesses[0]
    return criterion, None


def untie_by_rcc(d: Diagram, cap: int = DEFAULT_CAP) -> tuple[bool, RegionSet | None]:
    """(total linking number is even, a witness reaching a descending diagram).

    Descending targets are tried in the order of
    :func:`~regionmoves.diagram.descending_choices`, default choice first.
    """
    return _untie_link(d, "rcc", cap)


def untie_by_rfcc(d: Diagram, cap: int = DEFAULT_CAP) -> tuple[bool, RegionSet | None]:
    return _untie_link(d, "rfcc", cap)

"""Combinatorial link diagrams built from PD codes.

A crossing ``X[a,b,c,d]`` lists its four edge labels counterclockwise,
starting from the incoming under-strand ``a``; the under-strand leaves through
``c`` and the over-strand joins ``b`` and ``d``.  Ports are addressed as
``(crossing, slot)`` with ``slot`` in ``0..3`` following that order, and the
corner ``k`` of a crossing is the wedge between slots ``k`` and ``k + 1``.

Regions are the faces of the rotation system.  An edge side is a pair
``(label, side)`` where side ``0`` lies to the left of the oriented edge and
side ``1`` to its right.  Regions are indexed by the smallest edge side on
their boundary, so indices are stable under crossing changes.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

__all__ = [
    "BLACK",
    "WHITE",
    "Checkerboard",
    "Crossing",
    "Diagram",
    "DiagramError",
    "NonPlanarError",
    "PreconditionError",
    "Region",
    "SpliceResult",
    "add_kink",
    "all_descending_targets",
    "change_crossings",
    "checkerboard",
    "corner_count",
    "descending_choices",
    "descending_target",
    "format_pd",
    "is_descending",
    "mirror",
    "nugatory_sum",
    "parse_pd",
    "reducible_crossings",
    "regions",
    "serialize_pd",
    "splice",
    "total_linking_number",
]

Port = tuple[int, int]
EdgeSide = tuple[int, int]

WHITE = "white"
BLACK = "black"


class DiagramError(ValueError):
    """Malformed PD data or an invalid diagram."""


class NonPlanarError(DiagramError):
    """The rotation system does not describe a planar diagram."""


class PreconditionError(ValueError):
    """An operation was called on a diagram outside its domain."""


class _Topology(NamedTuple):
    tail: dict[int, Port]
    head: dict[int, Port]
    components: tuple[tuple[int, ...], ...]
    component_of: dict[int, int]
    over_in: tuple[int, ...]


@dataclass(frozen=True)
class Crossing:
    index: int
    ports: tuple[int, int, int, int]
    over_in: int  # slot (1 or 3) where the over-strand enters
    sign: int

    @property
    def over_out(self) -> int:
        return (self.over_in + 2) % 4

    @property
    def under_edges(self) -> tuple[int, int]:
        return self.ports[0], self.ports[2]

    @property
    def over_edges(self) -> tuple[int, int]:
        """(incoming, outgoing) labels of the over-strand."""
        return self.ports[self.over_in], self.ports[self.over_out]


@dataclass(frozen=True)
class Region:
    index: int
    key: EdgeSide | None
    boundary: tuple[tuple[EdgeSide, ...], ...]
    corners: tuple[Port, ...]

    def corner_count(self, crossing: int) -> int:
        return sum(1 for c, _ in self.corners if c == crossing)


@dataclass(frozen=True)
class Checkerboard:
    colors: tuple[str, ...]

    def color(self, region: int) -> str:
        return self.colors[region]

    @property
    def black(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.colors) if c == BLACK)

    @property
    def white(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.colors) if c == WHITE)


@dataclass(frozen=True)
class Diagram:
    """An oriented link diagram.

    ``pd`` holds one ``(a, b, c, d)`` tuple per crossing; ``free_loops``
    counts components without crossings, which PD codes cannot express.
    Instances are immutable and validated on construction; planarity is
    checked lazily by :attr:`regions`.
    """

    pd: tuple[tuple[int, int, int, int], ...]
    free_loops: int = 0

    def __post_init__(self) -> None:
        pd = tuple(tuple(int(x) for x in c) for c in self.pd)
        for c in pd:
            if len(c) != 4:
                raise DiagramError(f"crossing {c} does not have 4 ports")
        object.__setattr__(self, "pd", _normalize_short_components(pd))
        if self.free_loops < 0:
            raise DiagramError("free_loops must be non-negative")
        self._topology  # noqa: B018 - validates labels and orientation

    @property
    def n(self) -> int:
        return len(self.pd)

    @property
    def m(self) -> int:
        return len(self.regions)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(range(1, 2 * self.n + 1))

    @property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Edge labels of each crossed component, in traversal order."""
        return self._topology.components

    @property
    def num_components(self) -> int:
        return len(self._topology.components) + self.free_loops

    @property
    def is_knot(self) -> bool:
        return self.num_components == 1

    def component_of(self, edge: int) -> int:
        return self._topology.component_of[edge]

    def tail(self, edge: int) -> Port:
        return self._topology.tail[edge]

    def head(self, edge: int) -> Port:
        return self._topology.head[edge]

    def mate(self, port: Port) -> Port:
        label = self.pd[port[0]][port[1]]
        t, h = self._topology.tail[label], self._topology.head[label]
        return h if port == t else t

    @cached_property
    def crossings(self) -> tuple[Crossing, ...]:
        out = []
        for i, ports in enumerate(self.pd):
            over_in = self._topology.over_in[i]
            # +1 when the over-strand runs from slot b to slot d
            out.append(Crossing(i, ports, over_in, 1 if over_in == 1 else -1))
        return tuple(out)

    @cached_property
    def _topology(self) -> _Topology:
        return _infer_topology(self.pd)

    @cached_property
    def _faces(self) -> _FaceData:
        return _compute_faces(self)

    @property
    def regions(self) -> tuple[Region, ...]:
        return self._faces.regions

    @property
    def outer_region(self) -> int:
        return self._faces.outer

    def side_region(self, edge: int, side: int) -> int:
        return self._faces.side_region[(edge, side)]

    def corner_region(self, crossing: int, corner: int) -> int:
        return self._faces.corner_region[(crossing, corner)]

    @cached_property
    def adjacent_pairs(self) -> tuple[tuple[int, int], ...]:
        """Region pairs separated by an edge (one pair per edge or free loop)."""
        pairs = [(self.side_region(e, 0), self.side_region(e, 1)) for e in self.edges]
        base = len(self.regions) - self.free_loops
        pairs.extend((self.outer_region, base + i) for i in range(self.free_loops))
        return tuple(pairs)

    def __str__(self) -> str:
        return serialize_pd(self)


# ---------------------------------------------------------------------------
# Parsing and orientation


_TERM = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")


def parse_pd(text: str, free_loops: int = 0) -> Diagram:
    """Parse whitespace-separated ``X[a,b,c,d]`` terms; ``#`` starts a comment.

    Raises :class:`DiagramError` for malformed text or labels and
    :class:`NonPlanarError` when the crossings do not close up in the plane.
    """
    crossings = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        pos = 0
        while True:
            while pos < len(line) and line[pos].isspace():
                pos += 1
            if pos >= len(line):
                break
            match = _TERM.match(line, pos)
            if match is None:
                raise DiagramError(f"line {lineno}: cannot parse PD term at {line[pos:pos + 20]!r}")
            crossings.append(tuple(int(g) for g in match.groups()))
            pos = match.end()
    d = Diagram(tuple(crossings), free_loops=free_loops)
    d.regions  # noqa: B018 - reject non-planar input up front
    return d


def serialize_pd(d: Diagram) -> str:
    """Canonical PD text: crossings sorted by their smallest labels."""
    order = sorted(range(d.n), key=lambda i: _serial_key(d.pd, i))
    return " ".join("X[{},{},{},{}]".format(*d.pd[i]) for i in order)


def format_pd(d: Diagram) -> str:
    """PD text in stored crossing order, so crossing indices stay meaningful."""
    return " ".join("X[{},{},{},{}]".format(*c) for c in d.pd)


def _infer_topology(pd: tuple[tuple[int, int, int, int], ...]) -> _Topology:
    n = len(pd)
    occurrences: dict[int, list[Port]] = {}
    for i, c in enumerate(pd):
        for k, label in enumerate(c):
            occurrences.setdefault(label, []).append((i, k))
    bad = sorted(lbl for lbl, ps in occurrences.items() if len(ps) != 2)
    if bad:
        raise DiagramError(
            "edge labels must appear exactly twice; offending labels: " + ",".join(map(str, bad))
        )
    if set(occurrences) != set(range(1, 2 * n + 1)):
        raise DiagramError(f"edge labels must be exactly 1..{2 * n}")

    def other(label: int, port: Port) -> Port:
        a, b = occurrences[label]
        return b if port == a else a

    tail: dict[int, Port] = {}
    head: dict[int, Port] = {}
    components = []
    component_of: dict[int, int] = {}
    seen: set[int] = set()
    for start in sorted(occurrences):
        if start in seen:
            continue
        # walk the component once, in the direction leaving occurrences[start][0]
        walk: list[tuple[int, Port, Port]] = []
        label, out_port = start, occurrences[start][0]
        while True:
            in_port = other(label, out_port)
            walk.append((label, out_port, in_port))
            nxt = (in_port[0], (in_port[1] + 2) % 4)
            label, out_port = pd[nxt[0]][nxt[1]], nxt
            if label == start and out_port == occurrences[start][0]:
                break
        forward = _walk_direction(pd, walk)
        if not forward:
            walk = [(lbl, b, a) for lbl, a, b in reversed(walk)]
        labels = [lbl for lbl, _, _ in walk]
        # rotate so the smallest label comes first
        r = labels.index(min(labels))
        walk = walk[r:] + walk[:r]
        labels = labels[r:] + labels[:r]
        if labels != list(range(labels[0], labels[0] + len(labels))):
            raise DiagramError(f"edge labels {labels} are not consecutive along their component")
        for lbl, t, h in walk:
            tail[lbl], head[lbl] = t, h
            component_of[lbl] = len(components)
            seen.add(lbl)
        components.append(tuple(labels))

    over_in = []
    for i in range(n):
        ins = [k for k in (1, 3) if head[pd[i][k]] == (i, k)]
        if len(ins) != 1:
            raise DiagramError(f"crossing {i}: over-strand is not consistently oriented")
        over_in.append(ins[0])
    return _Topology(tail, head, tuple(components), component_of, tuple(over_in))


def _walk_direction(
    pd: tuple[tuple[int, int, int, int], ...], walk: list[tuple[int, Port, Port]]
) -> bool:
    """Whether a component walk already runs along the PD orientation."""
    verdicts = set()
    for _, _, arrive in walk:
        if arrive[1] == 0:
            verdicts.add(True)
        elif arrive[1] == 2:
            verdicts.add(False)
    if len(verdicts) > 1:
        raise DiagramError("under-strands of a component disagree on its orientation")
    if verdicts:
        return verdicts.pop()
    labels = [lbl for lbl, _, _ in walk]
    if len(labels) >= 3:
        lo = labels.index(min(labels))
        return labels[(lo + 1) % len(labels)] == labels[lo] + 1
    # all-over two-edge component: the labels cannot decide, so the lower
    # label must end at the crossing that serializes first
    (_, _, arrive_lo), (_, _, arrive_hi) = sorted(walk)
    return _serial_key(pd, arrive_lo[0]) < _serial_key(pd, arrive_hi[0])


def _serial_key(pd: tuple[tuple[int, int, int, int], ...], i: int) -> tuple:
    # the order used by serialize_pd; swapping a component's labels keeps it
    return sorted(pd[i]), i


def _normalize_short_components(
    pd: tuple[tuple[int, int, int, int], ...]
) -> tuple[tuple[int, int, int, int], ...]:
    """Swap the labels of two-edge components that break the all-over rule.

    PD text cannot record the direction of a two-edge component lying entirely
    over, so :func:`_walk_direction` falls back to a label rule.  Relabeling
    every two-edge component to obey that rule keeps the orientation stable
    when crossing changes move the component over or under.
    """
    topo = _infer_topology(pd)
    swap = {}
    for comp in topo.components:
        if len(comp) != 2:
            continue
        lo, hi = comp
        if _serial_key(pd, topo.head[lo][0]) > _serial_key(pd, topo.head[hi][0]):
            swap.update({lo: hi, hi: lo})
    if not swap:
        return pd
    return tuple(tuple(swap.get(x, x) for x in c) for c in pd)


# ---------------------------------------------------------------------------
# Faces


class _FaceData(NamedTuple):
    regions: tuple[Region, ...]
    outer: int
    side_region: dict[EdgeSide, int]
    corner_region: dict[Port, int]


def _dart_side(d: Diagram, port: Port) -> EdgeSide:
    label = d.pd[port[0]][port[1]]
    return (label, 0 if d.tail(label) == port else 1)


def _compute_faces(d: Diagram) -> _FaceData:
    # A dart departs a port along its edge with the face on its left; arriving
    # at slot l it turns left and leaves through slot l - 1, passing corner l - 1.
    faces: list[list[Port]] = []
    face_of: dict[Port, int] = {}
    for i in range(d.n):
        for k in range(4):
            if (i, k) in face_of:
                continue
            cycle = []
            port = (i, k)
            while port not in face_of:
                face_of[port] = len(faces)
                cycle.append(port)
                j, slot = d.mate(port)
                port = (j, (slot - 1) % 4)
            faces.append(cycle)

    # split components of the crossing graph
    parent = list(range(d.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in d.edges:
        parent[find(d.tail(e)[0])] = find(d.head(e)[0])
    split: dict[int, list[int]] = {}
    for f, cycle in enumerate(faces):
        split.setdefault(find(cycle[0][0]), []).append(f)
    for root, fs in split.items():
        size = sum(1 for i in range(d.n) if find(i) == root)
        if len(fs) != size + 2:
            raise NonPlanarError(
                f"{len(fs)} faces for a connected piece with {size} crossings (expected {size + 2})"
            )

    keys = [min(_dart_side(d, p) for p in cycle) for cycle in faces]
    # each split piece contributes its lowest-keyed face to one shared outer region
    outers = {min(fs, key=lambda f: keys[f]) for fs in split.values()}
    groups: list[list[int]] = [sorted(outers)] if outers else []
    groups += [[f] for f in range(len(faces)) if f not in outers]
    groups.sort(key=lambda g: min(keys[f] for f in g))

    regions = []
    side_region: dict[EdgeSide, int] = {}
    corner_region: dict[Port, int] = {}
    outer = 0
    for idx, group in enumerate(groups):
        boundary = []
        corners = []
        for f in sorted(group, key=lambda f: keys[f]):
            boundary.append(tuple(_dart_side(d, p) for p in faces[f]))
            corners.extend(faces[f])
        for cycle in boundary:
            for side in cycle:
                side_region[side] = idx
        for p in corners:
            corner_region[p] = idx
        if outers and group[0] in outers:
            outer = idx
        regions.append(
            Region(idx, min(keys[f] for f in group), tuple(boundary), tuple(sorted(corners)))
        )
    if not regions:
        regions.append(Region(0, None, (), ()))
    base = len(regions)
    regions.extend(Region(base + i, None, (), ()) for i in range(d.free_loops))
    return _FaceData(tuple(regions), outer, side_region, corner_region)


def regions(d: Diagram) -> tuple[Region, ...]:
    """Faces of ``d`` in canonical order.

    A connected diagram with ``n`` crossings has ``n + 2`` regions; each further
    split piece (or free loop) adds one more.  Raises :class:`NonPlanarError`
    when the rotation system is not planar.
    """
    return d.regions


def corner_count(d: Diagram, crossing: int, region: int) -> int:
    if not 0 <= crossing < d.n:
        raise IndexError(f"crossing {crossing} out of range")
    if not 0 <= region < d.m:
        raise IndexError(f"region {region} out of range")
    return d.regions[region].corner_count(crossing)


def reducible_crossings(d: Diagram) -> frozenset[int]:
    """Nugatory crossings: those meeting some region in two corners."""
    out = set()
    for r in d.regions:
        counts = Counter(c for c, _ in r.corners)
        out.update(c for c, k in counts.items() if k >= 2)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Crossing changes


def change_crossings(d: Diagram, targets: Iterable[int]) -> Diagram:
    """Swap over and under at each crossing in ``targets``.

    The port cycle is only rotated so that the new under-strand comes first,
    hence the rotation system and the region indexing are unchanged.
    """
    targets = set(targets)
    for t in targets:
        if not 0 <= t < d.n:
            raise IndexError(f"crossing {t} out of range")
    pd = []
    for c in d.crossings:
        if c.index in targets:
            r = c.over_in
            pd.append(c.ports[r:] + c.ports[:r])
        else:
            pd.append(c.ports)
    return Diagram(tuple(pd), d.free_loops)


def mirror(d: Diagram) -> Diagram:
    return change_crossings(d, range(d.n))


# ---------------------------------------------------------------------------
# Checkerboard coloring


def checkerboard(d: Diagram, anchor: tuple[int, str] | None = None) -> Checkerboard:
    """Proper two-coloring of the regions.

    Without ``anchor`` region 0 is white; otherwise ``anchor = (region, color)``
    fixes the color of one region.
    """
    start, color = anchor if anchor is not None else (0, WHITE)
    if color not in (WHITE, BLACK):
        raise ValueError(f"unknown color {color!r}")
    m = d.m
    if not 0 <= start < m:
        raise IndexError(f"region {start} out of range")
    nbrs: list[list[int]] = [[] for _ in range(m)]
    for a, b in d.adjacent_pairs:
        nbrs[a].append(b)
        nbrs[b].append(a)
    bit = [-1] * m
    bit[start] = 1 if color == BLACK else 0
    queue = [start]
    while queue:
        r = queue.pop()
        for s in nbrs[r]:
            if bit[s] == -1:
                bit[s] = 1 - bit[r]
                queue.append(s)
            elif bit[s] == bit[r]:
                raise AssertionError(f"regions {r} and {s} are adjacent but share a color")
    if -1 in bit:
        raise AssertionError("region adjacency graph is disconnected")
    return Checkerboard(tuple(BLACK if b else WHITE for b in bit))


# ---------------------------------------------------------------------------
# Linking and descending diagrams


def total_linking_number(d: Diagram) -> int:
    """Sum of pairwise linking numbers: half the sign sum over mixed crossings."""
    if d.num_components < 2:
        raise PreconditionError("total linking number needs at least two components")
    total = 0
    for c in d.crossings:
        if d.component_of(c.ports[0]) != d.component_of(c.ports[c.over_in]):
            total += c.sign
    if total % 2:
        raise AssertionError("odd sign sum over mixed crossings")
    return total // 2


def descending_target(
    d: Diagram,
    basepoints: Mapping[int, int] | None = None,
    order: Sequence[int] | None = None,
) -> frozenset[int]:
    """Crossings to change so that ``d`` becomes descending.

    Components are traversed in ``order`` (default: by smallest label), each
    from the tail of its basepoint edge (default: its smallest label); a
    crossing is flipped when it is first reached on the under-strand.
    """
    comps = d.components
    if order is None:
        order = range(len(comps))
    if sorted(order) != list(range(len(comps))):
        raise ValueError(f"order {list(order)} is not a permutation of the components")
    seen: set[int] = set()
    flips = set()
    for ci in order:
        comp = comps[ci]
        base = comp[0] if basepoints is None or ci not in basepoints else basepoints[ci]
        if base not in comp:
            raise ValueError(f"basepoint {base} is not an edge of component {ci}")
        start = comp.index(base)
        for label in comp[start:] + comp[:start]:
            crossing, slot = d.head(label)
            if crossing in seen:
                continue
            seen.add(crossing)
            if slot == 0:
                flips.add(crossing)
    return frozenset(flips)


def is_descending(
    d: Diagram,
    basepoints: Mapping[int, int] | None = None,
    order: Sequence[int] | None = None,
) -> bool:
    return not descending_target(d, basepoints, order)


def descending_choices(d: Diagram) -> Iterator[tuple[dict[int, int], tuple[int, ...]]]:
    """Every (basepoints, order) pair; the default choice comes first."""
    comps = d.components
    for order in itertools.permutations(range(len(comps))):
        for bases in itertools.product(*comps):
            yield dict(enumerate(bases)), order


def all_descending_targets(d: Diagram) -> list[frozenset[int]]:
    """Distinct descending targets, in first-seen order of :func:`descending_choices`."""
    out: dict[frozenset[int], None] = {}
    for bases, order in descending_choices(d):
        out.setdefault(descending_target(d, bases, order), None)
    return list(out)


# ---------------------------------------------------------------------------
# Splicing


@dataclass(frozen=True)
class SpliceResult:
    """Oriented smoothing of a knot diagram at one crossing.

    ``loop1``/``loop2`` are the original edges of the two resulting components
    in traversal order; ``d1``/``d2`` keep only one of them.  ``region_map_1``
    sends each region of the original to the region of ``d1`` containing it.
    """

    crossing: int
    spliced: Diagram
    d1: Diagram
    d2: Diagram
    loop1: tuple[int, ...]
    loop2: tuple[int, ...]
    region_map_1: tuple[int, ...]
    region_map_2: tuple[int, ...]
    crossings_1: dict[int, int] = field(default_factory=dict)
    crossings_2: dict[int, int] = field(default_factory=dict)
    inter_crossings: frozenset[int] = frozenset()

    def swapped(self) -> SpliceResult:
        return SpliceResult(
            self.crossing, self.spliced, self.d2, self.d1, self.loop2, self.loop1,
            self.region_map_2, self.region_map_1, self.crossings_2, self.crossings_1,
            self.inter_crossings,
        )


def _restrict(
    d: Diagram, loops: Sequence[Sequence[int]], keep: set[int]
) -> tuple[Diagram, dict[int, int | None], dict[int, int]]:
    """Diagram formed by closed edge loops of ``d``, keeping only ``keep`` crossings.

    Edges between consecutive kept passages merge into one new edge; a loop
    without kept passages becomes a free loop (its edges map to ``None``).
    """
    label_of: dict[int, int | None] = {}
    free = 0
    base = 0
    for loop in loops:
        stops = [t for t, e in enumerate(loop) if d.head(e)[0] in keep]
        if not stops:
            free += 1
            label_of.update((e, None) for e in loop)
            continue
        first = stops[0] + 1
        cur = base + 1
        for e in list(loop[first:]) + list(loop[:first]):
            label_of[e] = cur
            if d.head(e)[0] in keep:
                cur += 1
        base += len(stops)
    crossing_map = {}
    pd = []
    for i in sorted(keep):
        crossing_map[i] = len(pd)
        pd.append(tuple(label_of[e] for e in d.pd[i]))
    return Diagram(tuple(pd), free), label_of, crossing_map


def _region_map(d: Diagram, sub: Diagram, kept: Sequence[int], dropped: Sequence[int],
                label_of: Mapping[int, int | None]) -> tuple[int, ...]:
    parent = list(range(d.m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in dropped:
        parent[find(d.side_region(e, 0))] = find(d.side_region(e, 1))
    target: dict[int, int] = {}
    for e in kept:
        for side in (0, 1):
            label = label_of[e]
            if label is None:
                # free loop: left side is its inside (region 1)
                r = 1 if side == 0 else 0
            else:
                r = sub.side_region(label, side)
            block = find(d.side_region(e, side))
            if target.setdefault(block, r) != r:
                raise AssertionError("splice region map is inconsistent")
    mapping = tuple(target[find(r)] for r in range(d.m))
    if len(target) != sub.m or sorted(set(mapping)) != list(range(sub.m)):
        raise AssertionError("splice region map is not a bijection on blocks")
    return mapping


def splice(d: Diagram, crossing: int) -> SpliceResult:
    """Smooth the knot diagram ``d`` at ``crossing`` respecting its orientation.

    ``d1`` is the component leaving the crossing along the lower edge label.
    """
    if not d.is_knot:
        raise PreconditionError("splice needs a knot diagram")
    if not 0 <= crossing < d.n:
        raise IndexError(f"crossing {crossing} out of range")
    seq = d.components[0]
    x = d.crossings[crossing]
    under_in, under_out = x.under_edges
    over_in, over_out = x.over_edges

    def arc(start: int, stop: int) -> tuple[int, ...]:
        i = seq.index(start)
        rot = seq[i:] + seq[:i]
        return rot[: rot.index(stop) + 1]

    loop_a = arc(under_out, over_in)
    loop_b = arc(over_out, under_in)
    if loop_b[0] < loop_a[0]:
        loop_a, loop_b = loop_b, loop_a

    def passages(loop: Sequence[int]) -> Counter:
        return Counter(d.head(e)[0] for e in loop[:-1])

    pa, pb = passages(loop_a), passages(loop_b)
    self_a = {i for i, k in pa.items() if k == 2}
    self_b = {i for i, k in pb.items() if k == 2}
    inter = frozenset(i for i in pa if pa[i] == 1)

    spliced, _, _ = _restrict(d, [loop_a, loop_b], set(range(d.n)) - {crossing})
    d1, lab1, map1 = _restrict(d, [loop_a], self_a)
    d2, lab2, map2 = _restrict(d, [loop_b], self_b)
    rmap1 = _region_map(d, d1, loop_a, loop_b, lab1)
    rmap2 = _region_map(d, d2, loop_b, loop_a, lab2)
    return SpliceResult(crossing, spliced, d1, d2, loop_a, loop_b, rmap1, rmap2, map1, map2, inter)


# ---------------------------------------------------------------------------
# Builders for reducible diagrams


def add_kink(d: Diagram, edge: int, loop_slot: int = 1) -> Diagram:
    """Insert a one-crossing curl into ``edge``.

    The new crossing is appended last and reads ``X[e, e+1, e+1, e+2]`` when
    ``loop_slot`` is 1 or ``X[e, e+2, e+1, e+1]`` when it is 3.
    """
    if loop_slot not in (1, 3):
        raise ValueError("loop_slot must be 1 or 3")
    if edge not in d.edges:
        raise ValueError(f"no edge {edge}")
    head = d.head(edge)
    pd = []
    for i, ports in enumerate(d.pd):
        row = []
        for k, x in enumerate(ports):
            if (i, k) == head:
                row.append(edge + 2)
            else:
                row.append(x if x <= edge else x + 2)
        pd.append(tuple(row))
    if loop_slot == 1:
        pd.append((edge, edge + 1, edge + 1, edge + 2))
    else:
        pd.append((edge, edge + 2, edge + 1, edge + 1))
    return Diagram(tuple(pd), d.free_loops)


def nugatory_sum(d1: Diagram, d2: Diagram, edge1: int, edge2: int, loop_slot: int = 1) -> Diagram:
    """Join two knot diagrams through a new nugatory crossing.

    A curl is added on ``edge1`` of ``d1`` and its loop is replaced by ``d2``
    cut open at ``edge2``.
    """
    if not (d1.is_knot and d2.is_knot and d2.n):
        raise PreconditionError("nugatory_sum joins two knot diagrams with crossings")
    k = add_kink(d1, edge1, loop_slot)
    joint = k.n - 1
    loop = edge1 + 1
    size = 2 * d2.n
    pd = []
    for i, ports in enumerate(k.pd):
        row = []
        for s, x in enumerate(ports):
            if x < loop:
                row.append(x)
            elif x == loop:
                row.append(loop if (i, s) == (joint, 2) else loop + size)
            else:
                row.append(x + size)
        pd.append(tuple(row))
    head2 = d2.head(edge2)
    for i, ports in enumerate(d2.pd):
        row = []
        for s, y in enumerate(ports):
            if y == edge2:
                row.append(loop if (i, s) == head2 else loop + size)
            else:
                row.append(loop + (y - edge2) % size)
        pd.append(tuple(row))
    return Diagram(tuple(pd), d1.free_loops)

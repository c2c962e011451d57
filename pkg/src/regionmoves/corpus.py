"""Bundled diagrams with their expected metadata."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .diagram import Diagram, parse_pd, reducible_crossings, total_linking_number
from .moves import ineffective_sets, rfcc_realizability

__all__ = ["CorpusEntry", "derive_metadata", "entry", "load_corpus", "validate"]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pd: str
    description: str = ""
    free_loops: int = 0
    expected: dict = field(default_factory=dict, compare=False)

    @property
    def diagram(self) -> Diagram:
        return parse_pd(self.pd, self.free_loops)


def _files():
    return resources.files(__package__).joinpath("corpus")


def load_corpus() -> list[CorpusEntry]:
    index = json.loads(_files().joinpath("index.json").read_text())
    out = []
    for item in index:
        text = _files().joinpath(item["file"]).read_text()
        lines = text.splitlines()
        description = lines[0].lstrip("# ").strip() if lines and lines[0].startswith("#") else ""
        out.append(
            CorpusEntry(item["name"], text, description, item.get("free_loops", 0), item["expected"])
        )
    return out


def entry(name: str) -> CorpusEntry:
    for e in load_corpus():
        if e.name == name:
            return e
    raise KeyError(name)


def derive_metadata(d: Diagram) -> dict:
    meta = {
        "n": d.n,
        "m": d.m,
        "components": d.num_components,
        "reducible": len(reducible_crossings(d)),
        "ineffective_cardinalities": sorted(len(s) for s in ineffective_sets(d)),
    }
    if d.is_knot:
        report = rfcc_realizability(d)
        meta["path"] = report.path
        meta["star_count"] = report.star_count
    else:
        meta["total_linking_number"] = total_linking_number(d)
    return meta


def validate(e: CorpusEntry) -> list[str]:
    """Mismatches between the stored metadata and what the library derives."""
    derived = derive_metadata(e.diagram)
    return [
        f"{e.name}: {key} expected {e.expected.get(key)!r}, derived {value!r}"
        for key, value in derived.items()
        if e.expected.get(key) != value
    ]

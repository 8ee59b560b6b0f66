"""Tight paths and the multiplicity reduction that bounds Berge-tight-path-free hosts.

Each host edge, in canonical order, picks the (r-1)-subset of itself that
has been picked least often so far (lexicographically smallest on ties).
If no subset reaches the threshold c = (ell-r+1) * C(ell, k), the host has
at most c * C(n, r-1) edges. Otherwise a Berge tight path on ell vertices
is read back out of the pick history.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import comb

from .berge import BergeWitness, validate_witness
from .errors import ExtractionError
from .hypergraph import Hypergraph


class ReductionKind(str, enum.Enum):
    BOUND_CERTIFICATE = "BOUND_CERTIFICATE"
    EXTRACTED_PATH = "EXTRACTED_PATH"


def tight_path(r: int, ell: int) -> Hypergraph:
    """r-uniform tight path on vertices 0..ell-1; edge i is {i, ..., i+r-1}."""
    if r < 2:
        raise ValueError(f"uniformity must be at least 2, got {r}")
    if ell < r:
        raise ValueError(f"tight path needs ell >= r, got ell={ell}, r={r}")
    return Hypergraph(r, ell, [range(i, i + r) for i in range(ell - r + 1)])


def is_tight_path(pattern: Hypergraph) -> bool:
    r, ell = pattern.k, pattern.n
    return ell >= r and pattern.edges == tuple(tuple(range(i, i + r)) for i in range(ell - r + 1))


def reduction_threshold(r: int, k: int, ell: int) -> int:
    if not r < k < ell:
        raise ValueError(f"need r < k < ell, got r={r}, k={k}, ell={ell}")
    return (ell - r + 1) * comb(ell, k)


def intersection_level(pattern: Hypergraph) -> int:
    """Min over edges of the largest overlap with some other edge."""
    if pattern.m < 2:
        raise ValueError("intersection level needs at least two edges")
    sets = [set(e) for e in pattern.edges]
    return min(
        max(len(e & f) for j, f in enumerate(sets) if j != i)
        for i, e in enumerate(sets)
    )


@dataclass
class MultiplicityTable:
    counts: dict[tuple[int, ...], int] = field(default_factory=dict)
    history: dict[tuple[int, ...], list[int]] = field(default_factory=dict)

    def pick(self, edge: tuple[int, ...], r: int, when: int) -> tuple[int, ...]:
        choice = min(itertools.combinations(edge, r - 1), key=lambda s: (self.counts.get(s, 0), s))
        self.counts[choice] = self.counts.get(choice, 0) + 1
        self.history.setdefault(choice, []).append(when)
        return choice

    @property
    def max_multiplicity(self) -> int:
        return max(self.counts.values(), default=0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass
class ReductionOutcome:
    kind: ReductionKind
    c: int
    max_multiplicity: int
    path_witness: BergeWitness | None = None
    table: MultiplicityTable | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "c": self.c,
            "max_multiplicity": self.max_multiplicity,
            "witness": self.path_witness.to_json() if self.path_witness else None,
        }


def run_reduction(host: Hypergraph, r: int, ell: int) -> ReductionOutcome:
    k = host.k
    c = reduction_threshold(r, k, ell)
    table = MultiplicityTable()
    trigger = None
    for t, e in enumerate(host.edges):
        chosen = table.pick(e, r, t)
        if trigger is None and table.counts[chosen] == c:
            trigger = (chosen, t)
    if trigger is None:
        assert host.m <= c * comb(host.n, r - 1)
        return ReductionOutcome(ReductionKind.BOUND_CERTIFICATE, c, table.max_multiplicity, table=table)
    witness = _extract(host, r, ell, table, *trigger)
    return ReductionOutcome(ReductionKind.EXTRACTED_PATH, c, table.max_multiplicity, witness, table)


def _extract(host, r, ell, table, start_set, start_time) -> BergeWitness:
    window = comb(ell, host.k)
    path = list(start_set)
    first_edge = host.edges[start_time]
    fresh = [v for v in first_edge if v not in start_set]
    path.append(fresh[0])
    chosen_edges = [start_time]
    before = start_time
    while len(path) < ell:
        tail = tuple(sorted(path[-(r - 1):]))
        placed = set(path)
        earlier = [t for t in table.history.get(tail, []) if t < before]
        found = None
        for t in reversed(earlier[-window:]):
            outside = [v for v in host.edges[t] if v not in placed]
            if outside:
                found = (t, outside[0])
                break
        if found is None:
            raise ExtractionError(
                f"no recent pick of {tail} leaves the placed vertices (path so far {path})"
            )
        t, v = found
        path.append(v)
        chosen_edges.append(t)
        before = t
    witness = BergeWitness(tuple(path), tuple(enumerate(chosen_edges)))
    if not validate_witness(host, tight_path(r, ell), witness):
        raise ExtractionError(f"extracted path {path} does not validate")
    return witness

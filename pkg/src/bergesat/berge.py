"""Exact Berge containment: does a k-uniform host contain a Berge copy of a pattern?

A Berge copy of an r-uniform pattern F in H is an injective map of V(F)
into V(H) together with a bijection from E(F) onto distinct host edges such
that every pattern edge lands inside its assigned host edge. The search
backtracks over core embeddings and keeps a bipartite matching between the
fully embedded pattern edges and the host edges containing them; a node is
pruned as soon as that matching cannot be perfect.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import SearchBudgetExceeded
from .hypergraph import Hypergraph
from .matching import IncrementalMatching

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class BergeWitness:
    """Core embedding plus edge assignment certifying a Berge copy.

    ``core_map[i]`` is the host vertex for pattern vertex ``i``;
    ``edge_map`` lists ``(pattern_edge_index, host_edge_index)`` pairs
    sorted by pattern edge, indices referring to canonical edge order.
    """

    core_map: tuple[int, ...]
    edge_map: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"core_map": list(self.core_map), "edge_map": [list(p) for p in self.edge_map]}

    @classmethod
    def from_json(cls, data: dict) -> BergeWitness:
        return cls(tuple(data["core_map"]), tuple(tuple(p) for p in data["edge_map"]))


def validate_witness(host: Hypergraph, pattern: Hypergraph, witness: BergeWitness) -> bool:
    """Check a witness against raw vertex and edge sets only."""
    core = list(witness.core_map)
    if len(core) != pattern.n or len(set(core)) != len(core):
        return False
    if any(not 0 <= h < host.n for h in core):
        return False
    pairs = list(witness.edge_map)
    if sorted(p for p, _ in pairs) != list(range(pattern.m)):
        return False
    targets = [j for _, j in pairs]
    if len(set(targets)) != len(targets) or any(not 0 <= j < host.m for j in targets):
        return False
    for p, j in pairs:
        image = {core[v] for v in pattern.edges[p]}
        if not image <= set(host.edges[j]):
            return False
    return True


def _check_pattern(host: Hypergraph, pattern: Hypergraph) -> None:
    if pattern.k > host.k:
        raise ValueError(f"pattern uniformity {pattern.k} exceeds host uniformity {host.k}")
    isolated = pattern.isolated_vertices()
    if isolated:
        raise ValueError(f"pattern has isolated vertices {isolated}")


class _Search:
    def __init__(self, host: Hypergraph, pattern: Hypergraph, budget: int):
        self.host = host
        self.pattern = pattern
        self.budget = budget
        self.nodes = 0

        masks = host.edge_masks
        self.host_masks = masks
        self.host_deg = host.degrees
        nbr = [0] * host.n
        for mask, e in zip(masks, host.edges):
            for v in e:
                nbr[v] |= mask
        self.host_nbr = [m & ~(1 << v) for v, m in enumerate(nbr)]

        self.pat_deg = pattern.degrees
        pnbr: list[set[int]] = [set() for _ in range(pattern.n)]
        for e in pattern.edges:
            for v in e:
                pnbr[v].update(u for u in e if u != v)
        self.pat_nbr = pnbr

    def order(self, first: Sequence[int] = ()) -> list[int]:
        """Descending degree, preferring vertices attached to those already placed."""
        order = list(first)
        placed = set(order)
        while len(order) < self.pattern.n:
            best = max(
                (v for v in range(self.pattern.n) if v not in placed),
                key=lambda v: (len(self.pat_nbr[v] & placed), self.pat_deg[v], -v),
            )
            order.append(best)
            placed.add(best)
        return order

    def run(self, order: list[int], allowed: dict[int, int] | None = None,
            forced: tuple[int, int] | None = None) -> BergeWitness | None:
        """Search with vertices assigned in ``order``.

        ``allowed`` restricts chosen pattern vertices to a host vertex mask;
        ``forced`` pins one pattern edge to one host edge.
        """
        pattern = self.pattern
        pos = {v: i for i, v in enumerate(order)}
        completes: list[list[int]] = [[] for _ in order]
        for p, e in enumerate(pattern.edges):
            completes[max(pos[v] for v in e)].append(p)
        earlier_nbrs = [[u for u in self.pat_nbr[v] if pos[u] < pos[v]] for v in order]

        self.order_ = order
        self.completes = completes
        self.earlier_nbrs = earlier_nbrs
        self.allowed = allowed or {}
        self.core = [-1] * pattern.n
        self.used = 0
        self.matching = IncrementalMatching()
        self.forced = forced
        if forced is not None:
            p, j = forced
            self.matching.add_left(p, (j,))
        full = (1 << self.host.n) - 1
        return self._extend(0, full)

    def _compatible(self, p: int) -> list[int]:
        image = [self.core[v] for v in self.pattern.edges[p]]
        need = 0
        for h in image:
            need |= 1 << h
        pivot = min(image, key=lambda h: self.host_deg[h])
        masks = self.host_masks
        return [j for j in self.host.incidence[pivot] if masks[j] & need == need]

    def _extend(self, i: int, full: int) -> BergeWitness | None:
        if i == len(self.order_):
            return self._witness()
        v = self.order_[i]
        cand = full & ~self.used
        for u in self.earlier_nbrs[i]:
            cand &= self.host_nbr[self.core[u]]
        if v in self.allowed:
            cand &= self.allowed[v]
        need_deg = self.pat_deg[v]
        forced_p = self.forced[0] if self.forced else None
        while cand:
            low = cand & -cand
            h = low.bit_length() - 1
            cand ^= low
            if self.host_deg[h] < need_deg:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(self.budget, self.nodes)
            self.core[v] = h
            self.used |= low
            snap = self.matching.snapshot()
            ok = True
            for p in self.completes[i]:
                if p == forced_p:
                    continue
                nbrs = self._compatible(p)
                if self.forced is not None:
                    nbrs = [j for j in nbrs if j != self.forced[1]]
                if not nbrs or not self.matching.add_left(p, nbrs):
                    ok = False
                    break
            if ok:
                found = self._extend(i + 1, full)
                if found is not None:
                    return found
            self.matching.restore(snap)
            self.used &= ~low
            self.core[v] = -1
        return None

    def _witness(self) -> BergeWitness:
        pairs = tuple(sorted(self.matching.left_to_right.items()))
        return BergeWitness(tuple(self.core), pairs)


def contains_berge(
    host: Hypergraph,
    pattern: Hypergraph,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    required_edge: Iterable[int] | None = None,
) -> BergeWitness | None:
    """Return a Berge copy of ``pattern`` in ``host``, or None if there is none.

    With ``required_edge`` (which must be an edge of ``host``) only copies
    whose edge assignment uses that edge are reported. Raises
    :class:`SearchBudgetExceeded` when more than ``node_budget`` core
    assignments are tried.
    """
    _check_pattern(host, pattern)
    if pattern.m > host.m or pattern.n > host.n:
        return None
    search = _Search(host, pattern, node_budget)
    if required_edge is None:
        return search.run(search.order())

    req = tuple(sorted(required_edge))
    if req not in host.edge_index:
        raise ValueError(f"required edge {req} is not an edge of the host")
    j = host.edge_index[req]
    req_mask = host.edge_masks[j]
    for p, pe in enumerate(pattern.edges):
        first = sorted(pe, key=lambda v: (-search.pat_deg[v], v))
        found = search.run(search.order(first), {v: req_mask for v in pe}, forced=(p, j))
        if found is not None:
            return found
    return None


def contains_any_berge(
    host: Hypergraph,
    patterns: Sequence[Hypergraph],
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> tuple[int, BergeWitness] | None:
    """First pattern (in list order) with a Berge copy in ``host``."""
    for idx, pattern in enumerate(patterns):
        found = contains_berge(host, pattern, node_budget=node_budget)
        if found is not None:
            return idx, found
    return None


def expansion(pattern: Hypergraph, k: int) -> Hypergraph:
    """Pad every pattern edge with ``k - r`` fresh vertices, distinct per edge.

    Pattern vertices keep their ids; padding vertices follow in edge order.
    """
    r = pattern.k
    if k <= r:
        raise ValueError(f"expansion needs k > r, got k={k}, r={r}")
    pad = k - r
    edges = []
    nxt = pattern.n
    for e in pattern.edges:
        edges.append(tuple(e) + tuple(range(nxt, nxt + pad)))
        nxt += pad
    return Hypergraph(k, nxt, edges)

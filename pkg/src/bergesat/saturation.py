"""Saturation checks, greedy completion, degeneracy accounting, tiny-case sat numbers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .berge import DEFAULT_NODE_BUDGET, BergeWitness, contains_berge
from .constructions import LemmaInstance
from .errors import NotSaturatedError, SaturationNotFound, SizeLimitError
from .hypergraph import Hypergraph, canonical_form, parse

SAT_BRUTEFORCE_MAX_N = 8


@dataclass
class SaturationReport:
    free: bool
    saturated: bool
    blocking_nonedge: tuple[int, ...] | None = None
    creating_witness_sample: tuple[tuple[int, ...], BergeWitness] | None = None
    containing_witness: BergeWitness | None = None

    def to_json(self) -> dict:
        return {
            "free": self.free,
            "saturated": self.saturated,
            "blocking_nonedge": list(self.blocking_nonedge) if self.blocking_nonedge else None,
        }


def creates_copy(host: Hypergraph, pattern: Hypergraph, edge, node_budget=DEFAULT_NODE_BUDGET) -> BergeWitness | None:
    """Berge copy in ``host + edge`` that uses ``edge``, assuming ``host`` is free."""
    bigger = host.add_edges(edge)
    return contains_berge(bigger, pattern, node_budget=node_budget, required_edge=edge)


def is_saturated(host: Hypergraph, pattern: Hypergraph, *, node_budget: int = DEFAULT_NODE_BUDGET) -> SaturationReport:
    inside = contains_berge(host, pattern, node_budget=node_budget)
    if inside is not None:
        return SaturationReport(False, False, containing_witness=inside)
    sample = None
    for e in host.non_edges():
        w = creates_copy(host, pattern, e, node_budget)
        if w is None:
            return SaturationReport(True, False, blocking_nonedge=e, creating_witness_sample=sample)
        if sample is None:
            sample = (e, w)
    return SaturationReport(True, True, creating_witness_sample=sample)


def greedy_complete(h0: Hypergraph, pattern: Hypergraph, *, node_budget: int = DEFAULT_NODE_BUDGET,
                    monitor: bool = True) -> tuple[Hypergraph, Hypergraph]:
    """Add non-edges in lexicographic order whenever the host stays Berge-free.

    One pass suffices: a rejected edge already completes a copy, and adding
    more edges cannot undo that. Returns the saturated host and the
    hypergraph of added edges (which is also the adoption order).
    """
    if contains_berge(h0, pattern, node_budget=node_budget) is not None:
        raise NotSaturatedError("starting host already contains a Berge copy of the pattern")
    edges = set(h0.edges)
    current = h0
    added = []
    for e in h0.non_edges():
        if creates_copy(current, pattern, e, node_budget) is None:
            edges.add(e)
            added.append(e)
            current = Hypergraph(h0.k, h0.n, edges)
    if monitor:
        _monitor_tight_path(current, pattern)
    return current, Hypergraph(h0.k, h0.n, added)


def _monitor_tight_path(host: Hypergraph, pattern: Hypergraph) -> None:
    from .tightpath import ReductionKind, is_tight_path, run_reduction

    r, ell = pattern.k, pattern.n
    if is_tight_path(pattern) and r < host.k < ell:
        outcome = run_reduction(host, r, ell)
        if outcome.kind is not ReductionKind.BOUND_CERTIFICATE:
            raise AssertionError("a Berge-free host produced a tight-path extraction")


@dataclass(frozen=True)
class DegeneracyBoundInputs:
    z: int
    v1: int
    v2: int
    leftover: int
    t_order: int
    a: int
    k: int

    def __post_init__(self):
        if min(self.z, self.v1, self.v2, self.leftover, self.t_order, self.a, self.k) < 0:
            raise ValueError("degeneracy inputs must be non-negative")
        if self.leftover >= self.a:
            raise ValueError(f"leftover {self.leftover} must be below a={self.a}")

    @property
    def top(self) -> int:
        return self.z + self.v1 + self.v2 + self.leftover + (self.t_order - 2) * self.a + self.a - 1

    @property
    def clamped(self) -> bool:
        """True when the tree part is too small for the formula to mean anything."""
        return self.t_order <= 1 or self.top < 0


def degeneracy_bound(inp: DegeneracyBoundInputs) -> int:
    return comb(max(inp.top, 0), inp.k - 1)


def degeneracy_inputs(inst: LemmaInstance) -> DegeneracyBoundInputs:
    p = inst.params
    return DegeneracyBoundInputs(
        z=inst.z, v1=p.v1, v2=p.v2, leftover=p.leftover,
        t_order=inst.F_star.n - len(inst.S), a=inst.a, k=inst.k,
    )


def degeneracy_order(h: Hypergraph) -> tuple[list[int], int]:
    """Repeatedly delete a minimum-degree vertex (smallest id on ties).

    Returns the deletion order and the largest degree seen at deletion.
    """
    alive = set(range(h.n))
    deg = list(h.degrees)
    edge_alive = [True] * h.m
    order, worst = [], 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        worst = max(worst, deg[v])
        order.append(v)
        alive.remove(v)
        for j in h.incidence[v]:
            if edge_alive[j]:
                edge_alive[j] = False
                for u in h.edges[j]:
                    deg[u] -= 1
    return order, worst


def first_shallow_nonedge(h: Hypergraph, t: int) -> tuple[int, ...] | None:
    """A non-edge meeting every edge in fewer than ``t`` vertices, if any."""
    masks = h.edge_masks
    for e in h.non_edges():
        em = sum(1 << v for v in e)
        if not any(bin(em & m).count("1") >= t for m in masks):
            return e
    return None


def _saturated_by_extension(host, pattern, node_budget):
    """Saturation flag plus the free one-edge extensions of a free host."""
    saturated = True
    extensions = []
    for e in host.non_edges():
        if creates_copy(host, pattern, e, node_budget) is None:
            saturated = False
            extensions.append(e)
    return saturated, extensions


def sat_bruteforce(n: int, k: int, pattern: Hypergraph, m_cap: int, *,
                   iso_rejection: bool = True, node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[int, Hypergraph]:
    """Smallest edge count of a Berge-saturated k-uniform host on n vertices.

    Hosts are enumerated by edge count. With ``iso_rejection`` each level
    keeps one representative per isomorphism class (free hosts only, since
    every subhost of a saturated host is free); without it every m-subset
    of k-sets is tried. Raises :class:`SaturationNotFound` past ``m_cap``.
    """
    if n > SAT_BRUTEFORCE_MAX_N:
        raise SizeLimitError(f"sat_bruteforce is limited to n <= {SAT_BRUTEFORCE_MAX_N}")
    if iso_rejection:
        return _sat_levels(n, k, pattern, m_cap, node_budget)
    return _sat_plain(n, k, pattern, m_cap, node_budget)


def _sat_levels(n, k, pattern, m_cap, node_budget):
    level = {canonical_form(Hypergraph(k, n)): Hypergraph(k, n)}
    for m in range(m_cap + 1):
        nxt = {}
        for form in sorted(level):
            host = level[form]
            saturated, extensions = _saturated_by_extension(host, pattern, node_budget)
            if saturated:
                return m, parse(form)
            for e in extensions:
                bigger = host.add_edges(e)
                nxt.setdefault(canonical_form(bigger), bigger)
        if not nxt:
            break
        level = nxt
    raise SaturationNotFound(m_cap)


def _sat_plain(n, k, pattern, m_cap, node_budget):
    all_sets = list(itertools.combinations(range(n), k))
    for m in range(min(m_cap, len(all_sets)) + 1):
        for chosen in itertools.combinations(all_sets, m):
            host = Hypergraph(k, n, chosen)
            if contains_berge(host, pattern, node_budget=node_budget) is not None:
                continue
            if _saturated_by_extension(host, pattern, node_budget)[0]:
                return m, host
    raise SaturationNotFound(m_cap)

"""Exact vertex cover and feedback vertex numbers, components, case selection."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import SizeLimitError
from .hypergraph import Hypergraph, induced_subhypergraph

EXACT_SIZE_CAP = 24


class CaseTag(str, enum.Enum):
    F0 = "F0"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    BETA_LARGE = "BETA_LARGE"
    UNSUPPORTED = "UNSUPPORTED"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CoverCertificate:
    vertices: tuple[int, ...]
    kind: str  # "vertex-cover" or "feedback-set"

    def validates(self, graph: Hypergraph) -> bool:
        chosen = set(self.vertices)
        if self.kind == "vertex-cover":
            return all(chosen & set(e) for e in graph.edges)
        if self.kind == "feedback-set":
            rest, _ = induced_subhypergraph(graph, set(range(graph.n)) - chosen)
            return is_forest(rest)
        raise ValueError(f"unknown certificate kind {self.kind!r}")


def _require_graph(g: Hypergraph) -> None:
    if g.k != 2:
        raise ValueError(f"expected a graph (k=2), got k={g.k}")


def _adjacency(n: int, edges) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def connected_components(g: Hypergraph) -> list[tuple[Hypergraph, tuple[int, ...]]]:
    """Components ordered by smallest vertex.

    Each entry is ``(component, vmap)`` where ``vmap[i]`` is the vertex of
    ``g`` that component vertex ``i`` came from.
    """
    _require_graph(g)
    adj = _adjacency(g.n, g.edges)
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        sub, relabel = induced_subhypergraph(g, comp)
        vmap = tuple(sorted(relabel, key=relabel.__getitem__))
        out.append((sub, vmap))
    return out


def is_forest(g: Hypergraph) -> bool:
    _require_graph(g)
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _has_cycle(n: int, edges, alive: int) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if not (alive >> u & 1 and alive >> v & 1):
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False


class _CoverSolver:
    """Branch and bound for minimum vertex cover with forced in/out vertices."""

    def __init__(self, g: Hypergraph):
        self.n = g.n
        self.edges = list(g.edges)
        self.adj = _adjacency(g.n, g.edges)

    def solve(self, forced_in: frozenset = frozenset(), forced_out: frozenset = frozenset()):
        for u, v in self.edges:
            if u in forced_out and v in forced_out:
                return None
        chosen = set(forced_in)
        for v in forced_out:
            chosen |= self.adj[v]
        if chosen & forced_out:
            return None
        self.best = None
        self.forced_out = forced_out
        self._branch(chosen)
        return self.best

    def _uncovered(self, chosen):
        return [(u, v) for u, v in self.edges if u not in chosen and v not in chosen]

    def _branch(self, chosen: set) -> None:
        rest = self._uncovered(chosen)
        if not rest:
            if self.best is None or len(chosen) < len(self.best):
                self.best = set(chosen)
            return
        # greedy maximal matching is a lower bound on what remains
        matched, lb = set(), 0
        for u, v in rest:
            if u not in matched and v not in matched:
                matched.update((u, v))
                lb += 1
        if self.best is not None and len(chosen) + lb >= len(self.best):
            return
        deg: dict[int, int] = {}
        for u, v in rest:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        v = max(deg, key=lambda x: (deg[x], -x))
        if v not in self.forced_out:
            self._branch(chosen | {v})
        nbrs = {w for a, b in rest for w in (a, b) if v in (a, b) and w != v}
        if not nbrs & self.forced_out:
            self.forced_out = self.forced_out | {v}
            self._branch(chosen | nbrs)
            self.forced_out = self.forced_out - {v}


class _FeedbackSolver:
    """Branch and bound for minimum feedback vertex set with forced in/out vertices."""

    def __init__(self, g: Hypergraph):
        self.n = g.n
        self.edges = list(g.edges)

    def solve(self, forced_in: frozenset = frozenset(), forced_out: frozenset = frozenset()):
        keep_mask = sum(1 << v for v in forced_out)
        if _has_cycle(self.n, self.edges, keep_mask):
            return None
        alive = ((1 << self.n) - 1) & ~sum(1 << v for v in forced_in)
        self.best = None
        self._branch(alive, set(forced_in), set(forced_out))
        return self.best

    def _core(self, alive: int) -> tuple[int, dict[int, set[int]]]:
        """Strip vertices of degree <= 1; they never lie on a cycle."""
        adj: dict[int, set[int]] = {}
        for u, v in self.edges:
            if alive >> u & 1 and alive >> v & 1:
                adj.setdefault(u, set()).add(v)
                adj.setdefault(v, set()).add(u)
        queue = [v for v, s in adj.items() if len(s) <= 1]
        while queue:
            v = queue.pop()
            if v not in adj:
                continue
            for w in adj.pop(v):
                if w in adj:
                    adj[w].discard(v)
                    if len(adj[w]) <= 1:
                        queue.append(w)
        core = sum(1 << v for v in adj)
        return core, adj

    def _branch(self, alive: int, deleted: set, fixed: set) -> None:
        core, adj = self._core(alive)
        if not adj:
            if self.best is None or len(deleted) < len(self.best):
                self.best = set(deleted)
            return
        n_core = len(adj)
        m_core = sum(len(s) for s in adj.values()) // 2
        max_deg = max(len(s) for s in adj.values())
        # each deletion lowers the cycle rank by at most max_deg - 1
        cyclomatic = m_core - n_core + 1
        lb = -(-cyclomatic // max(max_deg - 1, 1)) if cyclomatic > 0 else 1
        if self.best is not None and len(deleted) + max(lb, 1) >= len(self.best):
            return
        free = [v for v in adj if v not in fixed]
        if not free:
            return
        v = max(free, key=lambda x: (len(adj[x]), -x))
        self._branch(core & ~(1 << v), deleted | {v}, fixed)
        fixed_mask = sum(1 << u for u in fixed | {v})
        if not _has_cycle(self.n, self.edges, fixed_mask & core):
            self._branch(core, deleted, fixed | {v})


def _lex_min_certificate(solver, n: int, size: int) -> tuple[int, ...]:
    forced_in: set[int] = set()
    forced_out: set[int] = set()
    for v in range(n):
        trial = solver.solve(frozenset(forced_in | {v}), frozenset(forced_out))
        if trial is not None and len(trial) == size:
            forced_in.add(v)
        else:
            forced_out.add(v)
        if len(forced_in) == size:
            break
    return tuple(sorted(forced_in))


def _check_cap(g: Hypergraph, cap: int) -> None:
    if g.n > cap:
        raise SizeLimitError(f"exact solver capped at {cap} vertices, got {g.n}")


def vertex_cover_number(g: Hypergraph, cap: int = EXACT_SIZE_CAP) -> tuple[int, CoverCertificate]:
    """Exact β(g) with the lexicographically least minimum cover."""
    _require_graph(g)
    _check_cap(g, cap)
    solver = _CoverSolver(g)
    best = solver.solve()
    beta = len(best)
    cert = CoverCertificate(_lex_min_certificate(solver, g.n, beta), "vertex-cover")
    return beta, cert


def feedback_number(g: Hypergraph, cap: int = EXACT_SIZE_CAP) -> tuple[int, CoverCertificate]:
    """Exact f(g) with the lexicographically least minimum feedback set."""
    _require_graph(g)
    _check_cap(g, cap)
    solver = _FeedbackSolver(g)
    best = solver.solve()
    f = len(best)
    cert = CoverCertificate(_lex_min_certificate(solver, g.n, f), "feedback-set")
    return f, cert


def case_select(g: Hypergraph, k: int) -> CaseTag:
    """Pick the case-table row that handles forbidden graph ``g`` at uniformity ``k``.

    β(g) >= k+1 wins outright; otherwise the minimum feedback number over
    the components decides.
    """
    _require_graph(g)
    if g.m == 0:
        raise ValueError("forbidden graph has no edges")
    if g.isolated_vertices():
        raise ValueError("forbidden graph has isolated vertices")
    beta, _ = vertex_cover_number(g)
    if beta >= k + 1:
        return CaseTag.BETA_LARGE
    min_f = min(feedback_number(comp)[0] for comp, _ in connected_components(g))
    if min_f == 0:
        return CaseTag.F0
    if min_f == 1:
        return CaseTag.F1
    if min_f == 2:
        return CaseTag.F2
    if min_f == 3 and beta in (4, 5):
        return CaseTag.F3
    if min_f == 4 and k == 5 and beta == 5:
        return CaseTag.F4
    return CaseTag.UNSUPPORTED

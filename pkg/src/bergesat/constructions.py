"""The H_k(n, a, G, S) host and the per-case lemma instances built from it.

Vertex layout of H_k(n, a, G, S), fixed for reproducibility:

* V1 = ``[0, |S|)``; V1 vertex ``i`` carries the label ``S[i]`` (S sorted).
* V2 = the next ``(k-2)*ell`` ids; spine edge ``j`` takes V2 block ``j``.
* V3 = the rest. The top ``|V3| mod a`` ids are left over (isolated) and
  V3' is cut into consecutive a-blocks, the family M.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .berge import BergeWitness, contains_berge, expansion
from .errors import ConstructionError, UnsupportedCase
from .hypergraph import Hypergraph, disjoint_union, empty_hypergraph, induced_subhypergraph
from .invariants import (
    CaseTag,
    case_select,
    connected_components,
    feedback_number,
    is_forest,
    vertex_cover_number,
)


@dataclass(frozen=True)
class ConstructionParams:
    k: int
    n: int
    a: int
    G: Hypergraph
    S: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(sorted(set(self.S))))
        self.validate()

    @property
    def spine_edges(self) -> list[tuple[int, int]]:
        """Edges of G[S] in lexicographic order."""
        s = set(self.S)
        return [e for e in self.G.edges if e[0] in s and e[1] in s]

    @property
    def ell(self) -> int:
        return len(self.spine_edges)

    @property
    def v1(self) -> int:
        return len(self.S)

    @property
    def v2(self) -> int:
        return (self.k - 2) * self.ell

    @property
    def v3(self) -> int:
        return self.n - self.v1 - self.v2

    @property
    def leftover(self) -> int:
        return self.v3 % self.a

    @property
    def blocks(self) -> list[tuple[int, ...]]:
        """The family M: consecutive a-sets partitioning V3'."""
        start = self.v1 + self.v2
        count = self.v3 // self.a
        return [tuple(range(start + i * self.a, start + (i + 1) * self.a)) for i in range(count)]

    @property
    def expected_edge_count(self) -> int:
        return self.ell + (self.v3 // self.a) * comb(self.v1, self.k - self.a)

    def validate(self) -> None:
        k, a = self.k, self.a
        if k < 2:
            raise ConstructionError(f"uniformity must be at least 2, got {k}")
        if not 1 <= a <= k - 1:
            raise ConstructionError(f"a={a} outside [1, {k - 1}]")
        if self.G.k != 2:
            raise ConstructionError("G must be a graph")
        if any(not 0 <= v < self.G.n for v in self.S):
            raise ConstructionError(f"S={self.S} is not a subset of V(G)")
        rest, _ = induced_subhypergraph(self.G, set(range(self.G.n)) - set(self.S))
        if not is_forest(rest):
            raise ConstructionError(f"S={self.S} is not a feedback set of G")
        # an empty S is allowed: the host is then edgeless
        if self.S and len(self.S) < k - a:
            raise ConstructionError(f"|S|={len(self.S)} < k-a={k - a}")
        if self.n < self.v1 + self.v2 + a:
            raise ConstructionError(
                f"n={self.n} too small; need at least |V1|+|V2|+a = {self.v1 + self.v2 + a}"
            )


def build_construction(p: ConstructionParams) -> Hypergraph:
    """Build H_k(n, a, G, S)."""
    k, a = p.k, p.a
    label = {s: i for i, s in enumerate(p.S)}
    edges = []
    base = p.v1
    for j, (u, v) in enumerate(p.spine_edges):
        filler = range(base + j * (k - 2), base + (j + 1) * (k - 2))
        edges.append((label[u], label[v], *filler))
    for block in p.blocks:
        for core in itertools.combinations(range(p.v1), k - a):
            edges.append(block + core)
    host = Hypergraph(k, p.n, edges)
    assert host.m == p.expected_edge_count
    return host


@dataclass(frozen=True)
class LemmaInstance:
    case: CaseTag
    k: int
    F: Hypergraph
    F_star: Hypergraph
    F_star_vmap: tuple[int, ...]
    S: tuple[int, ...]  # in F_star's labels
    a: int
    H_star: Hypergraph
    params: ConstructionParams = field(repr=False)

    @property
    def z(self) -> int:
        return self.H_star.n

    @property
    def components(self) -> list[Hypergraph]:
        return [c for c, _ in connected_components(self.F)]

    @property
    def hk_vertices(self) -> int:
        return self.params.n


def _remaining_graph(F: Hypergraph, vmap: Sequence[int]) -> Hypergraph:
    rest, _ = induced_subhypergraph(F, set(range(F.n)) - set(vmap))
    return rest


def _pick_component(F: Hypergraph, want_f: int):
    for comp, vmap in connected_components(F):
        f, cert = feedback_number(comp)
        if f == want_f:
            return comp, vmap, cert.vertices
    raise AssertionError(f"no component with feedback number {want_f}")


def lemma_choices(F: Hypergraph, k: int, case: CaseTag | None = None):
    """Case, F*, its vertex map into F, the set S and the value a for (F, k).

    ``case`` overrides the table's precedence (e.g. to build the F1 host
    for a graph that is also BETA_LARGE); it must still be applicable.
    """
    if case is None:
        case = case_select(F, k)
    else:
        _check_applicable(F, k, CaseTag(case))
        case = CaseTag(case)
    if case is CaseTag.UNSUPPORTED:
        raise UnsupportedCase(f"no case-table row covers this graph at k={k}")
    identity = tuple(range(F.n))
    if case is CaseTag.BETA_LARGE:
        _, cover = vertex_cover_number(F)
        S = cover.vertices[:-1]
        return case, F, identity, S, 1
    if case is CaseTag.F4:
        _, fb = feedback_number(F)
        return case, F, identity, fb.vertices, 2
    want_f = {CaseTag.F0: 0, CaseTag.F1: 1, CaseTag.F2: 2, CaseTag.F3: 3}[case]
    comp, vmap, S = _pick_component(F, want_f)
    a = k - 2 if case is CaseTag.F3 else k - 1
    return case, comp, vmap, S, a


def _check_applicable(F: Hypergraph, k: int, case: CaseTag) -> None:
    comp_f = [feedback_number(c)[0] for c, _ in connected_components(F)]
    beta = vertex_cover_number(F)[0]
    ok = {
        CaseTag.BETA_LARGE: beta >= k + 1,
        CaseTag.F0: 0 in comp_f,
        CaseTag.F1: 1 in comp_f,
        CaseTag.F2: 2 in comp_f,
        CaseTag.F3: 3 in comp_f and beta <= 5,
        CaseTag.F4: k == 5 and beta == 5 and feedback_number(F)[0] == 4 and len(comp_f) == 1,
    }.get(case, False)
    if not ok:
        raise UnsupportedCase(f"case {case} does not apply to this graph at k={k}")


def build_lemma_instance(F: Hypergraph, k: int, n: int, case: CaseTag | None = None) -> tuple[LemmaInstance, Hypergraph]:
    """Assemble H_k(n - z, a, F*, S) ∪ H* for the case that handles (F, k)."""
    case, F_star, vmap, S, a = lemma_choices(F, k, case)
    rest = _remaining_graph(F, vmap)
    H_star = expansion(rest, k) if rest.m else empty_hypergraph(k, 0)
    z = H_star.n
    # Lemma-level condition; with a = k-1 the star needs only singleton subsets of S
    if S and len(S) <= k - a and a != k - 1:
        raise ConstructionError(f"|S|={len(S)} must exceed k-a={k - a}")
    params = ConstructionParams(k=k, n=n - z, a=a, G=F_star, S=S)
    host = disjoint_union(build_construction(params), H_star)
    inst = LemmaInstance(case, k, F, F_star, vmap, params.S, a, H_star, params)
    return inst, host


@dataclass
class FreenessCheck:
    label: str
    pattern: Hypergraph
    free: bool
    witness: BergeWitness | None


@dataclass
class FreenessReport:
    case: CaseTag
    n: int
    checks: list[FreenessCheck]

    @property
    def free(self) -> bool:
        return all(c.free for c in self.checks)

    def summary(self) -> str:
        status = "free" if self.free else "WITNESS FOUND"
        return f"case={self.case} n={self.n} checks={len(self.checks)} {status}"


def verify_lemma_freeness(inst: LemmaInstance, host: Hypergraph, *, node_budget: int | None = None) -> FreenessReport:
    """Search the host for the Berge copies the case's lemma rules out.

    BETA_LARGE and F4 check the whole host against F. F0..F3 check the
    H_k part against every component of F, plus the full host against F.
    A found witness makes the report fail; it is never swallowed.
    """
    kwargs = {} if node_budget is None else {"node_budget": node_budget}
    checks = []
    if inst.case in (CaseTag.BETA_LARGE, CaseTag.F4):
        w = contains_berge(host, inst.F, **kwargs)
        checks.append(FreenessCheck("host vs F", inst.F, w is None, w))
    else:
        hk, _ = induced_subhypergraph(host, range(inst.hk_vertices))
        for i, comp in enumerate(inst.components):
            w = contains_berge(hk, comp, **kwargs)
            checks.append(FreenessCheck(f"H_k part vs component {i}", comp, w is None, w))
        w = contains_berge(host, inst.F, **kwargs)
        checks.append(FreenessCheck("host vs F", inst.F, w is None, w))
    return FreenessReport(inst.case, host.n, checks)

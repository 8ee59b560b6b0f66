"""Uniform hypergraphs on dense vertex ids, plus the ``.khg`` text format."""

from __future__ import annotations

import itertools
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import HypergraphFormatError, SizeLimitError

CANONICAL_FORM_LIMIT = 10


class Hypergraph:
    """A simple k-uniform hypergraph on vertices ``0..n-1``.

    Edges are stored as sorted tuples, and the edge tuple itself is sorted
    lexicographically, so two hypergraphs with the same edge sets compare
    equal. Instances are immutable. A graph is the ``k == 2`` case; patterns
    for Berge containment are hypergraphs of any uniformity ``r``.
    """

    __slots__ = ("k", "n", "edges", "__dict__")

    def __init__(self, k: int, n: int, edges: Iterable[Iterable[int]] = ()):
        if k < 1:
            raise ValueError(f"uniformity must be positive, got {k}")
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        canon = set()
        for edge in edges:
            raw = tuple(edge)
            e = tuple(sorted(set(raw)))
            if len(raw) != k or len(e) != k:
                raise ValueError(f"edge {raw} does not have {k} distinct vertices")
            if e[0] < 0 or e[-1] >= n:
                raise ValueError(f"edge {e} has a vertex outside [0, {n})")
            canon.add(e)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    def __setattr__(self, name, value):
        raise AttributeError("Hypergraph is immutable")

    def __reduce__(self):
        # rebuild through __init__ so cached properties are not shipped
        return (Hypergraph, (self.k, self.n, self.edges))

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.k, self.n, self.edges) == (other.k, other.n, other.edges)

    def __hash__(self):
        return hash((self.k, self.n, self.edges))

    def __repr__(self):
        return f"Hypergraph(k={self.k}, n={self.n}, edges={list(self.edges)})"

    def __len__(self):
        return len(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in e) for e in self.edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Per vertex, the indices of edges containing it."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incidence)

    def has_edge(self, edge: Iterable[int]) -> bool:
        return tuple(sorted(edge)) in self.edge_index

    def add_edges(self, *new_edges: Iterable[int]) -> Hypergraph:
        return Hypergraph(self.k, self.n, list(self.edges) + [tuple(e) for e in new_edges])

    def non_edges(self) -> Iterator[tuple[int, ...]]:
        """All k-sets that are not edges, in lexicographic order."""
        present = self.edge_index
        for e in itertools.combinations(range(self.n), self.k):
            if e not in present:
                yield e

    def isolated_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees) if d == 0]


def make_hypergraph(k: int, n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph(k, n, edges)


def make_graph(n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph(2, n, edges)


def empty_hypergraph(k: int, n: int) -> Hypergraph:
    return Hypergraph(k, n, ())


def disjoint_union(a: Hypergraph, b: Hypergraph) -> Hypergraph:
    """Place ``b`` after ``a``, shifting its vertex ids by ``a.n``."""
    if a.k != b.k:
        raise ValueError(f"uniformity mismatch: {a.k} vs {b.k}")
    shifted = [tuple(v + a.n for v in e) for e in b.edges]
    return Hypergraph(a.k, a.n + b.n, list(a.edges) + shifted)


def induced_subhypergraph(h: Hypergraph, keep: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Edges of ``h`` inside ``keep``, relabeled densely in increasing order.

    Returns the subhypergraph and the map from old ids to new ids.
    """
    kept = sorted(set(keep))
    if kept and (kept[0] < 0 or kept[-1] >= h.n):
        raise ValueError(f"vertex set {kept} not inside [0, {h.n})")
    relabel = {v: i for i, v in enumerate(kept)}
    edges = [tuple(relabel[v] for v in e) for e in h.edges if all(v in relabel for v in e)]
    return Hypergraph(h.k, len(kept), edges), relabel


def degree(h: Hypergraph, v: int) -> int:
    if not 0 <= v < h.n:
        raise ValueError(f"vertex {v} out of range [0, {h.n})")
    return h.degrees[v]


def relabel(h: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Apply the vertex map ``v -> perm[v]``."""
    return Hypergraph(h.k, h.n, [tuple(perm[v] for v in e) for e in h.edges])


def _lex_rank_table(n: int, k: int) -> np.ndarray:
    table = np.full(1 << n, -1, dtype=np.int64)
    for rank, combo in enumerate(itertools.combinations(range(n), k)):
        table[sum(1 << v for v in combo)] = rank
    return table


def canonical_form(h: Hypergraph, limit: int = CANONICAL_FORM_LIMIT, chunk: int = 200_000) -> str:
    """Minimum sorted-edge-list encoding over all vertex permutations.

    The result is the ``.khg`` text of the lexicographically least relabeling,
    so two hypergraphs get the same form iff they are isomorphic. Cost is
    ``n!`` permutations; refused above ``limit`` vertices.
    """
    if h.n > limit:
        raise SizeLimitError(f"canonical_form refuses n={h.n} > {limit}")
    if h.m == 0 or h.n == 0:
        return serialize(h)
    n, k = h.n, h.k
    ranks = _lex_rank_table(n, k)
    combos = list(itertools.combinations(range(n), k))
    edges = np.array(h.edges, dtype=np.int64)
    best = None
    perm_iter = itertools.permutations(range(n))
    while True:
        block = np.array(list(itertools.islice(perm_iter, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        images = block[:, edges]  # (P, m, k) permuted vertex ids
        masks = np.left_shift(1, images).sum(axis=2)
        encoded = np.sort(ranks[masks], axis=1)
        order = np.lexsort(encoded.T[::-1])
        cand = encoded[order[0]]
        if best is None or tuple(cand) < tuple(best):
            best = cand
    canon = Hypergraph(k, n, [combos[r] for r in best])
    return serialize(canon)


def serialize(h: Hypergraph) -> str:
    lines = [f"{h.k} {h.n} {h.m}"]
    lines.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"


def parse(text: str) -> Hypergraph:
    """Parse ``.khg`` text: header ``k n m`` then ``m`` edge lines."""
    lines = text.splitlines()
    if not lines:
        raise HypergraphFormatError("empty input")
    header = lines[0].split()
    if len(header) != 3 or not all(tok.isdigit() for tok in header):
        raise HypergraphFormatError(f"malformed header {lines[0]!r}")
    k, n, m = map(int, header)
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != m:
        raise HypergraphFormatError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for lineno, ln in enumerate(body, start=2):
        toks = ln.split()
        if not all(tok.isdigit() for tok in toks):
            raise HypergraphFormatError(f"line {lineno}: non-integer vertex id")
        edge = [int(tok) for tok in toks]
        if len(edge) != k:
            raise HypergraphFormatError(f"line {lineno}: expected {k} vertices, got {len(edge)}")
        if any(v >= n for v in edge):
            raise HypergraphFormatError(f"line {lineno}: vertex out of range [0, {n})")
        if len(set(edge)) != k:
            raise HypergraphFormatError(f"line {lineno}: repeated vertex")
        edges.append(edge)
    return Hypergraph(k, n, edges)


def read_khg(path: str | Path) -> Hypergraph:
    return parse(Path(path).read_text(encoding="utf-8"))


def write_khg(h: Hypergraph, path: str | Path) -> None:
    Path(path).write_text(serialize(h), encoding="utf-8", newline="\n")

"""Incremental bipartite matching (augmenting paths, Kuhn style).

Left vertices are added one at a time; each addition tries a single
augmenting path. Given a maximum matching of the earlier left vertices, a
failed augmentation proves the enlarged side has no perfect matching.
"""

from __future__ import annotations

from typing import Sequence


class IncrementalMatching:
    def __init__(self):
        self.left_to_right: dict[int, int] = {}
        self.right_to_left: dict[int, int] = {}
        self.adj: dict[int, Sequence[int]] = {}

    def snapshot(self):
        # adj is append-only; stale entries are unreachable once the pairs are restored
        return dict(self.left_to_right), dict(self.right_to_left)

    def restore(self, snap) -> None:
        self.left_to_right, self.right_to_left = dict(snap[0]), dict(snap[1])

    def add_left(self, u: int, neighbors: Sequence[int]) -> bool:
        """Insert ``u`` and try to match it. Returns False if no augmenting path."""
        self.adj[u] = neighbors
        return self._augment(u, set())

    def _augment(self, u: int, seen: set[int]) -> bool:
        for w in self.adj[u]:
            if w in seen:
                continue
            seen.add(w)
            owner = self.right_to_left.get(w)
            if owner is None or self._augment(owner, seen):
                self.left_to_right[u] = w
                self.right_to_left[w] = u
                return True
        return False


def has_perfect_matching(adj: dict[int, Sequence[int]]) -> dict[int, int] | None:
    """Match every left key to a distinct right vertex, or return None."""
    m = IncrementalMatching()
    for u in sorted(adj):
        if not m.add_left(u, adj[u]):
            return None
    return dict(m.left_to_right)

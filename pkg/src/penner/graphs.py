"""Combinatorics of the intersection graph and of closed index paths.

The graph ``G(omega)`` has vertices ``1..n`` and an edge ``{i, j}`` whenever
``omega[i][j] > 0``.  Closed paths (tuples of vertices read cyclically) are
the combinatorial carriers of twist words and of the boundary-limit maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Sequence, Tuple

from .core import IntersectionMatrix, TwistWord
from .errors import IndexOutOfRange

Edge = Tuple[int, int]  # always stored with first < second


@dataclass(frozen=True)
class OmegaGraph:
    """Undirected simple graph on vertices ``1..n``."""

    n: int
    edges: FrozenSet[Edge]

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        return (min(i, j), max(i, j)) in self.edges

    def neighbors(self, i: int) -> Tuple[int, ...]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return tuple(sorted(out))

    def adjacency(self) -> dict:
        adj = {v: [] for v in range(1, self.n + 1)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: sorted(ns) for v, ns in adj.items()}


def graph_of(omega: IntersectionMatrix) -> OmegaGraph:
    """The intersection graph ``G(omega)``."""
    edges = set()
    n = omega.n
    for i in range(n):
        for j in range(i + 1, n):
            if omega.entries[i][j] != 0:
                edges.add((i + 1, j + 1))
    return OmegaGraph(n, frozenset(edges))


def is_connected(g: OmegaGraph) -> bool:
    """Whether ``g`` is connected.  A single vertex counts as connected."""
    if g.n <= 1:
        return True
    adj = g.adjacency()
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def bipartition(g: OmegaGraph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """A 2-coloring ``(side_a, side_b)`` of ``g``, or ``None`` if not bipartite.

    For disconnected graphs each component is colored independently, with the
    component's smallest vertex placed on side ``a``.
    """
    adj = g.adjacency()
    color = {}
    for root in range(1, g.n + 1):
        if root in color:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in color:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    side_a = tuple(v for v in range(1, g.n + 1) if color[v] == 0)
    side_b = tuple(v for v in range(1, g.n + 1) if color[v] == 1)
    return side_a, side_b


def is_bipartite(g: OmegaGraph) -> bool:
    return bipartition(g) is not None


def word_supported(word: TwistWord, g: OmegaGraph) -> bool:
    """Whether the index sequence of ``word`` is a closed path in ``g``.

    Every consecutive pair (including the wrap-around pair when the word has
    at least two letters) must be an edge of ``g``.
    """
    gamma = word.gamma if isinstance(word, TwistWord) else tuple(word)
    for i in gamma:
        if not 1 <= i <= g.n:
            raise IndexOutOfRange(f"vertex {i} out of range 1..{g.n}")
    if len(gamma) == 1:
        return True
    for a, b in zip(gamma, gamma[1:] + gamma[:1]):
        if not g.has_edge(a, b):
            return False
    return True


def is_general(word: TwistWord, n: int) -> bool:
    """Whether the word uses every curve index ``1..n`` at least once."""
    word.check_indices(n)
    return set(word.gamma) == set(range(1, n + 1))


def _reduce_open(seq: list) -> list:
    """Free reduction of an open vertex path: repeatedly delete backtracking
    subpaths ``(..., a, b, a, ...) -> (..., a, ...)``."""
    out: list = []
    for v in seq:
        if len(out) >= 2 and out[-2] == v:
            out.pop()  # cancel the spur (a, b, a) -> (a); a may cancel further
        else:
            out.append(v)
    return out


def _rotations(seq: Sequence[int]):
    for s in range(len(seq)):
        yield tuple(seq[s:]) + tuple(seq[:s])


def reduce_backtracking(gamma: Sequence[int], rel_last_edge: bool = False) -> Tuple[int, ...]:
    """Remove backtracking ``(..., a, b, a, ...) -> (..., a, ...)`` from a
    closed path.

    With ``rel_last_edge=True`` the path is reduced as an *open* path from
    its first to its last vertex, so the closing edge ``(last, first)`` is
    never touched.  Otherwise the path is reduced cyclically: rotations are
    allowed, and the result is a cyclically reduced representative (possibly
    a single vertex when the path is contractible).
    """
    seq = list(gamma)
    if len(seq) <= 1:
        return tuple(seq)
    if rel_last_edge:
        reduced = _reduce_open(seq)
        return tuple(reduced)
    # cyclic reduction: reduce, then rotate while the wrap-around pair
    # backtracks, i.e. while second-to-last == first (spur across the seam)
    cur = tuple(seq)
    while True:
        red = tuple(_reduce_open(list(cur)))
        if len(red) <= 1:
            return red
        if len(red) == 2:
            # a length-2 closed path runs over one edge and straight back
            return (red[0],)
        # look for a backtracking across the seam in some rotation
        for rot in _rotations(red):
            open_red = tuple(_reduce_open(list(rot)))
            if len(open_red) < len(red):
                cur = open_red
                break
        else:
            return red


def is_contractible(gamma: Sequence[int]) -> bool:
    """Whether the closed path reduces to a point under cyclic backtracking
    removal (i.e. is null-homotopic in the graph it traces)."""
    return len(reduce_backtracking(gamma, rel_last_edge=False)) <= 1


def covers_vertices(gamma: Sequence[int], n: int) -> bool:
    """Whether the path visits every vertex ``1..n``."""
    return set(gamma) == set(range(1, n + 1))


def spanning_tree_tour(g: OmegaGraph, root: int = 1) -> Tuple[int, ...]:
    """A contractible closed path visiting every vertex of a connected graph.

    Depth-first tour of a spanning tree rooted at ``root``: each tree edge is
    traversed once in each direction, so the tour is freely null-homotopic.
    The final return to the root is left implicit (the path closes up).
    """
    if not is_connected(g):
        raise ValueError("graph must be connected")
    if g.n == 1:
        return (root,)
    adj = g.adjacency()
    seen = {root}
    tour = [root]

    def visit(v: int) -> None:
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                tour.append(w)
                visit(w)
                tour.append(v)

    visit(root)
    # tour currently ends at root; drop the final entry so the closing edge
    # is the wrap-around pair (last, root)
    assert tour[-1] == root and len(tour) >= 2
    return tuple(tour[:-1])

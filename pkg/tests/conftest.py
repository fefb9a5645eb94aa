"""Shared fixtures and random-instance generators for the test suite.

All randomized tests draw from explicitly seeded ``random.Random`` instances
so failures are reproducible without hypothesis' database.
"""

import random

import pytest

from penner import IntersectionMatrix, TwistWord, graph_of
from penner.graphs import spanning_tree_tour


def random_omega(rng, n, max_entry=3, density=0.6, connected=True):
    """A random symmetric nonnegative integer matrix with zero diagonal.

    With ``connected=True`` a random spanning tree of positive entries is
    superimposed so the intersection graph is connected.
    """
    rows = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                v = rng.randint(1, max_entry)
                rows[a][b] = rows[b][a] = v
    if connected:
        order = list(range(n))
        rng.shuffle(order)
        for prev, cur in zip(order, order[1:]):
            if rows[prev][cur] == 0:
                v = rng.randint(1, max_entry)
                rows[prev][cur] = rows[cur][prev] = v
    return IntersectionMatrix(tuple(tuple(r) for r in rows))


def tour_path(omega, rng=None, spurs=0):
    """A contractible closed path visiting every vertex (spanning-tree tour),
    optionally with random backtracking spurs inserted."""
    g = graph_of(omega)
    root = rng.randint(1, omega.n) if rng is not None else 1
    path = list(spanning_tree_tour(g, root=root))
    for _ in range(spurs):
        pos = rng.randrange(len(path))
        v = path[pos]
        nbs = g.neighbors(v)
        if not nbs:
            continue
        u = rng.choice(nbs)
        # insert ... v, u, v ... after position pos
        path[pos + 1:pos + 1] = [u, v]
    return tuple(path)


def random_closed_walk(omega, rng, steps):
    """A random supported closed walk: a random walk followed by the shortest
    route back to the start.  Not contractible in general."""
    from collections import deque

    g = graph_of(omega)
    start = rng.randint(1, omega.n)
    walk = [start]
    for _ in range(steps):
        nbs = g.neighbors(walk[-1])
        if not nbs:
            return None
        walk.append(rng.choice(nbs))
    # shortest route from the end of the walk back to the start (BFS)
    parent = {walk[-1]: None}
    q = deque([walk[-1]])
    while q and start not in parent:
        v = q.popleft()
        for u in g.neighbors(v):
            if u not in parent:
                parent[u] = v
                q.append(u)
    route = [start]
    while parent[route[-1]] is not None:
        route.append(parent[route[-1]])
    route.reverse()  # walk[-1] ... start
    full = walk + route[1:-1]
    # strip immediate repeats (including around the wraparound)
    out = []
    for v in full:
        if out and out[-1] == v:
            continue
        out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return tuple(out) if len(out) >= 2 else None


def general_word(omega, rng, max_power=3):
    """A random general word: spanning-tree tour with random positive powers."""
    gamma = tour_path(omega, rng)
    powers = tuple(rng.randint(1, max_power) for _ in gamma)
    return TwistWord(gamma, powers)


@pytest.fixture
def rng():
    return random.Random(20260823)


@pytest.fixture
def omega3():
    return IntersectionMatrix(((0, 1, 1), (1, 0, 1), (1, 1, 0)))


@pytest.fixture
def divergent4():
    return IntersectionMatrix(((0, 0, 1, 2), (0, 0, 1, 1), (1, 1, 0, 1), (2, 1, 1, 0)))

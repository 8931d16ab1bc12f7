"""Maximum bipartite matching (Hopcroft-Karp) with certificates.

The graph is an adjacency list from left vertices to right vertices, both
sides indexed from 0.  Everything is deterministic: vertices are scanned in
ascending order, so repeated runs give identical matchings.

Besides the matching itself we can extract a Hall violator: a set S of left
vertices whose joint neighbourhood is smaller than S.  One exists exactly
when some left vertex stays exposed, and it is the honest certificate that
no left-perfect matching exists.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

__all__ = ["max_matching", "hall_violator"]

_INF = float("inf")


def max_matching(adj: Sequence[Sequence[int]], n_right: int):
    """Return (size, match_left, match_right) for a maximum matching.

    match_left[i] is the right partner of left vertex i, or -1 if exposed;
    match_right symmetrically.
    """
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left

    def bfs() -> bool:
        queue = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = _INF
        return False

    size = 0
    while bfs():
        for u in range(n_left):
            if match_l[u] == -1 and dfs(u):
                size += 1
    return size, match_l, match_r


def hall_violator(adj: Sequence[Sequence[int]], n_right: int):
    """Return (S, N(S)) with |N(S)| < |S|, or None if a left-perfect matching exists.

    S is grown by alternating reachability from an exposed left vertex, which
    is the standard Koenig-style certificate.
    """
    size, match_l, match_r = max_matching(adj, n_right)
    if size == len(adj):
        return None
    exposed = [u for u in range(len(adj)) if match_l[u] == -1]
    seen_l = set(exposed)
    seen_r: set[int] = set()
    queue = deque(exposed)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in seen_r:
                continue
            seen_r.add(v)
            w = match_r[v]
            if w != -1 and w not in seen_l:
                seen_l.add(w)
                queue.append(w)
    # every right vertex reached is matched back, so |seen_r| = |seen_l| - #exposed < |seen_l|
    return sorted(seen_l), sorted(seen_r)

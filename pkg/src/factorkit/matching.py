"""Maximum cardinality matching in general simple graphs (blossom contraction).

This is the engine behind the factor searches.  It implements the classic
augmenting-path algorithm with blossom shrinking on array labels: repeated
BFS from each exposed vertex, contracting odd cycles to their base via the
`base` array, O(V^3) overall.  Vertices are 0..n-1 here; callers translate.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence


def maximum_matching(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Mate array for a maximum matching; mate[v] = -1 when v is exposed.

    Self-loops are ignored; parallel edges are harmless.
    """
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if u == v:
            continue
        adj[u].append(v)
        adj[v].append(u)

    match = [-1] * n
    # cheap greedy seed cuts the number of augmenting searches
    for v in range(n):
        if match[v] == -1:
            for w in adj[v]:
                if match[w] == -1:
                    match[v] = w
                    match[w] = v
                    break

    p = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        used2 = [False] * n
        while True:
            a = base[a]
            used2[a] = True
            if match[a] == -1:
                break
            a = p[match[a]]
        while True:
            b = base[b]
            if used2[b]:
                return b
            b = p[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def find_path(root: int) -> bool:
        for i in range(n):
            p[i] = -1
            base[i] = i
        used = [False] * n
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    # odd cycle: contract the blossom to its base
                    curbase = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, curbase, to, blossom)
                    mark_path(to, curbase, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        # augment along root..to
                        while to != -1:
                            pv = p[to]
                            ppv = match[pv]
                            match[to] = pv
                            match[pv] = to
                            to = ppv
                        return True
                    used[match[to]] = True
                    q.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            find_path(v)

    for v in range(n):
        if match[v] != -1 and match[match[v]] != v:
            raise AssertionError("matching engine produced an inconsistent mate array")
    return match


def perfect_matching(n: int, edges: Sequence[tuple[int, int]]) -> list[int] | None:
    """Mate array of a perfect matching, or None when none exists."""
    if n % 2 == 1:
        return None
    match = maximum_matching(n, edges)
    if any(m == -1 for m in match):
        return None
    return match

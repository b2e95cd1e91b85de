"""Maximum cardinality matching in general graphs (Edmonds' blossom algorithm).

Used for leave-graph matchings and, via a vertex-splitting gadget, for
degree-constrained subgraph (f-factor) extraction.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence


def _adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        adj[u].add(v)
        adj[v].add(u)
    return [sorted(a) for a in adj]


def _greedy(adj: Sequence[Sequence[int]], mate: list[int]) -> None:
    # low-degree vertices first leaves fewer stranded vertices
    order = sorted(range(len(adj)), key=lambda v: len(adj[v]))
    for v in order:
        if mate[v] != -1:
            continue
        for w in adj[v]:
            if mate[w] == -1:
                mate[v] = w
                mate[w] = v
                break


def _augment_from(root: int, adj: Sequence[Sequence[int]], mate: list[int]) -> bool:
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    in_tree = [False] * n
    in_tree[root] = True
    queue = [root]

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in adj[v]:
            if base[v] == base[w] or mate[v] == w:
                continue
            if w == root or (mate[w] != -1 and parent[mate[w]] != -1):
                b = lca(v, w)
                blossom = [False] * n
                mark(v, b, w, blossom)
                mark(w, b, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = b
                        if not in_tree[i]:
                            in_tree[i] = True
                            queue.append(i)
            elif parent[w] == -1:
                parent[w] = v
                if mate[w] == -1:
                    # flip the alternating path ending at w
                    while w != -1:
                        pv = parent[w]
                        nxt = mate[pv]
                        mate[w] = pv
                        mate[pv] = w
                        w = nxt
                    return True
                in_tree[mate[w]] = True
                queue.append(mate[w])
    return False


def maximum_matching(n: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Return a maximum cardinality matching as sorted ``(u, v)`` pairs, u < v.

    Parallel edges are collapsed. Runs in O(n^3) worst case; a greedy
    matching seeds the search so typical inputs need few augmentations.
    """
    adj = _adjacency(n, edges)
    mate = [-1] * n
    _greedy(adj, mate)
    for v in range(n):
        if mate[v] == -1 and adj[v]:
            # a vertex with no augmenting path now never gains one later
            _augment_from(v, adj, mate)
    return sorted((v, mate[v]) for v in range(n) if mate[v] > v)


def matching_size(n: int, edges: Iterable[tuple[int, int]]) -> int:
    return len(maximum_matching(n, edges))

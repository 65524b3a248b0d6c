"""Truss and core decomposition, shells, and fast post-merger evaluation.

The k-truss of a graph is the maximal subgraph in which every edge closes
at least k-2 triangles. Edge trussness t(e) is the largest k whose k-truss
contains e (floor 2). ``post_merger_truss_size`` evaluates how large the
k-truss becomes after merging a node pair without rebuilding the whole
graph: only the (k-1)-truss plus the merged node's star can matter.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Edge, Graph, NodeId, canon

_EMPTY: frozenset[NodeId] = frozenset()


@dataclass(frozen=True)
class TrussDecomposition:
    """Exact trussness for every edge, plus the largest nonempty level."""

    edge_trussness: dict[Edge, int]
    kmax: int = 2


@dataclass(frozen=True)
class CoreDecomposition:
    """Coreness (degeneracy level) for every node."""

    node_coreness: dict[NodeId, int]


def truss_decompose(g: Graph) -> TrussDecomposition:
    """Peel edges in increasing support order, recording trussness.

    Bucket queue over support values; ties fall to canonical edge order.
    Trussness = support at removal time + 2, monotonized so levels never
    decrease as peeling proceeds.
    """
    edges = list(g.edges())
    m = len(edges)
    if m == 0:
        return TrussDecomposition({}, 2)
    eid = {e: i for i, e in enumerate(edges)}
    adj = {v: set(ns) for v, ns in g.adj.items()}
    sup = [0] * m
    for i, (u, v) in enumerate(edges):
        sup[i] = len(adj[u] & adj[v])
    max_sup = max(sup)
    bins: list[list[int]] = [[] for _ in range(max_sup + 1)]
    for i in range(m):
        bins[sup[i]].append(i)
    heads = [0] * (max_sup + 1)
    removed = [False] * m
    tvals = [0] * m
    cur = 0
    level = 2
    processed = 0
    while processed < m:
        while heads[cur] >= len(bins[cur]):
            cur += 1
        bucket = bins[cur]
        i = bucket[heads[cur]]
        heads[cur] += 1
        if removed[i] or sup[i] != cur:
            continue
        if cur + 2 > level:
            level = cur + 2
        tvals[i] = level
        removed[i] = True
        processed += 1
        u, v = edges[i]
        adj[u].discard(v)
        adj[v].discard(u)
        au, av = adj[u], adj[v]
        if len(av) < len(au):
            au, av = av, au
        for w in au:
            if w in av:
                for f in ((u, w) if u < w else (w, u), (v, w) if v < w else (w, v)):
                    j = eid[f]
                    # supports are floored at the current peel level
                    if not removed[j] and sup[j] > cur:
                        s = sup[j] - 1
                        sup[j] = s
                        bins[s].append(j)
    return TrussDecomposition({edges[i]: tvals[i] for i in range(m)}, level)


def k_truss_edges(d: TrussDecomposition, k: int) -> set[Edge]:
    """Edges of the k-truss: {e : t(e) >= k}."""
    return {e for e, t in d.edge_trussness.items() if t >= k}


def shell_edges(d: TrussDecomposition, k: int) -> set[Edge]:
    """Edges of the (k-1)-truss that fall outside the k-truss."""
    return {e for e, t in d.edge_trussness.items() if t == k - 1}


def node_trussness(d: TrussDecomposition, g: Graph) -> dict[NodeId, int]:
    """Max trussness over incident edges; 2 for nodes with no scored edge."""
    t = {v: 2 for v in g.adj}
    for (u, v), tv in d.edge_trussness.items():
        if tv > t[u]:
            t[u] = tv
        if tv > t[v]:
            t[v] = tv
    return t


def truss_subgraph(g: Graph, d: TrussDecomposition, k: int) -> Graph:
    """Subgraph on the k-truss edges, preserving node ids and labels."""
    sub = Graph()
    for (u, v), t in d.edge_trussness.items():
        if t < k:
            continue
        for x in (u, v):
            if x not in sub.adj:
                sub.adj[x] = set()
                sub._labels[x] = g.label(x)
                sub._ids[sub._labels[x]] = x
        sub.adj[u].add(v)
        sub.adj[v].add(u)
        sub._m += 1
    return sub


def core_decompose(g: Graph) -> CoreDecomposition:
    """Standard degree peeling; deterministic by (degree, node id)."""
    import heapq

    deg = {v: len(ns) for v, ns in g.adj.items()}
    alive = {v: set(ns) for v, ns in g.adj.items()}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    coreness: dict[NodeId, int] = {}
    cur = 0
    while heap:
        d, v = heapq.heappop(heap)
        if v in coreness or d != deg[v]:
            continue
        if d > cur:
            cur = d
        coreness[v] = cur
        for w in alive[v]:
            if w not in coreness:
                alive[w].discard(v)
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return CoreDecomposition(coreness)


def _cascade_truss_size(adj: dict[NodeId, set[NodeId]], sup: dict[Edge, int], k: int) -> int:
    """Peel edges with support < k-2 to the fixpoint; returns |E| left.

    Mutates both arguments. The fixpoint is the k-truss of the input
    graph regardless of removal order.
    """
    thresh = k - 2
    queue = deque(e for e, s in sup.items() if s < thresh)
    while queue:
        e = queue.popleft()
        if e not in sup:
            continue
        del sup[e]
        x, y = e
        ax, ay = adj[x], adj[y]
        ax.discard(y)
        ay.discard(x)
        if len(ay) < len(ax):
            ax, ay = ay, ax
        for w in ax:
            if w in ay:
                for f in ((x, w) if x < w else (w, x), (y, w) if y < w else (w, y)):
                    s = sup.get(f)
                    if s is not None:
                        sup[f] = s - 1
                        if s - 1 < thresh:
                            queue.append(f)
    return len(sup)


@dataclass
class TrussView:
    """Frozen per-(graph, k) state behind fast post-merger evaluation.

    Holds the (k-1)-truss adjacency and per-edge supports so each merger
    costs one corrected-support scan plus a cascade, instead of a
    decomposition of the whole merged graph. Build once, evaluate many.
    """

    g: Graph
    k: int
    nodes_km1: set[NodeId]
    adj_km1: dict[NodeId, set[NodeId]]
    sup_km1: dict[Edge, int]
    tk_size: int
    shell: set[Edge] = field(default_factory=set)
    tk_adj: dict[NodeId, set[NodeId]] = field(default_factory=dict)

    @classmethod
    def build(cls, g: Graph, d: TrussDecomposition, k: int) -> "TrussView":
        if k < 3:
            raise ValueError("k must be at least 3")
        adj_km1: dict[NodeId, set[NodeId]] = {}
        tk_adj: dict[NodeId, set[NodeId]] = {}
        tk_size = 0
        shell: set[Edge] = set()
        for e, t in d.edge_trussness.items():
            if t < k - 1:
                continue
            u, v = e
            adj_km1.setdefault(u, set()).add(v)
            adj_km1.setdefault(v, set()).add(u)
            if t >= k:
                tk_size += 1
                tk_adj.setdefault(u, set()).add(v)
                tk_adj.setdefault(v, set()).add(u)
            else:
                shell.add(e)
        sup_km1: dict[Edge, int] = {}
        for u, ns in adj_km1.items():
            for v in ns:
                if u < v:
                    sup_km1[(u, v)] = len(ns & adj_km1[v])
        return cls(g, k, set(adj_km1), adj_km1, sup_km1, tk_size, shell, tk_adj)

    @classmethod
    def compute(cls, g: Graph, k: int) -> "TrussView":
        """Build directly by peeling, skipping the full decomposition.

        Cascading to the (k-1)-truss and then once more to the k-truss
        reaches the same unique fixpoints the trussness map would give,
        but only touches edges that actually fall out.
        """
        if k < 3:
            raise ValueError("k must be at least 3")
        adj = {v: set(ns) for v, ns in g.adj.items()}
        sup: dict[Edge, int] = {}
        for u, ns in g.adj.items():
            for v in ns:
                if u < v:
                    sup[(u, v)] = len(ns & g.adj[v])
        _cascade_truss_size(adj, sup, k - 1)
        adj_km1 = {v: ns for v, ns in adj.items() if ns}
        tk_adj = {v: set(ns) for v, ns in adj_km1.items()}
        sup_k = dict(sup)
        tk_size = _cascade_truss_size(tk_adj, sup_k, k)
        tk_adj = {v: ns for v, ns in tk_adj.items() if ns}
        shell = {e for e in sup if e not in sup_k}
        return cls(g, k, set(adj_km1), adj_km1, sup, tk_size, shell, tk_adj)

    def truss_size_after_merge(self, v1: NodeId, v2: NodeId) -> int:
        """|E(T_k)| of the graph with v2 merged into v1.

        Works on the restricted graph: (k-1)-truss edges away from the
        pair keep their support up to three unit corrections, and the
        merged node contributes a star into the (k-1)-truss node set.
        """
        g = self.g
        if v1 == v2:
            raise ValueError("cannot merge a node with itself")
        if v1 not in g.adj or v2 not in g.adj:
            raise ValueError(f"merge endpoints ({v1}, {v2}) must both exist")
        a = self.adj_km1
        n1 = a.get(v1, _EMPTY)
        n2 = a.get(v2, _EMPTY)
        star = g.adj[v1] | g.adj[v2]
        star.discard(v1)
        star.discard(v2)
        star &= self.nodes_km1
        sup2: dict[Edge, int] = {}
        adj2: dict[NodeId, set[NodeId]] = {}
        for e, s in self.sup_km1.items():
            x, y = e
            if x == v1 or x == v2 or y == v1 or y == v2:
                continue
            if x in n1 and y in n1:
                s -= 1
            if x in n2 and y in n2:
                s -= 1
            if x in star and y in star:
                s += 1
            sup2[e] = s
            ax = adj2.get(x)
            if ax is None:
                ax = adj2[x] = set()
            ax.add(y)
            ay = adj2.get(y)
            if ay is None:
                ay = adj2[y] = set()
            ay.add(x)
        if star:
            av1 = adj2.setdefault(v1, set())
            for x in star:
                s = len(star & a[x])
                sup2[canon(v1, x)] = s
                av1.add(x)
                adj2.setdefault(x, set()).add(v1)
        return _cascade_truss_size(adj2, sup2, self.k)


def post_merger_truss_size(g: Graph, d: TrussDecomposition, k: int, v1: NodeId, v2: NodeId) -> int:
    """k-truss edge count after merging v2 into v1; equals full recompute."""
    return TrussView.build(g, d, k).truss_size_after_merge(v1, v2)

"""Heuristic scoring and selection of candidate node mergers.

Two merger kinds are generated. Inside-outside mergers (IOM) pull an
outside node onto an inside one and are ranked by how many shell edges
could gain support from the new star edges. Inside-inside mergers (IIM)
are ranked by a reward/penalty score over edge collisions and shell
edges whose support the merge would raise or lower.

By default the scores count only changes an actual support recount would
see. ``literal=True`` switches both scores to looser back-of-envelope
variants (kept for fidelity experiments): the new-edge set is
taken against the k-truss neighborhood instead of the (k-1)-truss one,
already-present edges are not filtered out, and the IIM reward admits
any shell edge avoiding the common neighborhood.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .decomposition import TrussDecomposition
from .graph import Edge, Graph, NodeId, ParseError, canon
from .pruning import NodePartition, prune_outside_maximal

_EMPTY: frozenset[NodeId] = frozenset()

EARTH_RADIUS_KM = 6371.0


class MergerKind(str, Enum):
    IOM = "IOM"
    IIM = "IIM"


@dataclass(frozen=True)
class CandidateMerger:
    """A scored merger proposal; v1 survives the merge."""

    v1: NodeId
    v2: NodeId
    kind: MergerKind
    score: int
    tiebreak: int = 0

    def sort_key(self) -> tuple[int, int, int, int]:
        # higher score first, then larger tiebreak, then smallest ids
        return (-self.score, -self.tiebreak, self.v1, self.v2)


def haversine_km(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Great-circle distance between (lat, lon) points in degrees."""
    lat1, lon1 = map(math.radians, a)
    lat2, lon2 = map(math.radians, b)
    s = math.sin((lat2 - lat1) / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(s)))


@dataclass(frozen=True)
class ConstraintFilter:
    """Optional per-pair admission test by great-circle distance.

    With no threshold every pair passes. With a threshold, a pair is
    admitted only when both endpoints have coordinates and lie within
    ``threshold_km`` of each other.
    """

    coordinates: dict[NodeId, tuple[float, float]] | None = None
    threshold_km: float | None = None

    def allows(self, u: NodeId, v: NodeId) -> bool:
        if self.threshold_km is None:
            return True
        coords = self.coordinates or {}
        a = coords.get(u)
        b = coords.get(v)
        if a is None or b is None:
            return False
        return haversine_km(a, b) <= self.threshold_km


def load_coordinates(lines) -> dict[str, tuple[float, float]]:
    """Parse ``label lat lon`` lines; later entries win on duplicates."""
    out: dict[str, tuple[float, float]] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) < 3:
            raise ParseError(f"line {lineno}: expected 'label lat lon', got {line!r}")
        try:
            out[tokens[0]] = (float(tokens[1]), float(tokens[2]))
        except ValueError:
            raise ParseError(f"line {lineno}: bad coordinate in {line!r}") from None
    return out


class ScoringContext:
    """Per-round neighbor tables shared by all candidate scoring."""

    __slots__ = ("g", "p", "k", "tk_adj", "tkm1_adj", "shell_adj")

    def __init__(self, g: Graph, p: NodePartition, k: int,
                 tk_adj: dict[NodeId, set[NodeId]],
                 tkm1_adj: dict[NodeId, set[NodeId]],
                 shell_adj: dict[NodeId, set[NodeId]]) -> None:
        self.g = g
        self.p = p
        self.k = k
        self.tk_adj = tk_adj
        self.tkm1_adj = tkm1_adj
        self.shell_adj = shell_adj

    @classmethod
    def from_decomposition(cls, g: Graph, d: TrussDecomposition, p: NodePartition, k: int) -> "ScoringContext":
        tk: dict[NodeId, set[NodeId]] = {}
        tkm1: dict[NodeId, set[NodeId]] = {}
        shell: dict[NodeId, set[NodeId]] = {}
        for (u, v), t in d.edge_trussness.items():
            if t < k - 1:
                continue
            tkm1.setdefault(u, set()).add(v)
            tkm1.setdefault(v, set()).add(u)
            target = tk if t >= k else shell
            target.setdefault(u, set()).add(v)
            target.setdefault(v, set()).add(u)
        return cls(g, p, k, tk, tkm1, shell)

    def z_set(self, v1: NodeId, v2: NodeId, literal: bool) -> set[NodeId]:
        nbrs = self.p.inside_neighbors
        excl = (self.tk_adj if literal else self.tkm1_adj).get(v1, _EMPTY)
        z = (nbrs[v1] | nbrs[v2]) - excl
        z.discard(v1)
        return z

    def phse_edges(self, v1: NodeId, z: set[NodeId], literal: bool) -> set[Edge]:
        g = self.g
        if literal:
            new = z
        else:
            # an edge that already exists cannot raise any support
            new = z - g.adj[v1]
        out: set[Edge] = set()
        if not new:
            return out
        shell = self.shell_adj
        for w in shell.get(v1, _EMPTY):
            if g.adj[w] & new:
                out.add(canon(v1, w))
        reach = new | self.p.inside_neighbors[v1]
        for x in reach:
            sx = shell.get(x)
            if not sx:
                continue
            in_new_x = x in new
            for y in sx:
                if y > x and y in reach and (in_new_x or y in new):
                    out.add((x, y))
        return out


def incident_prospects(p: NodePartition, d: TrussDecomposition, g: Graph, k: int, v: NodeId) -> set[NodeId]:
    """Inside neighbors of v not already its k-truss neighbors."""
    if v not in p.inside:
        raise ValueError(f"node {v} is not an inside node")
    tr = d.edge_trussness
    return {w for w in p.inside_neighbors[v] if tr.get(canon(v, w), 0) < k}


def top_inside_nodes(p: NodePartition, d: TrussDecomposition, g: Graph, k: int, n_i: int) -> list[NodeId]:
    """Inside nodes by descending incident-prospect count, ids break ties."""
    tr = d.edge_trussness
    scored = []
    for v in p.inside:
        ip = sum(1 for w in p.inside_neighbors[v] if tr.get(canon(v, w), 0) < k)
        scored.append((-ip, v))
    scored.sort()
    return [v for _, v in scored[:n_i]]


def top_outside_nodes(pruned: set[NodeId], inside_nbrs: dict[NodeId, set[NodeId]], n_o: int) -> list[NodeId]:
    """Pruned outside nodes by descending inside-degree, ids break ties."""
    scored = sorted((-len(inside_nbrs[v]), v) for v in pruned)
    return [v for _, v in scored[:n_o]]


def new_inside_neighbors(g: Graph, d: TrussDecomposition, p: NodePartition, k: int,
                         v_i: NodeId, v_o: NodeId, *, literal: bool = False) -> set[NodeId]:
    """Nodes the merged node would newly reach inside the (k-1)-truss.

    Z = (inside nbrs of either endpoint) minus v_i and its (k-1)-truss
    edge neighbors; the merge adds the star {(v_i, z) : z in Z}.
    """
    return ScoringContext.from_decomposition(g, d, p, k).z_set(v_i, v_o, literal)


def phse(g: Graph, d: TrussDecomposition, p: NodePartition, k: int,
         v_i: NodeId, v_o: NodeId, *, literal: bool = False) -> set[Edge]:
    """Shell edges whose support rises once the merger's star is added."""
    ctx = ScoringContext.from_decomposition(g, d, p, k)
    return ctx.phse_edges(v_i, ctx.z_set(v_i, v_o, literal), literal)


def iim_score(g: Graph, d: TrussDecomposition, p: NodePartition, k: int,
              v1: NodeId, v2: NodeId, *, literal: bool = False) -> int:
    """Reward/penalty score for merging two inside nodes."""
    if v1 == v2:
        raise ValueError("iim_score needs two distinct nodes")
    for v in (v1, v2):
        if v not in p.inside:
            raise ValueError(f"node {v} is not an inside node")
    return _iim_score(ScoringContext.from_decomposition(g, d, p, k), v1, v2, literal)


def _iim_score(ctx: ScoringContext, v1: NodeId, v2: NodeId, literal: bool) -> int:
    tk = ctx.tk_adj
    collisions = len(tk.get(v1, _EMPTY) & tk.get(v2, _EMPTY))
    n1 = ctx.p.inside_neighbors[v1]
    n2 = ctx.p.inside_neighbors[v2]
    union = n1 | n2
    union.discard(v1)
    union.discard(v2)
    shell = ctx.shell_adj
    gains = 0
    losses = 0
    for x in union:
        sx = shell.get(x)
        if not sx:
            continue
        x1 = x in n1
        x2 = x in n2
        for y in sx:
            if y <= x or y not in union:
                continue
            y1 = y in n1
            y2 = y in n2
            if x1 and x2 and y1 and y2:
                losses += 1
            elif literal:
                if not (x1 and x2) and not (y1 and y2):
                    gains += 1
            elif (x1 and not x2 and y2 and not y1) or (x2 and not x1 and y1 and not y2):
                # only a brand-new common neighbor raises support
                gains += 1
    return -collisions + gains - losses


def top_inside_from_ctx(ctx: ScoringContext, n_i: int) -> list[NodeId]:
    """Same ranking as top_inside_nodes, from prebuilt neighbor tables."""
    tk = ctx.tk_adj
    nbrs = ctx.p.inside_neighbors
    scored = sorted((-len(nbrs[v] - tk.get(v, _EMPTY)), v) for v in ctx.p.inside)
    return [v for _, v in scored[:n_i]]


def find_iom_candidates(g: Graph, d: TrussDecomposition | None, p: NodePartition, k: int,
                        n_i: int, n_o: int, n_c: int,
                        cfilter: ConstraintFilter | None = None, *,
                        literal: bool = False,
                        pruned: set[NodeId] | None = None,
                        ctx: ScoringContext | None = None) -> list[CandidateMerger]:
    """Top n_c inside-outside mergers from the focused node pools."""
    if ctx is None:
        if d is None:
            raise ValueError("either a decomposition or a scoring context is required")
        ctx = ScoringContext.from_decomposition(g, d, p, k)
    if pruned is None:
        pruned = prune_outside_maximal(p.outside, p.inside_neighbors)
    inside = top_inside_from_ctx(ctx, n_i)
    outside = top_outside_nodes(pruned, p.inside_neighbors, n_o)
    out: list[CandidateMerger] = []
    for vi in inside:
        for vo in outside:
            if cfilter is not None and not cfilter.allows(vi, vo):
                continue
            z = ctx.z_set(vi, vo, literal)
            score = len(ctx.phse_edges(vi, z, literal))
            out.append(CandidateMerger(vi, vo, MergerKind.IOM, score, len(z)))
    out.sort(key=CandidateMerger.sort_key)
    return out[:n_c]


def find_iim_candidates(g: Graph, d: TrussDecomposition | None, p: NodePartition, k: int,
                        n_i: int, n_c: int,
                        cfilter: ConstraintFilter | None = None, *,
                        literal: bool = False,
                        ctx: ScoringContext | None = None) -> list[CandidateMerger]:
    """Top n_c inside-inside mergers among the focused inside nodes."""
    if ctx is None:
        if d is None:
            raise ValueError("either a decomposition or a scoring context is required")
        ctx = ScoringContext.from_decomposition(g, d, p, k)
    inside = top_inside_from_ctx(ctx, n_i)
    out: list[CandidateMerger] = []
    for a, b in combinations(inside, 2):
        v1, v2 = (a, b) if a < b else (b, a)
        if cfilter is not None and not cfilter.allows(v1, v2):
            continue
        out.append(CandidateMerger(v1, v2, MergerKind.IIM, _iim_score(ctx, v1, v2, literal)))
    out.sort(key=CandidateMerger.sort_key)
    return out[:n_c]

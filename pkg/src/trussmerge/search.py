"""Budgeted greedy search for node mergers that grow the k-truss.

Each round re-decomposes the working graph, partitions nodes, builds
candidate mergers of both kinds, evaluates every candidate exactly on
the restricted graph, and executes the best one. Under the default BM
method the split of the per-round candidate budget between
inside-outside and inside-inside mergers adapts toward whichever kind
keeps winning; EQ, II and IO pin the split instead. The remaining
methods (random sampling, edge-count and triangle-count rankings, and
the exhaustive naive greedy) live in :mod:`trussmerge.baselines` and are
reachable through :func:`run_method`.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .candidates import (CandidateMerger, ConstraintFilter, MergerKind, ScoringContext,
                         find_iim_candidates, find_iom_candidates)
from .decomposition import TrussView, truss_decompose
from .graph import Graph, NodeId, merge_all
from .pruning import NodePartition, prune_outside_maximal


class Method(str, Enum):
    BM = "BM"          # adaptive split between merger kinds
    EQ = "EQ"          # even split, never adapted
    II = "II"          # inside-inside candidates only
    IO = "IO"          # inside-outside candidates only
    RD = "RD"          # uniform random candidate sampling
    NE = "NE"          # rank by new inside edges
    NT = "NT"          # rank by new inside triangles
    NAIVE = "NAIVE"    # exhaustive full-evaluation greedy


@dataclass(frozen=True)
class RunConfig:
    """Knobs for one maximization run; defaults mirror the study setup."""

    k: int
    b: int = 10
    n_i: int = 100
    n_o: int = 50
    n_c: int = 10
    method: Method = Method.BM
    seed: int = 0
    filter: ConstraintFilter | None = None
    threads: int = 1
    literal: bool = False
    allow_no_op: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "method", Method(self.method))

    def validate(self) -> None:
        if self.k < 3:
            raise ValueError("k must be at least 3")
        if self.b < 1:
            raise ValueError("budget must be at least 1")
        if self.n_c < 1 or self.n_i < 1 or self.n_o < 1:
            raise ValueError("candidate counts must be at least 1")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass(frozen=True)
class MergerStep:
    """One executed merger: the pair, its kind, and the measured size."""

    v1: NodeId
    v2: NodeId
    kind: MergerKind | None
    size_after: int
    n_io: int = 0
    evaluated: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class MergerPlan:
    """Ordered mergers with sizes as measured, not assumed monotone."""

    k: int
    initial_size: int
    steps: tuple[MergerStep, ...] = ()
    skipped_rounds: int = 0

    @property
    def final_size(self) -> int:
        return self.steps[-1].size_after if self.steps else self.initial_size

    def pairs(self) -> list[tuple[NodeId, NodeId]]:
        return [(s.v1, s.v2) for s in self.steps]


@dataclass(frozen=True)
class ObjectiveValue:
    """k-truss edge count after applying a merger set."""

    size: int


def objective(g: Graph, k: int, pairs: Sequence[tuple[NodeId, NodeId]] = ()) -> ObjectiveValue:
    """Apply the mergers, re-decompose, count edges at level k."""
    if k < 3:
        raise ValueError("k must be at least 3")
    merged = merge_all(g, list(pairs)).graph
    d = truss_decompose(merged)
    return ObjectiveValue(sum(1 for t in d.edge_trussness.values() if t >= k))


def adaptive_update(n_io: int, winner: MergerKind, n_c: int, b: int) -> int:
    """Shift the candidate budget toward the winning merger kind.

    The step is floor(n_c / b); both kinds always keep at least that
    floor so neither pool starves for the rest of the run.
    """
    step = n_c // b
    if winner is MergerKind.IOM:
        cap = (n_c * (b - 1) + b - 1) // b
        return min(n_io + step, cap)
    return max(n_io - step, step)


def _initial_n_io(cfg: RunConfig) -> int:
    if cfg.method is Method.II:
        return 0
    if cfg.method is Method.IO:
        return cfg.n_c
    return cfg.n_c // 2


@dataclass
class RoundState:
    """Everything one search round derives from the working graph."""

    view: TrussView
    partition: NodePartition
    pruned: set[NodeId]
    ctx: ScoringContext


def build_round_state(work: Graph, k: int) -> RoundState:
    """Recompute trusses, partition and pruning for the current graph."""
    view = TrussView.compute(work, k)
    inside = view.nodes_km1
    inside_neighbors = {v: ns & inside for v, ns in work.adj.items()}
    p = NodePartition(inside, set(work.adj) - inside, inside_neighbors)
    pruned = prune_outside_maximal(p.outside, p.inside_neighbors)
    shell_adj: dict[NodeId, set[NodeId]] = {}
    for u, v in view.shell:
        shell_adj.setdefault(u, set()).add(v)
        shell_adj.setdefault(v, set()).add(u)
    ctx = ScoringContext(work, p, k, view.tk_adj, view.adj_km1, shell_adj)
    return RoundState(view, p, pruned, ctx)


def evaluate_candidates(view: TrussView, cands: Sequence[CandidateMerger], threads: int = 1) -> list[int]:
    """Exact post-merger sizes, in candidate order regardless of pool size."""
    if threads > 1 and len(cands) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda c: view.truss_size_after_merge(c.v1, c.v2), cands))
    return [view.truss_size_after_merge(c.v1, c.v2) for c in cands]


def pick_best(cands: Sequence[CandidateMerger], sizes: Sequence[int]) -> tuple[CandidateMerger, int]:
    """Largest evaluation wins; equal sizes fall to the smallest pair ids."""
    best = None
    best_key = None
    for cand, size in zip(cands, sizes):
        key = (-size, cand.v1, cand.v2)
        if best_key is None or key < best_key:
            best_key = key
            best = (cand, size)
    assert best is not None
    return best


def adaptive_search(g: Graph, cfg: RunConfig) -> MergerPlan:
    """Run the budgeted greedy loop for methods BM, EQ, II and IO."""
    cfg.validate()
    work = g.copy()
    n_io = _initial_n_io(cfg)
    initial = 0
    steps: list[MergerStep] = []
    skipped = 0
    for rnd in range(cfg.b):
        t0 = time.perf_counter()
        state = build_round_state(work, cfg.k)
        if rnd == 0:
            initial = state.view.tk_size
        cands: list[CandidateMerger] = []
        if n_io > 0:
            cands.extend(find_iom_candidates(work, None, state.partition, cfg.k,
                                             cfg.n_i, cfg.n_o, n_io, cfg.filter,
                                             literal=cfg.literal, pruned=state.pruned,
                                             ctx=state.ctx))
        if cfg.n_c - n_io > 0:
            cands.extend(find_iim_candidates(work, None, state.partition, cfg.k,
                                             cfg.n_i, cfg.n_c - n_io, cfg.filter,
                                             literal=cfg.literal, ctx=state.ctx))
        if not cands:
            skipped += 1
            continue
        sizes = evaluate_candidates(state.view, cands, cfg.threads)
        best, best_size = pick_best(cands, sizes)
        if not cfg.allow_no_op and best_size <= state.view.tk_size:
            break
        work._merge_inplace(best.v1, best.v2)
        steps.append(MergerStep(best.v1, best.v2, best.kind, best_size, n_io,
                                len(cands), time.perf_counter() - t0))
        if cfg.method is Method.BM and rnd < cfg.b - 1:
            n_io = adaptive_update(n_io, best.kind, cfg.n_c, cfg.b)
    return MergerPlan(cfg.k, initial, tuple(steps), skipped)


def run_method(g: Graph, cfg: RunConfig) -> MergerPlan:
    """Dispatch a run to the configured method's implementation."""
    cfg.validate()
    if cfg.method in (Method.BM, Method.EQ, Method.II, Method.IO):
        return adaptive_search(g, cfg)
    from . import baselines

    if cfg.method is Method.RD:
        return baselines.baseline_rd(g, cfg)
    if cfg.method is Method.NE:
        return baselines.baseline_ne(g, cfg)
    if cfg.method is Method.NT:
        return baselines.baseline_nt(g, cfg)
    return baselines.naive_greedy(g, cfg.k, cfg.b)

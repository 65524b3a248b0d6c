#!/usr/bin/env python3
"""Download the email network and stage it for tests and experiments.

The raw file is a directed edge list with self-loops. Experiments use
the undirected simple version restricted to its largest connected
component, so that is what gets written (one "u v" line per edge,
original node labels). The staged file is verified against the known
component size before anything lands in the data directory.
"""

import argparse
import gzip
import sys
import urllib.request
from collections import deque
from pathlib import Path

DATASETS = {
    "email.txt": {
        "url": "https://snap.stanford.edu/data/email-Eu-core.txt.gz",
        "nodes": 986,
        "edges": 16064,
    },
}


def undirected_simple(text: str) -> set[tuple[str, str]]:
    edges: set[tuple[str, str]] = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        u, v = line.split()[:2]
        if u != v:
            edges.add((u, v) if u <= v else (v, u))
    return edges


def largest_component(edges: set[tuple[str, str]]) -> set[tuple[str, str]]:
    adj: dict[str, set[str]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    best: set[str] = set()
    seen: set[str] = set()
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            for w in adj[queue.popleft()]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        if len(comp) > len(best):
            best = comp
    return {e for e in edges if e[0] in best}


def stage(name: str, spec: dict, data_dir: Path, force: bool) -> int:
    target = data_dir / name
    if target.exists() and not force:
        print(f"{target} already present, skipping (use --force to refetch)")
        return 0
    print(f"fetching {spec['url']}")
    with urllib.request.urlopen(spec["url"], timeout=60) as resp:
        raw = resp.read()
    text = gzip.decompress(raw).decode("utf-8")
    edges = largest_component(undirected_simple(text))
    nodes = {v for e in edges for v in e}
    if (len(nodes), len(edges)) != (spec["nodes"], spec["edges"]):
        print(f"error: {name} has {len(nodes)} nodes / {len(edges)} edges, "
              f"expected {spec['nodes']} / {spec['edges']}; upstream file "
              "may have changed, refusing to stage it", file=sys.stderr)
        return 1
    data_dir.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8") as fh:
        fh.write(f"# {name}: undirected simple, largest connected component\n")
        fh.write(f"# {len(nodes)} nodes, {len(edges)} edges\n")
        for u, v in sorted(edges):
            fh.write(f"{u} {v}\n")
    print(f"wrote {target} ({len(nodes)} nodes, {len(edges)} edges)")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--data-dir", type=Path,
                    default=Path(__file__).resolve().parents[1] / "data")
    ap.add_argument("--force", action="store_true")
    args = ap.parse_args(argv)
    rc = 0
    for name, spec in DATASETS.items():
        rc = max(rc, stage(name, spec, args.data_dir, args.force))
    return rc


if __name__ == "__main__":
    raise SystemExit(main())

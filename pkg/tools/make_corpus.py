"""Generate the stored corpus of small connected graphs (graph6, one per
line): every connected graph on up to 5 vertices (up to isomorphism) plus
a deterministic sample of connected graphs on 6 and 7 vertices."""
import itertools
import random
import sys

sys.path.insert(0, "src")

from firecontain.embedding import build
from firecontain.formats import encode_graph6


def all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        yield edges


def connected(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    queue = [0]
    for u in queue:
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == n


def canon(n, edges):
    eset = {frozenset(e) for e in edges}
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v])))
                           for u, v in eset))
        if best is None or key < best:
            best = key
    return best


def to_graph(n, edges):
    rot = [[] for _ in range(n)]
    for u, v in edges:
        rot[u].append(v)
        rot[v].append(u)
    return build(rot, embedding_verified=False)


out = []
for n in range(1, 6):
    seen = set()
    for edges in all_graphs(n):
        if not connected(n, edges):
            continue
        key = canon(n, edges)
        if key in seen:
            continue
        seen.add(key)
        out.append(to_graph(n, edges))
    print(f"n={n}: {len(seen)} connected graphs", file=sys.stderr)

rng = random.Random(12345)
for n, count in ((6, 40), (7, 40)):
    pairs = list(itertools.combinations(range(n), 2))
    seen = set()
    tries = 0
    while len(seen) < count and tries < 20000:
        tries += 1
        edges = [p for p in pairs if rng.random() < rng.choice((0.3, 0.5, 0.7))]
        if not connected(n, edges):
            continue
        key = canon(n, edges)
        if key in seen:
            continue
        seen.add(key)
        out.append(to_graph(n, edges))
    print(f"n={n}: sampled {len(seen)}", file=sys.stderr)

# a few structured extras
from firecontain.families import path, cycle, star, complete_bipartite_2_m
for g in (path(6), path(7), cycle(6), cycle(7), star(7),
          complete_bipartite_2_m(5)):
    out.append(g)

with open("tests/data/small_connected.g6", "wb") as f:
    for g in out:
        f.write(encode_graph6(g) + b"\n")
print(f"total {len(out)} graphs", file=sys.stderr)

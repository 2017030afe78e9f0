"""Beam search for a two-firefighter containment plan on the square grid
(fire at the centre, <= 18 burned, contained within 8 rounds).

Writes the winning plan as relative lattice offsets to stdout.
"""
import itertools
import sys

DIRS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def nbrs(p):
    return [(p[0] + d[0], p[1] + d[1]) for d in DIRS]


def frontier(burning, protected):
    out = set()
    for p in burning:
        for q in nbrs(p):
            if q not in burning and q not in protected:
                out.add(q)
    return out


def search(beam_width=4000, rounds=9, cap=18):
    start = (0, 0)
    init = (frozenset([start]), frozenset(), ())
    beam = [init]
    best = None
    for rno in range(1, rounds + 1):
        nxt = {}
        for burning, protected, plan in beam:
            front = frontier(burning, protected)
            if not front:
                if len(burning) <= cap and (best is None or
                                            len(burning) < best[0]):
                    best = (len(burning), plan)
                continue
            # candidates: free vertices adjacent to the fire or to the frontier
            cand = set(front)
            for p in front:
                for q in nbrs(p):
                    if q not in burning and q not in protected:
                        cand.add(q)
            cand = sorted(cand)
            for combo in itertools.combinations(cand, min(2, len(cand))):
                prot2 = protected | frozenset(combo)
                newly = frontier(burning, prot2)
                burn2 = burning | newly
                if len(burn2) > cap:
                    continue
                key = (burn2, prot2)
                if key not in nxt:
                    nxt[key] = plan + (combo,)
        scored = sorted(
            ((len(b) + len(frontier(b, p)), len(b), sorted(b), sorted(p))
             for (b, p) in nxt),
            key=lambda t: (t[0], t[1]))
        keep = scored[:beam_width]
        lookup = {}
        for s in keep:
            k = (frozenset(map(tuple, s[2])), frozenset(map(tuple, s[3])))
            lookup[k] = nxt[k]
        beam = [(b, p, pl) for (b, p), pl in lookup.items()]
        sys.stderr.write(f"round {rno}: beam {len(beam)}"
                         + (f" best {best[0]}" if best else "") + "\n")
        if not beam:
            break
    # sweep final beam for contained states
    for burning, protected, plan in beam:
        if not frontier(burning, protected) and len(burning) <= cap:
            if best is None or len(burning) < best[0]:
                best = (len(burning), plan)
    return best


best = search()
if best is None:
    print("NO PLAN FOUND")
    sys.exit(1)
print("burned:", best[0])
print("rounds:", len(best[1]))
for r, combo in enumerate(best[1], 1):
    print(f"round {r}: {list(combo)}")

#!/usr/bin/env python3
"""Writes fixtures/f3.json: the octahedral group acting on Sd(boundary of the octahedron).

Standalone on purpose: it builds the subdivision and the induced
permutations without the C++ library, so the fixture doubles as a check
of barycentric_subdivision and subdivide_action.
"""
import itertools
import json
import sys

AXES = ["x", "y", "z"]
VERTS = [s + a for a in AXES for s in "+-"]


def opposite(v):
    return ("-" if v[0] == "+" else "+") + v[1]


def octahedron():
    edges = [frozenset(p) for p in itertools.combinations(VERTS, 2) if p[0] != opposite(p[1])]
    tris = [frozenset((a + "x", b + "y", c + "z")) for a in "+-" for b in "+-" for c in "+-"]
    return edges, tris


def name(s):
    s = sorted(s)
    return s[0] if len(s) == 1 else "b(" + ",".join(s) + ")"


def subdivide(edges, tris):
    simplices = [frozenset([v]) for v in VERTS] + edges + tris
    vertices = sorted(name(s) for s in simplices)
    sd_edges = set()
    for hi in simplices:
        for lo in simplices:
            if lo < hi:
                sd_edges.add(tuple(sorted((name(lo), name(hi)))))
    sd_tris = set()
    for t in tris:
        for e in edges:
            if e < t:
                for v in e:
                    sd_tris.add(tuple(sorted((name(frozenset([v])), name(e), name(t)))))
    return simplices, vertices, sorted(sd_edges), sorted(sd_tris)


def induced_cycles(perm, simplices):
    image = {}
    for s in simplices:
        image[name(s)] = name(frozenset(perm[v] for v in s))
    seen, cycles = set(), []
    for start in sorted(image):
        if start in seen or image[start] == start:
            continue
        cycle, v = [], start
        while v not in seen:
            seen.add(v)
            cycle.append(v)
            v = image[v]
        cycles.append(cycle)
    return cycles


def cycles_to_perm(cycles):
    perm = {v: v for v in VERTS}
    for c in cycles:
        for i, v in enumerate(c):
            perm[v] = c[(i + 1) % len(c)]
    return perm


GENERATORS = [
    [["+x", "+y", "+z"], ["-x", "-y", "-z"]],
    [["+x", "+y"], ["-x", "-y"]],
    [["+x", "-x"]],
]


def main(path):
    edges, tris = octahedron()
    simplices, vertices, sd_edges, sd_tris = subdivide(edges, tris)
    gens = [induced_cycles(cycles_to_perm(g), simplices) for g in GENERATORS]
    doc = {
        "complex": {
            "vertices": vertices,
            "edges": [list(e) for e in sd_edges],
            "triangles": [list(t) for t in sd_tris],
        },
        "generators": gens,
    }
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures/f3.json")

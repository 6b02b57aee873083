#!/usr/bin/env python3
"""Independent recomputation of fixture invariants.

Everything here is done from scratch in plain Python (plus sympy for the
Smith form): permutation groups by closure, barycentric subdivision,
orbit quotients, simplicial homology, abelianizations by coset counting,
and the colimit of stabilizers over every vertex of X.

  oracle.py --fixtures DIR --freeze FILE        write values
  oracle.py --fixtures DIR --check --frozen FILE [--cli BIN]
"""

import argparse
import itertools
import json
import math
import subprocess
import sys
from pathlib import Path

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


# complexes: a dict dim -> set of frozensets of vertex names

def load(path):
    with open(path) as f:
        j = json.load(f)
    c = j["complex"]
    cx = {0: {frozenset([v]) for v in c["vertices"]},
          1: {frozenset(e) for e in c["edges"]},
          2: {frozenset(t) for t in c.get("triangles", [])}}
    gens = []
    for g in j["generators"]:
        m = {v: v for v in c["vertices"]}
        for cyc in g:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                m[a] = b
        gens.append(m)
    return cx, gens


def subdivide(cx, gens):
    def name(s):
        s = sorted(s)
        return s[0] if len(s) == 1 else "b(" + ",".join(s) + ")"
    simplices = [s for d in cx for s in cx[d]]
    out = {0: set(), 1: set(), 2: set()}
    # flags s0 < s1 < ...
    for top in simplices:
        for perm in itertools.permutations(sorted(top)):
            chain = [frozenset(perm[:i + 1]) for i in range(len(perm))]
            for k in range(1, len(chain) + 1):
                for sub in itertools.combinations(chain, k):
                    out[k - 1].add(frozenset(name(s) for s in sub))
    new_gens = []
    for g in gens:
        m = {}
        for s in simplices:
            m[name(s)] = name(frozenset(g[v] for v in s))
        new_gens.append(m)
    return out, new_gens


# groups: elements as tuples over a fixed vertex order

class Group:
    def __init__(self, vertices, gens):
        self.vs = sorted(vertices)
        self.ix = {v: i for i, v in enumerate(self.vs)}
        self.e = tuple(range(len(self.vs)))
        self.gens = [tuple(self.ix[g[v]] for v in self.vs) for g in gens]
        seen = {self.e}
        todo = [self.e]
        while todo:
            x = todo.pop()
            for g in self.gens:
                y = self.mul(g, x)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        self.elements = sorted(seen)

    @staticmethod
    def mul(p, q):  # p after q
        return tuple(p[i] for i in q)

    @staticmethod
    def inv(p):
        out = [0] * len(p)
        for i, x in enumerate(p):
            out[x] = i
        return tuple(out)

    def act(self, g, v):
        return self.vs[g[self.ix[v]]]

    def image(self, g, s):
        return frozenset(self.act(g, v) for v in s)

    def stabilizer(self, v):
        return [g for g in self.elements if self.act(g, v) == v]


def has_rotation(cx, G):
    for d in (1, 2):
        for s in cx[d]:
            for g in G.elements:
                if G.image(g, s) == s and any(G.act(g, v) != v for v in s):
                    return True
    return False


def quotient(cx, G):
    rep = {}
    for v in sorted(s for (s,) in cx[0]):
        if v not in rep:
            for g in G.elements:
                rep.setdefault(G.act(g, v), v)
    q = {d: set() for d in cx}
    collision = False
    for d in cx:
        orbits = set()
        for s in cx[d]:
            orbits.add(min(tuple(sorted(G.image(g, s))) for g in G.elements))
            img = frozenset(rep[v] for v in s)
            if len(img) != len(s):
                collision = True
            q[d].add(img)
        if len(orbits) != len(q[d]):
            collision = True
    return q, collision


def refine(cx, gens, limit=3):
    n = 0
    while True:
        G = Group([v for (v,) in cx[0]], gens)
        if not has_rotation(cx, G) and not quotient(cx, G)[1]:
            return cx, gens, G, n
        if n == limit:
            raise RuntimeError("refinement did not settle")
        cx, gens = subdivide(cx, gens)
        n += 1


# integer linear algebra

def echelon(rows, ncols):
    """Row basis of the lattice spanned by `rows`, pivots strictly increasing."""
    basis = {}
    for r in rows:
        r = list(r)
        for c in range(ncols):
            if r[c] == 0:
                continue
            if c not in basis:
                basis[c] = r
                break
            b = basis[c]
            g, x, y = egcd(b[c], r[c])
            u, v = b[c] // g, r[c] // g
            basis[c] = [x * bi + y * ri for bi, ri in zip(b, r)]
            r = [-v * bi + u * ri for bi, ri in zip(b, r)]
    return [basis[c] for c in sorted(basis)]


def egcd(a, b):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = egcd(b, a % b)
    return g, y, x - (a // b) * y


def cokernel(rows, ncols):
    """(rank, torsion) of Z^ncols / span(rows), plus rank of the span."""
    basis = echelon(rows, ncols)
    if not basis:
        return ncols, [], 0
    S = smith_normal_form(Matrix(basis), domain=ZZ)
    diag = [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]
    return ncols - len(diag), sorted(d for d in diag if d != 1), len(diag)


def homology(cx, k):
    def boundary(d):
        lo = sorted(tuple(sorted(s)) for s in cx[d - 1])
        ix = {s: i for i, s in enumerate(lo)}
        rows = []
        for s in sorted(tuple(sorted(s)) for s in cx[d]):
            row = [0] * len(lo)
            for i in range(len(s)):
                row[ix[s[:i] + s[i + 1:]]] += (-1) ** i
            rows.append(row)
        return rows, len(lo)
    n_k = len(cx[k])
    rows_up, _ = boundary(k + 1) if k + 1 in cx else ([], n_k)
    rank_k = cokernel(*boundary(k))[2] if k > 0 else 0
    _, torsion, rank_up = cokernel(rows_up, n_k)
    return n_k - rank_k - rank_up, torsion


# abelianizations

def invariant_factors(counts, order):
    """Abelian group of `order` from counts[m] = #{a : m*a = 0}."""
    primary = {}
    n = order
    p = 2
    while n > 1:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            prev = 1
            parts = []
            for k in range(1, e + 1):
                cur = counts(p ** k)
                parts.append(round(math.log(cur // prev, p)))  # number of e_i >= k
                prev = cur
            exps = [sum(1 for x in parts if x > i) for i in range(parts[0])] if parts else []
            primary[p] = sorted(exps)
        p += 1
    factors = []
    while any(primary.values()):
        d = 1
        for p, exps in primary.items():
            if exps:
                d *= p ** exps.pop()
        factors.append(d)
    return sorted(factors)


def group_abelianization(G):
    comm = {G.e}
    todo = [G.e]
    gens = [G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))) for a in G.elements for b in G.elements]
    gens = set(gens)
    while todo:
        x = todo.pop()
        for c in gens:
            y = G.mul(c, x)
            if y not in comm:
                comm.add(y)
                todo.append(y)
    cosets = {}
    for g in G.elements:
        cosets.setdefault(min(G.mul(g, c) for c in comm), g)

    def counts(m):
        n = 0
        for g in cosets.values():
            x = G.e
            for _ in range(m):
                x = G.mul(g, x)
            n += x in comm
        return n
    return 0, invariant_factors(counts, len(cosets))


def colimit_abelianization(cx, G):
    vertices = sorted(v for (v,) in cx[0])
    stab = {v: G.stabilizer(v) for v in vertices}
    col = {}
    for v in vertices:
        for g in stab[v]:
            if g != G.e:
                col[(v, g)] = len(col)

    def vec(*terms):
        row = [0] * len(col)
        for sign, v, g in terms:
            if g != G.e:
                row[col[(v, g)]] += sign
        return row
    rows = []
    for v in vertices:
        for g in stab[v]:
            for h in stab[v]:
                rows.append(vec((1, v, g), (1, v, h), (-1, v, G.mul(g, h))))
            for k in G.gens:
                rows.append(vec((1, v, g), (-1, G.act(k, v), G.mul(G.mul(k, g), G.inv(k)))))
    for e in cx[1]:
        a, b = sorted(e)
        for x in stab[a]:
            if G.act(x, b) == b:
                rows.append(vec((1, a, x), (-1, b, x)))
    rank, torsion, _ = cokernel(rows, len(col))
    return rank, torsion


def collapsible(cx):
    simplices = {s for d in cx for s in cx[d]}
    changed = True
    while changed and len(simplices) > 1:
        changed = False
        for s in sorted(simplices, key=len):
            cofaces = [t for t in simplices if len(t) == len(s) + 1 and s < t]
            if len(cofaces) == 1:
                simplices -= {s, cofaces[0]}
                changed = True
                break
    return len(simplices) == 1


def free_and_simply_connected(cx, G):
    free = all(G.act(g, v) != v for g in G.elements if g != G.e for (v,) in cx[0])
    return free and homology(cx, 1) == (0, [])


# cases

CASES = {
    "f1": {"refine": False, "present": True},
    "f2": {"refine": False, "present": True},
    "f3": {"refine": False, "present": True},
    "f4": {"refine": True, "present": False},
    "f5": {"refine": True, "present": False},
}


def ab(pair):
    return {"rank": pair[0], "torsion": list(pair[1])}


def compute(fixtures):
    out = {}
    for name, opts in CASES.items():
        cx, gens = load(Path(fixtures) / f"{name}.json")
        if opts["refine"]:
            cx, gens, G, n = refine(cx, gens)
        else:
            G, n = Group([v for (v,) in cx[0]], gens), 0
        q, collision = quotient(cx, G)
        rec = {
            "group_order": len(G.elements),
            "subdivisions": n,
            "rotations": has_rotation(cx, G),
            "collision": collision,
            "shape": [len(cx[d]) for d in (0, 1, 2)],
            "quotient_shape": [len(q[d]) for d in (0, 1, 2)],
            "h1": ab(homology(cx, 1)),
            "h2": ab(homology(cx, 2)),
            "quotient_h1": ab(homology(q, 1)),
            "quotient_h2": ab(homology(q, 2)),
            "group_ab": ab(group_abelianization(G)),
        }
        if opts["present"]:
            rec["colimit_ab"] = ab(colimit_abelianization(cx, G))
        if free_and_simply_connected(cx, G):
            # covering space: the quotient's fundamental group is G
            rec["quotient_pi1_order"] = len(G.elements)
        elif collapsible(q):
            rec["quotient_pi1_order"] = 1
        out[name] = rec
    return out


def cli_values(cli, fixtures, name, opts):
    path = str(Path(fixtures) / f"{name}.json")
    flags = ["--refine"] if opts["refine"] else []

    def run(*args):
        p = subprocess.run([cli, *args, path, *flags, "--format", "json"],
                           capture_output=True, text=True)
        return json.loads(p.stdout) if p.stdout.strip() else json.loads(p.stderr)
    got = {}
    q = run("quotient")
    got["subdivisions"] = q.get("subdivisions", 0)
    got["quotient_shape"] = [len(q["quotient"][k]) for k in ("vertices", "edges", "triangles")]
    for k in (1, 2):
        got[f"h{k}"] = run("homology", "-k", str(k))["homology"]
        got[f"quotient_h{k}"] = run("homology", "-k", str(k), "--quotient")["homology"]
    if opts["present"]:
        a = run("abelianize")
        got["group_ab"] = a["group"]
        got["colimit_ab"] = a["colimit"]
        v = run("verify")
        got["group_order"] = v["group_order"]
        got["presented_order"] = v["presented_order"]
    else:
        v = run("validate")
        got["group_order"] = v["group_order"]
        conn = v["quotient_connectivity"]
        if conn.get("pi1_order") is not None:
            got["quotient_pi1_order"] = conn["pi1_order"]
    return got


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fixtures", required=True)
    ap.add_argument("--frozen")
    ap.add_argument("--freeze")
    ap.add_argument("--check", action="store_true")
    ap.add_argument("--cli")
    args = ap.parse_args()

    values = compute(args.fixtures)
    if args.freeze:
        with open(args.freeze, "w") as f:
            json.dump(values, f, indent=1, sort_keys=True)
            f.write("\n")
    failures = 0
    if args.check:
        if args.frozen:
            with open(args.frozen) as f:
                frozen = json.load(f)
            if frozen != values:
                failures += 1
                print("FAIL oracle values differ from the frozen copy")
                for name in sorted(set(frozen) | set(values)):
                    if frozen.get(name) != values.get(name):
                        print(f"  {name}: frozen {frozen.get(name)} now {values.get(name)}")
        if args.cli:
            for name, opts in CASES.items():
                got = cli_values(args.cli, args.fixtures, name, opts)
                want = values[name]
                for key, val in got.items():
                    expect = want["group_order"] if key == "presented_order" else want.get(key)
                    ok = expect == val
                    failures += not ok
                    print(f"{'ok  ' if ok else 'FAIL'} {name} {key}: cli {val} oracle {expect}")
    print(f"{failures} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

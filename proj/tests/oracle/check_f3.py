#!/usr/bin/env python3
"""Regenerates the octahedral fixture and compares it with the checked-in copy."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def canonical(j):
    c = j["complex"]
    return (sorted(c["vertices"]),
            sorted(sorted(e) for e in c["edges"]),
            sorted(sorted(t) for t in c["triangles"]),
            sorted(sorted(sorted(cyc) for cyc in g) for g in j["generators"]))


def main(script, fixture):
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "f3.json"
        subprocess.run([sys.executable, script, str(out)], check=True)
        fresh = json.loads(out.read_text())
    stored = json.loads(Path(fixture).read_text())
    if canonical(fresh) != canonical(stored):
        print("FAIL regenerated fixture differs from", fixture)
        return 1
    v, e, t, g = canonical(stored)
    print(f"ok {len(v)} vertices, {len(e)} edges, {len(t)} triangles, {len(g)} generators")
    return 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:3]))

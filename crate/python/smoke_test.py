#!/usr/bin/env python3
"""Smoke test for the hyperhull_py extension module.

Builds are produced by cargo as lib<name>.so; the loader below copies the
shared object next to a temp dir under the import name Python expects, so no
packaging tooling is needed:

    cargo build --release -p hyperhull-py
    python3 python/smoke_test.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libhyperhull_py.so",
        ROOT / "target" / "debug" / "libhyperhull_py.so",
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit(
            "libhyperhull_py.so not found; run "
            "`cargo build --release -p hyperhull-py` first"
        )
    stage = Path(tempfile.mkdtemp(prefix="hyperhull_py_"))
    shutil.copy2(built, stage / "hyperhull_py.so")
    sys.path.insert(0, str(stage))
    import hyperhull_py

    return hyperhull_py


def main():
    hh = load_module()

    assert hh.count(1) == 1
    assert hh.count(4) == 3
    assert hh.count(14) == 6

    chain = hh.vertices("14")
    assert chain == [
        ("1", "14"),
        ("2", "7"),
        ("3", "5"),
        ("5", "3"),
        ("7", "2"),
        ("14", "1"),
    ], chain

    # Parity sublattice: (3, 3) is collinear and excluded.
    sub = hh.vertices("6", lattice=["1", "1", "0", "2"])
    assert sub == [("1", "7"), ("2", "4"), ("4", "2"), ("7", "1")], sub

    # Rational anchor: the chain ends on the half-integer bottom row.
    half = hh.vertices("14", anchor=["0", "1/2"])
    assert half[0] == ("1", "29/2") and half[-1] == ("28", "1/2"), half

    # General hyperbola (x + y)(x + 2y) = 14, component containing (20, 20).
    gen = hh.vertices_general(1, 3, 2, "0", "0", "14", ("20", "20"))
    assert gen[0] == (27, -13) and len(gen) == 6, gen

    assert hh.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert hh.find_factor(15) == 3
    assert hh.find_factor(13, chunks=4) is None
    assert hh.find_factor(999983 * 999979) == 999979

    rows = hh.scan(1, 100)
    assert len(rows) == 100
    assert rows[13] == (14, 6, True, True)
    assert all(lo and up for (_, _, lo, up) in rows)

    assert hh.next_vertex("14", "4") == ("5", "3")
    assert hh.next_vertex("14", "15") is None

    assert hh.contains("14", "1", "14")
    assert not hh.contains("14", "3", "4")

    print("hyperhull_py smoke test: PASS")


if __name__ == "__main__":
    main()

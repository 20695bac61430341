"""Builds the extension, imports it and exercises the main entry points.

Usage: python3 python/smoke_test.py [--no-build]
"""

import importlib
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module(build: bool):
    if build:
        subprocess.run(
            ["cargo", "build", "--release", "-p", "cozero-py"], cwd=ROOT, check=True
        )
    lib = ROOT / "target" / "release" / "libcozero_py.so"
    if not lib.exists():
        sys.exit(f"missing {lib}; run without --no-build")
    out = Path(tempfile.mkdtemp(prefix="cozero_py_"))
    shutil.copy(lib, out / "cozero.so")
    sys.path.insert(0, str(out))
    return importlib.import_module("cozero")


def check(cond: bool, what: str) -> None:
    print(f"{'ok  ' if cond else 'FAIL'} {what}")
    if not cond:
        check.failed = True


check.failed = False


def main() -> int:
    cz = load_module("--no-build" not in sys.argv)

    r = cz.Ring(10)
    check(r.vertex_count == 59, "n=10 has 59 vertices")
    check(r.mul((1, 2), (3, 4)) == (0, 8), "(x+2)(3x+4) = 10x+8 = 8 mod 10")
    check(not r.is_unit((1, 5)) and r.is_unit((7, 3)), "unit criterion")
    check(r.in_ideal((0, 4), (0, 2)) and not r.in_ideal((1, 0), (0, 2)), "in_ideal")
    check(len(r.principal_ideal((0, 2))) == 25, "<2> has 25 elements")
    check(r.crt_split((3, 7)) == [(1, 1), (3, 2)], "CRT split into Z_2 and Z_5 parts")

    s, o = r.structural_spectrum(), r.oracle_spectrum()
    ok, dev = cz.compare(s, o)
    check(ok and dev < 1e-8 and s.dimension == 59, f"structural = oracle (dev {dev:.1e})")
    check(cz.compare(s, r.closed_form_spectrum())[0], "pq closed form agrees")
    radius, connectivity = s.extremes()
    check(connectivity > 0, f"connected (radius {radius:.3f})")

    g = r.reduced_graph()
    check(len(g) == 7 and sum(g.weights) == 59, repr(g))

    comps, isolated = cz.Ring(9).connectivity()
    check(comps == 3 and isolated == [(3, 0), (6, 0)], "n=9: <3> vertices are isolated")

    k3 = cz.laplacian_spectrum(3, [(0, 1), (1, 2), (0, 2)])
    check(k3.rounded() == [(0, 1), (3, 2)], "K3 spectrum {0, 3^2}")

    capped = cz.Ring(10, max_n=5)
    check(capped.mul((1, 1), (1, 1)) == (2, 1), "arithmetic ignores the cap")
    try:
        capped.structural_spectrum()
        check(False, "cap enforced")
    except ValueError as e:
        check(True, f"cap enforced ({e})")

    return 1 if check.failed else 0


if __name__ == "__main__":
    sys.exit(main())

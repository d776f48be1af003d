"""Homology census over the bundled systems, one row per (system, route).

    python3 scripts/census.py [--systems DIR] [--cmw-max-order N]
"""
import argparse
import time
from pathlib import Path

from artinhom.cmw import cmw_complex
from artinhom.complex import homology
from artinhom.coxeter import CoxeterGroup, load_system
from artinhom.monoid import ArtinMonoid
from artinhom.squier import SquierRoutes

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--systems", type=Path, default=ROOT / "systems")
    ap.add_argument("--cmw-max-order", type=int, default=48,
                    help="skip the CMW route when |W| exceeds this")
    args = ap.parse_args()

    print(f"{'system':8} {'route':7} {'ranks':30} {'time':>7}  homology")
    for path in sorted(args.systems.glob("*.cox")):
        M = ArtinMonoid(load_system(path))
        r = SquierRoutes(M)
        routes = {"squier": r.squier_complex, "mu2": r.mu2_morse_complex, "mu1": r.mu1_complex}
        if M.is_finite_type(range(M.system.rank)):
            order = len(CoxeterGroup(M.system).elements())
            if order <= args.cmw_max_order:
                routes["cmw"] = lambda: cmw_complex(M)
        results = []
        for name, build in routes.items():
            t0 = time.perf_counter()
            c = build()
            h = homology(c)
            dt = time.perf_counter() - t0
            results.append(h)
            print(f"{path.stem:8} {name:7} {str(c.ranks()):30} {dt:6.2f}s  {h}")
        agree = all(h.agrees(results[0]) for h in results)
        print(f"{path.stem:8} {'':7} routes {'agree' if agree else 'DISAGREE'}")


if __name__ == "__main__":
    main()

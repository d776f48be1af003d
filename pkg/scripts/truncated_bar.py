"""Truncated bar complexes against their mu1 Morse reductions.

For L = 1..max, builds the bar complex on cells of total length <= L,
reduces it along mu1, and prints ranks and homology of both.

    python3 scripts/truncated_bar.py systems/A2.cox --max-len 5
"""
import argparse
import time

from artinhom.bar import BarComplex, total_length
from artinhom.complex import homology
from artinhom.coxeter import load_system
from artinhom.monoid import ArtinMonoid
from artinhom.morse import Kind, MorseReducer, morse_complex


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("system")
    ap.add_argument("--max-len", type=int, default=4)
    ap.add_argument("--max-dim", type=int, default=None)
    args = ap.parse_args()
    bar = BarComplex(ArtinMonoid(load_system(args.system)))
    for L in range(1, args.max_len + 1):
        t0 = time.perf_counter()
        trunc = bar.truncation(L, args.max_dim)
        ess = {n: [c for c in cells if bar.mu1_classify(c).kind is Kind.ESSENTIAL]
               for n, cells in trunc.basis.items()}
        red = MorseReducer(bar.boundary, bar.mu1_classify, weight=total_length)
        reduced = morse_complex(bar.boundary, bar.mu1_classify, ess, red)
        h_full, h_red = homology(trunc), homology(reduced)
        dt = time.perf_counter() - t0
        print(f"L={L}: bar ranks {trunc.ranks()} -> mu1 ranks {reduced.ranks()}  "
              f"({dt:.2f}s, {red.expansions} expansions)")
        print(f"      bar: {h_full}")
        print(f"      mu1: {h_red}  {'agree' if h_full.agrees(h_red) else 'DISAGREE'}")


if __name__ == "__main__":
    main()

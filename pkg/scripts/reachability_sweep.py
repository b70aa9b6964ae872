"""Reachability probes over a small grid of Gamma parameters and word lengths.

Prints the slice rank reached at each word length.  A full slice is finite
evidence for simplicity, a deficit at small length is not evidence against it.

    python scripts/reachability_sweep.py --length 4 --degree-cap 3
"""
import argparse
import itertools
import time
from fractions import Fraction

from virmod import AVector, Gamma, ModuleInstance, OneDim, WeightVector
from virmod.oracles import reachability_probe

GRID = {
    "alpha1": [Fraction(0), Fraction(1, 2)],
    "lambdas": [(1, 0), (1, 1), (0, 1), (2, 3)],
    "alpha": [Fraction(0), Fraction(1, 4)],
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=int, default=4)
    ap.add_argument("--degree-cap", type=int, default=3)
    ap.add_argument("--window", type=int, default=6)
    args = ap.parse_args(argv)
    kw = dict(degree_cap=args.degree_cap, grade_window=(-2, 2), operator_window=args.window,
              max_length=args.length)
    for a1, (l1, l2), alpha in itertools.product(*GRID.values()):
        coeff = Gamma(a1, l1, l2)
        t0 = time.time()
        res = reachability_probe(ModuleInstance(coeff, alpha),
                                 WeightVector.single(AVector.basis(0), 0), **kw)
        print(f"Gamma(a1={a1}, l1={l1}, l2={l2}) alpha={alpha}: {res.rank}/{res.slice_dim} "
              f"levels {res.level_ranks} [{time.time() - t0:.1f}s]")
    for b in (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(2)):
        res = reachability_probe(ModuleInstance(OneDim(b), 0),
                                 WeightVector.single(AVector.basis(()), 0), **kw)
        print(f"OneDim(b={b}) alpha=0: {res.rank}/{res.slice_dim} levels {res.level_ranks}")


if __name__ == "__main__":
    main()

"""Measure the top omega constant c_r for a range of ranks.

For r = 1, 2 the Gamma modules are used; for r >= 3 a Q_lambda module with
S = {ceil(r/2), ..., r}, lambda_r = 1 and random lambda elsewhere.  Each
measured value is printed next to (-1)^(r+1) C(2r+2, r+1) and next to the
value (2r+2)! (-1)^(r+1) that was printed originally.

    python scripts/omega_constant_table.py --max-rank 6 --samples 20
"""
import argparse
import random
import time
from fractions import Fraction
from math import comb

from virmod import Gamma, ModuleInstance, QLambda
from virmod.oracles import determine_omega_constant, printed_constant


def module_of_rank(r, rng):
    if r == 1:
        return Gamma(0, 1, 0)
    if r == 2:
        return Gamma(Fraction(1, 2), 2, 3)
    S = range((r + 1) // 2, r + 1)
    lam = {i: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for i in S}
    lam[r] = Fraction(1)
    return QLambda(r, S, lam)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=6)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    print(f"{'r':>2}  {'measured':>10}  {'binomial':>10}  {'printed':>18}  indep  time")
    for r in range(1, args.max_rank + 1):
        coeff = module_of_rank(r, rng)
        t0 = time.time()
        res = determine_omega_constant(ModuleInstance(coeff, Fraction(1, 3)),
                                       samples=args.samples, seed=args.seed, degree=2)
        closed = (-1) ** (r + 1) * comb(2 * r + 2, r + 1)
        print(f"{r:>2}  {str(res.constant):>10}  {closed:>10}  {str(printed_constant(r)):>18}  "
              f"{str(res.independent):>5}  {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Ray convergence and divergence experiments.

Runs two experiments along rays k * Omega:

1. The all-ones 3x3 triangle with the word T1 T2 T3: the deflated
   characteristic polynomials converge to x^2 + x (the characteristic
   polynomial of the restricted limit map).
2. A 4x4 matrix whose intersection graph is missing the edge 1-2, with the
   closed path (1,2,3,4) not supported: the four eigenvalue magnitudes split
   along powers of k and are fitted to constant * k^exponent.
"""

import argparse

import mpmath as mp

from penner import IntersectionMatrix, TwistWord, ray_convergence_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scales", default="4,8,16,32,64",
                    help="comma-separated scales for the convergent run")
    ap.add_argument("--digits", type=int, default=50)
    args = ap.parse_args()
    scales = tuple(int(s) for s in args.scales.split(","))

    omega3 = IntersectionMatrix(((0, 1, 1), (1, 0, 1), (1, 1, 0)))
    word3 = TwistWord((1, 2, 3), (1, 1, 1))
    tab = ray_convergence_experiment(omega3, word3, scales, digits=args.digits)
    print("== convergent run: triangle, word T1 T2 T3 ==")
    print(f"limit polynomial: {tab.limit}")
    for row in tab.rows:
        print(f"  k = {row.scale:>4}: lambda = {mp.nstr(row.lam, 12):<16} "
              f"distance to limit = {mp.nstr(row.distance, 6)}")

    div4 = IntersectionMatrix(
        ((0, 0, 1, 2), (0, 0, 1, 1), (1, 1, 0, 1), (2, 1, 1, 0))
    )
    word4 = TwistWord((1, 2, 3, 4), (1, 1, 1, 1))
    tab = ray_convergence_experiment(div4, word4, (16, 32, 64, 128),
                                     digits=args.digits)
    print()
    print("== divergent run: path (1,2,3,4) not supported (edge 1-2 missing) ==")
    for row in tab.rows:
        mags = ", ".join(mp.nstr(m, 6) for m in row.magnitudes)
        print(f"  k = {row.scale:>4}: |eigenvalues| = {mags}")
    print("fitted |eig_i| ~ constant * k^exponent:")
    for i, (e, c) in enumerate(zip(tab.divergence.exponents,
                                   tab.divergence.constants)):
        print(f"  slot {i + 1}: exponent {e:+.3f}, constant {c:.4f}")


if __name__ == "__main__":
    main()

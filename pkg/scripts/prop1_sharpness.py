"""How sharp is the d + d(d+1) bound for three pairwise disjoint hyperplanes?

For small complexes, find by brute force the largest hyperplane family with no
pairwise disjoint triple and compare it with the bound.  In a product of d
trees a family avoiding disjoint triples can hold at most two hyperplanes per
factor, so the true threshold there is 2d + 1.
"""

import argparse
from itertools import combinations

from cubefix.complex import ProductComplex, flatten_product, lattice_box
from cubefix.fuzz import generate_complex
from cubefix.hyperplanes import crosses, hyperplanes, prop1_bound


def largest_triple_free(X):
    hs = hyperplanes(X)
    disjoint = {(a, b) for a, b in combinations(hs, 2) if not crosses(X, a, b)}

    def bad(t):
        return all((p, q) in disjoint for p, q in combinations(t, 2))

    best = 0
    for k in range(len(hs), 0, -1):
        for S in combinations(hs, k):
            if not any(bad(t) for t in combinations(S, 3)):
                return k
    return best


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=6)
    p.add_argument("--max-hyperplanes", type=int, default=14)
    args = p.parse_args()
    samples = [("box [0,4]^2", lattice_box(2, 0, 4)), ("box [0,3]^3", lattice_box(3, 0, 3))]
    for seed in range(args.seeds):
        for fam in ("tree", "staircase", "product"):
            samples.append((f"{fam}-{seed}", generate_complex(seed, fam)))
    print(f"{'complex':16s} {'d':>2s} {'#H':>4s} {'largest free':>13s} {'bound':>6s}")
    for name, X in samples:
        hs = hyperplanes(X)
        if len(hs) > args.max_hyperplanes:
            continue
        k = largest_triple_free(X)
        print(f"{name:16s} {X.dimension:2d} {len(hs):4d} {k:13d} {prop1_bound(X.dimension):6d}")


if __name__ == "__main__":
    main()

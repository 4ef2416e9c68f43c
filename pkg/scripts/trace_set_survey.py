"""Tabulate trace sets T(A, B) = {tr(A * Z^-1 B Z)} over GL(2,p).

For random non-scalar pairs, grouped by conjugacy type, we report how often
the trace set is all of Z_p and where the single excluded point sits when it
is not.  Exhaustive over Z, so keep p small.
"""

import argparse
import random

from spherical.core import GroupSpec
from spherical.mat2 import Mat2, classify, discriminant
from spherical.numtheory import legendre


def rand_nonscalar(p, r):
    while True:
        m = Mat2(p, r.randrange(p), r.randrange(p), r.randrange(p),
                 r.randrange(p))
        if m.det() != 0 and not m.is_scalar():
            return m


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=7)
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    p = args.p
    els = GroupSpec("gl2p", p=p).elements()
    r = random.Random(args.seed)
    stats = {}
    for _ in range(args.samples):
        a = rand_nonscalar(p, r)
        b = rand_nonscalar(p, r)
        traces = {(a * z.inverse() * b * z).trace() for z in els}
        key = tuple(sorted((classify(a), classify(b))))
        full, partial = stats.get(key, (0, 0))
        if len(traces) == p:
            stats[key] = (full + 1, partial)
        else:
            stats[key] = (full, partial + 1)
            missing = sorted(set(range(p)) - traces)
            ta, tb = classify(a), classify(b)
            if ta == "type3":
                a, b = b, a
            s = b.trace() * (p + 1) // 2 % p
            predicted = s * a.trace() % p
            nonres = legendre(discriminant(a), p) == -1
            print(f"  gap: types ({ta},{tb}) missing {missing} "
                  f"predicted {predicted} disc-nonresidue {nonres}")
    print(f"GL(2,{p}), {args.samples} random pairs:")
    for key in sorted(stats):
        full, partial = stats[key]
        print(f"  types {key}: full trace set {full}, with gaps {partial}")


if __name__ == "__main__":
    main()

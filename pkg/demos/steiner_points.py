#!/usr/bin/env python3
"""Steiner points of matroid base polytopes, estimated and exact.

Walks through three small polytopes where the answer is known in closed
form, and shows the identities that hold exactly (not statistically) in
every estimate: the L1 norm equals the rank, and the exterior-angle
fractions sum to 1.
"""

from fractions import Fraction

from amenability import (
    RATIONALS,
    SubspaceMatroid,
    enumerate_bases,
    estimate_steiner,
    exterior_angles,
    minkowski_combination_check,
    subspace_from_rows,
)

SEED = 20250809
N = 20_000


def show(title, matroid, expected):
    est = estimate_steiner(matroid, N, SEED)
    print(f"\n{title}")
    print(f"  bases: {enumerate_bases(matroid)}")
    print(f"  estimate (N={N}):", "  ".join(f"{float(x):.4f}" for x in est.vector))
    print(f"  expected:         ", "  ".join(f"{x:.4f}" for x in expected))
    print(f"  L1 norm = {est.l1()} (exact; equals the rank)")
    angles = exterior_angles(matroid, N, SEED)
    print(f"  angle fractions sum to {sum(angles.values())} (exact)")
    return est


# The simplex: the line spanned by (1,1,1).  Every singleton is a basis
# and by symmetry each exterior angle is 1/3.
simplex = SubspaceMatroid(subspace_from_rows([(1, 1, 1)], [0, 1, 2], RATIONALS))
show("simplex  (each coordinate 1/3)", simplex, [1 / 3] * 3)

# The hypersimplex of the plane {x : x_0 + x_1 + x_2 = 0}^perp: all three
# pairs are bases, each coordinate belongs to two of them.
hyper = SubspaceMatroid(subspace_from_rows([(1, 0, 1), (0, 1, 1)], [0, 1, 2], RATIONALS))
show("hypersimplex  (each coordinate 2/3)", hyper, [2 / 3] * 3)

# A segment: bases {0,1} and {0,2}.  Label 0 sits in both bases, so its
# coordinate is *exactly* 1 in every estimate; the two cone halves split
# the remaining mass evenly.
segment = SubspaceMatroid(subspace_from_rows([(1, 0, 0), (0, 1, 1)], [0, 1, 2], RATIONALS))
est = show("segment  (1, 1/2, 1/2); first coordinate exact", segment, [1, 0.5, 0.5])
assert est.vector[0] == Fraction(1)

# Steiner points are additive under Minkowski combination; with shared
# direction samples the identity holds exactly for the estimates too.
print("\nMinkowski combination (alpha = 1/2, shared samples):")
diag = SubspaceMatroid(subspace_from_rows([(1, 1)], [0, 1], RATIONALS))
full = SubspaceMatroid(subspace_from_rows([(1, 0), (0, 1)], [0, 1], RATIONALS))
chk = minkowski_combination_check(diag, full, Fraction(1, 2), 8_192, SEED)
print("  combined estimate:", "  ".join(f"{float(x):.4f}" for x in chk.combined))
print("  equals alpha*m1 + (1-alpha)*m2 exactly:", chk.equal)

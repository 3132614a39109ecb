#!/usr/bin/env python3
"""The lamplighter exhibit: set profile vs module profile.

The lamplighter group (lamps Z/2 along a line, one walker) is amenable,
but its best Folner sets are exponentially large: the box of all
configurations on a window of n lamps with the walker inside has
2^n * n elements and boundary ratio 2/n.  Over a field, the module side
collapses: the n vectors "sum of all configurations at walker position
t" span an n-dimensional subspace with the *same* ratio 2/n.  Tabulated
as generalized inverses, Phi_set(n) grows like 2^(2n) * 2n while
Phi_module(n) = 2n.
"""

from amenability import (
    GF2,
    family_generate,
    iso_family_upper,
    lamplighter,
    phi_from_table,
    set_report,
    subspace_report,
)

L = lamplighter()
GENS = ["+1", "-1", "b"]

print("witness families (exact ratios):")
print(f"{'n':>3} {'#box':>8} {'box ratio':>10} {'dim span':>9} {'span ratio':>11}")
for n in range(1, 9):
    box = family_generate("lamp-box", n)
    span = family_generate("lamp-span", n, GF2)
    box_rep = set_report(box, GENS, L)
    span_rep = subspace_report(span, GENS, L)
    print(
        f"{n:>3} {len(box):>8} {str(box_rep.union_ratio):>10}"
        f" {span_rep.size:>9} {str(span_rep.union_ratio):>11}"
    )

print("\nboth sides are invariant under the lamp generator b:")
rep = set_report(family_generate("lamp-box", 4), ["b"], L)
print(f"  box .b ratio  = {rep.union_ratio}")
rep = subspace_report(family_generate("lamp-span", 4, GF2), ["b"], L)
print(f"  span .b ratio = {rep.union_ratio}")

print("\ngeneralized inverses Phi(n) = least v with I(v) <= 1/n:")
boxes = iso_family_upper("lamp-box", range(1, 13), GENS, L)
spans = iso_family_upper("lamp-span", range(1, 13), GENS, L, GF2)
print(f"{'n':>3} {'Phi_set(n)':>12} {'Phi_module(n)':>14}")
for n in range(1, 7):
    print(f"{n:>3} {phi_from_table(boxes, n):>12} {phi_from_table(spans, n):>14}")
print("\nset side ~ 2^(2n) * 2n, module side = 2n: the profiles diverge.")

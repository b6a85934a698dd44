"""Why the group drops to Sym2 for even D that is a square mod 16.

For non-square D the fractional parts of the marked-point periods split
{w1, w2, w3} into {w1, w2} and {w3}, and every multitwist respects the
split.  For square D the same split shows up in the HLK invariant.

    python demos/obstructions.py
"""

from prymperm.cylinders import cylinder_decomposition
from prymperm.invariants import (displacement, fr_action, fr_classes, hlk_invariant,
                                 primitive_normalization)
from prymperm.surface import LABELS, sq_z, z_surface
from prymperm.twists import multitwist, pq_decompose

D, e = 20, -2
part = fr_classes(D, e)
print(f"Z_{D}({e}): fr values")
for label, v in part.fr.items():
    print(f"    {label}: ({v[0]}, {v[1]})")
print(f"    classes {[sorted(c) for c in part.classes]}, upper bound {part.upper_class}")

S = z_surface(D, e)
for v in ((1, 0), (0, 1)):
    A = multitwist(cylinder_decomposition(S, v)).matrix
    pq = pq_decompose(A, D, part.d)
    print(f"  twist in direction {v}: P = {pq.P}, det P = {pq.det_P}")
    for label in LABELS:
        lhs, rhs = fr_action(A, displacement(S, label), D, part.d)
        print(f"    {label}: fr(A v) = ({lhs[0]}, {lhs[1]})   P p_v / 2 = ({rhs[0]}, {rhs[1]})")

print()
for d in (6, 8, 10):
    for e in (-2, 0, 2):
        try:
            T, _ = primitive_normalization(sq_z(d, e))
        except Exception:
            continue
        inv = hlk_invariant(T)
        print(f"Z_{d * d}({e}): HLK {inv}  points {inv.points}")

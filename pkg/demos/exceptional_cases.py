"""Walk through the three small discriminants that need special surfaces.

    python demos/exceptional_cases.py
"""

from prymperm.cylinders import cylinder_decomposition
from prymperm.surface import a_minus, b8, z_surface
from prymperm.twists import multitwist, twist_permutation


def show(S, direction):
    dec = cylinder_decomposition(S, direction)
    mt = multitwist(dec)
    print(f"{S.spec.label()} in direction {direction}: {len(dec.cylinders)} cylinder(s)")
    for i, c in enumerate(dec.cylinders, 1):
        print(f"    C{i}: modulus {c.modulus}")
    print(f"    twist multiplicities {list(mt.k)}, permutation {twist_permutation(S, dec, mt)}")
    return dec


print("D = 8 has no three-cylinder prototype, so B_8(0) is used instead.")
show(b8(), (1, 0))
show(b8(), (0, 1))

print("\nD = 17: the second component needs an oblique direction on Z_17(-3).")
show(z_surface(17, -3), (1, 0))
show(z_surface(17, -3), (2, 1))

print("\nD = 25: A-_25(-1) is a single cylinder in the diagonal direction.")
dec = show(a_minus(25, -1), (1, 1))
on_core = [k for k, loc in sorted(dec.point_locations.items()) if loc.on_core]
print(f"    points on the core curve: {on_core}")

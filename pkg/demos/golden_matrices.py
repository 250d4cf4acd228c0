"""Hand-sized examples over the scalar space of Theta = z^2.

K_{z^2} is two dimensional with basis {1, z}, so every compressed
operator is a 2x2 matrix you can write down. We print the classics and
then the matrix that looks like a Hankel operator but is not one.
"""

import numpy as np

from matholab import (
    MatrixLaurent,
    ModelOperator,
    ModelSpace,
    build_matho,
    build_matto,
    diagonal_monomial,
    displacement_check,
)


def scalar(entries):
    return MatrixLaurent.from_coeff_map({n: [[c]] for n, c in entries.items()}, 1)


space = ModelSpace.from_product(diagonal_monomial([2]), order=16)

print("A_z  =")
print(np.real_if_close(build_matto(space, space, scalar({1: 1.0})).matrix))
print("B_zbar  =")
print(np.real_if_close(build_matho(space, space, scalar({-1: 1.0})).matrix))
print("B_zbar2 =")
print(np.real_if_close(build_matho(space, space, scalar({-2: 1.0})).matrix))
print("B_zbar3 =")
print(np.real_if_close(build_matho(space, space, scalar({-3: 1.0})).matrix))

# The built operators pass their displacement checks with residual zero.
op = build_matho(space, space, scalar({-2: 1.0}))
rep = displacement_check(op, "H1")
print("\nB_zbar2 under H1:", rep.verdict, " residual", rep.residual)

# The Jordan block is the classic non-example: it has Hankel-looking
# entries but fails every Hankel displacement identity with residual 1.
jordan = ModelOperator(space, space, np.array([[0.0, 1.0], [0.0, 0.0]]))
for kind in ("H1", "H2", "H3", "H4"):
    rep = displacement_check(jordan, kind)
    print(f"jordan under {kind}:", rep.verdict, " residual", round(rep.residual, 12))

# It is, however, a perfectly good truncated Toeplitz operator (it equals
# A_zbar), and the Toeplitz checks say so.
rep = displacement_check(jordan, "T1")
print("jordan under T1:", rep.verdict, " residual", rep.residual)

"""Every characterization gives the same answer.

A matrix between two model spaces either is a compressed Hankel (or
Toeplitz) operator or it is not, and each of the displacement identities,
their modified-shift variants, and the shift-invariance predicates must
agree on that. This script builds one genuine operator and one noise
matrix over random spaces and prints the full verdict table.
"""

import numpy as np

from matholab import (
    ModelOperator,
    ModelSpace,
    build_matho,
    build_matto,
    displacement_check,
    random_modifier,
    shift_invariance_check,
)
from matholab.sampling import random_inner, random_symbol

rng = np.random.default_rng(404)

theta1 = random_inner(rng, 2, n_factors=2, max_abs=0.6)
theta2 = random_inner(rng, 2, n_factors=2, max_abs=0.6)
s1 = ModelSpace.from_product(theta1, 64)
s2 = ModelSpace.from_product(theta2, 64)
phi = random_symbol(rng, 2)
m1 = random_modifier(s1, rng)
m2 = random_modifier(s2, rng)

print(f"spaces: dim_K = {s1.dim_K} and {s2.dim_K}\n")


def table(op, family):
    rows = []
    plain = ("T1", "T2", "T3", "T4") if family == "toeplitz" else ("H1", "H2", "H3", "H4")
    for kind in plain:
        rep = displacement_check(op, kind)
        rows.append((kind, rep.residual, rep.verdict))
    modified = ("MT",) if family == "toeplitz" else ("MH-a", "MH-b", "MH-c", "MH-d")
    for kind in modified:
        rep = displacement_check(op, kind, modifier1=m1, modifier2=m2)
        rows.append((kind, rep.residual, rep.verdict))
    for kind in "abcd":
        rep = shift_invariance_check(op, family, kind)
        rows.append((family + "-" + kind, rep.residual, rep.verdict))
    for kind, resid, verdict in rows:
        print(f"  {kind:<11} residual {resid:10.3e}  {verdict}")
    return {verdict for _, _, verdict in rows}


print("built Hankel operator:")
verdicts = table(build_matho(s1, s2, phi), "hankel")
print("  unanimous:", verdicts == {"accept"})

print("\nsame matrix checked as a Toeplitz candidate:")
verdicts = table(build_matho(s1, s2, phi), "toeplitz")
print("  unanimous:", len(verdicts) == 1)

noise = rng.standard_normal((s2.dim_K, s1.dim_K))
print("\nGaussian noise, Hankel checks:")
verdicts = table(ModelOperator(s1, s2, noise), "hankel")
print("  unanimous:", verdicts == {"reject"})

print("\nbuilt Toeplitz operator:")
verdicts = table(build_matto(s1, s2, phi), "toeplitz")
print("  unanimous:", verdicts == {"accept"})

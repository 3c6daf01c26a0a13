"""Reconstruct a vector from controlled coefficients.

With U and C positive and commuting with S_F, the controlled operator is
positive and both reconstruction formulas return f.
"""
import numpy as np

from ucframes.controlled import controlled_reconstruct, diagnose_controlled
from ucframes.generators import gen_random_system, rng_for

sys = gen_random_system(5, 8, seed=11, mode="commuting_positive")
d = diagnose_controlled(sys)
print(f"A_UC = {d.A_UC:.4f}, B_UC = {d.B_UC:.4f}, self-adjoint residual = {d.self_adjoint_residual:.1e}")

rng = rng_for(3)
f = rng.uniform(-1, 1, 5) + 1j * rng.uniform(-1, 1, 5)
r = controlled_reconstruct(sys, f)
print("residuals:", [f"{x:.1e}" for x in r.residuals])

# a general random pair of controllers usually breaks self-adjointness
g = diagnose_controlled(gen_random_system(5, 8, seed=11))
print("general controllers:", g.findings, f"residual {g.self_adjoint_residual:.2f}")

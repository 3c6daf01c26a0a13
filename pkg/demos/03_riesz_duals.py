"""Build f_k = U^-1 C^-1 M e_k, its two duals, and recover M."""
import numpy as np

from ucframes.generators import random_riesz_spec
from ucframes.riesz import (
    biorthogonality_defect,
    build_controlled_riesz,
    dual_type1,
    dual_type2,
    quadratic_form_bounds,
    riesz_diagnose,
)

spec = random_riesz_spec(4, seed=7)
f = build_controlled_riesz(spec)
g1, g2 = dual_type1(spec), dual_type2(spec)

x = np.array([1, -1j, 2, 0.5])
F, G1 = f.synthesis_matrix, g1.synthesis_matrix
print("type-1 residual:", np.linalg.norm(F @ (G1.conj().T @ x) - x))
print("biorthogonality defect:", biorthogonality_defect(f, g2, spec.U.matrix, spec.C.matrix))

sys = spec.system()
r = riesz_diagnose(sys)
print("controlled Riesz basis:", r.is_controlled_riesz)
print("max |recovered M - M|:", np.abs(r.recovered_M - spec.M.matrix).max())

b = quadratic_form_bounds(sys)
print(f"L = {b.L:.4f}, P = {b.P:.4f}, definite = {b.sign_definite}")

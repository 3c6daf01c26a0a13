"""A controlled system whose operator is -2I.

The vectors e-e', e+e' with C = diag(-1, 1) and U = diag(1, -1) give a
controlled Gram of norm 2 and |<S f, f>| = 2||f||^2, yet the form is
negative. The diagnostics report the magnitude bound and flag the sign.
"""
import numpy as np

from ucframes.controlled import controlled_frame_operator, controlled_gram, diagnose_controlled
from ucframes.frames import frame_operator
from ucframes.generators import gen_example24

sys = gen_example24(2)
print("vectors (rows):\n", sys.family.vectors.real)
print("S_UC:\n", controlled_frame_operator(sys).matrix.real)
print("S_F:\n", frame_operator(sys.family).matrix.real)
print("||G||_op =", controlled_gram(sys).op_norm)

d = diagnose_controlled(sys)
print("spectrum of S_UC:", d.spectrum)
print("magnitude tight:", d.magnitude_tight, " controlled frame:", d.is_controlled_frame)
print("findings:", d.findings)

f = np.array([1.0, 2.0, -1.0, 0.5j])
print("<S f, f> / ||f||^2 =", np.vdot(f, controlled_frame_operator(sys).matrix @ f).real / np.vdot(f, f).real)

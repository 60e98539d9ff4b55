# The coin algebra behind the honeycomb walk.
import numpy as np

from diracwalk import spin
from diracwalk.spin import SIGMA_X, SIGMA_Y, SIGMA_Z, dagger

np.set_printoptions(precision=4, suppress=True)

# three spin directions tau_i, tilted out of the plane by xi = sqrt5/3
taus = [spin.tau(i) for i in range(3)]
for i, t in enumerate(taus):
    print(f"tau_{i} bloch vector:", spin.bloch_vector(t))

# each tau_i is sigma_z in its own frame U_i
for i, t in enumerate(taus):
    u = spin.coin_U(i)
    print(f"|U_{i} tau_{i} U_{i}^dag - sz| =", np.max(np.abs(u @ t @ dagger(u) - SIGMA_Z)))

# the in-plane parts combine to sigma_x and sigma_y
angles = 2 * np.pi * np.arange(3) / 3
print("cos-weighted sum:\n", sum(np.cos(a) * t for a, t in zip(angles, taus)))
print("sin-weighted sum:\n", sum(np.sin(a) * t for a, t in zip(angles, taus)))
print("matches sx, sy:",
      np.allclose(sum(np.cos(a) * t for a, t in zip(angles, taus)), SIGMA_X),
      np.allclose(sum(np.sin(a) * t for a, t in zip(angles, taus)), SIGMA_Y))

# the z parts add up, which fixes the mass coupling
print("sum of taus:\n", sum(taus))
print("mass coupling 1/sqrt5 =", spin.MASS_COUPLING)

# frames are related by one fixed phase step S, and S^3 = 1
s = spin.step_phase_S()
print("S^3:\n", np.linalg.matrix_power(s, 3))

# the coin W = U_0 S U_0^dag M is unitary, and W^3 = 1 when m = 0
w0 = spin.coin_W(spin.WalkParams(0.1, 0.0))
print("W^3 at m=0:\n", np.linalg.matrix_power(w0, 3))

# are the two tau triples the only solutions? ask a multi-start solver
sols = spin.solve_tau_conditions(n_starts=1000, seed=0)
print(len(sols), "solutions; xi =", sols[:, 0, 2])

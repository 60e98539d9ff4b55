# Evolve a Gaussian packet with the honeycomb walk and watch it move.
import numpy as np

from diracwalk import DiracParams, PacketSpec, StepOperator, WalkParams, decode, dirac_evolve, encode, evolve
from diracwalk.analysis import make_packet, moments

eps, mass = 1 / 32, 0.5
n = 256  # 8 x 8 physical cell
k0 = (3.0, 1.5)
dp = DiracParams(mass, 1.0)

psi = make_packet("honeycomb", (n, n), eps, PacketSpec(k0, 32, "positive-energy"), dp)
op = StepOperator.build("honeycomb", WalkParams(eps, mass))

# the walk runs on encoded spinors U_0 psi
state = encode(psi)
print(f"{'t':>5} {'norm':>18} {'mean x':>8} {'mean y':>8} {'spread':>7}")
for block in range(5):
    mean, spread = moments(state)
    print(f"{block * 16 * eps:5.2f} {state.norm():18.15f} {mean[0]:8.4f} {mean[1]:8.4f} {spread:7.4f}")
    state = evolve(state, op, 16)

# group velocity of the continuum: c^2 k / omega
k = np.array(k0)
v = k / np.sqrt(k @ k + mass ** 2)
print("continuum group velocity:", v)

# compare against the exact Dirac evolution after t = 2.5
t = 80 * eps
ref = dirac_evolve(psi, t, dp)
out = decode(state)
print("l2 distance to Dirac reference at t =", t, ":", np.sqrt(np.sum(np.abs(out.data - ref.data) ** 2)))

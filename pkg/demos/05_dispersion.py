# Walk eigenphases against the Dirac cone.
import numpy as np

from diracwalk import WalkParams, walk_dispersion

eps, mass = 0.1, 1.0
k = np.stack([np.linspace(0, 3, 7), np.zeros(7)], axis=-1)

for walk in ("regular", "honeycomb", "triangular"):
    t = walk_dispersion(walk, WalkParams(eps, mass), k)
    omega = t.continuum()[0]
    print(walk)
    for kx, th, w in zip(k[:, 0], t.theta_plus, omega):
        print(f"  kx={kx:4.1f}  -theta/eps={-th / eps:8.5f}  omega={w:8.5f}")

# the honeycomb rest energy approaches m at first order in eps
for e in (1e-1, 1e-2, 1e-3):
    t = walk_dispersion("honeycomb", WalkParams(e, mass), [[0, 0]])
    print(f"eps={e:g}  theta_+/eps={t.theta_plus[0] / e:.6f}")

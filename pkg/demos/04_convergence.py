# First-order convergence of all three walks to the Dirac equation.
from diracwalk import PacketSpec, convergence_sweep

eps_list = [1 / 16, 1 / 32, 1 / 64]
spec = PacketSpec((1.0, 0.5), 8, "positive-energy")

for walk in ("regular", "honeycomb", "triangular"):
    for mass in (0.0, 1.0):
        r = convergence_sweep(walk, 1.0, mass, eps_list, spec)
        errs = "  ".join(f"{e:.3e}" for e in r.l2_error)
        print(f"{walk:10s} m={mass:g}  errors {errs}  order {r.fitted_order:.3f}")

# the triangular walk in its own units: c_eff = sqrt3/6, mass m/3, three steps per cycle
native = convergence_sweep("triangular", 1.0, 1.0, eps_list, spec, rescale_time=False)
print("triangular, native units: order", round(native.fitted_order, 3))

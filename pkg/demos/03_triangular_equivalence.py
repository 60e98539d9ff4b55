# The triangular walk only rotates triangles and applies W,
# yet three of its steps are one honeycomb step.
import numpy as np

from diracwalk import StepOperator, TriangularField, WalkParams, evolve
from diracwalk.lattice import embed_in_honeycomb, rotate_triangles
from diracwalk.walks import honeycomb_step

params = WalkParams(0.1, 1.0)
rng = np.random.default_rng(0)

tri = TriangularField.zeros(16, 16, params.eps)
tri.data[0] = rng.normal(size=(2, 16, 16)) + 1j * rng.normal(size=(2, 16, 16))
tri.data /= tri.norm()
print("midpoint hop:", tri.hop, "= (sqrt3/2) eps")

# rotation alone is a permutation of period three
r3 = rotate_triangles(rotate_triangles(rotate_triangles(tri)))
print("R^3 == identity:", np.array_equal(r3.data, tri.data))

# after three steps the data is back on side 0 ...
out = evolve(tri, StepOperator.build("triangular", params), 3)
print("weight left on sides 1, 2:", np.sum(np.abs(out.data[1:]) ** 2))

# ... and equals one honeycomb step on the hexagon-centre lattice
hc = embed_in_honeycomb(tri)
hc1 = honeycomb_step(hc, StepOperator.build("honeycomb", params))
print("max deviation:", np.max(np.abs(embed_in_honeycomb(out).data - hc1.data)))

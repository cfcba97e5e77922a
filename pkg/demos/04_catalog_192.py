"""The 192 local solutions, generated by the symmetry group.

Three free signs times twenty-four transformations; eight sets of
twenty-four formally distinct but proportional expressions, one set per
(singular point, exponent branch).  Each instantiated composite is checked
against the original equation by a finite-difference residual.
"""

from collections import Counter

import numpy as np

from darboux import ParamTuple, classify, enumerate_192, instantiate, polynomial_eigenvalues
from darboux.catalog import sample_points
from darboux.verify import ode_residual

k = 0.6
h = complex(polynomial_eigenvalues(ParamTuple(0, 0, 0, 3, h=0, k=k), 0)[0])
p = ParamTuple(0, 0, 0, 3, h=h, k=k)
print(f"equation: exponents (0,0,0,3), h = {h.real} (a polynomial eigenvalue), k = {k}")

ids = enumerate_192()
print(f"\ncatalog size: {len(ids)}")
groups = Counter(
    (classify(s).singular_point, classify(s).exponent_branch) for s in ids
)
print("the eight sets (singular point, branch) -> members:")
for g, n in sorted(groups.items()):
    print(f"  {g}: {n}")

print("\ninstantiate one member per anharmonic type and measure the residual")
print("of the composite against the ORIGINAL equation:")
rng = np.random.default_rng(0)
for r in range(0, 24, 4):
    sid = ids[8 * r + int(rng.integers(0, 8))]
    fn, desc = instantiate(sid, p)
    pts = sample_points(sid, p)
    rep = ode_residual(fn, p, pts)
    print(f"  {sid.label:10s} kappa = {desc.kappa:.4f}  "
          f"residual = {rep.max_relative_residual:.2e} over {len(pts)} points")

print("\ntwo members of one set are proportional (same local solution):")
import cmath

from darboux.catalog import SolutionId
from darboux.symmetry import gii_by_name

sa = SolutionId(1, 1, 1, gii_by_name("I3"))
sb = SolutionId(1, 1, 1, gii_by_name("C3"))
from darboux.elliptic import complete_elliptic

K_, Kp_ = complete_elliptic(k)
us = [1j * Kp_ + t * cmath.exp(0.4j) for t in (0.2, 0.31)]
fa, _ = instantiate(sa, p)
fb, _ = instantiate(sb, p)
for u in us:
    print(f"  u = {u:.4f}:  I3[+++]/C3[+++] = {fa(u) / fb(u):.12f}")

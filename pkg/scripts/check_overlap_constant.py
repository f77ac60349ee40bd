"""Check P(U[0.25, 1] > U[0, 0.75]) = 7/9 by quadrature and by Monte Carlo."""

import numpy as np
from scipy import integrate

quad, err = integrate.dblquad(lambda neg, pos: 1 / 0.75**2, 0.25, 1.0, 0.0, lambda pos: min(pos, 0.75))
rng = np.random.default_rng(0)
n = 10**7
hits = np.mean(rng.uniform(0.25, 1.0, n) > rng.uniform(0.0, 0.75, n))
se = np.sqrt(hits * (1 - hits) / n)
print(f"7/9        = {7 / 9:.10f}")
print(f"quadrature = {quad:.10f} (est. err {err:.1e})")
print(f"monte carlo= {hits:.6f} ± {se:.6f} (n={n:.0e})")

#!/usr/bin/env python3
"""
03_mean_dynamics.py

Vacuum-averaged Bloch-vector dynamics from the QSDE drift.

In the vacuum state the noise terms average out and r = <x> obeys

    dr/dt = F0 + F r.

The same trajectory follows from the Lindblad master equation for the 2x2
density matrix rho = (I + r . sigma)/2. Both are integrated with the same
RK4 step and compared.

Cases:
  - pure dephasing, lam = (0, 0, i): the x component decays as exp(-2t);
  - Hermitian coupling lam = (1, 0, 0) with a z field: F0 vanishes and the
    components transverse to x shrink towards the x axis;
  - closed system, lam = 0: precession about alpha with |r| conserved.
"""

import numpy as np

from spinqsde import PhysicalParams, realize
from spinqsde.model import master_mean_oracle, simulate_mean, trajectory_arrays

np.set_printoptions(precision=6, suppress=True)

cases = {
    "dephasing": (PhysicalParams([0, 0, 0], [0, 0, 1j]), [1, 0, 0]),
    "x-coupled": (PhysicalParams([0, 0, 0.5], [1, 0, 0]), [0, 0, 1]),
    "closed": (PhysicalParams([0.3, 0.0, 1.0], [0, 0, 0]), [0.6, 0, 0.8]),
}
for name, (p, r0) in cases.items():
    q = realize(p)
    t, r = trajectory_arrays(simulate_mean(q, r0, T=2.0, dt=1e-3))
    _, m = trajectory_arrays(master_mean_oracle(p, r0, T=2.0, dt=1e-3))
    print(f"{name:10s} r(2) = {r[-1]}  |r(2)| = {np.linalg.norm(r[-1]):.6f}  "
          f"max dev from master eq. = {np.max(np.abs(r - m)):.1e}")

print("\nexp(-4) =", np.exp(-4))

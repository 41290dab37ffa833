#!/usr/bin/env python3
"""
01_realizability_round_trip.py

Build the bilinear QSDE of a driven, damped qubit and read its physics back.

The qubit has Hamiltonian H = alpha . sigma and one field coupling
L = lam . sigma. `realize` returns the six real coefficient arrays
(F0, F, G1, G2, H1, H2) of

    dx  = (F0 + F x) dt + G1 x dW1 + G2 x dW2
    dy  = H1 x dt + dW1,  dy2 = H2 x dt + dW2

for x = (sigma1, sigma2, sigma3). The realizability checker then looks at the
arrays alone and decides whether some (alpha, lam) could have produced them.

Then two corrupted systems are checked:
  - a symmetric perturbation of G1, which breaks antisymmetry;
  - a shifted F0, which only breaks the constant-drift condition.
"""

import numpy as np

from spinqsde import PhysicalParams, realize
from spinqsde.realizability import (check_ccr_preservation, check_physical_realizability,
                                    extract_parameters)

np.set_printoptions(precision=4, suppress=True)

params = PhysicalParams(alpha=[0.5, -1.25, 2.0], lam=[0.3 + 0.4j, -0.7j, 0.125])
q = realize(params)
print("F0 =", q.F0)
print("F  =\n", q.F)

report = check_physical_realizability(q)
print("\nrealizable:", report.verdict)
for name, r in report.residuals.items():
    print(f"  {name:7s} {r:.2e}")

back = extract_parameters(q)
print("\nrecovered alpha:", back.alpha)
print("recovered lam:  ", back.lam)
print("matches input:  ", back.allclose(params))

# corruptions
S = np.array([[1.0, 0.5, 0.0], [0.5, 0.0, 0.2], [0.0, 0.2, -1.0]])
for label, bad in [("G1 + symmetric", q.replace(G1=q.G1 + 0.1 * S)),
                   ("F0 shifted", q.replace(F0=q.F0 + [0.1, 0, 0]))]:
    pr = check_physical_realizability(bad)
    ccr = check_ccr_preservation(bad)
    print(f"\n{label}: realizable={pr.verdict} failing={pr.failing}")
    print(f"  commutation preserved={ccr.verdict} failing={ccr.failing}")

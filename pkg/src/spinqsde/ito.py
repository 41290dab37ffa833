"""Quantum Ito calculus on Pauli-valued increments.

This module verifies commutation-relation preservation from first
principles: it forms ``d[x, x^T] - 2i theta(dx)`` with the quantum Ito
product rule and exact Pauli products, and never consults the reduced matrix
conditions in :mod:`spinqsde.realizability` (the comparison happens only in
:func:`oracle_equivalence`).
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_TOL, theta
from .errors import DomainError
from .model import QUADRATURE_ITO_TABLE, realize
from .pauli import PauliOperator, SIGMA, linear_operator, system_variables

__all__ = [
    "ItoIncrement", "ito_product", "qsde_increment", "ccr_residual_parts",
    "ccr_residual", "EquivalenceReport", "oracle_equivalence",
]

_ZERO = PauliOperator()
# dWi dWj = table[i][j] dt
_TABLE = [[complex(z) for z in row] for row in QUADRATURE_ITO_TABLE]


@dataclass(frozen=True)
class ItoIncrement:
    """``dt_part*dt + dW1_part*dW1 + dW2_part*dW2`` with operator coefficients.

    Multiplication by a :class:`PauliOperator` keeps the side it is applied
    on; noise increments commute with system operators at the same time.
    """

    dt_part: PauliOperator = _ZERO
    dW1_part: PauliOperator = _ZERO
    dW2_part: PauliOperator = _ZERO

    @property
    def parts(self):
        return (self.dt_part, self.dW1_part, self.dW2_part)

    def _map(self, f):
        return ItoIncrement(*(f(p) for p in self.parts))

    def __add__(self, other):
        if isinstance(other, ItoIncrement):
            return ItoIncrement(*(a + b for a, b in zip(self.parts, other.parts)))
        if other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self._map(lambda p: -p)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ItoIncrement):
            return ito_product(self, other)
        if isinstance(other, PauliOperator):
            return self._map(lambda p: p * other)
        return self._map(lambda p: p * other)

    def __rmul__(self, other):
        if isinstance(other, PauliOperator):
            return self._map(lambda p: other * p)
        return self._map(lambda p: other * p)

    def norm_inf(self):
        return max(p.norm_inf() for p in self.parts)


def ito_product(a, b):
    """Product of two increments, truncated at first order in ``dt``.

    Only noise-noise terms survive: ``dW1 dW1 = dW2 dW2 = dt``,
    ``dW1 dW2 = i dt``, ``dW2 dW1 = -i dt``. Operator coefficients are
    multiplied in the order given.
    """
    noise_a = (a.dW1_part, a.dW2_part)
    noise_b = (b.dW1_part, b.dW2_part)
    dt = _ZERO
    for i in range(2):
        for j in range(2):
            dt = dt + _TABLE[i][j] * (noise_a[i] * noise_b[j])
    return ItoIncrement(dt, _ZERO, _ZERO)


def _row_operator(row, constant=0.0):
    return linear_operator([float(v) for v in row], float(constant))


def qsde_increment(qsde):
    """Increments ``dx_i`` of the system variables at ``x = (s1, s2, s3)``."""
    dx = np.empty(3, dtype=object)
    for i in range(3):
        dx[i] = ItoIncrement(_row_operator(qsde.F[i], qsde.F0[i]),
                             _row_operator(qsde.G1[i]),
                             _row_operator(qsde.G2[i]))
    return dx


def ccr_residual_parts(qsde):
    """Largest coefficient of ``d[x, x^T] - 2i theta(dx)``, split by term.

    Keys: ``"dt-identity"`` (the ``s0`` coefficient of the ``dt`` part),
    ``"dt-linear"`` (its ``s1..s3`` coefficients), ``"dW1"`` and ``"dW2"``.
    """
    x = system_variables()
    dx = qsde_increment(qsde)
    dxx = np.empty((3, 3), dtype=object)
    for i in range(3):
        for j in range(3):
            dxx[i, j] = dx[i] * x[j] + x[i] * dx[j] + ito_product(dx[i], dx[j])
    tdx = theta(dx)
    parts = {"dt-identity": 0.0, "dt-linear": 0.0, "dW1": 0.0, "dW2": 0.0}
    for i in range(3):
        for j in range(3):
            r = dxx[i, j] - dxx[j, i] - 2j * tdx[i, j]
            parts["dt-identity"] = max(parts["dt-identity"], abs(complex(r.dt_part.c0)))
            parts["dt-linear"] = max(parts["dt-linear"],
                                     max(abs(complex(c)) for c in r.dt_part.vector))
            parts["dW1"] = max(parts["dW1"], r.dW1_part.norm_inf())
            parts["dW2"] = max(parts["dW2"], r.dW2_part.norm_inf())
    return parts


def ccr_residual(qsde):
    """Max-norm of ``d[x, x^T] - 2i theta(dx)`` over entries, parts and coefficients."""
    return max(ccr_residual_parts(qsde).values())


@dataclass
class EquivalenceReport:
    trials: int
    tolerance: float
    realizable_checked: int = 0
    arbitrary_checked: int = 0
    disagreements: list = field(default_factory=list)
    realizable_failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.disagreements and not self.realizable_failures


def _compare(qsde, tol):
    from .realizability import check_ccr_preservation

    res = ccr_residual(qsde)
    return res, (res <= tol), check_ccr_preservation(qsde, tol).verdict


def oracle_equivalence(seed=0, trials=200, tol=DEFAULT_TOL):
    """Compare the Ito oracle with the matrix conditions on random systems.

    Each trial uses its own child seed, so results do not depend on trial
    order. Per trial one realizable system (from random parameters) and one
    arbitrary random system are tested; the two procedures must reach the
    same verdict, and realizable systems must pass.
    """
    from .realizability import random_params, random_qsde

    if trials < 1:
        raise DomainError("trials must be >= 1")
    report = EquivalenceReport(trials, tol)
    for n, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        rng = np.random.default_rng(child)
        for kind, q in (("realizable", realize(random_params(rng))),
                        ("arbitrary", random_qsde(rng))):
            res, oracle_ok, checker_ok = _compare(q, tol)
            if kind == "realizable":
                report.realizable_checked += 1
                if not oracle_ok:
                    report.realizable_failures.append((n, res))
            else:
                report.arbitrary_checked += 1
            if oracle_ok != checker_ok:
                report.disagreements.append((n, kind, res, checker_ok))
    return report

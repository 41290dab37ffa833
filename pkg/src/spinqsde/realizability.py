"""Physical-realizability and commutation-preservation checks.

Residuals are Frobenius norms and verdicts compare them against an absolute
tolerance. Nothing here attempts to repair a near-realizable system.
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_TOL, E, theta, vec
from .errors import DomainError
from .model import BilinearQSDE, PhysicalParams, realize

__all__ = [
    "RealizabilityReport", "CCRReport", "check_physical_realizability",
    "extract_parameters", "check_ccr_preservation", "HarnessReport",
    "theorem3_check", "theorem3_harness", "random_params", "random_qsde",
]

REALIZABILITY_CONDITIONS = ("T1-i", "T1-ii", "T1-iii", "T1-iv")
CCR_CONDITIONS = ("antisym-G1", "antisym-G2", "F0-coupling", "drift-balance")


@dataclass(frozen=True)
class RealizabilityReport:
    verdict: bool
    residuals: dict
    extracted: PhysicalParams | None
    tolerance: float

    @property
    def failing(self):
        return [k for k, v in self.residuals.items() if not v <= self.tolerance]


@dataclass(frozen=True)
class CCRReport:
    verdict: bool
    residuals: dict
    tolerance: float

    @property
    def failing(self):
        return [k for k, v in self.residuals.items() if not v <= self.tolerance]


def _fro(X):
    return float(np.linalg.norm(X))


def _drift_balance(q):
    return q.F + q.F.T + q.G1 @ q.G1.T + q.G2 @ q.G2.T


def output_drift_coupling(q):
    """``(G1 - i G2)(H1 + i H2)^T / 2``, the constant drift implied by G and H.

    For a realizable system this equals ``F0`` (see the notes in
    :func:`check_physical_realizability`).
    """
    return 0.5 * (q.G1 - 1j * q.G2) @ (q.H1 + 1j * q.H2)


def check_physical_realizability(qsde, tol=DEFAULT_TOL):
    """Decide whether ``qsde`` is generated by some ``(alpha, lam)``.

    Four residuals are evaluated independently and the verdict is their
    conjunction:

    ``T1-i``
        ``F0 - (G1 - i G2)(H1 + i H2)^T / 2`` in complex arithmetic, so a
        nonzero imaginary part also counts as a violation. The product uses
        a plain transpose; with the conjugate transpose the right-hand side
        vanishes identically on realizable systems.
    ``T1-ii``
        ``G1 - theta(H2)``
    ``T1-iii``
        ``G2 + theta(H1)``
    ``T1-iv``
        ``F + F^T + G1 G1^T + G2 G2^T``

    When every residual is within ``tol`` the report carries the extracted
    parameters.
    """
    q = qsde
    residuals = {
        "T1-i": _fro(q.F0 - output_drift_coupling(q)),
        "T1-ii": _fro(q.G1 - theta(q.H2)),
        "T1-iii": _fro(q.G2 + theta(q.H1)),
        "T1-iv": _fro(_drift_balance(q)),
    }
    verdict = all(v <= tol for v in residuals.values())
    extracted = extract_parameters(q) if verdict else None
    return RealizabilityReport(verdict, residuals, extracted, tol)


def extract_parameters(qsde):
    """Hamiltonian and coupling coefficients of a realizable ``qsde``.

    ``alpha = vec(F^T - F)^T E / 8`` and ``lam = (H1 + i H2)/2``. The
    antisymmetric part of ``F`` is ``-2 theta(alpha)``, hence the order
    ``F^T - F``. No realizability check is made here.
    """
    alpha = vec(qsde.F.T - qsde.F) @ E / 8
    lam = 0.5 * (qsde.H1 + 1j * qsde.H2)
    return PhysicalParams(alpha, lam)


def check_ccr_preservation(qsde, tol=DEFAULT_TOL):
    """Matrix conditions for preserving the Pauli commutation relations.

    ``antisym-G1``, ``antisym-G2``: ``G_i + G_i^T``;
    ``F0-coupling``: ``G1 G2^T - G2 G1^T - theta(F0)``;
    ``drift-balance``: ``F + F^T + G1 G1^T + G2 G2^T``.
    """
    q = qsde
    residuals = {
        "antisym-G1": _fro(q.G1 + q.G1.T),
        "antisym-G2": _fro(q.G2 + q.G2.T),
        "F0-coupling": _fro(q.G1 @ q.G2.T - q.G2 @ q.G1.T - theta(q.F0)),
        "drift-balance": _fro(_drift_balance(q)),
    }
    return CCRReport(all(v <= tol for v in residuals.values()), residuals, tol)


def random_params(rng, alpha_range=2.0, lam_radius=1.0):
    """``alpha`` uniform in a cube, each ``lam_i`` uniform in a disk."""
    alpha = rng.uniform(-alpha_range, alpha_range, 3)
    radius = lam_radius * np.sqrt(rng.uniform(0, 1, 3))
    phase = rng.uniform(0, 2 * np.pi, 3)
    return PhysicalParams(alpha, radius * np.exp(1j * phase))


def random_qsde(rng, scale=1.0):
    """A QSDE with independent standard-normal entries (generically not physical)."""
    g = lambda *shape: scale * rng.standard_normal(shape)
    return BilinearQSDE(g(3), g(3, 3), g(3, 3), g(3, 3), g(3), g(3))


@dataclass
class HarnessReport:
    trials: int
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.passed == self.trials and not self.failures


def theorem3_check(params, tol=DEFAULT_TOL):
    """Failure messages for one realizable instance (empty list means pass)."""
    q = realize(params)
    out = []
    pr = check_physical_realizability(q, tol)
    ccr = check_ccr_preservation(q, tol)
    if not pr.verdict:
        out.append(f"realized system fails {pr.failing}")
    if not ccr.verdict:
        out.append(f"realizable system violates commutation conditions {ccr.failing}")
    if pr.residuals["T1-iv"] != ccr.residuals["drift-balance"]:
        out.append("T1-iv and drift-balance residuals differ")
    return out


def theorem3_harness(seed=0, trials=500, tol=DEFAULT_TOL):
    """Randomized check that realizability implies commutation preservation.

    Each trial draws random parameters, realizes them and requires both
    checkers to pass. It also draws an arbitrary random QSDE and requires
    that failing the ``T1-iv`` condition coincides with failing
    ``drift-balance``.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    report = HarnessReport(trials)
    for n in range(trials):
        fails = theorem3_check(random_params(rng), tol)
        q = random_qsde(rng)
        t1 = check_physical_realizability(q, tol).residuals["T1-iv"] > tol
        t2 = check_ccr_preservation(q, tol).residuals["drift-balance"] > tol
        if t1 != t2:
            fails.append("T1-iv and drift-balance verdicts disagree on a random system")
        if fails:
            report.failures.append((n, fails))
        else:
            report.passed += 1
    return report

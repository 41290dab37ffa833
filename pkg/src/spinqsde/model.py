"""Bilinear QSDE data model, the forward realization map and mean dynamics.

A qubit coupled to one boson field with Hamiltonian ``H = alpha x`` and
coupling ``L = lam x`` (``x = (s1, s2, s3)``) evolves, in quadrature form, as

    dx  = F0 dt + F x dt + G1 x dW1 + G2 x dW2
    dY1 = H1 x dt + dW1,   dY2 = H2 x dt + dW2

with all six coefficient arrays real.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import theta
from .errors import DomainError, ImaginaryResidueError, StepSizeError
from .pauli import SIGMA_MATRICES

__all__ = [
    "PhysicalParams", "BilinearQSDE", "BlochState", "realize",
    "QUADRATURE", "quadrature_input", "quadrature_output",
    "quadrature_input_inverse", "quadrature_output_inverse",
    "ANNIHILATION_ITO_TABLE", "quadrature_ito_table", "QUADRATURE_ITO_TABLE",
    "simulate_mean", "master_mean_oracle", "trajectory_arrays",
    "density_matrix",
]

IMAG_TOL = 1e-12


def _finite(name, arr):
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} has non-finite entries")
    return arr


def _vec3(name, v, dtype):
    arr = np.asarray(v, dtype=dtype)
    if arr.size != 3:
        raise DomainError(f"{name}: expected 3 entries, got shape {arr.shape}")
    return _finite(name, arr.reshape(3))


@dataclass(frozen=True, eq=False)
class PhysicalParams:
    """Hamiltonian coefficients ``alpha`` (real) and coupling ``lam`` (complex)."""

    alpha: np.ndarray
    lam: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alpha)
        if np.iscomplexobj(a):
            if np.any(a.imag != 0):
                raise DomainError("alpha must be real (self-adjoint Hamiltonian)")
            a = a.real
        object.__setattr__(self, "alpha", _vec3("alpha", a, float))
        object.__setattr__(self, "lam", _vec3("lambda", self.lam, complex))

    def allclose(self, other, atol=1e-10):
        return (np.allclose(self.alpha, other.alpha, rtol=0, atol=atol)
                and np.allclose(self.lam, other.lam, rtol=0, atol=atol))


@dataclass(frozen=True, eq=False)
class BilinearQSDE:
    """Coefficient arrays of a bilinear QSDE in quadrature form.

    ``F0, H1, H2`` are 3-vectors, ``F, G1, G2`` are 3x3; all real.
    """

    F0: np.ndarray
    F: np.ndarray
    G1: np.ndarray
    G2: np.ndarray
    H1: np.ndarray
    H2: np.ndarray

    FIELDS = ("F0", "F", "G1", "G2", "H1", "H2")

    def __post_init__(self):
        for name in self.FIELDS:
            arr = np.asarray(getattr(self, name))
            if np.iscomplexobj(arr):
                raise DomainError(f"{name} must be real")
            arr = np.array(arr, dtype=float)
            if name in ("F0", "H1", "H2"):
                if arr.size != 3:
                    raise DomainError(
                        f"{name}: expected 3 entries, got shape {arr.shape}")
                arr = arr.reshape(3)
            elif arr.shape != (3, 3):
                raise DomainError(f"{name}: expected shape (3, 3), got {arr.shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, _finite(name, arr))

    @classmethod
    def zeros(cls):
        z3, z33 = np.zeros(3), np.zeros((3, 3))
        return cls(z3, z33, z33, z33, z3, z3)

    def replace(self, **changes):
        kw = {name: getattr(self, name) for name in self.FIELDS}
        kw.update(changes)
        return BilinearQSDE(**kw)


@dataclass(frozen=True)
class BlochState:
    """Mean values ``r = (<x1>, <x2>, <x3>)`` at time ``t``."""

    t: float
    r: np.ndarray


def _real(name, z, tol=IMAG_TOL):
    z = np.asarray(z)
    resid = float(np.max(np.abs(z.imag))) if z.size else 0.0
    if resid > tol:
        raise ImaginaryResidueError(name, resid)
    return np.real(z).astype(float)


def realize(params):
    """Coefficient matrices of the QSDE generated by ``(alpha, lam)``.

    Examples
    --------
    >>> q = realize(PhysicalParams([0, 0, 0], [0, 0, 1j]))
    >>> np.diag(q.F)
    array([-2., -2.,  0.])
    """
    alpha, lam = params.alpha, params.lam
    lam_c = lam.conj()
    norm2 = np.vdot(lam, lam).real
    F0 = -2j * theta(lam) @ lam_c
    F = (-2 * theta(alpha) + np.outer(lam_c, lam) + np.outer(lam, lam_c)
         - 2 * norm2 * np.eye(3))
    G1 = theta(1j * (lam_c - lam))
    G2 = -theta(lam + lam_c)
    H1 = lam + lam_c
    H2 = 1j * (lam_c - lam)
    return BilinearQSDE(
        F0=_real("F0", F0), F=_real("F", F), G1=_real("G1", G1),
        G2=_real("G2", G2), H1=_real("H1", H1), H2=_real("H2", H2))


# (W, W^+) -> (W1, W2); the same matrix maps outputs (Y, Y^+) -> (Y1, Y2)
QUADRATURE = np.array([[1, 1], [-1j, 1j]])
_QUADRATURE_INV = np.array([[0.5, 0.5j], [0.5, -0.5j]])

# dW dW^T for the pair (dW, dW^+), in units of dt
ANNIHILATION_ITO_TABLE = np.array([[0, 1], [0, 0]], dtype=complex)


def quadrature_input(pair):
    """Map ``(W, W^+)`` to the self-adjoint quadratures ``(W1, W2)``."""
    return QUADRATURE @ np.asarray(pair)


def quadrature_input_inverse(pair):
    """``W = (W1 + i W2)/2``, ``W^+ = (W1 - i W2)/2``."""
    return _QUADRATURE_INV @ np.asarray(pair)


quadrature_output = quadrature_input
quadrature_output_inverse = quadrature_input_inverse


def quadrature_ito_table(table=ANNIHILATION_ITO_TABLE):
    """Transport an Ito product table to quadrature increments.

    ``dWq dWq^T = Q (dW dW^T) Q^T`` with ``Q`` the quadrature matrix; the
    transpose is not conjugated because the table is a formal outer product
    of increments.
    """
    return QUADRATURE @ np.asarray(table) @ QUADRATURE.T


QUADRATURE_ITO_TABLE = quadrature_ito_table()


def _check_steps(T, dt):
    if not (np.isfinite(T) and np.isfinite(dt)):
        raise StepSizeError("T and dt must be finite")
    if T <= 0:
        raise StepSizeError(f"horizon T must be positive, got {T}")
    if dt <= 0 or dt > T:
        raise StepSizeError(f"step dt must satisfy 0 < dt <= T, got dt={dt}, T={T}")


def _step_times(T, dt):
    n = int(np.floor(T / dt + 1e-9))
    times = dt * np.arange(n + 1)
    if T - times[-1] > 1e-12 * T:
        times = np.append(times, T)
    else:
        times[-1] = T
    return times


def _rk4(f, y0, times):
    ys = [y0]
    y = y0
    for t0, t1 in zip(times[:-1], times[1:]):
        h = t1 - t0
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        ys.append(y)
    return ys


def simulate_mean(qsde, r0, T, dt):
    """Vacuum mean dynamics ``dr/dt = F0 + F r`` by fixed-step RK4.

    Noise terms have zero mean in the vacuum field state, so only the drift
    survives. Samples are returned at every step, including ``t = 0`` and
    ``t = T`` (the final step is shortened if ``T`` is not a multiple of
    ``dt``).
    """
    _check_steps(T, dt)
    r0 = _vec3("r0", r0, float)
    F0, F = qsde.F0, qsde.F
    times = _step_times(T, dt)
    rs = _rk4(lambda r: F0 + F @ r, r0, times)
    return [BlochState(float(t), r) for t, r in zip(times, rs)]


def density_matrix(r, tol=1e-9):
    """Qubit state ``(I + r . sigma)/2``; rejects ``|r| > 1 + tol``."""
    r = _vec3("r0", r, float)
    rho = 0.5 * (SIGMA_MATRICES[0] + np.tensordot(r, SIGMA_MATRICES[1:], axes=1))
    if abs(np.trace(rho) - 1) > tol or np.min(np.linalg.eigvalsh(rho)) < -tol:
        raise DomainError(f"r0={r.tolist()} is not a valid Bloch vector")
    return rho


def master_mean_oracle(params, r0, T, dt):
    """Bloch trajectory from the Lindblad master equation for ``rho``.

    Integrates ``drho/dt = -i[H, rho] + L rho L^+ - (L^+L rho + rho L^+L)/2``
    on 2x2 matrices with the same RK4 steps as :func:`simulate_mean` and
    returns ``r_i(t) = Tr(rho(t) s_i)``.
    """
    _check_steps(T, dt)
    rho0 = density_matrix(r0)
    H = np.tensordot(params.alpha, SIGMA_MATRICES[1:], axes=1)
    L = np.tensordot(params.lam, SIGMA_MATRICES[1:], axes=1)
    Ld = L.conj().T
    LdL = Ld @ L

    def generator(rho):
        return (-1j * (H @ rho - rho @ H) + L @ rho @ Ld
                - 0.5 * (LdL @ rho + rho @ LdL))

    times = _step_times(T, dt)
    rhos = _rk4(generator, rho0, times)
    return [BlochState(float(t), np.real(np.einsum("ij,kji->k", rho, SIGMA_MATRICES[1:])))
            for t, rho in zip(times, rhos)]


def trajectory_arrays(states):
    """Stack a list of :class:`BlochState` into ``(t, r)`` arrays."""
    return (np.array([s.t for s in states]),
            np.array([s.r for s in states]).reshape(-1, 3))

"""Symbolic algebra of single-qubit operators in the Pauli basis.

An operator is stored by its *unweighted* coefficients,

    A = c0*s0 + c1*s1 + c2*s2 + c3*s3,

so ``c_i = Tr(A s_i) / 2``. (The half-weighted expansion with
``a_i = Tr(A s_i)`` is related by ``a_i = 2 c_i``.)

Products are evaluated with the structure constants
``s_i s_j = delta_ij s0 + i eps_ijk s_k`` rather than by multiplying 2x2
matrices, which keeps this module an independent check on matrix code.
Coefficients may be Python/numpy numbers or sympy expressions; with
Gaussian-integer or sympy-rational input every result is exact.
"""

from dataclasses import dataclass
import numbers

import numpy as np

from .algebra import theta

__all__ = [
    "PauliOperator", "pauli_product", "commutator", "to_matrix", "from_matrix",
    "SIGMA", "SIGMA_MATRICES", "system_variables", "linear_operator",
    "pauli_outer_relations_check", "lindblad_coefficient_check",
]

SIGMA_MATRICES = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


def _imag_unit(coeffs):
    for z in coeffs:
        if not isinstance(z, numbers.Number):
            import sympy
            return sympy.I
    return 1j


@dataclass(frozen=True)
class PauliOperator:
    """Operator ``c0*s0 + c1*s1 + c2*s2 + c3*s3`` on a single qubit."""

    c0: object = 0
    c1: object = 0
    c2: object = 0
    c3: object = 0

    @classmethod
    def basis(cls, k):
        """The k-th Pauli matrix (k = 0 is the identity)."""
        c = [0, 0, 0, 0]
        c[k] = 1
        return cls(*c)

    @property
    def coeffs(self):
        return (self.c0, self.c1, self.c2, self.c3)

    @property
    def vector(self):
        return (self.c1, self.c2, self.c3)

    def __add__(self, other):
        if not isinstance(other, PauliOperator):
            if isinstance(other, numbers.Number) or _is_scalar(other):
                other = PauliOperator(other)
            else:
                return NotImplemented
        return PauliOperator(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return PauliOperator(*(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PauliOperator):
            return pauli_product(self, other)
        if isinstance(other, numbers.Number) or _is_scalar(other):
            return PauliOperator(*(a * other for a in self.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number) or _is_scalar(other):
            return PauliOperator(*(other * a for a in self.coeffs))
        return NotImplemented

    def adjoint(self):
        return PauliOperator(*(_conj(a) for a in self.coeffs))

    def norm_inf(self):
        """Largest coefficient magnitude."""
        return max(abs(complex(a)) for a in self.coeffs)

    def is_zero(self):
        return all(a == 0 for a in self.coeffs)

    def __repr__(self):
        terms = [f"({c})*s{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) if terms else "0"


def _is_scalar(x):
    return getattr(x, "is_commutative", False) or np.isscalar(x)


def _conj(z):
    return z.conjugate() if hasattr(z, "conjugate") else z


def pauli_product(a, b):
    """Operator product ``a b`` from the Pauli structure constants.

    >>> s1, s2 = PauliOperator.basis(1), PauliOperator.basis(2)
    >>> pauli_product(s1, s2) == PauliOperator(0, 0, 0, 1j)
    True
    """
    a0, a1, a2, a3 = a.coeffs
    b0, b1, b2, b3 = b.coeffs
    i = _imag_unit(a.coeffs + b.coeffs)
    return PauliOperator(
        a0 * b0 + a1 * b1 + a2 * b2 + a3 * b3,
        a0 * b1 + a1 * b0 + i * (a2 * b3 - a3 * b2),
        a0 * b2 + a2 * b0 + i * (a3 * b1 - a1 * b3),
        a0 * b3 + a3 * b0 + i * (a1 * b2 - a2 * b1),
    )


def commutator(a, b):
    """``a b - b a``."""
    return pauli_product(a, b) - pauli_product(b, a)


def to_matrix(a):
    """2x2 matrix of a Pauli-basis operator."""
    return sum(c * SIGMA_MATRICES[k] for k, c in enumerate(a.coeffs))


def from_matrix(M):
    """Pauli coefficients of a 2x2 matrix, ``c_k = Tr(M s_k) / 2``."""
    M = np.asarray(M)
    if M.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {M.shape}")
    return PauliOperator(*(np.trace(M @ SIGMA_MATRICES[k]) / 2 for k in range(4)))


SIGMA = tuple(PauliOperator.basis(k) for k in range(4))


def system_variables():
    """Object array ``x = (s1, s2, s3)`` of the initial system variables."""
    x = np.empty(3, dtype=object)
    x[:] = SIGMA[1:]
    return x


def linear_operator(coeffs, constant=0):
    """The operator ``constant*s0 + sum_j coeffs[j] * x_j``."""
    c = list(np.asarray(coeffs).reshape(3))
    return PauliOperator(constant, *c)


def _operator_rows(constant, M):
    """Vector of operators ``constant[i]*s0 + sum_j M[i, j] x_j``."""
    return [linear_operator(M[i], constant[i]) for i in range(3)]


def _max_residual(lhs, rhs):
    return max((l - r).norm_inf() for l, r in zip(np.ravel(lhs), np.ravel(rhs)))


def pauli_outer_relations_check():
    """Check ``x x^T = I + i theta(x)`` and ``[x, x^T] = 2i theta(x)``.

    Both sides are built entrywise from operator products, so the check is
    exact. Returns the largest coefficient residual over the two 3x3
    operator matrices.
    """
    x = system_variables()
    tx = theta(x)
    worst = 0
    for i in range(3):
        for j in range(3):
            outer = pauli_product(x[i], x[j])
            comm = commutator(x[i], x[j])
            worst = max(worst,
                        (outer - (int(i == j) * SIGMA[0] + 1j * tx[i, j])).norm_inf(),
                        (comm - 2j * tx[i, j]).norm_inf())
    return worst


def lindblad_coefficient_check(alpha, lam):
    """Compare operator-algebra commutators with their Theta closed forms.

    With ``H = alpha x`` and ``L = lam x`` the five relations checked are::

        [x, H]      = -2i theta(alpha) x
        [x, L]      = -2i theta(lam) x
        [x, L^+]    = -2i theta(lam^#) x
        L^+ [x, L]  = -2i theta(lam) lam^+ - 2 (lam lam^+ I - lam^+ lam) x
        [x, L^+] L  =  2i theta(lam) lam^+ + 2 (lam lam^+ I - lam^T lam^#) x

    Returns a dict of the largest coefficient residual for each relation.
    """
    alpha = np.asarray(alpha, dtype=float).reshape(3)
    lam = np.asarray(lam, dtype=complex).reshape(3)
    lam_c = lam.conj()
    x = system_variables()
    H = linear_operator(alpha)
    L = linear_operator(lam)
    Ld = L.adjoint()
    zero = np.zeros(3)
    norm2 = float(np.vdot(lam, lam).real)
    c0 = -2j * theta(lam) @ lam_c

    comm_xL = [commutator(xi, L) for xi in x]
    comm_xLd = [commutator(xi, Ld) for xi in x]
    return {
        "[x,H]": _max_residual([commutator(xi, H) for xi in x],
                               _operator_rows(zero, -2j * theta(alpha))),
        "[x,L]": _max_residual(comm_xL, _operator_rows(zero, -2j * theta(lam))),
        "[x,L+]": _max_residual(comm_xLd,
                                _operator_rows(zero, -2j * theta(lam_c))),
        "L+[x,L]": _max_residual(
            [pauli_product(Ld, c) for c in comm_xL],
            _operator_rows(c0, -2 * (norm2 * np.eye(3) - np.outer(lam_c, lam)))),
        "[x,L+]L": _max_residual(
            [pauli_product(c, L) for c in comm_xLd],
            _operator_rows(-c0, 2 * (norm2 * np.eye(3) - np.outer(lam, lam_c)))),
    }

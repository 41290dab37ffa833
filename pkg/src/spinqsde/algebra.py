"""Levi-Civita symbol, the cross-product map Theta, and the stacking matrix E.

Index conventions follow the usual physics notation: the public helpers
``levi_civita`` and ``elementary`` take 1-based indices, while arrays are
0-based as everywhere else in numpy.

The integer tables (``LEVI_CIVITA``, ``EBAR``, ``E``, ``ONE_E``) are stored
with an integer dtype so that identities involving only them are checked in
exact arithmetic.
"""

import itertools

import numpy as np

from .errors import DomainError, SymmetryError

__all__ = [
    "levi_civita", "LEVI_CIVITA", "elementary", "theta", "theta_inverse",
    "vec", "unvec", "kron", "EBAR", "E", "ONE_E", "contraction_check",
    "selftest_identities", "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9


def levi_civita(i, j, k):
    """Levi-Civita symbol for 1-based indices.

    >>> levi_civita(1, 2, 3), levi_civita(2, 1, 3), levi_civita(1, 1, 3)
    (1, -1, 0)
    """
    for idx in (i, j, k):
        if not (isinstance(idx, (int, np.integer)) and 1 <= idx <= 3):
            raise DomainError(f"Levi-Civita index must be in 1..3, got {idx!r}")
    # product formula, exact for indices in {1, 2, 3}
    return (j - i) * (k - i) * (k - j) // 2


LEVI_CIVITA = np.array(
    [[[levi_civita(i, j, k) for k in (1, 2, 3)] for j in (1, 2, 3)]
     for i in (1, 2, 3)], dtype=np.int64)


def elementary(i, j, n=3):
    """Integer matrix with a single 1 at 1-based position (i, j)."""
    out = np.zeros((n, n), dtype=np.int64)
    out[i - 1, j - 1] = 1
    return out


def _as_vec3(beta):
    b = np.asarray(beta)
    if b.size != 3 or (b.ndim == 2 and 1 not in b.shape) or b.ndim > 2:
        raise DomainError(f"expected a 3-vector, got shape {b.shape}")
    return b.reshape(3)


def theta(beta):
    """Antisymmetric matrix of a 3-vector.

    ``theta(beta) @ gamma`` equals ``np.cross(gamma, beta)``. Row and column
    vectors are treated alike. Entries may be any objects supporting
    negation and multiplication by zero (e.g. :class:`PauliOperator`).

    >>> theta([1, 2, 3])
    array([[ 0,  3, -2],
           [-3,  0,  1],
           [ 2, -1,  0]])
    """
    b1, b2, b3 = _as_vec3(beta)
    if np.asarray(beta).dtype == object:
        z = b1 * 0
        out = np.empty((3, 3), dtype=object)
        out[:] = [[z, b3, -b2], [-b3, z, b1], [b2, -b1, z]]
        return out
    return np.array([[0 * b1, b3, -b2], [-b3, 0 * b1, b1], [b2, -b1, 0 * b1]])


def theta_inverse(M, tol=DEFAULT_TOL):
    """Recover ``beta`` from an (approximately) antisymmetric 3x3 matrix.

    The input is antisymmetrized first; a symmetric part larger than
    ``tol * max(1, ||M||_F)`` raises :class:`SymmetryError`.
    """
    M = np.asarray(M)
    if M.shape != (3, 3):
        raise DomainError(f"expected a 3x3 matrix, got shape {M.shape}")
    scale = tol * max(1.0, float(np.linalg.norm(M)))
    sym = float(np.linalg.norm(M + M.T))
    diag = float(np.max(np.abs(np.diag(M))))
    if sym > scale or diag > scale:
        raise SymmetryError("matrix is not antisymmetric", max(sym, diag))
    A = (M - M.T) / 2
    return np.array([A[1, 2], A[2, 0], A[0, 1]])


def vec(M):
    """Stack the columns of ``M`` into a single vector."""
    return np.asarray(M).reshape(-1, order="F")


def unvec(v, shape=(3, 3)):
    """Inverse of :func:`vec` for a matrix of the given shape."""
    v = np.asarray(v)
    if v.ndim != 1 and not (v.ndim == 2 and 1 in v.shape):
        raise DomainError(f"expected a vector, got shape {v.shape}")
    if v.size != shape[0] * shape[1]:
        raise DomainError(
            f"cannot unstack {v.size} entries into a {shape[0]}x{shape[1]} matrix")
    return v.reshape(shape, order="F")


def kron(A, B):
    """Kronecker product; thin wrapper over :func:`numpy.kron`."""
    return np.kron(A, B)


# adjoint-representation generators: EBAR[i] = theta(e_{i+1})
EBAR = np.stack([theta(np.eye(3, dtype=np.int64)[i]) for i in range(3)])

# columns are vec(EBAR[i]), so that vec(theta(beta)) == E @ beta
E = np.column_stack([vec(EBAR[i]) for i in range(3)])

# block (i, j) is the elementary matrix 1_{ji}; the vec-transpose permutation
ONE_E = np.block([[elementary(j, i) for j in (1, 2, 3)] for i in (1, 2, 3)])


def contraction_check():
    """Number of index tuples (j, k, m, n) violating the epsilon contraction.

    Exhaustive over all 81 tuples, in integer arithmetic.
    """
    d = np.eye(3, dtype=np.int64)
    bad = 0
    for j, k, m, n in itertools.product(range(3), repeat=4):
        lhs = int(np.dot(LEVI_CIVITA[:, j, k], LEVI_CIVITA[:, m, n]))
        rhs = d[j, m] * d[k, n] - d[j, n] * d[k, m]
        bad += lhs != rhs
    return bad


def _fro(X):
    return float(np.linalg.norm(X))


def _exact_table_residuals():
    I3, I9 = np.eye(3, dtype=np.int64), np.eye(9, dtype=np.int64)
    res = {
        "E^T E = 2I": _fro(E.T @ E - 2 * I3),
        "E E^T = I - 1_E": _fro(E @ E.T - (I9 - ONE_E)),
        "1_E E = -E": _fro(ONE_E @ E + E),
        "epsilon contraction": float(contraction_check()),
    }
    worst = 0.0
    for i, j in itertools.product(range(3), repeat=2):
        rhs = (i == j) * I3 - elementary(j + 1, i + 1)
        worst = max(worst, _fro(EBAR[i] @ EBAR[j].T - rhs))
    res["ebar_i ebar_j^T = d_ij I - 1_ji"] = worst
    return res


def selftest_identities(seed=0, trials=100):
    """Evaluate the Theta / E / Kronecker identities on random inputs.

    Parameters
    ----------
    seed : int
        Seed for :func:`numpy.random.default_rng`.
    trials : int
        Number of random draws of complex ``beta, gamma`` and real 3x3
        ``A, B, C``.

    Returns
    -------
    dict
        Identity name mapped to the largest Frobenius residual observed.
        Residuals are reported, never raised.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    I3 = np.eye(3)
    worst = dict.fromkeys([
        "theta(b)g + theta(g)b = 0",
        "theta(b)b = 0",
        "ebar_i theta(b) = b e_i^T - b_i I",
        "theta(b)theta(g) = g b^T - (b^T g) I",
        "theta(theta(b)g) = [theta(b), theta(g)]",
        "vec(theta(b)) = E b",
        "E^T(A(x)B)E = E^T(B(x)A)E",
        "E^T(I(x)A)E = Tr(A)I - A^T",
        "E^T(A(x)B)E six-term expansion",
        "E E^T(A(x)B)E = (A(x)B)E + (B(x)A)E",
        "1_E (A(x)B) 1_E = B(x)A",
        "vec(ABC) = (C^T(x)A) vec(B)",
    ], 0.0)
    keys = list(worst)
    for _ in range(trials):
        b = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        g = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        A, B, C = rng.standard_normal((3, 3, 3))
        tb, tg = theta(b), theta(g)
        tr_a, tr_b = np.trace(A), np.trace(B)
        vals = [
            _fro(tb @ g + tg @ b),
            _fro(tb @ b),
            max(_fro(EBAR[i] @ tb - (np.outer(b, I3[i]) - b[i] * I3))
                for i in range(3)),
            _fro(tb @ tg - (np.outer(g, b) - (b @ g) * I3)),
            _fro(theta(tb @ g) - (tb @ tg - tg @ tb)),
            _fro(vec(tb) - E @ b),
            _fro(E.T @ kron(A, B) @ E - E.T @ kron(B, A) @ E),
            _fro(E.T @ kron(I3, A) @ E - (tr_a * I3 - A.T)),
            _fro(E.T @ kron(A, B) @ E
                 - (A.T @ B.T + B.T @ A.T + tr_a * tr_b * I3 - tr_b * A.T
                    - tr_a * B.T - np.trace(A @ B) * I3)),
            _fro(E @ E.T @ kron(A, B) @ E - kron(A, B) @ E - kron(B, A) @ E),
            _fro(ONE_E @ kron(A, B) @ ONE_E - kron(B, A)),
            _fro(vec(A @ B @ C) - kron(C.T, A) @ vec(B)),
        ]
        for key, v in zip(keys, vals):
            worst[key] = max(worst[key], v)
    worst.update(_exact_table_residuals())
    return worst

"""The space of antisymmetric zero-row-sum matrices and its cycle-matrix basis.

``phi`` maps an edge-indexed vector to the antisymmetric matrix carrying the
same values on the upper triangle; restricted to ker(Gamma) it is an
isomorphism onto that space.  Matrices are plain numpy arrays; object arrays
of ``Fraction`` are handled exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels, linalg
from .chain import CurrentMatrix
from .cyclegraph import basis_triples, n_basis, n_edges, residue
from .errors import BadPower, DimensionMismatch, NotInSpace, ReconstructionResidual, TooSmall

ZERO_TOL = 1e-10


def _matrix(m) -> np.ndarray:
    m = m.d if isinstance(m, CurrentMatrix) else np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def _tol(m, tol):
    if tol is not None:
        return tol
    if linalg.is_exact(m):
        return 0
    return ZERO_TOL * max(1.0, linalg.max_abs(m))


def _size_from_edges(length: int) -> int:
    n = int(round((1 + math.sqrt(1 + 8 * length)) / 2))
    if n_edges(n) != length or length == 0:
        raise DimensionMismatch(f"{length} is not C(N, 2) for any N >= 2")
    return n


def phi(v) -> np.ndarray:
    """Antisymmetric matrix with ``M[i, j] = v[theta(i, j)]`` above the diagonal."""
    v = np.asarray(v)
    if v.ndim != 1:
        raise DimensionMismatch("phi expects an edge-indexed vector")
    n = _size_from_edges(v.shape[0])
    m = linalg.zeros_like(v, (n, n)) if linalg.is_exact(v) else np.zeros((n, n), dtype=v.dtype)
    iu = np.triu_indices(n, 1)
    m[iu] = v
    m[iu[1], iu[0]] = -v
    return m


def in_space(m, tol=None) -> bool:
    """Antisymmetric with zero row sums, within ``tol``."""
    m = _matrix(m)
    tol = _tol(m, tol)
    return linalg.max_abs(m + m.T) <= tol and linalg.max_abs(m.sum(axis=1)) <= tol


def phi_inverse(m, tol=None) -> np.ndarray:
    """Upper triangle of ``m`` in edge order; ``m`` must lie in the space."""
    m = _matrix(m)
    if not in_space(m, tol):
        raise NotInSpace("matrix is not antisymmetric with zero row sums")
    return m[np.triu_indices(m.shape[0], 1)].copy()


def basis_matrix(i: int, b: int, n: int) -> np.ndarray:
    """Cycle matrix of the triangle i -> i+1 -> b -> i (``b >= i + 2``)."""
    m = np.zeros((n, n), dtype=np.int64)
    for r, c in ((i, i + 1), (i + 1, b), (b, i)):
        m[r - 1, c - 1] = 1
        m[c - 1, r - 1] = -1
    return m


def cycle_matrix_basis(n: int) -> list[np.ndarray]:
    """``M_(i, i+1, i+1+j)`` in the same order as :func:`basis_triples`."""
    return [basis_matrix(i, b, n) for i, _, b in basis_triples(n)]


def circulant_power(n: int, k: int) -> np.ndarray:
    """The permutation matrix ``Lambda^k``: a 1 at ``(i, [i + k])``."""
    if not (1 <= k <= n):
        raise BadPower(f"power {k} outside 1..{n}")
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n + 1):
        m[i - 1, residue(i + k, n) - 1] = 1
    return m


def lambda_antisym(n: int, k: int) -> np.ndarray:
    """``Lambda^k - (Lambda^k)^T``.

    For even N and ``k = N/2`` the two terms coincide and the result is zero.
    """
    if not (1 <= k <= n - 1):
        raise BadPower(f"power {k} outside 1..{n - 1}")
    lam = circulant_power(n, k)
    return lam - lam.T


@dataclass(frozen=True)
class CycleDecomposition:
    """Coefficients over the cycle-matrix basis, keyed by ``(i, i+1, i+1+j)``."""

    n: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 3:
            raise TooSmall("the cycle space is trivial for N < 3")
        if list(self.coeffs) != basis_triples(self.n):
            raise DimensionMismatch(f"expected the {n_basis(self.n)} basis triples in canonical order")

    @classmethod
    def from_vector(cls, n: int, values) -> "CycleDecomposition":
        values = list(values)
        if len(values) != n_basis(n):
            raise DimensionMismatch(f"{len(values)} coefficients for a {n_basis(n)}-dimensional space")
        return cls(n, dict(zip(basis_triples(n), values)))

    def __getitem__(self, triple):
        return self.coeffs[tuple(triple)]

    def vector(self) -> np.ndarray:
        values = list(self.coeffs.values())
        if any(isinstance(x, Fraction) for x in values):
            return linalg.exact_array(values)
        return np.array(values, dtype=np.float64)


def reconstruct(c: CycleDecomposition) -> np.ndarray:
    """``sum d_(i, i+1, b) M_(i, i+1, b)``."""
    values = c.vector()
    m = linalg.zeros_like(values, (c.n, c.n))
    for (i, _, b), x in zip(c.coeffs, values):
        for r, s in ((i, i + 1), (i + 1, b), (b, i)):
            m[r - 1, s - 1] += x
            m[s - 1, r - 1] -= x
    return m


def decompose(d_mat, tol=None) -> CycleDecomposition:
    """Coordinates of ``d_mat`` in the cycle-matrix basis.

    Solved by forward substitution over chord edges, then checked by
    reconstruction.
    """
    m = _matrix(d_mat)
    n = m.shape[0]
    if n < 3:
        raise TooSmall("the cycle space is trivial for N < 3")
    tol = _tol(m, tol)
    if not in_space(m, tol):
        raise NotInSpace("matrix is not antisymmetric with zero row sums")
    if linalg.is_exact(m):
        out = _kernels.chord_recurrence_py(m, linalg.zeros_like(m, (n_basis(n),)))
    else:
        out = _kernels.chord_recurrence(np.ascontiguousarray(m, dtype=np.float64), np.zeros(n_basis(n)))
        out = (out + 0.0).tolist()
    c = CycleDecomposition.from_vector(n, out)
    residual = linalg.max_abs(reconstruct(c) - m)
    if residual > tol:
        raise ReconstructionResidual(f"reconstruction residual {residual} exceeds {tol}")
    return c


@dataclass(frozen=True)
class KNonEquilibrium:
    """Result of :func:`detect_k_nonequilibrium`: ``D = d (Lambda^k - (Lambda^k)^T)``."""

    k: int
    d: object
    hamiltonian: bool


def detect_k_nonequilibrium(d_mat, tol=None) -> KNonEquilibrium | None:
    """Smallest ``k <= N/2`` with ``d_mat`` a nonzero multiple of ``Lambda^k - (Lambda^k)^T``.

    Returns None for the zero matrix or when no k fits.
    """
    m = _matrix(d_mat)
    n = m.shape[0]
    tol = _tol(m, tol)
    if linalg.max_abs(m) <= tol:
        return None
    for k in range(1, n // 2 + 1):
        if 2 * k == n:
            continue  # Lambda^(N/2) is symmetric, its antisymmetric part vanishes
        d = m[0, residue(1 + k, n) - 1]
        if abs(d) <= tol:
            continue
        if linalg.max_abs(m - d * lambda_antisym(n, k)) <= tol:
            return KNonEquilibrium(k, d if linalg.is_exact(m) else float(d), math.gcd(k, n) == 1)
    return None

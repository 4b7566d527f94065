"""Combinatorics of the complete interaction graph on states 1..N.

Edges are the pairs ``(i, j)`` with ``i < j`` ordered lexicographically;
:func:`theta` numbers them 1..C(N, 2).  Edge-indexed vectors (cycles,
currents) are plain 1-d arrays whose position ``theta(i, j) - 1`` holds
edge ``(i, j)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import BadEdge, BadIndex, BadStep, DimensionMismatch, NotHamiltonian, TooSmall


def n_edges(n: int) -> int:
    return n * (n - 1) // 2


def n_basis(n: int) -> int:
    """Dimension of the cycle space of the complete graph, C(N-1, 2)."""
    return (n - 1) * (n - 2) // 2


def _offset(i: int, n: int) -> int:
    # number of edges (a, b) with a < i; always an integer
    return (i - 1) * (2 * n - i) // 2


def theta(i: int, j: int, n: int) -> int:
    """1-based lexicographic index of edge ``(i, j)``, ``1 <= i < j <= n``."""
    if not (1 <= i < j <= n):
        raise BadEdge(f"({i}, {j}) is not an edge of the complete graph on {n} states")
    return _offset(i, n) + j - i


def theta_inverse(r: int, n: int) -> tuple[int, int]:
    """The edge ``(i, j)`` with ``theta(i, j, n) == r``."""
    if not (1 <= r <= n_edges(n)):
        raise BadIndex(f"edge index {r} outside 1..{n_edges(n)}")
    i = 1
    while _offset(i + 1, n) < r:
        i += 1
    return i, r - _offset(i, n) + i


@dataclass(frozen=True)
class EdgeIndexer:
    """Bound form of :func:`theta` / :func:`theta_inverse` for a fixed N."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise TooSmall("need at least 2 states")

    def __len__(self) -> int:
        return n_edges(self.n)

    def __call__(self, i: int, j: int) -> int:
        return theta(i, j, self.n)

    def inverse(self, r: int) -> tuple[int, int]:
        return theta_inverse(r, self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.n) for j in range(i + 1, self.n + 1)]


def incidence_matrix(n: int, exact: bool = False) -> np.ndarray:
    """N x C(N, 2) matrix with -1 at the tail row and +1 at the head row of each edge."""
    if n < 2:
        raise TooSmall("need at least 2 states")
    gamma = np.zeros((n, n_edges(n)), dtype=np.int64)
    for r, (i, j) in enumerate(EdgeIndexer(n).edges()):
        gamma[i - 1, r] = -1
        gamma[j - 1, r] = 1
    return linalg.exact_array(gamma) if exact else gamma


def basis_triples(n: int) -> list[tuple[int, int, int]]:
    """Labels ``(i, i+1, i+1+j)`` of the triangle basis, lexicographic order."""
    if n < 3:
        raise TooSmall("the cycle space is trivial for N < 3")
    return [(i, i + 1, i + 1 + j) for i in range(1, n - 1) for j in range(1, n - i)]


def triangle_cycle(i: int, j: int, n: int) -> np.ndarray:
    """Edge vector of the triangle i -> i+1 -> i+1+j -> i."""
    if not (1 <= i <= n - 2 and 1 <= j <= n - i - 1):
        raise BadIndex(f"no basis triangle ({i}, {i + 1}, {i + 1 + j}) for N={n}")
    v = np.zeros(n_edges(n), dtype=np.int64)
    v[theta(i, i + 1, n) - 1] = 1
    v[theta(i + 1, i + 1 + j, n) - 1] = 1
    v[theta(i, i + 1 + j, n) - 1] = -1
    return v


def basis_cycles(n: int) -> list[np.ndarray]:
    """The C(N-1, 2) triangles ``C_(i, i+1, i+1+j)`` spanning ker(Gamma)."""
    return [triangle_cycle(i, b - i - 1, n) for i, _, b in basis_triples(n)]


def residue(m: int, n: int) -> int:
    """``m mod n`` with representative in 1..n."""
    return (m - 1) % n + 1


def _check_step(n: int, k: int) -> None:
    if n < 1 or not (1 <= k <= n):
        raise BadStep(f"step k={k} outside 1..{n}")


def k_closed_path(n: int, k: int) -> list[int]:
    """Vertices ``[k], [2k], ..., [Nk], [k]``."""
    _check_step(n, k)
    return [residue(m * k, n) for m in range(1, n + 1)] + [residue(k, n)]


def is_k_hamiltonian(n: int, k: int) -> bool:
    """Whether the k-closed-path visits every state exactly once."""
    _check_step(n, k)
    return math.gcd(k, n) == 1


def k_cycle_vector(n: int, k: int) -> np.ndarray:
    """Signed edge vector of the Hamiltonian k-cycle.

    Edges traversed upward in label order get +1, downward ones -1.
    """
    if n < 3:
        raise TooSmall("k-cycles need N >= 3")
    _check_step(n, k)
    if math.gcd(k, n) != 1:
        raise NotHamiltonian(f"gcd({k}, {n}) != 1")
    v = np.zeros(n_edges(n), dtype=np.int64)
    for m in range(1, n + 1):
        a, b = residue(m * k, n), residue((m + 1) * k, n)
        if a < b:
            v[theta(a, b, n) - 1] = 1
        else:
            v[theta(b, a, n) - 1] = -1
    return v


def kernel_check(gamma, v, tol=1e-10) -> bool:
    """True iff ``||gamma @ v||_inf <= tol`` (exact zero for object arrays)."""
    gamma, v = np.asarray(gamma), np.asarray(v)
    if gamma.ndim != 2 or v.shape != (gamma.shape[1],):
        raise DimensionMismatch(f"cannot apply {gamma.shape} incidence matrix to vector of shape {v.shape}")
    out = gamma @ v
    if linalg.is_exact(out):
        return all(x == 0 for x in out)
    return linalg.max_abs(out) <= tol

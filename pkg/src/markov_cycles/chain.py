"""Generators, stationary distributions and current matrices.

States are labelled 1..N at every public boundary (error messages, edge
tuples); arrays are of course stored 0-based.

All operations accept exact generators (object arrays of ``Fraction``); the
"equals zero" tests then become exact comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NegativeRate, NonPositiveRate, NotSquare, SingularSystem, TooSmall

#: relative zero tolerance, multiplied by the generator's infinity norm
ZERO_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Generator:
    """Validated rate matrix ``q`` with the diagonal recomputed from the rows."""

    q: np.ndarray

    @property
    def n(self) -> int:
        return self.q.shape[0]

    @property
    def exact(self) -> bool:
        return linalg.is_exact(self.q)

    def norm(self):
        """Infinity norm ``max_i sum_j |q_ij|`` (equals ``2 max_i |q_ii|``)."""
        return max(sum(abs(x) for x in row) for row in self.q) if self.exact else float(np.abs(self.q).sum(axis=1).max())

    def rate(self, i: int, j: int):
        """``q_ij`` with 1-based state labels."""
        return self.q[i - 1, j - 1]

    def as_float(self) -> "Generator":
        return self if not self.exact else Generator(self.q.astype(np.float64))


@dataclass(frozen=True, eq=False)
class Distribution:
    pi: np.ndarray

    @property
    def n(self) -> int:
        return self.pi.shape[0]

    def __getitem__(self, i: int):
        return self.pi[i - 1]


@dataclass(frozen=True, eq=False)
class CurrentMatrix:
    """Antisymmetric matrix of net stationary fluxes, ``D_ij = pi_i q_ij - pi_j q_ji``."""

    d: np.ndarray

    @property
    def n(self) -> int:
        return self.d.shape[0]


def _tol(g: Generator, tol):
    if g.exact and tol is None:
        return 0
    return ZERO_TOL * g.norm() if tol is None else tol


def validate_generator(raw, strict: bool = True, exact: bool = False) -> Generator:
    """Build a :class:`Generator` from a square matrix of rates.

    The diagonal of ``raw`` is ignored.  In strict mode every off-diagonal
    rate must be positive (complete interaction graph); otherwise only
    negative rates are rejected.  ``exact=True`` converts entries to
    ``Fraction``; object-dtype input is kept exact automatically.
    """
    if isinstance(raw, Generator):
        raw = raw.q
    exact = exact or linalg.is_exact(raw)
    q = linalg.exact_array(raw) if exact else np.array(raw, dtype=np.float64)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise NotSquare(f"generator must be square, got shape {q.shape}")
    n = q.shape[0]
    if n < 2:
        raise TooSmall("a generator needs at least 2 states")
    if not exact and not np.all(np.isfinite(q)):
        raise NotSquare("generator entries must be finite")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if strict and not q[i, j] > 0:
                raise NonPositiveRate(i + 1, j + 1, q[i, j])
            if not strict and q[i, j] < 0:
                raise NegativeRate(i + 1, j + 1, q[i, j])
    for i in range(n):
        q[i, i] = 0
        q[i, i] = -sum(q[i]) if exact else -q[i].sum()
    q.setflags(write=False)
    return Generator(q)


def stationary_distribution(g: Generator, tol=None) -> Distribution:
    """Solve ``pi Q = 0`` with the last balance equation swapped for ``sum(pi) = 1``."""
    n = g.n
    a = g.q.T.copy()
    a[-1, :] = 1
    b = linalg.zeros_like(g.q, (n,))
    b[-1] = 1
    pi = linalg.solve(a, b)
    residual = linalg.max_abs(pi @ g.q)
    if residual > _tol(g, tol):
        raise SingularSystem(f"stationary residual {residual} exceeds tolerance")
    if not g.exact:
        pi = pi / pi.sum()
    pi.setflags(write=False)
    return Distribution(pi)


def current_matrix(g: Generator, pi: Distribution) -> CurrentMatrix:
    """``D = Pi Q - (Pi Q)^T``; built antisymmetrically so ``D^T == -D`` exactly."""
    p = pi.pi if isinstance(pi, Distribution) else np.asarray(pi)
    if p.shape != (g.n,):
        raise DimensionMismatch(f"distribution of length {p.shape} for {g.n} states")
    flux = p[:, None] * g.q
    d = flux - flux.T
    for i in range(g.n):
        d[i, i] = 0 * d[i, i]
    d.setflags(write=False)
    return CurrentMatrix(d)


def current_vector(d) -> np.ndarray:
    """Upper triangle of ``D`` in lexicographic edge order ``(J_12, ..., J_{N-1,N})``."""
    d = d.d if isinstance(d, CurrentMatrix) else np.asarray(d)
    return d[np.triu_indices(d.shape[0], 1)]


def is_detailed_balance(g: Generator, pi: Distribution, tol=None) -> bool:
    """True iff every current ``|pi_i q_ij - pi_j q_ji|`` is within ``tol``."""
    return linalg.max_abs(current_matrix(g, pi).d) <= _tol(g, tol)


def kolmogorov_gap(g: Generator):
    """Forward minus backward rate product around the ring 1 -> 2 -> ... -> N -> 1.

    Zero exactly when the ring satisfies Kolmogorov's criterion.
    """
    n = g.n
    if n < 3:
        raise TooSmall("the ring cycle needs N >= 3")
    q = g.q
    fwd, bwd = q[n - 1, 0], q[0, n - 1]
    for i in range(n - 1):
        fwd = fwd * q[i, i + 1]
        bwd = bwd * q[i + 1, i]
    return fwd - bwd

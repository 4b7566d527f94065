"""Closed form for chains whose currents all circulate around the ring 1 -> 2 -> ... -> N -> 1.

Such a chain has ``D = d (Lambda - Lambda^T)``: every ring edge carries the same
current ``d`` and every chord carries none.  The ring equations

    pi_i q_{i,i+1} - pi_{i+1} q_{i+1,i} = d      (i < N)
    pi_1 q_{1,N}   - pi_N q_{N,1}       = -d

plus normalisation determine ``d`` through minors of the augmented system and
``pi`` through a forward recursion.  Applied to an arbitrary chain the same
formulas give a candidate, which :func:`solve_one_ne` checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .chain import ZERO_TOL, Distribution, Generator, current_matrix
from .cyclespace import lambda_antisym
from .errors import NonPositive, ReversibleRing, TooSmall, ZeroDenominator

DET_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DeltaSystem:
    """Coefficient matrix of the ring equations."""

    n: int
    delta: np.ndarray

    def rhs(self, d) -> np.ndarray:
        """``(d, ..., d, -d)``."""
        out = linalg.zeros_like(self.delta, (self.n,))
        out[:] = d
        out[-1] = -d
        return out

    def augmented(self, d) -> np.ndarray:
        """(N+1) x (N+1) matrix: ones row over ``delta``, right column ``(1, d, ..., d, -d)``."""
        n = self.n
        a = linalg.zeros_like(self.delta, (n + 1, n + 1))
        a[0, :] = 1
        a[1:, :n] = self.delta
        a[1:, n] = self.rhs(d)
        return a


def _ring_products(g: Generator):
    """``(q_{1,N} prod q_{i+1,i}, q_{N,1} prod q_{i,i+1})``."""
    if g.n < 3:
        raise TooSmall("the ring system needs N >= 3")
    q, n = g.q, g.n
    backward, forward = q[0, n - 1], q[n - 1, 0]
    for i in range(n - 1):
        backward = backward * q[i + 1, i]
        forward = forward * q[i, i + 1]
    return backward, forward


def _scale(g: Generator):
    if g.exact:
        return 0
    return DET_TOL * max(abs(x) for x in _ring_products(g))


def delta_matrix(g: Generator) -> DeltaSystem:
    if g.n < 3:
        raise TooSmall("the ring system needs N >= 3")
    q, n = g.q, g.n
    delta = linalg.zeros_like(q, (n, n))
    for i in range(n - 1):
        delta[i, i] = q[i, i + 1]
        delta[i, i + 1] = -q[i + 1, i]
    delta[n - 1, 0] = q[0, n - 1]
    delta[n - 1, n - 1] = -q[n - 1, 0]
    return DeltaSystem(n, delta)


def delta_determinant_closed(g: Generator):
    """``det(Delta) = q_{1,N} prod q_{i+1,i} - q_{N,1} prod q_{i,i+1}``."""
    backward, forward = _ring_products(g)
    return backward - forward


def augmented_minors(g: Generator) -> np.ndarray:
    """Minors ``Delta_{i,N+1}``, i = 1..N+1, of the augmented matrix.

    Deleting the last column leaves the ones row stacked on ``Delta``; minor i
    deletes row i of that stack, so the first minor is ``det(Delta)`` itself.
    """
    sys_ = delta_matrix(g)
    n = sys_.n
    stacked = linalg.zeros_like(sys_.delta, (n + 1, n))
    stacked[0, :] = 1
    stacked[1:] = sys_.delta
    minors = [linalg.det(np.delete(stacked, i, axis=0)) for i in range(n + 1)]
    return linalg.exact_array(minors) if g.exact else np.array(minors)


def _d_from_minors(minors, n: int):
    """Numerator and denominator of ``d``; minors are 0-based here."""
    num = (-1) ** (n + 1) * minors[0]
    den = -minors[n]
    for i in range(2, n + 1):
        den = den + (-1) ** (n + 1 + i) * minors[i - 1]
    return num, den


def solve_d(g: Generator, tol=None):
    """The ring current ``d`` for which the ring equations admit a distribution.

    Raises ReversibleRing if ``det(Delta)`` vanishes (Kolmogorov's criterion
    holds on the ring) and ZeroDenominator if the solvability condition
    does not determine ``d``.
    """
    minors = augmented_minors(g)
    det_tol = _scale(g) if tol is None else tol
    if abs(minors[0]) <= det_tol:
        raise ReversibleRing(f"det(Delta) = {minors[0]} vanishes; the ring is reversible")
    num, den = _d_from_minors(minors, g.n)
    den_tol = 0 if g.exact else DET_TOL * max(abs(x) for x in minors[1:])
    if abs(den) <= den_tol:
        raise ZeroDenominator(f"denominator {den} vanishes")
    return num / den if g.exact else float(num / den)


def _closed_form_pi(g: Generator, d) -> np.ndarray:
    # pi_n = pi_1 P_n - d S_n with P_n = prod_{i<n} q_{i,i+1}/q_{i+1,i} and
    # S_{n+1} = S_n q_{n,n+1}/q_{n+1,n} + 1/q_{n+1,n}; P_1 = 1, S_1 = 0.
    q, n = g.q, g.n
    p = [q[0, 0] * 0 + 1]
    s = [q[0, 0] * 0]
    for m in range(1, n):
        ratio = q[m - 1, m] / q[m, m - 1]
        p.append(p[-1] * ratio)
        s.append(s[-1] * ratio + 1 / q[m, m - 1])
    pi1 = (1 + d * sum(s[1:])) / (1 + sum(p[1:]))
    pi = [pi1] + [pi1 * p[m] - d * s[m] for m in range(1, n)]
    return linalg.exact_array(pi) if g.exact and not isinstance(d, float) else np.array(pi, dtype=np.float64)


def solve_pi(g: Generator, d) -> Distribution:
    """Closed-form distribution solving the ring equations with current ``d``."""
    if g.n < 3:
        raise TooSmall("the ring system needs N >= 3")
    pi = _closed_form_pi(g, d)
    for i, x in enumerate(pi, start=1):
        if not x > 0:
            raise NonPositive(i, x)
    return Distribution(pi)


@dataclass(frozen=True, eq=False)
class OneNEResult:
    """Candidate ``(pi, d)`` and whether it really is a 1-non-equilibrium solution.

    ``pi`` is the raw closed-form vector; it may leave the simplex when
    ``valid`` is False.  ``residual`` is ``max |D - d (Lambda - Lambda^T)|``.
    """

    pi: np.ndarray
    d: object
    valid: bool
    residual: object


def solve_one_ne(g: Generator, tol=None) -> OneNEResult:
    """Classify ``g`` as 1-non-equilibrium or not.

    A chain whose currents do not reduce to a single ring current yields
    ``valid=False``; only an undefined ``d`` raises.
    """
    d = solve_d(g)
    pi = _closed_form_pi(g, d)
    resid_tol = (0 if g.exact else ZERO_TOL * g.norm()) if tol is None else tol
    residual = linalg.max_abs(current_matrix(g, pi).d - d * lambda_antisym(g.n, 1))
    mass_err = abs(sum(pi) - 1)
    valid = bool(
        d != 0
        and all(x > 0 for x in pi)
        and residual <= resid_tol
        and mass_err <= (0 if g.exact else ZERO_TOL * g.n)
    )
    return OneNEResult(pi, d, valid, residual)

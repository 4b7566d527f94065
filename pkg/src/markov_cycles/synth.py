"""Chains with prescribed stationary distribution and current structure.

Given ``pi``, a current ``d`` and forward rates, the reverse rates are chosen
so that every shifted-ring edge ``(i, [i+k])`` carries current ``d`` and every
other pair is in detailed balance.  Each state then has one incoming and one
outgoing ``d``, so ``pi`` is stationary and ``D = d (Lambda^k - (Lambda^k)^T)``
holds by construction (exactly, when the inputs are ``Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .chain import Generator, validate_generator
from .cyclegraph import residue
from .errors import BadPower, DimensionMismatch, Infeasible, InputError, TooSmall

REGIMES = ("equilibrium", "one_ne", "k_ne", "generic")

FORWARD_RANGE = (0.5, 2.0)
GENERIC_RANGE = (0.1, 10.0)
MAX_ATTEMPTS = 100


@dataclass(frozen=True, eq=False)
class SynthSpec:
    """Recipe for :func:`synth_k_ne`.

    ``ring_forward[i-1]`` is the rate ``q_{i,[i+k]}``; ``chord_forward`` is an
    N x N array read at the remaining pairs ``i < j`` only.
    """

    n: int
    pi: np.ndarray
    d: object
    ring_forward: np.ndarray
    chord_forward: np.ndarray
    k: int = 1
    seed: int | None = None

    def ring_edges(self) -> list[tuple[int, int]]:
        return [(i, residue(i + self.k, self.n)) for i in range(1, self.n + 1)]


def _exact(spec: SynthSpec) -> bool:
    return isinstance(spec.d, Fraction) or linalg.is_exact(spec.pi)


def synth_k_ne(spec: SynthSpec) -> Generator:
    """Generator realising ``D = d (Lambda^k - (Lambda^k)^T)`` with stationary ``spec.pi``."""
    n, k = spec.n, spec.k
    if n < 3:
        raise TooSmall("synthesis needs N >= 3")
    if not (1 <= k <= n - 1) or 2 * k == n:
        raise BadPower(f"k={k} does not define a ring on {n} states")
    exact = _exact(spec)
    conv = linalg.exact_array if exact else (lambda a: np.asarray(a, dtype=np.float64))
    pi, ring, chord = conv(spec.pi), conv(spec.ring_forward), conv(spec.chord_forward)
    d = linalg.to_fraction(spec.d) if exact else float(spec.d)
    if pi.shape != (n,) or ring.shape != (n,) or chord.shape != (n, n):
        raise DimensionMismatch("pi, ring_forward and chord_forward must match n")
    if not all(x > 0 for x in pi):
        raise InputError("prescribed pi must be positive")

    q = linalg.zeros_like(pi, (n, n))
    ring_pairs = set()
    for i, j in spec.ring_edges():
        f = ring[i - 1]
        back = pi[i - 1] * f - d
        if not (f > 0 and back > 0):
            raise Infeasible(f"ring edge ({i}, {j}): pi_i q_ij - d = {back} must be > 0")
        q[i - 1, j - 1] = f
        q[j - 1, i - 1] = back / pi[j - 1]
        ring_pairs.add((min(i, j), max(i, j)))
    for i in range(n):
        for j in range(i + 1, n):
            if (i + 1, j + 1) in ring_pairs:
                continue
            f = chord[i, j]
            if not f > 0:
                raise Infeasible(f"chord ({i + 1}, {j + 1}): forward rate {f} must be > 0")
            q[i, j] = f
            q[j, i] = pi[i] * f / pi[j]
    return validate_generator(q, exact=exact)


def synth_one_ne(spec: SynthSpec) -> Generator:
    """:func:`synth_k_ne` on the ring 1 -> 2 -> ... -> N -> 1."""
    if spec.k != 1:
        raise BadPower("synth_one_ne requires k = 1")
    return synth_k_ne(spec)


def _rationalize(x: np.ndarray) -> np.ndarray:
    return linalg.exact_array([Fraction(float(v)).limit_denominator(1000) for v in np.ravel(x)]).reshape(np.shape(x))


def random_spec(n: int, regime: str, seed: int, k: int | None = None, exact: bool = False) -> SynthSpec:
    """Sample a feasible :class:`SynthSpec`; deterministic in ``seed``.

    ``d`` is drawn in ``(0.1, 0.9) * min_i pi_i q_{i,[i+k]}`` so the derived
    reverse rates stay positive without rejection.
    """
    if regime == "one_ne":
        k = 1
    elif regime == "equilibrium":
        k = 1 if k is None else k
    elif regime != "k_ne":
        raise InputError(f"regime {regime!r} has no synthesis recipe")
    if k is None:
        raise InputError("regime k_ne needs k")
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.5, 1.5, n)
    ring = rng.uniform(*FORWARD_RANGE, n)
    chord = rng.uniform(*FORWARD_RANGE, (n, n))
    frac = rng.uniform(0.1, 0.9)
    if exact:
        w, ring, chord = _rationalize(w), _rationalize(ring), _rationalize(chord)
        frac = Fraction(frac).limit_denominator(1000)
    pi = w / sum(w)
    if regime == "equilibrium":
        d = Fraction(0) if exact else 0.0
    else:
        d = frac * min(pi[i] * ring[i] for i in range(n))
    return SynthSpec(n, pi, d, ring, chord, k=k, seed=seed)


def random_instance(n: int, regime: str, seed: int, k: int | None = None, exact: bool = False) -> Generator:
    """Random generator in one of :data:`REGIMES`; identical output for identical arguments."""
    if n < 3:
        raise TooSmall("random instances need N >= 3")
    if regime not in REGIMES:
        raise InputError(f"unknown regime {regime!r}; expected one of {REGIMES}")
    if regime == "generic":
        rng = np.random.default_rng(seed)
        q = rng.uniform(*GENERIC_RANGE, (n, n))
        return validate_generator(_rationalize(q) if exact else q, exact=exact)
    last = None
    for attempt in range(MAX_ATTEMPTS):
        spec = random_spec(n, regime, seed if attempt == 0 else (seed, attempt), k=k, exact=exact)
        try:
            return synth_k_ne(spec)
        except Infeasible as exc:
            last = exc
    raise Infeasible(f"no feasible instance after {MAX_ATTEMPTS} attempts: {last}")

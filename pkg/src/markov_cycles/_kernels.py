"""Inner loops.

Every kernel exists twice: ``<name>_py`` is plain Python over numpy arrays
and also works elementwise on ``object`` arrays of ``fractions.Fraction``;
``<name>`` is the numba-compiled float64 version, or the same Python function
when JIT is disabled (see :mod:`markov_cycles._jit`).
"""

from __future__ import annotations

import numpy as np

from ._jit import JIT_ENABLED, njit


def gillespie_block_py(cum, exit_rates, state, t, horizon, expo, unif, out_states, out_times):
    """Advance a jump chain using pre-drawn variates.

    ``cum[i]`` holds cumulative jump probabilities out of state ``i`` (last
    entry exactly 1).  ``expo`` are standard exponentials, ``unif`` uniforms on
    [0, 1).  Writes one (state, sojourn) pair per consumed variate.

    Returns ``(written, state, t, reached_horizon)``.
    """
    n = cum.shape[0]
    m = 0
    while m < expo.shape[0]:
        dwell = expo[m] / exit_rates[state]
        out_states[m] = state
        if t + dwell >= horizon:
            out_times[m] = horizon - t
            return m + 1, state, horizon, True
        out_times[m] = dwell
        t += dwell
        u = unif[m]
        nxt = n - 1
        for j in range(n):
            if u < cum[state, j]:
                nxt = j
                break
        state = nxt
        m += 1
    return m, state, t, False


def _transition_counts_loop(states, n):
    counts = np.zeros((n, n), dtype=np.int64)
    for m in range(states.shape[0] - 1):
        counts[states[m], states[m + 1]] += 1
    return counts


def transition_counts_py(states, n):
    """``counts[i, j]`` = number of i -> j jumps in a 0-based state sequence."""
    pairs = states[:-1] * n + states[1:]
    return np.bincount(pairs, minlength=n * n).astype(np.int64).reshape(n, n)


def det_py(a):
    """Determinant by row-pivoted Gaussian elimination with sign tracking."""
    a = a.copy()
    n = a.shape[0]
    det = 1
    for k in range(n):
        p = k
        best = abs(a[k, k])
        for i in range(k + 1, n):
            if abs(a[i, k]) > best:
                best = abs(a[i, k])
                p = i
        if best == 0:
            return 0 * det
        if p != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
            det = -det
        pivot = a[k, k]
        det = det * pivot
        for i in range(k + 1, n):
            f = a[i, k] / pivot
            if f != 0:
                for j in range(k, n):
                    a[i, j] = a[i, j] - f * a[k, j]
    return det


def solve_py(a, b):
    """Solve ``a x = b`` by row-pivoted elimination.

    Returns ``(x, singular)``; ``x`` is meaningless when ``singular``.
    """
    a = a.copy()
    x = b.copy()
    n = a.shape[0]
    for k in range(n):
        p = k
        best = abs(a[k, k])
        for i in range(k + 1, n):
            if abs(a[i, k]) > best:
                best = abs(a[i, k])
                p = i
        if best == 0:
            return x, True
        if p != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
            tmp = x[k]
            x[k] = x[p]
            x[p] = tmp
        pivot = a[k, k]
        for i in range(k + 1, n):
            f = a[i, k] / pivot
            if f != 0:
                for j in range(k, n):
                    a[i, j] = a[i, j] - f * a[k, j]
                x[i] = x[i] - f * x[k]
    for k in range(n - 1, -1, -1):
        s = x[k]
        for j in range(k + 1, n):
            s = s - a[k, j] * x[j]
        x[k] = s / a[k, k]
    return x, False


def chord_recurrence_py(d, out):
    """Cycle-basis coefficients of an antisymmetric zero-row-sum matrix.

    ``out`` has one slot per basis triple (i, i+1, b), b >= i+2, in
    lexicographic order.  Each chord (a, b) is shared by the triples starting
    at a-1 and a, so the coefficient of (i, i+1, b) is minus the partial
    column sum of ``d[:i+1, b]`` (0-based).
    """
    n = d.shape[0]
    colsum = d[0].copy()
    r = 0
    for i in range(n - 2):
        if i > 0:
            for b in range(n):
                colsum[b] = colsum[b] + d[i, b]
        for b in range(i + 2, n):
            out[r] = -colsum[b]
            r += 1
    return out


gillespie_block = njit(gillespie_block_py)
transition_counts = njit(_transition_counts_loop) if JIT_ENABLED else transition_counts_py
det = njit(det_py)
solve = njit(solve_py)
chord_recurrence = njit(chord_recurrence_py)

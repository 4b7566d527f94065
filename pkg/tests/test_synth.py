from fractions import Fraction
from math import gcd

import numpy as np
import pytest

from markov_cycles import (
    SynthSpec,
    current_matrix,
    detect_k_nonequilibrium,
    is_detailed_balance,
    lambda_antisym,
    random_instance,
    solve_one_ne,
    stationary_distribution,
    synth_k_ne,
    synth_one_ne,
)
from markov_cycles.errors import BadPower, Infeasible, InputError
from markov_cycles.synth import random_spec

from conftest import CYCLIC_3, exact


def test_hand_worked_chain():
    spec = SynthSpec(3, exact([Fraction(1, 3)] * 3), Fraction(1, 3), exact([2, 2, 2]), exact(np.ones((3, 3))))
    g = synth_one_ne(spec)
    assert (g.q == exact(CYCLIC_3) - np.diag(np.diag(exact(CYCLIC_3))) + np.diag([-3] * 3)).all()


def test_zero_current_gives_detailed_balance():
    spec = random_spec(5, "one_ne", seed=1)
    g = synth_one_ne(SynthSpec(5, spec.pi, 0.0, spec.ring_forward, spec.chord_forward))
    assert is_detailed_balance(g, stationary_distribution(g))


def test_closed_loop_uniform():
    g = synth_one_ne(SynthSpec(6, np.full(6, 1 / 6), 0.01, np.ones(6), np.ones((6, 6))))
    res = solve_one_ne(g)
    assert res.valid and abs(res.d - 0.01) <= 1e-9
    np.testing.assert_allclose(res.pi, 1 / 6, atol=1e-9)


def test_infeasible():
    with pytest.raises(Infeasible):
        synth_one_ne(SynthSpec(3, np.full(3, 1 / 3), 1.0, np.ones(3), np.ones((3, 3))))
    with pytest.raises(BadPower):
        synth_k_ne(SynthSpec(4, np.full(4, 0.25), 0.01, np.ones(4), np.ones((4, 4)), k=2))
    with pytest.raises(InputError):
        random_instance(4, "bogus", seed=0)


@pytest.mark.parametrize("n", range(3, 11))
def test_prescribed_structure_float(n):
    spec = random_spec(n, "one_ne", seed=n)
    g = synth_one_ne(spec)
    np.testing.assert_allclose(stationary_distribution(g).pi, spec.pi, atol=1e-10)
    np.testing.assert_allclose(current_matrix(g, spec.pi).d, spec.d * lambda_antisym(n, 1), atol=1e-10)


@pytest.mark.parametrize("n", [3, 4, 6, 9])
def test_prescribed_structure_exact(n):
    spec = random_spec(n, "one_ne", seed=n, exact=True)
    g = synth_one_ne(spec)
    assert g.exact
    assert (stationary_distribution(g).pi == spec.pi).all()
    assert (current_matrix(g, spec.pi).d == spec.d * lambda_antisym(n, 1)).all()


def test_regimes():
    for seed in range(5):
        g = random_instance(6, "equilibrium", seed=seed)
        assert np.abs(current_matrix(g, stationary_distribution(g)).d).max() <= 1e-10
        assert detect_k_nonequilibrium(current_matrix(g, stationary_distribution(g))) is None
        hit = detect_k_nonequilibrium(current_matrix(*(lambda g: (g, stationary_distribution(g)))(random_instance(5, "one_ne", seed=seed))))
        assert hit.k == 1


@pytest.mark.parametrize("n", range(3, 11))
def test_k_ne_regime(n):
    for k in range(1, n):
        if 2 * k == n or gcd(k, n) != 1:
            continue
        spec = random_spec(n, "k_ne", seed=10 * n + k, k=k)
        g = synth_k_ne(spec)
        hit = detect_k_nonequilibrium(current_matrix(g, stationary_distribution(g)))
        want = (k, spec.d) if k <= n // 2 else (n - k, -spec.d)
        assert hit.k == want[0] and hit.d == pytest.approx(want[1], abs=1e-10)


def test_determinism():
    for regime in ("equilibrium", "one_ne", "generic"):
        a, b = random_instance(6, regime, seed=42), random_instance(6, regime, seed=42)
        assert a.q.tobytes() == b.q.tobytes()
    assert random_instance(6, "generic", seed=1).q.tobytes() != random_instance(6, "generic", seed=2).q.tobytes()


def test_generic_regime_not_one_ne():
    invalid = 0
    for seed in range(50):
        res = solve_one_ne(random_instance(4 + seed % 5, "generic", seed=seed))
        invalid += not res.valid
    assert invalid >= 49

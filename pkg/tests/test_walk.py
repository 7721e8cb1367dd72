import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from barrierwalk.errors import BoundaryOverflow, BudgetExceeded
from barrierwalk.walk import (
    BarrierParams,
    CoinState,
    InitialState,
    ShiftKind,
    apply_coin,
    apply_shift,
    evolve,
    new_field,
    probabilities,
    step,
)

S2 = 1.0 / math.sqrt(2.0)
FF, MV = ShiftKind.FLIP_FLOP, ShiftKind.MOVING
LEFT, UNBIASED = InitialState.LEFT_LOCALIZED, InitialState.UNBIASED


def dense_step_operator(radius, kind, alpha=1.0, beta=0.0):
    """Build U on sites -radius..radius straight from the basis-state rules.

    Basis index = 2 * (n + radius) + c, with c = 0 for left, 1 for right.
    """
    size = 2 * (2 * radius + 1)
    idx = lambda n, c: 2 * (n + radius) + c
    coin = np.zeros((size, size), dtype=complex)
    shift = np.zeros((size, size), dtype=complex)
    for n in range(-radius, radius + 1):
        # H|L> = (|L> + |R>)/sqrt2, H|R> = (|L> - |R>)/sqrt2
        coin[idx(n, 0), idx(n, 0)] = S2
        coin[idx(n, 1), idx(n, 0)] = S2
        coin[idx(n, 0), idx(n, 1)] = S2
        coin[idx(n, 1), idx(n, 1)] = -S2
        shift[idx(n, 0), idx(n, 0)] += beta
        shift[idx(n, 1), idx(n, 1)] += beta
        if kind is FF:
            targets = [((n, 0), (n - 1, 1)), ((n, 1), (n + 1, 0))]
        else:
            targets = [((n, 0), (n - 1, 0)), ((n, 1), (n + 1, 1))]
        for (src, dst) in targets:
            if -radius <= dst[0] <= radius:
                shift[idx(*dst), idx(*src)] += alpha
    return shift @ coin


def flat(field):
    return field.amplitudes.reshape(-1)


# ---- construction -------------------------------------------------------

def test_new_field_left_localized():
    f = new_field(0, LEFT)
    assert f.offset == -1 and len(f.amplitudes) == 3
    assert f.amplitude(0) == CoinState(1, 0)
    assert f.amplitude(1) == CoinState(0, 0)
    assert f.amplitude(-1) == CoinState(0, 0)


def test_new_field_unbiased():
    f = new_field(5, UNBIASED)
    assert f.positions[0] == -6 and f.positions[-1] == 6
    np.testing.assert_allclose(f.amplitude(0), [S2, 1j * S2], atol=0)


def test_new_field_norm_exact():
    assert new_field(100, LEFT).norm() == 1.0


def test_new_field_rejects_negative_budget():
    with pytest.raises(ValueError):
        new_field(-1, LEFT)


# ---- coin ---------------------------------------------------------------

@pytest.mark.parametrize(
    "before, after",
    [
        ((1, 0), (S2, S2)),
        ((S2, S2), (1, 0)),
        ((0, 1), (S2, -S2)),
    ],
)
def test_apply_coin(before, after):
    f = apply_coin(new_field(0, CoinState(*before)))
    np.testing.assert_allclose(f.amplitude(0), after, atol=1e-15)


# ---- shift --------------------------------------------------------------

def test_flip_flop_shift_basis_state():
    f = apply_shift(new_field(1, LEFT), FF)
    assert f.amplitude(-1) == CoinState(0, 1)
    assert f.amplitude(0) == CoinState(0, 0)


def test_flip_flop_shift_with_barrier():
    b = BarrierParams(0.8)
    f = apply_shift(new_field(1, LEFT), FF, b)
    np.testing.assert_allclose(f.amplitude(-1), [0, math.cos(0.8)], atol=1e-16)
    np.testing.assert_allclose(f.amplitude(0), [1j * math.sin(0.8), 0], atol=1e-16)
    assert f.unitary


def test_moving_shift_with_barrier_loses_norm():
    b = BarrierParams(0.8)
    f = evolve(new_field(4, LEFT), MV, b, 3)
    out = apply_shift(apply_coin(f), MV, b)
    assert not out.unitary
    assert abs(out.norm() - 1.0) > 1e-3


def test_shift_overflow():
    f = new_field(0, CoinState(0, 0))
    amps = f.amplitudes.copy()
    amps[0, 0] = 1.0  # left-mover on the leftmost stored site
    with pytest.raises(BoundaryOverflow):
        apply_shift(replace(f, amplitudes=amps), FF)


@pytest.mark.parametrize("kind", [FF, MV])
@pytest.mark.parametrize("phi", [None, 0.3, 0.8, math.pi / 2])
def test_step_matches_dense_operator(kind, phi):
    radius = 6
    b = None if phi is None else BarrierParams(phi)
    alpha, beta = (1.0, 0.0) if b is None else (b.alpha, b.beta)
    U = dense_step_operator(radius, kind, alpha, beta)
    f = new_field(radius - 1, UNBIASED)
    vec = flat(f)
    for _ in range(radius - 1):
        f = step(f, kind, b)
        vec = U @ vec
        np.testing.assert_allclose(flat(f), vec, atol=1e-14)


def test_step_matches_transfer_matrices():
    # psi(n,t+1) = M+ psi(n-1,t) + M- psi(n+1,t) + M0 psi(n,t)
    b = BarrierParams(0.6)
    a, be = b.alpha, b.beta
    mp = np.array([[a, -a], [0, 0]]) * S2
    mm = np.array([[0, 0], [a, a]]) * S2
    m0 = np.array([[be, be], [be, -be]]) * S2
    f = evolve(new_field(8, UNBIASED), FF, b, 5)
    g = step(f, FF, b)
    for n in range(-7, 8):
        expected = mp @ np.array(f.amplitude(n - 1)) + mm @ np.array(f.amplitude(n + 1)) \
            + m0 @ np.array(f.amplitude(n))
        np.testing.assert_allclose(g.amplitude(n), expected, atol=1e-15)


def test_two_steps_flip_flop():
    # (1/2)[|-2,R> - |0,L> + |0,R> + |2,L>]: the sign on |2,L> follows
    # from the transfer-matrix recurrence
    f = evolve(new_field(2, LEFT), FF, None, 2)
    expected = {-2: (0, 0.5), -1: (0, 0), 0: (-0.5, 0.5), 1: (0, 0), 2: (0.5, 0)}
    for n, amp in expected.items():
        np.testing.assert_allclose(f.amplitude(n), amp, atol=1e-14)


def test_two_steps_moving():
    f = evolve(new_field(2, LEFT), MV, None, 2)
    expected = {-2: (0.5, 0), -1: (0, 0), 0: (0.5, 0.5), 1: (0, 0), 2: (0, -0.5)}
    for n, amp in expected.items():
        np.testing.assert_allclose(f.amplitude(n), amp, atol=1e-14)


def test_one_step_with_barrier():
    c, s = math.cos(0.8), math.sin(0.8)
    f = step(new_field(1, LEFT), FF, BarrierParams(0.8))
    np.testing.assert_allclose(f.amplitude(-1), [0, c * S2], atol=1e-16)
    np.testing.assert_allclose(f.amplitude(1), [c * S2, 0], atol=1e-16)
    np.testing.assert_allclose(f.amplitude(0), [1j * s * S2, 1j * s * S2], atol=1e-16)
    assert f.t == 1


# ---- evolve / probabilities ---------------------------------------------

def test_evolve_zero_is_identity():
    f = new_field(3, UNBIASED)
    g = evolve(f, FF, BarrierParams(0.4), 0)
    np.testing.assert_array_equal(f.amplitudes, g.amplitudes)
    assert g.t == 0


def test_evolve_budget():
    f = evolve(new_field(4, LEFT), FF, None, 3)
    with pytest.raises(BudgetExceeded):
        evolve(f, FF, None, 2)


def test_flip_flop_becomes_right_moving():
    p = probabilities(evolve(new_field(100, LEFT), FF, None, 100))
    right = sum(v for n, v in p.items() if n > 0)
    left = sum(v for n, v in p.items() if n < 0)
    assert right > 3 * left
    peak = max(p, key=p.get)
    assert peak > 50
    assert p[peak] > 5 * max(v for n, v in p.items() if n < 0)


def test_probabilities_initial():
    assert probabilities(new_field(3, LEFT)) == {0: 1.0}


def test_probabilities_two_steps():
    p = probabilities(evolve(new_field(2, LEFT), FF, None, 2))
    expected = {-2: 0.25, -1: 0.0, 0: 0.5, 1: 0.0, 2: 0.25}
    assert p.keys() == expected.keys()
    for n in p:
        assert p[n] == pytest.approx(expected[n], abs=1e-15)


# ---- invariants ---------------------------------------------------------

def test_flip_flop_unitary_1000_steps():
    f = new_field(1000, LEFT)
    b = BarrierParams(0.8)
    for _ in range(1000):
        f = step(f, FF, b)
        assert abs(f.norm() - 1.0) < 1e-12
    assert f.unitary


@settings(max_examples=25, deadline=None)
@given(phi=st.floats(0.0, math.pi / 2), steps=st.integers(1, 60),
       init=st.sampled_from(list(InitialState)))
def test_flip_flop_unitary_any_barrier(phi, steps, init):
    f = evolve(new_field(steps, init), FF, BarrierParams(phi), steps)
    assert abs(f.norm() - 1.0) < 1e-12


def test_moving_nonunitary_within_ten_steps():
    f = new_field(10, LEFT)
    deviations = []
    for _ in range(10):
        f = step(f, MV, BarrierParams(0.8))
        deviations.append(abs(f.norm() - 1.0))
    assert max(deviations) > 1e-3
    assert not f.unitary


def test_reflection_symmetry():
    ff = new_field(200, LEFT)
    mv = new_field(200, LEFT)
    for t in range(1, 201):
        ff, mv = step(ff, FF), step(mv, MV)
        if t % 2 == 0:
            pf, pm = ff.probability_array(), mv.probability_array()
            assert np.max(np.abs(pf - pm[::-1])) < 1e-12


def test_unbiased_shifts_agree():
    ff = new_field(200, UNBIASED)
    mv = new_field(200, UNBIASED)
    for _ in range(200):
        ff, mv = step(ff, FF), step(mv, MV)
        assert np.max(np.abs(ff.probability_array() - mv.probability_array())) < 1e-12


def test_barrier_free_walk_is_real():
    f = evolve(new_field(150, LEFT), FF, None, 150)
    assert np.all(f.amplitudes.imag == 0)


@pytest.mark.parametrize("kind", [FF, MV])
def test_real_and_imaginary_parts_evolve_separately(kind):
    t = 80
    joint = evolve(new_field(t, UNBIASED), kind, None, t)
    re_part = evolve(new_field(t, CoinState(S2, 0)), kind, None, t)
    im_part = evolve(new_field(t, CoinState(0, 1j * S2)), kind, None, t)
    np.testing.assert_allclose(re_part.amplitudes + im_part.amplitudes, joint.amplitudes,
                               atol=1e-12)
    # the two pieces never mix: one stays real, the other purely imaginary
    assert np.all(re_part.amplitudes.imag == 0)
    assert np.all(im_part.amplitudes.real == 0)


@pytest.mark.parametrize("phi", [None, 0.8])
def test_support_bound(phi):
    b = None if phi is None else BarrierParams(phi)
    f = new_field(30, LEFT)
    for t in range(1, 31):
        f = step(f, FF, b)
        outside = np.abs(f.positions) > t
        assert np.all(f.probability_array()[outside] == 0)


def test_parity_barrier_free():
    f = new_field(100, LEFT)
    for t in range(1, 101):
        f = step(f, FF)
        wrong = (f.positions + t) % 2 == 1
        assert np.all(f.probability_array()[wrong] == 0)


def test_parity_broken_by_barriers():
    f = evolve(new_field(100, LEFT), FF, BarrierParams(0.8), 100)
    p = f.probability_array()
    assert p[f.positions % 2 == 1].max() > 1e-6


# ---- barrier parameters -------------------------------------------------

@pytest.mark.parametrize("phi", [0.0, 0.2, 0.8, 1.2, math.pi / 2])
def test_barrier_constraints(phi):
    b = BarrierParams(phi)
    a, be = b.alpha, b.beta
    assert abs(a) ** 2 + abs(be) ** 2 == pytest.approx(1.0, abs=1e-15)
    assert a * be.conjugate() + be * a == pytest.approx(0, abs=1e-15)
    assert a**2 - be**2 == pytest.approx(1.0, abs=1e-15)


def test_barrier_from_alpha():
    assert BarrierParams.from_alpha(math.cos(0.8)).phi == pytest.approx(0.8, abs=1e-14)
    with pytest.raises(ValueError):
        BarrierParams.from_alpha(1.5)
    with pytest.raises(ValueError):
        BarrierParams(-0.1)

import math

import numpy as np
import pytest

from modules.channel import (
    V_BAR,
    ChannelModel,
    ChannelVariant,
    channel_dispersion,
    erase,
    erasure_mask,
    fbl_epsilon,
    fbl_epsilon_limit,
    fbl_rate,
    poisson_active_pmf,
    qfunc,
    ra_epsilon_general,
    ra_epsilon_poisson,
    simulate_ra_collisions,
)
from modules.codec import krep_encode
from modules.errors import ParameterError


def _q_reference(x):
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def test_qfunc_values():
    assert qfunc(0.0) == 0.5
    assert qfunc(40.0) == pytest.approx(0.0, abs=1e-300)
    assert qfunc(-40.0) == 1.0
    assert qfunc(4.002) == pytest.approx(3.14e-5, rel=1e-2)


@pytest.mark.parametrize("x", np.linspace(-8, 8, 33))
def test_qfunc_symmetry(x):
    assert qfunc(x) + qfunc(-x) == pytest.approx(1.0, abs=1e-12)
    assert qfunc(x) == pytest.approx(_q_reference(x), rel=1e-12, abs=1e-15)


def test_qfunc_vectorised():
    values = qfunc(np.array([0.0, 1.0]))
    assert values.shape == (2,)
    assert values[0] == 0.5


def test_channel_dispersion():
    assert channel_dispersion(1.0) == pytest.approx(0.75 * V_BAR)
    assert channel_dispersion(1.0) == pytest.approx(1.5610, abs=1e-4)
    assert channel_dispersion(math.inf) == pytest.approx(2.0814, abs=1e-4)
    assert channel_dispersion(1e-9) < 1e-8
    with pytest.raises(ParameterError):
        channel_dispersion(0.0)


def test_fbl_epsilon_reference_point():
    x = math.sqrt(100 / (0.75 * V_BAR)) * 0.5
    assert fbl_epsilon(1.0, 100, 50) == pytest.approx(_q_reference(x), rel=1e-9)
    assert fbl_epsilon(1.0, 100, 50) == pytest.approx(3.14e-5, rel=1e-2)


def test_fbl_epsilon_at_capacity():
    assert fbl_epsilon(1.0, 100, 100) == 0.5
    assert fbl_epsilon(1.0, 100, 150) > 0.5


def test_fbl_epsilon_monotone():
    by_n = [fbl_epsilon(1.0, n, n // 2) for n in (50, 100, 200, 400)]
    assert by_n == sorted(by_n, reverse=True)
    by_nbit = [fbl_epsilon(1.0, 100, nbit) for nbit in (30, 40, 50, 60, 70)]
    assert by_nbit == sorted(by_nbit)


def test_fbl_rate_inverts_epsilon():
    rate = fbl_rate(1.0, 100, 1e-3)
    assert fbl_epsilon(1.0, 100, 100 * rate) == pytest.approx(1e-3, rel=1e-6)


def test_high_snr_floor():
    rho, n = 1e6, 100
    nbit = round(n * (math.log2(1 + rho) - 0.5))
    delta = math.log2(1 + rho) - nbit / n
    floor = fbl_epsilon_limit(delta, n)
    assert floor > 0
    assert fbl_epsilon(rho, n, nbit) == pytest.approx(floor, rel=1e-6)


def test_ra_epsilon_poisson_values():
    assert ra_epsilon_poisson(1.0, 100) == pytest.approx(5.8e-3, rel=1e-2)
    # Tải nhẹ: ε ≈ λ/(2L)
    assert ra_epsilon_poisson(0.01, 10_000) == pytest.approx(0.01 / 20_000, rel=1e-2)


def test_ra_epsilon_poisson_monotone():
    by_lam = [ra_epsilon_poisson(lam, 100) for lam in (0.1, 1, 5, 20)]
    assert by_lam == sorted(by_lam)
    by_L = [ra_epsilon_poisson(5, L) for L in (10, 100, 1000)]
    assert by_L == sorted(by_L, reverse=True)
    with pytest.raises(ParameterError):
        ra_epsilon_poisson(1.0, 1)
    with pytest.raises(ParameterError):
        ra_epsilon_poisson(0.0, 10)


def test_ra_epsilon_general_degenerate():
    assert ra_epsilon_general([1.0], 50) == 0.0
    assert ra_epsilon_general([0.0, 1.0], 50) == pytest.approx(1 / 50)
    assert ra_epsilon_general(lambda m: (np.asarray(m) == 2).astype(float), 50) == pytest.approx(1 / 50)


@pytest.mark.parametrize("lam, L", [(1.0, 100), (5.0, 50), (0.2, 10)])
def test_ra_general_matches_closed_form(lam, L):
    assert ra_epsilon_general(poisson_active_pmf(lam), L) == pytest.approx(ra_epsilon_poisson(lam, L), abs=1e-10)


def test_ra_general_rejects_unnormalised_pmf():
    with pytest.raises(ParameterError):
        ra_epsilon_general([0.5, 0.4], 10)
    with pytest.raises(ParameterError):
        ra_epsilon_general(lambda m: np.full(np.shape(m), 0.5), 10)


def test_collision_monte_carlo_matches_closed_form():
    eps = ra_epsilon_poisson(1.0, 100)
    trials = 1_000_000
    rate = simulate_ra_collisions(1.0, 100, trials, np.random.default_rng(11))
    assert abs(rate - eps) < 4 * math.sqrt(eps * (1 - eps) / trials)


def test_channel_model_validation():
    with pytest.raises(ParameterError):
        ChannelModel.fixed(1.5)
    with pytest.raises(ParameterError):
        ChannelModel.finite_blocklength(0.0, 100, 50)
    with pytest.raises(ParameterError):
        ChannelModel.finite_blocklength(1.0, 0, 50)
    with pytest.raises(ParameterError):
        ChannelModel.random_access(1.0, 1)
    model = ChannelModel.random_access(1.0, 100)
    assert model.variant is ChannelVariant.RANDOM_ACCESS
    assert model.epsilon == ra_epsilon_poisson(1.0, 100)
    assert ChannelModel.finite_blocklength(1.0, 100, 50).epsilon == fbl_epsilon(1.0, 100, 50)


def test_erase_extremes():
    packet = krep_encode(1, 1, np.zeros(2, dtype=np.uint8))[0]
    rng = np.random.default_rng(0)
    assert all(not erase(ChannelModel.fixed(0.0), rng, packet).erased for _ in range(1000))
    assert all(erase(ChannelModel.fixed(1.0), rng, packet).erased for _ in range(1000))


def test_erase_keeps_block_and_slot():
    packet = krep_encode(3, 7, np.zeros(1, dtype=np.uint8))[2]
    received = erase(ChannelModel.fixed(1.0), np.random.default_rng(0), packet)
    assert received.packet is None
    assert (received.block, received.slot) == (7, 3)


def test_mask_uses_the_same_stream_as_erase():
    model = ChannelModel.fixed(0.4)
    packet = krep_encode(1, 1, np.zeros(1, dtype=np.uint8))[0]
    rng = np.random.default_rng(5)
    one_by_one = [erase(model, rng, packet).erased for _ in range(60)]
    mask = erasure_mask(model, np.random.default_rng(5), (20, 3))
    assert mask.reshape(-1).tolist() == one_by_one


@pytest.mark.parametrize("eps", [0.01, 0.1, 0.3])
def test_erasure_rate(eps):
    draws = 1_000_000
    mask = erasure_mask(ChannelModel.fixed(eps), np.random.default_rng(int(eps * 1000)), draws)
    assert abs(mask.mean() - eps) < 4 * math.sqrt(eps * (1 - eps) / draws)


@pytest.mark.slow
def test_ra_collision_ten_million_trials():
    eps = ra_epsilon_poisson(1.0, 100)
    trials = 10_000_000
    rate = simulate_ra_collisions(1.0, 100, trials, np.random.default_rng(2024))
    assert abs(rate - eps) < 3 * math.sqrt(eps * (1 - eps) / trials)

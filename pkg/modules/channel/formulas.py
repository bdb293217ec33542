"""
Channel Formulas - Xác suất xoá gói theo mô hình blocklength hữu hạn và truy nhập ngẫu nhiên
"""
from __future__ import annotations

import logging
import math
from typing import Callable, Sequence, Union

import numpy as np
from scipy.special import erfc
from scipy.stats import norm, poisson

from ..errors import ParameterError

logger = logging.getLogger(__name__)

LOG2E = math.log2(math.e)
# Dispersion giới hạn khi SNR -> vô cùng, (log2 e)^2
V_BAR = LOG2E ** 2

DEFAULT_TAIL_TOL = 1e-12
PMF_NORMALISATION_TOL = 1e-9
_PMF_CHUNK = 4096
_PMF_MAX_TERMS = 10_000_000

Pmf = Union[Sequence[float], Callable[[np.ndarray], np.ndarray]]


def qfunc(x):
    """Q(x) = P[N(0,1) > x], tính qua erfc nên chính xác cả ở đuôi"""
    value = 0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))
    return float(value) if np.ndim(value) == 0 else value


def qfunc_inv(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise ParameterError(f"Q^-1 needs 0 < p < 1, got {p}")
    return float(norm.isf(p))


def _check_snr(rho: float) -> float:
    rho = float(rho)
    if not rho > 0:
        raise ParameterError(f"SNR must be > 0 (linear scale), got {rho}")
    return rho


def channel_dispersion(rho: float) -> float:
    """V(ρ) = ρ(2+ρ)/(1+ρ)² · (log2 e)²; ρ = inf cho V̄"""
    rho = _check_snr(rho)
    if math.isinf(rho):
        return V_BAR
    # ρ(2+ρ)/(1+ρ)² = 1 - 1/(1+ρ)²
    return (1.0 - 1.0 / (1.0 + rho) ** 2) * V_BAR


def _check_blocklength(n: int, nbit: int) -> None:
    if n < 1:
        raise ParameterError(f"blocklength n must be >= 1, got {n}")
    if nbit < 1:
        raise ParameterError(f"message size N_bit must be >= 1, got {nbit}")


def fbl_epsilon(rho: float, n: int, nbit: int) -> float:
    """Xấp xỉ chuẩn: ε = Q( sqrt(n/V(ρ)) · (log2(1+ρ) - N_bit/n) ).

    Bỏ số hạng O(log2 n / n); ε > 0.5 khi tốc độ vượt dung lượng.
    """
    rho = _check_snr(rho)
    _check_blocklength(n, nbit)
    if math.isinf(rho):
        return 0.0
    delta = math.log2(1.0 + rho) - nbit / n
    return qfunc(math.sqrt(n / channel_dispersion(rho)) * delta)


def fbl_rate(rho: float, n: int, epsilon: float) -> float:
    """Tốc độ đạt được (bit/lần dùng kênh) ở xác suất lỗi ε: log2(1+ρ) - sqrt(V/n)·Q^-1(ε)"""
    rho = _check_snr(rho)
    if n < 1:
        raise ParameterError(f"blocklength n must be >= 1, got {n}")
    return math.log2(1.0 + rho) - math.sqrt(channel_dispersion(rho) / n) * qfunc_inv(epsilon)


def fbl_epsilon_limit(delta: float, n: int) -> float:
    """Sàn lỗi khi ρ -> vô cùng với khoảng cách δ = log2(1+ρ) - N_bit/n giữ cố định"""
    if n < 1:
        raise ParameterError(f"blocklength n must be >= 1, got {n}")
    return qfunc(math.sqrt(n / V_BAR) * delta)


def _check_ra(lam: float, L: int) -> None:
    if not lam > 0:
        raise ParameterError(f"mean load λ must be > 0, got {lam}")
    if L < 2:
        raise ParameterError(f"preamble pool L must be >= 2, got {L}")


def ra_epsilon_poisson(lam: float, L: int) -> float:
    """ε = 1 - (e^{-λ/L} - e^{-λ}) / ((1 - e^{-λ})(1 - 1/L)), M | M >= 1 ~ Poisson(λ)"""
    _check_ra(lam, L)
    # Tử số viết lại bằng expm1 để không mất chữ số khi λ nhỏ
    numerator = -math.expm1(-lam / L) + math.expm1(-lam) / L
    denominator = -math.expm1(-lam) * (1.0 - 1.0 / L)
    return min(1.0, max(0.0, numerator / denominator))


def poisson_active_pmf(lam: float) -> Callable[[np.ndarray], np.ndarray]:
    """pmf của số thiết bị hoạt động M với điều kiện M >= 1, M ~ Poisson(λ)"""
    if not lam > 0:
        raise ParameterError(f"mean load λ must be > 0, got {lam}")
    active = -math.expm1(-lam)

    def pmf(m):
        m = np.asarray(m)
        return np.where(m >= 1, poisson.pmf(m, lam) / active, 0.0)

    return pmf


def _evaluate(pmf: Callable, ms: np.ndarray) -> np.ndarray:
    values = np.asarray(pmf(ms), dtype=float)
    if values.shape != ms.shape:
        values = np.array([float(pmf(int(m))) for m in ms])
    return values


def ra_epsilon_general(pmf: Pmf, L: int, tail_tol: float = DEFAULT_TAIL_TOL) -> float:
    """ε = 1 - Σ_{m>=1} (1 - 1/L)^{m-1} pmf(m).

    pmf: dãy (phần tử i ứng với m = i+1) hoặc hàm nhận mảng m. Chuỗi được cắt
    khi khối lượng còn lại < tail_tol; số hạng bị chặn bởi pmf(m) nên sai số cũng vậy.
    """
    if L < 2:
        raise ParameterError(f"preamble pool L must be >= 2, got {L}")
    ratio = 1.0 - 1.0 / L

    if not callable(pmf):
        probs = np.asarray(pmf, dtype=float)
        if probs.ndim != 1 or probs.size == 0 or np.any(probs < 0):
            raise ParameterError("pmf must be a non-empty sequence of non-negative probabilities")
        if abs(probs.sum() - 1.0) > PMF_NORMALISATION_TOL:
            raise ParameterError(f"pmf sums to {probs.sum():.12g}, expected 1")
        success = float(np.sum(probs * ratio ** np.arange(probs.size)))
        return min(1.0, max(0.0, 1.0 - success))

    mass, success, start = 0.0, 0.0, 1
    while 1.0 - mass >= tail_tol:
        if start > _PMF_MAX_TERMS:
            raise ParameterError(f"pmf mass {mass:.12g} after {_PMF_MAX_TERMS} terms, expected 1")
        ms = np.arange(start, start + _PMF_CHUNK)
        probs = _evaluate(pmf, ms)
        if np.any(probs < 0):
            raise ParameterError("pmf has negative entries")
        mass += float(probs.sum())
        success += float(np.sum(probs * ratio ** (ms - 1)))
        start += _PMF_CHUNK
        if mass > 1.0 + PMF_NORMALISATION_TOL:
            raise ParameterError(f"pmf sums to {mass:.12g}, expected 1")
        if not probs.any() and 1.0 - mass > PMF_NORMALISATION_TOL and start > 64 * _PMF_CHUNK:
            raise ParameterError(f"pmf sums to {mass:.12g}, expected 1")
    logger.debug("ra_epsilon_general: %d terms, residual mass %.3g", start - 1, 1.0 - mass)
    return min(1.0, max(0.0, 1.0 - success))

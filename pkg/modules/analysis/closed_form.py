"""
Closed Form - Các biểu thức giải tích cho K-repetition, RLNC và SNC
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.special import gammaln

from ..design import SncDesign, compute_mu, lemma3_exponent
from ..errors import ParameterError

logger = logging.getLogger(__name__)

# Giới hạn kích thước cho phép tính tổng đan dấu bằng số nguyên chính xác
NZ_MAX_S = 64
NZ_MAX_M = 16
NZ_MAX_Q = 256
# So sánh với mức mục tiêu có dung sai tương đối (0.1**6 > 1e-6 trong dấu phẩy động)
TARGET_REL_TOL = 1e-9


class SchemeKind(Enum):
    KREP = "krep"
    SNC = "snc"
    BLOCK_NC = "block_nc"


@dataclass(frozen=True)
class ErrorEstimate:
    """Xác suất lỗi giải tích: giá trị đúng (nếu có), số hạng bậc thấp nhất và số mũ của nó"""
    leading: float
    exponent: Optional[int]
    exact: Optional[float] = None
    is_upper_bound: bool = False

    @property
    def value(self) -> float:
        """Giá trị dùng để so sánh: exact nếu có, ngược lại là số hạng chính"""
        return self.exact if self.exact is not None else self.leading


def _check_epsilon(eps: float) -> float:
    eps = float(eps)
    if not 0.0 <= eps <= 1.0:
        raise ParameterError(f"epsilon must lie in [0, 1], got {eps}")
    return eps


def krep_error(eps: float, K: int) -> ErrorEstimate:
    """ε_K = ε^K"""
    eps = _check_epsilon(eps)
    if K < 1:
        raise ParameterError(f"K={K} must be >= 1")
    value = eps ** K
    return ErrorEstimate(leading=value, exponent=K, exact=value, is_upper_bound=False)


def rlnc_rank_prob(S: int, M: int, q: int) -> float:
    """P(S vector ngẫu nhiên đều trên GF(q)^M có hạng M) = Π_{n=0}^{M-1} (1 - q^{-(S-n)})"""
    if M < 1:
        raise ParameterError(f"M={M} must be >= 1")
    if S < M:
        return 0.0
    log_q = math.log(q)
    return math.prod(-math.expm1(-(S - n) * log_q) for n in range(M))


def _full_rank_count(q: int, m: int, n: int) -> int:
    # Số cách chọn m vector độc lập tuyến tính trong GF(q)^n
    count = 1
    qn = q ** n
    for j in range(m):
        count *= qn - q ** j
    return count


def rlnc_rank_prob_nz(S: int, M: int, q: int) -> float:
    """Như rlnc_rank_prob nhưng các vector hệ số toàn 0 bị loại.

    Tổng đan dấu bị triệt tiêu mạnh trong dấu phẩy động nên được tính bằng phân số chính xác.
    """
    if M < 1:
        raise ParameterError(f"M={M} must be >= 1")
    if S > NZ_MAX_S or M > NZ_MAX_M or q > NZ_MAX_Q:
        raise ParameterError(
            f"exact evaluation limited to S <= {NZ_MAX_S}, M <= {NZ_MAX_M}, q <= {NZ_MAX_Q}; got S={S}, M={M}, q={q}")
    if S < M:
        return 0.0
    total = sum((-1) ** n * math.comb(S, n) * _full_rank_count(q, M, S - n) for n in range(S - M + 1))
    return float(Fraction(total, (q ** M - 1) ** S))


def rlnc_all_success(N: int, M: int, eps: float, q: int) -> float:
    """P(giải được cả M gói) = Σ_{s=M}^{N} P_{s,M} · C(N,s) (1-ε)^s ε^{N-s}, hệ số nhị thức trong log"""
    eps = _check_epsilon(eps)
    if N < M:
        raise ParameterError(f"N={N} must be >= M={M}")
    if eps == 0.0:
        return rlnc_rank_prob(N, M, q)
    if eps == 1.0:
        return 0.0
    s = np.arange(M, N + 1)
    log_binom = gammaln(N + 1) - gammaln(s + 1) - gammaln(N - s + 1)
    log_weight = log_binom + s * math.log1p(-eps) + (N - s) * math.log(eps)
    ranks = np.array([rlnc_rank_prob(int(k), M, q) for k in s])
    return float(np.sum(ranks * np.exp(log_weight)))


def krep_all_success(N: int, M: int, eps: float, K: int) -> float:
    """(1 - ε^K)^M"""
    eps = _check_epsilon(eps)
    if N != M * K:
        raise ParameterError(f"K-repetition sends N = MK packets, got N={N}, M={M}, K={K}")
    return (1.0 - eps ** K) ** M


def snc_simple_error(eps: float, K: int) -> ErrorEstimate:
    """Thiết kế simple:K: ε^K (1-(1-ε)²)^{K-1}, số hạng chính 2^{K-1} ε^{2K-1}"""
    eps = _check_epsilon(eps)
    if K < 2:
        raise ParameterError(f"K={K} must be >= 2")
    exact = eps ** K * (1.0 - (1.0 - eps) ** 2) ** (K - 1)
    leading = 2 ** (K - 1) * eps ** (2 * K - 1)
    return ErrorEstimate(leading=leading, exponent=2 * K - 1, exact=exact, is_upper_bound=True)


def snc_lemma3_bound(eps: float, d: SncDesign) -> ErrorEstimate:
    """Cận 2^D ε^{μ+D} cho thiết kế thoả điều kiện đường chéo"""
    eps = _check_epsilon(eps)
    exponent = lemma3_exponent(d)
    logger.debug("%s: mu=%d, exponent=%d", d.name, compute_mu(d), exponent)
    return ErrorEstimate(leading=2 ** d.D * eps ** exponent, exponent=exponent, is_upper_bound=True)


def table1_first_packet_error(eps: float) -> float:
    """Thiết kế K=2, D=1: P_1 = ε² (1-(1-ε)²), cũng là P_m ở trạng thái ổn định"""
    eps = _check_epsilon(eps)
    return eps ** 2 * (1.0 - (1.0 - eps) ** 2)


def decode_delay_slots(scheme: SchemeKind, K: int, D: Optional[int] = None, M: Optional[int] = None) -> int:
    """Độ trễ giải mã tính theo slot.

    KREP: K; SNC: K(D+1), mặc định D = K-1 (thiết kế simple, K² slot); BLOCK_NC: 2MK.
    """
    if K < 1:
        raise ParameterError(f"K={K} must be >= 1")
    if scheme is SchemeKind.KREP:
        return K
    if scheme is SchemeKind.SNC:
        return K * ((K - 1 if D is None else D) + 1)
    if M is None or M < 1:
        raise ParameterError("block NC delay needs the message length M >= 1")
    return 2 * M * K


def min_repetitions(eps: float, target: float, scheme: SchemeKind = SchemeKind.KREP, k_max: int = 64) -> int:
    """K nhỏ nhất để xác suất lỗi giải tích không vượt target"""
    eps = _check_epsilon(eps)
    if scheme is SchemeKind.BLOCK_NC:
        raise ParameterError(f"min_repetitions does not apply to {scheme.value}")
    start = 1 if scheme is SchemeKind.KREP else 2
    for K in range(start, k_max + 1):
        estimate = krep_error(eps, K) if scheme is SchemeKind.KREP else snc_simple_error(eps, K)
        if estimate.exact <= target * (1.0 + TARGET_REL_TOL):
            return K
    raise ParameterError(f"no K <= {k_max} reaches error {target:g} at epsilon {eps:g}")

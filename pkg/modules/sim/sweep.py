"""
Sweep - Quét tham số theo ε hoặc K, ghép kết quả mô phỏng với đường giải tích tương ứng
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

from ..analysis import (
    ErrorEstimate,
    SchemeKind,
    krep_error,
    rlnc_all_success,
    snc_lemma3_bound,
    snc_simple_error,
)
from ..channel import ChannelModel
from ..design import SncDesign, builtin, check_diag_condition, generate_min_delay
from .config import Scheme, SimConfig
from .engine import run
from .statistics import Estimate

logger = logging.getLogger(__name__)


class SweepAxis(Enum):
    EPSILON = "epsilon"
    K = "K"


@dataclass(frozen=True)
class SweepRow:
    scheme: Scheme
    epsilon: float
    estimate: Estimate
    analytic: Optional[ErrorEstimate] = None


def is_simple(d: SncDesign) -> bool:
    """Thiết kế simple:K: q = 2, D = K-1, C là ma trận đơn vị"""
    identity = tuple(tuple(int(i == j) for j in range(d.D)) for i in range(d.D))
    return d.q == 2 and d.D == d.K - 1 and d.C == identity


def analytic_for(scheme: Scheme, eps: float, session_packets: int) -> Optional[ErrorEstimate]:
    """Đường giải tích ứng với đại lượng mà sweep đo cho phương án này"""
    if scheme.kind is SchemeKind.KREP:
        return krep_error(eps, scheme.K)
    if scheme.kind is SchemeKind.BLOCK_NC:
        M = session_packets
        value = 1.0 - rlnc_all_success(M * scheme.K, M, eps, scheme.q)
        return ErrorEstimate(leading=value, exponent=None, exact=value)
    d = scheme.design
    if is_simple(d):
        return snc_simple_error(eps, d.K)
    if check_diag_condition(d):
        return snc_lemma3_bound(eps, d)
    return None


def scheme_with_K(scheme: Scheme, K: int) -> Scheme:
    if scheme.kind is SchemeKind.KREP:
        return Scheme.krep(K, q=scheme.q)
    if scheme.kind is SchemeKind.BLOCK_NC:
        return Scheme.block_nc(K, q=scheme.q, exclude_zero=scheme.exclude_zero)
    if is_simple(scheme.design):
        return Scheme.snc(builtin(f"simple:{K}"))
    return Scheme.snc(generate_min_delay(K, scheme.q))


def sweep(template: SimConfig, axis: SweepAxis, values: Sequence[float],
          schemes: Sequence[Scheme]) -> List[SweepRow]:
    """Một hàng cho mỗi (phương án, giá trị trục).

    BLOCK_NC được đo bằng tỉ lệ lỗi thông điệp (không giải được cả M gói), các phương án khác
    bằng tỉ lệ lỗi theo hạn chót.
    """
    rows: List[SweepRow] = []
    for scheme in schemes:
        for value in values:
            if axis is SweepAxis.EPSILON:
                cfg = template.with_changes(scheme=scheme, channel=ChannelModel.fixed(value))
            else:
                cfg = template.with_changes(scheme=scheme_with_K(scheme, int(value)))
            eps = cfg.channel.epsilon
            result = run(cfg)
            if cfg.scheme.kind is SchemeKind.BLOCK_NC:
                estimate = Estimate.from_counts(result.sessions - result.message_successes, result.sessions)
            else:
                estimate = result.error_rate
            analytic = analytic_for(cfg.scheme, eps, cfg.session_packets)
            logger.info("%s @ %s=%g: %.4g", cfg.scheme.label, axis.value, value, estimate.mean)
            rows.append(SweepRow(scheme=cfg.scheme, epsilon=eps, estimate=estimate, analytic=analytic))
    return rows

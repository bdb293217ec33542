"""
Channel Models - Mô hình kênh xoá gói: ε cố định, blocklength hữu hạn và truy nhập ngẫu nhiên
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional, Tuple, Union

import numpy as np

from ..codec import CodedPacket, ReceivedPacket
from ..errors import ParameterError
from .formulas import fbl_epsilon, ra_epsilon_poisson

logger = logging.getLogger(__name__)

_RA_CHUNK = 1 << 20


class ChannelVariant(Enum):
    FIXED = "fixed"
    FINITE_BLOCKLENGTH = "fbl"
    RANDOM_ACCESS = "ra"


@dataclass(frozen=True)
class ChannelModel:
    """Kênh xoá i.i.d.; mỗi gói bị xoá với xác suất ε suy ra từ tham số của biến thể"""
    variant: ChannelVariant
    eps: Optional[float] = None
    snr: Optional[float] = None        # ρ, thang tuyến tính
    n: Optional[int] = None            # số lần dùng kênh
    nbit: Optional[int] = None         # số bit thông điệp
    lam: Optional[float] = None        # tải trung bình λ
    L: Optional[int] = None            # số preamble

    def __post_init__(self):
        if self.variant is ChannelVariant.FIXED:
            if self.eps is None or not 0.0 <= self.eps <= 1.0:
                raise ParameterError(f"epsilon must lie in [0, 1], got {self.eps}")
        elif self.variant is ChannelVariant.FINITE_BLOCKLENGTH:
            if self.snr is None or not self.snr > 0:
                raise ParameterError(f"SNR must be > 0 (linear scale), got {self.snr}")
            if self.n is None or self.n < 1:
                raise ParameterError(f"blocklength n must be >= 1, got {self.n}")
            if self.nbit is None or self.nbit < 1:
                raise ParameterError(f"message size N_bit must be >= 1, got {self.nbit}")
        elif self.variant is ChannelVariant.RANDOM_ACCESS:
            if self.lam is None or not self.lam > 0:
                raise ParameterError(f"mean load λ must be > 0, got {self.lam}")
            if self.L is None or self.L < 2:
                raise ParameterError(f"preamble pool L must be >= 2, got {self.L}")

    @classmethod
    def fixed(cls, eps: float) -> 'ChannelModel':
        return cls(ChannelVariant.FIXED, eps=float(eps))

    @classmethod
    def finite_blocklength(cls, snr: float, n: int, nbit: int) -> 'ChannelModel':
        return cls(ChannelVariant.FINITE_BLOCKLENGTH, snr=float(snr), n=int(n), nbit=int(nbit))

    @classmethod
    def random_access(cls, lam: float, L: int) -> 'ChannelModel':
        return cls(ChannelVariant.RANDOM_ACCESS, lam=float(lam), L=int(L))

    @cached_property
    def epsilon(self) -> float:
        if self.variant is ChannelVariant.FIXED:
            return self.eps
        if self.variant is ChannelVariant.FINITE_BLOCKLENGTH:
            return fbl_epsilon(self.snr, self.n, self.nbit)
        return ra_epsilon_poisson(self.lam, self.L)

    def describe(self) -> str:
        if self.variant is ChannelVariant.FIXED:
            return f"fixed(eps={self.eps:g})"
        if self.variant is ChannelVariant.FINITE_BLOCKLENGTH:
            return f"fbl(snr={self.snr:g}, n={self.n}, nbit={self.nbit}) -> eps={self.epsilon:.6g}"
        return f"ra(lam={self.lam:g}, L={self.L}) -> eps={self.epsilon:.6g}"


def erase(model: ChannelModel, rng: np.random.Generator, packet: CodedPacket) -> ReceivedPacket:
    """Xoá toàn bộ gói với xác suất ε"""
    if rng.random() < model.epsilon:
        return ReceivedPacket.erasure(packet)
    return ReceivedPacket.intact(packet)


def erasure_mask(model: ChannelModel, rng: np.random.Generator,
                 shape: Union[int, Tuple[int, ...]]) -> np.ndarray:
    """Mặt nạ xoá (True = bị xoá) cho cả một phiên, cùng luồng số ngẫu nhiên với erase"""
    return rng.random(shape) < model.epsilon


def simulate_ra_collisions(lam: float, L: int, trials: int, rng: np.random.Generator) -> float:
    """Monte Carlo cho truy nhập ngẫu nhiên 2 bước.

    Mỗi phép thử: M ~ Poisson(λ) với điều kiện M >= 1 thiết bị hoạt động, mỗi thiết bị
    chọn preamble đều trong L; trả về tỉ lệ lần thiết bị được theo dõi bị đụng độ.
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if not lam > 0 or L < 2:
        raise ParameterError(f"need λ > 0 and L >= 2, got λ={lam}, L={L}")
    accept = -math.expm1(-lam)
    collisions, done = 0, 0
    while done < trials:
        need = min(trials - done, _RA_CHUNK)
        draw = max(need, int(math.ceil(need / accept * 1.1)) + 16)
        active = rng.poisson(lam, size=draw)
        active = active[active >= 1][:need]
        # Số thiết bị khác chọn trùng preamble của thiết bị được theo dõi
        others = rng.binomial(active - 1, 1.0 / L)
        collisions += int(np.count_nonzero(others))
        done += active.size
    logger.debug("RA Monte Carlo: %d collisions in %d trials", collisions, done)
    return collisions / done

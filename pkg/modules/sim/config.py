"""
Sim Config - Cấu hình phương án truyền và tham số mô phỏng
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from ..analysis import SchemeKind
from ..channel import ChannelModel
from ..codec import DecoderMode
from ..design import SncDesign
from ..errors import ParameterError
from ..gf import Field, field_for_size

MAX_SEED = (1 << 64) - 1


class Engine(Enum):
    """Bộ máy mô phỏng: AUTO dùng bảng mẫu xoá khi có thể, REFERENCE luôn mang payload thật"""
    AUTO = "auto"
    REFERENCE = "reference"


@dataclass(frozen=True)
class Scheme:
    """Phương án truyền: K-repetition, SNC(thiết kế) hoặc RLNC theo khối với N = MK gói"""
    kind: SchemeKind
    K: int
    design: Optional[SncDesign] = None
    q: int = 2
    exclude_zero: bool = False  # chỉ cho BLOCK_NC

    def __post_init__(self):
        if self.kind is SchemeKind.SNC:
            if self.design is None:
                raise ParameterError("scheme.design: an SNC scheme needs a design")
            if self.K != self.design.K or self.q != self.design.q:
                raise ParameterError(f"scheme.K: SNC scheme must match its design ({self.design.describe()})")
        elif self.K < 1:
            raise ParameterError(f"scheme.K: K={self.K} must be >= 1")
        field_for_size(self.q)

    @classmethod
    def krep(cls, K: int, q: int = 2) -> 'Scheme':
        return cls(SchemeKind.KREP, K=K, q=q)

    @classmethod
    def snc(cls, design: SncDesign) -> 'Scheme':
        return cls(SchemeKind.SNC, K=design.K, design=design, q=design.q)

    @classmethod
    def block_nc(cls, K: int, q: int = 2, exclude_zero: bool = False) -> 'Scheme':
        return cls(SchemeKind.BLOCK_NC, K=K, q=q, exclude_zero=exclude_zero)

    @property
    def D(self) -> int:
        return self.design.D if self.design is not None else 0

    @property
    def field(self) -> Field:
        return field_for_size(self.q)

    @property
    def label(self) -> str:
        if self.kind is SchemeKind.SNC:
            return f"snc:{self.design.name}"
        return self.kind.value


@dataclass(frozen=True)
class SimConfig:
    scheme: Scheme
    channel: ChannelModel
    session_packets: int = 100       # M, số gói dữ liệu mỗi phiên
    sessions: int = 1000
    payload_len: int = 8             # P, số ký hiệu GF(q) mỗi gói
    master_seed: int = 1
    decoder_mode: DecoderMode = DecoderMode.FULL_GE
    engine: Engine = Engine.AUTO
    trace: bool = False
    threads: int = 0                 # 0 = tự động

    def __post_init__(self):
        if self.sessions < 1:
            raise ParameterError(f"sessions={self.sessions} must be >= 1")
        if self.session_packets < 1:
            raise ParameterError(f"session_packets={self.session_packets} must be >= 1")
        if self.payload_len < 1:
            raise ParameterError(f"payload_len={self.payload_len} must be >= 1")
        if not 0 <= self.master_seed <= MAX_SEED:
            raise ParameterError(f"seed={self.master_seed} must be a 64-bit unsigned integer")
        if self.threads < 0:
            raise ParameterError(f"threads={self.threads} must be >= 0")

    @property
    def deadlines(self) -> int:
        return self.sessions * self.session_packets

    def with_changes(self, **changes) -> 'SimConfig':
        return replace(self, **changes)

"""
Packets - Định nghĩa gói mã hoá, gói nhận được và kết quả giải mã
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..design import SymbolicCombo


class DecodeStatus(Enum):
    """Kết quả giải mã một gói dữ liệu tại hạn chót"""
    DECODED = "DECODED"
    FAILED = "FAILED"


class DecoderMode(Enum):
    """Chế độ giải mã ở bước S2"""
    # Khử Gauss trên toàn bộ cửa sổ
    FULL_GE = "full_ge"
    # Chỉ các tập gói được liệt kê trong phân tích (gói đơn với FD, hoặc cặp trong block hiện tại)
    PAPER_RULE = "paper_rule"


@dataclass(frozen=True)
class CodedPacket:
    """Gói V_{k,m}: payload trên GF(q) cùng dạng hình thức của nó"""
    combo: SymbolicCombo
    payload: np.ndarray
    block: int
    slot: int


@dataclass(frozen=True)
class ReceivedPacket:
    """Gói sau kênh xoá; packet = None nghĩa là bị xoá toàn bộ (cả combo lẫn payload)"""
    packet: Optional[CodedPacket]
    block: int
    slot: int

    @property
    def erased(self) -> bool:
        return self.packet is None

    @classmethod
    def intact(cls, packet: CodedPacket) -> 'ReceivedPacket':
        return cls(packet=packet, block=packet.block, slot=packet.slot)

    @classmethod
    def erasure(cls, packet: CodedPacket) -> 'ReceivedPacket':
        return cls(packet=None, block=packet.block, slot=packet.slot)


@dataclass(frozen=True)
class DecodeOutcome:
    """Kết quả giải mã X_index"""
    index: int
    status: DecodeStatus
    payload: Optional[np.ndarray] = None
    used_genie: bool = False

    @property
    def decoded(self) -> bool:
        return self.status is DecodeStatus.DECODED

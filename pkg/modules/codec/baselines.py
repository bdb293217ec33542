"""
Baselines - Các phương án so sánh: lặp K lần (K-repetition) và RLNC theo khối
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..design import SymbolicCombo
from ..errors import ContractViolation, ParameterError
from ..gf import Field, row_reduce, solved_columns
from .packets import CodedPacket, DecodeOutcome, DecodeStatus, ReceivedPacket

logger = logging.getLogger(__name__)


def krep_encode(K: int, m: int, payload: np.ndarray) -> List[CodedPacket]:
    """K bản sao của X_m trong block m"""
    if K < 1:
        raise ParameterError(f"K={K} must be >= 1")
    combo = SymbolicCombo.single(m)
    return [CodedPacket(combo=combo, payload=payload, block=m, slot=k) for k in range(1, K + 1)]


def krep_decode(block: Sequence[ReceivedPacket]) -> DecodeOutcome:
    """X_m được giải ngay cuối block nếu ít nhất một bản sao không bị xoá"""
    if not block:
        raise ParameterError("K-repetition block is empty")
    m = block[0].block
    for rp in block:
        if not rp.erased:
            return DecodeOutcome(index=m, status=DecodeStatus.DECODED, payload=rp.packet.payload)
    return DecodeOutcome(index=m, status=DecodeStatus.FAILED)


@dataclass
class RlncResult:
    """Kết quả giải một khối RLNC: thành công khi hạng đủ M"""
    success: bool
    rank: int
    payloads: Dict[int, np.ndarray] = field(default_factory=dict)


def rlnc_encode(M: int, N: int, f: Field, rng: np.random.Generator, exclude_zero: bool = False,
                payloads: Optional[Sequence[np.ndarray]] = None) -> List[CodedPacket]:
    """Sinh N gói RLNC từ M gói dữ liệu X_1..X_M, hệ số đều trên GF(q).

    exclude_zero: bốc lại các vector hệ số toàn 0.
    payloads: dữ liệu thực; None thì chỉ sinh tổ hợp với payload rỗng.
    """
    if M < 1 or N < M:
        raise ParameterError(f"RLNC needs 1 <= M <= N, got M={M}, N={N}")
    if payloads is not None and len(payloads) != M:
        raise ParameterError(f"expected {M} payloads, got {len(payloads)}")
    length = len(payloads[0]) if payloads is not None else 0
    coeffs = rng.integers(0, f.q, size=(N, M), dtype=np.uint8)
    if exclude_zero:
        zero_rows = np.flatnonzero(~coeffs.any(axis=1))
        while zero_rows.size:
            coeffs[zero_rows] = rng.integers(0, f.q, size=(zero_rows.size, M), dtype=np.uint8)
            zero_rows = zero_rows[~coeffs[zero_rows].any(axis=1)]

    packets = []
    for n in range(N):
        payload = f.zeros(length)
        if payloads is not None:
            for j in np.flatnonzero(coeffs[n]):
                payload = f.axpy(int(coeffs[n, j]), payloads[j], payload)
        combo = SymbolicCombo.from_dict({j + 1: int(c) for j, c in enumerate(coeffs[n])})
        packets.append(CodedPacket(combo=combo, payload=payload, block=1, slot=n + 1))
    return packets


def rlnc_decode(block: Sequence[ReceivedPacket], M: int, f: Field) -> RlncResult:
    """Khử Gauss trên các gói không bị xoá; khôi phục toàn bộ khi hạng = M"""
    received = [rp.packet for rp in block if not rp.erased]
    if not received:
        return RlncResult(success=False, rank=0)
    length = received[0].payload.shape[0]
    A = np.zeros((len(received), M + length), dtype=np.uint8)
    for r, packet in enumerate(received):
        for j, c in packet.combo.terms:
            if not 1 <= j <= M:
                raise ContractViolation(f"RLNC packet references X_{j} outside 1..{M}")
            A[r, j - 1] = c
        A[r, M:] = packet.payload
    R, pivots = row_reduce(f, A, n_pivot_cols=M)
    solved = solved_columns(R, pivots, M)
    payloads = {col + 1: R[row, M:].copy() for col, row in solved.items()}
    success = len(pivots) == M
    if success and length:
        # Kiểm tra lại: mọi gói nhận được phải khớp với nghiệm
        X = np.stack([payloads[j] for j in range(1, M + 1)])
        for packet in received:
            check = f.zeros(length)
            for j, c in packet.combo.terms:
                check = f.axpy(c, X[j - 1], check)
            if not np.array_equal(check, packet.payload):
                raise ContractViolation(f"RLNC packet {packet.slot} is inconsistent with the solution")
    logger.debug("RLNC block: %d packets, rank %d/%d", len(received), len(pivots), M)
    return RlncResult(success=success, rank=len(pivots), payloads=payloads)

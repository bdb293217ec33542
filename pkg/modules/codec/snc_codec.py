"""
SNC Codec - Bộ mã hoá on-the-fly và bộ giải mã hai bước FD/NFD cho Sliding Network Coding
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..design import SncDesign, diagonal_rows, expand_block
from ..errors import ContractViolation
from ..gf import Field, row_reduce, solved_columns
from .packets import CodedPacket, DecodeOutcome, DecodeStatus, DecoderMode, ReceivedPacket

logger = logging.getLogger(__name__)

PayloadAccessor = Union[Callable[[int], np.ndarray], Mapping[int, np.ndarray]]


def _resolve(history: PayloadAccessor, index: int) -> np.ndarray:
    try:
        value = history(index) if callable(history) else history[index]
    except (KeyError, IndexError) as exc:
        raise ContractViolation(f"payload of X_{index} is not available to the encoder") from exc
    if value is None:
        raise ContractViolation(f"payload of X_{index} is not available to the encoder")
    return value


def snc_encode_block(d: SncDesign, m: int, history: PayloadAccessor) -> List[CodedPacket]:
    """Mã hoá K gói của block m từ các payload X_{m-D..m}"""
    f = d.field
    combos = expand_block(d, m)
    length = np.asarray(_resolve(history, m)).shape[0]
    packets = []
    for k, combo in enumerate(combos, start=1):
        payload = f.zeros(length)
        for j, c in combo.terms:
            payload = f.axpy(c, _resolve(history, j), payload)
        packets.append(CodedPacket(combo=combo, payload=payload, block=m, slot=k))
    return packets


@dataclass
class ReceiverState:
    """Trạng thái bộ thu: kho FD, cửa sổ D+1 block gần nhất và bộ nhớ đệm NFD đã khôi phục.

    Các chỉ số <= 0 và > session_packets là gói ảo bằng 0 mà cả hai đầu đều biết.
    """
    design: SncDesign
    payload_len: int = 8
    session_packets: Optional[int] = None
    mode: DecoderMode = DecoderMode.FULL_GE
    fd_store: Dict[int, np.ndarray] = field(default_factory=dict)
    window: List[CodedPacket] = field(default_factory=list)
    recovered_nfd: Dict[int, np.ndarray] = field(default_factory=dict)
    next_deadline: int = 1
    newest_block: int = 0

    def __post_init__(self):
        if self.session_packets is not None:
            M = self.session_packets
            for j in range(M + 1, M + self.design.D + 1):
                self.fd_store[j] = self.field.zeros(self.payload_len)

    @property
    def field(self) -> Field:
        return self.design.field

    def is_virtual(self, index: int) -> bool:
        return index <= 0 or (self.session_packets is not None and index > self.session_packets)

    def known(self, index: int, use_nfd: bool = True) -> Optional[np.ndarray]:
        if index in self.fd_store:
            return self.fd_store[index]
        if self.is_virtual(index):
            return self.field.zeros(self.payload_len)
        if use_nfd:
            return self.recovered_nfd.get(index)
        return None

    def reduce(self, packet: CodedPacket, use_nfd: bool = True) -> Tuple[Dict[int, int], np.ndarray]:
        """Thay các gói đã biết vào tổ hợp; trả về (các ẩn còn lại, payload đã trừ)"""
        f = self.field
        unknown: Dict[int, int] = {}
        payload = packet.payload
        for j, c in packet.combo.terms:
            value = self.known(j, use_nfd)
            if value is None:
                unknown[j] = c
            else:
                payload = f.axpy(c, value, payload)
        return unknown, payload

    def _peel(self) -> None:
        f = self.field
        changed = True
        while changed:
            changed = False
            for packet in self.window:
                unknown, payload = self.reduce(packet)
                if len(unknown) != 1:
                    continue
                (j, c), = unknown.items()
                self.recovered_nfd[j] = f.scale(f.inv(c), payload)
                changed = True

    def _solve(self, rows: Sequence[Tuple[Dict[int, int], np.ndarray]]) -> Dict[int, np.ndarray]:
        """Khử Gauss trên các hàng đã rút gọn; trả về mọi ẩn xác định được duy nhất"""
        unknowns = sorted({j for terms, _ in rows for j in terms})
        if not unknowns:
            return {}
        column = {j: i for i, j in enumerate(unknowns)}
        n = len(unknowns)
        A = np.zeros((len(rows), n + self.payload_len), dtype=np.uint8)
        for r, (terms, payload) in enumerate(rows):
            for j, c in terms.items():
                A[r, column[j]] = c
            A[r, n:] = payload
        R, pivots = row_reduce(self.field, A, n_pivot_cols=n)
        solved = solved_columns(R, pivots, n)
        return {unknowns[col]: R[row, n:].copy() for col, row in solved.items()}

    def _decode_full(self, t: int) -> Optional[np.ndarray]:
        rows = []
        for packet in self.window:
            if max(packet.combo.indices(), default=0) < t:
                continue
            terms, payload = self.reduce(packet)
            if terms:
                rows.append((terms, payload))
        cached = self.known(t)
        if cached is not None:
            return cached
        solutions = self._solve(rows)
        for j, value in solutions.items():
            if j != t and j not in self.fd_store:
                self.recovered_nfd.setdefault(j, value)
        return solutions.get(t)

    def _decode_paper_rule(self, t: int) -> Optional[np.ndarray]:
        f = self.field
        m = t + self.design.D
        # (a) một gói trong block t..m-1 chỉ chứa X_t cùng các gói FD
        for packet in self.window:
            if not t <= packet.block < m or t not in packet.combo.indices():
                continue
            terms, payload = self.reduce(packet, use_nfd=False)
            if list(terms) == [t]:
                return f.scale(f.inv(terms[t]), payload)
        # (b) cặp (V_{k,m}, V_{1,m-d+1}) với f_k = c X_{m-d+1}
        current = {p.slot: p for p in self.window if p.block == m}
        firsts = {p.block: p for p in self.window if p.slot == 1}
        for k, col in diagonal_rows(self.design):
            nc = current.get(k)
            if nc is None or t not in nc.combo.indices():
                continue
            group = [nc]
            partner = firsts.get(m - col + 1)
            if partner is not None:
                group.append(partner)
            solutions = self._solve([self.reduce(p, use_nfd=False) for p in group])
            if t in solutions:
                return solutions[t]
        return None


def receiver_ingest(s: ReceiverState, block: Sequence[ReceivedPacket]) -> ReceiverState:
    """Bước S1: nhận K gói của block kế tiếp, cập nhật cửa sổ và bóc các tổ hợp đơn"""
    if len(block) != s.design.K:
        raise ContractViolation(f"expected {s.design.K} packets per block, got {len(block)}")
    m = block[0].block
    if m != s.newest_block + 1 or any(rp.block != m for rp in block):
        raise ContractViolation(f"block {m} ingested out of order (expected {s.newest_block + 1})")
    for rp in block:
        if not rp.erased:
            s.window.append(rp.packet)
    s.newest_block = m
    horizon = m - s.design.D
    s.window = [p for p in s.window if p.block >= horizon]
    # Các block trong cửa sổ chỉ tham chiếu X_j với j >= m - 2D
    for j in [j for j in s.fd_store if j < horizon - s.design.D]:
        del s.fd_store[j]
    s._peel()
    return s


def decode_deadline(s: ReceiverState, t: int, genie: Optional[Callable[[int], np.ndarray]] = None) -> DecodeOutcome:
    """Bước S2: giải X_t ở cuối block t + D.

    Khi thất bại, nếu có genie thì payload thật được đưa vào kho FD (mô hình phát lại lý tưởng).
    """
    if t != s.next_deadline:
        raise ContractViolation(f"deadline X_{t} requested, next deadline is X_{s.next_deadline}")
    if s.newest_block < t + s.design.D:
        raise ContractViolation(f"X_{t} needs blocks through {t + s.design.D}, have {s.newest_block}")

    if s.is_virtual(t):
        payload = s.known(t)
    elif s.mode is DecoderMode.FULL_GE:
        payload = s._decode_full(t)
    else:
        payload = s._decode_paper_rule(t)

    s.recovered_nfd.pop(t, None)
    s.next_deadline += 1
    if payload is not None:
        s.fd_store[t] = payload
        return DecodeOutcome(index=t, status=DecodeStatus.DECODED, payload=payload)

    used_genie = False
    if genie is not None:
        s.fd_store[t] = genie(t)
        used_genie = True
    logger.debug("X_%d failed at its deadline (genie=%s)", t, used_genie)
    return DecodeOutcome(index=t, status=DecodeStatus.FAILED, used_genie=used_genie)


def pattern_decodable(design: SncDesign, mode: DecoderMode, erased_bits: int, tail: int) -> bool:
    """Kết quả hạn chót X_t chỉ phụ thuộc mẫu xoá của block t..t+D khi mọi gói FD đều đúng.

    Bit (j*K + k-1) của erased_bits là trạng thái xoá của slot k trong block t+j;
    tail là số gói thật còn lại sau X_t (tối đa D) trước các block flush.
    """
    D, K = design.D, design.K
    t = D + 1
    state = ReceiverState(design, payload_len=0, session_packets=t + tail, mode=mode)
    empty = state.field.zeros(0)
    for j in range(1, t):
        state.fd_store[j] = empty
    state.next_deadline = t
    state.newest_block = t - 1
    for offset in range(D + 1):
        b = t + offset
        block = []
        for k, combo in enumerate(expand_block(design, b), start=1):
            packet = CodedPacket(combo=combo, payload=empty, block=b, slot=k)
            if (erased_bits >> (offset * K + k - 1)) & 1:
                block.append(ReceivedPacket.erasure(packet))
            else:
                block.append(ReceivedPacket.intact(packet))
        receiver_ingest(state, block)
    return decode_deadline(state, t).decoded

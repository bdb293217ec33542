"""
Test helpers - Chạy một phiên SNC với mẫu xoá cho trước
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Set, Tuple

import numpy as np

from modules.codec import (
    DecodeOutcome,
    DecoderMode,
    ReceivedPacket,
    ReceiverState,
    decode_deadline,
    receiver_ingest,
    snc_encode_block,
)
from modules.design import SncDesign


def random_payloads(d: SncDesign, M: int, P: int, seed: int = 7) -> np.ndarray:
    generator = np.random.default_rng(seed)
    return generator.integers(0, d.q, size=(M, P), dtype=np.uint8)


def run_snc_session(d: SncDesign, payloads: np.ndarray, erased: Iterable[Tuple[int, int]] = (),
                    mode: DecoderMode = DecoderMode.FULL_GE) -> Dict[int, DecodeOutcome]:
    """Phiên SNC đầy đủ với tập (block, slot) bị xoá; trả về kết quả từng hạn chót"""
    M, P = payloads.shape
    erased_set: Set[Tuple[int, int]] = set(erased)
    zero = np.zeros(P, dtype=np.uint8)

    def history(j: int) -> np.ndarray:
        return payloads[j - 1] if 1 <= j <= M else zero

    state = ReceiverState(d, payload_len=P, session_packets=M, mode=mode)
    outcomes: Dict[int, DecodeOutcome] = {}
    for m in range(1, M + d.D + 1):
        block: List[ReceivedPacket] = []
        for packet in snc_encode_block(d, m, history):
            if (m, packet.slot) in erased_set:
                block.append(ReceivedPacket.erasure(packet))
            else:
                block.append(ReceivedPacket.intact(packet))
        receiver_ingest(state, block)
        assert len(state.window) <= d.K * (d.D + 1)
        t = m - d.D
        if t >= 1:
            outcomes[t] = decode_deadline(state, t, genie=lambda j: payloads[j - 1])
    return outcomes

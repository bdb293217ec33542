"""
Simulation Engine - Mô phỏng Monte Carlo theo phiên, tất định theo seed và chạy song song theo tiến trình
"""
from __future__ import annotations

import logging
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..analysis import SchemeKind
from ..channel import erase, erasure_mask
from ..codec import (
    DecoderMode,
    ReceiverState,
    decode_deadline,
    krep_decode,
    krep_encode,
    pattern_decodable,
    receiver_ingest,
    rlnc_decode,
    rlnc_encode,
    snc_encode_block,
)
from ..design import SncDesign
from ..errors import ContractViolation
from .config import Engine, SimConfig
from .rng import StreamTag, session_rng
from .statistics import Estimate

logger = logging.getLogger(__name__)

THREADS_ENV = "SNC_THREADS"
# Mẫu xoá của D+1 block được mã hoá thành số nguyên; thiết kế rộng hơn dùng bộ máy tham chiếu
PATTERN_MAX_BITS = 20
PATTERN_CACHE_SIZE = 1 << 16
_CHUNKS_PER_WORKER = 4



@dataclass
class SessionStats:
    deadlines: int
    failures: int
    retransmissions: int
    per_block_error_trace: Optional[np.ndarray] = None  # cờ lỗi theo hạn chót, độ dài M

    @property
    def message_success(self) -> bool:
        return self.failures == 0


@dataclass
class SimResult:
    """Tổng hợp cộng được của nhiều phiên, không phụ thuộc thứ tự"""
    sessions: int = 0
    deadlines: int = 0
    failures: int = 0
    message_successes: int = 0
    retransmissions: Counter = field(default_factory=Counter)
    failures_by_deadline: Optional[np.ndarray] = None

    def add_session(self, stats: SessionStats) -> None:
        self.sessions += 1
        self.deadlines += stats.deadlines
        self.failures += stats.failures
        self.message_successes += int(stats.message_success)
        self.retransmissions[stats.retransmissions] += 1
        if stats.per_block_error_trace is not None:
            flags = stats.per_block_error_trace.astype(np.int64)
            if self.failures_by_deadline is None:
                self.failures_by_deadline = flags
            else:
                self.failures_by_deadline += flags

    def merge(self, other: 'SimResult') -> 'SimResult':
        self.sessions += other.sessions
        self.deadlines += other.deadlines
        self.failures += other.failures
        self.message_successes += other.message_successes
        self.retransmissions.update(other.retransmissions)
        if other.failures_by_deadline is not None:
            if self.failures_by_deadline is None:
                self.failures_by_deadline = other.failures_by_deadline.copy()
            else:
                self.failures_by_deadline += other.failures_by_deadline
        return self

    @property
    def error_rate(self) -> Estimate:
        return Estimate.from_counts(self.failures, self.deadlines)

    @property
    def block_success(self) -> Estimate:
        return Estimate.from_counts(self.message_successes, self.sessions)


def _draw_payloads(cfg: SimConfig, session_index: int) -> np.ndarray:
    f = cfg.scheme.field
    rng = session_rng(cfg.master_seed, session_index, StreamTag.PAYLOAD)
    return np.stack([f.random_vector(rng, cfg.payload_len) for _ in range(cfg.session_packets)])


def _stats(flags: np.ndarray) -> SessionStats:
    failures = int(np.count_nonzero(flags))
    return SessionStats(deadlines=flags.size, failures=failures, retransmissions=failures,
                        per_block_error_trace=flags)


# --- Bộ máy tham chiếu: mang payload thật qua bộ mã hoá/giải mã ---

def _reference_krep(cfg: SimConfig, session_index: int) -> np.ndarray:
    M, K = cfg.session_packets, cfg.scheme.K
    payloads = _draw_payloads(cfg, session_index)
    channel_rng = session_rng(cfg.master_seed, session_index, StreamTag.CHANNEL)
    flags = np.zeros(M, dtype=bool)
    for m in range(1, M + 1):
        block = [erase(cfg.channel, channel_rng, p) for p in krep_encode(K, m, payloads[m - 1])]
        outcome = krep_decode(block)
        flags[m - 1] = not outcome.decoded
    return flags


def _reference_snc(cfg: SimConfig, session_index: int) -> np.ndarray:
    d = cfg.scheme.design
    M, D = cfg.session_packets, d.D
    payloads = _draw_payloads(cfg, session_index)
    channel_rng = session_rng(cfg.master_seed, session_index, StreamTag.CHANNEL)
    zero = d.field.zeros(cfg.payload_len)

    def history(j: int) -> np.ndarray:
        return payloads[j - 1] if 1 <= j <= M else zero

    def genie(t: int) -> np.ndarray:
        return payloads[t - 1]

    state = ReceiverState(d, payload_len=cfg.payload_len, session_packets=M, mode=cfg.decoder_mode)
    flags = np.zeros(M, dtype=bool)
    # D block flush cuối phiên để mọi gói thật đều tới hạn chót
    for m in range(1, M + D + 1):
        block = [erase(cfg.channel, channel_rng, p) for p in snc_encode_block(d, m, history)]
        receiver_ingest(state, block)
        t = m - D
        if t < 1:
            continue
        outcome = decode_deadline(state, t, genie)
        if outcome.decoded and not np.array_equal(outcome.payload, payloads[t - 1]):
            raise ContractViolation(f"session {session_index}: X_{t} decoded to a wrong payload")
        flags[t - 1] = not outcome.decoded
        if cfg.trace:
            logger.debug("session %d: X_%d %s", session_index, t, outcome.status.value)
    return flags


def _block_nc_flags(cfg: SimConfig, session_index: int, with_payloads: bool) -> np.ndarray:
    scheme = cfg.scheme
    M = cfg.session_packets
    N = M * scheme.K
    f = scheme.field
    payloads = list(_draw_payloads(cfg, session_index)) if with_payloads else None
    coding_rng = session_rng(cfg.master_seed, session_index, StreamTag.CODING)
    channel_rng = session_rng(cfg.master_seed, session_index, StreamTag.CHANNEL)
    packets = rlnc_encode(M, N, f, coding_rng, exclude_zero=scheme.exclude_zero, payloads=payloads)
    result = rlnc_decode([erase(cfg.channel, channel_rng, p) for p in packets], M, f)
    if with_payloads:
        for j, value in result.payloads.items():
            if not np.array_equal(value, payloads[j - 1]):
                raise ContractViolation(f"session {session_index}: X_{j} decoded to a wrong payload")
    recovered = np.zeros(M, dtype=bool)
    for j in result.payloads:
        recovered[j - 1] = True
    return ~recovered


# --- Bộ máy nhanh: chỉ mặt nạ xoá, tiêu thụ luồng kênh giống hệt bộ máy tham chiếu ---

def _fast_krep(cfg: SimConfig, session_index: int) -> np.ndarray:
    channel_rng = session_rng(cfg.master_seed, session_index, StreamTag.CHANNEL)
    mask = erasure_mask(cfg.channel, channel_rng, (cfg.session_packets, cfg.scheme.K))
    return mask.all(axis=1)


@lru_cache(maxsize=PATTERN_CACHE_SIZE)
def _pattern_outcome(design: SncDesign, mode: DecoderMode, pattern: int, tail: int) -> bool:
    return pattern_decodable(design, mode, pattern, tail)


def _pattern_outcomes(design: SncDesign, mode: DecoderMode, keys: np.ndarray) -> np.ndarray:
    """Kết quả giải cho từng khoá mẫu duy nhất, qua bộ nhớ đệm có giới hạn"""
    span = design.D + 1
    unique, inverse = np.unique(keys, return_inverse=True)
    decoded = np.empty(unique.size, dtype=bool)
    for i, key in enumerate(unique.tolist()):
        pattern, tail = divmod(key, span)
        decoded[i] = _pattern_outcome(design, mode, pattern, tail)
    return decoded[inverse.reshape(-1)]


def _fast_snc(cfg: SimConfig, session_index: int) -> np.ndarray:
    d = cfg.scheme.design
    M, D, K = cfg.session_packets, d.D, d.K
    channel_rng = session_rng(cfg.master_seed, session_index, StreamTag.CHANNEL)
    mask = erasure_mask(cfg.channel, channel_rng, (M + D, K))
    weights = np.left_shift(np.uint64(1), np.arange(K, dtype=np.uint64))
    row_bits = (mask.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    patterns = np.zeros(M, dtype=np.uint64)
    for offset in range(D + 1):
        patterns |= row_bits[offset:offset + M] << np.uint64(offset * K)
    # Số gói thật còn lại sau X_t, bão hoà ở D
    tails = np.minimum(D, M - np.arange(1, M + 1)).astype(np.uint64)
    keys = patterns * np.uint64(D + 1) + tails
    flags = ~_pattern_outcomes(d, cfg.decoder_mode, keys)
    if cfg.trace:
        for t in np.flatnonzero(flags) + 1:
            logger.debug("session %d: X_%d FAILED", session_index, t)
    return flags


def _use_fast(cfg: SimConfig) -> bool:
    if cfg.engine is Engine.REFERENCE:
        return False
    scheme = cfg.scheme
    if scheme.kind is SchemeKind.SNC:
        bits = scheme.K * (scheme.D + 1)
        return bits <= PATTERN_MAX_BITS
    return True


def run_session(cfg: SimConfig, session_index: int) -> SessionStats:
    """Chạy một phiên M gói; kết quả chỉ phụ thuộc (master_seed, session_index)"""
    kind = cfg.scheme.kind
    fast = _use_fast(cfg)
    if kind is SchemeKind.KREP:
        flags = _fast_krep(cfg, session_index) if fast else _reference_krep(cfg, session_index)
    elif kind is SchemeKind.SNC:
        flags = _fast_snc(cfg, session_index) if fast else _reference_snc(cfg, session_index)
    else:
        flags = _block_nc_flags(cfg, session_index, with_payloads=not fast)
    return _stats(flags)


def _run_chunk(cfg: SimConfig, start: int, stop: int) -> SimResult:
    result = SimResult()
    for index in range(start, stop):
        result.add_session(run_session(cfg, index))
    logger.debug("sessions [%d, %d): %d failures, pattern cache %d",
                 start, stop, result.failures, _pattern_outcome.cache_info().currsize)
    return result


def resolve_threads(threads: int) -> int:
    """0 = lấy từ biến môi trường SNC_THREADS, nếu không có thì số CPU"""
    if threads > 0:
        return threads
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            logger.warning("ignoring %s=%r (not an integer)", THREADS_ENV, env)
        else:
            if value > 0:
                return value
    return os.cpu_count() or 1


def _chunks(sessions: int, workers: int) -> List[Tuple[int, int]]:
    count = max(1, min(sessions, workers * _CHUNKS_PER_WORKER))
    size = math.ceil(sessions / count)
    return [(start, min(start + size, sessions)) for start in range(0, sessions, size)]


def run(cfg: SimConfig) -> SimResult:
    """Chạy toàn bộ cfg.sessions phiên, song song khi threads > 1; tổng hợp chỉ gồm phép cộng"""
    workers = min(resolve_threads(cfg.threads), cfg.sessions)
    logger.info("simulate %s over %s: %d sessions x %d packets, %d worker(s)",
                cfg.scheme.label, cfg.channel.describe(), cfg.sessions, cfg.session_packets, workers)
    started = time.perf_counter()
    chunks = _chunks(cfg.sessions, workers)
    total = SimResult()
    if workers == 1:
        for start, stop in chunks:
            total.merge(_run_chunk(cfg, start, stop))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_chunk, cfg, start, stop) for start, stop in chunks]
            for future in futures:
                total.merge(future.result())
    logger.info("done: %d/%d deadline failures in %.2fs",
                total.failures, total.deadlines, time.perf_counter() - started)
    return total


def estimate_error_rate(cfg: SimConfig) -> Estimate:
    """Tỉ lệ lỗi theo hạn chót, gộp trên mọi phiên"""
    return run(cfg).error_rate


def estimate_block_success(cfg: SimConfig) -> Estimate:
    """Tỉ lệ phiên giải được cả M gói"""
    return run(cfg).block_success


def histogram_from_result(result: SimResult) -> Dict[int, Fraction]:
    return {i: Fraction(count, result.sessions) for i, count in sorted(result.retransmissions.items())}


def retx_histogram(cfg: SimConfig) -> Dict[int, Fraction]:
    """Phân bố số lần phát lại mỗi phiên; xác suất là phân số nên tổng đúng bằng 1"""
    return histogram_from_result(run(cfg))


def error_trace(cfg: SimConfig, cumulative: bool = False) -> np.ndarray:
    """Tỉ lệ lỗi theo vị trí hạn chót t = 1..M; cumulative cho trung bình chạy theo thời gian"""
    result = run(cfg)
    counts = result.failures_by_deadline.astype(float)
    if cumulative:
        return np.cumsum(counts) / (result.sessions * np.arange(1, counts.size + 1))
    return counts / result.sessions

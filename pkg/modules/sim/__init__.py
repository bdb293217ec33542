"""
Sim Module - Bộ mô phỏng Monte Carlo tất định: phiên truyền, tỉ lệ lỗi, histogram phát lại và quét tham số
"""
from .config import Engine, Scheme, SimConfig
from .engine import (
    SessionStats,
    SimResult,
    error_trace,
    estimate_block_success,
    estimate_error_rate,
    histogram_from_result,
    resolve_threads,
    retx_histogram,
    run,
    run_session,
)
from .rng import StreamTag, session_rng
from .statistics import Estimate
from .sweep import SweepAxis, SweepRow, analytic_for, is_simple, scheme_with_K, sweep

__all__ = [
    'Engine', 'Scheme', 'SimConfig', 'SessionStats', 'SimResult', 'Estimate', 'StreamTag', 'session_rng',
    'run', 'run_session', 'estimate_error_rate', 'estimate_block_success', 'retx_histogram',
    'histogram_from_result', 'error_trace', 'resolve_threads',
    'SweepAxis', 'SweepRow', 'sweep', 'analytic_for', 'is_simple', 'scheme_with_K',
]

"""
Analysis Module - Các công thức giải tích dùng làm oracle cho bộ mô phỏng
"""
from .closed_form import (
    ErrorEstimate,
    SchemeKind,
    decode_delay_slots,
    krep_all_success,
    krep_error,
    min_repetitions,
    rlnc_all_success,
    rlnc_rank_prob,
    rlnc_rank_prob_nz,
    snc_lemma3_bound,
    snc_simple_error,
    table1_first_packet_error,
)

__all__ = [
    'ErrorEstimate', 'SchemeKind', 'krep_error', 'rlnc_rank_prob', 'rlnc_rank_prob_nz', 'rlnc_all_success',
    'krep_all_success', 'snc_simple_error', 'snc_lemma3_bound', 'table1_first_packet_error',
    'decode_delay_slots', 'min_repetitions',
]

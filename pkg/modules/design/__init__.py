"""
Design Module - Các thiết kế SNC: ma trận hệ số, khai triển block và các tính chất phân tích
"""
from .snc_design import (
    CATALOG_NAMES,
    SncDesign,
    SymbolicCombo,
    builtin,
    catalog,
    design_from_rows,
    expand_block,
    generate_min_delay,
    min_delay,
)
from .properties import check_diag_condition, compute_mu, diagonal_rows, lemma3_exponent

__all__ = [
    'SncDesign', 'SymbolicCombo', 'CATALOG_NAMES', 'builtin', 'catalog', 'design_from_rows',
    'expand_block', 'generate_min_delay', 'min_delay',
    'compute_mu', 'check_diag_condition', 'diagonal_rows', 'lemma3_exponent',
]

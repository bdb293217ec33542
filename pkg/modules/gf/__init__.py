"""
GF Module - Số học trường hữu hạn GF(2^w) và đại số tuyến tính trên payload
"""
from .field import Field, Symbol, add, axpy, field_for_size, field_new, inv, mul, poly_mulmod
from .linalg import rank, row_reduce, solved_columns

__all__ = [
    'Field', 'Symbol', 'field_new', 'field_for_size', 'add', 'mul', 'inv', 'axpy', 'poly_mulmod',
    'row_reduce', 'rank', 'solved_columns',
]

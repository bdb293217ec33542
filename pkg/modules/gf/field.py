"""
Field - Số học trên trường hữu hạn GF(2^w), 1 <= w <= 8, dựa trên bảng log/antilog
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from ..errors import ParameterError
from .constants import DEFAULT_GENERATOR, DEFAULT_PRIM_POLY, MAX_DEGREE, MIN_DEGREE

logger = logging.getLogger(__name__)

Symbol = int
PayloadLike = Union[np.ndarray, Sequence[int]]

PAYLOAD_DTYPE = np.uint8


def poly_mulmod(a: int, b: int, prim_poly: int, w: int) -> int:
    """Nhân đa thức trên GF(2) rồi rút gọn theo prim_poly (thuật toán Russian peasant)."""
    top = 1 << w
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= prim_poly
    return result


@dataclass(frozen=True, eq=False)
class Field:
    """Trường GF(q) với q = 2^w; bất biến sau khi khởi tạo"""
    w: int
    prim_poly: int
    generator: int
    log_table: np.ndarray = dc_field(repr=False)
    antilog_table: np.ndarray = dc_field(repr=False)
    mul_table: np.ndarray = dc_field(repr=False)
    inv_table: np.ndarray = dc_field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.w

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return (self.w, self.prim_poly) == (other.w, other.prim_poly)

    def __hash__(self) -> int:
        return hash((self.w, self.prim_poly))

    def check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise ParameterError(f"symbol {a} outside GF({self.q})")
        return a

    def add(self, a: Symbol, b: Symbol) -> Symbol:
        return self.check(a) ^ self.check(b)

    sub = add

    def mul(self, a: Symbol, b: Symbol) -> Symbol:
        return int(self.mul_table[self.check(a), self.check(b)])

    def inv(self, a: Symbol) -> Symbol:
        if self.check(a) == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return int(self.inv_table[a])

    def div(self, a: Symbol, b: Symbol) -> Symbol:
        return self.mul(a, self.inv(b))

    def vector(self, values: PayloadLike) -> np.ndarray:
        """Chuyển payload về mảng uint8 và kiểm tra miền giá trị"""
        arr = np.asarray(values)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise ParameterError(f"payload entries must lie in [0, {self.q})")
        return arr.astype(PAYLOAD_DTYPE)

    def scale(self, c: Symbol, x: np.ndarray) -> np.ndarray:
        return self.mul_table[self.check(c)][x]

    def axpy(self, c: Symbol, x: PayloadLike, y: PayloadLike) -> np.ndarray:
        """Trả về y ⊕ c·x theo từng phần tử"""
        x_arr = self.vector(x)
        y_arr = self.vector(y)
        if x_arr.shape != y_arr.shape:
            raise ParameterError(f"length mismatch: {x_arr.shape} vs {y_arr.shape}")
        if self.check(c) == 0:
            return y_arr.copy()
        return y_arr ^ self.mul_table[c][x_arr]

    def zeros(self, length: int) -> np.ndarray:
        return np.zeros(length, dtype=PAYLOAD_DTYPE)

    def random_vector(self, rng: np.random.Generator, length: int) -> np.ndarray:
        return rng.integers(0, self.q, size=length, dtype=PAYLOAD_DTYPE)


def _build_tables(w: int, prim_poly: int, generator: int):
    q = 1 << w
    log_table = np.zeros(q, dtype=np.int32)
    antilog_table = np.zeros(q, dtype=np.int32)
    x = 1
    for i in range(q - 1):
        antilog_table[i] = x
        log_table[x] = i
        x = poly_mulmod(x, generator, prim_poly, w)
    if x != 1 or (q > 2 and len(set(antilog_table[: q - 1].tolist())) != q - 1):
        raise ParameterError(f"0x{generator:X} does not generate GF({q}) mod 0x{prim_poly:X}")
    # Lặp vòng để antilog[q-1] = antilog[0] = 1
    antilog_table[q - 1] = 1

    nonzero = np.arange(1, q)
    mul_table = np.zeros((q, q), dtype=PAYLOAD_DTYPE)
    logs = log_table[nonzero]
    mul_table[1:, 1:] = antilog_table[(logs[:, None] + logs[None, :]) % (q - 1)]

    inv_table = np.zeros(q, dtype=PAYLOAD_DTYPE)
    inv_table[1:] = antilog_table[(-logs) % (q - 1)]
    return log_table, antilog_table, mul_table, inv_table


@lru_cache(maxsize=None)
def field_new(w: int) -> Field:
    """Tạo trường GF(2^w) từ đa thức nguyên thuỷ mặc định"""
    if not isinstance(w, int) or not MIN_DEGREE <= w <= MAX_DEGREE:
        raise ParameterError(f"extension degree w={w} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
    prim_poly = DEFAULT_PRIM_POLY[w]
    generator = DEFAULT_GENERATOR[w]
    log_table, antilog_table, mul_table, inv_table = _build_tables(w, prim_poly, generator)
    for table in (log_table, antilog_table, mul_table, inv_table):
        table.setflags(write=False)
    logger.debug("Built GF(%d) tables with poly 0x%X", 1 << w, prim_poly)
    return Field(w, prim_poly, generator, log_table, antilog_table, mul_table, inv_table)


def field_for_size(q: int) -> Field:
    """Tra trường theo kích thước q = 2^w"""
    if not isinstance(q, int) or q < 2 or q & (q - 1):
        raise ParameterError(f"field size q={q} is not a power of two")
    return field_new(q.bit_length() - 1)


def add(f: Field, a: Symbol, b: Symbol) -> Symbol:
    return f.add(a, b)


def mul(f: Field, a: Symbol, b: Symbol) -> Symbol:
    return f.mul(a, b)


def inv(f: Field, a: Symbol) -> Symbol:
    return f.inv(a)


def axpy(f: Field, c: Symbol, x: PayloadLike, y: PayloadLike) -> np.ndarray:
    return f.axpy(c, x, y)

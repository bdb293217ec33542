"""
Gaussian elimination trên GF(q): dạng bậc thang rút gọn, hạng và kiểm tra vector đơn vị trong không gian hàng
"""
from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import numpy as np

from .field import PAYLOAD_DTYPE, Field


def row_reduce(f: Field, matrix: np.ndarray, n_pivot_cols: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """Đưa ma trận về dạng bậc thang rút gọn (RREF) trên GF(q).

    Args:
        f: trường hữu hạn.
        matrix: ma trận (m x n), phần tử trong [0, q).
        n_pivot_cols: chỉ tìm pivot trong n_pivot_cols cột đầu; phép biến đổi hàng
            vẫn áp dụng cho toàn bộ hàng (dùng cho ma trận mở rộng [A | payload]).

    Returns:
        (R, pivot_cols) với R là RREF và pivot_cols là danh sách cột pivot (độ dài = hạng).
    """
    R = np.array(matrix, dtype=PAYLOAD_DTYPE, copy=True)
    if R.ndim != 2:
        R = R.reshape(0, 0) if R.size == 0 else R.reshape(1, -1)
    m, n = R.shape
    if n_pivot_cols is None:
        n_pivot_cols = n

    pivot_cols: List[int] = []
    pivot_row = 0
    for col in range(n_pivot_cols):
        if pivot_row == m:
            break
        candidates = np.flatnonzero(R[pivot_row:, col])
        if candidates.size == 0:
            continue
        found = pivot_row + int(candidates[0])
        if found != pivot_row:
            R[[pivot_row, found]] = R[[found, pivot_row]]

        pivot = int(R[pivot_row, col])
        if pivot != 1:
            R[pivot_row] = f.mul_table[f.inv(pivot)][R[pivot_row]]

        # Khử toàn bộ cột (trên và dưới) để được dạng rút gọn
        for row in np.flatnonzero(R[:, col]):
            if row != pivot_row:
                R[row] ^= f.mul_table[R[row, col]][R[pivot_row]]

        pivot_cols.append(col)
        pivot_row += 1
    return R, pivot_cols


def rank(f: Field, matrix: np.ndarray) -> int:
    """Hạng của ma trận trên GF(q)"""
    _, pivot_cols = row_reduce(f, matrix)
    return len(pivot_cols)


def solved_columns(R: np.ndarray, pivot_cols: List[int], n_unknowns: int) -> Dict[int, int]:
    """Các ẩn xác định được duy nhất: cột -> hàng của R.

    Trong RREF, vector đơn vị e_j thuộc không gian hàng khi và chỉ khi có hàng pivot tại j
    mà phần hệ số không còn phần tử khác 0 nào khác.
    """
    solved: Dict[int, int] = {}
    for row, col in enumerate(pivot_cols):
        if col >= n_unknowns:
            break
        if np.count_nonzero(R[row, :n_unknowns]) == 1:
            solved[col] = row
    return solved

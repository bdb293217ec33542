import itertools

import numpy as np
import pytest

from modules.errors import ParameterError
from modules.gf import field_for_size, field_new, rank, row_reduce, solved_columns


@pytest.mark.parametrize("w", [1, 2, 3, 4])
def test_field_axioms_exhaustive(w):
    f = field_new(w)
    elements = range(f.q)
    for a, b in itertools.product(elements, repeat=2):
        assert f.mul(a, b) == f.mul(b, a)
        assert f.add(a, b) == a ^ b
    for a, b, c in itertools.product(elements, repeat=3):
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in range(1, f.q):
        assert f.mul(a, f.inv(a)) == 1
        assert f.mul(a, 1) == a
        assert f.mul(a, 0) == 0


def test_gf4_multiplication_table(gf4):
    assert gf4.mul(2, 2) == 3
    assert gf4.mul(2, 3) == 1
    assert gf4.mul(3, 3) == 2
    assert gf4.inv(2) == 3


def test_gf256_known_products(gf256):
    assert gf256.mul(0x57, 0x83) == 0xC1
    assert gf256.mul(0x53, 0xCA) == 0x01
    assert gf256.inv(0x53) == 0xCA
    assert gf256.div(0xC1, 0x83) == 0x57


def test_log_tables_cover_every_nonzero_element(gf256):
    logs = gf256.log_table[1:]
    assert sorted(logs.tolist()) == list(range(255))
    assert gf256.antilog_table[0] == 1


def test_inverse_of_zero_raises(gf256):
    with pytest.raises(ZeroDivisionError):
        gf256.inv(0)


@pytest.mark.parametrize("w", [0, 9, -1])
def test_field_new_rejects_degree(w):
    with pytest.raises(ParameterError):
        field_new(w)


def test_field_for_size():
    assert field_for_size(256).w == 8
    assert field_for_size(2) is field_new(1)
    with pytest.raises(ParameterError):
        field_for_size(6)


def test_symbols_outside_field_rejected(gf4):
    with pytest.raises(ParameterError):
        gf4.mul(4, 1)
    with pytest.raises(ParameterError):
        gf4.vector([0, 1, 5])


def test_axpy(gf4):
    x = gf4.vector([1, 2, 3])
    y = gf4.vector([3, 3, 0])
    assert gf4.axpy(2, x, y).tolist() == [3 ^ 2, 3 ^ 3, 0 ^ 1]
    same = gf4.axpy(0, x, y)
    assert same.tolist() == y.tolist()
    assert same is not y


def test_axpy_length_mismatch(gf4):
    with pytest.raises(ParameterError):
        gf4.axpy(1, [1, 2], [1, 2, 3])


def test_tables_are_read_only(gf4):
    with pytest.raises(ValueError):
        gf4.mul_table[1, 1] = 0


def test_rank_over_gf2(gf2):
    assert rank(gf2, np.eye(3, dtype=np.uint8)) == 3
    assert rank(gf2, np.array([[1, 1], [1, 1]], dtype=np.uint8)) == 1
    assert rank(gf2, np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)) == 2


def test_row_reduce_solves_augmented_system(gf256):
    A = np.array([[1, 2], [3, 4]], dtype=np.uint8)
    x = np.array([[7, 9], [11, 200]], dtype=np.uint8)
    b = np.stack([gf256.axpy(A[r, 1], x[1], gf256.scale(A[r, 0], x[0])) for r in range(2)])
    R, pivots = row_reduce(gf256, np.hstack([A, b]), n_pivot_cols=2)
    assert pivots == [0, 1]
    assert R[:, 2:].tolist() == x.tolist()


def test_solved_columns_only_unit_rows(gf2):
    R, pivots = row_reduce(gf2, np.array([[1, 1, 0], [0, 0, 1]], dtype=np.uint8))
    assert solved_columns(R, pivots, 3) == {2: 1}


def test_field_equality_and_cache():
    assert field_new(3) is field_new(3)
    assert field_new(3) == field_for_size(8)
    assert hash(field_new(3)) == hash(field_for_size(8))
    assert field_new(3) != field_new(4)

"""
SNC Design - Danh mục và đại số của các thiết kế (K, D, q)-SNC
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..errors import ParameterError
from ..gf import Field, field_for_size


@dataclass(frozen=True)
class SymbolicCombo:
    """Tổ hợp tuyến tính hình thức của các gói dữ liệu: chỉ số tuyệt đối -> hệ số khác 0"""
    terms: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> 'SymbolicCombo':
        return cls(tuple(sorted((int(j), int(c)) for j, c in terms.items() if c != 0)))

    @classmethod
    def single(cls, index: int, coeff: int = 1) -> 'SymbolicCombo':
        return cls.from_dict({index: coeff})

    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def indices(self) -> List[int]:
        return [j for j, _ in self.terms]

    def coefficient(self, index: int) -> int:
        return self.as_dict().get(index, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"X_{j}" if c == 1 else f"{c}·X_{j}" for j, c in self.terms]
        return " ⊕ ".join(parts)


@dataclass(frozen=True)
class SncDesign:
    """Một thiết kế (K, D, q)-SNC.

    Hàng k-2 của C chứa c_{k,1..D} cho slot k (k = 2..K); cột d là hệ số của X_{m-d+1}.
    """
    K: int
    D: int
    q: int
    C: Tuple[Tuple[int, ...], ...]
    name: str = "custom"

    def __post_init__(self):
        C = tuple(tuple(int(c) for c in row) for row in self.C)
        object.__setattr__(self, 'C', C)
        if self.K < 2:
            raise ParameterError(f"K={self.K}: an SNC design needs K >= 2")
        if self.D < 1:
            raise ParameterError(f"D={self.D}: an SNC design needs D >= 1")
        field_for_size(self.q)
        if len(C) != self.K - 1:
            raise ParameterError(f"C has {len(C)} rows, expected K-1={self.K - 1}")
        for k, row in enumerate(C, start=2):
            if len(row) != self.D:
                raise ParameterError(f"C row for slot {k} has {len(row)} columns, expected D={self.D}")
            if any(not 0 <= c < self.q for c in row):
                raise ParameterError(f"C row for slot {k} has entries outside GF({self.q})")
        d_min = min_delay(self.K, self.q)
        if self.D < d_min:
            raise ParameterError(f"D={self.D} violates the minimum delay ceil(log_{self.q} {self.K}) = {d_min}")
        if len(set(C)) != len(C):
            raise ParameterError("C has duplicate rows (duplicate NC packets add no rank)")

    @property
    def field(self) -> Field:
        return field_for_size(self.q)

    def f_terms(self, k: int, m: int) -> Dict[int, int]:
        """Các số hạng của f_k tại block m: {m-d+1: c_{k,d}} với c_{k,d} khác 0"""
        row = self.C[k - 2]
        return {m - d + 1: c for d, c in enumerate(row, start=1) if c != 0}

    def describe(self) -> str:
        return f"({self.K},{self.D},{self.q})-SNC"


def min_delay(K: int, q: int) -> int:
    """D nhỏ nhất thoả D >= log_q K, tức ceil(log_q K), tính bằng số nguyên"""
    if K < 2:
        raise ParameterError(f"K={K} must be >= 2")
    if q < 2:
        raise ParameterError(f"q={q} must be >= 2")
    D, capacity = 0, 1
    while capacity < K:
        capacity *= q
        D += 1
    return D


def _identity(n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _digits(value: int, q: int, D: int) -> Tuple[int, ...]:
    # Chữ số thứ nhất là chữ số có trọng số thấp nhất
    out = []
    for _ in range(D):
        out.append(value % q)
        value //= q
    return tuple(out)


def generate_min_delay(K: int, q: int) -> SncDesign:
    """Thiết kế SNC có độ trễ nhỏ nhất: các vector đơn vị trước, sau đó các vector khác 0 theo thứ tự tăng"""
    D = min_delay(K, q)
    units = list(_identity(D))
    rows: List[Tuple[int, ...]] = units[: K - 1]
    value = 1
    while len(rows) < K - 1:
        vec = _digits(value, q, D)
        if vec not in units:
            rows.append(vec)
        value += 1
    return SncDesign(K=K, D=D, q=q, C=tuple(rows), name=f"mindelay:{K}:{q}")


def _simple(K: int) -> SncDesign:
    return SncDesign(K=K, D=K - 1, q=2, C=_identity(K - 1), name=f"simple:{K}")


def builtin(name: str) -> SncDesign:
    """Tra thiết kế trong danh mục theo tên"""
    if name == "table1":
        return SncDesign(K=2, D=1, q=2, C=((1,),), name="table1")
    if name == "table2":
        return SncDesign(K=2, D=2, q=2, C=((1, 0),), name="table2")
    if name == "table3":
        return SncDesign(K=4, D=2, q=2, C=((1, 0), (0, 1), (1, 1)), name="table3")
    if name.startswith("simple:"):
        try:
            K = int(name.split(":", 1)[1])
        except ValueError:
            raise ParameterError(f"bad design name {name!r}: expected simple:K") from None
        return _simple(K)
    if name.startswith("mindelay:"):
        parts = name.split(":")
        try:
            K, q = int(parts[1]), int(parts[2])
        except (IndexError, ValueError):
            raise ParameterError(f"bad design name {name!r}: expected mindelay:K:q") from None
        return generate_min_delay(K, q)
    raise ParameterError(f"unknown design {name!r}")


CATALOG_NAMES = ("table1", "table2", "table3", "simple:3", "simple:4", "mindelay:5:2", "mindelay:4:4")


def catalog() -> List[SncDesign]:
    return [builtin(name) for name in CATALOG_NAMES]


def expand_block(d: SncDesign, m: int) -> List[SymbolicCombo]:
    """Dạng hình thức của K gói được phát trong block m.

    V_{1,m} = X_m, V_{k,m} = X_{m-D} ⊕ f_k(X_m, ..., X_{m-D+1}); các chỉ số <= 0
    là gói ảo bằng 0 và bị bỏ khỏi tổ hợp.
    """
    if m < 1:
        raise ParameterError(f"block index m={m} must be >= 1")
    f = d.field
    combos = [SymbolicCombo.single(m)]
    for k in range(2, d.K + 1):
        terms: Dict[int, int] = {m - d.D: 1}
        for j, c in d.f_terms(k, m).items():
            terms[j] = f.add(terms.get(j, 0), c)
        combos.append(SymbolicCombo.from_dict({j: c for j, c in terms.items() if j >= 1}))
    return combos


def design_from_rows(name: str, K: int, D: int, q: int, rows: Iterable[Sequence[int]]) -> SncDesign:
    return SncDesign(K=K, D=D, q=q, C=tuple(tuple(r) for r in rows), name=name)

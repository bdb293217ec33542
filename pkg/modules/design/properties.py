"""
Design Properties - μ, điều kiện đường chéo và số mũ lỗi bảo đảm của thiết kế SNC
"""
from __future__ import annotations

from ..errors import NotApplicableError
from .snc_design import SncDesign, expand_block


def compute_mu(d: SncDesign) -> int:
    """Số gói trong các block m-D..m-1 chứa X_{m-D} và ngoài ra chỉ chứa gói FD (chỉ số < m-D)"""
    m = 2 * d.D + 2  # mọi chỉ số đều dương, không dính gói ảo
    target = m - d.D
    mu = 0
    for b in range(m - d.D, m):
        for combo in expand_block(d, b):
            terms = combo.as_dict()
            if terms.get(target, 0) and all(j < target for j in terms if j != target):
                mu += 1
    return mu


def check_diag_condition(d: SncDesign) -> bool:
    """C chứa (sau hoán vị hàng) D hàng chỉ có một phần tử khác 0, phủ đủ D cột"""
    if d.D > d.K - 1:
        return False
    covered = set()
    for row in d.C:
        nonzero = [col for col, c in enumerate(row) if c != 0]
        if len(nonzero) == 1:
            covered.add(nonzero[0])
    return len(covered) == d.D


def diagonal_rows(d: SncDesign):
    """Các cặp (slot k, cột d) mà f_k = c_{k,d} X_{m-d+1}"""
    pairs = []
    for k, row in enumerate(d.C, start=2):
        nonzero = [col for col, c in enumerate(row, start=1) if c != 0]
        if len(nonzero) == 1:
            pairs.append((k, nonzero[0]))
    return pairs


def lemma3_exponent(d: SncDesign) -> int:
    """Cận dưới μ + D của số mũ lỗi"""
    if not check_diag_condition(d):
        raise NotApplicableError(f"{d.name}: C has no nonzero diagonal of size D={d.D} with D <= K-1")
    return compute_mu(d) + d.D

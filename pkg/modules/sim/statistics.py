"""
Statistics - Ước lượng tỉ lệ Bernoulli với sai số chuẩn và khoảng tin cậy 95%
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from scipy.stats import beta, norm

from ..errors import ParameterError

CONFIDENCE = 0.95


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    ci_low: float
    ci_high: float
    n: int
    count: int

    @property
    def ci95(self) -> Tuple[float, float]:
        return self.ci_low, self.ci_high

    @classmethod
    def from_counts(cls, count: int, n: int, confidence: float = CONFIDENCE) -> 'Estimate':
        """Khoảng xấp xỉ chuẩn; khi không có sự kiện nào thì dùng cận trên Clopper-Pearson"""
        if n < 1:
            raise ParameterError("an estimate needs at least one sample")
        if not 0 <= count <= n:
            raise ParameterError(f"count {count} outside [0, {n}]")
        mean = count / n
        stderr = math.sqrt(mean * (1.0 - mean) / n)
        alpha = 1.0 - confidence
        if count == 0:
            low, high = 0.0, float(beta.ppf(1.0 - alpha / 2, 1, n))
        else:
            z = float(norm.ppf(1.0 - alpha / 2))
            low, high = max(0.0, mean - z * stderr), min(1.0, mean + z * stderr)
        return cls(mean=mean, stderr=stderr, ci_low=low, ci_high=high, n=n, count=count)

    def within(self, value: float, sigmas: float = 3.0) -> bool:
        """mean cách value không quá sigmas sai số chuẩn (sai số chuẩn lấy tại value)"""
        se = max(self.stderr, math.sqrt(value * (1.0 - value) / self.n))
        return abs(self.mean - value) <= sigmas * se

"""
CSV Writer - Ghi bảng kết quả với thứ tự cột cố định, header luôn có, quoting kiểu RFC 4180
"""
from __future__ import annotations

import csv
import logging
import sys
from contextlib import contextmanager
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, TextIO

from ..analysis import ErrorEstimate
from ..sim import Estimate, Scheme, SimConfig, SimResult, SweepRow, histogram_from_result

logger = logging.getLogger(__name__)

SIMULATE_COLUMNS = ['scheme', 'K', 'D', 'q', 'epsilon', 'deadlines', 'failures', 'error_rate',
                    'ci_low', 'ci_high', 'seed']
SWEEP_COLUMNS = SIMULATE_COLUMNS + ['analytic_exact', 'analytic_leading', 'is_upper_bound']
HISTOGRAM_COLUMNS = ['scheme', 'K', 'D', 'q', 'epsilon', 'sessions', 'retransmissions', 'count',
                     'probability', 'seed']
ANALYZE_COLUMNS = ['formula', 'inputs', 'value', 'is_upper_bound']
DESIGN_COLUMNS = ['name', 'K', 'D', 'q', 'mu', 'diag_condition', 'lemma_exponent']


def fmt(value: Any) -> str:
    """Số thực in với 12 chữ số có nghĩa để CSV giống hệt nhau giữa các lần chạy"""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """Mở file đích, hoặc stdout khi không có đường dẫn; OSError được để lan ra ngoài"""
    if path is None:
        yield sys.stdout
        return
    with open(path, 'w', newline='', encoding='utf-8') as handle:
        yield handle
    logger.info("wrote %s", path)


def write_rows(stream: TextIO, columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> int:
    writer = csv.DictWriter(stream, fieldnames=list(columns), lineterminator='\r\n',
                            quoting=csv.QUOTE_MINIMAL, extrasaction='raise')
    writer.writeheader()
    count = 0
    for row in rows:
        writer.writerow({key: fmt(row.get(key)) for key in columns})
        count += 1
    return count


def _scheme_fields(scheme: Scheme) -> Dict[str, Any]:
    return {'scheme': scheme.label, 'K': scheme.K, 'D': scheme.D, 'q': scheme.q}


def _estimate_fields(estimate: Estimate) -> Dict[str, Any]:
    return {
        'deadlines': estimate.n,
        'failures': estimate.count,
        'error_rate': estimate.mean,
        'ci_low': estimate.ci_low,
        'ci_high': estimate.ci_high,
    }


def simulate_row(cfg: SimConfig, result: SimResult) -> Dict[str, Any]:
    row = _scheme_fields(cfg.scheme)
    row.update(epsilon=cfg.channel.epsilon, seed=cfg.master_seed)
    row.update(_estimate_fields(result.error_rate))
    return row


def sweep_rows(cfg: SimConfig, rows: Sequence[SweepRow]) -> List[Dict[str, Any]]:
    out = []
    for item in rows:
        row = _scheme_fields(item.scheme)
        row.update(epsilon=item.epsilon, seed=cfg.master_seed)
        row.update(_estimate_fields(item.estimate))
        analytic: Optional[ErrorEstimate] = item.analytic
        if analytic is not None:
            row.update(analytic_exact=analytic.exact, analytic_leading=analytic.leading,
                       is_upper_bound=analytic.is_upper_bound)
        out.append(row)
    return out


def histogram_rows(cfg: SimConfig, result: SimResult) -> List[Dict[str, Any]]:
    histogram = histogram_from_result(result)
    out = []
    for count, probability in histogram.items():
        row = _scheme_fields(cfg.scheme)
        row.update(epsilon=cfg.channel.epsilon, sessions=result.sessions, retransmissions=count,
                   count=result.retransmissions[count], probability=float(probability),
                   seed=cfg.master_seed)
        out.append(row)
    return out


def gnuplot_hints(columns: Sequence[str], x: str, ys: Sequence[str], path: Optional[str]) -> str:
    """Gợi ý lệnh gnuplot theo chỉ số cột (bắt đầu từ 1); không vẽ gì"""
    source = path or '<file.csv>'
    xi = columns.index(x) + 1
    lines = ["set datafile separator ','", "set logscale y"]
    plots = [f"'{source}' using {xi}:{columns.index(y) + 1} with linespoints title '{y}'" for y in ys]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines)

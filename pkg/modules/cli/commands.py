"""
Commands - Cài đặt các lệnh simulate / analyze / channel / designs và mã thoát
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Callable, Dict, Iterable, List, Sequence

import numpy as np

from ..analysis import (
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
from ..channel import fbl_epsilon, ra_epsilon_poisson
from ..design import SncDesign, builtin, catalog, check_diag_condition, compute_mu, expand_block, lemma3_exponent
from ..errors import ConfigError, NotApplicableError, ParameterError
from ..sim import SweepAxis, run, sweep
from .config_parser import RunConfig, RunConfigParser, RunMode, design_to_toml
from .csv_writer import (
    ANALYZE_COLUMNS,
    DESIGN_COLUMNS,
    HISTOGRAM_COLUMNS,
    SIMULATE_COLUMNS,
    SWEEP_COLUMNS,
    gnuplot_hints,
    histogram_rows,
    open_output,
    simulate_row,
    sweep_rows,
    write_rows,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3


def fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def guarded(handler: Callable[[argparse.Namespace], int]) -> Callable[[argparse.Namespace], int]:
    """Chuyển exception thành mã thoát: cấu hình/tham số -> 2, I/O -> 3"""
    def wrapper(args: argparse.Namespace) -> int:
        try:
            return handler(args)
        except (ConfigError, ParameterError, NotApplicableError) as exc:
            return fail(str(exc), EXIT_USAGE)
        except OSError as exc:
            return fail(str(exc), EXIT_IO)
    wrapper.__name__ = handler.__name__
    wrapper.__doc__ = handler.__doc__
    return wrapper


def load_run_config(path: str) -> RunConfig:
    try:
        return RunConfigParser.parse_file(path)
    except FileNotFoundError:
        raise ConfigError("<file>", f"config file {path!r} not found") from None


# --- simulate ---

@guarded
def cmd_simulate(args: argparse.Namespace) -> int:
    """Chạy mô phỏng theo file cấu hình, ghi CSV ra --out hoặc stdout"""
    run_cfg = load_run_config(args.config)
    if not getattr(args, 'verbose', 0):
        logging.getLogger().setLevel(run_cfg.verbosity.upper())
    overrides: Dict[str, Any] = {}
    if args.seed is not None:
        overrides['master_seed'] = args.seed
    if args.sessions is not None:
        overrides['sessions'] = args.sessions
    if args.threads is not None:
        overrides['threads'] = args.threads
    cfg = run_cfg.sim.with_changes(**overrides) if overrides else run_cfg.sim
    output = args.out if args.out is not None else run_cfg.output

    if run_cfg.sweep is not None:
        schemes = run_cfg.sweep.schemes or [cfg.scheme]
        rows = sweep_rows(cfg, sweep(cfg, run_cfg.sweep.axis, run_cfg.sweep.values, schemes))
        x = 'K' if run_cfg.sweep.axis is SweepAxis.K else 'epsilon'
        columns, ys = SWEEP_COLUMNS, ['error_rate', 'analytic_exact', 'analytic_leading']
    elif run_cfg.mode is RunMode.HISTOGRAM:
        rows = histogram_rows(cfg, run(cfg))
        columns, x, ys = HISTOGRAM_COLUMNS, 'retransmissions', ['probability']
    else:
        rows = [simulate_row(cfg, run(cfg))]
        columns, x, ys = SIMULATE_COLUMNS, 'epsilon', ['error_rate']

    with open_output(output) as stream:
        write_rows(stream, columns, rows)
    if args.gnuplot:
        print(gnuplot_hints(columns, x, ys, output), file=sys.stderr)
    return EXIT_OK


# --- analyze ---

def parse_grid(text: str, cast: Callable[[str], Any] = float) -> List[Any]:
    """Lưới giá trị: "a,b,c" hoặc "log:start:stop:count" (cách đều theo log); chuỗi rỗng là lưới rỗng"""
    text = text.strip()
    if not text:
        return []
    if text.startswith("log:"):
        try:
            _, start, stop, count = text.split(":")
            start, stop, count = float(start), float(stop), int(count)
        except ValueError:
            raise ParameterError(f"bad grid {text!r}: expected log:start:stop:count") from None
        if start <= 0 or stop <= 0 or count < 1:
            raise ParameterError(f"bad grid {text!r}: bounds must be > 0 and count >= 1")
        return [float(v) for v in np.geomspace(start, stop, count)]
    try:
        return [cast(v) for v in text.split(",")]
    except ValueError:
        raise ParameterError(f"bad grid {text!r}") from None


def _check_eps(grid: Sequence[float]) -> Sequence[float]:
    for eps in grid:
        if not 0.0 <= eps <= 1.0:
            raise ParameterError(f"--eps values must lie in [0, 1], got {eps}")
    return grid


def _row(formula: str, value: float, upper: bool = False, **inputs: Any) -> Dict[str, Any]:
    text = ";".join(f"{k}={v:.12g}" if isinstance(v, float) else f"{k}={v}" for k, v in inputs.items())
    return {'formula': formula, 'inputs': text, 'value': value, 'is_upper_bound': upper}


def analyze_rows(args: argparse.Namespace) -> Iterable[Dict[str, Any]]:
    formula = args.formula
    eps_grid = _check_eps(parse_grid(args.eps))
    Ks = parse_grid(args.K, int)
    Ms = parse_grid(args.M, int)
    q = args.q

    if formula == "krep":
        return [_row(formula, krep_error(e, K).exact, eps=e, K=K) for e in eps_grid for K in Ks]
    if formula in ("snc_simple", "snc_simple_leading"):
        rows = []
        for e in eps_grid:
            for K in Ks:
                est = snc_simple_error(e, K)
                value = est.exact if formula == "snc_simple" else est.leading
                rows.append(_row(formula, value, est.is_upper_bound, eps=e, K=K))
        return rows
    if formula == "lemma3":
        d = builtin(args.design)
        return [_row(formula, snc_lemma3_bound(e, d).leading, True, eps=e, design=d.name) for e in eps_grid]
    if formula == "table1":
        return [_row(formula, table1_first_packet_error(e), eps=e) for e in eps_grid]
    if formula in ("rlnc_rank", "rlnc_rank_nz"):
        func = rlnc_rank_prob if formula == "rlnc_rank" else rlnc_rank_prob_nz
        Ss = parse_grid(args.S, int)
        return [_row(formula, func(S, M, q), S=S, M=M, q=q) for S in Ss for M in Ms]
    if formula == "rlnc_all":
        return [_row(formula, rlnc_all_success(M * K, M, e, q), eps=e, M=M, K=K, q=q)
                for e in eps_grid for M in Ms for K in Ks]
    if formula == "krep_all":
        return [_row(formula, krep_all_success(M * K, M, e, K), eps=e, M=M, K=K)
                for e in eps_grid for M in Ms for K in Ks]
    if formula == "delay":
        scheme = SchemeKind(args.scheme)
        rows = []
        for K in Ks:
            if scheme is SchemeKind.BLOCK_NC:
                rows.extend(_row(formula, decode_delay_slots(scheme, K, M=M), scheme=scheme.value, K=K, M=M)
                            for M in Ms)
            else:
                D = args.D if args.D is not None else K - 1
                rows.append(_row(formula, decode_delay_slots(scheme, K, D=D), scheme=scheme.value, K=K, D=D))
        return rows
    if formula == "min_k":
        scheme = SchemeKind(args.scheme)
        return [_row(formula, min_repetitions(e, args.target, scheme), scheme=scheme.value, eps=e,
                     target=args.target) for e in eps_grid]
    raise ParameterError(f"unknown formula {formula!r}")


@guarded
def cmd_analyze(args: argparse.Namespace) -> int:
    """Xuất các giá trị giải tích dưới dạng CSV"""
    rows = list(analyze_rows(args))
    with open_output(args.out) as stream:
        write_rows(stream, ANALYZE_COLUMNS, rows)
    return EXIT_OK


# --- channel ---

@guarded
def cmd_channel(args: argparse.Namespace) -> int:
    """In ε của mô hình kênh đã chọn với 12 chữ số có nghĩa"""
    if args.fbl:
        if (args.snr_db is None) == (args.snr_linear is None):
            return fail("--fbl needs exactly one of --snr-db or --snr-linear", EXIT_USAGE)
        if args.n is None or args.nbit is None:
            return fail("--fbl needs --n and --nbit", EXIT_USAGE)
        snr = 10.0 ** (args.snr_db / 10.0) if args.snr_db is not None else args.snr_linear
        eps = fbl_epsilon(snr, args.n, args.nbit)
    else:
        if args.lam is None or args.L is None:
            return fail("--ra needs --lam and --L", EXIT_USAGE)
        eps = ra_epsilon_poisson(args.lam, args.L)
    print(f"{eps:.12g}")
    return EXIT_OK


# --- designs ---

def _relative(index: int, m: int) -> str:
    offset = index - m
    return "X_m" if offset == 0 else f"X_{{m{offset:+d}}}"


def describe_block(d: SncDesign) -> List[str]:
    """Các gói của block m ở trạng thái ổn định, viết theo chỉ số tương đối với m"""
    m = 2 * d.D + 2
    lines = []
    for k, combo in enumerate(expand_block(d, m), start=1):
        terms = [(_relative(j, m) if c == 1 else f"{c}·{_relative(j, m)}") for j, c in combo.terms]
        lines.append(f"V_{{{k},m}} = " + " ⊕ ".join(terms))
    return lines


def design_row(d: SncDesign) -> Dict[str, Any]:
    diag = check_diag_condition(d)
    return {
        'name': d.name, 'K': d.K, 'D': d.D, 'q': d.q, 'mu': compute_mu(d),
        'diag_condition': diag, 'lemma_exponent': lemma3_exponent(d) if diag else None,
    }


@guarded
def cmd_designs(args: argparse.Namespace) -> int:
    """Liệt kê danh mục thiết kế, hoặc khai triển một thiết kế theo tên / theo file cấu hình"""
    if args.name is None and args.config is None:
        write_rows(sys.stdout, DESIGN_COLUMNS, (design_row(d) for d in catalog()))
        return EXIT_OK
    if args.config is not None:
        scheme = load_run_config(args.config).sim.scheme
        if scheme.design is None:
            raise ConfigError("scheme.kind", "the config does not describe an SNC design")
        d = scheme.design
    else:
        d = builtin(args.name)
    row = design_row(d)
    print(f"{d.name}: {d.describe()}, mu={row['mu']}, diag_condition={'yes' if row['diag_condition'] else 'no'}"
          + (f", exponent={row['lemma_exponent']}" if row['diag_condition'] else ""))
    for line in describe_block(d):
        print(line)
    print()
    print(design_to_toml(d))
    return EXIT_OK

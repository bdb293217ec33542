"""
Config Parser - Đọc file cấu hình TOML của một lần chạy, báo lỗi kèm tên trường và số dòng
"""
from __future__ import annotations

import logging
import re
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type, TypeVar

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..analysis import SchemeKind
from ..channel import ChannelModel
from ..codec import DecoderMode
from ..design import SncDesign, builtin, design_from_rows
from ..errors import ConfigError, ParameterError
from ..sim import Engine, Scheme, SimConfig, SweepAxis

logger = logging.getLogger(__name__)

E = TypeVar('E', bound=Enum)

VERBOSITY_LEVELS = ("warning", "info", "debug")

TOP_KEYS = {"seed", "sessions", "session_packets", "payload_len", "decoder_mode", "mode", "threads",
            "output", "verbosity", "trace", "engine", "scheme", "design", "channel", "sweep"}
SECTION_KEYS = {
    "scheme": {"kind", "K", "q", "design", "exclude_zero"},
    "design": {"name", "K", "D", "q", "C"},
    "channel": {"model", "epsilon", "snr_db", "snr_linear", "n", "nbit", "lam", "L"},
    "sweep": {"axis", "values", "schemes"},
}
CHANNEL_KEYS = {
    "fixed": {"epsilon"},
    "fbl": {"snr_db", "snr_linear", "n", "nbit"},
    "ra": {"lam", "L"},
}


class RunMode(Enum):
    ERROR_RATE = "error_rate"
    HISTOGRAM = "histogram"


@dataclass(frozen=True)
class SweepSpec:
    axis: SweepAxis
    values: Tuple[float, ...]
    schemes: Tuple[Scheme, ...] = ()


@dataclass(frozen=True)
class RunConfig:
    sim: SimConfig
    mode: RunMode = RunMode.ERROR_RATE
    output: Optional[str] = None
    verbosity: str = "warning"
    sweep: Optional[SweepSpec] = None


class RunConfigParser:
    """Parser cho file cấu hình; mọi giá trị được kiểm tra trước khi dựng SimConfig"""

    def __init__(self, text: str):
        self.text = text
        self.lines = text.splitlines()

    @staticmethod
    def parse_file(path: str) -> RunConfig:
        text = Path(path).read_text(encoding="utf-8")
        return RunConfigParser(text).parse()

    @staticmethod
    def parse_text(text: str) -> RunConfig:
        return RunConfigParser(text).parse()

    # --- Vị trí lỗi ---

    def line_of(self, field: str) -> Optional[int]:
        """Số dòng (bắt đầu từ 1) nơi khoá được gán, tìm trong section tương ứng"""
        *sections, key = field.split(".")
        section = ".".join(sections)
        current = ""
        key_re = re.compile(rf'^\s*"?{re.escape(key)}"?\s*=')
        header_re = re.compile(r'^\s*\[([^\[\]]+)\]\s*(#.*)?$')
        for number, line in enumerate(self.lines, start=1):
            header = header_re.match(line)
            if header:
                current = header.group(1).strip()
                if not key and current == section:
                    return number
                continue
            if current == section and key_re.match(line):
                return number
        return None

    def error(self, field: str, message: str) -> ConfigError:
        return ConfigError(field, message, self.line_of(field))

    # --- Kiểm tra kiểu ---

    def _int(self, table: Dict[str, Any], field: str, key: str, minimum: Optional[int] = None,
             default: Optional[int] = None) -> Optional[int]:
        path = f"{field}.{key}" if field else key
        if key not in table:
            if default is None:
                raise self.error(path, "is required")
            return default
        value = table[key]
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.error(path, f"expected an integer, got {value!r}")
        if minimum is not None and value < minimum:
            raise self.error(path, f"must be >= {minimum}, got {value}")
        return value

    def _float(self, table: Dict[str, Any], field: str, key: str) -> float:
        path = f"{field}.{key}" if field else key
        if key not in table:
            raise self.error(path, "is required")
        value = table[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.error(path, f"expected a number, got {value!r}")
        return float(value)

    def _bool(self, table: Dict[str, Any], field: str, key: str, default: bool) -> bool:
        path = f"{field}.{key}" if field else key
        value = table.get(key, default)
        if not isinstance(value, bool):
            raise self.error(path, f"expected true or false, got {value!r}")
        return value

    def _str(self, table: Dict[str, Any], field: str, key: str, default: Optional[str] = None) -> Optional[str]:
        path = f"{field}.{key}" if field else key
        value = table.get(key, default)
        if value is not None and not isinstance(value, str):
            raise self.error(path, f"expected a string, got {value!r}")
        return value

    def _choice(self, table: Dict[str, Any], field: str, key: str, enum: Type[E], default: Optional[E] = None) -> E:
        path = f"{field}.{key}" if field else key
        if key not in table:
            if default is None:
                raise self.error(path, "is required")
            return default
        raw = table[key]
        for member in enum:
            if member.value == raw:
                return member
        allowed = "|".join(str(m.value) for m in enum)
        raise self.error(path, f"expected one of {allowed}, got {raw!r}")

    def _table(self, data: Dict[str, Any], name: str, required: bool = True) -> Optional[Dict[str, Any]]:
        if name not in data:
            if required:
                raise self.error(name, f"section [{name}] is required")
            return None
        table = data[name]
        if not isinstance(table, dict):
            raise self.error(name, "expected a table")
        unknown = sorted(set(table) - SECTION_KEYS[name])
        if unknown:
            raise self.error(f"{name}.{unknown[0]}", "unknown key")
        return table

    # --- Các section ---

    def parse(self) -> RunConfig:
        try:
            data = tomllib.loads(self.text)
        except tomllib.TOMLDecodeError as exc:
            match = re.search(r"line (\d+)", str(exc))
            raise ConfigError("<syntax>", str(exc), int(match.group(1)) if match else None) from None

        unknown = sorted(set(data) - TOP_KEYS)
        if unknown:
            raise self.error(unknown[0], "unknown key")

        scheme = self.parse_scheme(data)
        channel = self.parse_channel(self._table(data, "channel"))
        verbosity = self._str(data, "", "verbosity", "warning")
        if verbosity not in VERBOSITY_LEVELS:
            raise self.error("verbosity", f"expected one of {'|'.join(VERBOSITY_LEVELS)}, got {verbosity!r}")

        try:
            sim = SimConfig(
                scheme=scheme,
                channel=channel,
                session_packets=self._int(data, "", "session_packets", minimum=1),
                sessions=self._int(data, "", "sessions", minimum=1),
                payload_len=self._int(data, "", "payload_len", minimum=1, default=8),
                master_seed=self._int(data, "", "seed", minimum=0, default=1),
                decoder_mode=self._choice(data, "", "decoder_mode", DecoderMode, DecoderMode.FULL_GE),
                engine=self._choice(data, "", "engine", Engine, Engine.AUTO),
                trace=self._bool(data, "", "trace", False),
                threads=self._int(data, "", "threads", minimum=0, default=0),
            )
        except ParameterError as exc:
            raise self.error("seed", str(exc)) from None

        return RunConfig(
            sim=sim,
            mode=self._choice(data, "", "mode", RunMode, RunMode.ERROR_RATE),
            output=self._str(data, "", "output"),
            verbosity=verbosity,
            sweep=self.parse_sweep(self._table(data, "sweep", required=False)),
        )

    def parse_design(self, table: Dict[str, Any]) -> SncDesign:
        name = self._str(table, "design", "name", "custom")
        K = self._int(table, "design", "K", minimum=2)
        D = self._int(table, "design", "D", minimum=1)
        q = self._int(table, "design", "q", minimum=2)
        rows = table.get("C")
        if rows is None:
            raise self.error("design.C", "is required")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise self.error("design.C", "expected a list of rows, e.g. [[1, 0], [0, 1]]")
        if any(isinstance(c, bool) or not isinstance(c, int) for r in rows for c in r):
            raise self.error("design.C", "entries must be integers")
        try:
            return design_from_rows(name, K, D, q, rows)
        except ParameterError as exc:
            message = str(exc)
            field = "design.q" if "power of two" in message else "design.D" if message.startswith("D=") else "design.C"
            raise self.error(field, message) from None

    def parse_scheme(self, data: Dict[str, Any]) -> Scheme:
        table = self._table(data, "scheme")
        kind = self._choice(table, "scheme", "kind", SchemeKind)
        design_table = self._table(data, "design", required=False)
        if kind is not SchemeKind.SNC and design_table is not None:
            raise self.error("design", "a [design] section is only used by kind = \"snc\"")

        if kind is SchemeKind.SNC:
            if "exclude_zero" in table:
                raise self.error("scheme.exclude_zero", "not used by kind = \"snc\"")
            name = self._str(table, "scheme", "design")
            if (name is None) == (design_table is None):
                raise self.error("scheme.design", "give either a catalog name or a [design] section, not both")
            if name is not None:
                try:
                    design = builtin(name)
                except ParameterError as exc:
                    raise self.error("scheme.design", str(exc)) from None
            else:
                design = self.parse_design(design_table)
            if "K" in table and self._int(table, "scheme", "K") != design.K:
                raise self.error("scheme.K", f"K={table['K']} does not match the design's K={design.K}")
            if "q" in table and self._int(table, "scheme", "q") != design.q:
                raise self.error("scheme.q", f"q={table['q']} does not match the design's q={design.q}")
            return Scheme.snc(design)

        if "design" in table:
            raise self.error("scheme.design", f"not used by kind = \"{kind.value}\"")
        K = self._int(table, "scheme", "K", minimum=1)
        q = self._int(table, "scheme", "q", minimum=2, default=2)
        try:
            if kind is SchemeKind.KREP:
                if "exclude_zero" in table:
                    raise self.error("scheme.exclude_zero", "not used by kind = \"krep\"")
                return Scheme.krep(K, q=q)
            return Scheme.block_nc(K, q=q, exclude_zero=self._bool(table, "scheme", "exclude_zero", False))
        except ParameterError as exc:
            raise self.error("scheme.q", str(exc)) from None

    def parse_channel(self, table: Dict[str, Any]) -> ChannelModel:
        model = self._str(table, "channel", "model")
        if model not in CHANNEL_KEYS:
            raise self.error("channel.model", f"expected one of fixed|fbl|ra, got {model!r}")
        extra = sorted(set(table) - CHANNEL_KEYS[model] - {"model"})
        if extra:
            raise self.error(f"channel.{extra[0]}", f"not used by model = \"{model}\"")
        try:
            if model == "fixed":
                eps = self._float(table, "channel", "epsilon")
                if not 0.0 <= eps <= 1.0:
                    raise self.error("channel.epsilon", f"must lie in [0, 1], got {eps}")
                return ChannelModel.fixed(eps)
            if model == "fbl":
                if ("snr_db" in table) == ("snr_linear" in table):
                    raise self.error("channel.snr_db", "give exactly one of snr_db or snr_linear")
                if "snr_db" in table:
                    snr = 10.0 ** (self._float(table, "channel", "snr_db") / 10.0)
                else:
                    snr = self._float(table, "channel", "snr_linear")
                    if snr <= 0:
                        raise self.error("channel.snr_linear", f"must be > 0, got {snr}")
                n = self._int(table, "channel", "n", minimum=1)
                nbit = self._int(table, "channel", "nbit", minimum=1)
                return ChannelModel.finite_blocklength(snr, n, nbit)
            lam = self._float(table, "channel", "lam")
            if lam <= 0:
                raise self.error("channel.lam", f"must be > 0, got {lam}")
            L = self._int(table, "channel", "L", minimum=2)
            return ChannelModel.random_access(lam, L)
        except ParameterError as exc:
            raise self.error("channel.model", str(exc)) from None

    def parse_sweep(self, table: Optional[Dict[str, Any]]) -> Optional[SweepSpec]:
        if table is None:
            return None
        axis = self._choice(table, "sweep", "axis", SweepAxis)
        values = table.get("values")
        if not isinstance(values, list):
            raise self.error("sweep.values", "expected a list")
        if any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in values):
            raise self.error("sweep.values", "entries must be numbers")
        if axis is SweepAxis.EPSILON and any(not 0.0 <= v <= 1.0 for v in values):
            raise self.error("sweep.values", "epsilon values must lie in [0, 1]")
        if axis is SweepAxis.K and any(not isinstance(v, int) or v < 1 for v in values):
            raise self.error("sweep.values", "K values must be integers >= 1")
        schemes = table.get("schemes", [])
        if not isinstance(schemes, list) or not all(isinstance(s, str) for s in schemes):
            raise self.error("sweep.schemes", "expected a list of strings, e.g. [\"krep:3\", \"snc:table3\"]")
        return SweepSpec(axis=axis, values=tuple(values), schemes=tuple(self.parse_scheme_spec(s) for s in schemes))

    def parse_scheme_spec(self, spec: str) -> Scheme:
        """Phương án viết gọn: krep:K[:q], block_nc:K[:q] hoặc snc:<tên thiết kế>"""
        kind, _, rest = spec.partition(":")
        try:
            if kind == "snc" and rest:
                return Scheme.snc(builtin(rest))
            numbers = [int(part) for part in rest.split(":")] if rest else []
            if kind in ("krep", "block_nc") and len(numbers) in (1, 2):
                K, q = numbers[0], numbers[1] if len(numbers) == 2 else 2
                if K < 1:
                    raise ParameterError(f"K={K} must be >= 1")
                return Scheme.krep(K, q=q) if kind == "krep" else Scheme.block_nc(K, q=q)
        except (ParameterError, ValueError) as exc:
            raise self.error("sweep.schemes", f"bad scheme {spec!r}: {exc}") from None
        raise self.error("sweep.schemes", f"bad scheme {spec!r}: expected krep:K[:q], block_nc:K[:q] or snc:<design>")


def design_to_toml(d: SncDesign) -> str:
    """Đoạn [design] tương đương, đọc lại bằng RunConfigParser cho đúng thiết kế này"""
    rows = ", ".join("[" + ", ".join(str(c) for c in row) + "]" for row in d.C)
    return "\n".join([
        "[design]",
        f'name = "{d.name}"',
        f"K = {d.K}",
        f"D = {d.D}",
        f"q = {d.q}",
        f"C = [{rows}]",
    ])

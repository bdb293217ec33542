"""
CLI Module - Giao diện dòng lệnh: đọc cấu hình, chạy lệnh con và xuất CSV
"""
from .commands import EXIT_IO, EXIT_OK, EXIT_USAGE, cmd_analyze, cmd_channel, cmd_designs, cmd_simulate, parse_grid
from .config_parser import RunConfig, RunConfigParser, RunMode, SweepSpec, design_to_toml
from .csv_writer import ANALYZE_COLUMNS, HISTOGRAM_COLUMNS, SIMULATE_COLUMNS, SWEEP_COLUMNS, write_rows

__all__ = [
    'cmd_simulate', 'cmd_analyze', 'cmd_channel', 'cmd_designs', 'parse_grid',
    'EXIT_OK', 'EXIT_USAGE', 'EXIT_IO',
    'RunConfig', 'RunConfigParser', 'RunMode', 'SweepSpec', 'design_to_toml',
    'SIMULATE_COLUMNS', 'SWEEP_COLUMNS', 'HISTOGRAM_COLUMNS', 'ANALYZE_COLUMNS', 'write_rows',
]

"""
Main Entry Point - Điểm vào dòng lệnh cho phòng thí nghiệm Sliding Network Coding
Mô phỏng, công thức giải tích, mô hình kênh và danh mục thiết kế SNC
"""
import sys
import os
import argparse
import logging
from typing import List, Optional

# Thêm thư mục hiện tại vào Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from modules.cli import cmd_analyze, cmd_channel, cmd_designs, cmd_simulate

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
VERBOSITY = {0: logging.WARNING, 1: logging.INFO}


def build_parser() -> argparse.ArgumentParser:
    """Dựng parser với bốn lệnh con"""
    parser = argparse.ArgumentParser(
        prog="snc-lab",
        description="SNC Lab - Mô phỏng và phân tích Sliding Network Coding cho truyền tin URLLC",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Commands:
  simulate : Chạy mô phỏng Monte Carlo theo file cấu hình TOML
  analyze  : Xuất các đường giải tích (CSV)
  channel  : Tính xác suất xoá ε của mô hình kênh
  designs  : Liệt kê / khai triển các thiết kế SNC

Examples:
  python main.py simulate configs/snc_simple3.toml --sessions 10000
  python main.py analyze --formula snc_simple --eps log:1e-2:0.316:10 --K 3
  python main.py channel --fbl --snr-linear 1 --n 100 --nbit 50
  python main.py channel --ra --lam 1 --L 100
  python main.py designs table3

Exit codes: 0 thành công, 2 lỗi cấu hình/tham số, 3 lỗi I/O
        """
    )
    parser.add_argument('--verbose', '-v', action='count', default=0,
                        help='Tăng mức log (-v: info, -vv: debug)')
    parser.add_argument('--version', action='version', version='SNC Lab v1.0.0')
    sub = parser.add_subparsers(dest='command', required=True)

    sim = sub.add_parser('simulate', help='Chạy mô phỏng theo file cấu hình')
    sim.add_argument('config', help='Đường dẫn file cấu hình TOML')
    sim.add_argument('--seed', type=int, help='Ghi đè master seed')
    sim.add_argument('--sessions', type=int, help='Ghi đè số phiên')
    sim.add_argument('--threads', type=int, help='Số tiến trình (0 = tự động, mặc định theo SNC_THREADS)')
    sim.add_argument('--out', help='File CSV đầu ra (mặc định: stdout)')
    sim.add_argument('--gnuplot', action='store_true', help='In gợi ý cột cho gnuplot ra stderr')
    sim.set_defaults(handler=cmd_simulate)

    ana = sub.add_parser('analyze', help='Xuất giá trị các công thức giải tích')
    ana.add_argument('--formula', required=True,
                     choices=['krep', 'snc_simple', 'snc_simple_leading', 'lemma3', 'table1', 'rlnc_rank',
                              'rlnc_rank_nz', 'rlnc_all', 'krep_all', 'delay', 'min_k'],
                     help='Công thức cần tính')
    ana.add_argument('--eps', default='', help='Lưới ε: "0.01,0.1" hoặc "log:start:stop:count"')
    ana.add_argument('--K', default='', help='Danh sách K, ví dụ "2,3,4"')
    ana.add_argument('--M', default='', help='Danh sách M (số gói của thông điệp)')
    ana.add_argument('--S', default='', help='Danh sách S (số gói NC nhận được)')
    ana.add_argument('--D', type=int, help='Tham số trễ D cho công thức delay (mặc định K-1)')
    ana.add_argument('--q', type=int, default=2, help='Kích thước trường')
    ana.add_argument('--design', default='table3', help='Tên thiết kế cho lemma3')
    ana.add_argument('--scheme', default='krep', choices=['krep', 'snc', 'block_nc'],
                     help='Phương án cho delay / min_k')
    ana.add_argument('--target', type=float, default=1e-6, help='Mức lỗi mục tiêu cho min_k')
    ana.add_argument('--out', help='File CSV đầu ra (mặc định: stdout)')
    ana.set_defaults(handler=cmd_analyze)

    ch = sub.add_parser('channel', help='Tính ε của mô hình kênh')
    model = ch.add_mutually_exclusive_group(required=True)
    model.add_argument('--fbl', action='store_true', help='Mô hình blocklength hữu hạn')
    model.add_argument('--ra', action='store_true', help='Mô hình truy nhập ngẫu nhiên 2 bước')
    snr = ch.add_mutually_exclusive_group()
    snr.add_argument('--snr-db', type=float, help='SNR theo dB')
    snr.add_argument('--snr-linear', type=float, help='SNR tuyến tính')
    ch.add_argument('--n', type=int, help='Số lần dùng kênh')
    ch.add_argument('--nbit', type=int, help='Số bit thông điệp')
    ch.add_argument('--lam', type=float, help='Tải trung bình λ')
    ch.add_argument('--L', type=int, help='Số preamble')
    ch.set_defaults(handler=cmd_channel)

    des = sub.add_parser('designs', help='Danh mục thiết kế SNC')
    des.add_argument('name', nargs='?', help='Tên thiết kế (table1, table3, simple:K, mindelay:K:q)')
    des.add_argument('--config', help='Lấy thiết kế [design] từ file cấu hình')
    des.set_defaults(handler=cmd_designs)
    return parser


def configure_logging(verbose: int) -> None:
    level = VERBOSITY.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """Main function với argument parsing; trả về mã thoát"""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())

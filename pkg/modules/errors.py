"""
Errors - Các exception dùng chung cho toàn bộ ứng dụng
"""
from typing import Optional


class SncError(Exception):
    """Base class cho mọi lỗi của thư viện"""


class ParameterError(SncError, ValueError):
    """Tham số nằm ngoài miền hợp lệ"""


class NotApplicableError(SncError):
    """Điều kiện áp dụng của một công thức không thoả mãn"""


class ContractViolation(SncError, RuntimeError):
    """API bị gọi sai thứ tự hoặc thiếu dữ liệu đầu vào"""


class ConfigError(SncError):
    """Lỗi file cấu hình, luôn kèm tên trường bị lỗi"""

    def __init__(self, field: str, message: str, line: Optional[int] = None):
        self.field = field
        self.line = line
        self.message = message
        location = f"line {line}: " if line is not None else ""
        super().__init__(f"{location}{field}: {message}")

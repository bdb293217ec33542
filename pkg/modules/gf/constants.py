"""
Chứa các hằng số định nghĩa trường GF(2^w): đa thức nguyên thuỷ mặc định và phần tử sinh.
Các giá trị cố định để payload mẫu giống hệt nhau giữa các lần chạy và các bản cài đặt.
"""

# --- Giới hạn bậc mở rộng ---
MIN_DEGREE = 1
MAX_DEGREE = 8

# --- Đa thức mặc định theo bậc w (bitmask, bit i = hệ số của x^i) ---
PRIM_POLY_W1 = 0b11          # x + 1 (trường nhị phân)
PRIM_POLY_W2 = 0b111         # x^2 + x + 1
PRIM_POLY_W3 = 0b1011        # x^3 + x + 1
PRIM_POLY_W4 = 0b10011       # x^4 + x + 1
PRIM_POLY_W5 = 0b100101      # x^5 + x^2 + 1
PRIM_POLY_W6 = 0b1000011     # x^6 + x + 1
PRIM_POLY_W7 = 0b10000011    # x^7 + x + 1
PRIM_POLY_W8 = 0x11B         # x^8 + x^4 + x^3 + x + 1

DEFAULT_PRIM_POLY = {
    1: PRIM_POLY_W1,
    2: PRIM_POLY_W2,
    3: PRIM_POLY_W3,
    4: PRIM_POLY_W4,
    5: PRIM_POLY_W5,
    6: PRIM_POLY_W6,
    7: PRIM_POLY_W7,
    8: PRIM_POLY_W8,
}

# --- Phần tử sinh dùng để dựng bảng log/antilog ---
# 0x11B bất khả quy nhưng x chỉ có bậc 51, nên w=8 dùng x + 1 làm phần tử sinh
DEFAULT_GENERATOR = {
    1: 0x01,
    2: 0x02,
    3: 0x02,
    4: 0x02,
    5: 0x02,
    6: 0x02,
    7: 0x02,
    8: 0x03,
}

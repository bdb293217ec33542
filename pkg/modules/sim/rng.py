"""
RNG - Luồng số ngẫu nhiên tách được theo (master_seed, phiên, mục đích)
"""
from enum import IntEnum

import numpy as np


class StreamTag(IntEnum):
    PAYLOAD = 0
    CHANNEL = 1
    CODING = 2


def session_rng(master_seed: int, session_index: int, tag: StreamTag) -> np.random.Generator:
    """Luồng của một phiên chỉ phụ thuộc khoá (seed, phiên, tag), không phụ thuộc thứ tự chạy"""
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(session_index, int(tag)))
    return np.random.Generator(np.random.PCG64(seq))

"""
Channel Module - Mô hình kênh xoá và các công thức xác suất xoá gói
"""
from .formulas import (
    V_BAR,
    channel_dispersion,
    fbl_epsilon,
    fbl_epsilon_limit,
    fbl_rate,
    poisson_active_pmf,
    qfunc,
    qfunc_inv,
    ra_epsilon_general,
    ra_epsilon_poisson,
)
from .models import ChannelModel, ChannelVariant, erase, erasure_mask, simulate_ra_collisions

__all__ = [
    'ChannelModel', 'ChannelVariant', 'erase', 'erasure_mask', 'simulate_ra_collisions',
    'V_BAR', 'qfunc', 'qfunc_inv', 'channel_dispersion', 'fbl_epsilon', 'fbl_rate', 'fbl_epsilon_limit',
    'ra_epsilon_poisson', 'ra_epsilon_general', 'poisson_active_pmf',
]

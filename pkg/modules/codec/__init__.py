"""
Codec Module - Mã hoá/giải mã SNC, K-repetition và RLNC theo khối
"""
from .packets import CodedPacket, DecodeOutcome, DecodeStatus, DecoderMode, ReceivedPacket
from .snc_codec import ReceiverState, decode_deadline, pattern_decodable, receiver_ingest, snc_encode_block
from .baselines import RlncResult, krep_decode, krep_encode, rlnc_decode, rlnc_encode

__all__ = [
    'CodedPacket', 'ReceivedPacket', 'DecodeOutcome', 'DecodeStatus', 'DecoderMode',
    'ReceiverState', 'snc_encode_block', 'receiver_ingest', 'decode_deadline', 'pattern_decodable',
    'RlncResult', 'krep_encode', 'krep_decode', 'rlnc_encode', 'rlnc_decode',
]

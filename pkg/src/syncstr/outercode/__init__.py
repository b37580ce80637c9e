from .gf import GF
from .rs import ERASURE, DecodeResult, RSCode, rs_decode_ee, rs_encode
from .listrec import codebook, list_recover_bruteforce
from .bukhma import BukhMaFamily, bukh_ma_generate, bukh_ma_list_decode, bukh_ma_periods, square_wave

__all__ = [
    "GF", "ERASURE", "DecodeResult", "RSCode", "rs_decode_ee", "rs_encode",
    "codebook", "list_recover_bruteforce",
    "BukhMaFamily", "bukh_ma_generate", "bukh_ma_list_decode", "bukh_ma_periods", "square_wave",
]

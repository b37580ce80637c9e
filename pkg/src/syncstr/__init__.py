"""Synchronization strings and codes for insertion/deletion channels."""

from .align import (
    edit_distance,
    lcs,
    lcs_length,
    longest_noncrossing_matching,
    rsd,
    self_matching,
    verify_long_distance,
    verify_self_matching,
    verify_sync,
)
from .channel import Budget, Delete, Insert, apply, random_adversary
from .chansim import DUMMY, simulate
from .codec import ListCodec, UniqueCodec, index, reconstruct, reposition_global, reposition_online
from .edindex import EDIndex, FastCodec, approx_ed, build_ed_index
from .errors import DecodeFailure, GenerationError, ParameterError
from .rng import SplitMix64, derive_seed
from .syncgen import (
    boost_square,
    build_local_index,
    build_long_distance,
    gen_self_matching,
    gen_sync,
    infinite_prefix,
)

__all__ = [
    "edit_distance", "lcs", "lcs_length", "longest_noncrossing_matching", "rsd", "self_matching",
    "verify_long_distance", "verify_self_matching", "verify_sync",
    "Budget", "Delete", "Insert", "apply", "random_adversary",
    "DUMMY", "simulate",
    "ListCodec", "UniqueCodec", "index", "reconstruct", "reposition_global", "reposition_online",
    "EDIndex", "FastCodec", "approx_ed", "build_ed_index",
    "DecodeFailure", "GenerationError", "ParameterError",
    "SplitMix64", "derive_seed",
    "boost_square", "build_local_index", "build_long_distance", "gen_self_matching", "gen_sync",
    "infinite_prefix",
]

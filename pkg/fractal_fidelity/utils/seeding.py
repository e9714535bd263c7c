"""Stable sub-seed derivation for realizations and tomography cells"""

import hashlib
from typing import Union

SEED_HASH = "sha256(master:key1:key2:...)[:8], little-endian"


def derive_seed(master_seed: int, *keys: Union[int, float, str]) -> int:
    """
    Derive a reproducible 64-bit seed from a master seed and job keys

    Args:
        master_seed: Run-level seed
        keys: Job coordinates (realization index, cell index, K, ...)

    Returns:
        Non-negative integer seed, independent of scheduling order
    """
    token = ":".join([str(int(master_seed))] + [_key(k) for k in keys])
    digest = hashlib.sha256(token.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def _key(value: Union[int, float, str]) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)

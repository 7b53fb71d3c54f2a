"""Deterministic seed derivation for independent RNG streams.

All randomized code in this package draws from ``random.Random`` (Mersenne
Twister) instances seeded through :func:`derive_seed`, so that every trial,
phase, or probe stream is reproducible from a single master seed and a label
path, independently of scheduling.
"""

import hashlib

RNG_DESCRIPTION = "mt19937+sha256-derive/v1"


def derive_seed(master: int, *path: int | str) -> int:
    """Derive a 64-bit child seed from a master seed and a label path."""
    text = "|".join([str(master), *(str(p) for p in path)])
    digest = hashlib.sha256(text.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")

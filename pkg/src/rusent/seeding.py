"""Deterministic per-stage seed derivation from one base seed."""

import hashlib


def derive_seed(base_seed, label):
    """Hash ``label`` into ``base_seed`` and return an unsigned 64-bit seed."""
    digest = hashlib.sha256(f"{base_seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")

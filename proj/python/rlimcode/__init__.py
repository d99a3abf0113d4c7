"""Run-length-limited codes that minimize codeword weight, plus a diffusive-channel simulator."""

from ._core import (
    Codec,
    CodeParams,
    family_size,
    shortest_length,
    simulate,
    table_bits,
    tap_profile,
)

__all__ = [
    "Codec",
    "CodeParams",
    "family_size",
    "shortest_length",
    "simulate",
    "table_bits",
    "tap_profile",
]

"""Finite binary strings, their set view, and the exponent/odd-part pairing.

Plain Python ``str`` over ``"01"`` is the working currency everywhere:
position 0 is the leftmost character, and the set view of a string is the
set of positions holding a 1.  Pair codes are ``2**n * (2*m + 1)``; a code
always exceeds its first coordinate, and 0 is the only natural number that
is not a code.
"""
from __future__ import annotations

from .errors import LabError

# 2**n is materialized, so the exponent is capped to keep desk-scale inputs
# from allocating absurdly large integers; m only enters linearly.
MAX_PAIR_EXPONENT = 4096
MAX_PAIR_SECOND = 1 << 53


class BitstringError(LabError, ValueError):
    kind = "bad-bitstring"


class PairRangeError(LabError, ValueError):
    kind = "input-too-large"


def as_bits(text: str) -> str:
    """Check that *text* contains only '0'/'1' characters and return it."""
    if not isinstance(text, str):
        raise BitstringError(f"expected a string of bits, got {type(text).__name__}")
    for ch in text:
        if ch not in "01":
            raise BitstringError(f"invalid bit {ch!r} in {text!r}")
    return text


def is_prefix(prefix: str, text: str) -> bool:
    """Prefix order on strings: bitwise agreement below ``len(prefix)``."""
    return text.startswith(prefix)


def string_to_set(sigma: str) -> frozenset[int]:
    """Set view of a string: the positions that hold a 1."""
    return frozenset(i for i, ch in enumerate(sigma) if ch == "1")


def encode_pair(n: int, m: int) -> int:
    """Code the pair (n, m) as ``2**n * (2*m + 1)``.

    The code is at least 1, exceeds n, and the coding is injective.
    """
    if n < 0 or m < 0:
        raise PairRangeError("pair coordinates must be naturals")
    if n > MAX_PAIR_EXPONENT or m > MAX_PAIR_SECOND:
        raise PairRangeError(f"pair ({n}, {m}) exceeds the desk-scale input range")
    return (1 << n) * (2 * m + 1)


def decode_pair(code: int) -> tuple[int, int] | None:
    """Invert :func:`encode_pair`; returns None for 0, the only non-code."""
    if code < 0:
        raise PairRangeError("codes are naturals")
    if code == 0:
        return None
    n = (code & -code).bit_length() - 1
    return n, ((code >> n) - 1) // 2

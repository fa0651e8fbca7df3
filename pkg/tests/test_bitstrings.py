from __future__ import annotations

import pytest

from relce import as_bits, decode_pair, encode_pair, is_prefix, string_to_set
from relce.bitstrings import BitstringError, PairRangeError

from helpers import ref_decode


def test_encode_pair_examples():
    assert encode_pair(0, 0) == 1
    assert encode_pair(1, 0) == 2
    assert encode_pair(0, 1) == 3


def test_decode_pair_examples():
    assert decode_pair(1) == (0, 0)
    assert decode_pair(12) == (2, 1)
    assert decode_pair(0) is None


def test_pair_round_trip_small():
    seen = {}
    for n in range(32):
        for m in range(32):
            code = encode_pair(n, m)
            assert code > n
            assert code >= 1
            assert code not in seen
            seen[code] = (n, m)
            assert decode_pair(code) == (n, m)
    for code in range(1, 2048):
        n, m = decode_pair(code)
        assert encode_pair(n, m) == code
        assert ref_decode(code) == (n, m)


def test_pair_input_validation():
    with pytest.raises(PairRangeError):
        encode_pair(-1, 0)
    with pytest.raises(PairRangeError):
        encode_pair(0, -1)
    with pytest.raises(PairRangeError):
        encode_pair(5000, 0)
    with pytest.raises(PairRangeError):
        decode_pair(-3)


def test_string_to_set_examples():
    assert string_to_set("1010") == {0, 2}
    assert string_to_set("0000") == frozenset()
    assert string_to_set("") == frozenset()


def test_string_to_set_monotone_under_bitwise_order():
    for value in range(64):
        sigma = format(value, "b").zfill(6)
        for extra in range(64):
            tau = format(value | extra, "b").zfill(6)
            assert string_to_set(sigma) <= string_to_set(tau)


def test_prefix_relation():
    assert is_prefix("", "0110")
    assert is_prefix("01", "0110")
    assert is_prefix("0110", "0110")
    assert not is_prefix("1", "0110")
    assert not is_prefix("01101", "0110")


def test_as_bits_rejects_junk():
    assert as_bits("0101") == "0101"
    assert as_bits("") == ""
    with pytest.raises(BitstringError):
        as_bits("012")
    with pytest.raises(BitstringError):
        as_bits("ab")
    with pytest.raises(BitstringError):
        as_bits(None)

"""
Encoding - Pairing functions and canonical indices of finite sets
"""

import math
from typing import FrozenSet, Iterable, Sequence, Tuple

from core.errors import InputTooLarge

WORD_BITS = 64
MAX_WORD = (1 << WORD_BITS) - 1


def _cantor(j: int, k: int) -> int:
    return (j + k) * (j + k + 1) // 2 + k


def _uncantor(z: int) -> Tuple[int, int]:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    k = z - w * (w + 1) // 2
    return w - k, k


def pair(j: int, k: int) -> int:
    """
    Cantor pairing of two naturals

    Args:
        j: First component
        k: Second component

    Returns:
        (j+k)(j+k+1)/2 + k
    """
    if j < 0 or k < 0:
        raise InputTooLarge(f"pair expects naturals, got ({j}, {k})")
    value = _cantor(j, k)
    if value > MAX_WORD:
        raise InputTooLarge(f"pair({j}, {k}) overflows a {WORD_BITS}-bit word")
    return value


def unpair(z: int) -> Tuple[int, int]:
    """Inverse of pair()"""
    if z < 0 or z > MAX_WORD:
        raise InputTooLarge(f"cannot unpair {z}")
    return _uncantor(z)


def triple(j: int, k: int, l: int) -> int:
    return pair(j, pair(k, l))


def untriple(z: int) -> Tuple[int, int, int]:
    j, rest = unpair(z)
    k, l = unpair(rest)
    return j, k, l


def finset_encode(elements: Iterable[int]) -> int:
    """
    Canonical index of a finite set (bit-set coding)

    Args:
        elements: Finite set of naturals

    Returns:
        Sum of 2^i over the elements
    """
    code = 0
    for x in set(elements):
        if x < 0:
            raise InputTooLarge(f"negative element {x}")
        if x >= WORD_BITS:
            raise InputTooLarge(f"element {x} does not fit a {WORD_BITS}-bit canonical index")
        code |= 1 << x
    return code


def finset_decode(code: int) -> FrozenSet[int]:
    """Finite set D_n with canonical index n"""
    if code < 0 or code > MAX_WORD:
        raise InputTooLarge(f"canonical index {code} out of range")
    return frozenset(i for i in range(code.bit_length()) if code >> i & 1)


def canonical_key(elements: Iterable[int]) -> Tuple[int, ...]:
    """
    Sort key that orders finite sets exactly as their canonical indices would,
    without building the (possibly huge) index itself
    """
    return tuple(sorted(set(elements), reverse=True))


class SequenceCoder:
    """
    Bijection between naturals and finite sequences of naturals:
    code(()) = 0, code(s + (a,)) = pair(code(s), a) + 1. Unbounded.
    """

    def encode(self, seq: Sequence[int]) -> int:
        code = 0
        for a in seq:
            if a < 0:
                raise InputTooLarge(f"negative sequence entry {a}")
            code = _cantor(code, a) + 1
        return code

    def decode(self, code: int) -> Tuple[int, ...]:
        if code < 0:
            raise InputTooLarge(f"negative sequence code {code}")
        out = []
        while code > 0:
            code, a = _uncantor(code - 1)
            out.append(a)
        return tuple(reversed(out))

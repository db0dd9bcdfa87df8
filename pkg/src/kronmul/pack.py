"""Linear-time packing of coefficient vectors into evaluated integers.

pack(v, N) is v's value at 2**N, pack_reversed the normalized value at
2**(-N) (coefficient reversal), and the negated variants the values at
-2**N and -2**(-N), which may be negative and come back as SignedBig.

Packing is byte-blitting, not repeated shift-and-add, so it runs in time
linear in the output size.  Chunk widths below the coefficient bound are
allowed down to half the bound: the vector is split into even- and
odd-index parts, each blitted at width 2N, and combined with one addition
or subtraction.  In that overlapped regime the positive sums can carry one
bit past the nominal N*(L-1)+b span; for N >= b the span bound is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bignat import BigNat, SignedBig, _pack_ints

__all__ = ["CoeffVec", "pack", "pack_reversed", "pack_negated",
           "pack_negated_reversed"]


@dataclass(frozen=True)
class CoeffVec:
    """Dense coefficient vector over the naturals, constant term first.

    Every coefficient satisfies 0 <= c < 2**width_bound_bits; the length is
    at least 1 (declare trailing zeros explicitly, lengths are not inferred).
    """

    coeffs: tuple[int, ...]
    width_bound_bits: int

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 1:
            raise ValueError("a coefficient vector has length >= 1")
        if self.width_bound_bits < 1:
            raise ValueError("width bound must be >= 1")
        bound = self.width_bound_bits
        for i, c in enumerate(coeffs):
            if c < 0 or c.bit_length() > bound:
                raise ValueError(f"coefficient {i} outside [0, 2**{bound})")

    def __len__(self) -> int:
        return len(self.coeffs)

    def reversed(self) -> "CoeffVec":
        return CoeffVec(self.coeffs[::-1], self.width_bound_bits)


def _check_width(v: CoeffVec, width_bits: int) -> None:
    if 2 * width_bits < v.width_bound_bits:
        raise ValueError(
            f"chunk width {width_bits} below half the coefficient bound "
            f"{v.width_bound_bits}")


def _value_at_pow2(coeffs, width_bits: int, bound: int) -> int:
    # sum(c_i * 2**(i*width)); a single blit when chunks cannot overlap,
    # otherwise two half-rate blits at double width plus one add.
    if width_bits >= bound:
        return _pack_ints(coeffs, width_bits)
    even = _pack_ints(coeffs[0::2], 2 * width_bits)
    odd = _pack_ints(coeffs[1::2], 2 * width_bits)
    return even + (odd << width_bits)


def _value_at_neg_pow2(coeffs, width_bits: int) -> int:
    # sum((-1)**i * c_i * 2**(i*width)) via the even/odd split.
    even = _pack_ints(coeffs[0::2], 2 * width_bits)
    odd = _pack_ints(coeffs[1::2], 2 * width_bits)
    return even - (odd << width_bits)


def pack(v: CoeffVec, width_bits: int) -> BigNat:
    """Value of v at 2**width_bits."""
    _check_width(v, width_bits)
    return BigNat(_value_at_pow2(v.coeffs, width_bits, v.width_bound_bits))


def pack_reversed(v: CoeffVec, width_bits: int) -> BigNat:
    """Value of the reversed vector at 2**width_bits, i.e. the value of v at
    2**(-width_bits) normalized by 2**(width_bits*(L-1))."""
    _check_width(v, width_bits)
    return BigNat(_value_at_pow2(v.coeffs[::-1], width_bits,
                                 v.width_bound_bits))


def pack_negated(v: CoeffVec, width_bits: int) -> SignedBig:
    """Value of v at -2**width_bits: even part minus shifted odd part."""
    _check_width(v, width_bits)
    return SignedBig.from_int(_value_at_neg_pow2(v.coeffs, width_bits))


def pack_negated_reversed(v: CoeffVec, width_bits: int) -> SignedBig:
    """Value of v at -2**(-width_bits), normalized by 2**(width_bits*(L-1)).

    Equals (-1)**(L-1) times the negated pack of the reversed vector: the
    sign of each reversed chunk follows its original index, so the result
    flips sign for even lengths.
    """
    _check_width(v, width_bits)
    value = _value_at_neg_pow2(v.coeffs[::-1], width_bits)
    if len(v.coeffs) % 2 == 0:
        value = -value
    return SignedBig.from_int(value)

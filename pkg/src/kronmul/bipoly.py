"""Bivariate multiplication in R[x, y] reduced to univariate products in
R[x], over any commutative ring supplying the needed operations.

The standard substitution evaluates at y = x**N with N wide enough that
output chunks never touch.  The reciprocal variant adds the evaluation at
y = x**(-N) with N half as wide, the negated variant the evaluation at
y = -x**N (this one needs exact division by 2 in the ring), and the
four-point variant combines both tricks at a quarter of the width.

Every variant takes the univariate multiplier as a callback, so any R[x]
product that agrees with schoolbook convolution can be plugged in.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

__all__ = ["RingOps", "BiPoly", "MissingHalveError", "ring_z", "ring_zmod",
           "bks_standard", "bks_reciprocal", "bks_negated", "bks_four"]

UniMul = Callable[[Sequence[Any], Sequence[Any]], list]


class MissingHalveError(ValueError):
    """The ring has no exact halving, so this variant cannot run (doubling
    is not injective, e.g. Z/nZ with even n)."""


@dataclass(frozen=True)
class RingOps:
    """Operation table for a commutative ring's additive structure.

    ``halve`` is the inverse of doubling where that map is injective; leave
    it None otherwise.
    """

    zero: Any
    add: Callable[[Any, Any], Any]
    sub: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    eq: Callable[[Any, Any], bool]
    halve: Optional[Callable[[Any], Any]] = None


def _halve_int(a: int) -> int:
    if a & 1:
        raise ValueError("halving an odd integer is not exact")
    return a >> 1


def ring_z() -> RingOps:
    """The integers."""
    return RingOps(zero=0, add=operator.add, sub=operator.sub,
                   neg=operator.neg, eq=operator.eq, halve=_halve_int)


def ring_zmod(n: int) -> RingOps:
    """Integers mod n for a word-sized n >= 2; halving exists only for odd n."""
    if n < 2:
        raise ValueError("modulus must be >= 2")
    halve = None
    if n % 2 == 1:
        inv2 = (n + 1) // 2
        halve = lambda a: (a * inv2) % n
    return RingOps(zero=0,
                   add=lambda a, b: (a + b) % n,
                   sub=lambda a, b: (a - b) % n,
                   neg=lambda a: (-a) % n,
                   eq=operator.eq,
                   halve=halve)


@dataclass(frozen=True)
class BiPoly:
    """Dense bivariate polynomial: coeffs[i][j] is the coefficient of
    x**i * y**j.  Lengths are declared by the array shape, not inferred."""

    coeffs: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        coeffs = tuple(tuple(row) for row in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs or not coeffs[0]:
            raise ValueError("both lengths must be >= 1")
        width = len(coeffs[0])
        if any(len(row) != width for row in coeffs):
            raise ValueError("coefficient array must be rectangular")

    @property
    def lx(self) -> int:
        return len(self.coeffs)

    @property
    def ly(self) -> int:
        return len(self.coeffs[0])


def _ychunks(p: BiPoly) -> list[list[Any]]:
    # chunk j is the x-coefficient vector of y**j
    return [[p.coeffs[i][j] for i in range(p.lx)] for j in range(p.ly)]


def _from_ychunks(chunks: list[list[Any]]) -> BiPoly:
    lx = len(chunks[0])
    return BiPoly(tuple(tuple(chunks[j][i] for j in range(len(chunks)))
                        for i in range(lx)))


def _check_shapes(f: BiPoly, g: BiPoly) -> None:
    if f.lx != g.lx or f.ly != g.ly:
        raise ValueError("inputs must share both lengths")


def _require_halve(ring: RingOps) -> None:
    if ring.halve is None:
        raise MissingHalveError("ring does not support exact halving")


def _default_mul(ring: RingOps, mul: UniMul | None) -> UniMul:
    if mul is not None:
        return mul
    from .oracle import uni_schoolbook
    return uni_schoolbook(ring, operator.mul)


def _concat_chunks(chunks, spacing, chunk_len, ring, reverse=False,
                   alternate=False):
    # sum of chunk_k placed at position k*spacing (or (count-1-k)*spacing
    # when reversed), with sign (-1)**k when alternating.  Chunks overlap
    # whenever spacing < chunk_len, hence additions rather than placement.
    count = len(chunks)
    vec = [ring.zero] * (spacing * (count - 1) + chunk_len)
    for k, chunk in enumerate(chunks):
        base = (count - 1 - k if reverse else k) * spacing
        if alternate and k % 2 == 1:
            for t, c in enumerate(chunk):
                vec[base + t] = ring.sub(vec[base + t], c)
        else:
            for t, c in enumerate(chunk):
                vec[base + t] = ring.add(vec[base + t], c)
    return vec


def _split_chunks(vec, spacing, chunk_len, count):
    return [list(vec[k * spacing:k * spacing + chunk_len])
            for k in range(count)]


def _overlap_recover(fwd, rev, count, spacing, chunk_len, ring):
    """Peel overlapped chunks off the forward and reversed sums.

    Chunk k starts at k*spacing in ``fwd`` and at (count-1-k)*spacing in
    ``rev``.  Its first ``spacing`` entries are clean in the forward sum
    once chunks 0..k-1 are subtracted, and its remaining entries are clean
    in the reversed sum for the same reason; gluing the two and subtracting
    from both sums exposes the next chunk.
    """
    fwd = list(fwd)
    rev = list(rev)
    out = []
    low = min(spacing, chunk_len)
    for k in range(count):
        fpos = k * spacing
        rpos = (count - 1 - k) * spacing
        chunk = fwd[fpos:fpos + low]
        if chunk_len > spacing:
            chunk += rev[rpos + spacing:rpos + chunk_len]
        for t, c in enumerate(chunk):
            fwd[fpos + t] = ring.sub(fwd[fpos + t], c)
            rev[rpos + t] = ring.sub(rev[rpos + t], c)
        out.append(chunk)
    return out


def bks_standard(f: BiPoly, g: BiPoly, ring: RingOps,
                 mul: UniMul | None = None) -> BiPoly:
    """One univariate product of length 2*Lx*Ly - Lx - Ly + 1; output chunks
    land in disjoint windows."""
    _check_shapes(f, g)
    mul = _default_mul(ring, mul)
    lx, ly = f.lx, f.ly
    spacing = 2 * lx - 1
    cat_f = _concat_chunks(_ychunks(f), spacing, lx, ring)
    cat_g = _concat_chunks(_ychunks(g), spacing, lx, ring)
    prod = mul(cat_f, cat_g)
    return _from_ychunks(_split_chunks(prod, spacing, 2 * lx - 1, 2 * ly - 1))


def bks_reciprocal(f: BiPoly, g: BiPoly, ring: RingOps,
                   mul: UniMul | None = None) -> BiPoly:
    """Two univariate products of length Lx*Ly (forward and reversed chunk
    order) plus O(Lx*Ly) subtractions for the overlap recovery."""
    _check_shapes(f, g)
    mul = _default_mul(ring, mul)
    lx, ly = f.lx, f.ly
    chunks_f = _ychunks(f)
    chunks_g = _ychunks(g)
    prod_fwd = mul(_concat_chunks(chunks_f, lx, lx, ring),
                   _concat_chunks(chunks_g, lx, lx, ring))
    prod_rev = mul(_concat_chunks(chunks_f, lx, lx, ring, reverse=True),
                   _concat_chunks(chunks_g, lx, lx, ring, reverse=True))
    chunks = _overlap_recover(prod_fwd, prod_rev, 2 * ly - 1, lx,
                              2 * lx - 1, ring)
    return _from_ychunks(chunks)


def bks_negated(f: BiPoly, g: BiPoly, ring: RingOps,
                mul: UniMul | None = None) -> BiPoly:
    """Two univariate products of length Lx*Ly with alternating chunk signs;
    even/odd output chunks come from the half-sum and half-difference."""
    _check_shapes(f, g)
    _require_halve(ring)
    mul = _default_mul(ring, mul)
    lx, ly = f.lx, f.ly
    chunks_f = _ychunks(f)
    chunks_g = _ychunks(g)
    prod_pos = mul(_concat_chunks(chunks_f, lx, lx, ring),
                   _concat_chunks(chunks_g, lx, lx, ring))
    prod_neg = mul(_concat_chunks(chunks_f, lx, lx, ring, alternate=True),
                   _concat_chunks(chunks_g, lx, lx, ring, alternate=True))
    halve = ring.halve
    even_vec = [halve(ring.add(a, b)) for a, b in zip(prod_pos, prod_neg)]
    odd_vec = [halve(ring.sub(a, b)) for a, b in zip(prod_pos, prod_neg)]
    odd_vec = odd_vec[lx:]  # strip the x**N normalization
    even = _split_chunks(even_vec, 2 * lx, 2 * lx - 1, ly)
    odd = _split_chunks(odd_vec, 2 * lx, 2 * lx - 1, ly - 1)
    chunks = [None] * (2 * ly - 1)
    chunks[0::2] = even
    chunks[1::2] = odd
    return _from_ychunks(chunks)


def bks_four(f: BiPoly, g: BiPoly, ring: RingOps,
             mul: UniMul | None = None) -> BiPoly:
    """Four univariate products of length ceil(Lx/2)*(Ly-1) + Lx.  Chunks
    overlap already during evaluation, so building the four points costs
    ring additions; recovery is an even/odd split followed by two overlap
    recoveries."""
    _check_shapes(f, g)
    _require_halve(ring)
    mul = _default_mul(ring, mul)
    lx, ly = f.lx, f.ly
    if lx == 1 and ly == 1:
        return BiPoly(((mul([f.coeffs[0][0]], [g.coeffs[0][0]])[0],),))
    n = (lx + 1) // 2
    chunks_f = _ychunks(f)
    chunks_g = _ychunks(g)

    def points(chunks):
        return (_concat_chunks(chunks, n, lx, ring),
                _concat_chunks(chunks, n, lx, ring, alternate=True),
                _concat_chunks(chunks, n, lx, ring, reverse=True),
                _concat_chunks(chunks, n, lx, ring, reverse=True,
                               alternate=True))

    pf = points(chunks_f)
    pg = points(chunks_g)
    prod_pos, prod_neg, prod_rpos, prod_rneg = (
        mul(a, b) for a, b in zip(pf, pg))

    halve = ring.halve
    fwd_even = [halve(ring.add(a, b)) for a, b in zip(prod_pos, prod_neg)]
    fwd_odd = [halve(ring.sub(a, b)) for a, b in zip(prod_pos, prod_neg)][n:]
    rev_even = [halve(ring.add(a, b)) for a, b in zip(prod_rpos, prod_rneg)]
    rev_odd = [halve(ring.sub(a, b)) for a, b in zip(prod_rpos, prod_rneg)][n:]

    even = _overlap_recover(fwd_even, rev_even, ly, 2 * n, 2 * lx - 1, ring)
    if ly > 1:
        odd = _overlap_recover(fwd_odd, rev_odd, ly - 1, 2 * n,
                               2 * lx - 1, ring)
    else:
        odd = []
    chunks = [None] * (2 * ly - 1)
    chunks[0::2] = even
    chunks[1::2] = odd
    return _from_ychunks(chunks)

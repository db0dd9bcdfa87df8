"""Multiplication in (Z/nZ)[x] for word-sized n.

Inputs are lifted to integer polynomials, multiplied with one of the
Kronecker substitution variants, and reduced coefficient by coefficient.
The coefficient bit bound is taken from the modulus (bit length of n - 1),
not from the actual coefficients, so the variant choice and the packed
widths depend only on (length, modulus).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .bignat import MulConfig, MulStats
from .ksint import ks1_mul, ks2_mul, ks3_mul, ks4_mul
from .pack import CoeffVec

__all__ = ["ModPoly", "Variant", "AutoThresholds", "DEFAULT_THRESHOLDS",
           "mod_mul", "choose_variant"]

_WORD_BITS = 64


class Variant(enum.Enum):
    KS1 = "ks1"
    KS2 = "ks2"
    KS3 = "ks3"
    KS4 = "ks4"
    AUTO = "auto"


_VARIANT_FUNCS = {
    Variant.KS1: ks1_mul,
    Variant.KS2: ks2_mul,
    Variant.KS3: ks3_mul,
    Variant.KS4: ks4_mul,
}


@dataclass(frozen=True)
class ModPoly:
    """Dense polynomial over Z/nZ, constant term first, n in one machine word."""

    coeffs: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        n = self.modulus
        if n < 2:
            raise ValueError("modulus must be >= 2")
        if n.bit_length() > _WORD_BITS:
            raise ValueError(f"modulus must fit in {_WORD_BITS} bits")
        if len(coeffs) < 1:
            raise ValueError("a polynomial has length >= 1")
        for i, c in enumerate(coeffs):
            if not 0 <= c < n:
                raise ValueError(f"coefficient {i} outside [0, {n})")

    def __len__(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class AutoThresholds:
    """Length bands for AUTO variant selection.

    Crossovers are machine dependent; these defaults were calibrated with
    the shipped benchmark (``kronmul bench``) on this implementation.
    """

    ks1_max_length: int = 48
    ks3_max_length: int = 512


DEFAULT_THRESHOLDS = AutoThresholds()


def choose_variant(length: int, coeff_bits: int,
                   thresholds: AutoThresholds | None = None) -> Variant:
    """Deterministic band lookup: ks1 for short inputs (padding savings do
    not pay for the extra pack/unpack work), ks3 in the middle, ks4 beyond."""
    if length < 1 or coeff_bits < 1:
        raise ValueError("length and coefficient bits must be >= 1")
    t = thresholds or DEFAULT_THRESHOLDS
    if length <= t.ks1_max_length:
        return Variant.KS1
    if length <= t.ks3_max_length:
        return Variant.KS3
    return Variant.KS4


def mod_mul(f: ModPoly, g: ModPoly, variant: Variant = Variant.AUTO, *,
            thresholds: AutoThresholds | None = None,
            stats: MulStats | None = None,
            config: MulConfig | None = None,
            parallel: bool = False) -> ModPoly:
    """f * g mod n; the result has length len(f) + len(g) - 1."""
    if f.modulus != g.modulus:
        raise ValueError("modulus mismatch")
    n = f.modulus
    coeff_bits = max(1, (n - 1).bit_length())
    if variant is Variant.AUTO:
        variant = choose_variant(max(len(f), len(g)), coeff_bits, thresholds)
    func = _VARIANT_FUNCS[variant]
    lifted_f = CoeffVec(f.coeffs, coeff_bits)
    lifted_g = CoeffVec(g.coeffs, coeff_bits)
    if func is ks1_mul:
        product = func(lifted_f, lifted_g, stats=stats, config=config)
    else:
        product = func(lifted_f, lifted_g, stats=stats, config=config,
                       parallel=parallel)
    return ModPoly(tuple(c % n for c in product.coeffs), n)

"""Dense polynomial multiplication via multipoint Kronecker substitution.

The integer path packs coefficient vectors into big integers at one, two or
four carefully chosen evaluation points (powers and reciprocals of 2**N,
with and without negation), multiplies with an instrumented bignum core,
and unpacks; the narrower the packing, the less zero-padding is multiplied.
A ring-generic bivariate reduction, a (Z/nZ)[x] front end and a benchmark
CLI sit on top.
"""

from .bignat import (BigNat, DEFAULT_MUL_CONFIG, LIMB_BITS, MulConfig,
                     MulStats, SignedBig, UnderflowError, add, from_digits,
                     mul, mul_classical, mul_karatsuba, mul_signed,
                     shl_bits, shr_bits, shr_bits_exact, sub, to_digits)
from .bipoly import (BiPoly, MissingHalveError, RingOps, bks_four,
                     bks_negated, bks_reciprocal, bks_standard, ring_z,
                     ring_zmod)
from .ksint import (KsParams, OverlapDigits, ReconstructionError,
                    derive_params, ks1_mul, ks2_mul, ks3_mul, ks4_mul,
                    reconstruct_overlapped)
from .modpoly import (AutoThresholds, DEFAULT_THRESHOLDS, ModPoly, Variant,
                      choose_variant, mod_mul)
from .oracle import schoolbook_bivar, schoolbook_mod, schoolbook_z, \
    uni_schoolbook
from .pack import (CoeffVec, pack, pack_negated, pack_negated_reversed,
                   pack_reversed)

__version__ = "0.1.0"

__all__ = [
    "BigNat", "SignedBig", "MulStats", "MulConfig", "DEFAULT_MUL_CONFIG",
    "LIMB_BITS", "UnderflowError", "add", "sub", "mul", "mul_classical",
    "mul_karatsuba", "mul_signed", "shl_bits", "shr_bits", "shr_bits_exact",
    "to_digits", "from_digits",
    "CoeffVec", "pack", "pack_reversed", "pack_negated",
    "pack_negated_reversed",
    "KsParams", "OverlapDigits", "ReconstructionError", "derive_params",
    "ks1_mul", "ks2_mul", "ks3_mul", "ks4_mul", "reconstruct_overlapped",
    "BiPoly", "RingOps", "MissingHalveError", "ring_z", "ring_zmod",
    "bks_standard", "bks_reciprocal", "bks_negated", "bks_four",
    "ModPoly", "Variant", "AutoThresholds", "DEFAULT_THRESHOLDS", "mod_mul",
    "choose_variant",
    "schoolbook_z", "schoolbook_bivar", "schoolbook_mod", "uni_schoolbook",
    "__version__",
]

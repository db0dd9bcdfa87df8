"""Brute-force schoolbook references.

These are the independent checks the test suites compare the packed-
evaluation paths against.  They share no packing or limb code with the main
algorithms: plain convolution loops over native integers or supplied ring
callbacks.  Performance is a non-goal.
"""

from __future__ import annotations

from .bipoly import BiPoly, RingOps
from .modpoly import ModPoly
from .pack import CoeffVec

__all__ = ["schoolbook_z", "schoolbook_bivar", "schoolbook_mod",
           "uni_schoolbook"]


def schoolbook_z(f: CoeffVec, g: CoeffVec) -> CoeffVec:
    """Convolution over the integers: h[k] = sum of f[i]*g[j] with i+j = k."""
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                out[i + j] += a * b
    bound = max(1, max((c.bit_length() for c in out), default=1))
    return CoeffVec(tuple(out), bound)


def schoolbook_mod(f: ModPoly, g: ModPoly) -> ModPoly:
    """Word-modular convolution."""
    if f.modulus != g.modulus:
        raise ValueError("modulus mismatch")
    n = f.modulus
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                out[i + j] = (out[i + j] + a * b) % n
    return ModPoly(tuple(out), n)


def schoolbook_bivar(f: BiPoly, g: BiPoly, ring: RingOps, ringmul) -> BiPoly:
    """Double convolution over (x, y) using the supplied element product."""
    lx = f.lx + g.lx - 1
    ly = f.ly + g.ly - 1
    out = [[ring.zero] * ly for _ in range(lx)]
    for i in range(f.lx):
        for j in range(f.ly):
            a = f.coeffs[i][j]
            for k in range(g.lx):
                for l in range(g.ly):
                    out[i + k][j + l] = ring.add(out[i + k][j + l],
                                                 ringmul(a, g.coeffs[k][l]))
    return BiPoly(tuple(tuple(row) for row in out))


def uni_schoolbook(ring: RingOps, ringmul):
    """Schoolbook univariate multiplier over a ring, usable as the plug-in
    R[x] product for the bivariate reductions."""

    def mul(a, b):
        out = [ring.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = ring.add(out[i + j], ringmul(x, y))
        return out

    return mul

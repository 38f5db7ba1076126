"""Certified signature of the Hermitian form (1 - w) V + (1 - conj w) V^T at a root of unity.

The form is rescaled by the positive number 1 - cos(2 pi t), giving

    H = (V + V^T) + i * cot(pi t) * (V^T - V),

whose real part is an exact integer matrix.  The signature is computed by
symmetric (Hermitian) elimination with 1x1 and 2x2 pivots in interval
arithmetic.  A pivot is only used once its sign is certified by the interval
enclosure; if no pivot can be certified the whole elimination restarts at
twice the precision.  Nonsingularity of H is established beforehand by the
exact cyclotomic zero test, so every exact Schur complement is nonsingular
and some pivot is eventually certifiable.
"""

from __future__ import annotations

import logging

from mpmath.ctx_iv import MPIntervalContext

from .errors import AngleOne, DimensionMismatch, SingularAtRoot
from .exact_arith import CircleAngle, IntMatrix, alexander_nonvanishing, as_matrix

log = logging.getLogger(__name__)

DEFAULT_PRECISION = 64
MAX_PRECISION = 1 << 16


def _sign(x) -> int | None:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return None


def _magnitude_lower(x):
    """Lower bound of |x| for a real interval (zero if it straddles 0)."""
    lo, hi = x.a, x.b
    if lo > 0:
        return lo
    if hi < 0:
        return -hi
    return 0


def _interval_signature(V: IntMatrix, t: CircleAngle, prec: int) -> int | None:
    ctx = MPIntervalContext()
    ctx.prec = prec
    x = ctx.pi * ctx.mpf(t.a) / t.n
    kappa = ctx.cos(x) / ctx.sin(x)
    n = V.rows
    zero = ctx.mpf(0)
    re = [[ctx.mpf(V[i, j] + V[j, i]) for j in range(n)] for i in range(n)]
    im = [[kappa * (V[j, i] - V[i, j]) if i != j else zero for j in range(n)] for i in range(n)]

    alive = list(range(n))
    pos = neg = 0
    while alive:
        best, best_mag = None, 0
        for i in alive:
            m = _magnitude_lower(re[i][i])
            if m > best_mag:
                best, best_mag = i, m
        if best is not None:
            i = best
            d = re[i][i]
            if _sign(d) > 0:
                pos += 1
            else:
                neg += 1
            alive.remove(i)
            for j in alive:
                # row j of the update: H_jk -= H_ji * H_ik / d
                fr, fi = re[j][i] / d, im[j][i] / d
                rj, ij_ = re[j], im[j]
                for k in alive:
                    ar, ai = re[i][k], im[i][k]
                    rj[k] = rj[k] - (fr * ar - fi * ai)
                    if k != j:
                        ij_[k] = ij_[k] - (fr * ai + fi * ar)
            continue

        # all diagonal pivots undecided: look for a certified 2x2 block
        best, best_mag = None, 0
        for a_idx, i in enumerate(alive):
            for j in alive[a_idx + 1:]:
                det = re[i][i] * re[j][j] - (re[i][j] ** 2 + im[i][j] ** 2)
                m = _magnitude_lower(det)
                if m > best_mag:
                    best, best_mag = (i, j, det), m
        if best is None:
            return None
        i, j, det = best
        if _sign(det) < 0:
            pos += 1
            neg += 1
        else:
            tr = _sign(re[i][i] + re[j][j])
            if tr is None:
                return None
            if tr > 0:
                pos += 2
            else:
                neg += 2
        alive.remove(i)
        alive.remove(j)
        # B^{-1} = (1/det) [[d_j, -b], [-conj b, d_i]] with b = H_ij
        di, dj = re[i][i], re[j][j]
        br, bi = re[i][j], im[i][j]
        for k in alive:
            # C_k = (H_ki, H_kj); update H_kl -= C_k B^{-1} C_l^*
            # first form y = C_k B^{-1} (row vector of two complex numbers)
            cir, cii = re[k][i], im[k][i]
            cjr, cji = re[k][j], im[k][j]
            y1r = (cir * dj - (cjr * br + cji * bi)) / det
            y1i = (cii * dj - (cji * br - cjr * bi)) / det
            y2r = (-(cir * br - cii * bi) + cjr * di) / det
            y2i = (-(cir * bi + cii * br) + cji * di) / det
            rk, ik = re[k], im[k]
            for l in alive:
                # C_l^* entries are H_il and H_jl
                ur, ui = re[i][l], im[i][l]
                vr, vi = re[j][l], im[j][l]
                rk[l] = rk[l] - (y1r * ur - y1i * ui + y2r * vr - y2i * vi)
                if l != k:
                    ik[l] = ik[l] - (y1r * ui + y1i * ur + y2r * vi + y2i * vr)
    return pos - neg


def hermitian_signature(
    V: IntMatrix, zeta: CircleAngle, *, precision_start: int = DEFAULT_PRECISION
) -> int:
    """Signature of (1 - zeta) V + (1 - conj zeta) V^T.

    Raises ``AngleOne`` at zeta = 1 and ``SingularAtRoot`` when the form is
    degenerate.  The result does not depend on ``precision_start``.
    """
    V = as_matrix(V)
    if not V.is_square:
        raise DimensionMismatch("Seifert-type matrix must be square")
    if zeta.is_one:
        raise AngleOne("the form vanishes identically at zeta = 1")
    if V.rows == 0:
        return 0
    if not alexander_nonvanishing(V, zeta):
        raise SingularAtRoot(f"zeta = exp(2 pi i {zeta}) is a root of det(V - t V^T)")
    prec = max(16, int(precision_start))
    while True:
        sig = _interval_signature(V, zeta, prec)
        if sig is not None:
            return sig
        if prec >= MAX_PRECISION:
            raise RuntimeError(f"signature undecided at {prec} bits")
        log.debug("signature at %s undecided at %d bits, retrying", zeta, prec)
        prec *= 2

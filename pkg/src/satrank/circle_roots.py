"""Exact isolation of the unit-circle roots of det(V - z V^T).

The Alexander polynomial of a Seifert matrix is palindromic of degree 2g, so
z^{-g} Delta(z) is a polynomial R in u = z + 1/z, and unit-circle roots
exp(2 pi i t) correspond to real roots u = 2 cos(2 pi t) of R in (-2, 2).
Irreducible factors are split into cyclotomic ones (roots at rational
angles a/n) and the rest (irrational angles).  Between consecutive roots we
pick a rational sample angle whose cosine is certified, by interval
arithmetic, to lie strictly inside the root-free gap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath
import sympy
from mpmath.ctx_iv import MPIntervalContext

from .exact_arith import CircleAngle, IntMatrix, alexander_polynomial

_Z = sympy.Symbol("z")
_U = sympy.Symbol("u")
_TWO = Fraction(2)


@dataclass(frozen=True)
class IrrationalAngle:
    """A unit-circle root at an irrational angle in (0, 1/2).

    Identified exactly by the minimal polynomial of u = 2 cos(2 pi t)
    (integer coefficients, highest degree first) and its position among that
    polynomial's roots in (-2, 2) ordered by increasing angle.  ``lo``/``hi``
    bracket the angle and ``approx`` is a float for display and ordering;
    neither takes part in equality.
    """

    minpoly: tuple[int, ...]
    index: int
    lo: Fraction = field(compare=False)
    hi: Fraction = field(compare=False)
    approx: float = field(compare=False)

    def __float__(self):
        return self.approx

    def __str__(self):
        return f"({self.lo}, {self.hi})"


def angle_sort_key(key) -> tuple:
    if isinstance(key, CircleAngle):
        return (float(key), 0, key.n, key.a)
    return (key.approx, 1, key.minpoly, key.index)


def _u_polynomial(f: sympy.Poly) -> sympy.Poly:
    """R with f(z) = z^d R(z + 1/z) for palindromic f of degree 2d."""
    c = list(reversed(f.all_coeffs()))
    d = len(c) // 2
    p_prev, p_cur = sympy.Poly(2, _U), sympy.Poly(_U, _U)
    R = sympy.Poly(c[d], _U)
    for k in range(1, d + 1):
        R += c[d + k] * p_cur
        p_prev, p_cur = p_cur, p_cur * sympy.Poly(_U, _U) - p_prev
    return R


def _cyclotomic_order(f: sympy.Poly) -> int:
    deg = f.degree()
    for n in range(3, 2 * deg * deg + 3):
        if sympy.totient(n) == deg and sympy.Poly(sympy.cyclotomic_poly(n, _Z), _Z) == f:
            return n
    raise AssertionError(f"{f} is cyclotomic but its order was not found")


@dataclass(frozen=True)
class _Root:
    key: object
    u_poly: sympy.Poly
    lo: Fraction
    hi: Fraction


def _refine(r: _Root, eps: Fraction) -> _Root:
    if r.lo == r.hi:
        return r
    lo, hi = r.u_poly.refine_root(sympy.Rational(r.lo), sympy.Rational(r.hi), eps=sympy.Rational(eps))
    return _Root(r.key, r.u_poly, Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q)))


def _angle_of_u(u: Fraction, dps: int = 50):
    with mpmath.workdps(dps):
        return mpmath.acos(mpmath.mpf(u.numerator) / u.denominator / 2) / (2 * mpmath.pi)


def _certified_inside(t: Fraction, lo_u: Fraction, hi_u: Fraction, prec: int) -> bool:
    """True when 2 cos(2 pi t) is certified to lie strictly between lo_u and hi_u."""
    ctx = MPIntervalContext()
    ctx.prec = prec
    v = 2 * ctx.cos(2 * ctx.pi * ctx.mpf(t.numerator) / t.denominator)
    lo = ctx.mpf(lo_u.numerator) / lo_u.denominator
    hi = ctx.mpf(hi_u.numerator) / hi_u.denominator
    return bool((v - lo) > 0) and bool((hi - v) > 0)


def _sample_in_gap(lo_u: Fraction, hi_u: Fraction) -> CircleAngle:
    """A rational angle t in (0, 1/2) with 2 cos(2 pi t) certified inside (lo_u, hi_u)."""
    target = _angle_of_u((lo_u + hi_u) / 2)
    exact = Fraction(mpmath.nstr(target, 45, strip_zeros=False))
    width = hi_u - lo_u
    bound = 4
    while True:
        t = exact.limit_denominator(bound)
        if 0 < t < Fraction(1, 2):
            prec = max(128, 4 * t.denominator.bit_length() + 64)
            if _certified_inside(t, lo_u, hi_u, prec):
                return CircleAngle(t)
        bound *= 2
        if bound > (1 << 400) and width > 0:
            raise RuntimeError("could not place a sample angle in a root-free gap")


@dataclass(frozen=True)
class CircleRoots:
    """Unit-circle roots with angle in (0, 1/2), in increasing angle order.

    ``samples`` has one more entry than ``keys``: samples[k] < keys[k] < samples[k + 1],
    and the last sample is always 1/2.
    """

    keys: tuple
    samples: tuple[CircleAngle, ...]


@lru_cache(maxsize=512)
def unit_circle_roots(V: IntMatrix) -> CircleRoots:
    coeffs = alexander_polynomial(V)
    delta = sympy.Poly(list(reversed(coeffs)), _Z, domain="ZZ")
    if delta.is_zero:
        raise ValueError("det(V - z V^T) vanishes identically")
    roots: list[_Root] = []
    u_factors = []
    kinds = []
    for f, _mult in delta.factor_list()[1]:
        if f.degree() < 2:
            # z and z +- 1 have no roots on the open upper semicircle
            continue
        c = f.all_coeffs()
        if c != list(reversed(c)):
            continue  # not reciprocal, so no unit-circle roots
        R = _u_polynomial(f)
        if R.LC() < 0:
            R = -R
        u_factors.append(R)
        kinds.append(_cyclotomic_order(f) if f.is_cyclotomic else None)

    if u_factors:
        isolated = sympy.intervals(u_factors, inf=-2, sup=2)
        by_factor: dict[int, list[tuple[Fraction, Fraction]]] = {}
        for (lo, hi), which in isolated:
            (idx,) = which.keys()
            lo_f = Fraction(int(sympy.Rational(lo).p), int(sympy.Rational(lo).q))
            hi_f = Fraction(int(sympy.Rational(hi).p), int(sympy.Rational(hi).q))
            by_factor.setdefault(idx, []).append((lo_f, hi_f))
        for idx, ivs in by_factor.items():
            # increasing angle <=> decreasing u
            ivs = [iv for iv in sorted(ivs, reverse=True) if -_TWO < iv[1] and iv[0] < _TWO]
            R = u_factors[idx]
            n = kinds[idx]
            if n is not None:
                numerators = [a for a in range(1, (n + 1) // 2) if gcd(a, n) == 1 and 2 * a < n]
                assert len(numerators) == len(ivs), (n, ivs)
                for a, (lo, hi) in zip(numerators, ivs):
                    roots.append(_Root(CircleAngle(a, n), R, lo, hi))
            else:
                minpoly = tuple(int(x) for x in R.all_coeffs())
                for k, (lo, hi) in enumerate(ivs):
                    roots.append(_Root((minpoly, k), R, lo, hi))

    # decreasing u; separate neighbours strictly and keep clear of +-2
    roots.sort(key=lambda r: r.lo + r.hi, reverse=True)
    eps = Fraction(1, 8)
    while True:
        bad = set()
        if roots and roots[0].hi >= _TWO:
            bad.add(0)
        if roots and roots[-1].lo <= -_TWO:
            bad.add(len(roots) - 1)
        for i in range(len(roots) - 1):
            if roots[i + 1].hi >= roots[i].lo:
                bad.update((i, i + 1))
        if not bad:
            break
        eps /= 4
        roots = [_refine(r, eps) if i in bad else r for i, r in enumerate(roots)]

    samples = []
    upper = _TWO
    for r in roots:
        samples.append(_sample_in_gap(r.hi, upper))
        upper = r.lo
    samples.append(CircleAngle(1, 2))

    keys = []
    for k, r in enumerate(roots):
        if isinstance(r.key, CircleAngle):
            keys.append(r.key)
            continue
        minpoly, index = r.key
        fine = _refine(r, Fraction(1, 10**30))
        approx = float(_angle_of_u((fine.lo + fine.hi) / 2))
        keys.append(IrrationalAngle(minpoly, index, samples[k].value, samples[k + 1].value, approx))
    return CircleRoots(tuple(keys), tuple(samples))

"""Numeric evaluation of the critical-point constant and gradient terms for
a general normal velocity F.

Quantities are functions of (H, K).  Rational quantities ``p / q`` get exact
derivatives; other quantities are differentiated by mpmath at working
precision.  Results are mpmath floats and are meant for sign exploration
only, never for certification.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Tuple

import mpmath

from .candidate import Candidate
from .errors import CriticalDenominatorZero, DiagonalPoint, NonpositiveCurvature
from .exact_algebra import as_rational
from .hk_polynomials import HKPoly, partial_H, partial_K, second_partials
from .velocities import VelocitySpec, to_mpf

__all__ = [
    "WORKING_DPS",
    "RationalQuantity",
    "FunctionQuantity",
    "numeric_terms",
    "grid_scan",
    "trace_ratio_quantity",
]

WORKING_DPS = 50

# (w_H, w_K, w_HH, w_HK, w_KK)
Derivs = Tuple[object, object, object, object, object]


@dataclass(frozen=True)
class RationalQuantity:
    """``w = p / q`` with derivatives from the quotient rule."""

    p: HKPoly
    q: HKPoly

    @classmethod
    def of(cls, cand: Candidate) -> "RationalQuantity":
        return cls(cand.p, cand.q)

    def _parts(self, poly: HKPoly, H, K):
        hh, hk, kk = second_partials(poly)
        return [_hk_eval(x, H, K) for x in (poly, partial_H(poly), partial_K(poly), hh, hk, kk)]

    def derivatives(self, H, K) -> Derivs:
        p, pH, pK, pHH, pHK, pKK = self._parts(self.p, H, K)
        q, qH, qK, qHH, qHK, qKK = self._parts(self.q, H, K)

        def first(pX, qX):
            return (pX * q - p * qX) / (q * q)

        def second(pXY, pX, pY, qXY, qX, qY):
            return (
                pXY / q
                - (pX * qY + pY * qX) / (q * q)
                - p * qXY / (q * q)
                + 2 * p * qX * qY / (q * q * q)
            )

        return (
            first(pH, qH),
            first(pK, qK),
            second(pHH, pH, pH, qHH, qH, qH),
            second(pHK, pH, pK, qHK, qH, qK),
            second(pKK, pK, pK, qKK, qK, qK),
        )


def _hk_eval(poly: HKPoly, H, K):
    acc = 0
    for c, a, b in poly.terms():
        cc = c if isinstance(H, Fraction) else to_mpf(c)
        acc = acc + cc * H ** a * K ** b
    return acc


@dataclass(frozen=True)
class FunctionQuantity:
    """Any smooth ``w(H, K)`` on mpmath floats; derivatives by ``mpmath.diff``.

    Use :meth:`from_lambdas` for quantities naturally written in l1, l2.
    """

    name: str
    func: Callable

    @classmethod
    def from_lambdas(cls, name: str, f: Callable) -> "FunctionQuantity":
        def w(H, K):
            d = mpmath.sqrt(H * H - 4 * K)
            return f((H + d) / 2, (H - d) / 2)
        return cls(name, w)

    def derivatives(self, H, K) -> Derivs:
        H, K = to_mpf(H), to_mpf(K)
        f = self.func
        return (
            mpmath.diff(f, (H, K), (1, 0)),
            mpmath.diff(f, (H, K), (0, 1)),
            mpmath.diff(f, (H, K), (2, 0)),
            mpmath.diff(f, (H, K), (1, 1)),
            mpmath.diff(f, (H, K), (0, 2)),
        )


def trace_ratio_quantity(sigma) -> FunctionQuantity:
    """``(l1 - l2)^2 (l1^s + l2^s)^2 / (l1 l2)^2``, not rational in H, K."""
    sig = as_rational(sigma)

    def w(a, b):
        s = to_mpf(sig)
        return (a - b) ** 2 * (a ** s + b ** s) ** 2 / (a * b) ** 2

    return FunctionQuantity.from_lambdas(f"trA-ratio({sig})", w)


def _point(x):
    if isinstance(x, (int, Fraction, str)) and not isinstance(x, bool):
        return as_rational(x)
    return to_mpf(x)


def _g_term(a, b, F1, F2, F11, F12, F22, wd):
    wH, wK, wHH, wHK, wKK = wd
    a1 = -(wH + b * wK) / (wH + a * wK)
    dd = (F1 - F2) / (a - b)
    hess = F11 + 2 * F12 * a1 + F22 * a1 ** 2
    gH = hess + 2 * dd * a1 ** 2
    gK = 2 * (-F1 * a1 + F2 * a1 ** 2) + hess * b + 2 * dd * a1 ** 2 * a
    u, v = 1 + a1, b + a * a1
    mix = -F1 * (u * u * wHH + 2 * u * v * wHK + v * v * wKK)
    return gH * wH + gK * wK + mix


def numeric_terms(vel: VelocitySpec, quantity, l1, l2, dps: int = WORKING_DPS):
    """Return ``(C_w, G_w(l1, l2), G_w(l2, l1))`` as mpmath floats.

    ``quantity`` is a :class:`Candidate`, a :class:`RationalQuantity` or a
    :class:`FunctionQuantity`.  The second gradient value uses swapped
    curvatures and swapped velocity partials.
    """
    if isinstance(quantity, Candidate):
        quantity = RationalQuantity.of(quantity)
    a, b = _point(l1), _point(l2)
    if a <= 0 or b <= 0:
        raise NonpositiveCurvature(f"curvatures must be positive, got ({l1}, {l2})")
    if a == b:
        raise DiagonalPoint(f"({l1}, {l2}) lies on the diagonal")
    with mpmath.workdps(dps):
        wd = quantity.derivatives(a + b, a * b)
        exact = all(isinstance(x, Fraction) for x in wd)
        if exact and not any(wd):
            zero = mpmath.mpf(0)
            return zero, zero, zero
        tiny = mpmath.mpf(10) ** (-(dps - 10))
        for x, y in ((a, b), (b, a)):
            den = wd[0] + x * wd[1]
            if (den == 0) if exact else (abs(to_mpf(den)) <= tiny):
                raise CriticalDenominatorZero(
                    f"w_H + l*w_K vanishes at ({l1}, {l2})"
                )
        wd = tuple(to_mpf(x) for x in wd)
        A, B = to_mpf(a), to_mpf(b)
        F, F1, F2, F11, F12, F22 = vel.partials(A, B)
        wH, wK = wd[0], wd[1]
        c_h = F * (A * A + B * B) + (F1 - F2) * (A - B) * A * B
        c_k = (F * (A + B) + (F1 * A - F2 * B) * (A - B)) * A * B
        c_w = c_h * wH + c_k * wK
        g12 = _g_term(A, B, F1, F2, F11, F12, F22, wd)
        g21 = _g_term(B, A, F2, F1, F22, F12, F11, wd)
        return +c_w, +g12, +g21


def grid_scan(vel: VelocitySpec, quantity, points, dps: int = WORKING_DPS) -> dict:
    """Evaluate on every off-diagonal pair from ``points``; report maxima."""
    best = [None, None, None]
    where = [None, None, None]
    count = 0
    for a in points:
        for b in points:
            if a == b:
                continue
            vals = numeric_terms(vel, quantity, a, b, dps)
            count += 1
            for i, v in enumerate(vals):
                if best[i] is None or v > best[i]:
                    best[i], where[i] = v, (a, b)
    return {"points": count, "max": best, "argmax": where}

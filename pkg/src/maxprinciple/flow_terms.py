"""Constant and gradient polynomials C, G1, G2 for the flow with F = K**sigma.

Everything is assembled from the r-terms ``r_X = q * p_X - p * q_X`` after
the substitution ``(l1, l2) = (rho, 1)``.  The cofactors are linear in
sigma, so the polynomials are first built over :class:`SigmaLinear` and
then specialized.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .candidate import Candidate
from .exact_algebra import RhoPoly, SigmaLinear
from .hk_polynomials import (
    HKPoly,
    dehomogenize,
    hk_mul,
    hk_sub,
    partial_H,
    partial_K,
    second_partials,
)

__all__ = [
    "Candidate",
    "RTerms",
    "compute_r_terms",
    "symbolic_C",
    "symbolic_G1",
    "symbolic_G2",
    "constant_poly_C",
    "gradient_poly_G1",
    "gradient_poly_G2",
    "flow_polys",
    "C_nominal_degree",
    "G_nominal_degree",
]


@dataclass(frozen=True)
class RTerms:
    r_H: HKPoly
    r_K: HKPoly
    r_HH: HKPoly
    r_HK: HKPoly
    r_KK: HKPoly

    def as_tuple(self):
        return (self.r_H, self.r_K, self.r_HH, self.r_HK, self.r_KK)

    def is_zero(self) -> bool:
        return all(r.is_zero() for r in self.as_tuple())


def _r(p: HKPoly, q: HKPoly, dp: HKPoly, dq: HKPoly, degree: int) -> HKPoly:
    out = hk_sub(hk_mul(q, dp), hk_mul(p, dq))
    return out.as_degree(max(degree, 0)) if out.degree != degree else out


def compute_r_terms(p: HKPoly, q: HKPoly) -> RTerms:
    """The five r-terms; zero results are re-homed at their nominal degree
    (clamped at 0)."""
    n = p.degree + q.degree
    pHH, pHK, pKK = second_partials(p)
    qHH, qHK, qKK = second_partials(q)
    return RTerms(
        _r(p, q, partial_H(p), partial_H(q), n - 1),
        _r(p, q, partial_K(p), partial_K(q), n - 2),
        _r(p, q, pHH, qHH, n - 2),
        _r(p, q, pHK, qHK, n - 3),
        _r(p, q, pKK, qKK, n - 4),
    )


def C_nominal_degree(g: int, h: int) -> int:
    return g + h + 1


def G_nominal_degree(g: int, h: int) -> int:
    return max(3 * (g + h) - 1, 0)


_S = SigmaLinear.sigma()
# rho * (rho + 1) and rho * (rho - 1)**2
_R_RP1 = RhoPoly([0, 1, 1])
_R_RM1_SQ = RhoPoly([0, 1, -2, 1])

# (1 - s) rho^2 + 2 s rho + (1 - s)
_C_H = RhoPoly([1 - _S, 2 * _S, 1 - _S])
# (s - 1) rho^2 - 2 (s + 1) rho + (s - 1), shared by G1 and G2
_G_HHH = RhoPoly([_S - 1, -2 * (_S + 1), _S - 1])
# (s - 3) rho^2 - 2 (s + 2) rho + (s - 1)
_G1_HHK = RhoPoly([_S - 1, -2 * (_S + 2), _S - 3])
# rho * ((s - 1) rho^2 - 2 (s + 2) rho + (s - 3))
_G2_HHK = RhoPoly([0, _S - 3, -2 * (_S + 2), _S - 1])


@dataclass(frozen=True)
class _Dehom:
    H: RhoPoly
    K: RhoPoly
    HH: RhoPoly
    HK: RhoPoly
    KK: RhoPoly


def _dehom(r: RTerms) -> _Dehom:
    return _Dehom(*(dehomogenize(x) for x in r.as_tuple()))


def _split(poly: RhoPoly):
    """``poly = sigma * A + B`` with rational A, B."""
    a = [c.slope if isinstance(c, SigmaLinear) else 0 for c in poly.coeffs]
    b = [c.offset if isinstance(c, SigmaLinear) else c for c in poly.coeffs]
    return RhoPoly(a), RhoPoly(b)


def _join(a: RhoPoly, b: RhoPoly, nominal: int) -> RhoPoly:
    n = max(len(a.coeffs), len(b.coeffs))
    return RhoPoly([SigmaLinear(a.coefficient(i), b.coefficient(i)) for i in range(n)], nominal)


def _times(cofactor, poly: RhoPoly):
    a, b = cofactor
    return a * poly, b * poly


_C_H_S, _G_HHH_S, _G1_HHK_S, _G2_HHK_S = map(_split, (_C_H, _G_HHH, _G1_HHK, _G2_HHK))


def _assemble(p: HKPoly, q: HKPoly):
    """Symbolic ``(C, G1, G2)``; the r-term products are shared."""
    d = _dehom(compute_r_terms(p, q))
    g, h = p.degree, q.degree
    ca, cb = _times(_C_H_S, d.H)
    c = _join(ca, cb + _R_RP1 * d.K, C_nominal_degree(g, h))
    hh = d.H * d.H
    h3 = hh * d.H
    h2k = hh * d.K
    hk2 = d.H * d.K * d.K
    hess = d.K * d.K * d.HH - (d.H * d.K * d.HK).scale(2) + hh * d.KK
    rest = _R_RP1.scale(-2) * hk2 - _R_RM1_SQ * hess
    sa, sb = _times(_G_HHH_S, h3)
    a1, b1 = _times(_G1_HHK_S, h2k)
    a2, b2 = _times(_G2_HHK_S, h2k)
    n = G_nominal_degree(g, h)
    g1 = _join(sa + a1, sb + b1 + rest, n)
    g2 = _join(sa + a2, sb + b2 + rest.shift(1), n)
    return c, g1, g2


def symbolic_C(p: HKPoly, q: HKPoly) -> RhoPoly:
    """C with sigma left symbolic."""
    return _symbolic_all(p, q)[0]


def symbolic_G1(p: HKPoly, q: HKPoly) -> RhoPoly:
    return _symbolic_all(p, q)[1]


def symbolic_G2(p: HKPoly, q: HKPoly) -> RhoPoly:
    return _symbolic_all(p, q)[2]


@lru_cache(maxsize=4096)
def _symbolic_all(p: HKPoly, q: HKPoly):
    return _assemble(p, q)


def flow_polys(cand: Candidate):
    """``(C, G1, G2)`` specialized at ``cand.sigma``."""
    return tuple(x.specialize(cand.sigma) for x in _symbolic_all(cand.p, cand.q))


def constant_poly_C(cand: Candidate) -> RhoPoly:
    return _symbolic_all(cand.p, cand.q)[0].specialize(cand.sigma)


def gradient_poly_G1(cand: Candidate) -> RhoPoly:
    return _symbolic_all(cand.p, cand.q)[1].specialize(cand.sigma)


def gradient_poly_G2(cand: Candidate) -> RhoPoly:
    return _symbolic_all(cand.p, cand.q)[2].specialize(cand.sigma)

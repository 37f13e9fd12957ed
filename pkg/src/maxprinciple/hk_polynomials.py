"""Homogeneous symmetric polynomials in two variables, stored in the H, K basis.

A polynomial of degree ``g`` is ``sum_i c[i] * H**(g - 2i) * K**i`` for
``i = 0 .. g // 2`` where ``H = l1 + l2`` and ``K = l1 * l2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Optional, Tuple

from .errors import ZeroPolynomial
from .exact_algebra import RhoPoly, as_rational, format_rational

__all__ = [
    "HKPoly",
    "LambdaPoly",
    "LeadingTerm",
    "hk_add",
    "hk_sub",
    "hk_mul",
    "partial_H",
    "partial_K",
    "second_partials",
    "dehomogenize",
    "expand_lambda",
    "leading_term",
    "diagonal_sum",
    "first_positive_index",
]


@dataclass(frozen=True)
class HKPoly:
    degree: int
    coeffs: Tuple[Fraction, ...]

    def __init__(self, degree: int, coeffs: Iterable = None):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        n = degree // 2 + 1
        cs = tuple(as_rational(c) for c in (coeffs if coeffs is not None else ()))
        if len(cs) > n:
            raise ValueError(f"degree {degree} takes at most {n} coefficients, got {len(cs)}")
        cs = cs + (Fraction(0),) * (n - len(cs))
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, degree: int = 0) -> "HKPoly":
        return cls(max(degree, 0))

    @classmethod
    def monomial(cls, h_exp: int, k_exp: int, coeff=1) -> "HKPoly":
        """``coeff * H**h_exp * K**k_exp``."""
        cs = [0] * k_exp + [coeff]
        return cls(h_exp + 2 * k_exp, cs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_degree(self, degree: int) -> "HKPoly":
        """Re-home a zero polynomial at another degree."""
        if degree == self.degree:
            return self
        if not self.is_zero():
            raise ValueError("only the zero polynomial can change degree")
        return HKPoly.zero(degree)

    def terms(self):
        """Yield ``(c, H exponent, K exponent)`` for nonzero coefficients."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield c, self.degree - 2 * i, i

    def scale(self, a) -> "HKPoly":
        a = as_rational(a)
        return HKPoly(self.degree, [a * c for c in self.coeffs])

    def __add__(self, other: "HKPoly") -> "HKPoly":
        return hk_add(self, other)

    def __sub__(self, other: "HKPoly") -> "HKPoly":
        return hk_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, HKPoly):
            return hk_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def __call__(self, l1, l2):
        """Evaluate at ``(l1, l2)``; exact for rational input."""
        H = l1 + l2
        K = l1 * l2
        acc = 0
        for c, a, b in self.terms():
            acc = acc + c * H ** a * K ** b
        return acc

    def __str__(self):
        parts = []
        for c, a, b in self.terms():
            mono = "*".join(
                x for x in (
                    "" if a == 0 else ("H" if a == 1 else f"H^{a}"),
                    "" if b == 0 else ("K" if b == 1 else f"K^{b}"),
                ) if x
            )
            mag = abs(c)
            body = mono if (mono and mag == 1) else (
                format_rational(mag) + (f"*{mono}" if mono else "")
            )
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "HKPoly":
        if not isinstance(data, dict) or "degree" not in data or "coeffs" not in data:
            raise ValueError("HKPoly JSON needs 'degree' and 'coeffs'")
        degree = data["degree"]
        if not isinstance(degree, int) or isinstance(degree, bool) or degree < 0:
            raise ValueError(f"bad degree {degree!r}")
        coeffs = data["coeffs"]
        if not isinstance(coeffs, list) or len(coeffs) != degree // 2 + 1:
            raise ValueError(f"degree {degree} needs exactly {degree // 2 + 1} coefficients")
        return cls(degree, [as_rational(c) for c in coeffs])


def _align(a: HKPoly, b: HKPoly) -> Tuple[HKPoly, HKPoly]:
    if a.degree == b.degree:
        return a, b
    if b.is_zero():
        return a, b.as_degree(a.degree)
    if a.is_zero():
        return a.as_degree(b.degree), b
    raise ValueError(f"cannot add homogeneous parts of degrees {a.degree} and {b.degree}")


def hk_add(a: HKPoly, b: HKPoly) -> HKPoly:
    a, b = _align(a, b)
    return HKPoly(a.degree, [x + y for x, y in zip(a.coeffs, b.coeffs)])


def hk_sub(a: HKPoly, b: HKPoly) -> HKPoly:
    a, b = _align(a, b)
    return HKPoly(a.degree, [x - y for x, y in zip(a.coeffs, b.coeffs)])


def hk_mul(a: HKPoly, b: HKPoly) -> HKPoly:
    g = a.degree + b.degree
    out = [Fraction(0)] * (g // 2 + 1)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if y:
                out[i + j] += x * y
    return HKPoly(g, out)


def partial_H(p: HKPoly) -> HKPoly:
    g = p.degree
    if g < 1:
        return HKPoly.zero(0)
    n = (g - 1) // 2 + 1
    return HKPoly(g - 1, [p.coeffs[i] * (g - 2 * i) for i in range(n)])


def partial_K(p: HKPoly) -> HKPoly:
    g = p.degree
    if g < 2:
        return HKPoly.zero(0)
    n = (g - 2) // 2 + 1
    return HKPoly(g - 2, [p.coeffs[i + 1] * (i + 1) for i in range(n)])


def second_partials(p: HKPoly) -> Tuple[HKPoly, HKPoly, HKPoly]:
    """Return ``(p_HH, p_HK, p_KK)``.

    ``p_KK`` uses ``i * (i - 1)``, the plain second derivative of ``K**i``.
    """
    return partial_H(partial_H(p)), partial_K(partial_H(p)), partial_K(partial_K(p))


def dehomogenize(p: HKPoly) -> RhoPoly:
    """Substitute ``H = rho + 1`` and ``K = rho``; nominal degree ``g``."""
    g = p.degree
    out = [Fraction(0)] * (g + 1)
    for c, a, b in p.terms():
        for j in range(a + 1):
            out[b + j] += c * comb(a, j)
    return RhoPoly(out, g)


@dataclass(frozen=True)
class LambdaPoly:
    """Sparse bivariate polynomial ``{(e1, e2): coefficient}`` in l1, l2."""

    terms: Tuple[Tuple[Tuple[int, int], Fraction], ...]

    @classmethod
    def from_dict(cls, d: Dict[Tuple[int, int], Fraction]) -> "LambdaPoly":
        return cls(tuple(sorted((k, Fraction(v)) for k, v in d.items() if v)))

    def as_dict(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self.terms)

    def swapped(self) -> "LambdaPoly":
        return LambdaPoly.from_dict({(b, a): c for (a, b), c in self.terms})

    def is_symmetric(self) -> bool:
        return self == self.swapped()

    def is_homogeneous(self, degree: int) -> bool:
        return all(a + b == degree for (a, b), _ in self.terms)

    def __call__(self, l1, l2):
        return sum((c * l1 ** a * l2 ** b for (a, b), c in self.terms), Fraction(0))

    def partial(self, var: int) -> "LambdaPoly":
        """Derivative in ``l1`` (var=1) or ``l2`` (var=2)."""
        out: Dict[Tuple[int, int], Fraction] = {}
        for (a, b), c in self.terms:
            e = a if var == 1 else b
            if e == 0:
                continue
            key = (a - 1, b) if var == 1 else (a, b - 1)
            out[key] = out.get(key, Fraction(0)) + c * e
        return LambdaPoly.from_dict(out)


def expand_lambda(p: HKPoly) -> LambdaPoly:
    out: Dict[Tuple[int, int], Fraction] = {}
    for c, a, b in p.terms():
        for j in range(a + 1):
            key = (b + j, b + a - j)
            out[key] = out.get(key, Fraction(0)) + c * comb(a, j)
    return LambdaPoly.from_dict(out)


@dataclass(frozen=True)
class LeadingTerm:
    """Coefficient at the nominal slot plus the true top term (if any)."""

    coefficient: object
    exponent: int
    true_coefficient: Optional[object]
    true_exponent: Optional[int]

    @property
    def cancelled(self) -> bool:
        return self.coefficient == 0


def leading_term(p: RhoPoly, nominal: Optional[int] = None) -> LeadingTerm:
    if nominal is None:
        nominal = p.nominal_degree
    if nominal < 0:
        raise ValueError("nominal degree must be nonnegative")
    if p.is_zero():
        return LeadingTerm(Fraction(0), nominal, None, None)
    return LeadingTerm(p.coefficient(nominal), nominal, p.leading_coefficient, p.degree)


def diagonal_sum(p: HKPoly) -> Fraction:
    """``p(1, 1)``; zero exactly when ``p`` vanishes on the diagonal."""
    return sum((c * 2 ** a for c, a, _ in p.terms()), Fraction(0))


def first_positive_index(p: HKPoly) -> Tuple[int, int]:
    """1-based index of the first nonzero coefficient and its sign."""
    for i, c in enumerate(p.coeffs):
        if c:
            return i + 1, (1 if c > 0 else -1)
    raise ZeroPolynomial("polynomial has no nonzero coefficient")

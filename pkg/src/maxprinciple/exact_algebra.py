"""Exact rational arithmetic, univariate polynomials and sign certification.

Rationals are :class:`fractions.Fraction`.  Polynomial coefficients are
either rationals or :class:`SigmaLinear` values ``a*sigma + b``.  Root
counting uses Sturm sequences over primitive integer polynomials, so no
floating point enters any certification path.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from .errors import DegreeOverflowInSigma, ZeroPolynomial

__all__ = [
    "Fraction",
    "SigmaLinear",
    "RhoPoly",
    "Interval",
    "RootInterval",
    "Violation",
    "SignCertificate",
    "as_rational",
    "format_rational",
    "poly_arith",
    "poly_derivative",
    "sturm_sequence",
    "sturm_count_roots",
    "isolate_real_roots",
    "certify_sign",
    "certify_sign_on_halfline",
]


def as_rational(value) -> Fraction:
    """Coerce ``int``, ``Fraction`` or a ``"a/b"`` string to a Fraction.

    Floats are rejected: binary floating point has no place in exact paths.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SigmaLinear:
    """The value ``slope * sigma + offset`` with rational slope and offset."""

    slope: Fraction = Fraction(0)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "slope", as_rational(self.slope))
        object.__setattr__(self, "offset", as_rational(self.offset))

    @classmethod
    def sigma(cls) -> "SigmaLinear":
        return cls(1, 0)

    @staticmethod
    def _lift(other):
        if isinstance(other, SigmaLinear):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return SigmaLinear(0, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return SigmaLinear(self.slope + o.slope, self.offset + o.offset)

    __radd__ = __add__

    def __neg__(self):
        return SigmaLinear(-self.slope, -self.offset)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.slope and o.slope:
            raise DegreeOverflowInSigma(f"({self}) * ({o}) is quadratic in sigma")
        return SigmaLinear(
            self.slope * o.offset + o.slope * self.offset, self.offset * o.offset
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.slope == o.slope and self.offset == o.offset

    def __hash__(self):
        if not self.slope:
            return hash(self.offset)
        return hash((self.slope, self.offset))

    def __bool__(self):
        return bool(self.slope) or bool(self.offset)

    def __call__(self, sigma) -> Fraction:
        return self.slope * as_rational(sigma) + self.offset

    def __str__(self):
        if not self.slope:
            return format_rational(self.offset)
        s = f"{format_rational(self.slope)}*sigma"
        if self.offset:
            s += f" {'+' if self.offset > 0 else '-'} {format_rational(abs(self.offset))}"
        return s


Coefficient = Union[Fraction, SigmaLinear]


def _coerce_coeff(c) -> Coefficient:
    if isinstance(c, SigmaLinear):
        return c
    return as_rational(c)


class RhoPoly:
    """Univariate polynomial, coefficients stored lowest degree first.

    ``nominal_degree`` is the degree slot the polynomial was built for; the
    coefficient in that slot may be zero after cancellation.  Equality and
    hashing look at coefficients only.
    """

    __slots__ = ("coeffs", "nominal_degree")

    def __init__(self, coeffs: Iterable = (), nominal_degree: Optional[int] = None):
        cs = [_coerce_coeff(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if nominal_degree is None:
            nominal_degree = max(len(cs) - 1, 0)
        if nominal_degree < len(cs) - 1:
            raise ValueError(
                f"nominal degree {nominal_degree} below true degree {len(cs) - 1}"
            )
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "nominal_degree", int(nominal_degree))

    def __setattr__(self, name, value):
        raise AttributeError("RhoPoly is immutable")

    # construction helpers
    @classmethod
    def constant(cls, c) -> "RhoPoly":
        return cls([c], 0)

    @classmethod
    def monomial(cls, c, exponent: int) -> "RhoPoly":
        return cls([0] * exponent + [c], exponent)

    @classmethod
    def from_roots(cls, roots: Sequence, leading=1) -> "RhoPoly":
        out = cls.constant(leading)
        for r in roots:
            out = out * cls([-as_rational(r), 1])
        return out

    # basic queries
    @property
    def degree(self) -> int:
        """True degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> Coefficient:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def leading_coefficient(self) -> Coefficient:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def _integral(self) -> bool:
        return all(isinstance(c, Fraction) and c.denominator == 1 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def with_nominal(self, n: int) -> "RhoPoly":
        return RhoPoly(self.coeffs, n)

    # arithmetic
    def _lift(self, other):
        if isinstance(other, RhoPoly):
            return other
        if isinstance(other, (int, Fraction, SigmaLinear, str)) and not isinstance(other, bool):
            return RhoPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        cs = [self.coefficient(i) + o.coefficient(i) for i in range(n)]
        return RhoPoly(cs, max(self.nominal_degree, o.nominal_degree))

    __radd__ = __add__

    def __neg__(self):
        return RhoPoly([-c for c in self.coeffs], self.nominal_degree)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        nominal = self.nominal_degree + o.nominal_degree
        if not self.coeffs or not o.coeffs:
            return RhoPoly((), nominal)
        if self._integral() and o._integral():
            return RhoPoly(map(Fraction, _int_mul(
                [c.numerator for c in self.coeffs], [c.numerator for c in o.coeffs]
            )), nominal)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b == 0:
                    continue
                out[i + j] = out[i + j] + a * b
        return RhoPoly(out, nominal)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = RhoPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "RhoPoly":
        c = _coerce_coeff(c)
        return RhoPoly([c * x for x in self.coeffs], self.nominal_degree)

    def shift(self, k: int) -> "RhoPoly":
        """Multiply by ``rho**k``."""
        return RhoPoly([0] * k + list(self.coeffs), self.nominal_degree + k)

    def derivative(self) -> "RhoPoly":
        cs = [i * c for i, c in enumerate(self.coeffs)][1:]
        return RhoPoly(cs, max(self.nominal_degree - 1, 0))

    def reversed(self, n: Optional[int] = None) -> "RhoPoly":
        """Return ``rho**n * p(1/rho)``; ``n`` defaults to the nominal degree."""
        n = self.nominal_degree if n is None else n
        if n < self.degree:
            raise ValueError("reversal degree below true degree")
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return RhoPoly(cs[::-1], n)

    def specialize(self, sigma) -> "RhoPoly":
        """Substitute a rational value for sigma in every coefficient."""
        s = as_rational(sigma)
        cs = [c(s) if isinstance(c, SigmaLinear) else c for c in self.coeffs]
        return RhoPoly(cs, self.nominal_degree)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RhoPoly({[str(c) for c in self.coeffs]}, nominal_degree={self.nominal_degree})"

    def pretty(self, var: str = "rho") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if isinstance(c, SigmaLinear) and c.slope:
                term = f"({c})" + (f"*{mono}" if mono else "")
                sign = "+"
            else:
                v = c.offset if isinstance(c, SigmaLinear) else c
                sign = "-" if v < 0 else "+"
                mag = abs(v)
                if mono and mag == 1:
                    term = mono
                else:
                    term = format_rational(mag) + (f"*{mono}" if mono else "")
            parts.append((sign, term))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    __str__ = pretty

    def to_json(self) -> list:
        out = []
        for c in self.coeffs:
            if isinstance(c, SigmaLinear):
                out.append({"sigma": format_rational(c.slope), "const": format_rational(c.offset)})
            else:
                out.append(format_rational(c))
        return out

    @classmethod
    def from_json(cls, data, nominal_degree: Optional[int] = None) -> "RhoPoly":
        cs = []
        for c in data:
            if isinstance(c, dict):
                cs.append(SigmaLinear(as_rational(c["sigma"]), as_rational(c["const"])))
            else:
                cs.append(as_rational(c))
        return cls(cs, nominal_degree)


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_arith(lhs: RhoPoly, rhs, op: str) -> RhoPoly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (``rhs`` a scalar)."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "scale":
        return lhs.scale(rhs)
    raise ValueError(f"unknown operation {op!r}")


def poly_derivative(p: RhoPoly) -> RhoPoly:
    return p.derivative()


# ---------------------------------------------------------------------------
# Integer polynomial kernel for Sturm sequences.  Polynomials here are lists
# of Python ints, lowest degree first, with no trailing zeros.


def _require_rational(p: RhoPoly) -> None:
    if not p.is_rational():
        raise TypeError("sigma must be specialized before sign analysis")


def _primitive(cs: Sequence) -> list:
    """Scale rational coefficients by a positive factor to coprime integers."""
    cs = [Fraction(c) for c in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return []
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    return _content_free(ints)


def _content_free(ints: list) -> list:
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _int_derivative(f: list) -> list:
    return [i * c for i, c in enumerate(f)][1:]


def _int_prem_positive(a: list, b: list) -> list:
    """Remainder of a by b, scaled by |lc(b)|**(deg a - deg b + 1) > 0."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    mag = abs(lb)
    sgn = 1 if lb > 0 else -1
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        la = a[-1]
        a = [mag * x for x in a]
        for i, bc in enumerate(b):
            a[i + k] -= sgn * la * bc
        while a and a[-1] == 0:
            a.pop()
    return a


def _int_gcd(f: list, g: list) -> list:
    a, b = list(f), list(g)
    while b:
        r = _int_prem_positive(a, b)
        a, b = b, _content_free(r) if r else []
    return _content_free(a)


def _int_divexact(f: list, g: list) -> list:
    q = [Fraction(0)] * (len(f) - len(g) + 1)
    r = [Fraction(c) for c in f]
    for k in range(len(q) - 1, -1, -1):
        coef = r[k + len(g) - 1] / g[-1]
        q[k] = coef
        for i, gc in enumerate(g):
            r[i + k] -= coef * gc
    return _primitive(q)


def _squarefree(f: list) -> list:
    if len(f) <= 2:
        return f
    g = _int_gcd(f, _int_derivative(f))
    if len(g) <= 1:
        return f
    return _int_divexact(f, g)


def _sign_at(f: list, x: Optional[Fraction], at_minus_inf: bool = False) -> int:
    """Sign of f at rational x, or at +inf when x is None (-inf if flagged)."""
    if not f:
        return 0
    if x is None:
        s = 1 if f[-1] > 0 else -1
        if at_minus_inf and (len(f) - 1) % 2 == 1:
            s = -s
        return s
    a, b = x.numerator, x.denominator
    acc = f[-1]
    bpow = 1
    for c in reversed(f[:-1]):
        bpow *= b
        acc = acc * a + c * bpow
    return (acc > 0) - (acc < 0)


def _int_sturm(f: list) -> list:
    seq = [f, _content_free(_int_derivative(f))]
    while len(seq[-1]) > 1:
        r = _int_prem_positive(seq[-2], seq[-1])
        if not r:
            break
        seq.append(_content_free([-c for c in r]))
    return [s for s in seq if s]


def _variations(seq: list, x: Optional[Fraction], at_minus_inf: bool = False) -> int:
    count, last = 0, 0
    for s in seq:
        v = _sign_at(s, x, at_minus_inf)
        if v == 0:
            continue
        if last and v != last:
            count += 1
        last = v
    return count


class _SturmData:
    """Square-free part of a rational polynomial plus its Sturm chain."""

    def __init__(self, p: RhoPoly):
        _require_rational(p)
        if p.is_zero():
            raise ZeroPolynomial("Sturm analysis of the zero polynomial")
        self.f = _squarefree(_primitive(p.coeffs))
        self.seq = _int_sturm(self.f) if len(self.f) > 1 else [self.f]

    def sign(self, x: Fraction) -> int:
        return _sign_at(self.f, x)

    def var(self, x: Optional[Fraction], lower: bool) -> int:
        return _variations(self.seq, x, at_minus_inf=(x is None and lower))

    def count_half_open(self, lo: Optional[Fraction], hi: Optional[Fraction]) -> int:
        if len(self.f) <= 1:
            return 0
        return self.var(lo, True) - self.var(hi, False)

    def count_open(self, lo: Optional[Fraction], hi: Optional[Fraction]) -> int:
        n = self.count_half_open(lo, hi)
        if hi is not None and self.sign(hi) == 0:
            n -= 1
        return n

    def root_bound(self) -> Fraction:
        """A power of two strictly above every root modulus (Fujiwara)."""
        f = self.f
        n = len(f) - 1
        lead_bits = abs(f[-1]).bit_length()
        e = 0
        for k in range(1, n + 1):
            c = abs(f[n - k])
            if c:
                # |c / lead| < 2**(bits(c) - bits(lead) + 1)
                need = c.bit_length() - lead_bits + 1
                e = max(e, -(-need // k))
        # Fujiwara: every root has modulus at most 2 * 2**e
        return Fraction(2 ** (e + 2))


def sturm_sequence(p: RhoPoly) -> list:
    """Sturm chain of the square-free part of ``p`` as rational polynomials."""
    return [RhoPoly(s) for s in _SturmData(p).seq]


def sturm_count_roots(p: RhoPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots in ``(lo, hi]``; ``None`` means infinite."""
    lo = None if lo is None else as_rational(lo)
    hi = None if hi is None else as_rational(hi)
    if lo is not None and hi is not None and hi <= lo:
        return 0
    return _SturmData(p).count_half_open(lo, hi)


@dataclass(frozen=True)
class RootInterval:
    """Either an exact rational root (``lo == hi``) or an open interval
    ``(lo, hi)`` holding exactly one simple root of the square-free part."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


def _isolate(sd: _SturmData, lo: Fraction, hi: Fraction) -> list:
    out = []
    stack = [(lo, hi, sd.count_open(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(RootInterval(a, b))
            continue
        m = (a + b) / 2
        if sd.sign(m) == 0:
            out.append(RootInterval(m, m))
        stack.append((a, m, sd.count_open(a, m)))
        stack.append((m, b, sd.count_open(m, b)))
    out.sort(key=lambda r: r.lo)
    return out


def _refine(sd: _SturmData, r: RootInterval) -> RootInterval:
    if r.exact:
        return r
    m = (r.lo + r.hi) / 2
    if sd.sign(m) == 0:
        return RootInterval(m, m)
    if sd.count_open(r.lo, m) == 1:
        return RootInterval(r.lo, m)
    return RootInterval(m, r.hi)


def _snap_rational(sd: _SturmData, r: RootInterval) -> RootInterval:
    """Return the exact root if the isolated root is rational.

    A rational root has denominator dividing the leading coefficient L.  Two
    such rationals are at least 1/L**2 apart, so once the interval is
    narrower than that the closest bounded-denominator rational to its
    midpoint is the only candidate.  Endpoints must not be roots.
    """
    if r.exact:
        return r
    lead = abs(sd.f[-1])
    limit = Fraction(1, 2 * lead * lead)
    lo, hi = r.lo, r.hi
    s_lo = sd.sign(lo)
    while hi - lo >= limit:
        m = (lo + hi) / 2
        sm = sd.sign(m)
        if sm == 0:
            return RootInterval(m, m)
        if sm == s_lo:
            lo = m
        else:
            hi = m
    cand = ((lo + hi) / 2).limit_denominator(lead)
    if lo < cand < hi and sd.sign(cand) == 0:
        return RootInterval(cand, cand)
    return r


def isolate_real_roots(p: RhoPoly, lo=None, hi=None) -> list:
    """Isolate the distinct real roots of ``p`` in the open interval (lo, hi).

    The result is sorted; the closures of the intervals are pairwise
    disjoint and lie strictly inside (lo, hi).
    """
    return _isolate_sd(_SturmData(p), lo, hi)


def _isolate_sd(sd: _SturmData, lo, hi) -> list:
    if len(sd.f) <= 1:
        return []
    bound = sd.root_bound()
    a = -bound if lo is None else as_rational(lo)
    b = bound if hi is None else as_rational(hi)
    if lo is not None and hi is None:
        b = max(b, a + 1)
    if hi is not None and lo is None:
        a = min(a, b - 1)
    if b <= a:
        return []
    roots = _isolate(sd, a, b)
    while True:
        bad = False
        for i, r in enumerate(roots):
            if r.exact:
                continue
            left = a if i == 0 else roots[i - 1].hi
            right = b if i == len(roots) - 1 else roots[i + 1].lo
            if r.lo <= left or r.hi >= right:
                roots[i] = _refine(sd, r)
                bad = True
        if not bad:
            return [_snap_rational(sd, r) for r in roots]


@dataclass(frozen=True)
class Interval:
    """Real interval; ``hi=None`` is +infinity, ``lo=None`` is -infinity."""

    lo: Optional[Fraction] = Fraction(0)
    hi: Optional[Fraction] = None
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        if self.lo is not None:
            object.__setattr__(self, "lo", as_rational(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo is None:
            object.__setattr__(self, "lo_closed", False)
        if self.hi is None:
            object.__setattr__(self, "hi_closed", False)

    @classmethod
    def open(cls, lo=None, hi=None) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x, True, True)

    def contains(self, x: Fraction) -> bool:
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def interior_point(self) -> Fraction:
        if self.lo is None and self.hi is None:
            return Fraction(0)
        if self.lo is None:
            return self.hi - 1
        if self.hi is None:
            return self.lo + 1
        return (self.lo + self.hi) / 2

    def __str__(self):
        lo = "-inf" if self.lo is None else format_rational(self.lo)
        hi = "inf" if self.hi is None else format_rational(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo}, {hi}{']' if self.hi_closed else ')'}"


HALF_LINE = Interval(0, None, True, False)
OPEN_HALF_LINE = Interval(0, None, False, False)


@dataclass(frozen=True)
class Violation:
    """A point where the sign claim fails, with its exact value.

    ``point`` is None only for an irrational root of a strict claim; then
    ``root_interval`` brackets it.
    """

    point: Optional[Fraction]
    value: Optional[Fraction]
    root_interval: Optional[RootInterval] = None


@dataclass(frozen=True)
class SignCertificate:
    holds: bool
    sign: int
    strict: bool
    interval: Interval
    roots: tuple = ()
    samples: tuple = ()
    violations: tuple = field(default=())

    @property
    def witness(self) -> Optional[Fraction]:
        return self.violations[0].point if self.violations else None

    @property
    def value(self) -> Optional[Fraction]:
        return self.violations[0].value if self.violations else None

    def __bool__(self):
        return self.holds


def certify_sign(p: RhoPoly, sign: int, interval: Interval = HALF_LINE, strict: bool = False) -> SignCertificate:
    """Decide exactly whether ``sign * p(x) >= 0`` (``> 0`` if strict) on
    ``interval``.

    The sign is constant between consecutive distinct roots, so one exact
    rational sample per gap plus the closed endpoints and the roots
    themselves settle the claim.  Failures carry every violating sample.
    """
    _require_rational(p)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    iv = interval
    if iv.lo is not None and iv.hi is not None and (
        iv.hi < iv.lo or (iv.hi == iv.lo and not (iv.lo_closed and iv.hi_closed))
    ):
        return SignCertificate(True, sign, strict, iv)

    if p.is_zero():
        if not strict:
            return SignCertificate(True, sign, strict, iv)
        x = iv.lo if iv.lo_closed else iv.interior_point()
        return SignCertificate(False, sign, strict, iv, violations=(Violation(x, Fraction(0)),))

    if iv.lo is not None and iv.lo == iv.hi:
        samples = [iv.lo]
        roots = []
    else:
        sd = _SturmData(p)
        roots = _isolate_sd(sd, iv.lo, iv.hi)
        samples = []
        if iv.lo_closed:
            samples.append(iv.lo)
        ends = [iv.lo] + [x for r in roots for x in (r.lo, r.hi)] + [iv.hi]
        for left, right in zip(ends[0::2], ends[1::2]):
            if left is None and right is None:
                samples.append(Fraction(0))
            elif left is None:
                samples.append(right - 1)
            elif right is None:
                samples.append(left + 1)
            else:
                samples.append((left + right) / 2)
        if iv.hi_closed:
            samples.append(iv.hi)

    points = sorted(set(samples) | {r.lo for r in roots if r.exact})
    violations = []
    for x in points:
        v = p(x)
        if (strict and sign * v <= 0) or (not strict and sign * v < 0):
            violations.append(Violation(x, v))
    if strict:
        for r in roots:
            if not r.exact:
                violations.append(Violation(None, None, r))
        violations.sort(key=lambda v: v.point if v.point is not None else v.root_interval.lo)
    return SignCertificate(
        not violations, sign, strict, iv, tuple(roots), tuple(points), tuple(violations)
    )


_MODES = {
    "nonpositive": (-1, False, HALF_LINE),
    "nonnegative": (1, False, HALF_LINE),
    "strictly_negative": (-1, True, OPEN_HALF_LINE),
    "strictly_positive": (1, True, OPEN_HALF_LINE),
}


def certify_sign_on_halfline(p: RhoPoly, mode: str, interval: Optional[Interval] = None) -> SignCertificate:
    """Certify ``mode`` for ``p`` on ``interval`` (default: ``[0, inf)`` for
    the non-strict modes, ``(0, inf)`` for the strict ones)."""
    try:
        sign, strict, default = _MODES[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}; expected one of {sorted(_MODES)}") from None
    return certify_sign(p, sign, default if interval is None else interval, strict)

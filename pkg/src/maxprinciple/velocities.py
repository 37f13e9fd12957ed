"""Normal velocities F(l1, l2) with hand-coded first and second partials."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Tuple

import mpmath

from .exact_algebra import as_rational, format_rational

__all__ = ["VelocitySpec", "velocity", "VELOCITY_NAMES", "to_mpf"]

Partials = Tuple[mpmath.mpf, ...]


def to_mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return to_mpf(Fraction(x))
    return mpmath.mpf(x)


@dataclass(frozen=True)
class VelocitySpec:
    """``partials(l1, l2)`` returns ``(F, F1, F2, F11, F12, F22)``."""

    name: str
    partials: Callable[[mpmath.mpf, mpmath.mpf], Partials] = field(compare=False)
    sigma: Fraction = None

    def __call__(self, l1, l2):
        return self.partials(to_mpf(l1), to_mpf(l2))[0]

    def evaluate(self, l1, l2) -> Partials:
        return self.partials(to_mpf(l1), to_mpf(l2))

    def describe(self) -> dict:
        out = {"name": self.name}
        if self.sigma is not None:
            out["sigma"] = format_rational(self.sigma)
        return out


def _k_sigma(sigma):
    def partials(a, b):
        s = to_mpf(sigma)
        pa, pb = a ** s, b ** s
        return (
            pa * pb,
            s * a ** (s - 1) * pb,
            s * pa * b ** (s - 1),
            s * (s - 1) * a ** (s - 2) * pb,
            s * s * a ** (s - 1) * b ** (s - 1),
            s * (s - 1) * pa * b ** (s - 2),
        )
    return partials


def _h_sigma(sigma):
    def partials(a, b):
        s = to_mpf(sigma)
        H = a + b
        d1 = s * H ** (s - 1)
        d2 = s * (s - 1) * H ** (s - 2)
        return (H ** s, d1, d1, d2, d2, d2)
    return partials


def _a2(a, b):
    two, zero = mpmath.mpf(2), mpmath.mpf(0)
    return (a * a + b * b, 2 * a, 2 * b, two, zero, two)


def _tr_sigma(sigma):
    def partials(a, b):
        s = to_mpf(sigma)
        zero = mpmath.mpf(0)
        return (
            a ** s + b ** s,
            s * a ** (s - 1),
            s * b ** (s - 1),
            s * (s - 1) * a ** (s - 2),
            zero,
            s * (s - 1) * b ** (s - 2),
        )
    return partials


_BUILDERS = {
    "K^sigma": (_k_sigma, True),
    "H^sigma": (_h_sigma, True),
    "A2": (lambda _s: _a2, False),
    "trA^sigma": (_tr_sigma, True),
}

VELOCITY_NAMES = tuple(_BUILDERS)


def velocity(name: str, sigma=None) -> VelocitySpec:
    """Build a named velocity, e.g. ``velocity("K^sigma", "1/2")``."""
    try:
        build, needs_sigma = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown velocity {name!r}; choose from {list(_BUILDERS)}") from None
    if needs_sigma:
        if sigma is None:
            raise ValueError(f"velocity {name!r} needs sigma")
        s = as_rational(sigma)
        return VelocitySpec(name, build(s), s)
    return VelocitySpec(name, build(None), None)

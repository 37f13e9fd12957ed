"""The object under test: a quotient ``w = p / q`` and a flow exponent."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_algebra import as_rational, format_rational
from .hk_polynomials import HKPoly


@dataclass(frozen=True)
class Candidate:
    p: HKPoly
    q: HKPoly
    sigma: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "sigma", as_rational(self.sigma))

    @property
    def g(self) -> int:
        return self.p.degree

    @property
    def h(self) -> int:
        return self.q.degree

    def with_sigma(self, sigma) -> "Candidate":
        return Candidate(self.p, self.q, as_rational(sigma))

    def scaled(self, alpha, beta) -> "Candidate":
        return Candidate(self.p.scale(alpha), self.q.scale(beta), self.sigma)

    def to_json(self) -> dict:
        return {"sigma": format_rational(self.sigma), "p": self.p.to_json(), "q": self.q.to_json()}

    @classmethod
    def from_json(cls, data) -> "Candidate":
        if not isinstance(data, dict):
            raise ValueError("candidate JSON must be an object")
        missing = {"sigma", "p", "q"} - set(data)
        if missing:
            raise ValueError(f"candidate JSON missing {sorted(missing)}")
        sigma = data["sigma"]
        if isinstance(sigma, float):
            raise ValueError("sigma must be an exact rational string or integer")
        return cls(HKPoly.from_json(data["p"]), HKPoly.from_json(data["q"]), as_rational(sigma))

    def __str__(self):
        return f"({self.p}) / ({self.q}), sigma={format_rational(self.sigma)}"

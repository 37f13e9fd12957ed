"""Exact certification of the four maximum-principle conditions, and
exhaustive search over bounded candidate spaces."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .candidate import Candidate
from .errors import ConditionIPrerequisiteFailed, InvariantBreach
from .exact_algebra import (
    Interval,
    RhoPoly,
    SignCertificate,
    as_rational,
    certify_sign,
    format_rational,
)
from .flow_terms import flow_polys
from .hk_polynomials import HKPoly, dehomogenize, diagonal_sum

__all__ = [
    "CONDITIONS",
    "Verdict",
    "MPFReport",
    "SearchConfig",
    "check_condition_I",
    "check_condition_II",
    "check_condition_III",
    "check_condition_IV",
    "check_all",
    "quick_reject",
    "canonicalize",
    "enumerate_candidates",
    "search",
    "search_full",
    "SearchResult",
    "run_partitioned",
]

CONDITIONS = ("I(a)", "I(b)", "II", "III", "IV-C", "IV-G1", "IV-G2")

OPEN_RAY = Interval.open(0, None)
UNIT_GAP = Interval.open(0, 1)
ABOVE_ONE = Interval.open(1, None)
CLOSED_RAY = Interval(0, None, True, False)


@dataclass(frozen=True)
class Verdict:
    """Outcome of one condition.  A failure carries an exact witness point
    ``rho`` and the violating value, or, for a violation located at an
    irrational root, the isolating interval of that root."""

    condition: str
    passed: bool
    witness: Optional[Fraction] = None
    value: Optional[Fraction] = None
    witness_interval: Optional[Tuple[Fraction, Fraction]] = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"condition": self.condition, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = format_rational(self.witness)
            out["value"] = format_rational(self.value)
        if self.witness_interval is not None:
            out["witness_interval"] = [format_rational(x) for x in self.witness_interval]
        if self.reason:
            out["reason"] = self.reason
        return out


def _from_certificate(name: str, cert: SignCertificate, what: str) -> Verdict:
    if cert.holds:
        return Verdict(name, True)
    # the violation furthest along the ray is the most informative one
    for v in reversed(cert.violations):
        if v.point is not None:
            return Verdict(name, False, v.point, v.value, reason=f"{what} violated on {cert.interval}")
    r = cert.violations[-1].root_interval
    return Verdict(
        name, False, witness_interval=(r.lo, r.hi),
        reason=f"{what} vanishes at an irrational point in ({format_rational(r.lo)}, {format_rational(r.hi)})",
    )


@dataclass(frozen=True)
class MPFReport:
    candidate: Candidate
    verdicts: Tuple[Verdict, ...]

    @property
    def overall(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def __getitem__(self, condition: str) -> Verdict:
        for v in self.verdicts:
            if v.condition == condition:
                return v
        raise KeyError(condition)

    def failed(self) -> List[str]:
        return [v.condition for v in self.verdicts if not v.passed]

    def to_json(self) -> dict:
        return {
            "candidate": self.candidate.to_json(),
            "overall": self.overall,
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def check_condition_I(cand: Candidate) -> Tuple[Verdict, Verdict]:
    """I(a): p >= 0 and q > 0 on the open ray; I(b): p vanishes on the diagonal."""
    p_cert = certify_sign(dehomogenize(cand.p), 1, OPEN_RAY, strict=False)
    q_cert = certify_sign(dehomogenize(cand.q), 1, OPEN_RAY, strict=True)
    if not p_cert.holds:
        ia = _from_certificate("I(a)", p_cert, "p >= 0")
    else:
        ia = _from_certificate("I(a)", q_cert, "q > 0")
    s = diagonal_sum(cand.p)
    if s == 0:
        ib = Verdict("I(b)", True)
    else:
        # p(1, 1) = diagonal sum, so rho = 1 is an exact witness
        ib = Verdict("I(b)", False, Fraction(1), s, reason="p does not vanish on the diagonal")
    return ia, ib


def check_condition_II(cand: Candidate) -> Verdict:
    if cand.g > cand.h:
        return Verdict("II", True)
    return Verdict("II", False, reason=f"deg p = {cand.g} is not above deg q = {cand.h}")


def _monotonicity_numerator(cand: Candidate) -> RhoPoly:
    p, q = dehomogenize(cand.p), dehomogenize(cand.q)
    return p.derivative() * q - p * q.derivative()


def check_condition_III(cand: Candidate) -> Verdict:
    """Sign of ``n = p'q - pq'``: negative on (0, 1), positive beyond 1."""
    q_cert = certify_sign(dehomogenize(cand.q), 1, OPEN_RAY, strict=True)
    if not q_cert.holds:
        raise ConditionIPrerequisiteFailed("q is not positive on the ray")
    n = _monotonicity_numerator(cand)
    below = certify_sign(n, -1, UNIT_GAP, strict=True)
    if not below.holds:
        return _from_certificate("III", below, "dw/drho < 0")
    above = certify_sign(n, 1, ABOVE_ONE, strict=True)
    return _from_certificate("III", above, "dw/drho > 0")


def check_condition_IV(cand: Candidate) -> Tuple[Verdict, Verdict, Verdict]:
    """C, G1 and G2 must be nonpositive on [0, inf).

    G1 and G2 are reciprocal to each other, so their verdicts must agree;
    a disagreement means an internal error and raises.
    """
    if cand.sigma <= 0:
        raise ValueError("sigma must be positive")
    out = []
    for name, poly in zip(("IV-C", "IV-G1", "IV-G2"), flow_polys(cand)):
        out.append(_from_certificate(name, certify_sign(poly, -1, CLOSED_RAY), f"{name[3:]} <= 0"))
    if out[1].passed != out[2].passed:
        raise InvariantBreach(f"G1 and G2 verdicts disagree for {cand}")
    return tuple(out)


def check_all(cand: Candidate) -> MPFReport:
    """All conditions, in order, without short-circuiting."""
    ia, ib = check_condition_I(cand)
    ii = check_condition_II(cand)
    try:
        iii = check_condition_III(cand)
    except ConditionIPrerequisiteFailed as exc:
        iii = Verdict("III", False, reason=f"not checked: {exc}")
    return MPFReport(cand, (ia, ib, ii, iii) + check_condition_IV(cand))


def quick_reject(cand: Candidate) -> Optional[str]:
    """Cheapest failing condition found by exact filters, or None."""
    if cand.g <= cand.h:
        return "II"
    if diagonal_sum(cand.p) != 0:
        return "I(b)"
    p = dehomogenize(cand.p)
    q = dehomogenize(cand.q)
    # top coefficients are the first nonzero H,K coefficients; both must be positive
    if p.leading_coefficient <= 0 or q.leading_coefficient <= 0:
        return "I(a)"
    # values at rho = 0 are c_1 and d_1
    if p.coefficient(0) < 0 or q.coefficient(0) < 0 or q(Fraction(1)) <= 0:
        return "I(a)"
    return None


def passes_I_to_III(cand: Candidate) -> bool:
    if quick_reject(cand) is not None:
        return False
    ia, ib = check_condition_I(cand)
    if not (ia.passed and ib.passed):
        return False
    return check_condition_III(cand).passed


def passes_all(cand: Candidate) -> bool:
    return passes_I_to_III(cand) and all(v.passed for v in check_condition_IV(cand))


# ---------------------------------------------------------------------------
# Search


@dataclass(frozen=True)
class SearchConfig:
    g_max: int
    sigma: Fraction = Fraction(1)
    coeff_min: int = -4
    coeff_max: int = 4
    g_min: int = 1
    h_min: int = 0
    h_max: Optional[int] = None
    workers: int = 1
    canonicalize: bool = True

    def __post_init__(self):
        object.__setattr__(self, "sigma", as_rational(self.sigma))
        if self.g_min < 1:
            raise ValueError("g_min must be at least 1")
        if self.h_min < 0:
            raise ValueError("h_min must be nonnegative")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    @property
    def coefficients(self) -> range:
        return range(self.coeff_min, self.coeff_max + 1)

    def degree_pairs(self) -> List[Tuple[int, int]]:
        out = []
        for g in range(self.g_min, self.g_max + 1):
            top = g - 1 if self.h_max is None else min(self.h_max, g - 1)
            for h in range(self.h_min, top + 1):
                out.append((g, h))
        return out

    def to_json(self) -> dict:
        return {
            "g_min": self.g_min,
            "g_max": self.g_max,
            "h_min": self.h_min,
            "h_max": self.h_max,
            "coeff_range": [self.coeff_min, self.coeff_max],
            "sigma": format_rational(self.sigma),
            "canonicalize": self.canonicalize,
        }

    @classmethod
    def from_json(cls, data: dict, **overrides) -> "SearchConfig":
        if not isinstance(data, dict):
            raise ValueError("search config must be an object")
        known = {"g_min", "g_max", "h_min", "h_max", "coeff_range", "sigma", "canonicalize", "workers"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown search config keys {sorted(unknown)}")
        kw = {k: data[k] for k in ("g_min", "g_max", "h_min", "h_max", "canonicalize", "workers") if k in data}
        if "coeff_range" in data:
            lo, hi = data["coeff_range"]
            kw["coeff_min"], kw["coeff_max"] = int(lo), int(hi)
        if "sigma" in data:
            if isinstance(data["sigma"], float):
                raise ValueError("sigma must be an exact rational")
            kw["sigma"] = as_rational(data["sigma"])
        kw.update({k: v for k, v in overrides.items() if v is not None})
        if "g_max" not in kw:
            raise ValueError("search config needs g_max")
        for k in ("g_min", "g_max", "h_min", "workers"):
            if k in kw and (not isinstance(kw[k], int) or isinstance(kw[k], bool)):
                raise ValueError(f"{k} must be an integer")
        return cls(**kw)


Key = Tuple[int, int, Tuple[Fraction, ...], Tuple[Fraction, ...]]


def _primitive_part(cs: Sequence[Fraction]) -> List[int]:
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g else ints


def canonicalize(p: Sequence, q: Sequence) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Canonical representative of ``{(a p, b q) : a, b > 0}`` together with
    ``(-p, -q)``: each part reduced to coprime integers, then both negated
    if q's first nonzero coefficient is negative.  Every condition is
    invariant under these moves."""
    p = _primitive_part([as_rational(c) for c in p])
    q = _primitive_part([as_rational(c) for c in q])
    if next((c for c in q if c), 0) < 0:
        p = [-c for c in p]
        q = [-c for c in q]
    return tuple(map(Fraction, p)), tuple(map(Fraction, q))


def candidate_key(cand: Candidate) -> Key:
    return (cand.g, cand.h, cand.p.coeffs, cand.q.coeffs)


def _chunks(config: SearchConfig) -> List[Tuple[int, int, int]]:
    """Work units: (g, h, first coefficient of p)."""
    coeffs = list(config.coefficients)
    return [(g, h, c) for g, h in config.degree_pairs() for c in coeffs]


def enumerate_candidates(config: SearchConfig, chunk: Optional[Tuple[int, int, int]] = None) -> Iterator[Candidate]:
    """Yield every candidate in the box (or one chunk of it) that represents
    its scaling class.

    With canonicalization on, a tuple is kept when it is its own canonical
    form, or when its canonical form falls outside the box (then duplicates
    are removed after evaluation).
    """
    coeffs = list(config.coefficients)
    if not coeffs:
        return
    lo, hi = config.coeff_min, config.coeff_max
    units = [chunk] if chunk is not None else _chunks(config)
    for g, h, first in units:
        for p_rest in itertools.product(coeffs, repeat=g // 2):
            p = (first,) + p_rest
            if not any(p):
                continue
            for q in itertools.product(coeffs, repeat=h // 2 + 1):
                if not any(q):
                    continue
                if config.canonicalize:
                    cp, cq = canonicalize(p, q)
                    if (cp, cq) != (tuple(map(Fraction, p)), tuple(map(Fraction, q))):
                        if all(lo <= c <= hi for c in cp + cq):
                            continue
                        p_use, q_use = cp, cq
                    else:
                        p_use, q_use = p, q
                else:
                    p_use, q_use = p, q
                yield Candidate(HKPoly(g, p_use), HKPoly(h, q_use), config.sigma)


def _search_chunk(args) -> Tuple[int, List[Candidate]]:
    config, chunk = args
    seen = 0
    hits = []
    for cand in enumerate_candidates(config, chunk):
        seen += 1
        if passes_all(cand):
            hits.append(cand)
    return seen, hits


def run_partitioned(config: SearchConfig, worker: Callable, workers: Optional[int] = None) -> list:
    """Map ``worker((config, chunk))`` over all chunks, in chunk order."""
    jobs = [(config, c) for c in _chunks(config)]
    n = config.workers if workers is None else workers
    if n <= 1 or len(jobs) <= 1:
        return [worker(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(worker, jobs, chunksize=max(1, len(jobs) // (4 * n))))


@dataclass(frozen=True)
class SearchResult:
    config: SearchConfig
    evaluated: int
    passing: Tuple[Candidate, ...] = field(default=())

    def summary(self) -> dict:
        return {
            "summary": True,
            "config": self.config.to_json(),
            "evaluated": self.evaluated,
            "passing": len(self.passing),
        }


def dedupe_sorted(cands) -> List[Candidate]:
    out: Dict[Key, Candidate] = {}
    for c in cands:
        out.setdefault(candidate_key(c), c)
    return [out[k] for k in sorted(out)]


def search_full(config: SearchConfig, workers: Optional[int] = None) -> SearchResult:
    parts = run_partitioned(config, _search_chunk, workers)
    evaluated = sum(n for n, _ in parts)
    hits = dedupe_sorted(c for _, hs in parts for c in hs)
    return SearchResult(config, evaluated, tuple(hits))


def search(config: SearchConfig, workers: Optional[int] = None) -> List[Candidate]:
    """Canonical candidates in the box passing every condition, in
    lexicographic order of (g, h, p coefficients, q coefficients)."""
    return list(search_full(config, workers).passing)

"""Leading-term case analysis.

A candidate is bucketed by the indices ``k`` and ``l`` of the first
nonzero coefficients of ``p`` and ``q``.  For each of the nine buckets the
top coefficients of C, G1 and G2 have closed forms in ``D = g - h``, ``k``,
``l``, ``c = c_k``, ``d = d_l`` and sigma.  With ``m = k - l`` they all
collapse to

    C  : c d A(sigma)                                  at g + h - k - l + 3
    G1 : -c^3 d^3 (D - m)(D - 2m) A(sigma)             at 3(g + h - k - l) + 5
    G2 : c^3 d^3 m (D - 2m)(-m + (D - 2m) sigma)       at 3(g + h - k - l) + 6

where ``A(sigma) = D (1 - sigma) + m (2 sigma - 1)``.  For every sigma > 1
one of these is positive, which rules out nonpositivity of C, G1 or G2.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .candidate import Candidate
from .errors import (
    CrossCheckMismatch,
    InvalidCaseParams,
    NonPositiveLeadingCoefficient,
    TheoremViolationFound,
)
from .exact_algebra import (
    Interval,
    RhoPoly,
    SignCertificate,
    as_rational,
    certify_sign,
    format_rational,
)
from .flow_terms import flow_polys
from .hk_polynomials import HKPoly, first_positive_index
from .mpf_checker import (
    CLOSED_RAY,
    SearchConfig,
    check_all,
    check_condition_IV,
    enumerate_candidates,
    passes_I_to_III,
    run_partitioned,
)

__all__ = [
    "CASE_IDS",
    "CaseParams",
    "Prediction",
    "ChainStep",
    "CaseVerdict",
    "CrossCheckEntry",
    "CrossCheckReport",
    "SweepSummary",
    "classify",
    "case_for_indices",
    "predicted_leading",
    "uncorrected_leading",
    "unified_leading",
    "verdict",
    "cross_check",
    "theorem_sweep",
    "auxiliary_inequalities",
    "SPOT_SIGMAS",
    "sample_instance",
]

CASE_IDS = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX")
POLY_NAMES = ("C", "G1", "G2")
SPOT_SIGMAS = (Fraction(1) + Fraction(1, 10 ** 6), Fraction(3, 2), Fraction(2), Fraction(10), Fraction(1000))

_ONE = RhoPoly([1])
_SIGMA = RhoPoly([0, 1])
_SIGMA_REGION = Interval.open(1, None)


def _lin(slope, offset) -> RhoPoly:
    """``slope * sigma + offset`` as a polynomial in sigma."""
    return RhoPoly([offset, slope])


def case_for_indices(k: int, l: int) -> str:
    kb = min(k, 3)
    lb = min(l, 3)
    table = {
        (1, 1): "I", (1, 2): "II", (1, 3): "III",
        (2, 2): "IV", (2, 3): "V", (3, 3): "VI",
        (2, 1): "VII", (3, 1): "VIII", (3, 2): "IX",
    }
    return table[(kb, lb)]


@dataclass(frozen=True)
class CaseParams:
    case_id: str
    g: int
    h: int
    k: int
    l: int
    c: Fraction
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        object.__setattr__(self, "d", as_rational(self.d))

    @property
    def D(self) -> int:
        return self.g - self.h

    @property
    def m(self) -> int:
        return self.k - self.l

    def problems(self) -> List[str]:
        out = []
        if self.case_id not in CASE_IDS:
            return [f"unknown case {self.case_id!r}"]
        if self.k < 1 or self.l < 1:
            out.append("k and l must be at least 1")
        elif case_for_indices(self.k, self.l) != self.case_id:
            out.append(f"(k, l) = ({self.k}, {self.l}) belongs to case {case_for_indices(self.k, self.l)}")
        if self.g < 0 or self.h < 0:
            out.append("degrees must be nonnegative")
        if self.k > self.g // 2 + 1:
            out.append(f"k = {self.k} exceeds g // 2 + 1 = {self.g // 2 + 1}")
        if self.l > self.h // 2 + 1:
            out.append(f"l = {self.l} exceeds h // 2 + 1 = {self.h // 2 + 1}")
        if self.g <= self.h:
            out.append(f"g = {self.g} must exceed h = {self.h}")
        if self.c <= 0 or self.d <= 0:
            out.append("c_k and d_l must be positive")
        return out

    def validate(self) -> "CaseParams":
        bad = self.problems()
        if bad:
            raise InvalidCaseParams("; ".join(bad))
        return self

    def to_json(self) -> dict:
        return {
            "case": self.case_id, "g": self.g, "h": self.h, "k": self.k, "l": self.l,
            "c": format_rational(self.c), "d": format_rational(self.d),
        }


def classify(p: HKPoly, q: HKPoly) -> CaseParams:
    k, sk = first_positive_index(p)
    l, sl = first_positive_index(q)
    if sk < 0 or sl < 0:
        raise NonPositiveLeadingCoefficient(
            f"first nonzero coefficients must be positive (p: index {k}, q: index {l})"
        )
    return CaseParams(case_for_indices(k, l), p.degree, q.degree, k, l, p.coeffs[k - 1], q.coeffs[l - 1])


@dataclass(frozen=True)
class Prediction:
    """Leading coefficient as a polynomial in sigma, at a fixed rho-exponent."""

    poly: str
    coefficient: RhoPoly
    exponent: int

    def at(self, sigma) -> Fraction:
        return self.coefficient(as_rational(sigma))

    def to_json(self, sigma=None) -> dict:
        out = {
            "poly": self.poly,
            "exponent": self.exponent,
            "coefficient": self.coefficient.pretty("sigma"),
        }
        if sigma is not None:
            out["value"] = format_rational(self.at(sigma))
        return out


def _shared(P: CaseParams):
    D = P.D
    c3d3 = P.c ** 3 * P.d ** 3
    cd = P.c * P.d
    return D, c3d3, cd


def _a_form(D: int, m: int) -> RhoPoly:
    """``D (1 - sigma) + m (2 sigma - 1)``."""
    return _lin(2 * m - D, D - m)


def _g1_small(P: CaseParams, j: int, exponent: int) -> Dict[str, Prediction]:
    # cases II, III, V: shift j = l - k
    D, c3d3, _ = _shared(P)
    form = _a_form(D, -j)
    return {"G1": Prediction("G1", form.scale(-c3d3 * (D + j) * (D + 2 * j)), exponent)}


def _three(P: CaseParams, j: int, e_c: int, e_g1: int, e_g2: int) -> Dict[str, Prediction]:
    # cases VI to IX: j = k - l
    D, c3d3, cd = _shared(P)
    form = _a_form(D, j)
    return {
        "C": Prediction("C", form.scale(cd), e_c),
        "G1": Prediction("G1", form.scale(-c3d3 * (D - j) * (D - 2 * j)), e_g1),
        "G2": Prediction("G2", _lin(D - 2 * j, -j).scale(c3d3 * j * (D - 2 * j)), e_g2),
    }


def _case_I(P):
    D, c3d3, _ = _shared(P)
    return {"G1": Prediction("G1", _lin(1, -1).scale(c3d3 * D ** 3), 3 * (P.g + P.h) - 1)}


def _case_II(P):
    return _g1_small(P, 1, 3 * (P.g + P.h) - 4)


def _case_III(P):
    return _g1_small(P, P.l - 1, 3 * (P.g + P.h - P.l) + 2)


def _case_IV(P):
    D, c3d3, _ = _shared(P)
    return {"G1": Prediction("G1", _lin(1, -1).scale(c3d3 * D ** 3), 3 * (P.g + P.h) - 7)}


def _case_V(P):
    return _g1_small(P, P.l - 2, 3 * (P.g + P.h - P.l) - 1)


def _case_VI(P):
    n = P.g + P.h - (P.k + P.l)
    D, c3d3, cd = _shared(P)
    j = P.l - P.k
    form = _a_form(D, -j)
    return {
        "C": Prediction("C", form.scale(cd), n + 3),
        "G1": Prediction("G1", form.scale(-c3d3 * (D + j) * (D + 2 * j)), 3 * n + 5),
        "G2": Prediction("G2", _lin(D + 2 * j, j).scale(-c3d3 * j * (D + 2 * j)), 3 * n + 6),
    }


def _case_VII(P):
    s = P.g + P.h
    return _three(P, 1, s, 3 * s - 4, 3 * s - 3)


def _case_VIII(P):
    s = P.g + P.h - P.k
    return _three(P, P.k - 1, s + 2, 3 * s + 2, 3 * s + 3)


def _case_IX(P):
    s = P.g + P.h - P.k
    return _three(P, P.k - 2, s + 1, 3 * s - 1, 3 * s)


_TABLE: Dict[str, Callable[[CaseParams], Dict[str, Prediction]]] = {
    "I": _case_I, "II": _case_II, "III": _case_III, "IV": _case_IV, "V": _case_V,
    "VI": _case_VI, "VII": _case_VII, "VIII": _case_VIII, "IX": _case_IX,
}


def predicted_leading(params: CaseParams) -> Dict[str, Prediction]:
    """Closed-form leading coefficients, keyed by "C", "G1", "G2".

    G1 is given for every case; C and G2 for cases VI to IX.
    """
    params.validate()
    return _TABLE[params.case_id](params)


def uncorrected_leading(params: CaseParams, d1: Fraction = Fraction(0)) -> Dict[str, Prediction]:
    """The table before correction, with three wrong entries.

    Kept only to show those entries failing against brute force.  ``d1`` is
    the first coefficient of q, which the wrong case IX entries use in place
    of ``d_2`` (it is zero in that case).
    """
    out = dict(predicted_leading(params))
    D, c3d3, _ = _shared(params)
    if params.case_id == "VII":
        out["G2"] = Prediction("G2", _lin(-(D - 2) ** 2, -(D - 2)).scale(c3d3), out["G2"].exponent)
    elif params.case_id == "IX":
        j = params.k - 1
        c = params.c
        out["C"] = Prediction("C", _a_form(D, params.k - 2).scale(c * d1), out["C"].exponent)
        out["G2"] = Prediction(
            "G2", _lin(D - 2 * j, -j).scale(c ** 3 * d1 ** 3 * (D - 2 * j) * j), out["G2"].exponent
        )
    return out


def unified_leading(params: CaseParams) -> Dict[str, Prediction]:
    """The single closed form behind all nine cases (see module docstring)."""
    params.validate()
    D, c3d3, cd = _shared(params)
    m = params.m
    n = params.g + params.h - params.k - params.l
    form = _a_form(D, m)
    return {
        "C": Prediction("C", form.scale(cd), n + 3),
        "G1": Prediction("G1", form.scale(-c3d3 * (D - m) * (D - 2 * m)), 3 * n + 5),
        "G2": Prediction("G2", _lin(D - 2 * m, -m).scale(c3d3 * m * (D - 2 * m)), 3 * n + 6),
    }


# ---------------------------------------------------------------------------
# Contradiction chains


@dataclass(frozen=True)
class ChainStep:
    """On ``region`` of sigma, the leading coefficient of ``violated`` is
    positive, so that polynomial cannot be nonpositive for large rho."""

    assumption: str
    violated: str
    region: Interval
    coefficient: RhoPoly
    exponent: int
    certificate: SignCertificate
    spot_checks: Tuple[Tuple[Fraction, Fraction], ...] = ()
    note: str = ""

    @property
    def certified(self) -> bool:
        return self.certificate.holds and all(v > 0 for _, v in self.spot_checks)

    def to_json(self) -> dict:
        out = {
            "assumption": self.assumption,
            "violated": self.violated,
            "sigma_region": str(self.region),
            "coefficient": self.coefficient.pretty("sigma"),
            "rho_exponent": self.exponent,
            "certified": self.certified,
            "spot_checks": [[format_rational(s), format_rational(v)] for s, v in self.spot_checks],
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class CaseVerdict:
    params: CaseParams
    sigma: Optional[Fraction]
    predictions: Dict[str, Prediction]
    chain: Tuple[ChainStep, ...]
    supporting: Tuple[Tuple[str, SignCertificate], ...] = ()

    @property
    def contradiction(self) -> bool:
        return bool(self.chain) and all(s.certified for s in self.chain) and all(
            c.holds for _, c in self.supporting
        )

    def step_for(self, sigma) -> ChainStep:
        s = as_rational(sigma)
        for step in self.chain:
            if step.region.contains(s):
                return step
        raise ValueError(f"sigma = {s} is outside every region of the chain")

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "sigma": None if self.sigma is None else format_rational(self.sigma),
            "predictions": {
                k: v.to_json(self.sigma) for k, v in self.predictions.items()
            },
            "chain": [s.to_json() for s in self.chain],
            "supporting": [
                {"claim": claim, "certified": cert.holds} for claim, cert in self.supporting
            ],
            "contradiction": self.contradiction,
        }

    def explain(self) -> str:
        P = self.params
        lines = [
            f"Case {P.case_id}: g={P.g}, h={P.h}, k={P.k}, l={P.l}, c_k={format_rational(P.c)}, "
            f"d_l={format_rational(P.d)}"
            + ("" if self.sigma is None else f", sigma={format_rational(self.sigma)}")
        ]
        for name, pred in self.predictions.items():
            lines.append(f"  L({name}) = ({pred.coefficient.pretty('sigma')}) * rho^{pred.exponent}")
        for i, s in enumerate(self.chain, 1):
            lines.append(
                f"  step {i}: {s.assumption}; on sigma in {s.region} the coefficient of "
                f"rho^{s.exponent} in {s.violated} is {s.coefficient.pretty('sigma')} > 0 "
                f"[{'certified' if s.certified else 'NOT certified'}]"
            )
            if s.note:
                lines.append(f"          {s.note}")
        for claim, cert in self.supporting:
            lines.append(f"  supporting: {claim} [{'certified' if cert.holds else 'NOT certified'}]")
        lines.append("  => " + ("contradiction for every sigma in scope" if self.contradiction
                               else "no contradiction established"))
        return "\n".join(lines)


def _positive_on(poly: RhoPoly, region: Interval) -> Tuple[SignCertificate, tuple]:
    cert = certify_sign(poly, 1, region, strict=True)
    spots = tuple((s, poly(s)) for s in SPOT_SIGMAS if region.contains(s))
    return cert, spots


def _step(assumption, name, pred: Prediction, region: Interval, poly: Optional[RhoPoly] = None, note=""):
    poly = pred.coefficient if poly is None else poly
    cert, spots = _positive_on(poly, region)
    return ChainStep(assumption, name, region, poly, pred.exponent, cert, spots, note)


def _restrict(region: Interval, sigma: Optional[Fraction]) -> Optional[Interval]:
    if sigma is None:
        return region
    return Interval.point(sigma) if region.contains(sigma) else None


def verdict(params: CaseParams, sigma=None) -> CaseVerdict:
    """Contradiction chain for one sigma > 1, or for all sigma > 1 when
    ``sigma`` is None."""
    params.validate()
    s = None if sigma is None else as_rational(sigma)
    if s is not None and s <= 1:
        raise ValueError("the case analysis covers sigma > 1 only")
    preds = predicted_leading(params)
    D, m = params.D, params.m
    steps: List[ChainStep] = []
    supporting: List[Tuple[str, SignCertificate]] = []

    if params.case_id in ("I", "II", "III", "IV", "V"):
        region = _restrict(_SIGMA_REGION, s)
        steps.append(_step("standing hypotheses", "G1", preds["G1"], region))
        supporting.extend(_aux_for(params.case_id, params.l))
    else:
        a = _a_form(D, m).pretty("sigma")
        if m <= 0:
            # A(1) = m <= 0 and A decreases, so A < 0 on the whole range
            regions = [("C-leading factor negative", "G1", _SIGMA_REGION)]
            root = None
        elif D <= 2 * m:
            # A(1) = m > 0 and A does not decrease
            regions = [("C-leading factor positive", "C", _SIGMA_REGION)]
            root = None
        else:
            root = Fraction(D - m, D - 2 * m)
            regions = [
                ("C-leading factor positive", "C", Interval.open(1, root)),
                ("C-leading factor zero", "G2", Interval.point(root)),
                ("C-leading factor negative", "G1", Interval.open(root, None)),
            ]
        for label, name, region in regions:
            reg = _restrict(region, s)
            if reg is None:
                continue
            note = ""
            if name == "G2":
                branch = params.c ** 3 * params.d ** 3 * m ** 3 / (root - 1) ** 2
                agree = preds["G2"].at(root) == branch
                note = ("equals" if agree else "DIFFERS FROM") + (
                    f" c^3 d^3 m^3 / (sigma - 1)^2 = {format_rational(branch)} at sigma = {format_rational(root)}"
                )
            elif name == "G1" and m <= 0:
                note = "m = k - l <= 0 gives D - m > 0 and D - 2m > 0 directly"
            steps.append(_step(f"{label}: {a}", name, preds[name], reg, note=note))
        if m > 0:
            supporting.append(_aux_ratio_above_two())
    return CaseVerdict(params, s, preds, tuple(steps), tuple(supporting))


def _aux_ratio_above_two() -> Tuple[str, SignCertificate]:
    # (2s - 1)/(s - 1) > 2  <=>  (2s - 1) - 2(s - 1) > 0 for s > 1
    poly = _lin(2, -1) - _lin(2, -2)
    return "(2*sigma - 1)/(sigma - 1) > 2", certify_sign(poly, 1, _SIGMA_REGION, strict=True)


def _aux_scaled(j: int, bound: int) -> Tuple[str, SignCertificate]:
    # j (2s - 1)/(s - 1) > bound  <=>  j (2s - 1) - bound (s - 1) > 0 for s > 1
    poly = _lin(2, -1).scale(j) - _lin(bound, -bound)
    return (f"{j}*(2*sigma - 1)/(sigma - 1) > {bound}",
            certify_sign(poly, 1, _SIGMA_REGION, strict=True))


def _aux_for(case_id: str, l: int) -> List[Tuple[str, SignCertificate]]:
    if case_id == "II":
        return [_aux_ratio_above_two()]
    if case_id == "III":
        return [_aux_scaled(l - 1, 4)]
    if case_id == "V":
        return [_aux_scaled(l - 2, 2)]
    return []


def auxiliary_inequalities(l_max: int = 12) -> List[Tuple[str, SignCertificate]]:
    """Certify the side inequalities the case arguments lean on:

    * ``(2s - 1)/(s - 1) > 2``
    * ``(l - 1)(2s - 1)/(s - 1) > 4`` for ``3 <= l <= l_max``
    * ``(l - 2)(2s - 1)/(s - 1) > 2`` for ``3 <= l <= l_max``

    each over ``s > 1``, after clearing the positive denominator.
    """
    out = [_aux_ratio_above_two()]
    out += [_aux_scaled(l - 1, 4) for l in range(3, l_max + 1)]
    out += [_aux_scaled(l - 2, 2) for l in range(3, l_max + 1)]
    return out


def sample_instance(rng, case_id: str, g_max: int = 12, bound: int = 5) -> Tuple[HKPoly, HKPoly]:
    """Random ``(p, q)`` in the given case with ``g <= g_max`` and ``h < g``.

    Leading indices are drawn uniformly within their bounds; the first
    nonzero coefficients lie in ``[1, bound]`` and the rest in
    ``[-bound, bound]``.
    """
    if case_id not in CASE_IDS:
        raise ValueError(f"unknown case {case_id!r}")
    while True:
        g = rng.randint(1, g_max)
        h = rng.randint(0, g - 1)
        k = rng.randint(1, g // 2 + 1)
        l = rng.randint(1, h // 2 + 1)
        if case_for_indices(k, l) != case_id:
            continue
        p = [0] * (k - 1) + [rng.randint(1, bound)]
        p += [rng.randint(-bound, bound) for _ in range(g // 2 + 1 - k)]
        q = [0] * (l - 1) + [rng.randint(1, bound)]
        q += [rng.randint(-bound, bound) for _ in range(h // 2 + 1 - l)]
        return HKPoly(g, p), HKPoly(h, q)


# ---------------------------------------------------------------------------
# Cross-check against brute force


@dataclass(frozen=True)
class CrossCheckEntry:
    poly: str
    exponent: int
    predicted: Fraction
    computed: Fraction
    zero_above: bool

    @property
    def match(self) -> bool:
        return self.predicted == self.computed

    def to_json(self) -> dict:
        return {
            "poly": self.poly, "exponent": self.exponent,
            "predicted": format_rational(self.predicted),
            "computed": format_rational(self.computed),
            "match": self.match, "zero_above": self.zero_above,
        }


@dataclass(frozen=True)
class CrossCheckReport:
    candidate: Candidate
    params: CaseParams
    entries: Tuple[CrossCheckEntry, ...]

    @property
    def mismatches(self) -> List[CrossCheckEntry]:
        return [e for e in self.entries if not e.match]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "candidate": self.candidate.to_json(),
            "params": self.params.to_json(),
            "entries": [e.to_json() for e in self.entries],
            "ok": self.ok,
        }


def cross_check(cand: Candidate, table: Callable = predicted_leading, strict: bool = False) -> CrossCheckReport:
    """Compare predicted coefficients with the computed polynomials at the
    predicted exponents.  Mismatches are reported, never corrected."""
    params = classify(cand.p, cand.q)
    preds = table(params)
    polys = dict(zip(POLY_NAMES, flow_polys(cand)))
    entries = []
    for name in POLY_NAMES:
        if name not in preds:
            continue
        pred = preds[name]
        poly = polys[name]
        entries.append(CrossCheckEntry(
            name, pred.exponent, pred.at(cand.sigma), poly.coefficient(pred.exponent),
            poly.degree <= pred.exponent,
        ))
    report = CrossCheckReport(cand, params, tuple(entries))
    if strict and not report.ok:
        raise CrossCheckMismatch(report)
    return report


# ---------------------------------------------------------------------------
# Desk-scale sweep


@dataclass(frozen=True)
class SweepRecord:
    candidate: Candidate
    case_id: str
    predicted_violation: str
    failed: Tuple[str, ...]
    consistent: bool
    reason: str = ""

    def to_json(self) -> dict:
        out = {
            "candidate": self.candidate.to_json(),
            "case": self.case_id,
            "predicted_violation": self.predicted_violation,
            "failed": list(self.failed),
            "consistent": self.consistent,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class SweepSummary:
    sigma: Fraction
    config: SearchConfig
    evaluated: int
    passing_I_to_III: int
    iv_failures: int
    consistent: int
    violations: int
    by_case: Dict[str, int] = field(default_factory=dict)
    records: Tuple[SweepRecord, ...] = ()

    @property
    def inconsistent(self) -> List[SweepRecord]:
        return [r for r in self.records if not r.consistent]

    def to_json(self) -> dict:
        return {
            "summary": True,
            "sigma": format_rational(self.sigma),
            "config": self.config.to_json(),
            "evaluated": self.evaluated,
            "passing_I_to_III": self.passing_I_to_III,
            "iv_failures": self.iv_failures,
            "consistent": self.consistent,
            "inconsistent": len(self.inconsistent),
            "violations": self.violations,
            "by_case": dict(sorted(self.by_case.items())),
        }


def _consistency(cand: Candidate, iv_failed: Tuple[str, ...]) -> Tuple[str, str, bool, str]:
    params = classify(cand.p, cand.q)
    v = verdict(params, cand.sigma)
    step = v.chain[0]
    name = step.violated
    poly = dict(zip(POLY_NAMES, flow_polys(cand)))[name]
    expected = step.coefficient(cand.sigma)
    problems = []
    if not step.certified:
        problems.append("chain step not certified")
    if poly.degree != step.exponent or poly.coefficient(step.exponent) != expected:
        problems.append(
            f"{name} has top term {poly.leading_coefficient}*rho^{poly.degree}, "
            f"predicted {expected}*rho^{step.exponent}"
        )
    if f"IV-{name}" not in iv_failed:
        problems.append(f"IV-{name} did not fail")
    cert = certify_sign(poly, -1, CLOSED_RAY)
    tail = cert.violations[-1].point if cert.violations else None
    top = max((r.hi for r in cert.roots), default=None)
    if tail is None or (top is not None and tail <= top):
        problems.append("no witness beyond the last root")
    return params.case_id, name, not problems, "; ".join(problems)


def _sweep_chunk(args):
    config, chunk = args
    seen = 0
    records = []
    for cand in enumerate_candidates(config, chunk):
        seen += 1
        if not passes_I_to_III(cand):
            continue
        iv = check_condition_IV(cand)
        failed = tuple(x.condition for x in iv if not x.passed)
        if not failed:
            records.append(SweepRecord(cand, "", "", (), False, "passes every condition"))
            continue
        case_id, name, ok, why = _consistency(cand, failed)
        records.append(SweepRecord(cand, case_id, name, failed, ok, why))
    return seen, records


def theorem_sweep(sigma, config: SearchConfig, workers: Optional[int] = None) -> SweepSummary:
    """Run every candidate in the box; those passing I to III must fail IV
    in the way the case analysis predicts.  A candidate passing everything
    raises :class:`TheoremViolationFound`."""
    s = as_rational(sigma)
    if s <= 1:
        raise ValueError("theorem_sweep needs sigma > 1")
    cfg = replace(config, sigma=s)
    parts = run_partitioned(cfg, _sweep_chunk, workers)
    evaluated = sum(n for n, _ in parts)
    seen_keys = set()
    records = []
    for _, recs in parts:
        for r in recs:
            key = (r.candidate.g, r.candidate.h, r.candidate.p.coeffs, r.candidate.q.coeffs)
            if key not in seen_keys:
                seen_keys.add(key)
                records.append(r)
    records.sort(key=lambda r: (r.candidate.g, r.candidate.h, r.candidate.p.coeffs, r.candidate.q.coeffs))
    violators = [r for r in records if not r.failed]
    if violators:
        cand = violators[0].candidate
        raise TheoremViolationFound(cand, check_all(cand))
    by_case: Dict[str, int] = {}
    for r in records:
        by_case[r.case_id] = by_case.get(r.case_id, 0) + 1
    return SweepSummary(
        sigma=s,
        config=cfg,
        evaluated=evaluated,
        passing_I_to_III=len(records),
        iv_failures=len(records),
        consistent=sum(r.consistent for r in records),
        violations=0,
        by_case=by_case,
        records=tuple(records),
    )

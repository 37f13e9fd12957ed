import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxprinciple import Candidate, HKPoly, RhoPoly, SearchConfig
from maxprinciple.case_analysis import (
    CASE_IDS,
    SPOT_SIGMAS,
    CaseParams,
    auxiliary_inequalities,
    case_for_indices,
    classify,
    cross_check,
    predicted_leading,
    uncorrected_leading,
    sample_instance,
    theorem_sweep,
    unified_leading,
    verdict,
)
from maxprinciple.errors import (
    CrossCheckMismatch,
    InvalidCaseParams,
    NonPositiveLeadingCoefficient,
)
from maxprinciple.exact_algebra import certify_sign, Interval
from maxprinciple.flow_terms import flow_polys
from maxprinciple.mpf_checker import CLOSED_RAY, check_condition_IV

H2_4K = HKPoly(2, [1, -4])
ONE = HKPoly(0, [1])
SIGMAS = (Fraction(3, 2), Fraction(2), Fraction(5, 2))


def params(case_id, g, h, k, l, c=1, d=1):
    return CaseParams(case_id, g, h, k, l, c, d)


def _valid_params(data, case_id=None):
    case_id = case_id or data.draw(st.sampled_from(CASE_IDS))
    p, q = sample_instance(random.Random(data.draw(st.integers(0, 10 ** 6))), case_id)
    return classify(p, q)


class TestClassify:
    def test_examples(self):
        assert classify(H2_4K, ONE) == params("I", 2, 0, 1, 1)
        P = classify(HKPoly(4, [1, -8, 16]), HKPoly(4, [0, 0, 1]))
        assert (P.case_id, P.k, P.l) == ("III", 1, 3)
        P = classify(HKPoly(4, [0, 3, 1]), HKPoly(2, [2, -1]))
        assert (P.case_id, P.c, P.d) == ("VII", 3, 2)

    def test_negative_leading(self):
        with pytest.raises(NonPositiveLeadingCoefficient):
            classify(HKPoly(2, [-1, 4]), ONE)

    @pytest.mark.parametrize("k,l,case_id", [
        (1, 1, "I"), (1, 2, "II"), (1, 3, "III"), (1, 5, "III"), (2, 2, "IV"), (2, 4, "V"),
        (3, 3, "VI"), (4, 6, "VI"), (2, 1, "VII"), (5, 1, "VIII"), (3, 2, "IX"),
    ])
    def test_bucket_table(self, k, l, case_id):
        assert case_for_indices(k, l) == case_id

    def test_invalid_params(self):
        with pytest.raises(InvalidCaseParams):
            predicted_leading(params("I", 2, 0, 2, 1))
        with pytest.raises(InvalidCaseParams):
            predicted_leading(params("VIII", 3, 0, 3, 1))  # k exceeds g // 2 + 1
        with pytest.raises(InvalidCaseParams):
            predicted_leading(params("I", 2, 2, 1, 1))
        with pytest.raises(InvalidCaseParams):
            verdict(params("I", 2, 0, 1, 1, c=-1))

    def test_case_IV_needs_h_at_least_two(self):
        assert params("IV", 3, 1, 2, 2).problems()
        assert not params("IV", 3, 2, 2, 2).problems()


class TestPredictions:
    def test_case_I(self):
        pred = predicted_leading(params("I", 2, 0, 1, 1))["G1"]
        assert pred.coefficient == RhoPoly([-8, 8]) and pred.exponent == 5

    def test_case_VII_branch(self):
        # D = 3 and sigma = 2 put the C-leading factor at zero
        P = params("VII", 5, 2, 2, 1)
        pred = predicted_leading(P)
        assert pred["C"].at(2) == 0
        assert pred["G2"].at(2) == 1 and pred["G2"].exponent == 3 * 7 - 3

    def test_case_IV(self):
        pred = predicted_leading(params("IV", 3, 2, 2, 2))["G1"]
        assert pred.coefficient == RhoPoly([-1, 1]) and pred.exponent == 8

    def test_case_II(self):
        P = params("II", 5, 2, 1, 2, 2, 3)
        pred = predicted_leading(P)["G1"]
        D = 3
        expect = [-(2 ** 3) * 3 ** 3 * (D + 1) * (D + 2) * x for x in (D + 1, -D - 2)]
        assert pred.coefficient == RhoPoly(expect) and pred.exponent == 3 * 7 - 4

    def test_case_VI_G2(self):
        P = params("VI", 9, 6, 3, 4)
        pred = predicted_leading(P)["G2"]
        j, D = 1, 3
        assert pred.coefficient == RhoPoly([-j * (D + 2 * j) * j, -j * (D + 2 * j) ** 2])

    @given(st.data())
    @settings(max_examples=200)
    def test_unified_form_equals_table(self, data):
        P = _valid_params(data)
        table, unified = predicted_leading(P), unified_leading(P)
        for name, pred in table.items():
            u = unified[name]
            assert (u.coefficient, u.exponent) == (pred.coefficient, pred.exponent)

    @given(st.data())
    def test_coefficients_have_sigma_degree_at_most_two(self, data):
        for pred in predicted_leading(_valid_params(data)).values():
            assert pred.coefficient.degree <= 2


class TestCrossCheck:
    def test_case_I_sigma_two(self):
        rep = cross_check(Candidate(H2_4K, ONE, 2))
        (entry,) = rep.entries
        assert entry.poly == "G1" and entry.predicted == entry.computed == 8

    def test_case_I_sigma_one(self):
        rep = cross_check(Candidate(H2_4K, ONE, 1))
        (entry,) = rep.entries
        assert entry.predicted == entry.computed == 0
        g1 = flow_polys(Candidate(H2_4K, ONE, 1))[1]
        assert (g1.degree, g1.leading_coefficient) == (3, -32)

    @pytest.mark.parametrize("case_id", CASE_IDS)
    def test_random_instances(self, case_id):
        rng = random.Random(case_id)
        for _ in range(20):
            p, q = sample_instance(rng, case_id)
            rep = cross_check(Candidate(p, q, rng.choice(SIGMAS)), strict=True)
            names = [e.poly for e in rep.entries]
            assert names == (["C", "G1", "G2"] if case_id in ("VI", "VII", "VIII", "IX") else ["G1"])
            assert all(e.zero_above for e in rep.entries)

    def test_strict_raises(self):
        rng = random.Random(3)
        p, q = sample_instance(rng, "VII")
        with pytest.raises(CrossCheckMismatch):
            cross_check(Candidate(p, q, 2), table=uncorrected_leading, strict=True)


class TestUncorrectedTable:
    """The uncorrected table differs from brute force in cases VII and IX;
    every other entry agrees."""

    @pytest.mark.parametrize("case_id", CASE_IDS)
    def test_which_entries_disagree(self, case_id):
        rng = random.Random(100 + CASE_IDS.index(case_id))
        bad = set()
        for _ in range(15):
            p, q = sample_instance(rng, case_id)
            rep = cross_check(Candidate(p, q, rng.choice(SIGMAS)), table=uncorrected_leading)
            bad |= {e.poly for e in rep.mismatches}
        expected = {"VII": {"G2"}, "IX": {"C", "G2"}}.get(case_id, set())
        assert bad == expected

    def test_case_VII_uncorrected_G2_wrong_sign(self):
        P = params("VII", 6, 1, 2, 1)
        wrong = uncorrected_leading(P)["G2"].at(2)
        corrected = predicted_leading(P)["G2"].at(2)
        assert wrong < 0 < corrected


class TestVerdict:
    def test_case_I(self):
        v = verdict(params("I", 2, 0, 1, 1))
        assert v.contradiction
        (step,) = v.chain
        assert step.violated == "G1" and step.region == Interval.open(1, None)
        assert step.coefficient == RhoPoly([-8, 8])

    def test_case_VIII_equality_branch(self):
        P = params("VIII", 6, 0, 3, 1)
        v = verdict(P)
        step = v.step_for(2)
        assert step.violated == "G2" and step.region == Interval.point(2)
        # c^3 d^3 (k - 1)^3 / (sigma - 1)^2 at sigma = 2
        assert step.coefficient(Fraction(2)) == 8
        assert step.exponent == 3 * (6 - 3) + 3
        assert "equals" in step.note

    def test_case_VI_equal_indices(self):
        P = params("VI", 7, 4, 3, 3)
        v = verdict(P)
        (step,) = v.chain
        assert step.violated == "G1"
        assert step.coefficient == RhoPoly([-27, 27])  # (g - h)^3 (sigma - 1)
        assert verdict(P, 2).predictions["C"].at(2) == -3

    def test_fixed_sigma_picks_one_step(self):
        P = params("VIII", 6, 0, 3, 1)
        assert [s.violated for s in verdict(P, Fraction(3, 2)).chain] == ["C"]
        assert [s.violated for s in verdict(P, 3).chain] == ["G1"]

    def test_sigma_at_most_one_rejected(self):
        with pytest.raises(ValueError):
            verdict(params("I", 2, 0, 1, 1), 1)

    @given(st.data())
    @settings(max_examples=300)
    def test_contradiction_for_all_sigma(self, data):
        v = verdict(_valid_params(data))
        assert v.contradiction
        for step in v.chain:
            assert step.coefficient.degree <= 2
            assert step.certificate.holds
            for s, val in step.spot_checks:
                assert step.region.contains(s) and val > 0

    @given(st.data(), st.sampled_from(SPOT_SIGMAS))
    @settings(max_examples=200)
    def test_chain_covers_every_sigma(self, data, s):
        v = verdict(_valid_params(data))
        step = v.step_for(s)
        assert step.coefficient(s) > 0

    def test_explain_and_json(self):
        v = verdict(params("VIII", 6, 0, 3, 1))
        text = v.explain()
        assert "Case VIII" in text and "contradiction for every sigma" in text
        data = v.to_json()
        assert data["contradiction"] is True and len(data["chain"]) == 3


class TestAuxiliaryInequalities:
    def test_all_hold(self):
        claims = auxiliary_inequalities(20)
        assert len(claims) == 1 + 2 * 18
        assert all(cert.holds for _, cert in claims)

    def test_limit_two_is_sharp(self):
        # (2s - 1)/(s - 1) tends to 2, so the claim with bound 2 + 1/100 must fail
        poly = RhoPoly([-1, 2]) - RhoPoly([-Fraction(201, 100), Fraction(201, 100)])
        assert not certify_sign(poly, 1, Interval.open(1, None), strict=True).holds


class TestCheckerConsistency:
    @pytest.mark.parametrize("case_id", CASE_IDS)
    def test_large_rho_witness(self, case_id):
        rng = random.Random(f"consistency-{case_id}")
        for _ in range(10):
            p, q = sample_instance(rng, case_id, g_max=9)
            sigma = rng.choice(SIGMAS)
            cand = Candidate(p, q, sigma)
            step = verdict(classify(p, q), sigma).chain[0]
            poly = dict(zip(("C", "G1", "G2"), flow_polys(cand)))[step.violated]
            assert (poly.degree, poly.leading_coefficient) == (step.exponent, step.coefficient(sigma))
            cert = certify_sign(poly, -1, CLOSED_RAY)
            assert not cert.holds
            tail = cert.violations[-1].point
            assert all(tail > r.hi for r in cert.roots)
            names = [v.condition for v in check_condition_IV(cand) if not v.passed]
            assert f"IV-{step.violated}" in names


class TestSweep:
    def test_sigma_one_rejected(self):
        with pytest.raises(ValueError):
            theorem_sweep(1, SearchConfig(g_max=2))

    def test_small_box(self):
        summary = theorem_sweep(Fraction(3, 2), SearchConfig(g_max=3), workers=2)
        assert summary.violations == 0
        assert summary.inconsistent == []
        assert summary.passing_I_to_III == summary.iv_failures > 0

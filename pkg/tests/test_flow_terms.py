from fractions import Fraction

import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from maxprinciple import (
    Candidate,
    HKPoly,
    RhoPoly,
    SigmaLinear,
    compute_r_terms,
    constant_poly_C,
    expand_lambda,
    gradient_poly_G1,
    gradient_poly_G2,
)
from maxprinciple.flow_terms import (
    C_nominal_degree,
    G_nominal_degree,
    flow_polys,
    symbolic_C,
    symbolic_G1,
)

import oracle
from strategies import candidates, hk_polys, positive_rationals

H2_4K = HKPoly(2, [1, -4])
ONE = HKPoly(0, [1])
K = HKPoly.monomial(0, 1)
H3_4HK = HKPoly(3, [1, -4])


def rho(*cs):
    return RhoPoly(cs)


class TestRTerms:
    def test_simple(self):
        r = compute_r_terms(H2_4K, ONE)
        assert r.r_H == HKPoly(1, [2])
        assert r.r_K == HKPoly(0, [-4])
        assert r.r_HH == HKPoly(0, [2])
        assert r.r_HK.is_zero() and r.r_KK.is_zero()

    def test_same_numerator_and_denominator(self):
        assert compute_r_terms(H2_4K, H2_4K).is_zero()

    def test_quotient_with_K(self):
        r = compute_r_terms(H3_4HK, K)
        assert r.r_H == HKPoly(4, [0, 3, -4])
        assert r.r_K == HKPoly(3, [-1])
        assert r.r_HH == HKPoly(3, [0, 6])
        assert r.r_HK == HKPoly(2, [0, -4])
        assert r.r_KK.is_zero()

    def test_degrees(self):
        r = compute_r_terms(HKPoly(6, [1, 2, 3, 4]), HKPoly(3, [1, 1]))
        assert [x.degree for x in r.as_tuple()] == [8, 7, 7, 6, 5]

    @given(hk_polys(max_degree=7), hk_polys(max_degree=7))
    @settings(max_examples=80)
    def test_match_sympy(self, p, q):
        ref = oracle.r_terms(oracle.hk_of(p), oracle.hk_of(q))
        mine = compute_r_terms(p, q)
        for name, poly in zip(("H", "K", "HH", "HK", "KK"), mine.as_tuple()):
            assert sp.expand(oracle.hk_of(poly) - ref[name]) == 0

    @given(hk_polys(max_degree=7), hk_polys(max_degree=7), positive_rationals, positive_rationals)
    def test_bilinear(self, p, q, a, b):
        r = compute_r_terms(p, q)
        rs = compute_r_terms(p.scale(a), q.scale(b))
        for x, y in zip(r.as_tuple(), rs.as_tuple()):
            assert y == x.scale(a * b)

    @given(hk_polys(max_degree=7), hk_polys(max_degree=7))
    def test_symmetric(self, p, q):
        for x in compute_r_terms(p, q).as_tuple():
            assert expand_lambda(x).is_symmetric()


class TestConstantTerm:
    def test_sigma_one_control(self):
        assert constant_poly_C(Candidate(H2_4K, ONE, 1)).is_zero()

    def test_sigma_two(self):
        c = constant_poly_C(Candidate(H2_4K, ONE, 2))
        assert c == rho(-2, 2, 2, -2)
        assert oracle.factor_str(c.coeffs) == "-2*(rho - 1)**2*(rho + 1)"

    def test_cubic_over_K(self):
        c = constant_poly_C(Candidate(H3_4HK, K, 1))
        assert c == rho(0, -1, 2, -2, 2, -1)
        assert oracle.factor_str(c.coeffs) == "-rho*(rho - 1)**2*(rho**2 + 1)"

    def test_symbolic_is_sigma_linear(self):
        c = symbolic_C(H2_4K, ONE)
        s = SigmaLinear.sigma()
        assert c == RhoPoly([2 - 2 * s, 2 * s - 2, 2 * s - 2, 2 - 2 * s])
        assert c.nominal_degree == C_nominal_degree(2, 0) == 3


class TestGradientTerms:
    def test_sigma_one_control(self):
        cand = Candidate(H2_4K, ONE, 1)
        assert gradient_poly_G1(cand) == rho(0, -32, 64, -32)
        assert gradient_poly_G2(cand) == rho(0, 0, -32, 64, -32)

    def test_sigma_two(self):
        g1 = gradient_poly_G1(Candidate(H2_4K, ONE, 2))
        assert g1 == rho(-8, -24, 80, -48, -8, 8)
        assert g1.nominal_degree == G_nominal_degree(2, 0) == 5

    def test_zero_for_equal_parts(self):
        for s in (1, 2, Fraction(7, 3)):
            cand = Candidate(H2_4K, H2_4K, s)
            assert all(x.is_zero() for x in flow_polys(cand))

    @given(candidates(max_degree=5))
    @settings(max_examples=60)
    def test_match_sympy(self, cand):
        ref = oracle.flow_coeffs(cand.p, cand.q, cand.sigma)
        for mine, theirs in zip(flow_polys(cand), ref):
            assert list(mine.coeffs) == theirs

    def test_symbolic_sigma_matches_sympy(self):
        p, q = HKPoly(5, [1, -2, 3]), HKPoly(2, [2, 1])
        exprs = oracle.flow_exprs(oracle.hk_of(p), oracle.hk_of(q))
        for mine, e in zip((symbolic_C(p, q), symbolic_G1(p, q)), exprs):
            got = sum(
                (sp.Rational(str(c.slope)) * oracle.SIGMA + sp.Rational(str(c.offset))) * oracle.RHO ** i
                for i, c in enumerate(SigmaLinear._lift(x) for x in mine.coeffs)
            )
            assert sp.expand(got - e) == 0


class TestStructure:
    @given(candidates())
    def test_palindrome(self, cand):
        c = constant_poly_C(cand)
        assert c.reversed(cand.g + cand.h + 1) == c

    @given(candidates())
    def test_reciprocity(self, cand):
        g1, g2 = gradient_poly_G1(cand), gradient_poly_G2(cand)
        assert g1.reversed(3 * (cand.g + cand.h) - 1) == g2

    @given(candidates(max_degree=6), positive_rationals, positive_rationals)
    def test_scaling(self, cand, a, b):
        c, g1, g2 = flow_polys(cand)
        cs, g1s, g2s = flow_polys(cand.scaled(a, b))
        assert cs == c.scale(a * b)
        assert g1s == g1.scale((a * b) ** 3)
        assert g2s == g2.scale((a * b) ** 3)

    @given(candidates(), st.sampled_from([Fraction(1, 3), Fraction(4), Fraction(11, 2)]))
    def test_specialization_is_affine(self, cand, s):
        # C is linear in sigma, so C(s) = C(0) + s (C(1) - C(0))
        c0 = constant_poly_C(cand.with_sigma(0))
        c1 = constant_poly_C(cand.with_sigma(1))
        assert constant_poly_C(cand.with_sigma(s)) == c0 + (c1 - c0).scale(s)

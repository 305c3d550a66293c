"""Membership, bound verifiers, lemma margins, univalence predicates."""

import math

import numpy as np
import pytest

from schwarznorm.errors import DivisionBySingular, DomainError, GammaDegenerate
from schwarznorm.functions import (
    ClassSpec,
    Mobius,
    Polynomial,
    SchurFunction,
    half_plane,
    make_extremal_fc,
    make_extremal_fc_lambda,
    make_extremal_fc_star,
    make_gallery,
    random_member,
    random_schur,
)
from schwarznorm.norms import hyperbolic_norm
from schwarznorm.theorems import (
    GammaSpec,
    gamma_of,
    growth_distortion_bounds,
    lemmaA_margin,
    manufacture_nonmember,
    membership_status,
    psi_identity_residual,
    recover_phi,
    thm21_equivalence_sweep,
    thm21_ii_margin,
    thm21_iii_margin,
    thm25_bound,
    univalence_bruteforce,
    univalence_predicates,
    verify_growth_distortion,
    verify_lemmaA,
    verify_psi,
    verify_thm23,
    verify_thm24,
    verify_thm25,
)

F2 = make_extremal_fc(2.0)


class TestMembership:
    def test_f2_is_member(self):
        verdict = membership_status(F2, 2.0, 1000)
        assert verdict.status == "empirically_consistent"
        assert verdict.margin > 0
        assert verdict.witness is None

    def test_identity_margin(self):
        for c in (0.5, 2.0):
            verdict = membership_status(make_gallery("identity"), c, 500)
            assert abs(verdict.margin - c / 2) < 1e-12

    def test_polynomial_violation(self):
        verdict = membership_status(Polynomial([0, 1, 1]), 2.0, 1000)
        assert verdict.status == "violated"
        assert verdict.witness is not None
        # the margin blows down next to the zero of f' at -1/2
        assert abs(verdict.witness - (-0.5)) < 0.15

    def test_sample_floor(self):
        with pytest.raises(ValueError):
            membership_status(F2, 2.0, 50)

    def test_requires_class_a(self):
        with pytest.raises(ValueError):
            membership_status(half_plane(), 2.0, 500)

    def test_nesting(self):
        # members of F(c1) belong to F(c2) for c2 > c1
        for seed in range(10):
            m = random_member(ClassSpec(1.0), seed, seed % 9)
            assert membership_status(m, 2.5, 400).status != "violated"


class TestRecoverPhi:
    def test_f2_recovers_constant_one(self):
        for z in (0.1, -0.7, 0.3 + 0.4j, 0.9j):
            assert abs(recover_phi(F2, 2.0, z) - 1.0) < 1e-12

    def test_identity_recovers_zero(self):
        assert recover_phi(make_gallery("identity"), 2.0, 0.5) == 0

    def test_f0_member_matches_generating_data(self):
        m = random_member(ClassSpec(2.0, True), seed=12, degree=3)
        assert abs(recover_phi(m, 2.0, 0j)) < 1e-13
        rng = np.random.default_rng(2)
        zs = 0.9 * np.sqrt(rng.uniform(size=100)) * np.exp(
            2j * np.pi * rng.uniform(size=100)
        )
        for z in zs:
            z = complex(z)
            want = z * complex(m.schur.value(z))  # phi = z s(z) for F0
            got = recover_phi(m, 2.0, z)
            assert abs(got - want) < 1e-9
            assert abs(got) <= 1.0 + 1e-12

    def test_vanishing_denominator(self):
        # z P + c = 0 at z = -c/(2+2c) for f = z + z^2
        with pytest.raises(DivisionBySingular):
            recover_phi(Polynomial([0, 1, 1]), 2.0, -1.0 / 3.0)


class TestThm21Margins:
    def test_identity_margins(self):
        for c in (1.0, 2.0):
            assert abs(thm21_ii_margin(make_gallery("identity"), c, 0j) - c / 2) < 1e-14
            for z in (0.3, 0.5j):
                want = c * (1 - abs(z))
                assert abs(thm21_iii_margin(make_gallery("identity"), c, z) - want) < 1e-14

    def test_f2_equality_cases(self):
        # the extremal f_2 = 1/(1-z) - 1 saturates both inequalities
        for r in np.arange(0.1, 0.95, 0.1):
            assert abs(thm21_ii_margin(F2, 2.0, r)) < 1e-10
            assert abs(thm21_iii_margin(F2, 2.0, r)) < 1e-10

    def test_f2_iii_explicit_value(self):
        # |(1-r^2) * 2/(1-r) - 2r| = |2 + 2r - 2r| = 2
        for r in np.arange(0.1, 0.95, 0.1):
            p = F2.preschwarzian(r)
            assert abs(abs((1 - r * r) * p - 2 * r) - 2.0) < 1e-12

    def test_random_members_nonnegative(self):
        rng = np.random.default_rng(3)
        zs = 0.97 * np.sqrt(rng.uniform(size=300)) * np.exp(
            2j * np.pi * rng.uniform(size=300)
        )
        for seed in (0, 1, 2):
            m = random_member(ClassSpec(1.5), seed, 2 + seed)
            for z in zs[:100]:
                assert thm21_ii_margin(m, 1.5, complex(z)) >= -1e-9
                assert thm21_iii_margin(m, 1.5, complex(z)) >= -1e-9


class TestGrowthDistortion:
    def test_r_zero(self):
        b = growth_distortion_bounds(1.5, 0.0)
        assert (b.distortion_low, b.distortion_high) == (1.0, 1.0)
        assert (b.growth_low, b.growth_high) == (0.0, 0.0)

    def test_c2_closed_forms(self):
        for r in np.arange(0.1, 0.95, 0.1):
            b = growth_distortion_bounds(2.0, float(r))
            assert abs(b.growth_low - math.atan(r)) < 1e-10
            assert abs(b.growth_high - math.atanh(r)) < 1e-10

    def test_growth_low_near_boundary(self):
        b = growth_distortion_bounds(2.0, 1 - 1e-9)
        assert abs(b.growth_low - math.pi / 4) < 1e-6

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            growth_distortion_bounds(2.0, 1.0)
        with pytest.raises(ValueError):
            growth_distortion_bounds(0.0, 0.5)

    def test_lambda_extremals_attain_equality(self):
        rs = np.linspace(0.05, 0.99, 25)
        for c in (1.0, 2.0, 3.0):
            upper = make_extremal_fc_lambda(c, 1.0)
            lower = make_extremal_fc_lambda(c, -1.0)
            for r in rs:
                assert abs(abs(upper.deriv(r)) - (1 - r * r) ** (-c / 2)) < 1e-8
                assert abs(abs(lower.deriv(r)) - (1 + r * r) ** (-c / 2)) < 1e-8

    def test_identity_passes_with_interior_margin(self):
        rep = verify_growth_distortion(make_gallery("identity"), 1.5, 150)
        assert rep.passed
        assert rep.worst_margin > 0

    def test_random_members_pass(self):
        for seed in (0, 5):
            m = random_member(ClassSpec(2.0, True), seed, 1 + seed % 5)
            rep = verify_growth_distortion(m, 2.0, 150)
            assert rep.passed, rep

    def test_extremal_is_boundary_case(self):
        # equality only holds on the real axis, so disk samples leave a
        # small but strictly positive margin
        rep = verify_growth_distortion(make_extremal_fc_star(2.0), 2.0, 150)
        assert rep.passed
        assert 0 <= rep.worst_margin < 1e-3


class TestNormBounds:
    def test_thm23_extremal_sharp(self):
        est = hyperbolic_norm(make_extremal_fc_star(1.5), "pre_schwarzian")
        assert abs(est.value - 1.5) < 1e-4
        rep = verify_thm23(make_extremal_fc_star(1.5), 1.5)
        assert rep.passed

    def test_thm23_identity(self):
        est = hyperbolic_norm(make_gallery("identity"), "pre_schwarzian")
        assert est.value == 0.0
        assert verify_thm23(make_gallery("identity"), 2.0).passed

    @pytest.mark.parametrize("c", [1.0, 2.0, 3.0])
    def test_thm23_random_members(self, c):
        for seed in range(6):
            m = random_member(ClassSpec(c, True), seed, seed % 9)
            assert verify_thm23(m, c).passed

    @pytest.mark.parametrize("c", [1.0, 2.0])
    def test_thm24_random_members_small_c(self, c):
        for seed in range(6):
            m = random_member(ClassSpec(c, True), seed, seed % 9)
            assert verify_thm24(m, c).passed

    def test_thm24_extremal_fails_for_large_c(self):
        # S(0) = c exceeds c(4-c)/2 once c > 2, so the verifier must
        # honestly report the stated bound as violated at c = 3
        rep = verify_thm24(make_extremal_fc_star(3.0), 3.0)
        assert not rep.passed
        assert rep.worst_margin < -1.0


class TestThm25:
    def test_gamma_of_f0_member_is_zero(self):
        g = gamma_of(random_member(ClassSpec(2.0, True), 3, 3), 2.0)
        assert g.gamma < 1e-13

    def test_bound_reduces_to_schwarzian_bound(self):
        for c in (1.0, 2.0, 3.0):
            assert abs(thm25_bound(c, GammaSpec(0.0)) - c * (4 - c) / 2) < 1e-14

    def test_f2_is_degenerate(self):
        with pytest.raises(GammaDegenerate):
            verify_thm25(F2, 2.0, 200)

    @pytest.mark.parametrize("c", [1.0, 2.0])
    def test_random_members_pass(self, c):
        for seed in range(5):
            m = random_member(ClassSpec(c), seed, 1 + seed % 8)
            rep = verify_thm25(m, c, 400)
            assert rep.passed, rep

    def test_gamma_spec_validation(self):
        with pytest.raises(ValueError):
            GammaSpec(1.0)


class TestLemmaA:
    def test_zero_schur(self):
        phi = SchurFunction.constant_map(0.0)
        for z in (0.3, 0.6j):
            want = abs(z) ** 2 / (1 - abs(z) ** 2)
            assert abs(lemmaA_margin(phi, z) - want) < 1e-14

    def test_identity_schur_equality(self):
        phi = SchurFunction.blaschke([0.0])  # phi(z) = z up to rotation
        for z in (0.2, 0.5 + 0.3j, -0.8j):
            assert abs(lemmaA_margin(phi, z)) < 1e-12

    def test_random_blaschke_with_zero_at_origin(self):
        rng = np.random.default_rng(5)
        zs = 0.97 * np.sqrt(rng.uniform(size=1000)) * np.exp(
            2j * np.pi * rng.uniform(size=1000)
        )
        for seed in (0, 1):
            base = random_schur(seed, 3)
            phi = SchurFunction.blaschke((0j,) + base.zeros, base.rotation)
            for z in zs[:300]:
                assert lemmaA_margin(phi, complex(z)) >= -1e-10

    def test_general_blaschke_fuzz(self):
        for seed in range(4):
            phi = random_schur(seed, 1 + seed % 4)
            rep = verify_lemmaA(phi, 500)
            assert rep.passed
            assert rep.worst_margin >= -1e-10

    def test_near_unimodular_rejected(self):
        with pytest.raises(ValueError):
            lemmaA_margin(SchurFunction.constant_map(1.0), 0.3)


class TestPsiIdentity:
    def test_zero_schur(self):
        assert psi_identity_residual(SchurFunction.constant_map(0.0), 0.4 + 0.2j) == 0.0

    def test_random_blaschke(self):
        rng = np.random.default_rng(6)
        zs = 0.97 * np.sqrt(rng.uniform(size=1000)) * np.exp(
            2j * np.pi * rng.uniform(size=1000)
        )
        for seed in (0, 3):
            phi = random_schur(seed, 2 + seed % 5)
            for z in zs[:300]:
                assert psi_identity_residual(phi, complex(z)) < 1e-10

    def test_psi_stays_inside_disk(self):
        phi = random_schur(9, 4)
        rng = np.random.default_rng(7)
        for z in 0.99 * np.sqrt(rng.uniform(size=200)) * np.exp(
            2j * np.pi * rng.uniform(size=200)
        ):
            z = complex(z)
            pz = complex(phi.value(z))
            psi = (z.conjugate() - pz) / (1 - z * pz)
            assert abs(psi) < 1.0

    def test_verify_psi_report(self):
        assert verify_psi(random_schur(2, 3), 400).passed


class TestUnivalence:
    def test_mobius_all_predicates(self):
        preds = univalence_predicates(Mobius(1.0, 0.1, 0.2, 1.0))
        assert preds.nehari_necessary_ok and preds.nehari_sufficient
        assert preds.becker_sufficient
        assert preds.ahlfors_weill_k == 0.0

    def test_koebe_threshold(self):
        preds = univalence_predicates(make_gallery("koebe"))
        assert preds.nehari_necessary_ok
        assert abs(preds.schwarzian_norm - 6.0) < 1e-4
        assert not preds.nehari_sufficient
        assert preds.ahlfors_weill_k is None

    def test_fc_star_2_exactly_at_nehari_threshold(self):
        preds = univalence_predicates(make_extremal_fc_star(2.0))
        assert preds.nehari_sufficient
        assert abs(preds.schwarzian_norm - 2.0) < 1e-4
        assert preds.ahlfors_weill_k is None  # strict inequality required

    def test_bruteforce_basics(self):
        assert univalence_bruteforce(make_gallery("identity"), 60)
        assert univalence_bruteforce(make_gallery("koebe"), 60)
        assert not univalence_bruteforce(Polynomial([0, 0, 1]), 60)

    def test_bruteforce_grid_cap(self):
        with pytest.raises(ValueError):
            univalence_bruteforce(make_gallery("identity"), 300)


class TestEquivalenceSweep:
    def test_small_sweep_agrees(self):
        out = thm21_equivalence_sweep(2.0, n_members=20, n_nonmembers=20, seed0=3, samples=500)
        assert out["disagreements"] == 0
        assert out["wrong_expectation"] == 0

    def test_manufactured_nonmember_is_violated(self):
        g = manufacture_nonmember(2.0, seed=4)
        verdict = membership_status(g, 2.0, 1000)
        assert verdict.status == "violated"
        assert g.is_class_a

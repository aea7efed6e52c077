import math

import numpy as np
import pytest

from divbound.coding import (
    CodeSpec,
    code_distribution,
    csiszar_bound,
    dual_kl_identity_check,
    jeffreys_bound,
    kl_identity_check,
    l1_bounds,
    redundancy_sweep,
    shannon_code,
    tightened_bound,
)
from divbound.dist import entropy_base, make_dist
from divbound.errors import DistributionError, KraftViolationError

from util import as_dist, random_simplex

LN2 = math.log(2.0)

# worked example: P = (0.6, 0.3, 0.1), d = 2, Shannon lengths (1, 2, 4);
# all values re-derived by independent direct summation before freezing
WORKED_P = make_dist(["a", "b", "c"], [0.6, 0.3, 0.1])
WORKED = {
    "lengths": (1, 2, 4),
    "kraft": 13.0 / 16.0,
    "avg_length": 1.6,
    "entropy2": 1.2954618442383218,
    "redundancy": 0.30453815576167822,
    "redundancy_nats": 0.21108976403913272,
    "kl_pq": 0.0034503992608882173,
    "kl_qp": 0.0031884177956913425,
    "actual_l1": 0.046153846153846154,
}


class TestCodeSpec:
    def test_valid(self):
        c = CodeSpec(("a", "b", "c"), (1, 2, 2), 2)
        assert c.kraft_sum == pytest.approx(1.0, abs=1e-15)

    def test_kraft_violation(self):
        with pytest.raises(KraftViolationError):
            CodeSpec(("a", "b", "c"), (1, 1, 1), 2)

    def test_nonpositive_length(self):
        with pytest.raises(DistributionError):
            CodeSpec(("a", "b"), (0, 2), 2)

    def test_bad_base(self):
        with pytest.raises(DistributionError):
            CodeSpec(("a", "b"), (1, 2), 1)

    def test_length_count_mismatch(self):
        with pytest.raises(DistributionError):
            CodeSpec(("a", "b"), (1, 2, 3), 2)


class TestCodeDistribution:
    def test_dyadic(self):
        q = code_distribution(CodeSpec(("a", "b", "c"), (1, 2, 2), 2))
        np.testing.assert_allclose(q.mass, [0.5, 0.25, 0.25])

    def test_non_dyadic(self):
        q = code_distribution(CodeSpec(("a", "b", "c"), (1, 2, 4), 2))
        np.testing.assert_allclose(q.mass, [8 / 13, 4 / 13, 1 / 13])


class TestShannonCode:
    def test_dyadic_source(self):
        p = make_dist(["a", "b", "c"], [0.5, 0.25, 0.25])
        code = shannon_code(p, 2)
        assert code.lengths == (1, 2, 2)
        # zero redundancy: the code achieves the entropy
        assert float(np.dot(p.mass, code.lengths)) == pytest.approx(
            entropy_base(p, 2), abs=1e-12
        )

    def test_worked_example_lengths(self):
        code = shannon_code(WORKED_P, 2)
        assert code.lengths == WORKED["lengths"]
        assert code.kraft_sum == pytest.approx(WORKED["kraft"], abs=1e-15)

    def test_exact_power_gets_exact_length(self):
        p = make_dist(["a", "b", "c"], [0.125, 0.125, 0.75])
        code = shannon_code(p, 2)
        assert code.lengths[0] == 3 and code.lengths[1] == 3
        # delta = l + log2 P vanishes on the dyadic symbols
        assert 3.0 + math.log2(0.125) == 0.0

    def test_zero_mass_rejected(self):
        p = make_dist(["a", "b"], [1.0, 0.0])
        with pytest.raises(DistributionError):
            shannon_code(p, 2)

    def test_ternary_base(self):
        p = make_dist(["a", "b", "c"], [1 / 3, 1 / 3, 1 / 3])
        code = shannon_code(p, 3)
        assert code.lengths == (1, 1, 1)


class TestIdentities:
    def test_dyadic_both_zero(self):
        p = make_dist(["a", "b", "c"], [0.5, 0.25, 0.25])
        code = shannon_code(p, 2)
        lhs, rhs = kl_identity_check(p, code)
        assert lhs == pytest.approx(0.0, abs=1e-12)
        assert rhs == pytest.approx(0.0, abs=1e-12)
        lhs, rhs = dual_kl_identity_check(p, code)
        assert lhs == pytest.approx(0.0, abs=1e-12)
        assert rhs == pytest.approx(0.0, abs=1e-12)

    def test_worked_example(self):
        code = shannon_code(WORKED_P, 2)
        lhs, rhs = kl_identity_check(WORKED_P, code)
        assert lhs == pytest.approx(WORKED["kl_pq"], abs=1e-12)
        assert rhs == pytest.approx(WORKED["kl_pq"], abs=1e-12)
        lhs, rhs = dual_kl_identity_check(WORKED_P, code)
        assert lhs == pytest.approx(WORKED["kl_qp"], abs=1e-12)
        assert rhs == pytest.approx(WORKED["kl_qp"], abs=1e-12)

    def test_random_instances(self):
        rng = np.random.default_rng(97)
        for _ in range(1000):
            k = int(rng.integers(2, 9))
            d = int(rng.integers(2, 5))
            p = as_dist(random_simplex(rng, 1, k)[0])
            base = shannon_code(p, d)
            # arbitrary valid codes: Shannon lengths plus random padding
            lengths = tuple(
                int(n + rng.integers(0, 3)) for n in base.lengths
            )
            code = CodeSpec(p.labels, lengths, d)
            lhs, rhs = kl_identity_check(p, code)
            assert lhs == pytest.approx(rhs, abs=1e-10)
            lhs, rhs = dual_kl_identity_check(p, code)
            assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_jeffreys_identity_and_upper_bound(self):
        rng = np.random.default_rng(101)
        for _ in range(300):
            k = int(rng.integers(2, 8))
            p = as_dist(random_simplex(rng, 1, k)[0])
            code = shannon_code(p, 2)
            kl_pq, _ = kl_identity_check(p, code)
            kl_qp, _ = dual_kl_identity_check(p, code)
            jef = 0.5 * (kl_pq + kl_qp)
            x = (
                float(np.dot(p.mass, code.lengths)) - entropy_base(p, 2)
            ) * LN2
            # for Shannon lengths delta >= 0, hence J <= Delta log d / 2
            assert jef <= 0.5 * x + 1e-12


class TestL1Bounds:
    def test_dyadic_all_zero(self):
        p = make_dist(["a", "b", "c"], [0.5, 0.25, 0.25])
        rep = l1_bounds(p, shannon_code(p, 2))
        assert rep.redundancy == pytest.approx(0.0, abs=1e-12)
        assert rep.actual_l1 == pytest.approx(0.0, abs=1e-12)
        assert rep.bound_csiszar == pytest.approx(0.0, abs=1e-6)
        assert rep.bound_tightened == pytest.approx(0.0, abs=1e-6)
        assert rep.bound_jeffreys == pytest.approx(0.0, abs=1e-6)

    def test_worked_example_report(self):
        rep = l1_bounds(WORKED_P, shannon_code(WORKED_P, 2))
        assert rep.avg_length == pytest.approx(WORKED["avg_length"], abs=1e-12)
        assert rep.entropy_d == pytest.approx(WORKED["entropy2"], abs=1e-12)
        assert rep.redundancy == pytest.approx(WORKED["redundancy"], abs=1e-12)
        assert rep.kraft_sum == pytest.approx(WORKED["kraft"], abs=1e-15)
        assert rep.kl_pq == pytest.approx(WORKED["kl_pq"], abs=1e-12)
        assert rep.kl_qp == pytest.approx(WORKED["kl_qp"], abs=1e-12)
        assert rep.jeffreys_val == pytest.approx(
            0.5 * (WORKED["kl_pq"] + WORKED["kl_qp"]), abs=1e-12
        )
        assert rep.actual_l1 == pytest.approx(WORKED["actual_l1"], abs=1e-12)
        assert rep.bound_csiszar == pytest.approx(
            math.sqrt(2.0 * WORKED["redundancy_nats"]), abs=1e-12
        )
        assert rep.delta_nonneg
        assert rep.bound_jeffreys is not None
        assert rep.actual_l1 <= rep.bound_jeffreys <= rep.bound_csiszar + 1e-9
        assert rep.bound_tightened <= rep.bound_csiszar + 1e-9

    def test_units_conversion_pinned(self):
        # redundancy is stored in base-d units; bounds consume it in nats
        rep = l1_bounds(WORKED_P, shannon_code(WORKED_P, 2))
        assert rep.redundancy * LN2 == pytest.approx(
            WORKED["redundancy_nats"], abs=1e-12
        )

    def test_negative_delta_drops_jeffreys_bound(self):
        p = make_dist(["a", "b", "c"], [0.3, 0.3, 0.4])
        # length 1 for a symbol of mass 0.3 makes delta = 1 + log2(0.3) < 0
        code = CodeSpec(p.labels, (1, 2, 2), 2)
        rep = l1_bounds(p, code)
        assert not rep.delta_nonneg
        assert rep.bound_jeffreys is None
        assert rep.actual_l1 <= rep.bound_tightened + 1e-9

    def test_shannon_codes_always_carry_jeffreys_bound(self):
        rng = np.random.default_rng(103)
        for _ in range(200):
            k = int(rng.integers(2, 8))
            d = int(rng.integers(2, 4))
            p = as_dist(random_simplex(rng, 1, k)[0])
            rep = l1_bounds(p, shannon_code(p, d))
            assert rep.delta_nonneg
            assert rep.bound_jeffreys is not None
            assert rep.actual_l1 <= rep.bound_jeffreys + 1e-9
            assert rep.bound_jeffreys <= rep.bound_csiszar + 1e-9
            assert rep.bound_tightened <= rep.bound_csiszar + 1e-9


class TestSweep:
    def test_csiszar_caps_at_two(self):
        assert csiszar_bound(10.0) == 2.0
        assert csiszar_bound(0.02) == pytest.approx(0.2, abs=1e-15)

    def test_negative_input_rejected(self):
        for f in (csiszar_bound, tightened_bound, jeffreys_bound):
            with pytest.raises(ValueError):
                f(-1e-9)

    def test_orderings_across_grid(self):
        xs = np.geomspace(1e-6, 1.0, 20)
        cs, ti, je = redundancy_sweep(xs)
        assert np.all(ti <= cs + 1e-9)
        assert np.all(je <= cs + 1e-9)

    def test_sqrt2_factor_at_small_redundancy(self):
        x = 1e-6
        ratio = jeffreys_bound(x) / csiszar_bound(x)
        assert ratio == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-3)

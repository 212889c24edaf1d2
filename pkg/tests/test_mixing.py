import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eivtls.errors import (
    InsufficientData,
    InvalidParams,
    MissingMetadata,
    SupportTooLarge,
)
from eivtls.mixing import (
    FiniteJoint,
    alpha_between,
    check_assumptions,
    empirical_alpha_lag,
    find_phi_asymmetry_witness,
    phi_between,
)
from eivtls.presets import default_design, default_errors
from eivtls.processes import ErrorMatrixSpec, ar1, generate_sequence, iid_gaussian, ma


def naive_alpha(pmf):
    """Literal double enumeration over all event pairs."""
    k, l = pmf.shape
    best = 0.0
    for am in itertools.product([0, 1], repeat=k):
        for bm in itertools.product([0, 1], repeat=l):
            rows = [i for i in range(k) if am[i]]
            cols = [j for j in range(l) if bm[j]]
            pab = pmf[np.ix_(rows, cols)].sum() if rows and cols else 0.0
            pa = pmf[rows].sum() if rows else 0.0
            pb = pmf[:, cols].sum() if cols else 0.0
            best = max(best, abs(pab - pa * pb))
    return best


def naive_phi(pmf):
    k, l = pmf.shape
    best = 0.0
    for am in itertools.product([0, 1], repeat=k):
        rows = [i for i in range(k) if am[i]]
        pa = pmf[rows].sum() if rows else 0.0
        if pa <= 0:
            continue
        for bm in itertools.product([0, 1], repeat=l):
            cols = [j for j in range(l) if bm[j]]
            pab = pmf[np.ix_(rows, cols)].sum() if rows and cols else 0.0
            pb = pmf[:, cols].sum() if cols else 0.0
            best = max(best, abs(pab / pa - pb))
    return best


def random_joint(seed, k=3, l=3):
    rng = np.random.default_rng(seed)
    pmf = rng.random((k, l))
    return FiniteJoint(pmf / pmf.sum())


class TestFiniteJoint:
    def test_mass_must_be_one(self):
        with pytest.raises(InvalidParams):
            FiniteJoint(np.full((2, 2), 0.3))

    def test_negative_rejected(self):
        with pytest.raises(InvalidParams):
            FiniteJoint(np.array([[1.2, -0.2], [0.0, 0.0]]))

    def test_support_cap(self):
        pmf = np.full((13, 2), 1.0 / 26)
        with pytest.raises(SupportTooLarge):
            alpha_between(FiniteJoint(pmf))


class TestAlphaBetween:
    def test_independent_product(self):
        pu = np.array([0.2, 0.8])
        pv = np.array([0.5, 0.3, 0.2])
        assert alpha_between(FiniteJoint(np.outer(pu, pv))) == pytest.approx(0.0, abs=1e-15)

    def test_perfectly_dependent_fair_bernoulli(self):
        assert alpha_between(FiniteJoint(np.diag([0.5, 0.5]))) == pytest.approx(0.25)

    def test_dependent_bernoulli_p(self):
        p = 0.3
        assert alpha_between(FiniteJoint(np.diag([1 - p, p]))) == pytest.approx(p * (1 - p))

    def test_matches_naive_enumeration(self):
        for seed in range(25):
            j = random_joint(seed)
            assert alpha_between(j) == pytest.approx(naive_alpha(j.pmf), abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 100_000))
    def test_bound_and_transpose_symmetry(self, seed):
        j = random_joint(seed, k=4, l=3)
        a = alpha_between(j)
        assert 0.0 <= a <= 0.25 + 1e-12
        assert a == pytest.approx(alpha_between(j.transposed()), abs=1e-12)


class TestPhiBetween:
    def test_independent(self):
        pu = np.array([0.4, 0.6])
        pv = np.array([0.1, 0.9])
        assert phi_between(FiniteJoint(np.outer(pu, pv))) == pytest.approx(0.0, abs=1e-15)

    def test_perfectly_dependent_fair_bernoulli(self):
        assert phi_between(FiniteJoint(np.diag([0.5, 0.5]))) == pytest.approx(0.5)

    def test_matches_naive_enumeration(self):
        for seed in range(25):
            j = random_joint(seed)
            assert phi_between(j) == pytest.approx(naive_phi(j.pmf), abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 100_000))
    def test_alpha_dominated_by_phi(self, seed):
        j = random_joint(seed, k=3, l=4)
        assert alpha_between(j) <= phi_between(j) + 1e-12
        assert phi_between(j) <= 1.0 + 1e-12

    def test_asymmetry_witness_exists(self):
        j = find_phi_asymmetry_witness()
        fwd, rev = phi_between(j), phi_between(j.transposed())
        assert abs(fwd - rev) > 0.05
        # confirm with the literal enumeration in both orientations
        assert fwd == pytest.approx(naive_phi(j.pmf), abs=1e-12)
        assert rev == pytest.approx(naive_phi(j.pmf.T), abs=1e-12)


class TestEmpiricalAlphaLag:
    N = 100_000

    def test_iid_near_zero(self):
        x = generate_sequence(iid_gaussian(), self.N, 31)
        for lag in (1, 3):
            assert empirical_alpha_lag(x, lag, bins=4) <= 0.02

    def test_ma1_dead_beyond_range(self):
        x = generate_sequence(ma((1.0, 1.0)), self.N, 32)
        assert empirical_alpha_lag(x, 2, bins=4) <= 0.02

    def test_ma1_alive_at_lag_one(self):
        x = generate_sequence(ma((1.0, 1.0)), self.N, 33)
        assert empirical_alpha_lag(x, 1, bins=4) >= 0.05

    def test_insufficient_data(self):
        with pytest.raises(InsufficientData):
            empirical_alpha_lag(np.zeros(50), 1, bins=2)

    def test_bins_bounds(self):
        with pytest.raises(InvalidParams):
            empirical_alpha_lag(np.zeros(500), 1, bins=1)
        with pytest.raises(InvalidParams):
            empirical_alpha_lag(np.zeros(500), 1, bins=9)


class TestCheckAssumptions:
    def test_an_alpha_pass_fixture(self):
        errors = ErrorMatrixSpec((ar1(0.5, delta=3.0, omega=1.0),) * 2, sigma2=1.0)
        report = check_assumptions("AN-alpha", default_design(1), errors)
        assert report.passed
        names = [c.name for c in report.checks]
        assert names.count("rate-vs-moment-order") == 1

    def test_an_alpha_fail_on_rate_vs_moment(self):
        errors = ErrorMatrixSpec((ar1(0.5, delta=1.0, omega=1.0),) * 2, sigma2=1.0)
        report = check_assumptions("AN-alpha", default_design(1), errors)
        assert not report.passed
        failing = {c.name for c in report.checks if not c.passed}
        assert failing == {"rate-vs-moment-order"}

    def test_an_phi_pass_for_finite_range(self):
        report = check_assumptions("AN-phi", default_design(2), default_errors("phi", 2))
        assert report.passed
        by_name = {c.name: c for c in report.checks}
        assert by_name["sqrt-phi-summable"].passed

    def test_an_phi_fails_for_alpha_only_columns(self):
        report = check_assumptions("AN-phi", default_design(1), default_errors("alpha", 1))
        assert not report.passed

    def test_con_variants_pass_on_defaults(self):
        assert check_assumptions("CON-alpha", default_design(1), default_errors("alpha", 1)).passed
        assert check_assumptions("CON-phi", default_design(1), default_errors("phi", 1)).passed

    def test_missing_rate_metadata(self):
        errors = ErrorMatrixSpec((ar1(0.5),) * 2, sigma2=1.0)
        with pytest.raises(MissingMetadata):
            check_assumptions("AN-alpha", default_design(1), errors)

    def test_unknown_theorem(self):
        with pytest.raises(InvalidParams):
            check_assumptions("AN-rho", default_design(1), default_errors("alpha", 1))

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from kemeny_stats import estimators, inference
from kemeny_stats.errors import DegenerateInputError, DomainError, PerfectCorrelationError
from kemeny_stats.inference import EQUATION_LITERAL, EXAMPLE_CONSISTENT, CorrectionPolicy


@pytest.mark.parametrize(
    "n, expected",
    [
        (2, math.sqrt(7 / 11)),
        (20, math.sqrt(7 / 11)),
        (75, math.sqrt(7 / 11)),
        (76, (7 / 11) ** 0.25),
        (749, (7 / 11) ** 0.25),
        (750, (7 / 11) ** 0.125),
        (10_000, (7 / 11) ** 0.125),
    ],
)
def test_continuity_correction_bands(n, expected):
    assert inference.continuity_correction(n) == expected


def test_population_variance_closed_form():
    assert inference.population_distance_variance_exact(2) == Fraction(1, 2)
    assert inference.population_distance_variance_exact(20) == Fraction(19**2 * 24 * 39, 360)
    assert inference.population_distance_variance(20) == pytest.approx(938.6)


def test_sleep_example_consistent(sleep):
    res = inference.tau_wald_test(*sleep)
    assert res.statistic == pytest.approx(1.864459, abs=1e-5)
    assert res.p_value == pytest.approx(0.06225727, abs=1e-6)
    assert res.distribution == "normal"
    assert res.extras["distance"] == 141
    assert res.correction_c == pytest.approx(math.sqrt(7 / 11))


def test_sleep_equation_literal(sleep):
    res = inference.tau_wald_test(*sleep, policy=EQUATION_LITERAL)
    assert res.statistic == pytest.approx(-2.75497, abs=1e-5)
    assert res.df == 18
    assert res.distribution == "student_t"
    # normalising by the marginal Kemeny sds turns the pooled term into tau-b
    assert res.extras["s_p_sq"] == pytest.approx(estimators.kendall_tau_b(*sleep).value, abs=1e-12)
    assert res.p_value == pytest.approx(2 * stats.t.sf(abs(res.statistic), 18), abs=1e-12)


def test_equation_literal_with_continuity(sleep):
    plain = inference.tau_wald_test(*sleep, policy=EQUATION_LITERAL)
    corrected = inference.tau_wald_test(*sleep, policy=CorrectionPolicy("equation_literal", True))
    assert corrected.statistic == pytest.approx(plain.statistic / math.sqrt(7 / 11))


def test_sleep_rho_and_pearson(sleep):
    rho = inference.rho_t_test(*sleep)
    assert rho.statistic == pytest.approx(1.99406, abs=1e-4)
    assert rho.p_value == pytest.approx(0.06152, abs=5e-4)
    assert rho.df == 18
    r = inference.pearson_t_test(*sleep)
    assert r.statistic == pytest.approx(1.8608, abs=1e-3)
    assert r.p_value == pytest.approx(0.07919, abs=5e-4)
    ref = stats.pearsonr(*sleep)
    assert r.p_value == pytest.approx(ref.pvalue, abs=1e-10)


def test_one_sample_tau_defaults_to_identity(rng):
    x = rng.integers(1, 11, size=10).astype(float)
    if inference.kernel.cross_concentration(x, np.arange(1, 11)) <= 0:
        x = np.sort(x)
    a = inference.one_sample_tau_test(x)
    b = inference.tau_wald_test(x, np.arange(1.0, 11.0))
    assert a.statistic == b.statistic
    assert a.method == "one_sample_tau"


def test_one_sample_equation_literal_df():
    x = np.array([1, 2, 2, 3, 5, 4, 6, 7, 9, 8], dtype=float)
    res = inference.one_sample_tau_test(x, policy=EQUATION_LITERAL)
    assert res.df == 9
    assert res.extras["s_p_sq"] == pytest.approx(
        inference.kernel.cross_concentration(x, np.arange(1, 11)) / (2 * inference.kernel.kemeny_variance(x)))


def test_one_sample_rho_scaling():
    x = np.array([2, 1, 3, 5, 4, 6, 8, 7, 10, 9], dtype=float)
    res = inference.one_sample_rho_test(x)
    r = estimators.spearman_rho(x, np.arange(1, 11)).value
    assert res.statistic == pytest.approx(r * math.sqrt(8 / (1 - r * r)))
    assert res.df == 9
    assert res.p_value == pytest.approx(2 * stats.t.sf(res.statistic, 9), abs=1e-12)


def test_nonpositive_concentration_raises():
    x = np.array([1.0, 2.0, 3.0, 4.0])
    with pytest.raises(DegenerateInputError):
        inference.tau_wald_test(x, -x)
    # the rho test remains available for negative association
    with pytest.raises(PerfectCorrelationError):
        inference.rho_t_test(x, -x)
    res = inference.rho_t_test(x, np.array([4.0, 3.0, 1.0, 2.0]))
    assert res.estimate < 0


@pytest.mark.parametrize("test", [inference.tau_wald_test, inference.rho_t_test, inference.pearson_t_test])
def test_constant_input_is_degenerate(test):
    with pytest.raises(DegenerateInputError):
        test([1.0, 2.0, 3.0], [5.0, 5.0, 5.0])


def test_perfect_correlation_raises():
    with pytest.raises(PerfectCorrelationError):
        inference.pearson_t_test([1.0, 2.0, 3.0], [2.0, 4.0, 6.0])


def test_correlation_test_requires_three():
    with pytest.raises(DomainError):
        inference.rho_t_test([1.0, 2.0], [2.0, 1.0])


def test_unknown_variant():
    with pytest.raises(DomainError):
        CorrectionPolicy("bogus")


def test_result_serialisation(sleep):
    d = inference.tau_wald_test(*sleep).as_dict()
    for key in ("method", "estimate", "statistic", "df", "p_value", "n", "correction_c", "variant"):
        assert key in d
    assert d["variant"] == "example_consistent"
    assert EXAMPLE_CONSISTENT.apply_continuity and not EQUATION_LITERAL.apply_continuity

from fractions import Fraction

import numpy as np
import pytest

from kemeny_stats import kernel, oracle
from kemeny_stats.errors import CostGuardError, DomainError


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cardinality(n):
    pop = oracle.enumerate_population(n)
    assert len(pop) == n**n - n
    assert pop.as_array().shape == (n**n - n, n)


def test_iteration_matches_chunks():
    pop = oracle.enumerate_population(4)
    np.testing.assert_array_equal(np.array(list(pop)), pop.as_array())
    small_chunks = np.concatenate(list(pop.chunks(size=17)))
    np.testing.assert_array_equal(small_chunks, pop.as_array())


def test_members_are_non_constant():
    members = oracle.enumerate_population(3).as_array()
    assert (members.min(axis=1) != members.max(axis=1)).all()


def test_cost_guard():
    with pytest.raises(CostGuardError):
        oracle.enumerate_population(8)
    assert len(oracle.enumerate_population(8, allow_large=True)) == 8**8 - 8


def test_n_too_small():
    with pytest.raises(DomainError):
        oracle.enumerate_population(1)


def test_n2_distribution():
    dist = oracle.exact_distance_distribution(2)
    assert dist.cardinality == 2
    assert dist.mass == {0: Fraction(1, 2), 2: Fraction(1, 2)}
    assert dist.as_dict()["mass"] == {"0": 0.5, "2": 0.5}


def test_n3_distribution():
    dist = oracle.exact_distance_distribution(3)
    assert dist.mass == {
        0: Fraction(1, 24), 1: Fraction(1, 4), 2: Fraction(1, 12), 3: Fraction(1, 4),
        4: Fraction(1, 12), 5: Fraction(1, 4), 6: Fraction(1, 24),
    }


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_mean_and_symmetry(n):
    dist = oracle.exact_distance_distribution(n)
    top = n * n - n
    assert dist.mean() == Fraction(top, 2)
    assert sum(dist.mass.values()) == 1
    for d, p in dist.mass.items():
        assert dist.mass[top - d] == p


def test_distribution_matches_kernel_brute_force():
    members = oracle.enumerate_population(4).as_array()
    ref = np.arange(1, 5)
    counts = {}
    for row in members:
        d = kernel.kemeny_distance(row, ref)
        counts[d] = counts.get(d, 0) + 1
    assert oracle.exact_distance_distribution(4).counts == counts


def test_custom_reference():
    dist = oracle.exact_distance_distribution(3, reference=[3, 1, 2])
    # a tie-free reference is a relabelling of the identity
    assert dist.mass == oracle.exact_distance_distribution(3).mass
    with pytest.raises(DomainError):
        oracle.exact_distance_distribution(3, reference=[1, 2])


@pytest.mark.parametrize(
    "n, oracle_var, formula",
    [
        (2, Fraction(1), Fraction(1, 2)),
        (3, Fraction(35, 12), Fraction(70, 27)),
        (4, Fraction(64, 9), Fraction(7)),
        (5, Fraction(375, 26), Fraction(72, 5)),
    ],
)
def test_variance_audit(n, oracle_var, formula):
    audit = oracle.verify_variance_formula(n)
    assert audit.oracle_variance == oracle_var
    assert audit.formula_exact == formula
    assert audit.ratio == pytest.approx(float(oracle_var / formula))


def test_metric_axioms_n3():
    rep = oracle.verify_metric_axioms(3)
    assert rep.members == 24
    assert rep.exhaustive_triples and rep.triangle_checked == 24**3
    assert rep.symmetry_violations == rep.triangle_violations == rep.range_violations == 0
    assert rep.kernel_mismatches == 0 and rep.nonpositive_variance == 0
    # only the 6 tie-free members are at distance zero from themselves
    assert rep.identity_violations == 24 - 6
    assert rep.self_distance_is_tie_count
    assert not rep.ok


def test_metric_axioms_sampled_path():
    rep = oracle.verify_metric_axioms(6, sampled_triples=20_000, seed=3, kernel_checks=200)
    assert rep.symmetry_violations == rep.triangle_violations == rep.range_violations == 0
    assert rep.kernel_mismatches == 0
    assert rep.identity_violations == 6**6 - 6 - 720
    assert rep.notes

import pytest

from nilbloch.algebra import Algebra
from nilbloch.parser import polynomial_terms
from nilbloch.singularities import (hypersurface_h_dim, milnor_number,
                                    singularity_report, tyurina_number)

CURVE = {(4, 0): 1, (2, 3): 1, (0, 5): 1}
REIFFEN = {(4, 0): 1, (1, 4): 1}


def test_degenerate_plane_curve():
    mu, n_used, stab = milnor_number(CURVE)
    assert (mu, n_used, stab) == (12, 7, 6)
    tau, _ = tyurina_number(CURVE)
    assert tau == 11
    rep = singularity_report(CURVE)
    assert (rep.mu, rep.tau, rep.h_dim) == (12, 11, 1)
    assert rep.to_json()["gap"] == 1
    assert polynomial_terms(rep.f) == CURVE


def test_reiffen_curve():
    assert milnor_number(REIFFEN)[0] == 13
    assert tyurina_number(REIFFEN)[0] == 13
    assert singularity_report(REIFFEN).h_dim == 0


def test_quasi_homogeneous_gap_zero():
    rep = singularity_report({(3, 0): 1, (0, 3): 1})
    assert (rep.mu, rep.tau, rep.h_dim) == (4, 4, 0)
    rep = singularity_report({(2, 0): 1, (0, 2): 1})
    assert (rep.mu, rep.tau, rep.h_dim) == (1, 1, 0)


def test_one_variable_powers():
    for k in range(1, 6):
        mu, _, _ = milnor_number({(k + 1,): 1})
        assert mu == k


def test_accepts_algebra_elements():
    A = Algebra(2, 6)
    t1, t2 = A.nil(0), A.nil(1)
    mu, _, _ = milnor_number(t1 ** 3 + t2 ** 3)
    assert mu == 4


def test_stabilized_value_insensitive_to_bound():
    assert milnor_number(CURVE, n_max=24)[0] == milnor_number(CURVE, n_max=12)[0]


def test_h_dim_stable_past_certified_truncation():
    assert hypersurface_h_dim(CURVE, 7) == hypersurface_h_dim(CURVE, 8) == 1


def test_mu_dominates_tau():
    for f in [CURVE, REIFFEN, {(3, 0): 1, (0, 4): 1}, {(5,): 1}]:
        assert milnor_number(f)[0] >= tyurina_number(f)[0]


def test_rejects_non_critical_origin():
    with pytest.raises(ValueError, match="origin not critical"):
        milnor_number({(1, 0): 1, (0, 2): 1})
    with pytest.raises(ValueError, match="origin not critical"):
        milnor_number({(0, 0): 1, (2, 0): 1})
    with pytest.raises(ValueError, match="origin not critical"):
        milnor_number({})


def test_rejects_non_isolated():
    with pytest.raises(ValueError, match="isolated singularity not detected"):
        milnor_number({(2, 2): 1}, n_max=8)


def test_rejects_parameters():
    A = Algebra(1, 4, params=[("a", False)])
    with pytest.raises(ValueError, match="parameters"):
        milnor_number(A.var("a") * A.nil(0) ** 2)

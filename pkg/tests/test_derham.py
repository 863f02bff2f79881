from fractions import Fraction

import pytest

from nilbloch.algebra import Algebra
from nilbloch.forms import Form, d, d_elem, form_str, zero_form
from nilbloch.derham import (EXPLICIT, FULL, POWER, check_certificate,
                             cohomology, is_exact, quotient_class, relative,
                             relative_basis, sigma_report,
                             verify_forms_sequence)

CURVE = {(4, 0): 1, (2, 3): 1, (0, 5): 1}
CURVE_JAC = [{(3, 0): 4, (1, 3): 2}, {(2, 2): 3, (0, 4): 5}]


def test_relative_dims_small():
    A = Algebra(2, 3)
    pres = relative(A, FULL)
    assert pres.dim(0) == 5          # t1, t2, t1^2, t1 t2, t2^2
    assert pres.dim(1) == 8
    assert pres.dim(2) == 3


def test_canonical_class_rep():
    A = Algebra(2, 3)
    t1, t2 = A.nil(0), A.nil(1)
    w = Form(A, 1, {(((), (2, 0)), (1,)): Fraction(1)})   # t1^2 dt2
    cl = quotient_class(w, FULL)
    assert cl.terms
    assert form_str(cl) == "-2 * t1*t2 * dt1"


def test_quotient_class_requires_relative_form():
    A = Algebra(2, 3)
    w = Form(A, 0, {(((), (0, 0)), ()): Fraction(1)})     # the constant 1
    with pytest.raises(ValueError, match="not relative"):
        quotient_class(w, FULL)


def test_vanishing_small_truncations():
    for m, N in [(1, 2), (1, 4), (2, 3), (3, 2)]:
        rep = cohomology(Algebra(m, N), FULL)
        assert rep.all_zero(), (m, N)


def test_cohomology_detects_gap_quotient():
    A = Algebra(2, 7, ideal=[CURVE])
    rep = cohomology(A, FULL)
    by_deg = {r["degree"]: r["dim_h"] for r in rep.rows}
    assert by_deg[1] == 1
    assert by_deg[0] == 0
    assert by_deg[2] == 0


def test_exactness_certificate_roundtrip():
    A = Algebra(1, 4)
    t = A.nil(0)
    w = d_elem(t ** 2 + t ** 3)
    cert = is_exact(w, FULL)
    assert cert.exact
    assert d(cert.primitive) == w
    assert check_certificate(cert, w, FULL)


def test_non_exact_certificate_roundtrip():
    A = Algebra(2, 7, ideal=[CURVE])
    rep = None
    for v in relative(A, FULL).rel_vectors(1):
        cl = quotient_class(Form(A, 1, v), FULL)
        if cl.terms:
            rep = cl
            break
    assert rep is not None
    cert = is_exact(rep, FULL)
    assert not cert.exact
    assert cert.witness is not None
    assert check_certificate(cert, rep, FULL)


def test_cutoff_drops_high_degrees():
    A = Algebra(1, 5)
    t = A.nil(0)
    w = d_elem(t ** 2) + d_elem(t ** 4)
    cert = is_exact(w, FULL, cutoff=2)
    assert cert.exact
    assert cert.primitive.internal_degrees() == [2]
    assert check_certificate(cert, w, FULL)


def test_cutoff_needs_graded_mode():
    A = Algebra(2, 5, ideal=[{(3, 0): 1, (0, 3): 1}])
    w = d_elem(A.nil(0) ** 2)
    with pytest.raises(ValueError, match="cutoff requires graded"):
        is_exact(w, FULL, cutoff=2)


def test_power_relative_subspace():
    A = Algebra(1, 5)
    pres = relative(A, POWER(3))
    assert pres.dim(0) == 2           # t^3, t^4
    assert pres.dim(1) == 2           # t^2 dt, t^3 dt
    w = d_elem(A.nil(0) ** 3)
    assert pres.is_relative(w)
    assert not pres.is_relative(d_elem(A.nil(0)))


def test_power_spec_validation():
    with pytest.raises(ValueError, match="invalid relative spec"):
        POWER(0)
    A = Algebra(2, 4)
    with pytest.raises(ValueError, match="invalid relative spec"):
        relative(A, POWER(2))
    B = Algebra(1, 3)
    with pytest.raises(ValueError, match="invalid relative spec"):
        relative(B, POWER(5))


def test_explicit_relative_membership():
    from nilbloch.forms import form_of_element
    A = Algebra(2, 6)
    pres = relative(A, EXPLICIT(CURVE_JAC))
    t1, t2 = A.nil(0), A.nil(1)
    g = 4 * t1 ** 3 + 2 * t1 * t2 ** 3
    assert pres.is_relative(form_of_element(g * t2))
    assert not pres.is_relative(form_of_element(t1))


def test_relative_basis_forms_are_relative():
    A = Algebra(1, 5)
    for rel in (FULL, POWER(2)):
        pres = relative(A, rel)
        for n in (0, 1):
            for w in relative_basis(A, rel, n):
                assert pres.is_relative(w)


def test_power_sequence_dimension_additivity():
    for N in (3, 4, 5):
        A = Algebra(1, N)
        rep = verify_forms_sequence(A, POWER(N - 1), FULL, degree=0)
        assert rep.passed
        assert rep.dim_inner_classes == 1
        assert rep.dim_outer_classes == N - 1
        assert rep.dim_quotient_classes == N - 2
        assert rep.correction_dim == 0
        for n in (1, 2):
            rep = verify_forms_sequence(A, POWER(N - 1), FULL, degree=n)
            assert rep.passed


def test_jacobian_sequence_with_correction():
    A = Algebra(2, 6)
    rep = verify_forms_sequence(A, EXPLICIT(CURVE_JAC), FULL, degree=1)
    assert rep.passed
    assert rep.dim_inner_classes == 11
    assert rep.dim_outer_classes == 15
    assert rep.dim_quotient_classes == 5
    assert rep.correction_dim == 1
    assert rep.alpha_injective
    # additivity: A = correction + B - C
    assert rep.dim_inner_classes == (rep.correction_dim
                                     + rep.dim_outer_classes
                                     - rep.dim_quotient_classes)


def test_sequence_rejects_parametric_mode():
    A = Algebra(1, 3, params=[("a", False)])
    with pytest.raises(ValueError, match="parameter-free"):
        verify_forms_sequence(A, POWER(2), FULL, degree=0)


def test_sigma_bijective_and_identity_case():
    for N in (2, 3, 4, 5):
        rep = sigma_report(N)
        assert rep.passed, N
    rows = sigma_report(3).rows
    assert all(r["bijective"] for r in rows)


def test_sigma_image_example():
    from nilbloch.algebra import RingMap
    from nilbloch.forms import push_form
    A2 = Algebra(1, 2)
    A3 = Algebra(1, 3)
    sigma = RingMap(A2, A3, {"t": A3.nil() ** 2})
    w = d_elem(A2.nil())
    assert form_str(push_form(sigma, w)) == "2 * t * dt"


def test_parametric_cohomology_blocks():
    A = Algebra(1, 3, params=[("a", False)])
    rep = cohomology(A, FULL, param_bound=2)
    assert rep.rows
    assert all(r["dim_h"] == 0 for r in rep.rows)
    assert {tuple(r["pihat"]) for r in rep.rows} == {(0,), (1,), (2,)}

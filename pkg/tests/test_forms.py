from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilbloch.algebra import Algebra, RingMap
from nilbloch.forms import (Form, d, d_elem, dlog, euler_homotopy, form_block,
                            form_of_element, form_str, graded_component,
                            push_form, wedge, zero_form, block_key)

A = Algebra(2, 4)
B = Algebra(1, 4, params=[("a", False), ("b", True)])

coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def elem_strategy(alg, monos=None):
    if monos is None:
        monos = [((0,) * alg.n_params, e) for e in alg.nil_basis]
    return st.dictionaries(st.sampled_from(monos), coeffs, max_size=3).map(
        lambda t: alg.element(t))


elems = elem_strategy(A)
b_monos = [((i, j), (k,)) for i in range(2) for j in range(-1, 2) for k in range(4)]
b_elems = elem_strategy(B, b_monos)


def form_strategy(alg, n):
    from nilbloch.derham import relative, FULL
    vecs = relative(alg, FULL).rel_vectors(n)
    coords = [next(iter(v)) for v in vecs]
    return st.dictionaries(st.sampled_from(coords), coeffs, max_size=3).map(
        lambda t: Form(alg, n, t))


forms0 = form_strategy(A, 0)
forms1 = form_strategy(A, 1)


@given(f=elems)
def test_d_squared_is_zero(f):
    assert d(d(d_elem(f))) == zero_form(A, 3)
    assert d(d_elem(f)) == zero_form(A, 2)


@given(f=b_elems)
def test_d_squared_is_zero_parametric(f):
    assert d(d(d_elem(f))) == zero_form(B, 3)


@given(f=elems, g=elems)
def test_leibniz(f, g):
    assert d_elem(f * g) == f * d_elem(g) + g * d_elem(f)


@given(f=elems, w=forms1)
def test_d_is_a_derivation_on_forms(f, w):
    lhs = d(f * w)
    rhs = wedge(d_elem(f), w) + f * d(w)
    assert lhs == rhs


@given(w=forms1, v=forms1)
def test_wedge_anticommutes_in_degree_one(w, v):
    assert wedge(w, v) == -wedge(v, w)
    assert wedge(w, w) == zero_form(A, 2)


@given(x=elems, y=elems)
def test_dlog_of_product(x, y):
    u = A.one() + x.nil_part()
    v = A.one() + y.nil_part()
    assert dlog(u * v) == dlog(u) + dlog(v)


@given(x=b_elems)
def test_dlog_matches_d_of_log(x):
    u = B.one() + x.nil_part()
    assert dlog(u) == d_elem(B.log1p(x.nil_part()))


def test_dlog_of_invertible_parameter():
    b = B.var("b")
    w = dlog(b)
    assert form_str(w) == "1 * b^-1 * db"


def test_homotopy_identity_small():
    C = Algebra(1, 3)
    t = C.nil(0)
    w = Form(C, 1, {(((), (1,)), (0,)): Fraction(1)})   # t dt, degree 2
    assert euler_homotopy(w) == form_of_element(t ** 2)
    lhs = d(euler_homotopy(w)) + euler_homotopy(d(w))
    assert lhs == 2 * w


def test_homotopy_requires_single_variable():
    w = d_elem(A.nil(0))
    with pytest.raises(ValueError, match="single-nilpotent"):
        euler_homotopy(w)


@given(f=b_elems)
def test_graded_components_sum_to_form(f):
    w = d_elem(f)
    total = zero_form(B, 1)
    for i in w.internal_degrees():
        total = total + graded_component(w, i)
    assert total == w


def test_graded_component_needs_monomial_mode():
    C = Algebra(2, 5, ideal=[{(3, 0): 1, (0, 3): 1}])
    w = d_elem(C.nil(0))
    with pytest.raises(ValueError, match="graded component"):
        graded_component(w, 1)


def test_block_key_counts_dt_and_params():
    key = block_key(B, ((1, 0), (2,)), (0, 2))
    # t^2 a dt db: internal degree 2+1, parameter degree (1, 1)
    assert key == (3, (1, 1))


def test_d_preserves_block_key():
    w = Form(B, 0, {(((1, 1), (2,)), ()): Fraction(1)})
    key = block_key(B, ((1, 1), (2,)), ())
    for (mono, word) in d(w).terms:
        assert block_key(B, mono, word) == key


@given(x=elems)
def test_push_form_commutes_with_d(x):
    target = Algebra(1, 4)
    t = target.nil(0)
    rmap = RingMap(A, target, {"t1": t, "t2": t ** 2})
    w = d_elem(x)
    assert push_form(rmap, w) == d_elem(rmap(x))


def test_relation_rows_kill_top_degree():
    C = Algebra(1, 3)
    t = C.nil(0)
    w = Form(C, 1, {(((), (2,)), (0,)): Fraction(1)})   # t^2 dt
    assert w == zero_form(C, 1)
    assert d_elem(t ** 2) == 2 * Form(C, 1, {(((), (1,)), (0,)): Fraction(1)})


def test_canonical_reduction_with_general_ideal():
    C = Algebra(2, 3, ideal=[{(2, 0): 1, (0, 2): 1}])
    t1, t2 = C.nil(0), C.nil(1)
    # 2 t1 dt1 = d(t1^2) = d(-t2^2) = -2 t2 dt2 in Omega^1
    lhs = d_elem(t1 * t1)
    rhs = -d_elem(t2 * t2)
    assert lhs == rhs


def test_form_str_layout():
    t1, t2 = A.nil(0), A.nil(1)
    w = d_elem(t1 * t2)
    assert form_str(w) == "1 * t1 * dt2 + 1 * t2 * dt1"
    assert form_str(zero_form(A, 1)) == "0"

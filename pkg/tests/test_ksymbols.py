import random
from fractions import Fraction

import pytest

from nilbloch.algebra import Algebra
from nilbloch.forms import Form, d, form_str, zero_form
from nilbloch.derham import FULL, quotient_class
from nilbloch.ksymbols import (SymbolSum, bloch, dlog_symbol,
                               filtration_strictness_witness, lambda_map,
                               map_symbol, phi_p, steinberg_element,
                               surjectivity_witnesses, swap_symbol, symbol,
                               theta_maps, verify_filtration_vanishing,
                               verify_key_identity, verify_skew)
from nilbloch import sampling as sp

R3 = Algebra(1, 3)
R32 = Algebra(2, 3)
DUAL = Algebra(1, 2, params=[("a", True), ("b", True)])


def test_symbol_sum_arithmetic():
    t = R3.nil(0)
    s = symbol(R3.one() + t, R3.const(2))
    u = 2 * s - s
    assert bloch(u).rep == bloch(s).rep
    assert str(s) == "{t+1, 2}"
    assert str(0 * s) == "0"
    with pytest.raises(ValueError, match="arity mismatch"):
        s + symbol(R3.one() + t)
    with pytest.raises(ValueError, match="entry not a unit"):
        symbol(t, R3.const(2))


def test_dlog_symbol_examples():
    t = R3.nil(0)
    w = dlog_symbol(symbol(R3.one() + t))
    assert form_str(w) == "-1 * t * dt + 1 * 1 * dt"
    assert dlog_symbol(symbol(R3.const(2))) == zero_form(R3, 1)
    A = Algebra(1, 2, params=[("a", False), ("b", True)])
    s = symbol(A.one() + A.var("a") * A.nil(0), A.var("b"))
    got = dlog_symbol(s)
    want = ("1 * b^-1*t * da∧db + 1 * a*b^-1 * dt∧db")
    assert form_str(got) == want


def test_bloch_dual_numbers_class():
    eps, a, b = DUAL.nil(0), DUAL.var("a"), DUAL.var("b")
    cl = bloch(symbol(DUAL.one() + a * b * eps, b))
    want = quotient_class(Form(DUAL, 1, {(((1, 0), (1,)), (2,)): Fraction(1)}),
                          FULL)
    assert cl.rep == want
    assert not cl.is_zero()


def test_bloch_arity_one_is_log():
    t = R3.nil(0)
    cl = bloch(symbol(R3.one() + t))
    want = quotient_class(Form(R3, 0, {(((), (1,)), ()): Fraction(1),
                                       (((), (2,)), ()): Fraction(-1, 2)}),
                          FULL)
    assert cl.rep == want


def test_bloch_exp_generator():
    A = Algebra(1, 3, params=[("b", True)])
    t, b = A.nil(0), A.var("b")
    cl = bloch(symbol(A.exp_nil(t * b), b))
    want = quotient_class(Form(A, 1, {(((0,), (1,)), (1,)): Fraction(1)}),
                          FULL)
    assert cl.rep == want


def test_bloch_reports_discarded_base():
    t = R3.nil(0)
    cl = bloch(symbol(R3.const(2) * (R3.one() + t), R3.const(3)))
    assert cl.base            # the 2 (x) 3 component has no nilpotent slot
    cl2 = bloch(symbol(R3.one() + t, R3.one() + t))
    assert not cl2.base


def test_steinberg_examples():
    t = R3.nil(0)
    z = steinberg_element(R3.const(2), t)
    assert str(z) == "{t+2, -t-1} - {2, -1}"
    assert bloch(z).is_zero()
    assert bloch(steinberg_element(R3.const(2), R3.zero())).is_zero()
    x = R32.nil(0) * R32.nil(1)
    assert bloch(steinberg_element(R32.const(Fraction(1, 2)), x)).is_zero()


def test_steinberg_validation():
    t = R3.nil(0)
    with pytest.raises(ValueError, match="not a unit"):
        steinberg_element(R3.const(1), t)
    with pytest.raises(ValueError, match="not a unit"):
        steinberg_element(R3.const(0), t)
    with pytest.raises(ValueError, match="nilpotent"):
        steinberg_element(R3.const(2), R3.one() + t)


def test_phi_p_examples():
    A = Algebra(1, 3, params=[("a", True), ("b", True)])
    t, a, b = A.nil(0), A.var("a"), A.var("b")
    s = phi_p(a, b, 2)
    assert str(s) == "{a*b*t^2+1, b}"
    cl = bloch(s)
    want = quotient_class(Form(A, 1, {(((1, 0), (2,)), (2,)): Fraction(1)}),
                          FULL)
    assert cl.rep == want
    assert bloch(phi_p(A.zero(), b, 2)).is_zero()
    B = Algebra(1, 2)
    assert bloch(phi_p(B.one(), B.const(2), 1)).is_zero()


def test_phi_p_validation():
    A = Algebra(1, 3, params=[("b", True)])
    with pytest.raises(ValueError, match="truncation too shallow"):
        phi_p(A.one(), A.var("b"), 3)
    with pytest.raises(ValueError, match="not a unit"):
        phi_p(A.one(), A.nil(0), 1)
    with pytest.raises(ValueError, match="single-nilpotent"):
        phi_p(R32.one(), R32.const(2), 1)


def test_key_identity_small_cases():
    assert verify_key_identity(1, 1).passed
    assert verify_key_identity(1, 2).passed
    rep = verify_key_identity(1, 1)
    assert rep.certificate.exact
    with pytest.raises(ValueError, match="invalid exponents"):
        verify_key_identity(0, 1)


def test_filtration_vanishing_and_strictness():
    assert verify_filtration_vanishing(2, 1, 1).vanishes
    assert verify_filtration_vanishing(1, 1, 1).vanishes
    assert verify_filtration_vanishing(3, 1, 2).vanishes
    with pytest.raises(ValueError, match="i\\+j < p"):
        verify_filtration_vanishing(3, 1, 1)
    wit = filtration_strictness_witness(3)
    assert wit is not None
    assert (wit["i"], wit["j"]) == (1, 1)
    assert not wit["certificate"].exact


def test_skew_examples():
    t = R3.nil(0)
    A = Algebra(1, 3, params=[("b", True)])
    assert verify_skew(symbol(A.one() + A.nil(0), A.var("b"))).passed
    B = Algebra(1, 3, params=[("a", False), ("b", False)])
    u = B.one() + B.var("a") * B.nil(0)
    v = B.one() + B.var("b") * B.nil(0)
    assert verify_skew(symbol(u, v)).passed
    assert verify_skew(symbol(R3.one() + t, R3.one() + t)).passed


def test_slot_choice_does_not_change_class():
    rng = random.Random(11)
    for _ in range(20):
        s = sp.random_symbol(rng, R32, 2, nil_slots=2)
        assert bloch(s, slot="first").rep == bloch(s, slot="last").rep


def test_swap_is_antisymmetric_on_classes():
    rng = random.Random(12)
    for _ in range(10):
        s = sp.random_symbol(rng, R32, 2, nil_slots=1)
        total = bloch(s + swap_symbol(s))
        assert total.is_zero()


def test_d_of_representative_is_dlog():
    rng = random.Random(13)
    for _ in range(30):
        A = rng.choice([R3, R32])
        s = sp.random_symbol(rng, A, 2, nil_slots=1)
        cl = bloch(s)
        assert d(cl.rep) == dlog_symbol(s)


def test_multiplicativity_in_one_slot():
    rng = random.Random(14)
    for _ in range(20):
        u = sp.random_unit(rng, R32)
        v = sp.random_unit(rng, R32)
        w = sp.random_unit(rng, R32)
        lhs = bloch(symbol(u * v, w))
        rhs = bloch(symbol(u, w) + symbol(v, w))
        assert lhs.rep == rhs.rep


def test_span_small_truncations():
    for (N, m, n, dim) in [(3, 1, 0, 2), (3, 2, 1, 3), (4, 1, 1, 0)]:
        rep = surjectivity_witnesses(Algebra(m, N), FULL, n)
        assert rep.dim_target == dim
        assert rep.full


def test_span_parametric_needs_symbols():
    A = Algebra(1, 2, params=[("b", True)])
    with pytest.raises(ValueError, match="explicit generator symbols"):
        surjectivity_witnesses(A, FULL, 1)
    eps, b = A.nil(0), A.var("b")
    syms = [symbol(A.one() + eps, b), symbol(A.one() + b * eps, b)]
    rep = surjectivity_witnesses(A, FULL, 1, symbols=syms)
    assert rep.full
    assert rep.dim_target == 2


def test_theta_difference_raises_degree():
    src = Algebra(1, 6, params=[("b", True), ("x", False)])
    tgt = Algebra(1, 6, params=[("b", True)])
    p, q = 2, 2
    th_q, th_0 = theta_maps(src, tgt, q)
    s = symbol(src.one() + src.var("x") * src.nil(0) ** p, src.var("b"))
    diff = bloch(map_symbol(th_q, s) + (-1) * map_symbol(th_0, s))
    assert diff.rep.terms
    assert min(diff.rep.internal_degrees()) >= p + q


def test_lambda_scales_depth():
    A = Algebra(1, 6, params=[("b", True)])
    lam = lambda_map(A, 2)
    s = symbol(A.one() + A.nil(0) ** 2, A.var("b"))
    moved = map_symbol(lam, s)
    cl = bloch(moved)
    assert min(cl.rep.internal_degrees()) >= 4

"""Ring layer: parameters, arithmetic, Frobenius, Teichmuller lifts, digits."""

import random

import pytest

from wittcalc import (
    NonUnit,
    NotPrime,
    ParamsMismatch,
    PrecisionExhausted,
    PrecisionTooSmall,
    ReduciblePolynomial,
    ValuationAtLeast,
    agreement_precision,
    conway_polynomial,
    digits,
    from_digits,
    frobenius,
    frobenius_inv,
    new_params,
    random_element,
    teichmuller,
)
from wittcalc.serialize import digits_from_obj, digits_to_obj, element_from_obj, element_to_obj

from conftest import get_params


# ---------------------------------------------------------------------------
# parameters

def test_params_f1_default_poly_is_x():
    P = new_params(5, 1, 8)
    assert P.poly == (0, 1)
    assert P.from_int(7) * P.from_int(18) == 126


def test_params_accepts_explicit_irreducible():
    # x^2 + 2x + 2 has no roots in F_3 (exhaustive check), hence irreducible
    assert all((x * x + 2 * x + 2) % 3 != 0 for x in range(3))
    P = new_params(3, 2, 10, (2, 2, 1))
    assert P.poly == (2, 2, 1)


def test_params_rejects_non_prime():
    with pytest.raises(NotPrime):
        new_params(4, 1, 8)


def test_params_rejects_reducible():
    # x^2 + 2 = (x+1)(x+2) mod 3
    with pytest.raises(ReduciblePolynomial):
        new_params(3, 2, 10, (2, 0, 1))


def test_params_rejects_tiny_precision():
    with pytest.raises(PrecisionTooSmall):
        new_params(3, 1, 1)


def test_conway_table_spot_checks():
    assert conway_polynomial(3, 2) == (2, 2, 1)
    assert conway_polynomial(3, 1) == (1, 1)
    assert conway_polynomial(5, 1) == (3, 1)
    assert conway_polynomial(7, 1) == (4, 1)
    assert conway_polynomial(2, 1) == (1, 1)
    assert conway_polynomial(2, 2) == (1, 1, 1)
    assert conway_polynomial(2, 3) == (1, 1, 0, 1)
    # norm compatibility: (-1)^f * constant term is a primitive root mod p
    for p, f in [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (7, 3)]:
        poly = conway_polynomial(p, f)
        g = (-1) ** f * poly[0] % p
        assert pow(g, (p - 1), p) == 1
        ells = [ell for ell in range(2, p) if (p - 1) % ell == 0]
        assert all(pow(g, (p - 1) // ell, p) != 1 for ell in ells if ell > 1)


# ---------------------------------------------------------------------------
# arithmetic and precision rules

def test_inverse_against_extended_euclid():
    P = get_params(3, 1, 4)
    # oracle: pow(2, -1, 81) is the extended-Euclid inverse
    assert pow(2, -1, 81) == 41
    assert P.from_int(2).inv() == 41
    assert P.from_int(2) * P.from_int(41) == 1


def test_precision_propagation_min_rule():
    P = get_params(5, 1, 8)
    u = P.from_int(12, prec=3)
    v = P.from_int(99, prec=5)
    assert (u + v).prec == 3
    assert (u * v).prec == 3
    assert (u - v).prec == 3
    assert u.inv().prec == 3


def test_mixed_precision_equality_small_modulus():
    P = get_params(5, 1, 8)
    a = P.from_int(7, prec=3)
    b = P.from_int(7 + 5 ** 3, prec=5)
    assert a == b  # congruent mod 5^3
    assert agreement_precision(a, b) == 3
    assert P.from_int(7, prec=5) != b


def test_ring_laws_randomized():
    rng = random.Random(0)
    for p, f in [(3, 1), (5, 2), (7, 3)]:
        P = get_params(p, f, 8)
        for _ in range(25):
            u, v, t = (random_element(P, rng) for _ in range(3))
            assert (u + v) + t == u + (v + t)
            assert u * (v + t) == u * v + u * t
            assert u * v == v * u
            assert (u * v) * t == u * (v * t)
            assert u - u == 0


def test_unit_inverse_and_nonunit_rejection():
    P = get_params(5, 2, 8)
    rng = random.Random(1)
    for _ in range(20):
        u = random_element(P, rng, unit=True)
        assert u * u.inv() == 1
    with pytest.raises(NonUnit):
        P.from_int(5).inv()


def test_params_mismatch_rejected():
    u = get_params(3, 1, 6).from_int(1)
    v = get_params(5, 1, 6).from_int(1)
    with pytest.raises(ParamsMismatch):
        u + v


def test_valuation():
    P = get_params(3, 1, 8)
    assert P.from_int(9).valuation() == 2
    assert P.from_int(5).valuation() == 0
    v = P.from_int(3 ** 4, prec=4).valuation()
    assert v == ValuationAtLeast(4)
    assert v.bound == 4


def test_exact_div_p_requires_divisibility():
    P = get_params(3, 1, 8)
    assert P.from_int(18).exact_div_p() == 6
    with pytest.raises(ArithmeticError):
        P.from_int(5).exact_div_p()
    with pytest.raises(PrecisionExhausted):
        P.from_int(3, prec=1).exact_div_p()


# ---------------------------------------------------------------------------
# Frobenius

def test_frobenius_fixes_prime_subring():
    P = get_params(5, 1, 8)
    assert frobenius(P.from_int(7)) == 7


def test_frobenius_reduces_to_p_power_map():
    rng = random.Random(2)
    for p, f in [(3, 2), (5, 2), (7, 3)]:
        P = get_params(p, f, 8)
        for _ in range(25):
            u = random_element(P, rng)
            assert agreement_precision(frobenius(u), u ** p) >= 1


def test_frobenius_is_ring_homomorphism():
    P = get_params(5, 3, 10)
    rng = random.Random(3)
    for _ in range(25):
        u, v = random_element(P, rng), random_element(P, rng)
        assert frobenius(u + v) == frobenius(u) + frobenius(v)
        assert frobenius(u * v) == frobenius(u) * frobenius(v)


def test_frobenius_order_and_inverse():
    rng = random.Random(4)
    for p, f in [(3, 1), (3, 2), (5, 3)]:
        P = get_params(p, f, 8)
        for _ in range(10):
            u = random_element(P, rng)
            t = u
            for _ in range(f):
                t = frobenius(t)
            assert t == u
            assert frobenius_inv(frobenius(u)) == u


def test_frobenius_vieta_on_conway_quadratic():
    # g and phi(g) are the two roots of the lifted x^2 + 2x + 2, so their
    # sum and product are read off the coefficients exactly.
    P = get_params(3, 2, 12, (2, 2, 1))
    g = P.gen()
    assert g + frobenius(g) == -2
    assert g * frobenius(g) == 2


# ---------------------------------------------------------------------------
# Teichmuller lifts

def test_teichmuller_anchor_omega2_mod_25():
    # oracle: iterate x -> x^5 mod 25 from 2: 32 = 7, then 7^5 = 7 (stable)
    x = 2
    for _ in range(2):
        x = pow(x, 5, 25)
    assert x == 7
    P = get_params(5, 1, 2)
    assert teichmuller(P.fq_from_int(2)) == 7


def test_teichmuller_of_minus_one_and_one():
    for p in (3, 5, 7):
        P = get_params(p, 1, 10)
        assert teichmuller(P.fq_from_int(1)) == 1
        assert teichmuller(P.fq_from_int(-1)) == -1
        assert teichmuller(P.fq_from_int(0)) == 0


def test_teichmuller_root_of_unity_and_multiplicative():
    rng = random.Random(5)
    for p, f in [(3, 2), (5, 2), (7, 1)]:
        P = get_params(p, f, 10)
        q = p ** f
        for _ in range(15):
            a = random_element(P, rng, unit=True).residue()
            b = random_element(P, rng, unit=True).residue()
            assert teichmuller(a) ** (q - 1) == 1
            assert teichmuller(a * b) == teichmuller(a) * teichmuller(b)


# ---------------------------------------------------------------------------
# digits

def test_digits_of_p_and_minus_one():
    P = get_params(5, 1, 6)
    d = digits(P.from_int(5))
    assert [c.coeffs for c in d.digits] == [(0,), (1,)] + [(0,)] * 4
    d = digits(P.from_int(-1))
    # omega(-1) = -1, so the expansion terminates after one digit
    assert d.digits[0].coeffs == (4,)
    assert all(c.coeffs == (0,) for c in d.digits[1:])


def test_digits_round_trip_and_unit_detection():
    rng = random.Random(6)
    P = get_params(3, 2, 9)
    for _ in range(25):
        u = random_element(P, rng)
        d = digits(u)
        assert len(d.digits) == u.prec
        assert from_digits(d) == u
        assert u.is_unit() == (not d.digits[0].is_zero())


def test_digit_frobenius_identity():
    rng = random.Random(7)
    P = get_params(5, 2, 12)
    for _ in range(25):
        u = random_element(P, rng)
        assert from_digits(digits(u).frobenius()) == frobenius(u)


def test_p2_ring_layer_is_available():
    # exp/log/psi reject p = 2, but the ring, phi, and digits all work there
    P = get_params(2, 2, 8)
    rng = random.Random(20)
    for _ in range(15):
        u = random_element(P, rng)
        assert frobenius(frobenius(u)) == u
        assert from_digits(digits(u)) == u
        assert from_digits(digits(u).frobenius()) == frobenius(u)


# ---------------------------------------------------------------------------
# serialization

def test_element_serialization_round_trip():
    rng = random.Random(8)
    P = get_params(7, 2, 9)
    for _ in range(10):
        u = random_element(P, rng, prec=rng.randint(1, 9))
        obj = element_to_obj(u)
        assert obj["coeffs"] == [str(c) for c in u.coeffs]
        v = element_from_obj(obj, P)
        assert v == u and v.prec == u.prec
        w = element_from_obj(obj)  # standalone params rebuilt from the object
        assert w.coeffs == u.coeffs


def test_digits_serialization_round_trip():
    P = get_params(3, 2, 6)
    u = P.from_int(35)
    d = digits(u)
    obj = digits_to_obj(d)
    assert from_digits(digits_from_obj(obj, P)) == u

import math
import random
from fractions import Fraction

import pytest

from adelic.globalfields import (
    INFINITY,
    Divisor,
    GlobalFieldDesc,
    Idele,
    NotAnExtension,
    UnsupportedField,
    absolute_discriminant,
    archimedean_places,
    divisor_of_idele,
    idele_from_divisor,
    idele_log_norm,
    kronecker_of_disc,
    local_discriminant_desc,
    places_above,
    principal_idele,
    ramified_finite_places,
    random_idele,
    random_idele_bounded,
    relative_discriminant_norm,
)
from adelic.values import LogValue, PosRealExact

Q = GlobalFieldDesc.rationals()
Qi = GlobalFieldDesc.quadratic(-1)
Q5 = GlobalFieldDesc.quadratic(5)
F3 = GlobalFieldDesc.rational_function_field(3)
H = GlobalFieldDesc.hyperelliptic(3, (0, 2, 0, 1))  # y^2 = t^3 - t


# -- field descriptors ------------------------------------------------------------


def test_field_validation():
    with pytest.raises(UnsupportedField):
        GlobalFieldDesc.quadratic(12)      # not squarefree
    with pytest.raises(UnsupportedField):
        GlobalFieldDesc.quadratic(1)
    with pytest.raises(UnsupportedField):
        GlobalFieldDesc.hyperelliptic(2, (0, 1, 1))   # even q
    with pytest.raises(UnsupportedField):
        GlobalFieldDesc.hyperelliptic(3, (0, 0, 1))   # t^2 not squarefree


def test_quadratic_discriminants():
    assert GlobalFieldDesc.quadratic(5).disc == 5     # 5 = 1 mod 4
    assert GlobalFieldDesc.quadratic(-1).disc == -4
    assert GlobalFieldDesc.quadratic(-3).disc == -3
    assert GlobalFieldDesc.quadratic(10).disc == 40


def test_signatures_and_genus():
    assert Q5.signature == (2, 0)
    assert Qi.signature == (0, 1)
    assert F3.genus == 0
    assert H.genus == 1
    assert GlobalFieldDesc.hyperelliptic(3, (1, 2, 0, 0, 0, 1)).genus == 2


# -- places -----------------------------------------------------------------------


def test_places_above_examples():
    split5 = places_above(Qi, 5)
    assert len(split5) == 2
    assert all(p.splitting == "split" and p.residue_card == 5 for p in split5)
    ram2, = places_above(Qi, 2)
    assert ram2.splitting == "ramified" and ram2.residue_card == 2
    ramt, = places_above(H, (0, 1))   # t divides t^3 - t
    assert ramt.splitting == "ramified"


def test_splitting_matches_kronecker_oracle():
    # independent oracle: p odd splits in Q(i) iff p = 1 mod 4
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29):
        pls = places_above(Qi, p)
        if p % 4 == 1:
            assert len(pls) == 2
            r = pls[0].root
            assert (r * r + 1) % p == 0  # root of x^2 + 1
        else:
            assert len(pls) == 1 and pls[0].f == 2


def test_local_degrees_sum_to_global_degree():
    for F in (Qi, Q5, GlobalFieldDesc.quadratic(-3), GlobalFieldDesc.quadratic(21)):
        for p in (2, 3, 5, 7, 11):
            assert sum(pl.e * pl.f for pl in places_above(F, p)) == 2
    for pi in [(0, 1), (1, 1), (2, 1), (1, 0, 1)]:
        assert sum(pl.e * pl.f for pl in places_above(H, pi)) == 2


def test_hyperelliptic_infinite_place_parity():
    odd = places_above(H, INFINITY)
    assert len(odd) == 1 and odd[0].splitting == "ramified"
    even = GlobalFieldDesc.hyperelliptic(3, (1, 2, 0, 0, 1))
    assert len(places_above(even, INFINITY)) == 2


def test_ramified_places_divide_discriminant():
    for d in (-1, -3, 5, 10, -35):
        K = GlobalFieldDesc.quadratic(d)
        for pl in ramified_finite_places(K):
            assert K.disc % pl.below == 0


# -- discriminants -----------------------------------------------------------------


def test_absolute_discriminant_examples():
    assert absolute_discriminant(Q).is_one()
    assert absolute_discriminant(Qi) == PosRealExact.from_rational(4)
    assert absolute_discriminant(F3) == PosRealExact.prime_power(3, -2)
    assert absolute_discriminant(H).is_one()  # genus 1: q^0


def test_relative_discriminant_examples():
    assert relative_discriminant_norm(Q5, Q5).is_one()
    assert relative_discriminant_norm(Q5, Q) == PosRealExact.from_rational(5)
    # genus 1 over genus 0: q^(2g-2) / q^(-4) = q^4
    assert relative_discriminant_norm(H, F3) == PosRealExact.prime_power(3, 4)
    with pytest.raises(NotAnExtension):
        relative_discriminant_norm(Q5, Qi)
    with pytest.raises(NotAnExtension):
        relative_discriminant_norm(H, GlobalFieldDesc.rational_function_field(5))


def test_relative_discriminant_matches_ramification_product():
    # Riemann-Hurwitz oracle: the product of local discriminant norms over
    # ALL ramified places (the degree place included) equals d_L/d_K^2
    prod = PosRealExact.one()
    for pl in ramified_finite_places(H):
        below_deg = 1 if pl.below == INFINITY else len(pl.below) - 1
        prod = prod * PosRealExact.prime_power(3, below_deg)
    assert prod == relative_discriminant_norm(H, F3)


def test_local_discriminant_descriptors():
    # (p odd, tame), (2, unit), (2, wild)
    assert local_discriminant_desc(Q5, 5).disc_exponent == 1
    assert local_discriminant_desc(GlobalFieldDesc.quadratic(-1), 2).disc_exponent == 2
    assert local_discriminant_desc(GlobalFieldDesc.quadratic(10), 2).disc_exponent == 3


# -- ideles and divisors --------------------------------------------------------------


def test_divisor_of_idele_examples():
    assert divisor_of_idele(Idele.trivial(Qi)).coefficients == ()
    P3, = places_above(F3, (0, 1))  # norm-3 place
    al = Idele.make(F3, {P3: -2})
    D = divisor_of_idele(al)
    assert D.coeffs == {P3: 2}
    assert D.finite_degree() == 2


def test_divisor_map_is_homomorphism():
    rng = random.Random(31)
    for F in (Q, Qi, Q5, F3, H):
        for _ in range(20):
            a, b = random_idele(F, rng), random_idele(F, rng)
            lhs = divisor_of_idele(a * b)
            rhs = divisor_of_idele(a) + divisor_of_idele(b)
            assert lhs.coeffs.keys() == rhs.coeffs.keys()
            for pl in lhs.coeffs:
                assert math.isclose(float(lhs.coeffs[pl]), float(rhs.coeffs[pl]),
                                    rel_tol=0, abs_tol=1e-12)


def test_divisor_preimage_builder():
    rng = random.Random(12)
    for F in (Q, Qi, Q5, F3, H):
        for _ in range(10):
            D = divisor_of_idele(random_idele(F, rng))
            back = divisor_of_idele(idele_from_divisor(D))
            assert back.coeffs.keys() == D.coeffs.keys()
            for pl in D.coeffs:
                assert math.isclose(float(back.coeffs[pl]), float(D.coeffs[pl]),
                                    rel_tol=0, abs_tol=1e-12)


def test_idele_log_norm_examples():
    assert float(idele_log_norm(Idele.trivial(Q))) == 0.0
    P5, = places_above(Q, 5)
    al = Idele.make(Q, {P5: -1})    # component 1/5 at 5
    assert idele_log_norm(al).coeffs == {5: Fraction(1)}
    pl_inf, = places_above(F3, INFINITY)
    al = Idele.make(F3, {pl_inf: -3})
    assert idele_log_norm(al).coeffs == {3: Fraction(3)}


def test_degree_equals_log_norm():
    rng = random.Random(77)
    for F in (Q, Qi, Q5, F3, H):
        for _ in range(15):
            al = random_idele(F, rng)
            assert divisor_of_idele(al).degree().eq(idele_log_norm(al), tol=1e-12)


def test_idele_validation():
    P5, = places_above(Q, 5)
    inf, = archimedean_places(Q)
    with pytest.raises(Exception):
        Idele.make(Q, {}, {inf: -2.0})       # negative archimedean part
    with pytest.raises(Exception):
        Idele.make(Qi, {P5: 1})              # place of the wrong field


# -- product formula -------------------------------------------------------------------


def test_product_formula_rationals():
    rng = random.Random(5)
    for _ in range(60):
        num = rng.randint(-90, 90) or 7
        den = rng.randint(1, 90)
        x = Fraction(num, den)
        total = float(idele_log_norm(principal_idele(Q, x)))
        assert abs(total) < 1e-12


def test_product_formula_gaussian_integers():
    cases = [(1, 1), (2, 1), (0, 1), (3, 2), (5, 0), (1, -2), (7, 4),
             (Fraction(1, 2), Fraction(3, 5)), (-3, 1), (12, 5)]
    for a, b in cases:
        total = float(idele_log_norm(principal_idele(Qi, (a, b))))
        assert abs(total) < 1e-12, (a, b, total)


def test_product_formula_real_quadratic():
    cases = [(1, 1), (2, -3), (Fraction(5, 7), 2), (0, 1), (9, 4), (1, -1)]
    for a, b in cases:
        total = float(idele_log_norm(principal_idele(Q5, (a, b))))
        assert abs(total) < 1e-12, (a, b, total)


def test_product_formula_rational_functions_exact():
    rng = random.Random(9)
    from adelic import ffpoly
    from adelic.ffpoly import gf
    F = gf(3)
    for _ in range(30):
        num = tuple(rng.randrange(3) for _ in range(rng.randint(1, 4)))
        den = tuple(rng.randrange(3) for _ in range(rng.randint(1, 4)))
        num = ffpoly.ptrim(num) or (1,)
        den = ffpoly.ptrim(den) or (1,)
        ln = idele_log_norm(principal_idele(F3, (num, den)))
        assert ln.coeffs == {} and ln.real == 0.0  # exactly zero


def test_principal_idele_split_valuations():
    # 2 + i generates one of the primes over 5: valuation 1 there, 0 at the other
    pls = places_above(Qi, 5)
    al = principal_idele(Qi, (2, 1))
    vals = sorted(al.finite.get(pl, 0) for pl in pls)
    assert vals == [0, 1]


def test_random_idele_bounded():
    rng = random.Random(123)
    for F in (Q, Qi, Q5, F3):
        for _ in range(25):
            al = random_idele_bounded(F, rng, bound=5.0)
            assert abs(float(idele_log_norm(al))) <= 5.0 + 1e-9

import math
import random
from fractions import Fraction

import mpmath
import pytest

from adelic.euler import (
    RadiusExceeded,
    ThetaParams,
    canonical_idele,
    chi,
    chi_relative,
    h0,
    h1,
    verify_poisson,
    verify_rr,
    verify_rr_relative,
    verify_serre,
)
from adelic.globalfields import (
    INFINITY,
    GlobalFieldDesc,
    Idele,
    NotAnExtension,
    UnsupportedField,
    divisor_of_idele,
    idele_log_norm,
    places_above,
    principal_idele,
    random_idele,
    random_idele_bounded,
)
from adelic.theta import (
    embedding_matrix,
    ideal_for_idele,
    prime_ideal,
    ring_of_integers,
    theta_log_sum,
)
from adelic.values import LogValue

Q = GlobalFieldDesc.rationals()
Qi = GlobalFieldDesc.quadratic(-1)
Q5 = GlobalFieldDesc.quadratic(5)
Qm3 = GlobalFieldDesc.quadratic(-3)
F2 = GlobalFieldDesc.rational_function_field(2)
F3 = GlobalFieldDesc.rational_function_field(3)
H = GlobalFieldDesc.hyperelliptic(3, (0, 2, 0, 1))


def arch_idele(field, a):
    pl, = places_above(field, INFINITY)
    return Idele.make(field, {}, {pl: a})


def ff_divisor_idele(field, n):
    """Idele whose divisor is n[infinity]."""
    pl, = places_above(field, INFINITY)
    return Idele.make(field, {pl: -n})


# -- chi ---------------------------------------------------------------------------


def test_chi_examples():
    assert float(chi(Q, Idele.trivial(Q))) == 0.0
    assert chi(F3, Idele.trivial(F3)).coeffs == {3: Fraction(1)}   # log q
    assert chi(Qi, Idele.trivial(Qi)).coeffs == {2: Fraction(-1)}  # -log 2


def test_chi_determined_by_adelic_norm():
    # two ideles with the same log-norm have identical chi, exactly
    pls = places_above(Qi, 5)
    a = Idele.make(Qi, {pls[0]: 1})
    b = Idele.make(Qi, {pls[1]: 1})
    assert chi(Qi, a).coeffs == chi(Qi, b).coeffs


def test_chi_invariant_under_principal_scaling():
    rng = random.Random(3)
    for x in (Fraction(3, 2), Fraction(-7, 5)):
        pr = principal_idele(Q, x)
        for _ in range(10):
            al = random_idele(Q, rng)
            lhs = chi(Q, pr * al)
            rhs = chi(Q, al)
            assert abs(float(lhs) - float(rhs)) < 1e-12


# -- h0 -----------------------------------------------------------------------------


def test_h0_trivial_rationals_against_oracles():
    v = float(h0(Q, Idele.trivial(Q), ThetaParams(tolerance=1e-13)))
    theta = math.exp(v)
    brute = math.fsum(math.exp(-math.pi * n * n) for n in range(-12, 13))
    assert abs(theta - brute) < 1e-12
    # independent high-precision oracle: Jacobi theta_3 at q = e^-pi
    mp = float(mpmath.jtheta(3, 0, mpmath.exp(-mpmath.pi)))
    assert abs(theta - mp) < 1e-12
    assert abs(theta - 1.0864348112) < 1e-9


def test_h0_function_field_sections():
    assert h0(F3, ff_divisor_idele(F3, 2)).coeffs == {3: Fraction(3)}  # 3 log 3
    assert h0(F3, ff_divisor_idele(F3, -1)).coeffs == {}
    assert h0(F2, ff_divisor_idele(F2, 5)).coeffs == {2: Fraction(6)}


def test_h0_brute_force_polynomial_count():
    # sections of 2[inf] over F_3 are the polynomials of degree <= 2
    count = sum(1 for c0 in range(3) for c1 in range(3) for c2 in range(3))
    assert count == 27
    assert float(h0(F3, ff_divisor_idele(F3, 2))) == pytest.approx(math.log(27))


def test_h0_large_alpha_asymptotics():
    # theta(alpha) ~ alpha for wide Gaussians: h0 = log|alpha| + o(1)
    v = float(h0(Q, arch_idele(Q, 100.0)))
    assert abs(v - math.log(100.0)) < 1e-6


def test_h0_monotone_in_archimedean_component():
    vals = [float(h0(Q, arch_idele(Q, a))) for a in (0.5, 1.0, 2.0, 4.0)]
    assert all(x < y for x, y in zip(vals, vals[1:]))
    vals = [float(h0(Qi, arch_idele(Qi, a))) for a in (0.7, 1.0, 1.8)]
    assert all(x < y for x, y in zip(vals, vals[1:]))


def test_h0_invariant_under_principal_scaling():
    params = ThetaParams(tolerance=1e-12)
    for F, x in ((Q, Fraction(3, 2)), (Qi, (1, 1))):
        pr = principal_idele(F, x)
        al = arch_idele(F, 1.3)
        lhs = float(h0(F, pr * al, params))
        rhs = float(h0(F, al, params))
        assert abs(lhs - rhs) < 1e-10


def test_h0_unsupported_and_radius():
    with pytest.raises(UnsupportedField):
        h0(H, Idele.trivial(H))
    with pytest.raises(RadiusExceeded):
        h0(Q, arch_idele(Q, 1e5), ThetaParams(tolerance=1e-10, max_radius=64))


# -- h1 -----------------------------------------------------------------------------


def test_h1_examples():
    a = float(h1(Q, Idele.trivial(Q)))
    b = float(h0(Q, Idele.trivial(Q)))
    assert abs(a - b) < 1e-15                      # chi(Q, 1) = 0
    for n in range(0, 5):
        assert float(h1(F3, ff_divisor_idele(F3, n))) == 0.0   # exact
    lhs = h1(Qi, Idele.trivial(Qi))
    rhs = h0(Qi, Idele.trivial(Qi)) + LogValue({2: Fraction(1)})
    assert lhs.eq(rhs, tol=1e-12)


def test_h1_nonnegative():
    rng = random.Random(8)
    for F in (Q, Qi, Q5):
        for _ in range(10):
            al = random_idele_bounded(F, rng, bound=4.0)
            assert float(h1(F, al)) > -1e-9


# -- chi_relative --------------------------------------------------------------------


def test_chi_relative_examples():
    assert float(chi_relative(Q5, Q5, Idele.trivial(Q5))) == 0.0
    assert chi_relative(Q5, Q, Idele.trivial(Q5)).coeffs == {5: Fraction(-1, 2)}
    ram2, = places_above(Qi, 2)
    al = Idele.make(Qi, {ram2: 1})
    assert chi_relative(Qi, Q, al).coeffs == {2: Fraction(-2)}   # -2 log 2
    with pytest.raises(NotAnExtension):
        chi_relative(Q5, Qi, Idele.trivial(Q5))


# -- degree shift law -----------------------------------------------------------------


def test_ff_degree_shift():
    P, = places_above(F3, (1, 1))  # a degree-1 place
    base = ff_divisor_idele(F3, 3)
    shifted = base * Idele.make(F3, {P: -1})   # divisor coefficient +1
    dh0 = h0(F3, shifted) - h0(F3, base)
    dchi = chi(F3, shifted) - chi(F3, base)
    assert dh0.coeffs == {3: Fraction(1)}
    assert dchi.coeffs == {3: Fraction(1)}


# -- verify_* -----------------------------------------------------------------------


def test_verify_rr_examples():
    rng = random.Random(1)
    for _ in range(25):
        assert verify_rr(Qi, random_idele(Qi, rng)).passed
    rep = verify_rr(F3, ff_divisor_idele(F3, 5))
    assert rep.passed
    assert rep.lhs.coeffs == {3: Fraction(5)}   # both sides 5 log 3
    assert verify_rr(Q, Idele.trivial(Q)).passed


def test_verify_rr_relative_examples():
    reps = verify_rr_relative(Q5, Q, Idele.trivial(Q5))
    assert all(r.passed for r in reps)
    reps = verify_rr_relative(H, F3, Idele.trivial(H))
    assert all(r.passed for r in reps)
    # L = K collapse
    reps = verify_rr_relative(Q5, Q5, Idele.trivial(Q5))
    assert all(r.passed for r in reps)


def test_verify_serre_trivial_and_scaled():
    rep = verify_serre(Q, Idele.trivial(Q))
    assert rep.passed and abs(float(rep.lhs) - float(rep.rhs)) < 1e-12
    rep = verify_serre(Q, arch_idele(Q, 3.0))
    assert rep.passed and abs(float(rep.lhs) - float(rep.rhs)) < 1e-8
    rep = verify_serre(Qi, Idele.trivial(Qi))
    assert rep.passed


def test_serre_kappa_is_the_different():
    k = canonical_idele(Qi)
    ram2, = places_above(Qi, 2)
    assert k.finite == {ram2: -2}       # (1+i)^2 at the idele level
    assert divisor_of_idele(k).coeffs == {ram2: 2}
    assert idele_log_norm(k).coeffs == {2: Fraction(2)}  # +log d_K


def test_verify_serre_ff_exact():
    for q, F in ((2, F2), (3, F3)):
        for n in range(-6, 7):
            rep = verify_serre(F, ff_divisor_idele(F, n))
            assert rep.passed
            # h1(n[inf]) = max(0, -n-1) log q
            assert rep.rhs.coeffs.get(q, Fraction(0)) == max(0, -n - 1)


def test_verify_poisson_jacobi_family():
    for a in (0.25, 0.5, 1.0, 2.0, 4.0):
        rep = verify_poisson(Q, arch_idele(Q, a), ThetaParams(tolerance=1e-12))
        assert rep.passed
        assert abs(float(rep.lhs) - float(rep.rhs)) < 1e-10


def test_verify_poisson_quadratic_constant():
    rep = verify_poisson(Q5, Idele.trivial(Q5), ThetaParams(tolerance=1e-12))
    assert rep.passed
    assert "log5" in rep.notes.replace(" ", "").replace("*", "")
    rep = verify_poisson(Qi, Idele.trivial(Qi), ThetaParams(tolerance=1e-12))
    assert rep.passed


def test_poisson_direct_sums_match_jacobi():
    # the identity at alpha = 2 is literally theta(4) = (1/2) theta(1/4)
    lhs = math.fsum(math.exp(-math.pi * (2 * n) ** 2) for n in range(-50, 51))
    rhs = 0.5 * math.fsum(math.exp(-math.pi * (n / 2) ** 2) for n in range(-50, 51))
    assert abs(lhs - rhs) < 1e-12
    rep = verify_poisson(Q, arch_idele(Q, 2.0))
    assert abs(math.exp(float(rep.rhs)) - lhs) < 1e-10


def test_report_json_schema():
    rep = verify_serre(Qi, Idele.trivial(Qi))
    obj = rep.to_json()
    for key in ("field", "idele", "lhs", "rhs", "pass", "tolerance",
                "lattice_points_used", "runtime_ms"):
        assert key in obj
    assert set(obj["lhs"]) == {"symbolic", "real", "provenance"}


# -- theta internals ------------------------------------------------------------------


def test_theta_ideal_covolume():
    import numpy as np
    # covol(I) = N(I) sqrt|disc| with the self-dual normalization
    for F in (Qi, Q5, Qm3):
        O = ring_of_integers(F)
        E = embedding_matrix(F, O, {})
        assert abs(abs(np.linalg.det(E)) - math.sqrt(abs(F.disc))) < 1e-12
        P = prime_ideal(places_above(F, 11)[0])
        EP = embedding_matrix(F, P, {})
        assert abs(abs(np.linalg.det(EP)) -
                   float(P.norm()) * math.sqrt(abs(F.disc))) < 1e-10


def test_theta_sections_lattice_orientation():
    # positive valuation shrinks the sections lattice, lowering h0
    P, = places_above(Qi, 2)
    deep = float(h0(Qi, Idele.make(Qi, {P: 2})))
    wide = float(h0(Qi, Idele.make(Qi, {P: -2})))
    base = float(h0(Qi, Idele.trivial(Qi)))
    assert deep < base < wide


def test_h0_matches_direct_weighted_sum():
    # independent oracle: sum the eigenfunction weights element by element
    from adelic.euler import TestFunctionSpec
    from adelic.theta import rational_lattice_scale

    P5, = places_above(Q, 5)
    al = Idele.make(Q, {P5: -1}, {places_above(Q, INFINITY)[0]: 1.7})
    spec_fn = TestFunctionSpec(Q, al)
    assert spec_fn.arch_weight(0) == 1.0
    r = rational_lattice_scale(al)
    direct = math.fsum(spec_fn.arch_weight(r * k) for k in range(-400, 401))
    assert abs(math.exp(float(h0(Q, al))) - direct) < 1e-10

    al = Idele.make(Qi, {places_above(Qi, 2)[0]: 1},
                    {places_above(Qi, INFINITY)[0]: 1.4})
    spec_fn = TestFunctionSpec(Qi, al)
    assert spec_fn.arch_weight((0, 0)) == 1.0
    I = ideal_for_idele(al)
    cols = I.basis_columns()
    direct = math.fsum(
        spec_fn.arch_weight((cols[0][0] * i + cols[1][0] * j,
                             cols[0][1] * i + cols[1][1] * j))
        for i in range(-30, 31) for j in range(-30, 31))
    assert abs(math.exp(float(h0(Qi, al))) - direct) < 1e-10

from fractions import Fraction as F

import pytest

from bezoutiant.exact import GR, Poly
from bezoutiant.kernel import build_kernel, normalize_pair
from bezoutiant.symbol import (
    COEFF_NONALGEBRAIC,
    CoincidenceCaseError,
    OrderViolationError,
    TieCancellationError,
    OUTCOME_COINCIDE,
    OUTCOME_INCONCLUSIVE,
    OUTCOME_NO_COMMON,
    decide,
    l_operator,
    monomial_density,
    monomial_order,
    v_symbol,
)
from conftest import random_admissible_poly

ONE = Poly.of(1)
TWO_T = Poly.of(0, 2)


def test_v_symbol_examples():
    assert v_symbol(normalize_pair(TWO_T, ONE, 1)).is_zero
    assert v_symbol(normalize_pair(TWO_T, TWO_T, 1)).is_zero


def test_v_symbol_coincidence_pairs(rng):
    for _ in range(6):
        psi2 = random_admissible_poly(rng, rng.randint(1, 4), 1)
        psi1 = psi2.reflect(1)
        if not psi1.integral(0, 1) or psi1.degree < psi2.degree:
            continue
        assert v_symbol(normalize_pair(psi1, psi2, 1)).is_zero


def test_v_symbol_order_violation():
    with pytest.raises(OrderViolationError):
        v_symbol(normalize_pair(ONE, TWO_T, 1))


def test_l_operator_examples():
    L = l_operator(normalize_pair(TWO_T, ONE, 1))
    assert L.coeffs == (GR(2),) and L.order == 0
    L = l_operator(normalize_pair(TWO_T, TWO_T, 1))
    assert L.coeffs == (GR(4),) and L.order == 0
    L = l_operator(normalize_pair(ONE, ONE, 1))
    assert L.is_zero and L.order is None


def test_monomial_order_examples():
    r, lead = monomial_order(1, 0, 0, 0, 1)
    assert r == 0
    r, _ = monomial_order(0, 3, 0, 1, 1)
    assert r == 2
    with pytest.raises(CoincidenceCaseError):
        monomial_order(1, 2, 2, 1, 1)
    with pytest.raises(OrderViolationError):
        monomial_order(0, 0, 1, 1, 1)


def test_monomial_order_tie_case_leading():
    # x(1-x) against 1: both candidate orders are 0 and the boundary
    # contributions add up (B1 = 1, B2 = 1); the exact operator is the
    # constant 2 before normalization
    r, lead = monomial_order(1, 1, 0, 0, 1)
    assert r == 0 and lead == GR(2)
    pair = normalize_pair(monomial_density(1, 1, 1), ONE, 1)
    # normalized densities rescale the operator by 1/(conj(R1) R2) = 6
    assert l_operator(pair).coeffs == (GR(12),)


def test_monomial_order_tie_cancellation():
    # symmetric pairs with even exponent offset cancel at the tied degree
    # and the true order drops below the formula value
    with pytest.raises(TieCancellationError):
        monomial_order(2, 2, 0, 0, 1)
    pair = normalize_pair(monomial_density(2, 2, 1), ONE, 1)
    assert l_operator(pair).order == 0  # formula value would be 1


def test_monomial_density():
    # x^1 (1-x)^2 = x - 2x^2 + x^3
    assert monomial_density(1, 2, 1) == Poly.of(0, 1, -2, 1)


def test_order_cross_validation_subset():
    # spot checks ahead of the exhaustive acceptance sweep
    for (m1, n1, m2, n2, a) in [
        (1, 0, 0, 0, 1), (0, 3, 0, 1, 1), (2, 2, 1, 1, 2),
        (3, 1, 0, 2, F(3, 2)), (0, 5, 2, 1, 1),
    ]:
        pair = normalize_pair(monomial_density(m1, n1, a), monomial_density(m2, n2, a), a)
        r, _ = monomial_order(m1, n1, m2, n2, a)
        assert l_operator(pair).order == r


def test_decide_fixture_no_common():
    v = decide(TWO_T, ONE, 1)
    assert v.outcome == OUTCOME_NO_COMMON
    assert v.diagnostics["l_order"] == 0
    assert v.no_real_zeros and v.no_conjugate_pairs


def test_decide_coincidence():
    v = decide(ONE, ONE, 1)
    assert v.outcome == OUTCOME_COINCIDE
    v = decide(monomial_density(1, 2, 1), monomial_density(2, 1, 1), 1)
    assert v.outcome == OUTCOME_COINCIDE


def test_decide_symmetric_density_flags():
    # psi1 = 1 + t(1-t) is symmetric about a/2, so the structural claims
    # about its transform do not apply
    v = decide(Poly.of(1, 1, -1), ONE, 1)
    assert v.outcome == OUTCOME_NO_COMMON
    assert not v.diagnostics["swapped"]
    assert not v.no_real_zeros and not v.no_conjugate_pairs


def test_decide_flags_follow_the_ordered_pair():
    # a swapped call reports the flags of the reordered leading density
    v = decide(ONE, TWO_T, 1)
    assert v.outcome == OUTCOME_NO_COMMON
    assert v.diagnostics["swapped"]
    assert v.no_real_zeros and v.no_conjugate_pairs


def test_decide_zero_mass_inconclusive():
    v = decide(Poly.of(F(-1, 2), 1), ONE, 1)
    assert v.outcome == OUTCOME_INCONCLUSIVE
    assert "zero-mass" in v.diagnostics["reason"]


def test_decide_swap_symmetry(rng):
    for _ in range(10):
        p1 = random_admissible_poly(rng, rng.randint(0, 4), 1)
        p2 = random_admissible_poly(rng, rng.randint(0, 4), 1)
        assert decide(p1, p2, 1).outcome == decide(p2, p1, 1).outcome


def test_decide_rational_never_inconclusive(rng):
    for _ in range(20):
        p1 = random_admissible_poly(rng, rng.randint(0, 5), 1)
        p2 = random_admissible_poly(rng, rng.randint(0, 5), 1)
        v = decide(p1, p2, 1)
        assert v.outcome in (OUTCOME_NO_COMMON, OUTCOME_COINCIDE)


def test_decide_nonalgebraic_path():
    # The symbol identity makes V vanish for every polynomial pair (the
    # bilinear sum is a constant concomitant), so the non-algebraic path
    # can only ever report the coincidence case or fall back to
    # inconclusive -- never a zero-free certificate.
    v = decide(TWO_T, ONE, 1, coeff_class=COEFF_NONALGEBRAIC)
    assert v.outcome == OUTCOME_INCONCLUSIVE
    assert v.diagnostics["v_is_zero"]
    v = decide(ONE, ONE, 1, coeff_class=COEFF_NONALGEBRAIC)
    assert v.outcome == OUTCOME_COINCIDE


def test_verdict_kernel_consistency(rng):
    # ZeroSetsCoincide exactly when the kernel vanishes identically
    cases = [
        (ONE, ONE), (TWO_T, ONE), (ONE, TWO_T),
        (monomial_density(1, 2, 1), monomial_density(2, 1, 1)),
        (random_admissible_poly(rng, 3, 1), random_admissible_poly(rng, 2, 1)),
    ]
    for p1, p2 in cases:
        v = decide(p1, p2, 1)
        k = build_kernel(normalize_pair(p1, p2, 1))
        vanished = k.u_lower.is_zero and k.u_upper.is_zero
        assert (v.outcome == OUTCOME_COINCIDE) == vanished


def test_verdict_serialization():
    d = decide(TWO_T, ONE, 1).to_json()
    assert d["outcome"] == OUTCOME_NO_COMMON
    assert isinstance(d["diagnostics"]["normalizers"], list)

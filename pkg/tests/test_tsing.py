import random
from fractions import Fraction
from math import gcd

import pytest

from isurf.errors import InvalidInput, TruncationTooShallow
from isurf.poly import PolyRing
from isurf.series import TruncatedSeries
from isurf.tsing import (QuotientGerm, RationalDoublePoint,
                         TChain, TSingularity, Unrecognized, classify_germ,
                         classification_to_json, codiscrepancy, delta_squared,
                         hj_expand, hj_value, index_two_chain, ktilde_squared,
                         recognize_tchain, tchain_from_singularity)


def test_hj_expansion_examples():
    assert hj_expand(25, 14) == [2, 5, 3]
    assert hj_expand(18, 5) == [4, 3, 2]
    assert hj_expand(2, 1) == [2]
    assert hj_expand(4, 3) == [2, 2, 2]
    assert hj_value([2, 2, 2]) == Fraction(4, 3)


def test_hj_invalid_inputs():
    with pytest.raises(InvalidInput):
        hj_expand(4, 2)
    with pytest.raises(InvalidInput):
        hj_expand(3, 3)


def test_hj_roundtrip_exhaustive():
    for p in range(2, 201):
        for q in range(1, p):
            if gcd(p, q) == 1:
                chain = hj_expand(p, q)
                assert all(b >= 2 for b in chain)
                assert hj_value(chain) == Fraction(p, q)


def test_recognition_examples():
    assert recognize_tchain([4]) == TSingularity(1, 2, 1)
    assert recognize_tchain([2, 5, 3]) == TSingularity(1, 5, 3)
    assert recognize_tchain([2, 2]) == RationalDoublePoint(2)
    assert isinstance(recognize_tchain([2, 6]), Unrecognized)
    with pytest.raises(InvalidInput):
        recognize_tchain([1, 2])


def all_t_types(bound):
    out = []
    n = 2
    while n * n <= bound:
        for d in range(1, bound // (n * n) + 1):
            for a in range(1, n):
                if gcd(a, n) == 1:
                    out.append(TSingularity(d, n, a))
        n += 1
    return out


def test_recognition_roundtrip_sweep():
    for sing in all_t_types(200):
        chain = tchain_from_singularity(sing)
        back = recognize_tchain(chain)
        assert back == sing, (sing, chain, back)


def test_codiscrepancy_examples():
    assert codiscrepancy([4]).coefficients == (Fraction(1, 2),)
    assert codiscrepancy([4, 3, 2]).coefficients == (
        Fraction(2, 3), Fraction(2, 3), Fraction(1, 3))
    assert codiscrepancy([3, 5, 2]).coefficients == (
        Fraction(3, 5), Fraction(4, 5), Fraction(2, 5))


def quadratic_form_oracle(chain, coeffs):
    """Independent evaluation of the intersection form on the chain."""
    r = len(chain)
    total = Fraction(0)
    for i in range(r):
        for j in range(r):
            if i == j:
                pairing = -chain[i]
            elif abs(i - j) == 1:
                pairing = 1
            else:
                pairing = 0
            total += coeffs[i] * coeffs[j] * pairing
    return total


def test_delta_squared_examples_via_oracle():
    for chain, expect in (([4], -1), ([3, 5, 2], -3), ([4, 3, 2], -2)):
        cd = codiscrepancy(chain)
        assert delta_squared(cd) == expect
        assert quadratic_form_oracle(chain, cd.coefficients) == expect


def test_codiscrepancy_coefficients_in_open_interval_sweep():
    for sing in all_t_types(200):
        chain = TChain.from_singularity(sing)
        cd = codiscrepancy(chain)
        assert all(0 < c < 1 for c in cd.coefficients)
        assert delta_squared(cd) == sing.d - chain.length - 1


def test_reversal_gives_conjugate_and_same_square():
    for sing in all_t_types(200):
        chain = TChain.from_singularity(sing)
        rev = chain.reversed()
        kind = recognize_tchain(rev.entries)
        assert kind == sing.conjugate()
        assert sing.same_singularity(kind)
        assert delta_squared(codiscrepancy(rev)) == delta_squared(codiscrepancy(chain))


def test_conjugation_inverts_the_weight():
    for sing in all_t_types(100):
        conj = sing.conjugate()
        assert (sing.weight * conj.weight) % sing.order == 1 % sing.order


def test_ktilde_examples():
    assert ktilde_squared([[3, 5, 2], [4]]) == -3
    assert ktilde_squared([[2, 5, 3], [4, 3, 2]]) == -4
    assert ktilde_squared([[4]]) == 0
    with pytest.raises(InvalidInput):
        ktilde_squared([[2, 6]])


def test_index_two_chain_family():
    assert index_two_chain(1) == [4]
    assert index_two_chain(2) == [3, 3]
    assert index_two_chain(3) == [3, 2, 3]
    for d in range(1, 33):
        assert recognize_tchain(index_two_chain(d)) == TSingularity(d, 2, 1)


# -- germs -------------------------------------------------------------------

R_WUT = PolyRing.of("w", "u1", "t")
R_ESZ = PolyRing.of("e", "s0", "ze")


def test_germ_index_25():
    germ = QuotientGerm(5, (3, 4, 2), TruncatedSeries.of(R_WUT.parse("u1^5 - w*t"), 10))
    got = classify_germ(germ)
    assert got.same_singularity(TSingularity(1, 5, 3))


def test_germ_index_9():
    germ = QuotientGerm(3, (1, 2, 1), TruncatedSeries.of(R_ESZ.parse("3*s0*ze + e^3"), 10))
    assert classify_germ(germ).same_singularity(TSingularity(1, 3, 2))


def test_germ_a1_trivial_group():
    ring = PolyRing.of("x", "y", "z")
    germ = QuotientGerm(1, (0, 0, 0), TruncatedSeries.of(ring.parse("x*y - z^2"), 10))
    assert classify_germ(germ) == RationalDoublePoint(1)


def test_germ_index_18_with_supplied_tail():
    f = R_ESZ.parse("e*s0 + e*ze^2 + e^2*ze + 2*e^2*s0^2 + s0^3")
    germ = QuotientGerm(3, (1, 2, 1), TruncatedSeries.of(f, 10))
    assert classify_germ(germ).same_singularity(TSingularity(2, 3, 1))


def test_germ_quarter_point_by_square_completion():
    ring = PolyRing.of("x1", "u", "z")
    f = ring.parse("z^2 - u^2 + x1^2 + x1^4")
    germ = QuotientGerm(2, (1, 1, 1), TruncatedSeries.of(f, 10))
    assert classify_germ(germ) == TSingularity(1, 2, 1)


def test_germ_invariance_under_permutation_and_units():
    base = R_WUT.parse("u1^5 - w*t + w^2*u1")
    expected = classify_germ(
        QuotientGerm(5, (3, 4, 2), TruncatedSeries.of(base, 10)))
    # permuted variables
    ring2 = PolyRing.of("t", "w", "u1")
    permuted = base.substitute({v: ring2.var(v) for v in ("w", "u1", "t")}, ring=ring2)
    got2 = classify_germ(QuotientGerm(5, (2, 3, 4), TruncatedSeries.of(permuted, 10)))
    assert got2.same_singularity(expected)
    # multiplied by a unit series (weight-0 unit: constant)
    got3 = classify_germ(QuotientGerm(5, (3, 4, 2), TruncatedSeries.of(base * 7, 10)))
    assert got3.same_singularity(expected)


def test_germ_unit_series_multiplication():
    ring = PolyRing.of("x", "y", "z")
    base = ring.parse("x*y - z^3")
    unit = ring.parse("1 + x + 2*z")
    got = classify_germ(QuotientGerm(1, (0, 0, 0),
                                     TruncatedSeries.of(base * unit, 10)))
    assert got == RationalDoublePoint(2)


def test_germ_truncation_too_shallow():
    germ = QuotientGerm(5, (3, 4, 2), TruncatedSeries.of(R_WUT.parse("-w*t"), 6))
    with pytest.raises(TruncationTooShallow):
        classify_germ(germ)


def test_germ_noninvariant_rejected():
    with pytest.raises(InvalidInput):
        QuotientGerm(5, (3, 4, 2),
                     TruncatedSeries.of(R_WUT.parse("u1^5 - w*t + w"), 10))


def test_germ_recovers_disguised_normal_forms():
    """Cover forms hidden by equivariant coordinate changes and unit factors
    still classify to the same type."""
    import random
    rng = random.Random(23)
    cases = [(1, 5, 3), (2, 3, 1), (1, 3, 2), (1, 2, 1), (3, 2, 1), (1, 4, 3)]
    for d, n, a in cases:
        dn = d * n
        ring = PolyRing.of("x", "y", "z")
        x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
        m = pow(a, -1, n)  # z^m has the weight of x
        shift = rng.randint(1, 4)
        unit_coeff = rng.randint(1, 3)
        f = (x + z ** m * shift) * y - z ** dn * (unit_coeff + 0)
        # multiply by an invariant unit: 1 + x*y has weight 0
        f = f * (ring.one() + x * y * rng.randint(-2, 2))
        order = max(10, dn + m + 3)
        germ = QuotientGerm(n, (1, n - 1, a % n), TruncatedSeries.of(f, order))
        got = classify_germ(germ)
        assert isinstance(got, TSingularity), (d, n, a, got)
        assert got.same_singularity(TSingularity(d, n, a)), (d, n, a, got)


def test_classification_json():
    assert classification_to_json(TSingularity(1, 5, 3)) == {"d": 1, "n": 5, "a": 3}
    assert classification_to_json(RationalDoublePoint(2)) == {"rdp": "A_2"}
    assert TChain.of([2, 5, 3]).to_json() == "[2, 5, 3]"

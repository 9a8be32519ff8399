from fractions import Fraction

from isurf import wps
from isurf.tsing import TSingularity


def test_resolution_fixture_counts():
    res = wps.bundled_resolution()
    assert len(res.l1) == 14 and len(res.l2) == 35
    assert res.socle == 28
    assert res.ambient_weights == (1, 1, 2, 3, 4, 4, 5, 7)


def test_resolution_alternating_rank_sum_vanishes():
    res = wps.bundled_resolution()
    ranks = (1, len(res.l1), len(res.l2), len(res.l2), len(res.l1), 1)
    assert sum(r * (-1) ** i for i, r in enumerate(ranks)) == 0


def test_series_from_resolution_equals_footnote():
    hs = wps.hilbert_series_from_resolution(wps.bundled_resolution())
    assert hs.equals(wps.footnote_series())
    coeffs = hs.coefficients(6)
    assert coeffs[1] == 2 and coeffs[2] == 4
    # independent expansion oracle: multiply the closed form out by hand
    fs = wps.footnote_series()
    assert fs.coefficients(6) == coeffs


def test_series_coefficients_oracle():
    """Brute-force expansion of 1/((1-t)^2 (1-t^2)(1-t^5)) times (1-t^10)."""
    upto = 12
    # count monomials of weighted degree k in weights (1,1,2,5), then subtract
    # the degree-10 shift
    def count(k):
        total = 0
        for a in range(k + 1):
            for b in range(k + 1 - a):
                for c in range((k - a - b) // 2 + 1):
                    rem = k - a - b - 2 * c
                    if rem >= 0 and rem % 5 == 0:
                        total += 1
        return total

    expected = [count(k) - (count(k - 10) if k >= 10 else 0)
                for k in range(upto + 1)]
    got = [int(c) for c in wps.footnote_series().coefficients(upto)]
    assert got == expected


def test_hypersurface_invariants():
    inv = wps.wps_hypersurface_invariants(51, (1, 3, 17, 25))
    assert inv.canonical_degree == 5
    assert inv.k_squared == 1
    assert [int(c) for c in inv.series.coefficients(3)] == [1, 1, 1, 2]
    inv2 = wps.wps_hypersurface_invariants(10, (1, 1, 2, 5))
    assert inv2.canonical_degree == 1 and inv2.k_squared == 1
    assert inv2.series.equals(wps.footnote_series())
    inv3 = wps.wps_hypersurface_invariants(6, (1, 1, 1, 3))
    assert inv3.canonical_degree == 0 and inv3.k_squared == 0


def test_s51_point_analysis_cases():
    assert wps.s51_point_analysis("ze", 3, 2).same_singularity(TSingularity(1, 5, 3))
    assert wps.s51_point_analysis("s0", 3, 2) == "absent"
    assert wps.s51_point_analysis("t1", 3, 2) == "absent"
    tau0 = wps.s51_point_analysis("t1", 3, 0)
    assert tau0.same_singularity(TSingularity(1, 3, 2))
    both0 = wps.s51_point_analysis("t1", 0, 0)
    assert both0.same_singularity(TSingularity(2, 3, 1))


def test_s51_equation_degree():
    eq = wps.s51_equation(3, 2, seed=0)
    assert eq.weighted_degree(wps.S51_WEIGHTS) == 51
    p50 = wps.generic_p50(0)
    assert p50.weighted_degree(wps.S51_WEIGHTS) == 50
    # the germ hypotheses: these monomials must be present
    R = wps.S51_RING
    for mono in ({"t1": 11, "s0": 1}, {"ze": 2}, {"e": 1, "t1": 8, "ze": 1},
                 {"e": 2, "t1": 16}):
        exps = [0] * 4
        for k, v in mono.items():
            exps[R.index(k)] = v
        assert p50.coefficient(tuple(exps)) != 0


def test_family_two_singularities():
    fam00 = wps.TwoSingularityFamily.of(0, 0)
    assert fam00.germ_at_y().same_singularity(TSingularity(1, 2, 1))
    assert fam00.germ_at_u().same_singularity(TSingularity(2, 3, 1))
    fam10 = wps.TwoSingularityFamily.of(1, 0)
    assert fam10.germ_at_y().same_singularity(TSingularity(1, 2, 1))
    assert fam10.germ_at_u() == "absent"
    fam01 = wps.TwoSingularityFamily.of(0, 1)
    assert fam01.germ_at_y() == "absent"
    assert fam01.germ_at_u().same_singularity(TSingularity(2, 3, 1))
    fam11 = wps.TwoSingularityFamily.of(1, 1)
    assert fam11.germ_at_y() == "absent"
    assert fam11.germ_at_u() == "absent"


def test_family_equations_shape():
    fam = wps.TwoSingularityFamily.of(Fraction(1, 2), 3)
    R = wps.FAMILY_RING
    assert fam.eq1 == R.parse("x0*y - x1^3 - 1/2*u")
    assert fam.eq2.coefficient(tuple(0 if v != "y" else 5 for v in R.variables)) == -3
    f10 = wps.generic_f10(0)
    assert f10.weighted_degree(wps.FAMILY_WEIGHTS) == 10
    y5 = tuple(5 if v == "y" else 0 for v in R.variables)
    assert f10.coefficient(y5) == 0


def test_cyclic_quotient_type():
    assert wps.cyclic_quotient_type(25, 14) == TSingularity(1, 5, 3)
    assert wps.cyclic_quotient_type(18, 5) == TSingularity(2, 3, 1)
    assert str(wps.cyclic_quotient_type(7, 3)).startswith("unrecognized")

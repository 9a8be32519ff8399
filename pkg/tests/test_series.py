import random
from fractions import Fraction

import pytest

from isurf.errors import NotSolvable
from isurf.poly import PolyRing
from isurf.series import TruncatedSeries, series_eliminate, solve_system

S = PolyRing.of("x", "y")


def test_eliminate_simple():
    g = series_eliminate(TruncatedSeries.of(S.parse("x - y^2"), 10), "x")
    assert g.poly == S.parse("y^2")


def test_eliminate_not_solvable_without_linear_unit():
    with pytest.raises(NotSolvable):
        series_eliminate(TruncatedSeries.of(S.parse("x^2 - y"), 10), "x")


def test_eliminate_backsubstitution_vanishes():
    rng = random.Random(3)
    ring = PolyRing.of("x", "y", "z")
    for _ in range(25):
        # x * unit + higher-order noise, always solvable
        noise = {}
        for _ in range(rng.randint(0, 4)):
            exps = (rng.randint(0, 2), rng.randint(0, 3), rng.randint(0, 3))
            if sum(exps) < 2:
                continue
            noise[exps] = Fraction(rng.randint(-4, 4))
        f = ring.var("x") * rng.randint(1, 5) + ring.from_terms(noise) \
            + ring.var("y") * rng.randint(-3, 3)
        series = TruncatedSeries.of(f, 8)
        try:
            g = series_eliminate(series, "x")
        except NotSolvable:
            continue
        assert series.substitute({"x": g.poly}).is_zero()
        assert g.poly.degree_in("x") == 0


def test_truncation_drops_high_order():
    s = TruncatedSeries.of(S.parse("x + y^5"), 4)
    assert s.poly == S.parse("x")
    t = s * s
    assert t.poly == S.parse("x^2")


def test_weighted_truncation():
    s = TruncatedSeries.of(S.parse("x*y + y^3"), 5, weights={"x": 3, "y": 1})
    assert s.poly == S.parse("x*y + y^3")
    s2 = TruncatedSeries.of(S.parse("x*y^2 + y^3"), 5, weights={"x": 3, "y": 1})
    assert s2.poly == S.parse("y^3")


def test_inverse_of_unit_series():
    u = TruncatedSeries.of(S.parse("2 + x + y^2"), 7)
    inv = u.inverse()
    assert (u * inv.poly).poly == S.one()


def test_solve_system_two_variables():
    ring = PolyRing.of("a", "b", "s")
    r1 = TruncatedSeries.of(ring.parse("a - s^2 + b*s"), 8)
    r2 = TruncatedSeries.of(ring.parse("b + a*s - s^3"), 8)
    sol = solve_system([r1, r2], ["a", "b"])
    for r in (r1, r2):
        assert r.substitute(sol).is_zero()
    for value in sol.values():
        assert value.degree_in("a") == 0 and value.degree_in("b") == 0

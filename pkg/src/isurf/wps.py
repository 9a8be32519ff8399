"""Weighted-projective hypersurface invariants and local analysis.

Hilbert series (from a minimal free resolution and from the hypersurface
formula), adjunction invariants, the degree-51 model in P(1,3,17,25) with
its coordinate-point germs, and the two-equation family in P(1,1,2,3,5)
interpolating between the index-2 and index-3 degenerations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import gcd
from typing import Sequence

from .errors import InvalidInput
from .poly import ExactPolynomial, PolyRing
from .rings import seeded_coefficients, weighted_monomials
from .series import TruncatedSeries
from .tsing import QuotientGerm, TSingularity, Unrecognized, classify_germ

T_RING = PolyRing.of("t")


def _t(power: int, coeff=1) -> ExactPolynomial:
    return T_RING.monomial({"t": power}, coeff)


@dataclass(frozen=True)
class HilbertSeries:
    """numerator / prod (1 - t^w) as an exact rational function."""

    numerator: ExactPolynomial
    denominator_weights: tuple[int, ...]

    def denominator(self) -> ExactPolynomial:
        out = T_RING.one()
        for w in self.denominator_weights:
            out = out * (T_RING.one() - _t(w))
        return out

    def equals(self, other: "HilbertSeries") -> bool:
        return (self.numerator * other.denominator()
                == other.numerator * self.denominator())

    def coefficients(self, upto: int) -> list[Fraction]:
        """Power-series coefficients of the rational function, degrees 0..upto."""
        den = self.denominator()
        num = {e[0]: c for e, c in self.numerator.terms.items()}
        d = {e[0]: c for e, c in den.terms.items()}
        d0 = d.get(0)
        if not d0:
            raise InvalidInput("denominator has no constant term")
        out = []
        for k in range(upto + 1):
            acc = num.get(k, Fraction(0))
            for i in range(1, k + 1):
                if i in d:
                    acc -= d[i] * out[k - i]
            out.append(acc / d0)
        return out


@dataclass(frozen=True)
class ResolutionData:
    """Betti degree lists of the length-five self-dual resolution."""

    ambient_weights: tuple[int, ...]
    socle: int
    l1: tuple[int, ...]
    l2: tuple[int, ...]

    def __post_init__(self):
        ranks = (1, len(self.l1), len(self.l2), len(self.l2), len(self.l1), 1)
        alternating = sum(r * (-1) ** i for i, r in enumerate(ranks))
        if alternating != 0:
            raise InvalidInput("alternating rank sum must vanish")


def bundled_resolution() -> ResolutionData:
    data = json.loads(resources.files("isurf.fixtures").joinpath("resolution.json").read_text())
    return ResolutionData(tuple(data["ambient_weights"]), int(data["socle"]),
                          tuple(data["L1"]), tuple(data["L2"]))


def hilbert_series_from_resolution(res: ResolutionData) -> HilbertSeries:
    """Alternating sum of the twists over the weight denominator."""
    s = res.socle
    num = T_RING.one() - _t(s)
    for d in res.l1:
        num = num - _t(d) + _t(s - d)
    for d in res.l2:
        num = num + _t(d) - _t(s - d)
    return HilbertSeries(num, res.ambient_weights)


@dataclass(frozen=True)
class HypersurfaceInvariants:
    degree: int
    weights: tuple[int, ...]
    canonical_degree: int
    k_squared: Fraction
    series: HilbertSeries


def wps_hypersurface_invariants(degree: int, weights: Sequence[int]) -> HypersurfaceInvariants:
    """Adjunction data of a quasismooth hypersurface of the given degree."""
    weights = tuple(int(w) for w in weights)
    if any(w <= 0 for w in weights):
        raise InvalidInput("weights must be positive")
    total = sum(weights)
    if degree < total:
        raise InvalidInput("degree below the adjunction threshold")
    can = degree - total
    prod = 1
    for w in weights:
        prod *= w
    k2 = Fraction(degree * can * can, prod)
    series = HilbertSeries(T_RING.one() - _t(degree), weights)
    return HypersurfaceInvariants(degree, weights, can, k2, series)


def footnote_series() -> HilbertSeries:
    """(1 - t^10) / ((1-t)^2 (1-t^2)(1-t^5))."""
    return HilbertSeries(T_RING.one() - _t(10), (1, 1, 2, 5))


# ---------------------------------------------------------------------------
# the degree-51 model in P(1, 3, 17, 25)


S51_WEIGHTS = {"e": 1, "t1": 3, "s0": 17, "ze": 25}
S51_RING = PolyRing.of("e", "t1", "s0", "ze")


def generic_p50(seed: int) -> ExactPolynomial:
    """Seeded general form of weighted degree 50 (every monomial present)."""
    monos = weighted_monomials(50, names=("e", "t1", "s0", "ze"), weights=S51_WEIGHTS)
    coeffs = seeded_coefficients(seed, "P50", len(monos))
    terms = {}
    for mono, c in zip(monos, coeffs):
        exps = [0] * 4
        for name, e in mono.items():
            exps[S51_RING.index(name)] = e
        terms[tuple(exps)] = Fraction(c)
    return S51_RING.from_terms(terms)


def s51_equation(theta, tau, seed: int = 0,
                 p50: ExactPolynomial | None = None) -> ExactPolynomial:
    """e*P50 + tau*t1^17 + theta*t1^3*s0*ze + s0^3, weighted degree 51."""
    R = S51_RING
    p = p50 if p50 is not None else generic_p50(seed)
    e, t1, s0, ze = (R.var(v) for v in ("e", "t1", "s0", "ze"))
    return e * p + t1 ** 17 * Fraction(tau) + t1 ** 3 * s0 * ze * Fraction(theta) + s0 ** 3


def cyclic_quotient_type(order: int, weight: int):
    """Identify the smooth-point quotient 1/order(1, weight) among the
    admissible types 1/(d n^2)(1, d n a - 1)."""
    weight %= order
    if gcd(weight, order) != 1:
        return Unrecognized(f"1/{order}(1,{weight}) is not isolated-cyclic here")
    n = 2
    while n * n <= order:
        if order % (n * n) == 0:
            d = order // (n * n)
            if (weight + 1) % (d * n) == 0:
                a = (weight + 1) // (d * n)
                if 0 < a < n and gcd(a, n) == 1:
                    return TSingularity(d, n, a)
        n += 1
    return Unrecognized(f"1/{order}(1,{weight}) is not of the admissible form")


def s51_point_analysis(point: str, theta, tau, seed: int = 0, order: int = 10):
    """Local type of the degree-51 model at a coordinate point of the ambient.

    point is one of "e", "t1", "s0", "ze".  Returns a classification object,
    or the string "absent" when the surface misses the point.
    """
    eq = s51_equation(theta, tau, seed)
    R = S51_RING
    others = [v for v in R.variables if v != point]
    chart = eq.substitute({point: R.one()})
    local = PolyRing.of(*others)
    f = chart.substitute({v: local.var(v) for v in others}, ring=local)
    if f.constant_term() != 0:
        return "absent"
    n = S51_WEIGHTS[point]
    action = tuple(S51_WEIGHTS[v] % n for v in others)
    # a variable with a unit linear coefficient makes the germ a smooth sheet:
    # the point is then the plain ambient quotient in the remaining variables
    for i, v in enumerate(others):
        exps = tuple(1 if j == i else 0 for j in range(3))
        if f.coefficient(exps) != 0:
            rest = [action[j] for j in range(3) if j != i]
            unit = next((u for u in (rest[0], rest[1]) if gcd(u, n) == 1), None)
            if unit is None:
                return Unrecognized("quotient weights not coprime to the order")
            inv = pow(unit, -1, n)
            a, b = sorted(((rest[0] * inv) % n, (rest[1] * inv) % n))
            if a != 1:
                a, b = b, a
            return cyclic_quotient_type(n, b)
    germ = QuotientGerm(n, action, TruncatedSeries.of(f, order))
    return classify_germ(germ)


# ---------------------------------------------------------------------------
# the two-equation family in P(1, 1, 2, 3, 5)


FAMILY_RING = PolyRing.of("x0", "x1", "y", "u", "z")
FAMILY_WEIGHTS = {"x0": 1, "x1": 1, "y": 2, "u": 3, "z": 5}


def generic_f10(seed: int) -> ExactPolynomial:
    """Seeded general degree-10 form in (x0, x1, y, u), without the pure
    y-power."""
    names = ("x0", "x1", "y", "u")
    monos = [m for m in weighted_monomials(10, names=names, weights=FAMILY_WEIGHTS)
             if m != {"y": 5}]
    coeffs = seeded_coefficients(seed, "f10", len(monos))
    terms = {}
    for mono, c in zip(monos, coeffs):
        exps = [0] * FAMILY_RING.nvars
        for name, e in mono.items():
            exps[FAMILY_RING.index(name)] = e
        terms[tuple(exps)] = Fraction(c)
    return FAMILY_RING.from_terms(terms)


@dataclass(frozen=True)
class TwoSingularityFamily:
    """x0 y = x1^3 + mu u  and  z^2 = nu y^5 + f10(x0, x1, y, u)."""

    mu: Fraction
    nu: Fraction
    eq1: ExactPolynomial
    eq2: ExactPolynomial

    @staticmethod
    def of(mu, nu, seed: int = 0) -> "TwoSingularityFamily":
        R = FAMILY_RING
        mu, nu = Fraction(mu), Fraction(nu)
        eq1 = R.var("x0") * R.var("y") - R.var("x1") ** 3 - R.var("u") * mu
        eq2 = R.var("z") ** 2 - R.var("y") ** 5 * nu - generic_f10(seed)
        return TwoSingularityFamily(mu, nu, eq1, eq2)

    def germ_at_y(self, order: int = 10):
        """Eliminate x0 with the first equation on the y-chart; classify the
        second in 1/2(1,1,1) on (x1, u, z)."""
        return _family_germ(self, chart="y", solve=("eq1", "x0"), germ="eq2",
                            local=("x1", "u", "z"), order=order)

    def germ_at_u(self, order: int = 10):
        """Eliminate x1 with the second equation on the u-chart; classify the
        first in 1/3(1,2,2) on (x0, y, z)."""
        return _family_germ(self, chart="u", solve=("eq2", "x1"), germ="eq1",
                            local=("x0", "y", "z"), order=order)


def _family_germ(fam: TwoSingularityFamily, chart: str, solve: tuple[str, str],
                 germ: str, local: tuple[str, ...], order: int):
    from .series import solve_system

    R = FAMILY_RING
    eqs = {"eq1": fam.eq1, "eq2": fam.eq2}
    at = {k: v.substitute({chart: R.one()}) for k, v in eqs.items()}
    solve_eq, solve_var = solve
    if at[germ].constant_term() != 0 or at[solve_eq].constant_term() != 0:
        return "absent"
    solution = solve_system([TruncatedSeries.of(at[solve_eq], order)], [solve_var], order)
    value = TruncatedSeries.of(at[germ], order).substitute(solution)
    local_ring = PolyRing.of(*local)
    restricted = value.poly.substitute({v: local_ring.var(v) for v in local}, ring=local_ring)
    n = FAMILY_WEIGHTS[chart]
    action = tuple(FAMILY_WEIGHTS[v] % n for v in local)
    return classify_germ(QuotientGerm(n, action, TruncatedSeries.of(restricted, order)))

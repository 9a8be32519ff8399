"""Truncated multivariate power series and implicit-function elimination.

A ``TruncatedSeries`` wraps an ExactPolynomial together with a truncation
order: terms of (weighted) degree >= order are discarded after every
operation.  ``series_eliminate`` solves f = 0 for one variable by Newton
iteration when the linear coefficient is a unit; ``solve_system`` does the
same for several variables at once (diagonal-unit Jacobian).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NotSolvable
from .poly import ExactPolynomial, PolyRing

DEFAULT_ORDER = 10


def _truncate_poly(p: ExactPolynomial, order: int, weights: Mapping[str, int]) -> ExactPolynomial:
    w = [weights.get(name, 1) for name in p.ring.variables]
    terms = {
        exps: c
        for exps, c in p.terms.items()
        if sum(wi * e for wi, e in zip(w, exps)) < order
    }
    return ExactPolynomial(p.ring, terms)


@dataclass(frozen=True)
class TruncatedSeries:
    """A polynomial known modulo terms of weighted degree >= order."""

    poly: ExactPolynomial
    order: int
    weights: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "poly", _truncate_poly(self.poly, self.order, dict(self.weights)))

    @staticmethod
    def of(poly: ExactPolynomial, order: int = DEFAULT_ORDER,
           weights: Mapping[str, int] | None = None) -> "TruncatedSeries":
        return TruncatedSeries(poly, order, tuple(sorted((weights or {}).items())))

    @property
    def ring(self) -> PolyRing:
        return self.poly.ring

    def weight_map(self) -> dict[str, int]:
        return dict(self.weights)

    def _wrap(self, poly: ExactPolynomial) -> "TruncatedSeries":
        return TruncatedSeries(poly, self.order, self.weights)

    def __add__(self, other):
        other_poly = other.poly if isinstance(other, TruncatedSeries) else other
        return self._wrap(self.poly + other_poly)

    def __sub__(self, other):
        other_poly = other.poly if isinstance(other, TruncatedSeries) else other
        return self._wrap(self.poly - other_poly)

    def __mul__(self, other):
        other_poly = other.poly if isinstance(other, TruncatedSeries) else other
        return self._wrap(self.poly * other_poly)

    def __neg__(self):
        return self._wrap(-self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def constant_term(self) -> Fraction:
        return self.poly.constant_term()

    def substitute(self, assignment: Mapping[str, ExactPolynomial]) -> "TruncatedSeries":
        # substitute term by term so truncation keeps intermediate sizes down
        result = self.ring.zero()
        cache: dict[tuple[int, int], ExactPolynomial] = {}
        weights = self.weight_map()
        images = {}
        for i, name in enumerate(self.ring.variables):
            img = assignment.get(name)
            images[i] = img if img is not None else self.ring.var(name)

        def power(i: int, e: int) -> ExactPolynomial:
            key = (i, e)
            if key not in cache:
                if e == 1:
                    cache[key] = images[i]
                else:
                    half = power(i, e // 2)
                    p = _truncate_poly(half * half, self.order, weights)
                    if e % 2:
                        p = _truncate_poly(p * images[i], self.order, weights)
                    cache[key] = p
            return cache[key]

        for exps, c in self.poly.terms.items():
            term = self.ring.constant(c)
            for i, e in enumerate(exps):
                if e:
                    term = _truncate_poly(term * power(i, e), self.order, weights)
                    if term.is_zero():
                        break
            result = result + term
        return self._wrap(result)

    def inverse(self) -> "TruncatedSeries":
        """Inverse of a unit series (nonzero constant term)."""
        c0 = self.poly.constant_term()
        if c0 == 0:
            raise NotSolvable("series has no constant term, not a unit")
        # u = c0 (1 + m)  =>  1/u = (1/c0) sum (-m)^k
        m = self._wrap(self.poly * (Fraction(1) / c0) - self.ring.one())
        acc = self._wrap(self.ring.one())
        powm = self._wrap(self.ring.one())
        for _ in range(1, self.order + 1):
            powm = powm * (-m.poly)
            if powm.is_zero():
                break
            acc = acc + powm
        return acc * (Fraction(1) / c0)

    def __str__(self):
        return f"{self.poly} + O({self.order})"


def series_eliminate(f: TruncatedSeries, var: str, order: int | None = None) -> TruncatedSeries:
    """Solve f = 0 for ``var``; returns the series g with f(var=g) = 0 mod order.

    Requires the linear coefficient of ``var`` to be a unit series in the
    remaining variables (NotSolvable otherwise).
    """
    order = order if order is not None else f.order
    weights = f.weight_map()
    f = TruncatedSeries(f.poly, order, f.weights)
    ring = f.ring
    by_deg = f.poly.coefficients_in(var)
    lin = by_deg.get(1, ring.zero())
    if lin.constant_term() == 0:
        raise NotSolvable(f"coefficient of {var} is not a unit series")
    g = TruncatedSeries(ring.zero(), order, f.weights)
    fprime = f.poly.derivative(var)
    for _ in range(order + 2):
        fg = f.substitute({var: g.poly})
        if fg.is_zero():
            return g
        deriv = TruncatedSeries(fprime, order, f.weights).substitute({var: g.poly})
        g = g - fg * deriv.inverse().poly
    fg = f.substitute({var: g.poly})
    if not fg.is_zero():
        raise NotSolvable(f"Newton iteration for {var} did not converge")
    return g


def solve_system(relations: Sequence[TruncatedSeries], variables: Sequence[str],
                 order: int | None = None) -> dict[str, ExactPolynomial]:
    """Solve relations[i] = 0 for variables[i] jointly, as series in the rest.

    Each relation must be a unit times its variable plus higher-order terms
    (diagonal-unit Jacobian at the origin); Gauss-Seidel sweeps then converge
    order by order.
    """
    if len(relations) != len(variables):
        raise ValueError("need one relation per variable")
    if not relations:
        return {}
    order = order if order is not None else relations[0].order
    weights = relations[0].weight_map()
    ring = relations[0].ring
    rels = [TruncatedSeries(r.poly, order, relations[0].weights) for r in relations]
    for r, v in zip(rels, variables):
        lin = r.poly.coefficients_in(v).get(1, ring.zero())
        if lin.constant_term() == 0:
            raise NotSolvable(f"relation is not linear-unit in {v}")
    # solutions only ever involve the unsolved variables: every residual is
    # computed with the full current assignment substituted in
    sol = {v: ring.zero() for v in variables}
    derivs = [r.poly.derivative(v) for r, v in zip(rels, variables)]
    for _ in range(order + 2):
        done = True
        for i, v in enumerate(variables):
            current = dict(sol)
            res = rels[i].substitute(current)
            if res.is_zero():
                continue
            done = False
            dv = TruncatedSeries(derivs[i], order, rels[i].weights).substitute(current)
            update = res * dv.inverse().poly
            sol[v] = _truncate_poly(sol[v] - update.poly, order, weights)
        if done:
            return sol
    raise NotSolvable("system iteration did not converge")

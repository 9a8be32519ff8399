"""Cox presentations, toric blowups, multidegrees, the relative-sextic
normal form of the elliptic surface, and the collapse onto weighted
projective space."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InconsistentRow, InvalidInput, NotHomogeneous, RankDeficient
from .lattice import IntegerMatrix, gale_rays as _gale_rays
from .poly import ExactPolynomial, PolyRing


@dataclass(frozen=True)
class CoxPresentation:
    """Variables, grading rows, and the components of the irrelevant ideal."""

    ring: PolyRing
    weights: IntegerMatrix
    irrelevant: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if self.weights.ncols != self.ring.nvars:
            raise InvalidInput("one weight column per variable required")
        if self.weights.rank() != self.weights.nrows:
            raise RankDeficient("weight matrix must have full row rank")
        for component in self.irrelevant:
            if not component:
                raise InvalidInput("irrelevant components must be nonempty")
            for name in component:
                if name not in self.ring.variables:
                    raise InvalidInput(f"unknown variable {name!r} in irrelevant ideal")

    @staticmethod
    def of(variables: Sequence[str], weights: Sequence[Sequence[int]],
           irrelevant: Sequence[Sequence[str]]) -> "CoxPresentation":
        return CoxPresentation(
            PolyRing.of(*variables),
            IntegerMatrix.of(weights),
            tuple(tuple(c) for c in irrelevant),
        )

    def degree_of_variable(self, name: str) -> tuple[int, ...]:
        return self.weights.column(self.ring.index(name))

    def to_json(self) -> str:
        return json.dumps({
            "vars": list(self.ring.variables),
            "weights": [list(r) for r in self.weights.rows],
            "irrelevant": [list(c) for c in self.irrelevant],
        })

    @staticmethod
    def from_json(text: str) -> "CoxPresentation":
        data = json.loads(text)
        return CoxPresentation.of(data["vars"], data["weights"], data["irrelevant"])


def multidegree(f: ExactPolynomial, cox: CoxPresentation | IntegerMatrix) -> tuple[int, ...]:
    """Common degree vector of all terms of f under the grading rows."""
    weights = cox.weights if isinstance(cox, CoxPresentation) else cox
    if f.is_zero():
        raise InvalidInput("the zero polynomial has no multidegree")
    degrees = {}
    for exps in f.terms:
        deg = tuple(sum(w * e for w, e in zip(row, exps)) for row in weights.rows)
        degrees.setdefault(deg, exps)
    if len(degrees) > 1:
        two = list(degrees.values())[:2]
        raise NotHomogeneous("polynomial is not multihomogeneous", tuple(two))
    return next(iter(degrees))


def gale_rays(cox: CoxPresentation) -> dict[str, tuple[int, ...]]:
    """Primitive ray generators, one per variable (see lattice.gale_rays)."""
    rays = _gale_rays(cox.weights)
    return dict(zip(cox.ring.variables, rays))


def toric_blowup(cox: CoxPresentation, new_var: str, new_row: Sequence[int],
                 new_irrelevant: Sequence[Sequence[str]]) -> CoxPresentation:
    """Extend a presentation by one variable and one grading row.

    The new row lists nonnegative multiplicities on the old variables (the
    centre of the blowup) and -1 on the new variable, encoding the ray
    relation v_new = sum(multiplicity_i * v_i).
    """
    new_row = tuple(int(x) for x in new_row)
    if len(new_row) != cox.ring.nvars + 1:
        raise InconsistentRow("row length must cover the old variables plus the new one")
    if new_row[-1] != -1:
        raise InconsistentRow("the new variable's entry must be -1")
    old_part = new_row[:-1]
    if any(x < 0 for x in old_part) or not any(old_part):
        raise InconsistentRow("centre multiplicities must be nonnegative and not all zero")
    if new_var in cox.ring.variables:
        raise InconsistentRow(f"variable {new_var!r} already present")
    variables = cox.ring.variables + (new_var,)
    rows = [tuple(r) + (0,) for r in cox.weights.rows] + [new_row]
    return CoxPresentation.of(variables, rows, new_irrelevant)


def blowup_transform(f: ExactPolynomial, substitution: Mapping[str, ExactPolynomial],
                     exceptional: ExactPolynomial) -> ExactPolynomial:
    """Strict transform: pull back along the substitution, divide exactly."""
    target = exceptional.ring
    pullback = f.substitute(substitution, ring=target)
    return pullback.exact_divide(exceptional)


# ---------------------------------------------------------------------------
# bundled presentations (shipped as fixture data)


def _load_toric_fixture() -> dict:
    from importlib import resources

    return json.loads(resources.files("isurf.fixtures").joinpath("toric.json").read_text())


_TORIC = _load_toric_fixture()

F_PRESENTATION = CoxPresentation.of(**{
    "variables": _TORIC["base"]["vars"],
    "weights": _TORIC["base"]["weights"],
    "irrelevant": _TORIC["base"]["irrelevant"],
})
FTILDE_PRESENTATION = CoxPresentation.of(**{
    "variables": _TORIC["double_blowup"]["vars"],
    "weights": _TORIC["double_blowup"]["weights"],
    "irrelevant": _TORIC["double_blowup"]["irrelevant"],
})
F_VARS = F_PRESENTATION.ring.variables
FTILDE_VARS = FTILDE_PRESENTATION.ring.variables
FTILDE_IRRELEVANT = FTILDE_PRESENTATION.irrelevant

# the same grading after the unimodular change that sends s1, t0, c, e to the
# standard basis; under it the last row reads off weighted-projective degrees
SHIFTED_WEIGHTS = IntegerMatrix.of(_TORIC["shifted_weights"])

WPS_WEIGHTS = {"e": 1, "t1": 3, "s0": 17, "ze": 25}


def intermediate_irrelevant() -> tuple[tuple[str, ...], ...]:
    """Irrelevant components for the single-blowup presentation (no e)."""
    return tuple(c for c in FTILDE_IRRELEVANT if "e" not in c)


def wps_collapse(f: ExactPolynomial) -> ExactPolynomial:
    """Contract the three exceptional directions: set s1 = t0 = c = 1.

    The image lives in the weighted ring on (e, t1, s0, ze) with weights
    (1, 3, 17, 25); any further variables of f (parameters) are carried
    along unchanged.
    """
    dropped = {"s1", "t0", "c"}
    keep = [v for v in f.ring.variables if v not in dropped]
    target = PolyRing(tuple(keep), f.ring.invertible & frozenset(keep))
    ones = {name: target.one() for name in dropped if name in f.ring.variables}
    return f.substitute(ones, ring=target)


# ---------------------------------------------------------------------------
# the elliptic-surface normal form


@dataclass(frozen=True)
class WeierstrassModel:
    """Relative sextic z^2 = s0^3 + j s0^2 s1^2 + k s0 s1^4 + l s1^6.

    ``j``, ``k``, ``l`` are homogeneous in (t0, t1) of degrees 6, 12, 18.
    After normalisation the model is stored through k1 (degree 11), l1
    (degree 16) and the parameters eps, theta, tau; ``theta`` is the
    coefficient in the displayed form (ze - theta t1^3 s0 s1) ze = rhs.
    """

    ring: PolyRing
    j: ExactPolynomial
    k: ExactPolynomial
    l: ExactPolynomial

    def __post_init__(self):
        for poly, deg in ((self.j, 6), (self.k, 12), (self.l, 18)):
            if not poly.is_zero():
                d = poly.weighted_degree({"t0": 1, "t1": 1})
                if d != deg:
                    raise InvalidInput(f"coefficient degree {d}, expected {deg}")

    def equation(self) -> ExactPolynomial:
        """rhs - lhs of the double cover equation, in the five Cox variables."""
        R = self.ring
        s0, s1, ze = R.var("s0"), R.var("s1"), R.var("ze")
        rhs = s0 ** 3 + self.j.cast(R) * s0 ** 2 * s1 ** 2 \
            + self.k.cast(R) * s0 * s1 ** 4 + self.l.cast(R) * s1 ** 6
        return rhs - ze ** 2


def discriminant(k: ExactPolynomial, l: ExactPolynomial) -> ExactPolynomial:
    """4 k^3 + 27 l^2, homogeneous of degree 36 when k, l have degrees 12, 18."""
    return k ** 3 * 4 + l ** 2 * 27


def fiber_type(theta, tau) -> dict:
    """Special-fiber type from the vanishing pattern of the two parameters.

    For the last two entries the surface itself is singular and the stated
    type is that of the fiber on the minimal resolution (note field).
    """
    theta_zero = (theta == 0)
    tau_zero = (tau == 0)
    if not theta_zero and not tau_zero:
        return {"type": "I1", "note": ""}
    if theta_zero and not tau_zero:
        return {"type": "II", "note": ""}
    resolved = "after resolving the A1 point of the surface"
    if not theta_zero and tau_zero:
        return {"type": "I2", "note": resolved}
    return {"type": "III", "note": resolved}


@dataclass(frozen=True)
class NormalizedModel:
    """(ze - theta t1^3 s0 s1) ze = s0^3 + t0 k1 s0 s1^4 + t0 (t0 l1 + tau t1^17) s1^6."""

    ring: PolyRing
    k1: ExactPolynomial
    l1: ExactPolynomial
    eps: Fraction
    theta: ExactPolynomial
    tau: Fraction
    steps: tuple[str, ...]

    def equation(self) -> ExactPolynomial:
        R = self.ring
        t0, t1, s0, s1, ze = (R.var(v) for v in ("t0", "t1", "s0", "s1", "ze"))
        rhs = s0 ** 3 + t0 * self.k1.cast(R) * s0 * s1 ** 4 \
            + t0 * (t0 * self.l1.cast(R) + t1 ** 17 * self.tau) * s1 ** 6
        return rhs - (ze - self.theta.cast(R) * t1 ** 3 * s0 * s1) * ze


def weierstrass_normalize(model: WeierstrassModel) -> NormalizedModel:
    """Absorb j, centre the singular fiber over t0 = 0, shift the cover variable.

    Steps, each an exact substitution into the running equation:
      1. s0 -> s0 - (1/3) j s1^2 removes the s0^2 term;
      2. with alpha, beta the pure-t1 coefficients of k, l, solve
         alpha = -3 eps^2, beta = 2 eps^3 and shift s0 -> s0 + eps t1^6 s1^2,
         making the s0-coefficient divisible by t0;
      3. shift ze by half the remaining cross term: the displayed parameter
         theta satisfies theta^2 = 12 eps (a formal square root when 12 eps
         is not a rational square, carried as a parameter with the rewrite
         rule theta^2 -> 12 eps).
    """
    R = model.ring
    t_ring = model.k.ring
    steps = []
    s0, s1 = R.var("s0"), R.var("s1")
    if model.equation().coefficient(_exps(R, {"s0": 3})) == 0:
        raise InvalidInput("the s0^3 coefficient must be nonzero")
    # step 1: remove the s0^2 coefficient
    shift1 = {"s0": s0 - model.j.cast(R) * s1 ** 2 * Fraction(1, 3)}
    eq = model.equation().substitute(shift1)
    k = _coefficient_of(eq, {"s0": 1, "s1": 4}, t_ring)
    l = _coefficient_of(eq, {"s0": 0, "s1": 6}, t_ring)
    assert _coefficient_of(eq, {"s0": 2, "s1": 2}, t_ring).is_zero()
    steps.append("removed the s0^2 s1^2 term")
    # step 2: centre the singular fiber over t0 = 0
    alpha = k.coefficient(_pure_t1(t_ring, 12))
    beta = l.coefficient(_pure_t1(t_ring, 18))
    if alpha == 0 and beta == 0:
        eps = Fraction(0)
    elif alpha != 0:
        eps = -3 * beta / (2 * alpha)
    else:
        eps = None
    if eps is None or alpha != -3 * eps ** 2 or beta != 2 * eps ** 3:
        raise InvalidInput(
            "fiber over t0=0 is not singular: no eps with alpha=-3eps^2, beta=2eps^3")
    shift2 = {"s0": s0 + R.var("t1") ** 6 * s1 ** 2 * eps}
    eq = eq.substitute(shift2)
    steps.append(f"centred the node with eps = {eps}")
    # step 3: shift the cover variable; displayed parameter theta^2 = 12 eps
    twelve_eps = 12 * eps
    root = _rational_sqrt(twelve_eps)
    if root is not None:
        ext = R
        theta = R.constant(root)
        formal = False
    else:
        ext = R.extend("theta")
        theta = ext.var("theta")
        eq = eq.cast(ext)
        formal = True
        steps.append("theta is formal with rewrite rule theta^2 = 12*eps")
    ze = ext.var("ze")
    half = theta * ext.var("t1") ** 3 * ext.var("s0") * ext.var("s1") * Fraction(1, 2)
    eq = eq.substitute({"ze": ze - half})
    if formal:
        eq = reduce_square(eq, "theta", ext.constant(twelve_eps))
    steps.append("moved the t1^6 s0^2 s1^2 term into the cover variable")
    # read off k1, l1, tau from the final equation
    kk = _coefficient_of(eq, {"s0": 1, "s1": 4}, t_ring)
    ll = _coefficient_of(eq, {"s0": 0, "s1": 6}, t_ring)
    k1 = kk.exact_divide(t_ring.var("t0"))
    tau = ll.coefficient(_exps(t_ring, {"t0": 1, "t1": 17}))
    l1 = (ll - t_ring.monomial({"t0": 1, "t1": 17}, tau)).exact_divide(t_ring.var("t0") ** 2)
    out = NormalizedModel(ext, k1, l1, eps, theta, tau, tuple(steps))
    # exact verification: the transformed equation is the displayed normal form
    check = out.equation()
    if formal:
        check = reduce_square(check, "theta", ext.constant(twelve_eps))
    assert eq == check, "normalisation did not reach the displayed form"
    return out


def reduce_square(p: ExactPolynomial, name: str, square_value: ExactPolynomial) -> ExactPolynomial:
    """Apply the rewrite rule name^2 -> square_value exhaustively."""
    ring = p.ring
    i = ring.index(name)
    out = ring.zero()
    for exps, c in p.terms.items():
        e = exps[i]
        rest = list(exps)
        rest[i] = e % 2
        term = ExactPolynomial(ring, {tuple(rest): c}) * square_value ** (e // 2)
        out = out + term
    return out


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    from math import isqrt

    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _exps(ring: PolyRing, powers: Mapping[str, int]) -> tuple[int, ...]:
    out = [0] * ring.nvars
    for name, e in powers.items():
        out[ring.index(name)] = e
    return tuple(out)


def _pure_t1(ring: PolyRing, e: int) -> tuple[int, ...]:
    return _exps(ring, {"t1": e})


def _coefficient_of(eq: ExactPolynomial, fiber_powers: Mapping[str, int],
                    t_ring: PolyRing | None) -> ExactPolynomial:
    """Coefficient of the exact (s0, s1, ze)-monomial given by fiber_powers,
    cast into ``t_ring`` when provided."""
    ring = eq.ring
    fiber = {"s0": 0, "s1": 0, "ze": 0}
    fiber.update(fiber_powers)
    idx = {ring.index(name): e for name, e in fiber.items()}
    collected = {}
    for exps, c in eq.terms.items():
        if all(exps[i] == e for i, e in idx.items()):
            rest = list(exps)
            for i in idx:
                rest[i] = 0
            collected[tuple(rest)] = c
    partial = ExactPolynomial(ring, collected)
    if t_ring is None:
        return partial
    for name in ring.variables:
        if name not in t_ring.variables and partial.degree_in(name) != 0:
            raise InvalidInput(f"coefficient unexpectedly involves {name}")
    return partial.substitute({n: t_ring.var(n) for n in t_ring.variables
                               if n in ring.variables}, ring=t_ring)

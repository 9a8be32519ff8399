"""Canonical-ring machinery for the index-5 surface.

Generators of the multigraded ring from the lattice cone, binomial
verification, derivation of the non-binomial relations by excess-monomial
rewriting, skew-format certificates, the one-parameter smoothing
elimination, and local chart germs.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence

from .errors import (CertificateFailed, InvalidInput, NotDivisible,
                     NotFactorable, NotInvertible, NotLinear)
from .lattice import IntegerMatrix, LatticeCone, hilbert_basis
from .poly import ExactPolynomial, PolyRing
from .series import TruncatedSeries, solve_system
from .skew import SkewMatrix
from .tsing import QuotientGerm, classify_germ
from . import toric


def _fixture(name: str) -> dict:
    text = resources.files("isurf.fixtures").joinpath(name).read_text()
    return json.loads(text)


_GEN = _fixture("generators.json")
_REL = _fixture("relations.json")

AMBIENT_VARS = tuple(_GEN["ambient"])
AMBIENT_GRADING = IntegerMatrix.of(_GEN["grading"])
CANONICAL_RAY = tuple(_GEN["ray"])
GENERATOR_ORDER = tuple(entry[0] for entry in _GEN["generators"])
GENERATOR_VECTORS = {entry[0]: tuple(entry[1]) for entry in _GEN["generators"]}
GENERATOR_DEGREES = {k: int(v) for k, v in _REL["generator_degrees"].items()}


def ambient_ring(*params: str) -> PolyRing:
    return PolyRing.of(*AMBIENT_VARS, *params)


def generator_ring(*params: str, with_p: bool = True) -> PolyRing:
    names = list(GENERATOR_ORDER)
    if with_p:
        names.append("P")
    return PolyRing.of(*names, *params)


def canonical_degree(vec: Sequence[int]) -> int:
    """Multiple of the canonical ray hit by the grading of an exponent vector."""
    image = AMBIENT_GRADING.mul_vec(vec)
    k, rem = divmod(image[-1], CANONICAL_RAY[-1])
    if rem or image != tuple(k * r for r in CANONICAL_RAY):
        raise InvalidInput(f"{vec} is not graded along the canonical ray")
    return k


@dataclass(frozen=True)
class GeneratorTable:
    """Named generators with exponent vectors and canonical degrees."""

    entries: tuple[tuple[str, tuple[int, ...], int], ...]
    extras: tuple[tuple[int, ...], ...] = ()

    def vector(self, name: str) -> tuple[int, ...]:
        for n, v, _ in self.entries:
            if n == name:
                return v
        raise KeyError(name)

    def degree(self, name: str) -> int:
        for n, _, d in self.entries:
            if n == name:
                return d
        raise KeyError(name)

    def monomial(self, name: str, ring: PolyRing) -> ExactPolynomial:
        return ring.from_terms({_pad(self.vector(name), ring): Fraction(1)})

    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _, _ in self.entries)


def _pad(vec: Sequence[int], ring: PolyRing) -> tuple[int, ...]:
    out = [0] * ring.nvars
    for name, e in zip(AMBIENT_VARS, vec):
        out[ring.index(name)] = e
    return tuple(out)


def expected_generator_table() -> GeneratorTable:
    return GeneratorTable(tuple(
        (name, tuple(vec), int(deg)) for name, vec, deg in _GEN["generators"]))


def canonical_generators() -> GeneratorTable:
    """Hilbert basis of the graded cone, matched against the expected table.

    Unexpected basis elements are reported in ``extras`` instead of being
    dropped silently.
    """
    cone = LatticeCone.ray_preimage(AMBIENT_GRADING, CANONICAL_RAY)
    basis = hilbert_basis(cone)
    known = {tuple(v): n for n, v in GENERATOR_VECTORS.items()}
    entries = []
    extras = []
    for vec in basis:
        if vec in known:
            entries.append((known[vec], vec, canonical_degree(vec)))
        else:
            extras.append(vec)
    order = {name: i for i, name in enumerate(GENERATOR_ORDER)}
    entries.sort(key=lambda e: order[e[0]])
    return GeneratorTable(tuple(entries), tuple(extras))


# ---------------------------------------------------------------------------
# the surface equation and its push-down to the root extension


def seeded_coefficients(seed: int, tag: str, count: int) -> list[int]:
    """Reproducible nonzero small integers for 'general' polynomials."""
    rng = random.Random(f"{seed}:{tag}")
    out = []
    for _ in range(count):
        value = rng.randint(1, 9) * rng.choice((1, -1))
        out.append(value)
    return out


def seeded_binary_form(ring: PolyRing, x: str, y: str, degree: int,
                       seed: int, tag: str) -> ExactPolynomial:
    coeffs = seeded_coefficients(seed, tag, degree + 1)
    terms = {}
    for i, c in enumerate(coeffs):
        exps = [0] * ring.nvars
        exps[ring.index(x)] = i
        exps[ring.index(y)] = degree - i
        terms[tuple(exps)] = Fraction(c)
    return ring.from_terms(terms)


def double_blowup_equation(seed: int = 0) -> ExactPolynomial:
    """The proper transform of the relative sextic after the two blowups,
    oriented as rhs - lhs, over Q[t0,t1,s1,s0,ze,c,e,theta,tau].

    k1 and l1 are seeded general binary forms of degrees 11 and 16 evaluated
    at (c^2 e^3 t0, t1).
    """
    R = PolyRing.of(*toric.FTILDE_VARS, "theta", "tau")
    t0, t1, s1, s0, ze = (R.var(v) for v in ("t0", "t1", "s1", "s0", "ze"))
    c, e, theta, tau = (R.var(v) for v in ("c", "e", "theta", "tau"))
    arg = c ** 2 * e ** 3 * t0
    k1 = _binary_form_at(R, arg, t1, 11, seed, "k11")
    l1 = _binary_form_at(R, arg, t1, 16, seed, "l16")
    rhs = c * s0 ** 3 + c * e * t0 * k1 * s0 * s1 ** 4 \
        + t0 * (c ** 2 * e ** 3 * t0 * l1 + tau * t1 ** 17) * s1 ** 6
    lhs = (e * ze - theta * t1 ** 3 * s0 * s1) * ze
    return rhs - lhs


def parent_equation(seed: int = 0) -> ExactPolynomial:
    """The relative sextic before blowing up (rhs - lhs), five Cox variables."""
    R = PolyRing.of(*toric.F_VARS, "theta", "tau")
    t0, t1, s1, s0, ze = (R.var(v) for v in toric.F_VARS)
    theta, tau = R.var("theta"), R.var("tau")
    k1 = _binary_form_at(R, t0, t1, 11, seed, "k11")
    l1 = _binary_form_at(R, t0, t1, 16, seed, "l16")
    rhs = s0 ** 3 + t0 * k1 * s0 * s1 ** 4 + t0 * (t0 * l1 + tau * t1 ** 17) * s1 ** 6
    lhs = (ze - theta * t1 ** 3 * s0 * s1) * ze
    return rhs - lhs


def _binary_form_at(ring: PolyRing, x: ExactPolynomial, y: ExactPolynomial,
                    degree: int, seed: int, tag: str) -> ExactPolynomial:
    coeffs = seeded_coefficients(seed, tag, degree + 1)
    total = ring.zero()
    for i, cf in enumerate(coeffs):
        total = total + x ** i * y ** (degree - i) * cf
    return total


def ambient_surface_equation(seed: int = 0) -> ExactPolynomial:
    """The double-blowup equation pushed into the fifth-root extension:
    s1 -> al^5, t0 -> be^5, c -> ga^5."""
    eq = double_blowup_equation(seed)
    R = ambient_ring("theta", "tau")
    return eq.substitute(
        {"s1": R.var("al") ** 5, "t0": R.var("be") ** 5, "c": R.var("ga") ** 5},
        ring=R,
    )


# ---------------------------------------------------------------------------
# monomial factorisation over the generator monoid


def factor_over_generators(vec: Sequence[int], table: GeneratorTable | None = None
                           ) -> dict[str, int] | None:
    """Deterministic factorisation of an ambient exponent vector as a product
    of generator monomials: depth-first over generators in declared order,
    indices non-decreasing along a factorisation."""
    table = table or expected_generator_table()
    gens = [(name, table.vector(name)) for name in table.names()]
    memo: dict[tuple[tuple[int, ...], int], dict[str, int] | None] = {}

    def go(rest: tuple[int, ...], start: int) -> dict[str, int] | None:
        if not any(rest):
            return {}
        key = (rest, start)
        if key in memo:
            return memo[key]
        result = None
        for idx in range(start, len(gens)):
            name, gvec = gens[idx]
            if all(r >= g for r, g in zip(rest, gvec)):
                sub = go(tuple(r - g for r, g in zip(rest, gvec)), idx)
                if sub is not None:
                    result = dict(sub)
                    result[name] = result.get(name, 0) + 1
                    break
        memo[key] = result
        return result

    return go(tuple(vec), 0)


def derive_relation(surface_eq: ExactPolynomial, excess: Mapping[str, int] | ExactPolynomial,
                    table: GeneratorTable | None = None) -> ExactPolynomial:
    """Multiply the surface equation by an excess monomial and rewrite every
    term as a product of ring generators.

    Terms divisible by the lead generator (the one matching excess times the
    ze^2 term) are bundled through it, reproducing the convention that most
    terms are wrapped into the general degree-10 element.
    """
    table = table or expected_generator_table()
    ring = surface_eq.ring
    if isinstance(excess, ExactPolynomial):
        if len(excess.terms) != 1:
            raise InvalidInput("excess must be a monomial")
        (excess_vec_full, coeff), = excess.terms.items()
        if coeff != 1:
            raise InvalidInput("excess must be monic")
    else:
        excess_vec_full = _pad_powers(ring, excess)
    product = surface_eq * ExactPolynomial(ring, {excess_vec_full: Fraction(1)})
    core_idx = [ring.index(v) for v in AMBIENT_VARS]
    param_idx = [i for i in range(ring.nvars) if i not in core_idx]
    lead = _detect_lead(surface_eq, excess_vec_full, table, ring)
    out_ring = generator_ring(*(ring.variables[i] for i in param_idx), with_p=False)
    out = out_ring.zero()
    lead_vec = table.vector(lead) if lead else None
    for exps, coeff in product.terms.items():
        core = tuple(exps[i] for i in core_idx)
        params = {ring.variables[i]: exps[i] for i in param_idx if exps[i]}
        pieces: dict[str, int] = {}
        if lead_vec is not None and all(a >= b for a, b in zip(core, lead_vec)):
            pieces[lead] = 1
            core = tuple(a - b for a, b in zip(core, lead_vec))
        factored = factor_over_generators(core, table)
        if factored is None:
            raise NotFactorable(
                f"monomial {core} does not factor over the generators", core)
        for name, mult in factored.items():
            pieces[name] = pieces.get(name, 0) + mult
        pieces.update(params)
        out = out + out_ring.monomial(pieces, coeff)
    return out


def _pad_powers(ring: PolyRing, powers: Mapping[str, int]) -> tuple[int, ...]:
    out = [0] * ring.nvars
    for name, e in powers.items():
        out[ring.index(name)] = e
    return tuple(out)


def _detect_lead(surface_eq: ExactPolynomial, excess_vec: tuple[int, ...],
                 table: GeneratorTable, ring: PolyRing) -> str | None:
    ze_i = ring.index("ze")
    ze_monos = [e for e in surface_eq.terms if e[ze_i] == 2]
    if len(ze_monos) != 1:
        return None
    core_idx = [ring.index(v) for v in AMBIENT_VARS]
    combined = tuple(excess_vec[i] + ze_monos[0][i] for i in core_idx)
    target = tuple(a - b for a, b in zip(combined, _pad_core("ze", 2)))
    for name in table.names():
        if table.vector(name) == target:
            return name
    return None


def _pad_core(name: str, e: int) -> tuple[int, ...]:
    out = [0] * len(AMBIENT_VARS)
    out[AMBIENT_VARS.index(name)] = e
    return tuple(out)


EXCESS_MONOMIALS = {
    "R11": {"al": 3, "be": 9, "ga": 17, "e": 4},
    "R12": {"al": 3, "be": 4, "ga": 7, "e": 1, "t1": 1},
    "R13": {"al": 6, "be": 3, "ga": 4, "t1": 3},
    "R14": {"al": 2, "be": 6, "ga": 13, "e": 2, "s0": 1},
    "R15": {"al": 1, "be": 3, "ga": 9, "s0": 2},
}


def split_by_lead(rel: ExactPolynomial, lead: str) -> tuple[ExactPolynomial, ExactPolynomial]:
    """(quotient of the lead-divisible part, the remaining terms)."""
    ring = rel.ring
    i = ring.index(lead)
    divisible = {}
    rest = {}
    for exps, c in rel.terms.items():
        if exps[i] >= 1:
            new = list(exps)
            new[i] -= 1
            divisible[tuple(new)] = c
        else:
            rest[exps] = c
    return ExactPolynomial(ring, divisible), ExactPolynomial(ring, rest)


# ---------------------------------------------------------------------------
# relation systems


@dataclass(frozen=True)
class RelationSystem:
    """Named homogeneous relations in the generator variables."""

    ring: PolyRing
    relations: tuple[tuple[str, ExactPolynomial], ...]

    def __post_init__(self):
        weights = dict(GENERATOR_DEGREES)
        for name, rel in self.relations:
            rel.weighted_degree(weights)  # raises NotHomogeneous

    def get(self, name: str) -> ExactPolynomial:
        for n, rel in self.relations:
            if n == name:
                return rel
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.relations)

    def degree(self, name: str) -> int:
        return self.get(name).weighted_degree(dict(GENERATOR_DEGREES))

    def specialize(self, assignment: Mapping[str, object], ring: PolyRing) -> "RelationSystem":
        rels = tuple((n, rel.substitute(assignment, ring=ring))
                     for n, rel in self.relations)
        return RelationSystem(ring, rels)


def _load_system(key: str) -> RelationSystem:
    data = _REL[key]
    ring = generator_ring(*data["params"])
    rels = tuple((name, ring.parse(text)) for name, text in data["relations"].items())
    return RelationSystem(ring, rels)


def standard_relations() -> RelationSystem:
    """The fourteen relations with parameters theta, tau and the opaque P."""
    return _load_system("standard")


def family_relations() -> RelationSystem:
    """The one-parameter deformation (parameters lam, tau; cover parameter
    theta set to zero, with the rewritten fourteenth relation)."""
    return _load_system("family")


def lam_theta_relations() -> RelationSystem:
    """The two-parameter family constrained by lam*theta = 0 (tau = 0)."""
    return _load_system("lam_theta")


def r14_rewritten(ring: PolyRing | None = None) -> ExactPolynomial:
    ring = ring or generator_ring("theta", "tau")
    return ring.parse(_REL["standard"]["r14_rewritten"])


def verify_binomials(table: GeneratorTable,
                     rels: RelationSystem | Mapping[str, ExactPolynomial]) -> list[dict]:
    """Substitute the generator monomials into the binomial relations and
    report the residual of each (all must vanish).

    Accepts a plain name-to-polynomial mapping as well, so corrupted inputs
    can be fed through as negative controls.
    """
    if isinstance(rels, RelationSystem):
        items = [(n, rels.get(n)) for n in rels.names()
                 if n in {"R%d" % i for i in range(1, 11)}]
        ring_vars = rels.ring.variables
    else:
        items = list(rels.items())
        ring_vars = items[0][1].ring.variables if items else ()
    ring = ambient_ring(*(v for v in ring_vars if v not in GENERATOR_ORDER + ("P",)))
    report = []
    for name, rel in items:
        assignment = {gn: table.monomial(gn, ring) for gn in table.names()}
        residual = rel.substitute(assignment, ring=ring)
        report.append({"relation": name, "residual": str(residual),
                       "ok": residual.is_zero()})
    return report


def generic_degree_10(seed: int, params: Sequence[str] = ()) -> ExactPolynomial:
    """A seeded 'general' element of degree 10: every monomial in the eight
    generators appears with a nonzero integer coefficient, the z^2 one with
    coefficient -1 (the sign convention produced by derive_relation)."""
    ring = generator_ring(*params, with_p=False)
    monos = weighted_monomials(10)
    coeffs = seeded_coefficients(seed, "P10", len(monos))
    terms = {}
    z2 = _gen_exps(ring, {"z": 2})
    for mono, c in zip(monos, coeffs):
        exps = _gen_exps(ring, mono)
        terms[exps] = Fraction(-1) if exps == z2 else Fraction(c)
    return ring.from_terms(terms)


def weighted_monomials(degree: int, names: Sequence[str] = GENERATOR_ORDER[:-1],
                       weights: Mapping[str, int] | None = None) -> list[dict[str, int]]:
    """All exponent dictionaries of the given weighted degree (g excluded by
    default), in a deterministic order."""
    weights = weights or GENERATOR_DEGREES
    names = list(names)
    out: list[dict[str, int]] = []

    def go(i: int, remaining: int, acc: dict[str, int]):
        if i == len(names):
            if remaining == 0:
                out.append(dict(acc))
            return
        w = weights[names[i]]
        for e in range(remaining // w + 1):
            if e:
                acc[names[i]] = e
            go(i + 1, remaining - w * e, acc)
            acc.pop(names[i], None)

    go(0, degree, {})
    return out


def _gen_exps(ring: PolyRing, powers: Mapping[str, int]) -> tuple[int, ...]:
    out = [0] * ring.nvars
    for name, e in powers.items():
        out[ring.index(name)] = e
    return tuple(out)


# ---------------------------------------------------------------------------
# skew formats and certificates


@dataclass(frozen=True)
class Certificate:
    kind: str                     # "pfaffian" | "product"
    index: tuple[int, ...]        # row subset (pfaffian) or (row,) (product)
    combo: tuple[tuple[ExactPolynomial, str], ...]  # sum of multiplier * relation


@dataclass(frozen=True)
class RelationFormat:
    matrix: SkewMatrix
    vector: tuple[ExactPolynomial, ...]
    certificates: tuple[Certificate, ...]
    modulus: ExactPolynomial | None = None
    label: str = ""


def verify_format(fmt: RelationFormat, rels: RelationSystem) -> dict:
    """Check every certificate as an exact identity and report coverage.

    With a modulus m, identities are required to hold up to an exact multiple
    of m (used by the family constrained to m = 0).
    """
    ring = fmt.matrix.ring
    checks = []
    covered: set[str] = set()
    values: dict[tuple[str, tuple[int, ...]], ExactPolynomial] = {}
    for rows, pf in fmt.matrix.sub_pfaffians(4):
        values[("pfaffian", rows)] = pf
    for i, entry in enumerate(fmt.matrix.multiply_vector(list(fmt.vector))):
        values[("product", (i,))] = entry
    seen = set()
    for cert in fmt.certificates:
        source = values[(cert.kind, cert.index)]
        seen.add((cert.kind, cert.index))
        target = ring.zero()
        for mult, name in cert.combo:
            target = target + mult * rels.get(name).cast(ring)
            covered.add(name)
        residual = source - target
        if not residual.is_zero() and fmt.modulus is not None:
            try:
                residual.exact_divide(fmt.modulus)
                residual = ring.zero()
            except NotDivisible:
                pass
        if not residual.is_zero():
            raise CertificateFailed(
                f"{fmt.label}: certificate {cert.kind}{cert.index} failed", residual)
        checks.append({"source": f"{cert.kind}{cert.index}",
                       "targets": [name for _, name in cert.combo], "ok": True})
    # every pfaffian and product entry must be certified (zero ones trivially)
    for key, value in values.items():
        if key in seen:
            continue
        if not value.is_zero():
            raise CertificateFailed(
                f"{fmt.label}: uncertified nonzero entry {key}", value)
    return {"checks": checks, "covered": sorted(covered)}


def load_formats() -> dict[str, tuple[RelationFormat, RelationSystem]]:
    """The three bundled formats with their certificate tables."""
    data = _fixture("formats.json")
    out = {}
    systems = {"standard": standard_relations(), "family": family_relations(),
               "lam_theta": lam_theta_relations()}
    for label, entry in data.items():
        rels = systems[entry["system"]]
        ring = rels.ring
        matrix = SkewMatrix.from_upper_rows(ring, entry["matrix"])
        vector = tuple(ring.parse(t) for t in entry["vector"])
        certs = []
        for c in entry["certificates"]:
            combo = tuple((ring.parse(m), name) for m, name in c["combo"])
            certs.append(Certificate(c["kind"], tuple(c["index"]), combo))
        modulus = ring.parse(entry["modulus"]) if entry.get("modulus") else None
        out[label] = (RelationFormat(matrix, vector, tuple(certs), modulus, label), rels)
    return out


# ---------------------------------------------------------------------------
# smoothing elimination


@dataclass(frozen=True)
class Elimination:
    substitutions: dict[str, ExactPolynomial]
    identities: tuple[str, ...]
    residuals: tuple[tuple[str, ExactPolynomial, ExactPolynomial], ...]
    # (name, clearing monomial, cleared residual polynomial)


def smoothing_eliminate(rels: RelationSystem, invertible: Sequence[str],
                        plan: Sequence[tuple[str, str]]) -> Elimination:
    """Rewrite the planned variables using the planned relations and classify
    what remains.

    Each planned relation must be linear in its variable with coefficient a
    nonzero constant times a monomial in the invertible parameters.  The
    residual report carries, per relation, the minimal monomial multiple that
    clears denominators, and the cleared polynomial.
    """
    ring = rels.ring.with_invertible(*invertible)
    subs: dict[str, ExactPolynomial] = {}
    for rel_name, var in plan:
        rel = rels.get(rel_name).cast(ring).substitute(subs)
        by_var = rel.coefficients_in(var)
        if max(by_var) > 1:
            raise NotLinear(f"{rel_name} is not linear in {var}")
        coeff = by_var.get(1)
        rest = by_var.get(0, ring.zero())
        if coeff is None or len(coeff.terms) != 1:
            raise NotLinear(f"{rel_name} has a non-monomial coefficient on {var}")
        (cexp, cval), = coeff.terms.items()
        for i, e in enumerate(cexp):
            if e and ring.variables[i] not in ring.invertible:
                raise NotInvertible(
                    f"coefficient of {var} in {rel_name} involves the "
                    f"non-invertible {ring.variables[i]}")
        solution = -rest * coeff.monomial_inverse()
        for known in subs:
            subs[known] = subs[known].substitute({var: solution})
        subs[var] = solution
    identities = []
    residuals = []
    planned = {rel_name for rel_name, _ in plan}
    for name in rels.names():
        value = rels.get(name).cast(ring).substitute(subs)
        if value.is_zero():
            identities.append(name)
            continue
        clear = _clearing_monomial(value, ring)
        residuals.append((name, clear, value * clear))
    return Elimination(subs, tuple(identities), tuple(residuals))


def _clearing_monomial(p: ExactPolynomial, ring: PolyRing) -> ExactPolynomial:
    lows = [0] * ring.nvars
    for exps in p.terms:
        for i, e in enumerate(exps):
            lows[i] = min(lows[i], e)
    return ExactPolynomial(ring, {tuple(-x for x in lows): Fraction(1)})


# ---------------------------------------------------------------------------
# chart germs


@dataclass(frozen=True)
class ChartPlan:
    chart_var: str
    eliminate: tuple[tuple[str, str], ...]   # (relation name, variable)
    germ_relation: str
    local_vars: tuple[str, ...]
    group_order: int
    action: tuple[int, int, int]


CHARTS = {
    "Uz": ChartPlan(
        chart_var="z",
        eliminate=(("R11", "x0"), ("R12", "x1"), ("R13", "y"), ("R14", "u0")),
        germ_relation="R10",
        local_vars=("w", "u1", "t"),
        group_order=5,
        action=(3, 4, 2),
    ),
    "Pw": ChartPlan(
        chart_var="w",
        eliminate=(("R2", "x0"), ("R3", "x1"), ("R6", "u0"), ("R10", "t")),
        germ_relation="R13",
        local_vars=("y", "u1", "z"),
        group_order=3,
        action=(2, 1, 2),
    ),
}


def chart_singularity(rels: RelationSystem, chart: ChartPlan, order: int = 10):
    """Classify the local germ of the surface at a coordinate point.

    The relations must already be fully specialized (numeric parameters, P
    expanded); the planned relations eliminate their variables as series on
    the chart, and the germ relation restricts to the local coordinates.
    """
    ring = rels.ring
    if set(ring.variables) - set(GENERATOR_ORDER) - {"P"}:
        raise InvalidInput("chart analysis needs a fully specialized system")
    at_chart = {name: rels.get(name).substitute({chart.chart_var: ring.one()})
                for name in rels.names()}
    local_ring = PolyRing.of(*chart.local_vars)
    solve_vars = [var for _, var in chart.eliminate]
    series = [TruncatedSeries.of(at_chart[rel], order) for rel, _ in chart.eliminate]
    solution = solve_system(series, solve_vars, order)
    germ_poly = TruncatedSeries.of(at_chart[chart.germ_relation], order).substitute(solution)
    restricted = germ_poly.poly.substitute(
        {v: local_ring.var(v) for v in chart.local_vars}, ring=local_ring)
    germ = QuotientGerm(chart.group_order, chart.action,
                        TruncatedSeries.of(restricted, order))
    return classify_germ(germ)


def specialize_standard(theta, tau, seed: int = 0,
                        p_value: ExactPolynomial | None = None) -> RelationSystem:
    """The fourteen relations with numeric parameters and P expanded."""
    rels = standard_relations()
    plain = generator_ring(with_p=False)
    p = p_value if p_value is not None else generic_degree_10(seed).cast(plain)
    assignment = {"theta": plain.constant(theta), "tau": plain.constant(tau), "P": p}
    return rels.specialize(assignment, plain)


def fixed_part(rels: RelationSystem) -> ExactPolynomial:
    """Restriction of the thirteenth relation to x0 = x1 = y = u0 = t = 0,
    the curve in the (w, u1, z) weighted plane swept by the base locus."""
    ring = rels.ring
    sub = {name: ring.zero() for name in ("x0", "x1", "y", "u0", "t", "g")
           if name in ring.variables}
    return rels.get("R13").substitute(sub)

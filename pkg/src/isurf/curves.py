"""Dual-graph calculus for curve configurations on smooth surfaces.

Configurations carry self-intersections, arithmetic genera, role tags and
codiscrepancy coefficients; blow-downs rewrite them exactly.  Rule checkers
detect the numerical contradictions used in the non-existence argument, and
scripts replay contraction sequences step by step.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence

from .errors import (IllegalStep, InvalidInput, MissingCoefficients,
                     NotContractible, UnknownRecipe)
from .tsing import TChain, codiscrepancy, recognize_tchain

ROLES = ("f-exceptional", "eps-exceptional", "section", "fiber-component")


@dataclass(frozen=True)
class Curve:
    name: str
    self_int: int
    pa: int = 0
    roles: frozenset[str] = field(default_factory=frozenset)
    codisc: Fraction | None = None
    chain: str | None = None

    def k_degree(self) -> int:
        return 2 * self.pa - 2 - self.self_int


@dataclass(frozen=True)
class CurveConfiguration:
    curves: tuple[Curve, ...]
    incidence: tuple[tuple[str, str, int], ...]
    minimal_model: bool = False
    kodaira_dimension_one: bool = True
    ambient_k2: Fraction | None = None
    blowdowns: int = 0

    def __post_init__(self):
        names = [c.name for c in self.curves]
        if len(set(names)) != len(names):
            raise InvalidInput("duplicate curve names")
        known = set(names)
        norm = []
        seen = set()
        for a, b, m in self.incidence:
            if a not in known or b not in known or a == b:
                raise InvalidInput(f"bad incidence entry ({a}, {b})")
            if m < 0:
                raise InvalidInput("incidence multiplicities must be nonnegative")
            key = tuple(sorted((a, b)))
            if key in seen:
                raise InvalidInput(f"duplicate incidence entry {key}")
            seen.add(key)
            if m > 0:
                norm.append((key[0], key[1], int(m)))
        object.__setattr__(self, "incidence", tuple(sorted(norm)))

    # -- access ----------------------------------------------------------

    def curve(self, name: str) -> Curve:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves)

    def pairing(self, a: str, b: str) -> int:
        if a == b:
            return self.curve(a).self_int
        key = tuple(sorted((a, b)))
        for x, y, m in self.incidence:
            if (x, y) == key:
                return m
        return 0

    def neighbors(self, name: str) -> list[tuple[str, int]]:
        out = []
        for x, y, m in self.incidence:
            if x == name:
                out.append((y, m))
            elif y == name:
                out.append((x, m))
        return out

    # -- numerics ---------------------------------------------------------

    def kx_pairing(self, name: str) -> Fraction:
        """(K of the resolution + codiscrepancy divisor) . curve."""
        c = self.curve(name)
        total = Fraction(c.k_degree())
        for other in self.curves:
            if other.codisc is None:
                if "f-exceptional" in other.roles:
                    raise MissingCoefficients(
                        f"{other.name} is f-exceptional but has no coefficient")
                continue
            total += other.codisc * self.pairing(name, other.name)
        return total

    def blow_down(self, name: str) -> "CurveConfiguration":
        """Contract a (-1)-curve of genus zero and rewrite the rest."""
        gamma = self.curve(name)
        if gamma.self_int != -1 or gamma.pa != 0:
            raise NotContractible(f"{name} is not a contractible (-1)-curve")
        mult = {c.name: self.pairing(name, c.name) for c in self.curves if c.name != name}
        new_curves = []
        for c in self.curves:
            if c.name == name:
                continue
            m = mult[c.name]
            new_curves.append(replace(
                c,
                self_int=c.self_int + m * m,
                pa=c.pa + m * (m - 1) // 2,
            ))
        new_inc = []
        for a in range(len(new_curves)):
            for b in range(a + 1, len(new_curves)):
                na, nb = new_curves[a].name, new_curves[b].name
                m = self.pairing(na, nb) + mult[na] * mult[nb]
                if m:
                    new_inc.append((na, nb, m))
        return replace(
            self,
            curves=tuple(new_curves),
            incidence=tuple(new_inc),
            ambient_k2=None if self.ambient_k2 is None else self.ambient_k2 + 1,
            blowdowns=self.blowdowns + 1,
        )

    # -- rules -------------------------------------------------------------

    def check_rules(self) -> list[dict]:
        """All rule violations present in the configuration."""
        violations = []
        minus_one = [c for c in self.curves if c.self_int == -1 and c.pa == 0]
        if self.kodaira_dimension_one:
            for i in range(len(minus_one)):
                for j in range(i + 1, len(minus_one)):
                    if self.pairing(minus_one[i].name, minus_one[j].name) > 0:
                        violations.append({
                            "rule": "disjoint-(-1)-curves",
                            "curves": [minus_one[i].name, minus_one[j].name],
                            "detail": "two meeting (-1)-curves on a surface "
                                      "of nonnegative Kodaira dimension",
                        })
        if self.minimal_model:
            for c in self.curves:
                if c.k_degree() < 0:
                    violations.append({
                        "rule": "nef-canonical",
                        "curves": [c.name],
                        "detail": f"K.{c.name} = {c.k_degree()} < 0 on a minimal model",
                    })
            fibers = [c for c in self.curves if c.k_degree() == 0 and c.pa == 1]
            for f in fibers:
                for c in self.curves:
                    if c.name != f.name and c.k_degree() == 0 and c.pa == 0 \
                            and self.pairing(f.name, c.name) > 0:
                        violations.append({
                            "rule": "full-fiber",
                            "curves": [f.name, c.name],
                            "detail": "a K-trivial genus-one curve is a whole fiber "
                                      "and cannot meet another K-trivial curve",
                        })
        if self.kodaira_dimension_one and not self.minimal_model:
            eps = [c.name for c in self.curves if "eps-exceptional" in c.roles]
            for c in self.curves:
                if c.self_int == -2 and c.pa == 0 and "eps-exceptional" not in c.roles:
                    hits = sum(self.pairing(c.name, e) for e in eps)
                    if hits > 0:
                        violations.append({
                            "rule": "minus-two-off-exceptional",
                            "curves": [c.name],
                            "detail": "a (-2)-curve surviving to the minimal model "
                                      "meets the contraction locus",
                        })
        return violations

    # -- export -------------------------------------------------------------

    def to_dot(self) -> str:
        lines = ["graph configuration {"]
        for c in self.curves:
            label = f"{c.name}\\n({c.self_int})"
            lines.append(f'  "{c.name}" [label="{label}"];')
        for a, b, m in self.incidence:
            attr = f' [label="{m}"]' if m > 1 else ""
            lines.append(f'  "{a}" -- "{b}"{attr};')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(_config_dict(self))


def _config_dict(cfg: CurveConfiguration) -> dict:
    return {
        "curves": [{
            "name": c.name, "self": c.self_int, "pa": c.pa,
            "roles": sorted(c.roles), "chain": c.chain,
            "codisc": None if c.codisc is None else str(c.codisc),
        } for c in cfg.curves],
        "incidence": [[a, b, m] for a, b, m in cfg.incidence],
        "minimal_model": cfg.minimal_model,
        "kodaira_dimension_one": cfg.kodaira_dimension_one,
        "k2": None if cfg.ambient_k2 is None else str(cfg.ambient_k2),
    }


def config_from_dict(data: Mapping) -> CurveConfiguration:
    curves = tuple(Curve(
        name=c["name"], self_int=int(c["self"]), pa=int(c.get("pa", 0)),
        roles=frozenset(c.get("roles", ())),
        codisc=None if c.get("codisc") in (None, "") else Fraction(c["codisc"]),
        chain=c.get("chain"),
    ) for c in data["curves"])
    incidence = tuple((a, b, int(m)) for a, b, m in data["incidence"])
    return CurveConfiguration(
        curves, incidence,
        minimal_model=bool(data.get("minimal_model", False)),
        kodaira_dimension_one=bool(data.get("kodaira_dimension_one", True)),
        ambient_k2=None if data.get("k2") is None else Fraction(data["k2"]),
    )


# ---------------------------------------------------------------------------
# profile enumeration


def enumerate_gamma_profiles(chains: Sequence[Sequence[int]],
                             kx_bounds: tuple[Fraction, Fraction],
                             incidence_caps: Mapping[str, int] | None = None
                             ) -> list[dict[str, Fraction | dict]]:
    """Nonnegative incidence patterns of a (-1)-curve with the chain curves
    whose induced canonical degree lies within the bounds.

    Chain curves are named A1, B1, C1, ... along the first chain and A2, ...
    along the second; coefficients come from the codiscrepancy solver.
    """
    lo, hi = Fraction(kx_bounds[0]), Fraction(kx_bounds[1])
    caps = dict(incidence_caps or {})
    menu: list[tuple[str, Fraction]] = []
    for j, chain in enumerate(chains, start=1):
        coeffs = codiscrepancy(TChain.of(chain)).coefficients
        for pos, coeff in enumerate(coeffs):
            menu.append((f"{chr(ord('A') + pos)}{j}", coeff))
    out = []

    def go(i: int, acc: dict[str, int], total: Fraction):
        if total - 1 > hi:
            return
        if i == len(menu):
            k = total - 1
            if lo <= k <= hi:
                out.append({"incidence": dict(acc), "kx_gamma": k})
            return
        name, coeff = menu[i]
        cap = caps.get(name, int((1 + hi) / coeff) + 1)
        for m in range(cap + 1):
            if m:
                acc[name] = m
            go(i + 1, acc, total + m * coeff)
            acc.pop(name, None)

    go(0, {}, Fraction(0))
    out.sort(key=lambda p: (p["kx_gamma"], sorted(p["incidence"].items())))
    return out


# ---------------------------------------------------------------------------
# script replay


def replay_script(cfg: CurveConfiguration, script: Sequence[Mapping]) -> dict:
    """Execute blow-down / flag / check steps; report the verdict.

    Returns {"verdict": "contradiction" | "survives", "violations": [...],
    "final": configuration}.  Illegal steps raise IllegalStep.
    """
    current = cfg
    log = []
    for step in script:
        op = step.get("op")
        if op == "blow_down":
            try:
                current = current.blow_down(step["curve"])
            except (NotContractible, KeyError) as exc:
                raise IllegalStep(f"blow_down {step.get('curve')}: {exc}") from exc
            log.append(f"blow_down {step['curve']}")
        elif op == "set_minimal":
            current = replace(current, minimal_model=True)
            log.append("set_minimal")
        elif op == "check":
            violations = current.check_rules()
            log.append(f"check: {len(violations)} violation(s)")
            if violations:
                return {"verdict": "contradiction", "violations": violations,
                        "final": current, "log": log}
        else:
            raise IllegalStep(f"unknown op {op!r}")
    violations = current.check_rules()
    if violations:
        return {"verdict": "contradiction", "violations": violations,
                "final": current, "log": log}
    return {"verdict": "survives", "violations": [], "final": current, "log": log}


# ---------------------------------------------------------------------------
# bundled fixtures: contradiction scripts and example recipes


def _fixture(name: str) -> dict:
    return json.loads(resources.files("isurf.fixtures").joinpath(name).read_text())


def load_profile_scripts() -> dict[str, dict]:
    """The three contradiction scripts, keyed by profile name."""
    data = _fixture("scripts.json")
    return {
        key: {
            "configuration": config_from_dict(entry["configuration"]),
            "script": entry["script"],
            "expected_rule": entry["expected_rule"],
        }
        for key, entry in data.items()
    }


def load_recipes() -> dict[str, dict]:
    data = _fixture("recipes.json")
    return data


def build_example(recipe: str) -> dict:
    """Instantiate a catalogued construction and verify its chain content.

    Returns the configuration together with the recognized chains and the
    blow-down script that contracts it back to the fiber data.
    """
    recipes = load_recipes()
    if recipe not in recipes:
        raise UnknownRecipe(f"unknown recipe {recipe!r}")
    entry = recipes[recipe]
    cfg = config_from_dict(entry["configuration"])
    chains = {}
    for chain_name, curve_names in entry["chains"].items():
        entries = [-cfg.curve(n).self_int for n in curve_names]
        for a, b in zip(curve_names, curve_names[1:]):
            if cfg.pairing(a, b) != 1:
                raise InvalidInput(f"chain {chain_name} is not a chain in the graph")
        chains[chain_name] = {"curves": list(curve_names), "entries": entries,
                              "type": recognize_tchain(entries)}
    return {
        "configuration": cfg,
        "chains": chains,
        "script": entry["script"],
        "expected_final": entry["expected_final"],
        "blowups": int(entry["blowups"]),
        "connectors": list(entry.get("connectors", ())),
    }


def final_state_matches(cfg: CurveConfiguration, expected: Mapping) -> bool:
    """Compare the surviving curves and pairings with the expected fiber data.

    The comparison is two-sided: listed pairings must hold and no unlisted
    incidence may remain.
    """
    for name, self_int in expected["curves"].items():
        if cfg.curve(name).self_int != int(self_int):
            return False
    if set(cfg.names()) != set(expected["curves"]):
        return False
    listed = {tuple(sorted((a, b))): int(m) for a, b, m in expected["incidence"]}
    actual = {(a, b): m for a, b, m in cfg.incidence}
    return listed == actual

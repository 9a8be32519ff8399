"""Sparse multivariate polynomials over Q, exact throughout.

Coefficients are `fractions.Fraction`, terms are exponent tuples.  Variables
listed in ``PolyRing.invertible`` may carry negative exponents; this is how
rational-function coefficients in distinguished parameters are represented
(every denominator that occurs is a monomial in those parameters).

The canonical text form uses graded-lex term order (descending), "p/q"
coefficients, explicit "^" powers and "*" products, and is what
``PolyRing.parse`` accepts back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import NotDivisible, ParseError, UndeclaredIdentifier

Coeff = Union[Fraction, int]

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"-?[0-9]+")


@dataclass(frozen=True)
class PolyRing:
    """An ordered list of variable names, some of which may be invertible."""

    variables: tuple[str, ...]
    invertible: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        unknown = set(self.invertible) - set(self.variables)
        if unknown:
            raise ValueError(f"invertible names not declared: {sorted(unknown)}")

    @staticmethod
    def of(*names: str, invertible: Iterable[str] = ()) -> "PolyRing":
        return PolyRing(tuple(names), frozenset(invertible))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def zero(self) -> "ExactPolynomial":
        return ExactPolynomial(self, {})

    def one(self) -> "ExactPolynomial":
        return self.constant(1)

    def constant(self, c: Coeff) -> "ExactPolynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return ExactPolynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str, power: int = 1) -> "ExactPolynomial":
        return self.monomial({name: power})

    def monomial(self, powers: Mapping[str, int], coeff: Coeff = 1) -> "ExactPolynomial":
        exps = [0] * self.nvars
        for name, e in powers.items():
            exps[self.index(name)] = e
        return ExactPolynomial(self, {tuple(exps): Fraction(coeff)})

    def gens(self) -> dict[str, "ExactPolynomial"]:
        return {name: self.var(name) for name in self.variables}

    def extend(self, *names: str, invertible: Iterable[str] = ()) -> "PolyRing":
        return PolyRing(self.variables + tuple(names), self.invertible | frozenset(invertible))

    def with_invertible(self, *names: str) -> "PolyRing":
        return PolyRing(self.variables, self.invertible | frozenset(names))

    def parse(self, text: str) -> "ExactPolynomial":
        return _Parser(self, text).parse()

    def from_terms(self, terms: Mapping[tuple[int, ...], Coeff]) -> "ExactPolynomial":
        clean = {}
        for exps, c in terms.items():
            c = Fraction(c)
            if c != 0:
                clean[tuple(exps)] = c
        return ExactPolynomial(self, clean)


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class ExactPolynomial:
    """Immutable sparse polynomial attached to a PolyRing."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict[tuple[int, ...], Fraction]):
        self.ring = ring
        self.terms = terms
        self._hash = None
        for exps in terms:
            for name, e in zip(ring.variables, exps):
                if e < 0 and name not in ring.invertible:
                    raise ValueError(f"negative exponent on non-invertible variable {name}")

    # -- basic structure -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        if not self.terms:
            return 0
        return max(e[i] for e in self.terms)

    def coefficient(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Leading (exponent, coefficient) in descending graded-lex order."""
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "ExactPolynomial":
        if isinstance(other, ExactPolynomial):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        return self.ring.constant(other)

    def __add__(self, other) -> "ExactPolynomial":
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, Fraction(0)) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return ExactPolynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "ExactPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ExactPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ExactPolynomial":
        if not isinstance(other, ExactPolynomial):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return ExactPolynomial(self.ring, {e: k * c for e, k in self.terms.items()})
        if other.ring != self.ring:
            raise ValueError("ring mismatch")
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        terms: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                s = terms.get(key, Fraction(0)) + ca * cb
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        return ExactPolynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExactPolynomial":
        if n < 0:
            return self.monomial_inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monomial_inverse(self) -> "ExactPolynomial":
        """Inverse of a single-term polynomial (invertible variables only)."""
        if len(self.terms) != 1:
            raise NotDivisible(f"not a monomial: {self}")
        (exps, c), = self.terms.items()
        return ExactPolynomial(self.ring, {tuple(-e for e in exps): 1 / c})

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactPolynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus / division --------------------------------------------

    def derivative(self, name: str) -> "ExactPolynomial":
        i = self.ring.index(name)
        terms = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            new = list(exps)
            new[i] = e - 1
            key = tuple(new)
            s = terms.get(key, Fraction(0)) + c * e
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return ExactPolynomial(self.ring, terms)

    def exact_divide(self, g: "ExactPolynomial") -> "ExactPolynomial":
        """Exact quotient q with q*g == self; raises NotDivisible otherwise.

        A monomial divisor may shift exponents of invertible variables below
        zero; for a multi-term divisor the quotient is required to be an
        ordinary polynomial (clear denominators first), which keeps the
        leading-term descent well founded.
        """
        g = self._coerce(g)
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self.ring.zero()
        if len(g.terms) == 1:
            (ge, gc), = g.terms.items()
            terms = {}
            invertible_idx = {i for i, v in enumerate(self.ring.variables) if v in self.ring.invertible}
            for exps, c in self.terms.items():
                new = tuple(a - b for a, b in zip(exps, ge))
                for i, e in enumerate(new):
                    if e < 0 and i not in invertible_idx:
                        raise NotDivisible(f"{self} is not divisible by {g}")
                terms[new] = c / gc
            return ExactPolynomial(self.ring, terms)
        # long division by leading terms; exactness required at every step
        quotient = self.ring.zero()
        rem = self
        glead_e, glead_c = g.leading()
        while not rem.is_zero():
            re_, rc = rem.leading()
            qe = tuple(a - b for a, b in zip(re_, glead_e))
            if any(e < 0 for e in qe):
                raise NotDivisible(f"{self} is not divisible by {g}")
            qt = ExactPolynomial(self.ring, {qe: rc / glead_c})
            quotient = quotient + qt
            rem = rem - qt * g
            if not rem.is_zero() and _grlex_key(rem.leading()[0]) >= _grlex_key(re_):
                raise NotDivisible(f"{self} is not divisible by {g}")
        return quotient

    def divides(self, other: "ExactPolynomial") -> bool:
        try:
            other.exact_divide(self)
            return True
        except NotDivisible:
            return False

    # -- substitution ----------------------------------------------------

    def substitute(self, assignment: Mapping[str, object], ring: PolyRing | None = None) -> "ExactPolynomial":
        """Replace variables by polynomials (or numbers) in ``ring``.

        Unassigned variables must exist in the target ring and map to
        themselves.  Negative exponents require the image to be a monomial.
        """
        target = ring if ring is not None else self.ring
        images: dict[int, ExactPolynomial] = {}

        def image(i: int) -> ExactPolynomial:
            if i not in images:
                name = self.ring.variables[i]
                if name in assignment:
                    img = assignment[name]
                    if not isinstance(img, ExactPolynomial):
                        img = target.constant(img)
                    elif img.ring != target:
                        raise ValueError(f"image of {name} lies in the wrong ring")
                    images[i] = img
                else:
                    images[i] = target.var(name)  # raises if missing from target
            return images[i]

        result = target.zero()
        power_cache: dict[tuple[int, int], ExactPolynomial] = {}

        def power(i: int, e: int) -> ExactPolynomial:
            key = (i, e)
            if key not in power_cache:
                if e >= 0:
                    power_cache[key] = image(i) ** e
                else:
                    power_cache[key] = image(i).monomial_inverse() ** (-e)
            return power_cache[key]

        for exps, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(exps):
                if e != 0:
                    term = term * power(i, e)
            result = result + term
        return result

    def evaluate(self, assignment: Mapping[str, Coeff]) -> Fraction:
        total = Fraction(0)
        values = [Fraction(assignment[name]) for name in self.ring.variables]
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(values, exps):
                v *= x ** e
            total += v
        return total

    def cast(self, ring: PolyRing) -> "ExactPolynomial":
        """Reinterpret in another ring containing the same-named variables."""
        idx = [ring.index(name) for name in self.ring.variables]
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * ring.nvars
            for j, e in zip(idx, exps):
                new[j] = e
            terms[tuple(new)] = c
        return ExactPolynomial(ring, terms)

    # -- grading ----------------------------------------------------------

    def weighted_degree(self, weights: Mapping[str, int]) -> int:
        """Common weighted degree of all terms; NotHomogeneous otherwise."""
        from .errors import NotHomogeneous

        w = [weights.get(name, 0) for name in self.ring.variables]
        degs = {sum(wi * e for wi, e in zip(w, exps)): exps for exps in self.terms}
        if len(degs) > 1:
            pair = sorted(degs.values())[:2]
            raise NotHomogeneous("polynomial is not weighted-homogeneous", tuple(pair))
        if not degs:
            return 0
        return next(iter(degs))

    def weighted_order(self, weights: Mapping[str, int]) -> int:
        """Minimal weighted degree over the terms (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        w = [weights.get(name, 0) for name in self.ring.variables]
        return min(sum(wi * e for wi, e in zip(w, exps)) for exps in self.terms)

    def coefficients_in(self, name: str) -> dict[int, "ExactPolynomial"]:
        """View as a univariate polynomial in ``name``: degree -> coefficient."""
        i = self.ring.index(name)
        buckets: dict[int, dict] = {}
        for exps, c in self.terms.items():
            e = exps[i]
            rest = list(exps)
            rest[i] = 0
            buckets.setdefault(e, {})[tuple(rest)] = c
        return {e: ExactPolynomial(self.ring, t) for e, t in buckets.items()}

    # -- text form ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for n, (exps, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.variables, exps)
                if e != 0
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if n == 0:
                if c < 0:
                    body = f"-1*{mono}" if (mono and mag == 1) else f"-{body}"
                parts.append(body)
            else:
                parts.append(f"{' - ' if c < 0 else ' + '}{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"<poly {self}>"


class _Parser:
    """Recursive-descent parser for the canonical expression grammar.

    expr := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
    factor := coeff | ident ['^' int] | '(' expr ')' ; coeff := int ['/' uint].
    """

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.pos = 0

    def parse(self) -> ExactPolynomial:
        value = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected character {self.text[self.pos]!r}", self.pos)
        return value

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> ExactPolynomial:
        negate = False
        if self.peek() == "-":
            save = self.pos
            self.pos += 1
            if self.peek().isdigit():
                self.pos = save  # leading negative coefficient, let term() read it
            else:
                negate = True
        value = self.term()
        if negate:
            value = -value
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ExactPolynomial:
        value = self.factor()
        while self.peek() == "*":
            self.pos += 1
            value = value * self.factor()
        return value

    def factor(self) -> ExactPolynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return value
        if ch.isdigit() or ch == "-":
            return self.coeff()
        m = _IDENT_RE.match(self.text, self.pos)
        if not m:
            raise ParseError(f"expected identifier or number, found {ch!r}", self.pos)
        name = m.group(0)
        if name not in self.ring.variables:
            raise UndeclaredIdentifier(f"undeclared identifier {name!r}", self.pos)
        self.pos = m.end()
        power = 1
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            pm = _INT_RE.match(self.text, self.pos)
            if not pm:
                raise ParseError("expected integer exponent", self.pos)
            power = int(pm.group(0))
            if power < 0 and name not in self.ring.invertible:
                raise ParseError(f"negative power on non-invertible {name!r}", self.pos)
            self.pos = pm.end()
        return self.ring.var(name, power)

    def coeff(self) -> ExactPolynomial:
        self.skip_ws()
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            raise ParseError("expected integer", self.pos)
        num = int(m.group(0))
        self.pos = m.end()
        den = 1
        if self.peek() == "/":
            self.pos += 1
            self.skip_ws()
            dm = re.compile(r"[0-9]+").match(self.text, self.pos)
            if not dm:
                raise ParseError("expected positive denominator", self.pos)
            den = int(dm.group(0))
            if den == 0:
                raise ParseError("zero denominator", self.pos)
            self.pos = dm.end()
        return self.ring.constant(Fraction(num, den))


def parse_expression(text: str, ring: PolyRing) -> ExactPolynomial:
    """Parse ``text`` over the declared variables of ``ring``."""
    return ring.parse(text)

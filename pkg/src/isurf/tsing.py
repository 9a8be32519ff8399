"""T-singularity combinatorics.

Hirzebruch-Jung continued fractions, recognition of chains resolving cyclic
quotient singularities of type 1/(d n^2) (1, dna-1), codiscrepancy
coefficients, the self-intersection number of the codiscrepancy divisor,
and classification of three-variable quotient germs through their index-one
covers x*y - z^(dn).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import InvalidInput, TruncationTooShallow
from .poly import ExactPolynomial
from .series import TruncatedSeries


# ---------------------------------------------------------------------------
# singularity types


@dataclass(frozen=True)
class TSingularity:
    """Cyclic quotient 1/(d n^2) (1, d n a - 1) with gcd(a, n) = 1."""

    d: int
    n: int
    a: int

    def __post_init__(self):
        if self.d < 1 or self.n < 2 or not (0 < self.a < self.n) or gcd(self.a, self.n) != 1:
            raise InvalidInput(f"not an admissible type: d={self.d}, n={self.n}, a={self.a}")

    @property
    def order(self) -> int:
        return self.d * self.n * self.n

    @property
    def weight(self) -> int:
        return self.d * self.n * self.a - 1

    @property
    def index(self) -> int:
        return self.n

    def conjugate(self) -> "TSingularity":
        """Reversing the resolving chain inverts the weight mod d n^2, which
        replaces a by n - a."""
        return TSingularity(self.d, self.n, self.n - self.a)

    def same_singularity(self, other: "TSingularity") -> bool:
        """Equality up to reversing the chain (a <-> a^{-1} mod n)."""
        return (self.d, self.n) == (other.d, other.n) and self.a in (other.a, other.conjugate().a)

    def __str__(self):
        return f"1/{self.order}(1,{self.weight})"

    def to_json(self) -> dict:
        return {"d": self.d, "n": self.n, "a": self.a}


@dataclass(frozen=True)
class RationalDoublePoint:
    """An A_r du Val point (comes from a chain of r (-2)-curves)."""

    r: int

    def __str__(self):
        return f"A_{self.r}"

    def to_json(self) -> dict:
        return {"rdp": f"A_{self.r}"}


@dataclass(frozen=True)
class SmoothPoint:
    def __str__(self):
        return "smooth"


@dataclass(frozen=True)
class Unrecognized:
    reason: str = ""

    def __str__(self):
        return f"unrecognized({self.reason})" if self.reason else "unrecognized"


# ---------------------------------------------------------------------------
# continued fractions and chains


def hj_expand(p: int, q: int) -> list[int]:
    """Expansion p/q = b1 - 1/(b2 - 1/(...)) with all b_i >= 2."""
    if not (p > q >= 1) or gcd(p, q) != 1:
        raise InvalidInput(f"need p > q >= 1 coprime, got {p}/{q}")
    out = []
    while q > 0:
        b = -((-p) // q)  # ceil(p / q)
        out.append(b)
        p, q = q, b * q - p
    return out


def hj_value(chain: Sequence[int]) -> Fraction:
    """Value of the continued fraction [b1, ..., br]."""
    if not chain:
        raise InvalidInput("empty chain")
    value = Fraction(chain[-1])
    for b in reversed(chain[:-1]):
        value = b - 1 / value
    return value


def recognize_tchain(chain: Sequence[int]):
    """Identify a chain of self-intersections [b1..br] (entries >= 2).

    Returns TSingularity(d, n, a) when the value is d n^2 / (d n a - 1),
    RationalDoublePoint(r) for the all-2 chain, Unrecognized otherwise.
    """
    chain = list(chain)
    if any(b < 2 for b in chain):
        raise InvalidInput("chain entries must be >= 2")
    if all(b == 2 for b in chain):
        return RationalDoublePoint(len(chain))
    value = hj_value(chain)
    p, q = value.numerator, value.denominator
    matches = []
    n = 2
    while n * n <= p:
        if p % (n * n) == 0:
            d = p // (n * n)
            if (q + 1) % (d * n) == 0:
                a = (q + 1) // (d * n)
                if 0 < a < n and gcd(a, n) == 1:
                    matches.append(TSingularity(d, n, a))
        n += 1
    if not matches:
        return Unrecognized(f"{p}/{q} is not of the form dn^2/(dna-1)")
    return matches[0]


def tchain_from_singularity(sing: TSingularity) -> list[int]:
    return hj_expand(sing.order, sing.weight)


@dataclass(frozen=True)
class TChain:
    """A chain with its recognition result attached."""

    entries: tuple[int, ...]

    @staticmethod
    def of(entries: Sequence[int]) -> "TChain":
        return TChain(tuple(int(b) for b in entries))

    @staticmethod
    def from_singularity(sing: TSingularity) -> "TChain":
        return TChain(tuple(tchain_from_singularity(sing)))

    @property
    def length(self) -> int:
        return len(self.entries)

    def kind(self):
        return recognize_tchain(self.entries)

    def reversed(self) -> "TChain":
        return TChain(tuple(reversed(self.entries)))

    def to_json(self) -> str:
        return json.dumps(list(self.entries))


# ---------------------------------------------------------------------------
# codiscrepancies


@dataclass(frozen=True)
class Codiscrepancy:
    chain: TChain
    coefficients: tuple[Fraction, ...]


def codiscrepancy(chain: TChain | Sequence[int]) -> Codiscrepancy:
    """Coefficients a_i with (K + sum a_i E_i) . E_j = 0 along the chain.

    The linear system b_i a_i - a_{i-1} - a_{i+1} = b_i - 2 is tridiagonal
    with negative-definite intersection matrix, hence uniquely solvable.
    """
    if not isinstance(chain, TChain):
        chain = TChain.of(chain)
    b = chain.entries
    if any(x < 2 for x in b):
        raise InvalidInput("chain entries must be >= 2")
    r = len(b)
    # Thomas elimination: diagonal b_i, off-diagonal -1
    diag = [Fraction(x) for x in b]
    rhs = [Fraction(x - 2) for x in b]
    for i in range(1, r):
        diag[i] -= Fraction(1) / diag[i - 1]
        rhs[i] += rhs[i - 1] / diag[i - 1]
    coeffs = [Fraction(0)] * r
    coeffs[r - 1] = rhs[r - 1] / diag[r - 1]
    for i in range(r - 2, -1, -1):
        coeffs[i] = (rhs[i] + coeffs[i + 1]) / diag[i]
    # exact verification of the defining system
    for i in range(r):
        lhs = b[i] * coeffs[i]
        if i > 0:
            lhs -= coeffs[i - 1]
        if i + 1 < r:
            lhs -= coeffs[i + 1]
        assert lhs == b[i] - 2, "codiscrepancy system residual must vanish"
    return Codiscrepancy(chain, tuple(coeffs))


def delta_squared(cd: Codiscrepancy) -> Fraction:
    """Self-intersection of the codiscrepancy divisor on the resolution."""
    b = cd.chain.entries
    a = cd.coefficients
    total = sum((ai * ai * -bi for ai, bi in zip(a, b)), Fraction(0))
    total += 2 * sum((a[i] * a[i + 1] for i in range(len(a) - 1)), Fraction(0))
    return total


def ktilde_squared(sings: Sequence[TChain | Sequence[int]]) -> Fraction:
    """1 + sum of codiscrepancy self-intersections over the chains.

    Cross-checked against sum_j (d_j - r_j) - 1 for proper T-chains.
    """
    total = Fraction(1)
    for chain in sings:
        if not isinstance(chain, TChain):
            chain = TChain.of(chain)
        kind = chain.kind()
        if not isinstance(kind, TSingularity):
            raise InvalidInput(f"{list(chain.entries)} is not a proper T-chain")
        d2 = delta_squared(codiscrepancy(chain))
        assert d2 == kind.d - chain.length - 1, \
            "codiscrepancy square disagrees with d - r - 1"
        total += d2
    return total


# ---------------------------------------------------------------------------
# germ classification


@dataclass(frozen=True)
class QuotientGerm:
    """A hypersurface germ in a three-variable cyclic quotient.

    ``order`` is the group order n, ``action`` the weights of the three
    variables mod n, ``equation`` a truncated series in those variables.
    """

    order: int
    action: tuple[int, int, int]
    equation: TruncatedSeries

    def __post_init__(self):
        ring = self.equation.ring
        if ring.nvars != 3:
            raise InvalidInput("quotient germs live in three variables")
        n = self.order
        if n < 1:
            raise InvalidInput("group order must be positive")
        classes = {
            sum(w * e for w, e in zip(self.action, exps)) % n
            for exps in self.equation.poly.terms
        } if n > 1 else {0}
        if len(classes) > 1:
            raise InvalidInput(f"equation is not semi-invariant: classes {sorted(classes)}")
        object.__setattr__(self, "_class", classes.pop() if classes else 0)

    @property
    def invariance_class(self) -> int:
        return getattr(self, "_class")


def classify_germ(germ: QuotientGerm):
    """Match the germ against the index-one cover normal form x*y - z^(dn).

    Looks for a pair of variables whose degree-two part has an invertible
    two-by-two Hessian, Newton-solves the critical point as a series in the
    third variable, and reads the multiplicity k of the residual there; the
    quotient type is then 1/(k n) n (1, k a - 1) with a the normalised weight
    of the residual variable.  Unrecognized results mean "not matched at this
    truncation order", never a proof of absence.
    """
    f = germ.equation
    ring = f.ring
    n = germ.order
    names = ring.variables
    if f.poly.constant_term() != 0:
        return Unrecognized("nonzero constant term: point not on the germ")
    for i, name in enumerate(names):
        exps = tuple(1 if j == i else 0 for j in range(3))
        if f.poly.coefficient(exps) != 0:
            return SmoothPoint()
    if n > 1 and germ.invariance_class != 0:
        return Unrecognized("equation is not invariant")
    for i in range(3):
        for j in range(i + 1, 3):
            result = _classify_with_pair(germ, i, j)
            if result is not None:
                return result
    return Unrecognized("no hyperbolic variable pair found")


def _classify_with_pair(germ: QuotientGerm, i: int, j: int):
    f = germ.equation
    ring = f.ring
    n = germ.order
    names = ring.variables
    k_index = next(k for k in range(3) if k not in (i, j))

    def e(a, b, c):
        v = [0, 0, 0]
        v[i], v[j], v[k_index] = a, b, c
        return tuple(v)

    a2 = f.poly.coefficient(e(2, 0, 0))
    b2 = f.poly.coefficient(e(1, 1, 0))
    c2 = f.poly.coefficient(e(0, 2, 0))
    if 4 * a2 * c2 - b2 * b2 == 0:
        return None
    if n > 1:
        wi, wj, wk = germ.action[i], germ.action[j], germ.action[k_index]
        if (wi + wj) % n != 0:
            return None
        if gcd(wi % n, n) != 1:
            return None
    residual = _critical_residual(f, names[i], names[j])
    if residual is None:
        return None
    if residual.is_zero():
        raise TruncationTooShallow(
            f"residual in {names[k_index]} vanishes to order {f.order}")
    k = min(exps[ring.index(names[k_index])] for exps in residual.terms)
    if n == 1:
        return RationalDoublePoint(k - 1)
    wi = germ.action[i] % n
    wk = germ.action[k_index] % n
    if k % n != 0:
        return Unrecognized(f"residual multiplicity {k} not divisible by the order {n}")
    d = k // n
    a = (pow(wi, -1, n) * wk) % n
    if a == 0 or gcd(a, n) != 1:
        return Unrecognized(f"normalised weight {a} not coprime to {n}")
    return TSingularity(d, n, a)


def _critical_residual(f: TruncatedSeries, x: str, y: str) -> ExactPolynomial | None:
    """f at its critical point in (x, y), a series in the remaining variable.

    Solves f_x = f_y = 0 by a two-variable Newton iteration (the constant
    Hessian is invertible by choice of pair); returns None if the iteration
    fails, which only happens for inadmissible pairs.
    """
    ring = f.ring
    order = f.order
    weights = f.weight_map()
    fx, fy = f.poly.derivative(x), f.poly.derivative(y)
    hxx, hxy = fx.derivative(x), fx.derivative(y)
    hyy = fy.derivative(y)
    gx = ring.zero()
    gy = ring.zero()

    def trunc(p):
        return TruncatedSeries(p, order, f.weights).poly

    for _ in range(order + 2):
        sub = {x: gx, y: gy}
        rx = trunc(fx.substitute(sub))
        ry = trunc(fy.substitute(sub))
        if rx.is_zero() and ry.is_zero():
            value = TruncatedSeries(f.poly, order, f.weights).substitute(sub)
            return value.poly
        a = trunc(hxx.substitute(sub))
        b = trunc(hxy.substitute(sub))
        c = trunc(hyy.substitute(sub))
        det = a * c - b * b
        if det.constant_term() == 0:
            return None
        det_inv = TruncatedSeries(det, order, f.weights).inverse().poly
        # [gx, gy] -= H^{-1} [rx, ry] with H = [[a, b], [b, c]]
        dx = trunc((c * rx - b * ry) * det_inv)
        dy = trunc((a * ry - b * rx) * det_inv)
        gx = trunc(gx - dx)
        gy = trunc(gy - dy)
    return None


# ---------------------------------------------------------------------------
# the one-singularity catalogue (index, d, chain family)


def index_two_chain(d: int) -> list[int]:
    """The chain resolving 1/(4d)(1, 2d-1): [4], [3,3], [3,2,...,2,3]."""
    if d < 1:
        raise InvalidInput("d must be positive")
    if d == 1:
        return [4]
    return [3] + [2] * (d - 2) + [3]


SINGLE_SINGULARITY_TABLE = (
    {"index": 2, "d_max": 32, "family": "1/(4d)(1,2d-1)"},
    {"index": 3, "d": 2, "type": TSingularity(2, 3, 1)},
    {"index": 5, "d": 1, "type": TSingularity(1, 5, 3)},
)


def classification_to_json(result) -> dict:
    if isinstance(result, TSingularity):
        return result.to_json()
    if isinstance(result, RationalDoublePoint):
        return result.to_json()
    if isinstance(result, SmoothPoint):
        return {"smooth": True}
    return {"unrecognized": str(result)}

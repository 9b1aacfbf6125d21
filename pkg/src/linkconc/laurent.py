"""Exact Laurent polynomials in one variable ``t`` over the rationals.

Coefficients are ints or :class:`fractions.Fraction`; nothing here ever rounds.
A polynomial is stored sparsely as a mapping ``exponent -> coefficient``
with zero coefficients dropped, so ``t^-40 + t^40`` costs two entries.
"""

from __future__ import annotations

import itertools
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

Number = Union[int, Fraction]


def _norm(c: Fraction) -> Number:
    # integral coefficients are kept as ints: int arithmetic is much cheaper
    return c.numerator if c.denominator == 1 else c


def _clean(terms: dict) -> dict:
    """Drop zero coefficients and unbox integral fractions."""
    return {e: (c if type(c) is int else _norm(c)) for e, c in terms.items() if c}


class AlgebraError(ValueError):
    """Raised for arithmetic that has no answer (zero divisors, bad input)."""


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, Number]] = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _norm(Fraction(c))
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # trusted constructor: `terms` already has no zeros and int or Fraction values
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: Number, e: int) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number], shift: int = 0) -> "LaurentPoly":
        """Build from ascending coefficients ``c0 + c1 t + ...`` times ``t^shift``."""
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def min_exp(self) -> int:
        if not self._terms:
            raise AlgebraError("zero polynomial has no exponents")
        return min(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            raise AlgebraError("zero polynomial has no exponents")
        return max(self._terms)

    def span(self) -> int:
        """Width ``max_exp - min_exp``; the Euclidean norm of the ring. Zero has span -1."""
        if not self._terms:
            return -1
        return max(self._terms) - min(self._terms)

    def is_unit(self) -> bool:
        return len(self._terms) == 1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading_coeff(self) -> Fraction:
        return self._terms[self.max_exp()]

    def trailing_coeff(self) -> Fraction:
        return self._terms[self.min_exp()]

    def coeff(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def ascending_coeffs(self) -> list:
        """Coefficients from ``t^min`` to ``t^max`` inclusive."""
        if not self._terms:
            return []
        lo, hi = self.min_exp(), self.max_exp()
        return [self._terms.get(e, Fraction(0)) for e in range(lo, hi + 1)]

    def __call__(self, x: Number) -> Fraction:
        x = Fraction(x)
        if not x and any(e < 0 for e in self._terms):
            raise AlgebraError("cannot evaluate a negative power at 0")
        return sum((c * x ** e for e, c in self._terms.items()), Fraction(0))

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v if type(v) is int else _norm(v)
                else:
                    del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw(_clean(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise AlgebraError("only units have negative powers")
            (e, c), = self._terms.items()
            return LaurentPoly({e * n: c ** n})
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def scale(self, c: Number) -> "LaurentPoly":
        if type(c) is not int:
            c = _norm(Fraction(c))
        if not c:
            return ZERO
        if isinstance(c, int):
            return LaurentPoly._raw({e: v * c if type(v) is int else _norm(v * c)
                                     for e, v in self._terms.items()})
        num, den = c.numerator, c.denominator
        out = {}
        for e, v in self._terms.items():
            if type(v) is int:
                x = v * num
                out[e] = x // den if x % den == 0 else Fraction(x, den)
            else:
                out[e] = _norm(v * c)
        return LaurentPoly._raw(out)

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise AlgebraError(f"{self} is not a unit")
        (e, c), = self._terms.items()
        return LaurentPoly._raw({-e: _norm(Fraction(1) / c)})

    def conjugate(self) -> "LaurentPoly":
        """The substitution ``t -> t^-1``."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def divmod(self, other: "LaurentPoly"):
        """Euclidean division with ``span(r) < span(other)``.

        Works on the ordinary-polynomial representatives ``a t^-min(a)`` and
        ``b t^-min(b)`` and shifts the results back.
        """
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return ZERO, ZERO
        b_lo = other.min_exp()
        b_deg = other.max_exp() - b_lo
        lead_inv = _norm(Fraction(1) / other._terms[other.max_exp()])
        bt = {e - b_lo: c for e, c in other._terms.items()}
        a_lo = self.min_exp()
        rem = {e - a_lo: c for e, c in self._terms.items()}
        quo: dict = {}
        while rem:
            top = max(rem)
            if top < b_deg:
                break
            q = rem[top] * lead_inv
            k = top - b_deg
            quo[k] = q
            for e, c in bt.items():
                idx = e + k
                v = rem.get(idx, 0) - q * c
                if v:
                    rem[idx] = v
                else:
                    rem.pop(idx, None)
        q_poly = LaurentPoly._raw({e + a_lo - b_lo: _norm(c) for e, c in quo.items()})
        r_poly = LaurentPoly._raw({e + a_lo: _norm(c) for e, c in rem.items()})
        return q_poly, r_poly

    def pseudo_divmod(self, other: "LaurentPoly"):
        """``(s, q, r)`` with ``s * self = q * other + r`` and ``span(r) < span(other)``.

        ``s`` is a nonzero integer, so ``q`` and ``r`` keep integer
        coefficients when both inputs have them. Each step scales only by
        ``lead(other) / gcd(lead(other), lead(rem))``.
        """
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return 1, ZERO, ZERO
        b_lo = other.min_exp()
        b_deg = other.max_exp() - b_lo
        lb = other._terms[other.max_exp()]
        bt = [(e - b_lo, c) for e, c in other._terms.items()]
        a_lo = self.min_exp()
        rem = {e - a_lo: c for e, c in self._terms.items()}
        quo: dict = {}
        s = 1
        while rem:
            top = max(rem)
            if top < b_deg:
                break
            lr = rem[top]
            if isinstance(lr, int) and isinstance(lb, int):
                g = math.gcd(lr, lb)
                mult, c = lb // g, lr // g
                if lb < 0:
                    mult, c = -mult, -c
            else:
                mult, c = 1, _norm(Fraction(lr) / lb)
            if mult != 1:
                rem = {e: v * mult for e, v in rem.items()}
                quo = {e: v * mult for e, v in quo.items()}
                s *= mult
            k = top - b_deg
            quo[k] = quo.get(k, 0) + c
            for e, v in bt:
                idx = e + k
                w = rem.get(idx, 0) - c * v
                if w:
                    rem[idx] = w
                else:
                    rem.pop(idx, None)
        q_poly = LaurentPoly._raw(_clean({e + a_lo - b_lo: c for e, c in quo.items()}))
        r_poly = LaurentPoly._raw(_clean({e + a_lo: c for e, c in rem.items()}))
        return s, q_poly, r_poly

    def divides(self, other: "LaurentPoly") -> bool:
        """True iff ``self`` divides ``other`` in the Laurent ring."""
        if not self._terms:
            return not other._terms
        if len(self._terms) == 1 or not other._terms:
            return True
        return other.pseudo_divmod(self)[2].is_zero()

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        if len(other._terms) == 1:
            (e, c), = other._terms.items()
            return self.shift(-e) if c == 1 else self.shift(-e).scale(Fraction(1) / c)
        s, q, r = self.pseudo_divmod(other)
        if r:
            raise AlgebraError(f"{other} does not divide {self}")
        return q if s == 1 else q.scale(Fraction(1, s))

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_poly(self)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})


# -- normal forms -------------------------------------------------------------


def canonicalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical associate: min exponent 0, coprime integer coefficients, positive leading term."""
    if p.is_zero():
        raise AlgebraError("zero polynomial has no canonical associate")
    lo = p.min_exp()
    coeffs = p.terms.values()
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in coeffs]
    content = 0
    for v in ints:
        content = math.gcd(content, v)
    scale = Fraction(den_lcm, content)
    if p.leading_coeff() < 0:
        scale = -scale
    return LaurentPoly._raw({e - lo: c * scale for e, c in p.terms.items()})


def associate(a: LaurentPoly, b: LaurentPoly) -> bool:
    """Equality up to units ``c t^k``."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return canonicalize(a) == canonicalize(b)


def gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Canonical gcd via the Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise AlgebraError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a.divmod(b)[1]
    return canonicalize(a)


def xgcd(a: LaurentPoly, b: LaurentPoly):
    """Return ``(g, x, y)`` with ``x a + y b = g`` and ``g`` not canonicalised.

    With integer inputs the cofactors stay integral too (``g`` is then a
    primitive integer associate of the gcd).
    """
    if a.is_integral() and b.is_integral():
        return _xgcd_integral(a, b)
    x0, y0, x1, y1 = ONE, ZERO, ZERO, ONE
    while b:
        q, r = a.divmod(b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _xgcd_integral(a, b):
    # primitive pseudo-remainder sequence, each (r, x, y) divided by its content
    r0, x0, y0 = a, ONE, ZERO
    r1, x1, y1 = b, ZERO, ONE
    while r1:
        s, q, r = r0.pseudo_divmod(r1)
        x, y = x0.scale(s) - q * x1, y0.scale(s) - q * y1
        c = math.gcd(*(v for p in (r, x, y) for v in p._terms.values()))
        if c > 1:
            r, x, y = (p.scale(Fraction(1, c)) for p in (r, x, y))
        r0, x0, y0, r1, x1, y1 = r1, x1, y1, r, x, y
    return r0, x0, y0


def coprime(a: LaurentPoly, b: LaurentPoly) -> bool:
    return gcd(a, b) == ONE


# -- text form ------------------------------------------------------------------

_TERM_RE = re.compile(
    r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*t(?:\s*\^\s*\(?\s*([+-]?\d+)\s*\)?)?)?\s*"
)


def parse_poly(text: str) -> LaurentPoly:
    """Parse strings like ``"2t^2-5t+2"``, ``"t^-1 + 1/2"`` or ``"-3*t^(-2)"``."""
    s = text.strip()
    if not s:
        raise AlgebraError("empty polynomial string")
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise AlgebraError(f"cannot parse polynomial {text!r} at position {pos}")
        sign, num, tpart, exp = m.groups()
        if not sign and not first:
            raise AlgebraError(f"missing operator in {text!r} at position {pos}")
        if num is None and tpart is None:
            raise AlgebraError(f"dangling sign in {text!r}")
        c = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            c = -c
        e = 0
        if tpart is not None:
            e = int(exp) if exp is not None else 1
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(terms)


def format_poly(p: LaurentPoly) -> str:
    """Descending-order text form, e.g. ``2t^2-5t+2``."""
    if p.is_zero():
        return "0"
    out = []
    for e in sorted(p.terms, reverse=True):
        c = p.coeff(e)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            tpart = "t" if e == 1 else f"t^{e}"
            body = tpart if mag == 1 else f"{mag}{tpart}"
        out.append((sign, body))
    head_sign, head = out[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in out[1:]:
        text += sign + body
    return text


# -- Fox-Milnor -------------------------------------------------------------------

DEFAULT_MAX_DEGREE = 6
_SEARCH_BUDGET = 200_000


def default_max_degree() -> int:
    env = os.environ.get("LINKCONC_MAX_DEGREE")
    if env:
        return int(env)
    return DEFAULT_MAX_DEGREE


@dataclass(frozen=True)
class FoxMilnorResult:
    status: str  # "passes" | "fails" | "unknown"
    witness: Optional[LaurentPoly] = None
    reason: str = ""

    def __str__(self):
        if self.witness is not None:
            return f"{self.status} (f = {self.witness})"
        return f"{self.status} ({self.reason})" if self.reason else self.status


def _is_square(n: int) -> bool:
    n = abs(n)
    r = math.isqrt(n)
    return r * r == n


def _divisors(n: int) -> list:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _interpolate(xs, ys) -> Optional[list]:
    """Integer coefficients of the unique interpolant, or None if not integral."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        f = ys[i] / denom
        for k in range(n):
            coeffs[k] += f * basis[k]
    if any(c.denominator != 1 for c in coeffs):
        return None
    return [int(c) for c in coeffs]


def _kronecker(p: LaurentPoly, d: int, budget: int = _SEARCH_BUDGET):
    """Return ``(divisors, complete)`` for integer divisors of canonical ``p`` of degree ``d``."""
    pts = []
    x = 0
    while len(pts) < d + 1:
        for cand in ((x,) if x == 0 else (x, -x)):
            if len(pts) < d + 1 and p(cand) != 0:
                pts.append(cand)
        x += 1
    values = [int(p(x)) for x in pts]
    choices = []
    for i, v in enumerate(values):
        ds = _divisors(v)
        # overall sign is fixed later, so the first point only needs positive divisors
        choices.append(ds if i == 0 else ds + [-q for q in ds])
    total = 1
    for c in choices:
        total *= len(c)
    if total > budget:
        return [], False
    found = []
    seen = set()
    for ys in itertools.product(*choices):
        coeffs = _interpolate(pts, [Fraction(y) for y in ys])
        if coeffs is None or len(coeffs) != d + 1 or coeffs[d] == 0:
            continue
        f = LaurentPoly.from_coeffs(coeffs)
        if f.divides(p):
            f = canonicalize(f)
            if f.span() == d and f not in seen:
                seen.add(f)
                found.append(f)
    return found, True


def fox_milnor_check(p: LaurentPoly, max_degree: Optional[int] = None) -> FoxMilnorResult:
    """Bounded search for ``p = f(t) f(t^-1)`` up to units.

    Never reports ``passes`` without a witness whose product has been checked.
    """
    if max_degree is None:
        max_degree = default_max_degree()
    if p.is_zero():
        raise AlgebraError("zero polynomial has no canonical associate")
    q = canonicalize(p)
    if abs(q(1)) != 1:
        raise AlgebraError("not a knot Alexander polynomial")
    if q == ONE:
        return FoxMilnorResult("passes", ONE)
    if q.span() % 2:
        return FoxMilnorResult("fails", reason="odd degree")
    if not _is_square(int(q(-1))):
        return FoxMilnorResult("fails", reason=f"|p(-1)| = {abs(int(q(-1)))} is not a square")
    d = q.span() // 2
    if d > max_degree:
        return FoxMilnorResult("unknown", reason=f"degree {d} exceeds search bound {max_degree}")
    candidates, complete = _kronecker(q, d)
    for f in candidates:
        if canonicalize(f * f.conjugate()) == q:
            return FoxMilnorResult("passes", f)
    if not complete:
        return FoxMilnorResult("unknown", reason="search budget exhausted")
    return FoxMilnorResult("fails", reason="no factor of the form f(t)f(1/t)")

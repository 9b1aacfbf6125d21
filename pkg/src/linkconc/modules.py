"""Finitely presented modules over the Laurent ring ``Q[t, t^-1]``.

Everything is decided through the Smith normal form. ``Q[t, t^-1]`` is a
Euclidean domain with norm ``span = max_exp - min_exp``; units are the
nonzero monomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Union

from .laurent import ONE, ZERO, AlgebraError, LaurentPoly, canonicalize, format_poly, xgcd
from .wirtinger import WirtingerData, abelian_fox_row


class ModuleError(ValueError):
    pass


class LaurentMatrix:
    """Dense matrix of Laurent polynomials. Treated as immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[LaurentPoly]], rows: int = None, cols: int = None):
        self.entries = [list(r) for r in entries]
        self.rows = len(self.entries) if rows is None else rows
        self.cols = (len(self.entries[0]) if self.entries else 0) if cols is None else cols
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ModuleError("ragged matrix")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "LaurentMatrix":
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, values: Sequence[LaurentPoly]) -> "LaurentMatrix":
        n = len(values)
        return cls([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.cols != other.rows:
            raise ModuleError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(self.rows):
            row = self.entries[i]
            new = []
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = row[k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                new.append(acc)
            out.append(new)
        return LaurentMatrix(out, self.rows, other.cols)

    def apply(self, v: Sequence[LaurentPoly]) -> List[LaurentPoly]:
        if len(v) != self.cols:
            raise ModuleError("dimension mismatch")
        return [sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in self.entries]

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix([[self.entries[i][j] for i in range(self.rows)]
                              for j in range(self.cols)], self.cols, self.rows)

    def hstack(self, cols: Sequence[Sequence[LaurentPoly]]) -> "LaurentMatrix":
        out = [list(r) for r in self.entries]
        for c in cols:
            if len(c) != self.rows:
                raise ModuleError("dimension mismatch")
            for i, v in enumerate(c):
                out[i].append(v)
        return LaurentMatrix(out, self.rows, self.cols + len(cols))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_diagonal(self) -> bool:
        return all(not self.entries[i][j] for i in range(self.rows)
                   for j in range(self.cols) if i != j)

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.shape == other.shape and \
            self.entries == other.entries

    def __repr__(self):
        return "LaurentMatrix(%s)" % [[str(v) for v in r] for r in self.entries]

    def to_json_obj(self):
        return [[format_poly(v) for v in r] for r in self.entries]


def determinant(A: LaurentMatrix) -> LaurentPoly:
    """Fraction-free Bareiss elimination; every division is exact."""
    if A.rows != A.cols:
        raise ModuleError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return ONE
    M = [list(r) for r in A.entries]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return ZERO
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num.exact_div(prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


@dataclass
class SNFResult:
    D: LaurentMatrix
    U: Optional[LaurentMatrix]
    V: Optional[LaurentMatrix]
    divisors: List[LaurentPoly]

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def nonunit_divisors(self) -> List[LaurentPoly]:
        return [d for d in self.divisors if not d.is_unit()]


def _pick_pivot(D, k, m, n):
    best = None
    for i in range(k, m):
        row = D[i]
        for j in range(k, n):
            v = row[j]
            if v:
                s = v.span()
                if best is None or s < best[0]:
                    best = (s, i, j)
                    if s == 0:
                        return best
    return best


def _content(polys) -> Optional[Union[int, Fraction]]:
    """Rational ``c`` making every coefficient of ``polys / c`` a coprime integer."""
    num, den = 0, 1
    for p in polys:
        for c in p._terms.values():
            if type(c) is int:
                if num != 1:
                    num = math.gcd(num, c)
                continue
            if num != 1:
                num = math.gcd(num, c.numerator)
            d = c.denominator
            if d != 1:
                den = den * d // math.gcd(den, d)
    if num == 0:
        return None
    return num if den == 1 else Fraction(num, den)


def _primitive(a: LaurentPoly, b: LaurentPoly):
    c = _content([a, b])
    if c is None or c == 1:
        return a, b
    inv = Fraction(1) / c
    return a.scale(inv), b.scale(inv)


def _bezout(x: LaurentPoly, y: LaurentPoly):
    """A 2x2 matrix ``[[a, b], [c, d]]`` of unit determinant sending ``(x, y)`` to ``(g, 0)``.

    Each row is scaled to primitive integer coefficients; that changes the
    determinant by a nonzero rational, which is still a unit.
    """
    s, q, r = y.pseudo_divmod(x)
    if not r:
        return ONE, ZERO, -q, s  # d is the integer s here
    g, u, v = xgcd(x, y)
    a, b = _primitive(u, v)
    c, d = _primitive(-y.exact_div(g), x.exact_div(g))
    return a, b, c, d


def snf(A: LaurentMatrix, transforms: bool = True) -> SNFResult:
    """Smith normal form ``U A V = D`` over ``Q[t, t^-1]``.

    Pivot: nonzero entry of least span, ties to the smallest (row, col).
    Each entry of the pivot row and column is cleared by one Bezout step
    built from the extended Euclidean algorithm. ``divisors`` holds the
    canonical associates of the diagonal and reads as a divisibility chain
    ``d1 | d2 | ...``. The diagonal of ``D`` itself is normalised up to a
    positive integer factor, which keeps the transforms free of fractions.
    """
    m, n = A.rows, A.cols
    D = [list(r) for r in A.entries]
    U = [[ONE if i == j else ZERO for j in range(m)] for i in range(m)] if transforms else None
    V = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)] if transforms else None
    left = [D] + ([U] if U is not None else [])
    right = [D] + ([V] if V is not None else [])

    # Rows (columns) are kept primitive jointly with U (V): dividing a row of
    # [D | U] by a rational constant is a unit operation. With Bezout steps
    # this holds coefficient growth to what the divisors themselves need;
    # plain remainder sequences blow up badly on dense inputs.

    def rows2(k, i, a, b, c, d):  # (row_k, row_i) <- (a row_k + b row_i, c row_k + d row_i)
        if b is ZERO:
            # divisible case: row_k stays, row_i <- c row_k + d row_i with integer d
            s = d
            for M in left:
                rk, ri = M[k], M[i]
                M[i] = [(y.scale(s) if s != 1 else y) + c * x if x else
                        (y.scale(s) if s != 1 and y else y) for x, y in zip(rk, ri)]
            tidy_row(i)
            return
        for M in left:
            rk, ri = M[k], M[i]
            M[k] = [a * x + b * y if (x or y) else x for x, y in zip(rk, ri)]
            M[i] = [c * x + d * y if (x or y) else x for x, y in zip(rk, ri)]
        tidy_row(k)
        tidy_row(i)

    def cols2(k, j, a, b, c, d):  # same on columns k and j
        if b is ZERO:
            s = d
            for M in right:
                for row in M:
                    x, y = row[k], row[j]
                    if x:
                        row[j] = (y.scale(s) if s != 1 else y) + c * x
                    elif y and s != 1:
                        row[j] = y.scale(s)
            tidy_col(j)
            return
        for M in right:
            for row in M:
                x, y = row[k], row[j]
                if x or y:
                    row[k], row[j] = a * x + b * y, c * x + d * y
        tidy_col(k)
        tidy_col(j)

    def tidy_row(i):
        c = _content(D[i] + (U[i] if U is not None else []))
        if c is not None and c != 1:
            inv = Fraction(1) / c
            for M in left:
                M[i] = [v.scale(inv) if v else v for v in M[i]]

    def tidy_col(j):
        col = [D[i][j] for i in range(m)]
        if V is not None:
            col += [V[i][j] for i in range(n)]
        c = _content(col)
        if c is not None and c != 1:
            inv = Fraction(1) / c
            for M in right:
                for row in M:
                    if row[j]:
                        row[j] = row[j].scale(inv)

    for i in range(m):
        tidy_row(i)

    rank = 0
    for k in range(min(m, n)):
        piv = _pick_pivot(D, k, m, n)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != k:
            for M in left:
                M[k], M[pi] = M[pi], M[k]
        if pj != k:
            for M in right:
                for row in M:
                    row[k], row[pj] = row[pj], row[k]
        while True:
            for i in range(k + 1, m):
                if D[i][k]:
                    rows2(k, i, *_bezout(D[k][k], D[i][k]))
            for j in range(k + 1, n):
                if D[k][j]:
                    cols2(k, j, *_bezout(D[k][k], D[k][j]))
            if any(D[i][k] for i in range(k + 1, m)):
                continue  # the column steps refilled the pivot column
            p = D[k][k]
            bad = None
            if not p.is_unit():
                for i in range(k + 1, m):
                    if any(x and not p.divides(x) for x in D[i][k + 1:]):
                        bad = i
                        break
            if bad is None:
                break
            rows2(k, bad, ONE, ONE, ZERO, ONE)
        rank += 1
    divisors = []
    for k in range(rank):
        d = D[k][k]
        c = canonicalize(d)
        # strip sign and power of t only; a positive rational factor may stay
        # on the diagonal so the transforms keep integer coefficients
        lo = d.min_exp()
        u = LaurentPoly.monomial(1 if d.leading_coeff() > 0 else -1, -lo)
        if u != ONE:
            D[k] = [v * u if v else v for v in D[k]]
            if U is not None:
                U[k] = [v * u if v else v for v in U[k]]
        divisors.append(c)
    return SNFResult(
        LaurentMatrix(D, m, n),
        LaurentMatrix(U, m, m) if U is not None else None,
        LaurentMatrix(V, n, n) if V is not None else None,
        divisors,
    )


# -- module presentations ------------------------------------------------------------


class ModulePresentation:
    """Module ``Q[t^+-1]^g / (column span of relations)``."""

    def __init__(self, relations: LaurentMatrix, generator_labels: Sequence[int] = None):
        self.relations = relations
        self.generator_count = relations.rows
        self.generator_labels = tuple(generator_labels if generator_labels is not None
                                      else range(relations.rows))

    @cached_property
    def snf(self) -> SNFResult:
        return snf(self.relations, transforms=True)

    @cached_property
    def _diagonal(self) -> SNFResult:
        # divisors alone do not need U and V, which dominate the cost
        if "snf" in self.__dict__:
            return self.snf
        return snf(self.relations, transforms=False)

    def divisors(self) -> List[LaurentPoly]:
        return self._diagonal.divisors

    def nonunit_divisors(self) -> List[LaurentPoly]:
        return self._diagonal.nonunit_divisors()

    def free_rank(self) -> int:
        return self.generator_count - self._diagonal.rank

    def is_torsion(self) -> bool:
        return self.free_rank() == 0

    def is_cyclic(self) -> bool:
        return self.is_torsion() and len(self.nonunit_divisors()) <= 1

    def is_trivial_module(self) -> bool:
        return self.is_torsion() and not self.nonunit_divisors()

    def to_json_obj(self) -> dict:
        return {
            "generators": self.generator_count,
            "relations": self.relations.to_json_obj(),
            "divisors": [format_poly(d) for d in self.divisors()],
        }


@dataclass(frozen=True)
class ModuleElement:
    coords: tuple

    def __init__(self, coords: Sequence[LaurentPoly]):
        object.__setattr__(self, "coords", tuple(coords))

    def __len__(self):
        return len(self.coords)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        if len(self) != len(other):
            raise ModuleError("dimension mismatch")
        return ModuleElement([a + b for a, b in zip(self.coords, other.coords)])

    def scale(self, p: LaurentPoly) -> "ModuleElement":
        return ModuleElement([p * a for a in self.coords])

    def is_zero_vector(self) -> bool:
        return all(not c for c in self.coords)

    def to_json_obj(self):
        return [format_poly(c) for c in self.coords]

    def __str__(self):
        return "(" + ", ".join(format_poly(c) for c in self.coords) + ")"


def alexander_presentation(W: WirtingerData, deleted: int = 0) -> ModulePresentation:
    """Abelianised Fox Jacobian with generator ``deleted`` struck out, relators as columns."""
    n = W.num_generators
    if not 0 <= deleted < n:
        raise ModuleError(f"no generator {deleted}")
    keep = [g for g in range(n) if g != deleted]
    cols = []
    for r in W.relations:
        row = abelian_fox_row(r, n)
        cols.append([row[g] for g in keep])
    rel = LaurentMatrix.zeros(n - 1, 0).hstack(cols) if cols else LaurentMatrix.zeros(n - 1, 0)
    return ModulePresentation(rel, keep)


def alexander_polynomial(M: ModulePresentation) -> LaurentPoly:
    """Order of a torsion module: canonical product of its elementary divisors."""
    if not M.is_torsion():
        raise ModuleError("module has free rank > 0")
    out = ONE
    for d in M.nonunit_divisors():
        out = out * d
    return canonicalize(out)


def lift_class(W: WirtingerData, M: ModulePresentation, j: int) -> ModuleElement:
    """Class of the lift of component ``j`` in the module ``M`` of ``W``'s exterior.

    Well defined up to a unit ``t^k`` set by where the word starts.
    """
    if j not in W.peripheral_words:
        raise ModuleError(f"no component {j} outside the exterior")
    return word_class(W.peripheral_words[j], W.num_generators, M)


def word_class(w, n: int, M: ModulePresentation) -> ModuleElement:
    if w.exponent_sum() != 0:
        raise ModuleError("lift is not a closed loop in the infinite cyclic cover")
    row = abelian_fox_row(w, n)
    return ModuleElement([row[g] for g in M.generator_labels])


def is_trivial(M: ModulePresentation, v: ModuleElement) -> bool:
    """Whether ``v`` lies in the span of the relations."""
    if len(v) != M.generator_count:
        raise ModuleError("dimension mismatch")
    S = M.snf
    w = S.U.apply(list(v.coords))
    for k, d in enumerate(S.divisors):
        if w[k] and not d.divides(w[k]):
            return False
    return all(not x for x in w[S.rank:])


def generation_divisors(M: ModulePresentation, elems: Sequence[ModuleElement]) -> List[LaurentPoly]:
    """Elementary divisors of the quotient of ``M`` by the span of ``elems``."""
    for v in elems:
        if len(v) != M.generator_count:
            raise ModuleError("dimension mismatch")
    if "snf" not in M.__dict__:
        aug = M.relations.hstack([list(v.coords) for v in elems])
        return snf(aug, transforms=False).divisors
    # With U A V = D known, [A | E] is equivalent to [D | U E]. A unit on the
    # diagonal clears its row, so only the other rows are left to reduce.
    S = M.snf
    images = [S.U.apply(list(v.coords)) for v in elems]
    keep = [k for k in range(M.generator_count) if k >= S.rank or not S.divisors[k].is_unit()]
    diag = [k for k in keep if k < S.rank]
    rows = [[S.D[k, k] if c == k else ZERO for c in diag] + [w[k] for w in images]
            for k in keep]
    rest = snf(LaurentMatrix(rows, len(keep), len(diag) + len(images)), transforms=False)
    return [ONE] * (M.generator_count - len(keep)) + rest.divisors


def generates(M: ModulePresentation, elems: Sequence[ModuleElement]) -> bool:
    divs = generation_divisors(M, elems)
    return len(divs) == M.generator_count and all(d.is_unit() for d in divs)


def quotient_order(M: ModulePresentation, elems: Sequence[ModuleElement]) -> Optional[LaurentPoly]:
    """Order of ``M / <elems>``; ``None`` if the quotient is not torsion."""
    divs = generation_divisors(M, elems)
    if len(divs) < M.generator_count:
        return None
    out = ONE
    for d in divs:
        out = out * d
    return canonicalize(out)


def presentation_from_matrix(rel: LaurentMatrix) -> ModulePresentation:
    return ModulePresentation(rel)


def seifert_alexander(V: Sequence[Sequence[int]]) -> LaurentPoly:
    """``det(V - t V^T)`` in canonical form, the classical Seifert-matrix route."""
    n = len(V)
    if n == 0:
        return ONE
    from .laurent import T
    M = LaurentMatrix([[LaurentPoly.const(V[i][j]) - T * V[j][i] for j in range(n)]
                       for i in range(n)])
    d = determinant(M)
    if d.is_zero():
        raise AlgebraError("degenerate Seifert matrix")
    return canonicalize(d)

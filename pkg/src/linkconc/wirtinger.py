"""Wirtinger presentations of single-component exteriors and Fox calculus.

For component ``i`` of a diagram the generators are the arcs of ``i`` once
every other component has been erased, so an arc only ends where ``i``
passes under itself. The words of the other components are nonetheless
read from the full diagram: walking along component ``j``, every time it
passes under an arc of ``i`` the arc's generator is appended with exponent
equal to the crossing sign. With that reading rule the relation at a
self-crossing with incoming under-arc ``x_a``, outgoing ``x_c``, over-arc
``x_o`` and sign ``e`` is ``x_c = x_o^-e x_a x_o^e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .diagram import LinkDiagram
from .laurent import LaurentPoly

Letter = Tuple[int, int]  # (generator index, +1 or -1)


class FreeWord:
    """A word in free generators ``0, 1, 2, ...``; reduction happens only on request."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        letters = tuple((int(g), int(e)) for g, e in letters)
        for g, e in letters:
            if e not in (1, -1):
                raise ValueError(f"letter exponent must be +-1, got {e}")
        self.letters = letters

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "FreeWord":
        return cls([(g, 1 if e > 0 else -1)] * abs(e))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord((g, -e) for g, e in reversed(self.letters))

    def reduce(self) -> "FreeWord":
        out: List[Letter] = []
        for g, e in self.letters:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return FreeWord(out)

    def exponent_sum(self, weights: Mapping[int, int] = None) -> int:
        if weights is None:
            return sum(e for _, e in self.letters)
        return sum(weights[g] * e for g, e in self.letters)

    def rotate(self, k: int) -> "FreeWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return FreeWord(self.letters[k:] + self.letters[:k])

    def insert(self, pos: int, w: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters[:pos] + w.letters + self.letters[pos:])

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"FreeWord({format_word(self)!r})"

    def __str__(self):
        return format_word(self)


def format_word(w: FreeWord) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"x{g + 1}" if e == 1 else f"x{g + 1}^-1" for g, e in w.letters)


class GroupRingElement:
    """Finite rational combination of free words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[FreeWord, Fraction] = None):
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c}

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def left_mul(self, u: FreeWord) -> "GroupRingElement":
        """``u * self``."""
        out: Dict[FreeWord, Fraction] = {}
        for w, c in self.terms.items():
            k = (u * w).reduce()
            out[k] = out.get(k, 0) + c
        return GroupRingElement(out)

    def reduced(self) -> "GroupRingElement":
        out: Dict[FreeWord, Fraction] = {}
        for w, c in self.terms.items():
            k = w.reduce()
            out[k] = out.get(k, 0) + c
        return GroupRingElement(out)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.reduced().terms == other.reduced().terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{w}]" for w, c in self.terms.items())


def fox_derivative(w: FreeWord, g: int) -> GroupRingElement:
    """Free derivative d w / d x_g by the product rule, letter by letter."""
    out: Dict[FreeWord, int] = {}
    stack: List[Letter] = []  # the reduced prefix so far
    for h, e in w.letters:
        if h == g and e == 1:
            key = FreeWord(stack)
            out[key] = out.get(key, 0) + 1
        if stack and stack[-1] == (h, -e):
            stack.pop()
        else:
            stack.append((h, e))
        if h == g and e == -1:
            key = FreeWord(stack)
            out[key] = out.get(key, 0) - 1
    return GroupRingElement(out)


def abelianize(x: GroupRingElement, weights: Mapping[int, int]) -> LaurentPoly:
    """Send every word to ``t`` to the power of its weighted exponent sum."""
    terms: Dict[int, Fraction] = {}
    for w, c in x.terms.items():
        for g, _ in w.letters:
            if g not in weights:
                raise KeyError(f"generator x{g + 1} has no weight")
        e = w.exponent_sum(weights)
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly(terms)


def abelian_fox_row(w: FreeWord, n: int) -> List[LaurentPoly]:
    """All ``n`` abelianised derivatives of ``w`` at once, every generator of weight 1."""
    acc: List[Dict[int, int]] = [dict() for _ in range(n)]
    p = 0
    for g, e in w.letters:
        if e == 1:
            acc[g][p] = acc[g].get(p, 0) + 1
            p += 1
        else:
            p -= 1
            acc[g][p] = acc[g].get(p, 0) - 1
    return [LaurentPoly(d) for d in acc]


@dataclass(frozen=True)
class WirtingerData:
    component: int
    generators: Tuple[int, ...]
    relations: Tuple[FreeWord, ...]
    peripheral_words: Dict[int, FreeWord] = field(default_factory=dict)
    arc_of_edge: Dict[int, int] = field(default_factory=dict)

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def weights(self) -> Dict[int, int]:
        return {g: 1 for g in self.generators}

    def is_wirtinger_relation(self, r: FreeWord) -> bool:
        L = r.letters
        return (len(L) == 4 and L[0][1] == 1 and L[2][1] == -1
                and L[1][0] == L[3][0] and L[1][1] == -L[3][1])

    def to_text(self) -> str:
        n = len(self.generators)
        parts = [f"gens: x1..x{n}" if n > 1 else "gens: x1"]
        for r in self.relations:
            (c, _), (o, e), (a, _), _ = r.letters
            # x_c = x_o^-e x_a x_o^e
            lhs = f"x{c + 1}"
            oe = f"x{o + 1}" if -e == 1 else f"x{o + 1}^-1"
            oe2 = f"x{o + 1}" if e == 1 else f"x{o + 1}^-1"
            parts.append(f"rel: {lhs} = {oe} x{a + 1} {oe2}")
        for j in sorted(self.peripheral_words):
            parts.append(f"periph L{j}: {format_word(self.peripheral_words[j])}")
        return "; ".join(parts)


def _arcs(L: LinkDiagram, i: int) -> Dict[int, int]:
    comp = L.components[i - 1]
    if L.is_unknot_component(i):
        return {comp[0]: 0}

    def starts_arc(e: int) -> bool:
        x, s = L.tail(e)
        return s == 2 and L.over_component(x) == i

    starts = [k for k, e in enumerate(comp) if starts_arc(e)]
    if not starts:
        return {e: 0 for e in comp}
    k0 = starts[0]
    order = comp[k0:] + comp[:k0]
    arc, out = -1, {}
    for e in order:
        if starts_arc(e):
            arc += 1
        out[e] = arc
    return out


def wirtinger(L: LinkDiagram, i: int) -> WirtingerData:
    """Presentation of the exterior of component ``i`` plus the words of all other components."""
    L.check_component(i)
    arc = _arcs(L, i)
    n = max(arc.values()) + 1
    rels = []
    for x, slots in enumerate(L.pd):
        a, b, c, d = slots
        if L.component_of(a) != i or L.component_of(b) != i:
            continue
        e = L.sign(x)
        xa, xc, xo = arc[a], arc[c], arc[b]
        rels.append(FreeWord([(xc, 1), (xo, -e), (xa, -1), (xo, e)]))
    words = {}
    for j in L.component_ids:
        if j == i:
            continue
        letters = []
        if not L.is_unknot_component(j):
            for e in L.components[j - 1]:
                x, s = L.head(e)
                if s == 0 and L.over_component(x) == i:
                    letters.append((arc[L.pd[x][1]], L.sign(x)))
        words[j] = FreeWord(letters)
    return WirtingerData(i, tuple(range(n)), tuple(rels), words, arc)


def permute_generators(W: WirtingerData, perm: Sequence[int]) -> WirtingerData:
    """Rename generator ``g`` to ``perm[g]`` everywhere."""
    if sorted(perm) != list(range(len(W.generators))):
        raise ValueError("not a permutation of the generators")
    ren = lambda w: FreeWord((perm[g], e) for g, e in w.letters)
    return WirtingerData(
        W.component, W.generators, tuple(ren(r) for r in W.relations),
        {j: ren(w) for j, w in W.peripheral_words.items()},
        {e: perm[g] for e, g in W.arc_of_edge.items()},
    )

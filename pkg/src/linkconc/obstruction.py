"""Concordance obstructions from lifts that generate an Alexander module.

Take a link whose pairwise linking numbers vanish and fix a component
``L_i`` that is slice with ``Delta_i`` not a unit. If the lifts of the other
components generate ``A(L_i)``, then ``L`` is not concordant to any link
whose ``i``-th component has Alexander polynomial coprime to ``Delta_i``.
For a slice disk ``D`` the inclusion-induced map ``A(L_i) -> A(D)`` is
nonzero, so generation survives any concordance. The same conclusion rules
out boundary links, whose lift classes are all zero.

The checks here only ever say OBSTRUCTED or INCONCLUSIVE. Sliceness is not
computed: the caller asserts it, and the assertion is gated by the
Fox-Milnor condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from .diagram import LinkDiagram, linking_matrix
from .laurent import LaurentPoly, canonicalize, fox_milnor_check, format_poly, gcd, parse_poly
from .modules import (ModuleElement, ModulePresentation, alexander_polynomial,
                      alexander_presentation, generation_divisors, lift_class)
from .wirtinger import WirtingerData, wirtinger

OBSTRUCTED = "OBSTRUCTED"
INCONCLUSIVE = "INCONCLUSIVE"

ASSERTED = "asserted-slice"
UNKNOWN = "unknown"

# condition names, in the order they are checked
LINKING = "linking_numbers"
SLICENESS = "sliceness"
NONTRIVIAL = "nontrivial_delta"
GENERATION = "generation"
COPRIMALITY = "coprimality"


class ObstructionError(ValueError):
    pass


@dataclass(frozen=True)
class PolynomialSet:
    polys: Tuple[LaurentPoly, ...]

    def __init__(self, polys: Iterable[Union[LaurentPoly, str, int]]):
        out = []
        for p in polys:
            if isinstance(p, str):
                p = parse_poly(p)
            elif isinstance(p, int):
                p = LaurentPoly.const(p)
            c = canonicalize(p)
            if c not in out:
                out.append(c)
        object.__setattr__(self, "polys", tuple(out))

    @classmethod
    def unknot(cls) -> "PolynomialSet":
        return cls([1])

    @classmethod
    def parse(cls, text: str) -> "PolynomialSet":
        """``unknot`` or a comma/whitespace separated list such as ``"1, t^2-t+1"``."""
        text = text.strip()
        if text.lower() == "unknot":
            return cls.unknot()
        items = [s for s in text.replace(";", ",").split(",") if s.strip()]
        return cls(items)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "PolynomialSet":
        items = [ln.strip() for ln in lines]
        return cls([p for p in items if p and not p.startswith("#")])

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def issubset(self, other: "PolynomialSet") -> bool:
        return all(p in other.polys for p in self.polys)

    def to_json_obj(self):
        return [format_poly(p) for p in self.polys]


@dataclass(frozen=True)
class SlicenessAssertion:
    component: int
    status: str = ASSERTED
    fox_milnor: str = UNKNOWN
    provenance: str = ""

    def usable(self) -> bool:
        return self.status == ASSERTED and self.fox_milnor != "fails"

    def to_json_obj(self) -> dict:
        return {"component": self.component, "status": self.status,
                "fox_milnor": self.fox_milnor, "provenance": self.provenance}


def assert_slice(L: LinkDiagram, i: int, provenance: str = "user assertion",
                 max_degree: Optional[int] = None) -> SlicenessAssertion:
    """An asserted-slice record for component ``i`` with its Fox-Milnor status filled in."""
    d = exterior(L, i).delta
    fm = fox_milnor_check(d, max_degree).status
    return SlicenessAssertion(i, ASSERTED, fm, provenance)


def assert_all(L: LinkDiagram, ids: Optional[Iterable[int]] = None,
               provenance: str = "user assertion") -> List[SlicenessAssertion]:
    ids = L.component_ids if ids is None else ids
    return [assert_slice(L, i, provenance) for i in ids]


@dataclass(frozen=True)
class Exterior:
    W: WirtingerData
    M: ModulePresentation
    delta: LaurentPoly

    def lift(self, j: int) -> ModuleElement:
        return lift_class(self.W, self.M, j)


@lru_cache(maxsize=256)
def exterior(L: LinkDiagram, i: int) -> Exterior:
    W = wirtinger(L, i)
    M = alexander_presentation(W)
    return Exterior(W, M, alexander_polynomial(M))


@lru_cache(maxsize=256)
def _lift_generation(L: LinkDiagram, i: int) -> Tuple[bool, Tuple[LaurentPoly, ...]]:
    """Do the lifts of the other components generate ``A(L_i)``? Also the nonunit quotient divisors."""
    ext = exterior(L, i)
    divs = generation_divisors(ext.M, [ext.lift(j) for j in L.component_ids if j != i])
    gen = len(divs) == ext.M.generator_count and all(d.is_unit() for d in divs)
    return gen, tuple(d for d in divs if not d.is_unit())


@dataclass
class ObstructionReport:
    component: int
    verdict: str
    delta: LaurentPoly
    linking_matrix: List[List[int]]
    generation: Optional[bool]
    divisors: List[LaurentPoly]
    coprimality: List[Tuple[LaurentPoly, LaurentPoly]]
    boundary_link_obstructed: bool
    assertions: List[SlicenessAssertion]
    failed: List[str] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "component": self.component,
            "verdict": self.verdict,
            "delta": format_poly(self.delta),
            "linking_matrix": self.linking_matrix,
            "generation": {"result": self.generation,
                           "divisors": [format_poly(d) for d in self.divisors]},
            "coprimality": [{"poly": format_poly(p), "gcd": format_poly(g)}
                            for p, g in self.coprimality],
            "boundary_link_obstructed": self.boundary_link_obstructed,
            "assertions": [a.to_json_obj() for a in self.assertions],
            "failed_conditions": list(self.failed),
        }

    def to_text(self) -> str:
        lines = [f"component {self.component}: {self.verdict}",
                 f"  delta: {format_poly(self.delta)}",
                 f"  linking matrix: {self.linking_matrix}"]
        gen = "not evaluated" if self.generation is None else str(self.generation).lower()
        divs = ", ".join(format_poly(d) for d in self.divisors)
        lines.append(f"  lifts generate: {gen} (divisors: [{divs}])")
        for p, g in self.coprimality:
            lines.append(f"  gcd(delta, {format_poly(p)}) = {format_poly(g)}")
        lines.append(f"  boundary link obstructed: {str(self.boundary_link_obstructed).lower()}")
        if self.failed:
            lines.append("  failed: " + ", ".join(self.failed))
        return "\n".join(lines)


def _preconditions(L: LinkDiagram, i: int, assertions: Sequence[SlicenessAssertion]):
    """Conditions shared by both checks; returns the evidence and the failures so far."""
    L.check_component(i)
    if L.num_components() < 2:
        raise ObstructionError("the obstruction needs at least two components")
    lk = linking_matrix(L)
    failed = []
    if any(v != 0 for row in lk for v in row):
        failed.append(LINKING)
    used = [a for a in assertions if a.component == i]
    if not any(a.usable() for a in used):
        failed.append(SLICENESS)
    ext = exterior(L, i)
    if ext.delta.is_unit():
        failed.append(NONTRIVIAL)
    others = [j for j in L.component_ids if j != i]
    gen, divs = None, []
    # lifts are closed loops in the cover only when they link L_i trivially
    if all(lk[j - 1][i - 1] == 0 for j in others):
        gen, divs = _lift_generation(L, i)
        divs = list(divs)
    if not gen:
        failed.append(GENERATION)
    return lk, ext, gen, divs, used, failed


def check_corollary(L: LinkDiagram, i: int, D: PolynomialSet,
                    assertions: Sequence[SlicenessAssertion]) -> ObstructionReport:
    """Is ``L`` obstructed from being concordant to a link whose ``i``-th component has Delta in ``D``?"""
    if not len(D):
        raise ObstructionError("the polynomial set D is empty")
    lk, ext, gen, divs, used, failed = _preconditions(L, i, assertions)
    boundary = not failed
    cop = [(p, gcd(ext.delta, p)) for p in D]
    if any(not g.is_unit() for _, g in cop):
        failed.append(COPRIMALITY)
    verdict = INCONCLUSIVE if failed else OBSTRUCTED
    return ObstructionReport(i, verdict, ext.delta, lk, gen, divs, cop, boundary, used, failed)


def check_boundary(L: LinkDiagram, i: int,
                   assertions: Sequence[SlicenessAssertion]) -> ObstructionReport:
    """Is ``L`` obstructed from being concordant to a boundary link?"""
    lk, ext, gen, divs, used, failed = _preconditions(L, i, assertions)
    verdict = INCONCLUSIVE if failed else OBSTRUCTED
    return ObstructionReport(i, verdict, ext.delta, lk, gen, divs, [], not failed, used, failed)


def full_scan(L: LinkDiagram, D: PolynomialSet,
              assertions: Sequence[SlicenessAssertion]) -> List[ObstructionReport]:
    """One report per component; each carries the boundary-link verdict in its flag."""
    out = []
    for i in L.component_ids:
        rep = check_corollary(L, i, D, assertions)
        rep.boundary_link_obstructed = check_boundary(L, i, assertions).verdict == OBSTRUCTED
        out.append(rep)
    return out


def scan_verdict(reports: Sequence[ObstructionReport]) -> str:
    return OBSTRUCTED if any(r.verdict == OBSTRUCTED for r in reports) else INCONCLUSIVE


@dataclass(frozen=True)
class TwistSearch:
    m: int
    table: Tuple[Tuple[int, LaurentPoly], ...]

    def to_json_obj(self) -> dict:
        return {"m": self.m, "table": [{"m": k, "delta": format_poly(d)} for k, d in self.table]}


def find_twist_parameter(builder: Callable[[int], object], D: PolynomialSet,
                         m_max: int, component: int = 1) -> TwistSearch:
    """Smallest ``m`` in ``1..m_max`` whose component Delta is a nonunit coprime to all of ``D``.

    ``builder(m)`` returns a diagram (or anything with a ``diagram``) of the
    ``m``-th member of the family.
    """
    if m_max < 1:
        raise ObstructionError("m_max must be at least 1")
    table = []
    for m in range(1, m_max + 1):
        L = builder(m)
        L = getattr(L, "diagram", L)
        d = exterior(L, component).delta
        if abs(d(1)) != 1:
            raise ObstructionError(f"Delta at m = {m} has Delta(1) = {d(1)}, not a knot polynomial")
        table.append((m, d))
        if not d.is_unit() and all(gcd(d, p).is_unit() for p in D):
            return TwistSearch(m, tuple(table))
    raise ObstructionError(f"no admissible twist parameter ≤ m_max = {m_max}")

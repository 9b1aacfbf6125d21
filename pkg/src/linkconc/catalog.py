"""Named knots and links, each pinned by machine-checked properties.

The diagrams are produced by :class:`~linkconc.levels.LevelBuilder` recipes
rather than typed-in PD tuples. A recipe is trusted only as far as its pins
go: every entry re-checks its Alexander polynomials, linking numbers and
generation facts when it is loaded, and refuses to load if one fails.

The basic building block is the pretzel knot ``P(3, 3, -3)``, drawn as three
vertical twist columns closed off by cups and caps. It is slice with
``Delta = 2t^2 - 5t + 2`` and a cyclic Alexander module. A component ``X``
interacts with a body ``Y`` through a finger: a strand of ``X`` that runs
over some of ``Y``'s columns and comes straight back under them. The finger
links nothing, but its lift records which columns it surrounded. Around the
negative column it generates ``A(Y)``; around the left column the quotient
has order ``t - 2`` and around the middle column ``2t - 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .diagram import (DiagramError, LinkDiagram, connected_sum, insert_knot,
                      insert_twists, linking_matrix, parse_pd)
from .laurent import LaurentPoly, canonicalize, fox_milnor_check, parse_poly
from .levels import LevelBuilder
from .modules import (alexander_polynomial, alexander_presentation, generates,
                      lift_class, quotient_order, seifert_alexander)
from .wirtinger import wirtinger


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Pin:
    claim: str
    check: Callable[[LinkDiagram], bool] = field(compare=False, repr=False)
    provenance: str = ""


@dataclass(frozen=True)
class SliceNote:
    component: int
    provenance: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    diagram: LinkDiagram
    pins: Tuple[Pin, ...] = ()
    slice_components: Tuple[SliceNote, ...] = ()
    seifert: Optional[Tuple[Tuple[int, ...], ...]] = None

    def verify(self) -> List[Tuple[str, bool]]:
        return [(p.claim, bool(p.check(self.diagram))) for p in self.pins]

    def slice_ids(self) -> List[int]:
        return [s.component for s in self.slice_components]


def _load(entry: CatalogEntry) -> CatalogEntry:
    bad = [claim for claim, ok in entry.verify() if not ok]
    if bad:
        raise CatalogError(f"catalog entry {entry.name} fails its pins: " + "; ".join(bad))
    return entry


# -- pin helpers --------------------------------------------------------------------


def component_delta(L: LinkDiagram, i: int) -> LaurentPoly:
    return alexander_polynomial(alexander_presentation(wirtinger(L, i)))


def lifts_generate(L: LinkDiagram, i: int, others: Sequence[int]) -> bool:
    W = wirtinger(L, i)
    M = alexander_presentation(W)
    return generates(M, [lift_class(W, M, j) for j in others])


def lift_quotient(L: LinkDiagram, i: int, others: Sequence[int]) -> Optional[LaurentPoly]:
    W = wirtinger(L, i)
    M = alexander_presentation(W)
    return quotient_order(M, [lift_class(W, M, j) for j in others])


def _delta_pin(i: int, p: LaurentPoly, provenance: str = "") -> Pin:
    return Pin(f"Delta(L{i}) = {p}", lambda L: component_delta(L, i) == canonicalize(p),
               provenance)


def _lk_zero_pin() -> Pin:
    return Pin("all pairwise linking numbers vanish",
               lambda L: all(v == 0 for row in linking_matrix(L) for v in row))


def _cyclic_pin(i: int) -> Pin:
    def check(L):
        return alexander_presentation(wirtinger(L, i)).is_cyclic()
    return Pin(f"A(L{i}) is cyclic", check)


def _gen_pin(i: int, others: Sequence[int], expect: bool = True, provenance: str = "") -> Pin:
    others = tuple(others)
    names = ", ".join(f"L{j}" for j in others)
    word = "generate" if expect else "do not generate"
    return Pin(f"lifts of {names} {word} A(L{i})",
               lambda L: lifts_generate(L, i, others) == expect, provenance)


def _fox_milnor_pin(i: int) -> Pin:
    return Pin(f"Delta(L{i}) passes the Fox-Milnor check",
               lambda L: fox_milnor_check(component_delta(L, i)).status == "passes")


def _seifert_pin(V) -> Pin:
    return Pin("Delta agrees with det(V - tV^T)",
               lambda L: component_delta(L, 1) == seifert_alexander(V))


# -- building blocks ----------------------------------------------------------------------

DELTA_946 = parse_poly("2t^2-5t+2")
BODY_TWISTS = (3, 3, -3)
BODY_WIDTH = 6

_SLICE_946 = "ribbon disk from one band move on the pretzel P(3,3,-3)"


def cup_body(b: LevelBuilder, base: int, tag) -> LevelBuilder:
    """Open the six strands of a pretzel body at ``base`` (cups at base, base+1, base+3)."""
    return b.cup(base, tag, True).cup(base + 1, tag).cup(base + 3, tag)


def twist_body(b: LevelBuilder, base: int, twists: Sequence[int] = BODY_TWISTS) -> LevelBuilder:
    for k, h in enumerate(twists):
        b.twist(base + 2 * k, h)
    return b


def cap_body(b: LevelBuilder, base: int) -> LevelBuilder:
    return b.cap(base + 3).cap(base + 1).cap(base)


def finger(b: LevelBuilder, src: int, path: Sequence[Tuple[int, bool]]) -> LevelBuilder:
    """Walk the strand at ``src`` through the stops in ``path``, each passed over or under."""
    for dst, over in path:
        b.move(src, dst, over)
        src = dst
    return b


def _pretzel_946() -> LinkDiagram:
    b = LevelBuilder()
    cup_body(b, 0, "K")
    twist_body(b, 0)
    return cap_body(b, 0).build()


_KNOT_PD = {
    "unknot": "O(1)",
    "trefoil": "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
    "figure8": "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
}

_SEIFERT = {
    "unknot": (),
    "trefoil": ((-1, 1), (0, -1)),
    "figure8": ((-1, 1), (0, 1)),
    "k9_46": ((3, 2), (1, 0)),
    "trefoil#trefoil": ((-1, 1, 0, 0), (0, -1, 0, 0), (0, 0, -1, 1), (0, 0, 0, -1)),
}

_ALIASES = {
    "9_46": "k9_46", "946": "k9_46", "u": "unknot", "0_1": "unknot", "3_1": "trefoil",
    "4_1": "figure8", "figure-eight": "figure8", "figure_eight": "figure8",
}

KNOT_NAMES = ("unknot", "trefoil", "figure8", "k9_46", "trefoil#trefoil")


def trefoil_braid() -> LinkDiagram:
    """A second trefoil diagram, the closure of the braid ``s1^3``."""
    b = LevelBuilder()
    b.cup(0, "K", True).cup(1, "K").twist(0, 3).cap(1).cap(0)
    return b.build()


def _knot_diagram(name: str) -> LinkDiagram:
    if name == "k9_46":
        return _pretzel_946()
    if name == "trefoil#trefoil":
        t = parse_pd(_KNOT_PD["trefoil"])
        return connected_sum(t, t)
    return parse_pd(_KNOT_PD[name])


def knot(name: str) -> CatalogEntry:
    key = _ALIASES.get(name, name)
    if key not in KNOT_NAMES:
        raise CatalogError(f"unknown knot {name!r}")
    return _knot_entry(key)


@lru_cache(maxsize=None)
def _knot_entry(key: str) -> CatalogEntry:
    V = _SEIFERT[key]
    pins = [_seifert_pin(V), _cyclic_pin(1)] if key != "trefoil#trefoil" else [_seifert_pin(V)]
    slices: Tuple[SliceNote, ...] = ()
    if key == "k9_46":
        pins += [_delta_pin(1, DELTA_946), _fox_milnor_pin(1)]
        slices = (SliceNote(1, _SLICE_946),)
    elif key == "unknot":
        slices = (SliceNote(1, "bounds a disk"),)
    return _load(CatalogEntry(key, _knot_diagram(key), tuple(pins), slices, V))


# -- Figure 1 -------------------------------------------------------------------------------


def _fig1_builder() -> LevelBuilder:
    """Two pretzel bodies side by side, each belting the other's negative column.

    The right component's finger runs over the left body's negative column
    below the twists; the left component's finger returns the favour under
    the right body's negative column above them. The picture is symmetric
    under a half turn, which swaps the components.
    """
    b = LevelBuilder()
    cup_body(b, 0, "L1")
    cup_body(b, 6, "L2")
    finger(b, 6, [(4, True), (6, False)])
    twist_body(b, 0)
    twist_body(b, 6, BODY_TWISTS[::-1])
    b.mark("L1.mid", 2).mark("L1.neg", 4).mark("L1.neg'", 5)
    b.mark("L2.neg", 6).mark("L2.neg'", 7).mark("L2.mid'", 9)
    finger(b, 5, [(7, False), (5, True)])
    b.mark("L1.mid'", 3).mark("L2.mid", 8)
    cap_body(b, 6)
    cap_body(b, 0)
    return b


def _two_component_pins(delta: LaurentPoly, generation: bool = True) -> List[Pin]:
    pins = [_lk_zero_pin(), _delta_pin(1, delta), _delta_pin(2, delta)]
    if generation:
        pins += [_gen_pin(1, [2]), _gen_pin(2, [1])]
    return pins


@lru_cache(maxsize=None)
def fig1() -> CatalogEntry:
    L = _fig1_builder().build()
    pins = _two_component_pins(DELTA_946) + [_fox_milnor_pin(1), _fox_milnor_pin(2)]
    slices = (SliceNote(1, _SLICE_946), SliceNote(2, _SLICE_946))
    return _load(CatalogEntry("fig1", L, tuple(pins), slices))


# -- chains -----------------------------------------------------------------------------------


def _chain_diagram(n: int) -> LinkDiagram:
    """Bodies ``0..n-1`` in a row; body ``k`` is belted by both neighbours.

    The left neighbour belts its left column and the right neighbour its
    middle column, which gives quotients of order ``t - 2`` and ``2t - 1``
    taken one at a time and nothing taken together. Neighbours in the row
    clasp near the bottom. The pair that closes the cycle clasps at the top
    once the middle bodies are capped off, with the roles of left and right
    exchanged.
    """
    b = LevelBuilder()
    for k in range(n):
        cup_body(b, BODY_WIDTH * k, f"L{k + 1}")
    for k in range(n - 1):
        base = BODY_WIDTH * k
        # the right end of body k belts the left column of body k+1
        finger(b, base + 5, [(base + 7, True), (base + 5, False)])
        # the left end of body k+1 belts the middle column of body k
        finger(b, base + 6, [(base + 2, True), (base + 4, False), (base + 6, True)])
    for k in range(n):
        twist_body(b, BODY_WIDTH * k)
    for k in range(n - 2, 0, -1):
        cap_body(b, BODY_WIDTH * k)
    # body 0 at 0..5 and body n-1 at 6..11 now sit side by side
    finger(b, 6, [(0, True), (2, False), (6, True)])
    finger(b, 5, [(9, True), (7, False), (5, True)])
    cap_body(b, 6)
    cap_body(b, 0)
    return b.build()


def chain_neighbours(n: int, k: int) -> Tuple[int, int]:
    return ((k - 2) % n) + 1, (k % n) + 1


@lru_cache(maxsize=None)
def chain(n: int) -> CatalogEntry:
    if not isinstance(n, int) or n < 3:
        raise CatalogError("chain needs n >= 3")
    L = _chain_diagram(n)
    pins = [_lk_zero_pin()]
    for k in range(1, n + 1):
        left, right = chain_neighbours(n, k)
        pins.append(_delta_pin(k, DELTA_946))
        pins.append(_gen_pin(k, [left, right]))
        pins.append(_gen_pin(k, [left], expect=False))
        pins.append(_gen_pin(k, [right], expect=False))
    pins.append(Pin("non-adjacent components do not meet",
                    lambda L: _adjacent_only(L, n)))
    slices = tuple(SliceNote(k, _SLICE_946) for k in range(1, n + 1))
    return _load(CatalogEntry(f"chain:{n}", L, tuple(pins), slices))


def _adjacent_only(L: LinkDiagram, n: int) -> bool:
    for x in range(len(L.pd)):
        a, b = L.under_component(x), L.over_component(x)
        if a != b and (a - b) % n not in (1, n - 1):
            return False
    return True


# -- the twisted family ---------------------------------------------------------------------


def family_delta(m: int) -> LaurentPoly:
    """Delta of ``P(3, q, -q)`` with ``q = 3 + 2m``: ``((m+2) - (m+1)t)((m+1) - (m+2)t)``."""
    a = LaurentPoly.from_coeffs([m + 2, -(m + 1)])
    b = LaurentPoly.from_coeffs([m + 1, -(m + 2)])
    return canonicalize(a * b)


def _site(L: LinkDiagram, e: int) -> Tuple[int, int]:
    return L.head(e)


def _at(L: LinkDiagram, site: Tuple[int, int]) -> int:
    x, s = site
    return L.pd[x][s]


def _lmj_diagram(m: int, J: LinkDiagram) -> LinkDiagram:
    b = _fig1_builder()
    L = b.build()
    # (edge pair, sign of the twist): the middle columns get more positive,
    # the negative columns more negative, so each body becomes P(3, q, -q)
    twist_sites = [
        (("L1.mid", "L1.mid'"), 1), (("L1.neg", "L1.neg'"), -1),
        (("L2.mid", "L2.mid'"), 1), (("L2.neg", "L2.neg'"), -1),
    ]
    sites = [((_site(L, b.edge(p)), _site(L, b.edge(q))), s) for (p, q), s in twist_sites]
    knots = [_site(L, b.edge("L1.mid")), _site(L, b.edge("L2.mid"))]
    for (s1, s2), sgn in sites:
        L = insert_twists(L, (_at(L, s1), _at(L, s2)), sgn * m)
    for s in knots:
        L = insert_knot(L, _at(L, s), J)
    return L



def _entry_knot(J) -> Tuple[str, LinkDiagram]:
    if isinstance(J, CatalogEntry):
        return J.name, J.diagram
    if isinstance(J, str):
        e = knot(J)
        return e.name, e.diagram
    if isinstance(J, LinkDiagram):
        return "J", J
    raise CatalogError("J must be a catalog knot, a knot name or a diagram")


@lru_cache(maxsize=None)
def _lmj_cached(m: int, jname: str) -> CatalogEntry:
    return _lmj_entry(m, jname, knot(jname).diagram)


def _lmj_entry(m: int, jname: str, J: LinkDiagram) -> CatalogEntry:
    if J.num_components() != 1:
        raise CatalogError("J must be a knot")
    L = _lmj_diagram(m, J)
    base = family_delta(m)
    dj = component_delta(J, 1)
    delta = canonicalize(base * dj)
    unknotted = dj.is_unit()
    pins = _two_component_pins(delta, generation=unknotted)
    slices: Tuple[SliceNote, ...] = ()
    if unknotted:
        pins += [_fox_milnor_pin(1), _fox_milnor_pin(2)]
        note = f"P(3,{3 + 2 * m},{-3 - 2 * m}) is ribbon by one band move"
        slices = (SliceNote(1, note), SliceNote(2, note))
    return _load(CatalogEntry(f"LmJ:{m}:{jname}", L, tuple(pins), slices))


def LmJ(m: int, J="unknot") -> CatalogEntry:
    if not isinstance(m, int) or m < 1:
        raise CatalogError("the twist parameter m must be a positive integer")
    name, D = _entry_knot(J)
    if name in KNOT_NAMES:
        return _lmj_cached(m, name)
    return _lmj_entry(m, name, D)


def lmj_builder(J="unknot") -> Callable[[int], CatalogEntry]:
    return lambda m: LmJ(m, J)


# -- name resolution ---------------------------------------------------------------------------

_INT = re.compile(r"^[+-]?\d+$")


def resolve(name: str) -> CatalogEntry:
    """Look an entry up by its name string: ``fig1``, ``chain:4``, ``LmJ:3:trefoil``, ``9_46``."""
    parts = name.strip().split(":")
    head = parts[0].lower()
    if head == "fig1" and len(parts) == 1:
        return fig1()
    if head == "chain" and len(parts) == 2 and _INT.match(parts[1]):
        return chain(int(parts[1]))
    if head == "lmj" and len(parts) in (2, 3) and _INT.match(parts[1]):
        return LmJ(int(parts[1]), parts[2] if len(parts) == 3 else "unknot")
    if len(parts) == 1:
        return knot(parts[0])
    raise CatalogError(f"unknown catalog name {name!r}")


DEFAULT_LISTING = ("unknot", "trefoil", "figure8", "9_46", "trefoil#trefoil", "fig1",
                   "chain:3", "chain:4", "chain:5", "LmJ:1:unknot", "LmJ:2:trefoil")


def verify_all(names: Sequence[str] = DEFAULT_LISTING) -> Dict[str, List[Tuple[str, bool]]]:
    """Re-run the pins of the listed entries without raising."""
    out = {}
    for name in names:
        try:
            out[name] = resolve(name).verify()
        except (CatalogError, DiagramError) as exc:
            out[name] = [(str(exc), False)]
    return out

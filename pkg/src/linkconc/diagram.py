"""Oriented link diagrams as planar-diagram (PD) codes.

Conventions, fixed here and nowhere else:

* A crossing ``X(a, b, c, d)`` lists its four edge labels counterclockwise,
  starting with the *incoming under-strand* ``a``. The under-strand runs
  ``a -> c``; the over-strand joins ``b`` and ``d``.
* :func:`crossing_sign` is the only sign function. The sign is ``+1`` iff the
  over-strand passes from left to right as seen by someone walking along the
  under-strand, i.e. iff the over-strand runs ``d -> b``.
* ``O(k)`` declares a crossingless unknotted component carrying label ``k``.

Every diagram-changing operation rebuilds its result through :class:`Wiring`
and relabels edges densely in traversal order (component by component, each
starting from the edge with the smallest old label), so outputs are
reproducible.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class DiagramError(ValueError):
    pass


Slot = Tuple[int, int]  # (crossing index, slot 0..3)


@dataclass(frozen=True)
class Crossing:
    a: int
    b: int
    c: int
    d: int
    sign: int

    @property
    def slots(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def crossing_sign(head_of_d_is_here: bool) -> int:
    """Sign of a crossing given whether the over-strand enters through slot ``d``."""
    return 1 if head_of_d_is_here else -1




class LinkDiagram:
    """An immutable oriented link diagram.

    ``components`` is a tuple of oriented edge cycles; component ids are
    1-based positions in that tuple, ordered by smallest edge label.
    """

    def __init__(self, crossings: Sequence[Sequence[int]], unknots: Sequence[int] = (),
                 _oriented: Optional[Tuple[list, dict]] = None):
        self._pd = tuple(tuple(int(v) for v in x) for x in crossings)
        self._unknots = tuple(int(k) for k in unknots)
        for x in self._pd:
            if len(x) != 4:
                raise DiagramError(f"crossing {x} has arity {len(x)}, expected 4")
        if not self._pd and not self._unknots:
            raise DiagramError("empty diagram")
        occ: Dict[int, List[Slot]] = {}
        for i, x in enumerate(self._pd):
            for s, e in enumerate(x):
                if e < 1:
                    raise DiagramError(f"edge label {e} must be positive")
                occ.setdefault(e, []).append((i, s))
        for e, where in occ.items():
            if len(where) != 2:
                raise DiagramError(f"edge label {e} used {len(where)} times, expected 2")
        for k in self._unknots:
            if k < 1:
                raise DiagramError(f"edge label {k} must be positive")
            if k in occ:
                raise DiagramError(f"unknot label {k} also used by a crossing")
        if len(set(self._unknots)) != len(self._unknots):
            raise DiagramError("repeated unknot label")
        self._occ = occ
        if _oriented is None:
            comps, heads = self._trace_components()
        else:
            comps, heads = _oriented
        self._head: Dict[int, Slot] = dict(heads)
        self._tail: Dict[int, Slot] = {}
        for e, h in self._head.items():
            p, q = occ[e]
            self._tail[e] = q if p == h else p
        for e, (i, s) in self._head.items():
            if s == 2 or self._tail[e][1] == 0:
                raise DiagramError(f"inconsistent traversal: under-strand at edge {e} runs c -> a")
        comps = sorted((list(c) for c in comps), key=min)
        self._components = tuple(tuple(c) for c in comps)
        self._comp_of = {e: ci + 1 for ci, comp in enumerate(self._components) for e in comp}
        self._signs = tuple(
            crossing_sign(self._head[x[3]] == (i, 3)) for i, x in enumerate(self._pd)
        )

    # -- orientation from the slot data ---------------------------------------------

    def _walk(self, e0: int, start: Slot):
        edges, entries = [], []
        e, head = e0, start
        while True:
            edges.append(e)
            entries.append(head)
            i, s = head
            out = (i, (s + 2) % 4)
            nxt = self._pd[i][out[1]]
            p, q = self._occ[nxt]
            nhead = q if p == out else p
            if nxt == e0 and nhead == start:
                return edges, entries
            if nxt in edges and len(edges) > len(self._occ):
                raise DiagramError("inconsistent traversal")
            e, head = nxt, nhead

    def _trace_components(self):
        seen = set()
        comps, heads = [], {}
        for e0 in sorted(self._occ):
            if e0 in seen:
                continue
            good = []
            for start in self._occ[e0]:
                edges, entries = self._walk(e0, start)
                if all(s != 2 for (_, s) in entries):
                    good.append((edges, entries))
            if not good:
                raise DiagramError(f"inconsistent traversal through edge {e0}")
            edges, entries = good[0]
            if len(good) == 2 and len(edges) > 1:
                # over-passes only: follow consecutive labels
                for cand in good:
                    if cand[0][1] == e0 + 1:
                        edges, entries = cand
                        break
            if len(set(edges)) != len(edges):
                raise DiagramError(f"inconsistent traversal through edge {e0}")
            seen.update(edges)
            comps.append(edges)
            heads.update(zip(edges, entries))
        comps.extend([k] for k in self._unknots)
        return comps, heads

    # -- accessors --------------------------------------------------------------

    @property
    def pd(self) -> Tuple[Tuple[int, int, int, int], ...]:
        return self._pd

    @property
    def unknot_labels(self) -> Tuple[int, ...]:
        return self._unknots

    @property
    def crossings(self) -> List[Crossing]:
        return [Crossing(*x, sign=s) for x, s in zip(self._pd, self._signs)]

    @property
    def edge_count(self) -> int:
        return len(self._occ) + len(self._unknots)

    @property
    def components(self) -> Tuple[Tuple[int, ...], ...]:
        return self._components

    @property
    def component_ids(self) -> List[int]:
        return list(range(1, len(self._components) + 1))

    def __len__(self) -> int:
        return len(self._pd)

    def num_components(self) -> int:
        return len(self._components)

    def sign(self, i: int) -> int:
        return self._signs[i]

    def component_of(self, e: int) -> int:
        return self._comp_of[e]

    def occurrences(self, e: int) -> List[Slot]:
        return list(self._occ[e])

    def head(self, e: int) -> Slot:
        return self._head[e]

    def tail(self, e: int) -> Slot:
        return self._tail[e]

    def under_component(self, i: int) -> int:
        return self._comp_of[self._pd[i][0]]

    def over_component(self, i: int) -> int:
        return self._comp_of[self._pd[i][1]]

    def check_component(self, cid: int):
        if not isinstance(cid, int) or not 1 <= cid <= len(self._components):
            raise DiagramError(f"unknown component id {cid}")

    def is_unknot_component(self, cid: int) -> bool:
        comp = self._components[cid - 1]
        return len(comp) == 1 and comp[0] in self._unknots

    def writhe(self) -> int:
        return sum(self._signs)

    # -- text / json ------------------------------------------------------------

    def to_pd_string(self) -> str:
        parts = ["X(%d,%d,%d,%d)" % x for x in self._pd]
        parts += ["O(%d)" % k for k in self._unknots]
        return " ".join(parts)

    def to_json_obj(self) -> dict:
        return {"crossings": [list(x) for x in self._pd], "unknot_components": list(self._unknots)}

    def __str__(self):
        return self.to_pd_string()

    def __repr__(self):
        return f"LinkDiagram({self.to_pd_string()!r})"

    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return (self._pd, self._unknots, self._components) == (
            other._pd, other._unknots, other._components)

    def __hash__(self):
        return hash((self._pd, self._unknots))


# -- parsing ------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*([XOxo])\s*\(([^)]*)\)\s*,?")


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X(a,b,c,d)`` / ``O(k)`` tokens, a JSON diagram object, or a
    bare JSON list of crossings."""
    s = text.strip()
    if not s:
        raise DiagramError("empty input")
    if s[0] in "{[":
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"bad JSON diagram: {exc}") from None
        if isinstance(obj, list):
            return LinkDiagram(obj)
        return from_json_obj(obj)
    crossings, unknots = [], []
    pos = 0
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if not m:
            raise DiagramError(f"cannot parse PD text at position {pos}: {s[pos:pos + 20]!r}")
        kind, body = m.groups()
        try:
            vals = [int(v) for v in body.split(",") if v.strip()]
        except ValueError:
            raise DiagramError(f"non-integer edge label in {m.group(0).strip()!r}") from None
        if kind in "Xx":
            if len(vals) != 4:
                raise DiagramError(
                    f"crossing {m.group(0).strip()} has arity {len(vals)}, expected 4")
            crossings.append(vals)
        else:
            if len(vals) != 1:
                raise DiagramError(f"unknot token {m.group(0).strip()} takes exactly one label")
            unknots.append(vals[0])
        pos = m.end()
    return LinkDiagram(crossings, unknots)


def from_json_obj(obj) -> LinkDiagram:
    if not isinstance(obj, dict) or "crossings" not in obj:
        raise DiagramError("JSON diagram needs a 'crossings' key")
    return LinkDiagram(obj["crossings"], obj.get("unknot_components", []))


# -- invariants of the diagram ----------------------------------------------------------


def linking_number(L: LinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between components ``i`` and ``j``."""
    L.check_component(i)
    L.check_component(j)
    if i == j:
        raise DiagramError("linking number needs two distinct components")
    total = 0
    for k, x in enumerate(L.pd):
        if {L.component_of(x[0]), L.component_of(x[1])} == {i, j}:
            total += L.sign(k)
    return total // 2


def linking_matrix(L: LinkDiagram) -> List[List[int]]:
    """Symmetric matrix of pairwise linking numbers; the diagonal is 0."""
    n = L.num_components()
    M = [[0] * n for _ in range(n)]
    for k, x in enumerate(L.pd):
        ci, cj = L.component_of(x[0]), L.component_of(x[1])
        if ci != cj:
            M[ci - 1][cj - 1] += L.sign(k)
            M[cj - 1][ci - 1] += L.sign(k)
    return [[v // 2 for v in row] for row in M]


def faces(L: LinkDiagram) -> List[List[Slot]]:
    """Faces of the crossing graph as cycles of corners.

    Corner ``(x, s)`` is the angle between slots ``s`` and ``s+1`` of crossing
    ``x``. Split crossingless components are ignored.
    """
    seen = set()
    out = []
    for x in range(len(L.pd)):
        for s in range(4):
            if (x, s) in seen:
                continue
            face = []
            cur = (x, s)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                i, r = cur
                f = L.pd[i][(r + 1) % 4]
                p, q = L.occurrences(f)
                far = q if p == (i, (r + 1) % 4) else p
                cur = far
            out.append(face)
    return out


def _edge_faces(L: LinkDiagram, e: int) -> Tuple[int, int]:
    """Indices of the faces to the (right, left) of ``e`` in its direction."""
    fs = faces(L)
    where = {c: k for k, face in enumerate(fs) for c in face}
    ti, ts = L.tail(e)
    hi, hs = L.head(e)
    return where[(ti, (ts - 1) % 4)], where[(hi, (hs - 1) % 4)]


# -- the planar wiring core ---------------------------------------------------------------


class Wiring:
    """Crossings as four counterclockwise corners joined by wires.

    ``over[k]`` is 0 when corners {0, 2} carry the over-strand and 1 when
    {1, 3} do; a strand passes from corner ``s`` to ``s + 2``. Orientation is
    carried only by ``heads`` (corners where a wire ends), so every component
    must contain at least one seed. ``keys`` order components and choose each
    component's first edge when labels are assigned.
    """

    def __init__(self):
        self.over: List[int] = []
        self.link: Dict[Slot, Slot] = {}
        self.heads: set = set()
        self.circles: List[tuple] = []
        self.keys: Dict[Slot, tuple] = {}
        self.labels: Dict[Slot, int] = {}

    def add_crossing(self, over: int) -> int:
        self.over.append(over)
        return len(self.over) - 1

    def connect(self, p: Slot, q: Slot):
        if p in self.link or q in self.link:
            raise DiagramError("corner wired twice")
        self.link[p] = q
        self.link[q] = p

    def disconnect(self, p: Slot) -> Slot:
        q = self.link.pop(p)
        del self.link[q]
        return q

    @classmethod
    def from_diagram(cls, L: LinkDiagram, tag: tuple = ()) -> "Wiring":
        W = cls()
        for _ in L.pd:
            W.add_crossing(1)
        for e in L._occ:
            p, q = L._occ[e]
            W.connect(p, q)
            W.heads.add(L.head(e))
            W.keys[L.head(e)] = tag + (e,)
        for k in L.unknot_labels:
            W.circles.append(tag + (k,))
        return W

    def absorb(self, other: "Wiring") -> int:
        """Disjoint union; returns the index shift applied to ``other``'s crossings."""
        base = len(self.over)
        self.over.extend(other.over)
        for (i, s), (j, r) in other.link.items():
            self.link[(i + base, s)] = (j + base, r)
        self.heads |= {(i + base, s) for (i, s) in other.heads}
        for (i, s), key in other.keys.items():
            self.keys[(i + base, s)] = key
        self.circles.extend(other.circles)
        return base

    def drop_crossings(self, dead: Iterable[int]):
        """Remove crossings whose corners are already unwired; reindex the rest."""
        dead = set(dead)
        for i in dead:
            for s in range(4):
                if (i, s) in self.link:
                    raise DiagramError("cannot drop a crossing that is still wired")
        remap, k = {}, 0
        for i in range(len(self.over)):
            if i not in dead:
                remap[i] = k
                k += 1
        self.over = [ov for i, ov in enumerate(self.over) if i not in dead]
        mv = lambda c: (remap[c[0]], c[1])
        self.link = {mv(p): mv(q) for p, q in self.link.items()}
        self.heads = {mv(c) for c in self.heads if c[0] not in dead}
        self.keys = {mv(c): v for c, v in self.keys.items() if c[0] not in dead}

    def _next_entry(self, entry: Slot) -> Slot:
        i, s = entry
        return self.link[(i, (s + 2) % 4)]

    def to_diagram(self) -> LinkDiagram:
        if not self.over and not self.circles:
            raise DiagramError("empty diagram")
        default = (float("inf"),)
        todo = set(self.link)
        items = []
        for start in sorted(self.link, key=lambda c: (self.keys.get(c, default), c)):
            if start not in todo:
                continue
            cyc = [start]
            cur = self._next_entry(start)
            while cur != start:
                cyc.append(cur)
                cur = self._next_entry(cur)
                if len(cyc) > len(self.link):
                    raise DiagramError("wiring does not close up")
            rev = [self.link[c] for c in reversed(cyc)]
            fwd_seed = any(c in self.heads for c in cyc)
            rev_seed = any(c in self.heads for c in rev)
            if fwd_seed and rev_seed:
                raise DiagramError("contradictory orientation seeds")
            chosen = rev if rev_seed else cyc
            todo -= set(cyc) | set(rev)
            k0 = min(range(len(chosen)), key=lambda k: (self.keys.get(chosen[k], default), k))
            chosen = chosen[k0:] + chosen[:k0]
            items.append((self.keys.get(chosen[0], default), "X", chosen))
        items += [(key, "O", None) for key in self.circles]
        items.sort(key=lambda it: it[0])
        label: Dict[Slot, int] = {}
        comps, unknots, heads = [], [], {}
        nxt = 1
        for _, kind, chosen in items:
            if kind == "O":
                unknots.append(nxt)
                comps.append([nxt])
                nxt += 1
                continue
            edges = []
            for c in chosen:
                label[c] = label[self.link[c]] = nxt
                heads[nxt] = c
                edges.append(nxt)
                nxt += 1
            comps.append(edges)
        entry = set(heads.values())
        pd, first = [], []
        for i, ov in enumerate(self.over):
            u0, u1 = (1, 3) if ov == 0 else (0, 2)
            a = u0 if (i, u0) in entry else u1
            first.append(a)
            pd.append(tuple(label[(i, (a + k) % 4)] for k in range(4)))
        heads = {e: (i, (s - first[i]) % 4) for e, (i, s) in heads.items()}
        self.labels = label
        return LinkDiagram(pd, unknots, _oriented=(comps, heads))


def relabel(L: LinkDiagram) -> LinkDiagram:
    """Dense relabelling in traversal order."""
    return Wiring.from_diagram(L).to_diagram()


def mirror(L: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing."""
    W = Wiring.from_diagram(L)
    W.over = [1 - ov for ov in W.over]
    return W.to_diagram()


def reverse(L: LinkDiagram, cids: Iterable[int]) -> LinkDiagram:
    """Reverse the orientation of the given components."""
    cids = set(cids)
    for c in cids:
        L.check_component(c)
    W = Wiring.from_diagram(L)
    for e in L._occ:
        if L.component_of(e) in cids:
            W.heads.discard(L.head(e))
            W.heads.add(L.tail(e))
            W.keys[L.tail(e)] = W.keys.pop(L.head(e))
    return W.to_diagram()


def sublink(L: LinkDiagram, keep: Iterable[int]) -> LinkDiagram:
    """Delete every component not in ``keep``; kept strands merge across removed crossings."""
    keep = set(keep)
    if not keep:
        raise DiagramError("sublink needs at least one component")
    for c in keep:
        L.check_component(c)
    W = Wiring.from_diagram(L)
    comp_of_corner = lambda c: L.component_of(L.pd[c[0]][c[1]])
    for c in list(W.link):
        if c in W.link and comp_of_corner(c) not in keep:
            W.disconnect(c)
    dead = []
    for i in range(len(L.pd)):
        kept_slots = [s for s in range(4) if comp_of_corner((i, s)) in keep]
        if len(kept_slots) == 4:
            continue
        dead.append(i)
        if not kept_slots:
            continue
        s0, s1 = kept_slots
        p = W.disconnect((i, s0))
        if p == (i, s1):
            cid = comp_of_corner((i, s0))
            W.circles.append((min(L.components[cid - 1]),))
            continue
        q = W.disconnect((i, s1))
        W.connect(p, q)
    W.circles = [k for k in W.circles if L.component_of(k[0]) in keep]
    W.drop_crossings(dead)
    return W.to_diagram()


def insert_knot(L: LinkDiagram, e: int, J: LinkDiagram) -> LinkDiagram:
    """Tie the knot ``J`` into edge ``e`` of ``L`` (a local connected sum)."""
    if J.num_components() != 1:
        raise DiagramError("the inserted knot must have exactly one component")
    if e not in L._occ and e not in L.unknot_labels:
        raise DiagramError(f"unknown edge {e}")
    W = Wiring.from_diagram(L)
    if not J.pd:
        return W.to_diagram()
    WJ = Wiring.from_diagram(J, tag=(e, 1))
    base = W.absorb(WJ)
    if e in L.unknot_labels:
        W.circles.remove((e,))
        # J takes over the place of the circle in the component order
        for c in list(W.keys):
            if c[0] >= base:
                W.keys[c] = (e,) + W.keys[c][2:]
        return W.to_diagram()
    j1 = J.components[0][0]
    tJ = (J.tail(j1)[0] + base, J.tail(j1)[1])
    hJ = (J.head(j1)[0] + base, J.head(j1)[1])
    tL, hL = L.tail(e), L.head(e)
    W.disconnect(tL)
    W.disconnect(tJ)
    W.connect(tL, hJ)
    W.connect(tJ, hL)
    W.keys[hJ] = (e, 0.5)
    return W.to_diagram()


def connected_sum(K1: LinkDiagram, K2: LinkDiagram) -> LinkDiagram:
    if K1.num_components() != 1 or K2.num_components() != 1:
        raise DiagramError("connected sum is defined here for knots only")
    return insert_knot(K1, K1.components[0][0], K2)


def insert_twists(L: LinkDiagram, edges: Tuple[int, int], m: int) -> LinkDiagram:
    """Replace two strands that share a face by ``|m|`` full twists.

    Adds ``2|m|`` crossings of one type; ``m > 0`` gives the twist whose
    crossings are positive when both strands run the same way.
    """
    e1, e2 = edges
    if e1 == e2:
        raise DiagramError("twisting needs two distinct edges")
    for e in edges:
        if e not in L._occ:
            raise DiagramError(f"edge {e} is not an edge between crossings")
    W = Wiring.from_diagram(L)
    if m == 0:
        return W.to_diagram()
    r1, l1 = _edge_faces(L, e1)
    r2, l2 = _edge_faces(L, e2)
    shared = sorted({r1, l1} & {r2, l2})
    if not shared:
        raise DiagramError(f"edges {e1} and {e2} do not bound a common face")
    F = shared[0]
    # left column: F on its right when drawn upward; right column: F on its left
    if r1 == F:
        b1, t1 = L.tail(e1), L.head(e1)
    else:
        b1, t1 = L.head(e1), L.tail(e1)
    if l2 == F:
        b2, t2 = L.tail(e2), L.head(e2)
    else:
        b2, t2 = L.head(e2), L.tail(e2)
    W.disconnect(b1)
    W.disconnect(b2)
    ov = 0 if m > 0 else 1
    k = 2 * abs(m)
    prev_l, prev_r = b1, b2
    for _ in range(k):
        c = W.add_crossing(ov)
        W.connect(prev_l, (c, 0))
        W.connect(prev_r, (c, 1))
        prev_l, prev_r = (c, 3), (c, 2)
    W.connect(prev_l, t1)
    W.connect(prev_r, t2)
    return W.to_diagram()

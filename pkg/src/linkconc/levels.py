"""Build diagrams bottom-to-top from cups, caps and crossings.

A :class:`LevelBuilder` keeps a row of strand ends moving upward. ``cup``
opens two new adjacent ends, ``cap`` closes two adjacent ends together, and
``cross`` makes the ends at positions ``i`` and ``i + 1`` swap places. The
picture is planar by construction, so any sequence of these moves that ends
with no open strands yields a valid PD code. This is how the catalog turns
figures into diagrams without hand-written PD tuples.

Positions are 0-based from the left.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .diagram import DiagramError, LinkDiagram, Wiring

# corners of a crossing, counterclockwise
BL, BR, TR, TL = 0, 1, 2, 3


class LevelBuilder:
    def __init__(self):
        self._w = Wiring()
        self._row: List[tuple] = []
        # nodes are crossing corners ("x", i, s) or cup ends ("u", k, side)
        self._adj: Dict[tuple, List[tuple]] = {}
        self._cups: List[Tuple[object, bool]] = []
        self._tags: Dict[object, int] = {}
        self._marks: Dict[str, tuple] = {}
        self._diagram: Optional[LinkDiagram] = None

    # -- moves --------------------------------------------------------------------

    def _join(self, p: tuple, q: tuple):
        self._adj.setdefault(p, []).append(q)
        self._adj.setdefault(q, []).append(p)

    def cup(self, pos: int, tag=None, left_up: Optional[bool] = None) -> "LevelBuilder":
        """Open two ends at ``pos`` and ``pos + 1``.

        ``tag`` names the component this cup belongs to (components are
        ordered by first appearance of their tag). ``left_up=True`` orients
        the strand to leave the cup upward on the left, ``False`` on the
        right; ``None`` leaves it to the other cups of the component.
        """
        if not 0 <= pos <= len(self._row):
            raise DiagramError(f"cup position {pos} out of range")
        k = len(self._cups)
        self._cups.append((tag, left_up))
        if tag not in self._tags:
            self._tags[tag] = len(self._tags)
        left, right = ("u", k, 0), ("u", k, 1)
        self._join(left, right)
        self._row[pos:pos] = [left, right]
        return self

    def cap(self, pos: int) -> "LevelBuilder":
        self._check(pos)
        p, q = self._row[pos], self._row[pos + 1]
        self._join(p, q)
        del self._row[pos:pos + 2]
        return self

    def cross(self, pos: int, over: str) -> "LevelBuilder":
        """Swap the ends at ``pos`` and ``pos + 1``.

        ``over="bl"`` puts the strand coming from the bottom-left on top (a
        positive crossing when both strands run upward); ``over="br"`` the
        other one.
        """
        if over not in ("bl", "br"):
            raise DiagramError("over must be 'bl' or 'br'")
        self._check(pos)
        c = self._w.add_crossing(0 if over == "bl" else 1)
        self._join(self._row[pos], ("x", c, BL))
        self._join(self._row[pos + 1], ("x", c, BR))
        self._row[pos] = ("x", c, TL)
        self._row[pos + 1] = ("x", c, TR)
        return self

    def twist(self, pos: int, half_twists: int) -> "LevelBuilder":
        """``|half_twists|`` crossings on one pair; positive means ``bl`` over."""
        over = "bl" if half_twists > 0 else "br"
        for _ in range(abs(half_twists)):
            self.cross(pos, over)
        return self

    def move(self, src: int, dst: int, over: bool) -> "LevelBuilder":
        """Carry the end at ``src`` to ``dst``, passing over (or under) everything between."""
        while src < dst:
            self.cross(src, "bl" if over else "br")
            src += 1
        while src > dst:
            self.cross(src - 1, "br" if over else "bl")
            src -= 1
        return self

    def mark(self, name: str, pos: int) -> "LevelBuilder":
        """Remember the strand currently at ``pos``; resolve it later with :meth:`edge`."""
        self._check(pos, width=1)
        self._marks[name] = self._row[pos]
        return self

    def width(self) -> int:
        return len(self._row)

    def _check(self, pos: int, width: int = 2):
        if not 0 <= pos <= len(self._row) - width:
            raise DiagramError(f"position {pos} out of range for {len(self._row)} strands")

    # -- output -----------------------------------------------------------------------

    def build(self) -> LinkDiagram:
        if self._row:
            raise DiagramError(f"{len(self._row)} strands left open")
        W = self._w
        seen = set()
        corners = [("x", i, s) for i in range(len(W.over)) for s in range(4)]
        for node in corners:
            if node in seen:
                continue
            path = self._follow(node)
            seen.update(path)
            p, q = path[0], path[-1]
            W.connect(p[1:], q[1:])
            self._seed(path)
        for node in self._adj:
            if node[0] == "u" and node not in seen:
                path = self._follow_circle(node)
                seen.update(path)
                k = min(n[1] for n in path)
                W.circles.append((self._tags[self._cups[k][0]], k))
        self._diagram = W.to_diagram()
        return self._diagram

    def _follow(self, start: tuple) -> List[tuple]:
        path = [start]
        prev, cur = None, start
        while True:
            nbrs = [n for n in self._adj[cur] if n != prev] if prev is not None else self._adj[cur]
            if cur[0] == "u":
                # a cup end has its partner and one external neighbour
                cand = [n for n in self._adj[cur] if n != prev]
                nxt = cand[0]
            else:
                nxt = nbrs[0]
            path.append(nxt)
            if nxt[0] == "x":
                return path
            prev, cur = cur, nxt

    def _follow_circle(self, start: tuple) -> List[tuple]:
        path = [start]
        prev, cur = None, start
        while True:
            cand = list(self._adj[cur])
            if prev is not None:
                # drop one copy only: a cup capped at once joins its ends twice
                cand.remove(prev)
            nxt = cand[0]
            if nxt == start:
                return path
            path.append(nxt)
            prev, cur = cur, nxt

    def _seed(self, path: List[tuple]):
        """Order and orient the wire along ``path`` from the cups it runs through."""
        W = self._w
        ends = (path[0][1:], path[-1][1:])
        for k in range(1, len(path) - 1):
            node, nxt = path[k], path[k + 1]
            if not (node[0] == "u" and nxt[0] == "u" and node[1] == nxt[1]):
                continue
            tag, left_up = self._cups[node[1]]
            key = (self._tags[tag], node[1])
            for c in ends:
                if c not in W.keys or key < W.keys[c]:
                    W.keys[c] = key
            if left_up is not None:
                # walking right end -> left end leaves the cup upward on the left
                forward = (node[2] == 1) == left_up
                W.heads.add(ends[1] if forward else ends[0])

    def edge(self, name: str) -> int:
        """Edge label of a marked strand in the built diagram."""
        if self._diagram is None:
            raise DiagramError("build() first")
        node = self._marks[name]
        if node[0] == "x":
            return self._w.labels[node[1:]]
        for nbr in self._walk_to_corner(node):
            return self._w.labels[nbr[1:]]
        raise DiagramError(f"mark {name!r} is on a crossingless component")

    def _walk_to_corner(self, node):
        seen = {node}
        stack = [node]
        while stack:
            cur = stack.pop()
            for n in self._adj[cur]:
                if n[0] == "x":
                    yield n
                    return
                if n not in seen:
                    seen.add(n)
                    stack.append(n)

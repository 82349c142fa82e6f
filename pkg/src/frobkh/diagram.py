"""Oriented link diagrams in PD notation.

A crossing ``X[a, b, c, d]`` lists its four edges counterclockwise starting
from the incoming under-strand, so the under-strand runs ``a -> c``.  The
crossing is positive when the over-strand runs ``d -> b``.

Crossingless unknotted components cannot be written as ``X`` terms; they are
kept as a count of free loops and serialized as ``O[]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, UsageError

# Smoothing convention: which positions of X[a,b,c,d] each smoothing joins.
SMOOTHING = {0: ((0, 1), (2, 3)), 1: ((0, 3), (1, 2))}


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return [frozenset(g) for g in groups.values()]


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple
    signs: tuple
    components: tuple  # each a tuple of edge ids in orientation order
    free_loops: int = 0

    @property
    def n_crossings(self):
        return len(self.crossings)

    @property
    def n_plus(self):
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self):
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self):
        return sum(self.signs)

    @property
    def n_components(self):
        return len(self.components) + self.free_loops

    @property
    def edges(self):
        return sorted({e for x in self.crossings for e in x})

    def to_string(self):
        terms = [f"X[{a},{b},{c},{d}]" for a, b, c, d in self.crossings]
        terms += ["O[]"] * self.free_loops
        return " ".join(terms)

    def __str__(self):
        return self.to_string() or "(empty diagram)"


@dataclass(frozen=True)
class ResolvedState:
    r: tuple
    circles: tuple  # frozensets of edge ids, ordered by minimal edge id

    @property
    def k(self):
        return len(self.circles)

    @property
    def height(self):
        return sum(self.r)


def _orient(crossings, over_in=None):
    """Return ``(over_in, components)``.

    ``over_in[i]`` is the position (1 or 3) where crossing i's over-strand
    enters.  Orientation of the under-strands is given by the PD convention
    and propagated along edges; components that only pass over crossings get
    the direction suggested by their edge numbering.
    """
    occ = {}
    for ci, x in enumerate(crossings):
        for pos, e in enumerate(x):
            occ.setdefault(e, []).append((ci, pos))
    for e, places in occ.items():
        if len(places) != 2:
            raise ParseError(f"edge {e} appears {len(places)} times; expected exactly 2")

    n = len(crossings)
    incoming = {}  # (crossing, pos) -> True if the edge enters the crossing here
    if over_in is not None:
        for ci, p in enumerate(over_in):
            incoming[(ci, p)] = True
            incoming[(ci, 4 - p)] = False

    def other(e, place):
        a, b = occ[e]
        return b if a == place else a

    def assign(place, value, stack):
        if place in incoming:
            if incoming[place] != value:
                ci, pos = place
                raise ParseError(f"inconsistent orientation at crossing {ci + 1} ({crossings[ci]})")
            return
        incoming[place] = value
        stack.append(place)

    def propagate(stack):
        while stack:
            ci, pos = stack.pop()
            val = incoming[(ci, pos)]
            e = crossings[ci][pos]
            assign(other(e, (ci, pos)), not val, stack)
            opp = (ci, (pos + 2) % 4)
            assign(opp, not val, stack)

    stack = []
    for ci in range(n):
        assign((ci, 0), True, stack)
        assign((ci, 2), False, stack)
    for place in list(incoming):
        stack.append(place)
    propagate(stack)

    for ci in range(n):
        if (ci, 1) in incoming:
            continue
        _, b, _, d = crossings[ci]
        forward = b == d + 1 or (d != b + 1 and d > b)
        # forward: over-strand runs d -> b, entering at position 3
        stack = []
        assign((ci, 3), forward, stack)
        propagate(stack)

    over = tuple(3 if incoming[(ci, 3)] else 1 for ci in range(n))

    components = []
    seen = set()
    for start in sorted(occ):
        if start in seen:
            continue
        comp = []
        e = start
        while e not in seen:
            seen.add(e)
            comp.append(e)
            a, b = occ[e]
            head = a if incoming[a] else b
            ci, pos = head
            e = crossings[ci][(pos + 2) % 4]
        if e != start:
            raise ParseError(f"edge {start} does not lie on a closed component")
        components.append(tuple(comp))
    return over, tuple(components)


def make_diagram(crossings, free_loops=0, over_in=None):
    crossings = tuple(tuple(int(e) for e in x) for x in crossings)
    for x in crossings:
        if len(x) != 4:
            raise ParseError(f"crossing {x} must have four edges")
        if any(e <= 0 for e in x):
            raise ParseError(f"edge ids must be positive integers in {x}")
    over, components = _orient(crossings, over_in)
    signs = tuple(1 if p == 3 else -1 for p in over)
    return PlanarDiagram(crossings, signs, components, free_loops)


_TERM_RE = re.compile(r"(X|O)\s*\[([^\[\]]*)\]")


def parse_pd(text):
    """Parse ``X[1,4,2,5] X[3,6,4,1] ...`` (optionally wrapped in ``PD[...]``)."""
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    m = re.match(r"PD\s*\[", s)
    if m:
        if not s.endswith("]"):
            raise ParseError("unclosed PD[ wrapper", offset + len(s))
        offset += m.end()
        s = s[m.end():-1]
    crossings = []
    loops = 0
    pos = 0
    while pos < len(s):
        ch = s[pos]
        if ch.isspace() or ch == ",":
            pos += 1
            continue
        m = _TERM_RE.match(s, pos)
        if not m:
            head = re.match(r"(X|O)\s*\[", s[pos:])
            if head:
                raise ParseError("unclosed bracket", offset + pos + head.end() - 1)
            raise ParseError(f"unexpected text {s[pos:pos + 12]!r}", offset + pos)
        kind, body = m.groups()
        if kind == "O":
            if body.strip():
                raise ParseError("O[] takes no arguments", offset + m.start(2))
            loops += 1
        else:
            parts = [p.strip() for p in body.split(",")]
            if len(parts) != 4 or not all(re.fullmatch(r"\d+", p) for p in parts):
                raise ParseError(f"X[...] needs four positive integers, got {body!r}",
                                 offset + m.start(2))
            crossings.append(tuple(int(p) for p in parts))
        pos = m.end()
    return make_diagram(crossings, loops)


def from_braid(word, strands):
    """PD of the closure of a braid word; ``i`` is a positive crossing of strands i, i+1."""
    word = [int(g) for g in word]
    if strands < 1:
        raise UsageError("a braid needs at least one strand")
    for g in word:
        if g == 0 or abs(g) >= strands:
            raise UsageError(f"generator {g} out of range for {strands} strands")
    cur = list(range(strands))
    next_id = strands
    raw = []
    over = []
    touched = set()
    for g in word:
        i = abs(g) - 1
        touched.update((i, i + 1))
        a_in, b_in = cur[i], cur[i + 1]
        tl, tr = next_id, next_id + 1
        next_id += 2
        if g > 0:
            raw.append((b_in, tr, tl, a_in))
            over.append(3)
        else:
            raw.append((a_in, b_in, tr, tl))
            over.append(1)
        cur[i], cur[i + 1] = tl, tr

    uf = UnionFind(range(next_id))
    for p in range(strands):
        uf.union(p, cur[p])
    mapped = [tuple(uf.find(e) + 1 for e in x) for x in raw]
    free = strands - len(touched)
    if not mapped:
        return make_diagram((), free)
    _, comps = _orient(tuple(mapped), tuple(over))
    relabel = {}
    for comp in comps:
        for e in comp:
            relabel[e] = len(relabel) + 1
    crossings = [tuple(relabel[e] for e in x) for x in mapped]
    return make_diagram(crossings, free, tuple(over))


def resolve(d, r):
    """Circles of the complete resolution ``r`` (a 0/1 vector, one entry per crossing)."""
    r = tuple(int(b) for b in r)
    if len(r) != d.n_crossings:
        raise UsageError(f"resolution has length {len(r)}, diagram has {d.n_crossings} crossings")
    uf = UnionFind(d.edges)
    for x, bit in zip(d.crossings, r):
        for p, q in SMOOTHING[bit]:
            uf.union(x[p], x[q])
    circles = uf.classes()
    circles += [frozenset([-(k + 1)]) for k in range(d.free_loops)]
    circles.sort(key=min)
    return ResolvedState(r, tuple(circles))


def mirror(d):
    """Swap over and under at every crossing."""
    new = []
    over = []
    for (a, b, c, dd), s in zip(d.crossings, d.signs):
        if s > 0:
            new.append((dd, a, b, c))
            over.append(1)
        else:
            new.append((b, c, dd, a))
            over.append(3)
    return make_diagram(new, d.free_loops, tuple(over))


def unknot():
    return make_diagram((), 1)


def diagram_from_input(pd=None, braid=None, strands=None):
    """Build a diagram from CLI-style inputs."""
    if (pd is None) == (braid is None):
        raise UsageError("give exactly one of --pd or --braid")
    if pd is not None:
        return parse_pd(pd)
    if strands is None:
        raise UsageError("--braid requires --strands")
    word = [int(g) for g in braid.replace(" ", "").split(",") if g]
    return from_braid(word, int(strands))

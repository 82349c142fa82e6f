"""Bigraded chain complexes of based free modules.

Differentials are stored sparsely: ``d[i][col][row]`` is the coefficient of
generator ``row`` of ``C^{i+1}`` in the image of generator ``col`` of ``C^i``.
A degree-preserving differential has ``qdeg(entry) == q(col) - q(row)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .algebra import QDeg
from .cube import edge_map, index_labels
from .errors import UsageError


@dataclass(frozen=True)
class Generator:
    i: int
    q: int
    vertex: tuple | None = None
    labels: tuple | None = None
    synthetic: bool = False

    def describe(self):
        if self.vertex is None:
            return "synthetic"
        r = "".join(map(str, self.vertex))
        lab = "".join("X" if l else "1" for l in self.labels) or "-"
        return f"{r}:{lab}" + ("*" if self.synthetic else "")


@dataclass
class GradedComplex:
    ring: object
    gens: dict  # i -> list[Generator]
    d: dict  # i -> {col: {row: coeff}}
    graded: bool = True
    n_plus: int = 0
    n_minus: int = 0
    source: str = ""
    states: dict | None = field(default=None, repr=False)  # cube vertex -> ResolvedState
    notes: list = field(default_factory=list)

    def degrees(self):
        return sorted(i for i, g in self.gens.items() if g)

    def rank(self, i):
        return len(self.gens.get(i, ()))

    @property
    def total_rank(self):
        return sum(len(g) for g in self.gens.values())

    def entries(self, i):
        for col, rows in self.d.get(i, {}).items():
            for row, c in rows.items():
                yield col, row, c

    def n_entries(self):
        return sum(len(rows) for cols in self.d.values() for rows in cols.values())

    def matrix(self, i):
        """Dense matrix of ``d^i`` (rows index ``C^{i+1}``)."""
        R = self.ring
        M = [[R.zero] * self.rank(i) for _ in range(self.rank(i + 1))]
        for col, row, c in self.entries(i):
            M[row][col] = c
        return M

    def qdegrees(self):
        return sorted({g.q for gs in self.gens.values() for g in gs})

    def copy(self):
        return replace(self, gens={i: list(g) for i, g in self.gens.items()},
                       d={i: {c: dict(r) for c, r in cols.items()} for i, cols in self.d.items()},
                       notes=list(self.notes))

    def dump(self):
        """Stable text serialization: generators then sparse matrix entries."""
        lines = [f"complex over {self.ring.name} ({'graded' if self.graded else 'ungraded'})",
                 f"source: {self.source}", f"n_plus={self.n_plus} n_minus={self.n_minus}"]
        for i in self.degrees():
            lines.append(f"C^{i}: {self.rank(i)} generators")
            for k, g in enumerate(self.gens[i]):
                lines.append(f"  [{k}] q={g.q} {g.describe()}")
        for i in sorted(self.d):
            ents = sorted(self.entries(i), key=lambda e: (e[0], e[1]))
            if ents:
                lines.append(f"d^{i}:")
                lines.extend(f"  ({row},{col}) = {c}" for col, row, c in ents)
        return "\n".join(lines)


def flatten(cube):
    """Total complex of the cube with the shifts ``i = |r| - n_-`` and
    ``q = sum(label qdegs) + |r| + n_+ - 2 n_-``."""
    dgm, sys = cube.diagram, cube.system
    n_plus, n_minus = dgm.n_plus, dgm.n_minus
    gens = {}
    index = {}
    for r, state in sorted(cube.states.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        h = sum(r)
        i = h - n_minus
        lst = gens.setdefault(i, [])
        index[r] = len(lst)
        for idx in range(2 ** state.k):
            labels = index_labels(idx, state.k)
            q = cube.label_qdeg(labels) + h + n_plus - 2 * n_minus
            lst.append(Generator(i, q, r, labels))
    d = {}
    for e in cube.edges:
        i = sum(e.source) - n_minus
        col0, row0 = index[e.source], index[e.target]
        cols = d.setdefault(i, {})
        for src, entries in edge_map(cube, e).items():
            rows = cols.setdefault(col0 + src, {})
            for tgt, c in entries:
                rows[row0 + tgt] = c
    for i in list(d):
        d[i] = {c: r for c, r in d[i].items() if r}
    src = f"{sys.name} on {dgm.to_string() or 'O[]'}"
    return GradedComplex(sys.ring, gens, d, sys.graded, n_plus, n_minus, src, cube.states)


@dataclass
class VerifyReport:
    ok: bool
    kind: str | None = None  # "d_squared" or "homogeneity"
    witness: tuple | None = None  # (i, row, col)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        i, row, col = self.witness
        return f"{self.kind} violated at degree {i}, row {row}, col {col}"


def verify_complex(C):
    R = C.ring
    for i in sorted(C.d):
        nxt = C.d.get(i + 1, {})
        for col, rows in sorted(C.d[i].items()):
            acc = {}
            for mid, a in rows.items():
                for row, b in nxt.get(mid, {}).items():
                    acc[row] = acc.get(row, R.zero) + b * a
            for row in sorted(acc):
                if acc[row]:
                    return VerifyReport(False, "d_squared", (i, row, col))
    if C.graded:
        for i in sorted(C.d):
            for col, row, c in sorted(C.entries(i), key=lambda e: (e[0], e[1])):
                expected = C.gens[i][col].q - C.gens[i + 1][row].q
                deg = c.qdeg()
                if deg is QDeg.INHOMOGENEOUS or deg != expected:
                    return VerifyReport(False, "homogeneity", (i, row, col))
    return VerifyReport(True)


def _is_homogeneous(C):
    for i in C.d:
        for col, row, c in C.entries(i):
            deg = c.qdeg()
            if deg is QDeg.INHOMOGENEOUS or deg != C.gens[i][col].q - C.gens[i + 1][row].q:
                return False
    return True


def simplify(C):
    """Cancel unit entries by Gaussian elimination.

    Pivots are taken in order of homological degree, then column index, then
    row index.  The result is chain homotopy equivalent to ``C``.
    """
    keys = []  # global id -> (i, position)
    ident = {}
    for i in C.degrees():
        for k in range(C.rank(i)):
            ident[(i, k)] = len(keys)
            keys.append((i, k))
    out = {x: {} for x in range(len(keys))}
    inn = {x: {} for x in range(len(keys))}
    for i in C.d:
        for col, row, c in C.entries(i):
            x, y = ident[(i, col)], ident[(i + 1, row)]
            out[x][y] = c
            inn[y][x] = c
    alive = set(range(len(keys)))

    def eliminate(x, y):
        u_inv = out[x][y].inverse()
        ws = [(w, b) for w, b in out[x].items() if w != y]
        for z, a in list(inn[y].items()):
            if z == x:
                continue
            f = a * u_inv
            oz = out[z]
            for w, b in ws:
                v = oz.get(w)
                v = -(f * b) if v is None else v - f * b
                if v:
                    oz[w] = v
                    inn[w][z] = v
                else:
                    oz.pop(w, None)
                    inn[w].pop(z, None)
        for g in (x, y):
            for w in out[g]:
                inn[w].pop(g, None)
            for z in inn[g]:
                out[z].pop(g, None)
            out[g] = {}
            inn[g] = {}
            alive.discard(g)

    eliminated = 0
    changed = True
    while changed:
        changed = False
        for x in sorted(alive):
            if x not in alive:
                continue
            units = [y for y, c in out[x].items() if c.is_unit()]
            if units:
                eliminate(x, min(units))
                eliminated += 1
                changed = True

    gens, pos = {}, {}
    for x in sorted(alive):
        i, k = keys[x]
        g = C.gens[i][k]
        if eliminated:
            g = replace(g, synthetic=True)
        lst = gens.setdefault(i, [])
        pos[x] = len(lst)
        lst.append(g)
    d = {}
    for x in sorted(alive):
        if out[x]:
            i = keys[x][0]
            d.setdefault(i, {})[pos[x]] = {pos[y]: c for y, c in sorted(out[x].items())}
    res = GradedComplex(C.ring, gens, d, C.graded, C.n_plus, C.n_minus,
                        f"simplify({C.source})", None, list(C.notes))
    res.notes.append(f"simplify: cancelled {eliminated} pairs")
    return res


def base_change_complex(C, psi):
    """Apply the ring map ``psi`` to every differential entry."""
    if psi.source != C.ring:
        raise UsageError(f"ring map source {psi.source.name} does not match complex ring {C.ring.name}")
    d = {}
    for i, cols in C.d.items():
        new_cols = {}
        for col, rows in cols.items():
            new_rows = {}
            for row, c in rows.items():
                v = psi(c)
                if v:
                    new_rows[row] = v
            if new_rows:
                new_cols[col] = new_rows
        d[i] = new_cols
    res = GradedComplex(psi.target, {i: list(g) for i, g in C.gens.items()}, d, C.graded,
                        C.n_plus, C.n_minus, f"{C.source} (x) {psi.target.name}", C.states,
                        list(C.notes))
    if C.graded and not _is_homogeneous(res):
        res.graded = False
        res.notes.append("base change is not degree-preserving; result flagged ungraded")
    return res


def dualize(C):
    """``Hom(C, R)``: transpose differentials, negate both gradings."""
    gens = {-i: [replace(g, i=-i, q=-g.q) for g in lst] for i, lst in C.gens.items()}
    d = {}
    for i, cols in C.d.items():
        new = d.setdefault(-i - 1, {})
        for col, rows in cols.items():
            for row, c in rows.items():
                new.setdefault(row, {})[col] = c
    return GradedComplex(C.ring, gens, d, C.graded, C.n_minus, C.n_plus,
                         f"dual({C.source})", None, list(C.notes))


def marked_complex(C, field_ring=None):
    """Rewrite ``C_t(D)`` over ``k[v]`` (with ``h = 0``, ``t = v``) as a complex
    of free ``k[X]``-modules, ``X^2 = v``, where ``X`` acts on the circle
    through the basepoint (the smallest edge id).

    Basis: generators whose marked circle carries label ``1``.
    """
    from .algebra import RingElement, polynomial_ring

    R = C.ring
    if getattr(R, "nvars", 0) != 1 or not R.base.is_field:
        raise UsageError("marked_complex needs a complex over k[v]")
    if C.states is None:
        raise UsageError("marked_complex needs cube provenance (flatten output)")
    (vname, vdeg), = R.variables
    if vdeg % 2:
        raise UsageError("the variable must have even q-degree to admit a square root")
    S = polynomial_ring(R.base, (("X", vdeg // 2),))

    def marked_pos(g):
        circles = C.states[g.vertex].circles
        base = min(min(c) for c in circles) if circles else None
        for k, c in enumerate(circles):
            if base in c:
                return k
        raise UsageError("empty resolution has no basepoint")

    def lift_raw(value):  # p(v) -> p(X^2)
        return RingElement(S, {(2 * e[0],): a for e, a in value.items()})

    xgen = S.gen("X")
    gens, pos, partner = {}, {}, {}
    for i in C.degrees():
        lst = gens.setdefault(i, [])
        for k, g in enumerate(C.gens[i]):
            m = marked_pos(g)
            if g.labels[m] == 0:
                pos[(i, k)] = len(lst)
                lst.append(g)
        index = {(g.vertex, g.labels): k for k, g in enumerate(C.gens[i])}
        for k, g in enumerate(C.gens[i]):
            m = marked_pos(g)
            if g.labels[m] == 1:
                base_labels = g.labels[:m] + (0,) + g.labels[m + 1:]
                partner[(i, k)] = pos[(i, index[(g.vertex, base_labels)])]
    d = {}
    for i in C.d:
        cols = {}
        for col, row, c in C.entries(i):
            if (i, col) not in pos:
                continue
            if (i + 1, row) in pos:
                r, v = pos[(i + 1, row)], lift_raw(c.value)
            else:
                r, v = partner[(i + 1, row)], xgen * lift_raw(c.value)
            rows = cols.setdefault(pos[(i, col)], {})
            acc = rows.get(r, S.zero) + v
            if acc:
                rows[r] = acc
            else:
                rows.pop(r, None)
        d[i] = {c: r for c, r in cols.items() if r}
    return GradedComplex(S, gens, d, C.graded, C.n_plus, C.n_minus,
                         f"marked({C.source})", C.states, list(C.notes))

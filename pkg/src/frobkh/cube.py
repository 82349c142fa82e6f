"""The cube of resolutions of a diagram, decorated by a Frobenius system.

Vertices are 0/1 vectors ``r`` (one bit per crossing).  The module at ``r``
is ``A^{(x) k}`` with one tensor factor per circle, circles ordered by
their smallest edge id.  Basis tensors are indexed lexicographically with
the first circle most significant and label ``1`` before ``X``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .diagram import UnionFind, resolve
from .errors import UsageError
from .frobenius import LABEL_QDEG, invert_in_A, twist
from .snf import matmul, solve_integer_system

MAX_CUBE_CROSSINGS = 16


@dataclass(frozen=True)
class CubeEdge:
    source: tuple
    target: tuple
    crossing: int
    kind: str  # "merge" or "split"
    src_circles: tuple  # circle indices at the source taking part
    tgt_circles: tuple  # circle indices at the target taking part
    matching: tuple  # (src index, tgt index) for circles left untouched
    sign: int


@dataclass
class ResolutionCube:
    diagram: object
    system: object
    states: dict  # r -> ResolvedState
    edges: list
    _tables: dict = field(default_factory=dict, repr=False)

    @property
    def n(self):
        return self.diagram.n_crossings

    def vertices(self):
        return list(self.states)

    def dim(self, r):
        return 2 ** self.states[r].k

    def labels(self, r):
        """All label vectors at ``r`` in basis order (0 = "1", 1 = "X")."""
        return list(itertools.product((0, 1), repeat=self.states[r].k))

    def label_qdeg(self, labels):
        return sum(LABEL_QDEG[l] for l in labels)

    def edges_from(self, r):
        return [e for e in self.edges if e.source == r]

    def edge(self, source, crossing):
        for e in self.edges:
            if e.source == source and e.crossing == crossing:
                return e
        raise UsageError(f"no edge leaves {source} at crossing {crossing}")


def label_index(labels):
    idx = 0
    for l in labels:
        idx = 2 * idx + l
    return idx


def index_labels(idx, k):
    return tuple((idx >> (k - 1 - c)) & 1 for c in range(k))


def _edge_between(d, s0, s1, i):
    x = d.crossings[i]
    pos = {c: ci for ci, circle in enumerate(s0.circles) for c in circle}
    pos1 = {c: ci for ci, circle in enumerate(s1.circles) for c in circle}
    src = tuple(sorted({pos[e] for e in x}))
    tgt = tuple(sorted({pos1[e] for e in x}))
    if len(src) == 2 and len(tgt) == 1:
        kind = "merge"
    elif len(src) == 1 and len(tgt) == 2:
        kind = "split"
    else:  # pragma: no cover - impossible for a planar diagram
        raise UsageError(f"crossing {i + 1} changes circles {src} -> {tgt}")
    by_set = {circle: ci for ci, circle in enumerate(s1.circles)}
    matching = tuple((ci, by_set[circle]) for ci, circle in enumerate(s0.circles)
                     if ci not in src)
    sign = -1 if sum(s0.r[:i]) % 2 else 1
    return CubeEdge(s0.r, s1.r, i, kind, src, tgt, matching, sign)


def build_cube(d, sys):
    if d.n_crossings > MAX_CUBE_CROSSINGS:
        raise UsageError(f"{d.n_crossings} crossings exceeds the cube limit of {MAX_CUBE_CROSSINGS}")
    states = {}
    for r in itertools.product((0, 1), repeat=d.n_crossings):
        states[r] = resolve(d, r)
    edges = []
    for r, s0 in states.items():
        for i, bit in enumerate(r):
            if bit == 0:
                r1 = r[:i] + (1,) + r[i + 1:]
                edges.append(_edge_between(d, s0, states[r1], i))
    return ResolutionCube(d, sys, states, edges)


def _tables(cube):
    if not cube._tables:
        sys = cube.system
        mult = {(a, b): sys.basis_product(a, b) for a in (0, 1) for b in (0, 1)}
        one, zero = sys.ring.one, sys.ring.zero
        basis = ((one, zero), (zero, one))
        comult = {a: sys.delta(basis[a]) for a in (0, 1)}
        cube._tables.update(mult=mult, comult=comult)
    return cube._tables


def edge_map(cube, edge, signed=True):
    """Sparse matrix of an edge map: ``{src index: [(tgt index, coeff), ...]}``."""
    tab = _tables(cube)
    k0 = cube.states[edge.source].k
    k1 = cube.states[edge.target].k
    sign = edge.sign if signed else 1
    out = {}
    for idx in range(2 ** k0):
        lab = index_labels(idx, k0)
        base = [0] * k1
        for s, t in edge.matching:
            base[t] = lab[s]
        col = []
        if edge.kind == "merge":
            i, j = edge.src_circles
            (kk,) = edge.tgt_circles
            prod = tab["mult"][(lab[i], lab[j])]
            for l, c in enumerate(prod):
                if c:
                    base[kk] = l
                    col.append((label_index(base), c * sign))
        else:
            (kk,) = edge.src_circles
            i, j = edge.tgt_circles
            vec = tab["comult"][lab[kk]]
            for pair, c in enumerate(vec):
                if c:
                    base[i], base[j] = pair >> 1, pair & 1
                    col.append((label_index(base), c * sign))
        if col:
            out[idx] = col
    return out


def sparse_to_dense(sparse, rows, cols, ring):
    M = [[ring.zero] * cols for _ in range(rows)]
    for c, entries in sparse.items():
        for r, v in entries:
            M[r][c] = M[r][c] + v
    return M


def edge_matrix(cube, edge, signed=True):
    """Dense matrix (rows = target basis, columns = source basis) of an edge map."""
    return sparse_to_dense(edge_map(cube, edge, signed), cube.dim(edge.target),
                           cube.dim(edge.source), cube.system.ring)


def check_faces(cube, signed=True):
    """First square that fails to (anti)commute, as ``(r, i, j)``, or ``None``."""
    R = cube.system.ring
    for r in cube.states:
        zeros = [i for i, b in enumerate(r) if b == 0]
        for i, j in itertools.combinations(zeros, 2):
            ri = r[:i] + (1,) + r[i + 1:]
            rj = r[:j] + (1,) + r[j + 1:]
            path1 = matmul(edge_matrix(cube, cube.edge(ri, j), signed),
                           edge_matrix(cube, cube.edge(r, i), signed), R)
            path2 = matmul(edge_matrix(cube, cube.edge(rj, i), signed),
                           edge_matrix(cube, cube.edge(r, j), signed), R)
            target = -1 if signed else 1
            for row1, row2 in zip(path1, path2):
                for a, b in zip(row1, row2):
                    if a != b * target:
                        return (r, i, j)
    return None


# -- twisting isomorphism ----------------------------------------------------


@dataclass
class CubeIsomorphism:
    """Vertexwise isomorphism from the twisted cube to the untwisted one.

    At vertex ``r`` the map is multiplication by ``prod_c y_c^{e_r(c)}`` in
    ``A^{(x) k}``, where ``y_c`` acts on the tensor factor of circle ``c``.
    """

    system: object
    twisted_system: object
    y: tuple
    exponents: dict  # r -> tuple of ints, one per circle
    cube: ResolutionCube
    twisted_cube: ResolutionCube

    def _power(self, e):
        sys = self.system
        base = self.y if e >= 0 else invert_in_A(sys, self.y)
        acc = (sys.ring.one, sys.ring.zero)
        for _ in range(abs(e)):
            acc = sys.mul(acc, base)
        return acc

    def factor_matrix(self, e):
        a, b = self._power(e)
        sys = self.system
        # multiplication by a + bX in the basis (1, X)
        return [[a, b * sys.t], [b, a + b * sys.h]]

    def matrix(self, r):
        R = self.system.ring
        M = [[R.one]]
        for e in self.exponents[r]:
            M = _kron(M, self.factor_matrix(e))
        return M

    def verify(self):
        """Check ``phi_tgt . d_twisted == d . phi_src`` on every edge."""
        R = self.system.ring
        for e in self.cube.edges:
            d = edge_matrix(self.cube, e)
            dt = edge_matrix(self.twisted_cube, self.twisted_cube.edge(e.source, e.crossing))
            lhs = matmul(self.matrix(e.target), dt, R)
            rhs = matmul(d, self.matrix(e.source), R)
            if any(a != b for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb)):
                return e
        return None


def _kron(A, B):
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def _solve_exponents(cube):
    """Integer exponents per (vertex, circle) satisfying the edge constraints.

    Untouched circles keep their exponent; a merge adds exponents; a split
    needs ``e(i) + e(j) = e(k) + 1``.
    """
    from .algebra import ZZ

    keys = [(r, c) for r, s in cube.states.items() for c in range(s.k)]
    uf = UnionFind(range(len(keys)))
    index = {key: n for n, key in enumerate(keys)}
    for e in cube.edges:
        for s, t in e.matching:
            uf.union(index[(e.source, s)], index[(e.target, t)])
    classes = sorted({uf.find(n) for n in range(len(keys))})
    col = {root: n for n, root in enumerate(classes)}

    def var(r, c):
        return col[uf.find(index[(r, c)])]

    rows, rhs = [], []
    for e in cube.edges:
        row = [0] * len(classes)
        if e.kind == "merge":
            (k,) = e.tgt_circles
            row[var(e.target, k)] += 1
            for c in e.src_circles:
                row[var(e.source, c)] -= 1
            b = 0
        else:
            (k,) = e.src_circles
            for c in e.tgt_circles:
                row[var(e.target, c)] += 1
            row[var(e.source, k)] -= 1
            b = 1
        rows.append(row)
        rhs.append(b)
    origin = (0,) * cube.n
    anchored = rows + [[1 if n == var(origin, c) else 0 for n in range(len(classes))]
                       for c in range(cube.states[origin].k)]
    sol = solve_integer_system(anchored, rhs + [0] * cube.states[origin].k, ZZ)
    if sol is None:
        sol = solve_integer_system(rows, rhs, ZZ)
    if sol is None:
        return None
    return {r: tuple(int(sol[var(r, c)].value) for c in range(s.k))
            for r, s in cube.states.items()}


def twist_cube_isomorphism(d, sys, y):
    """Build and verify the isomorphism ``C(D; twist(sys, y)) -> C(D; sys)``."""
    y = (sys.ring(y[0]), sys.ring(y[1]))
    tw = twist(sys, y)
    cube = build_cube(d, sys)
    tcube = build_cube(d, tw)
    exps = _solve_exponents(cube)
    if exps is None:
        raise UsageError("no exponent assignment exists for this diagram")
    iso = CubeIsomorphism(sys, tw, y, exps, cube, tcube)
    bad = iso.verify()
    if bad is not None:
        raise ArithmeticError(f"twist isomorphism fails on edge {bad}")
    return iso

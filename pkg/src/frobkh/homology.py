"""Bigraded homology, Euler characteristics and graded-PID decompositions."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .algebra import FractionField, Laurent, PolynomialRing, RingElement
from .complex import GradedComplex, Generator, simplify
from .errors import UnsupportedDomainError, UsageError
from .snf import SNFResult, smith_normal_form  # noqa: F401  (re-exported)

__all__ = [
    "SNFResult", "smith_normal_form", "TorsionFactor", "BigradedHomology",
    "bigraded_homology", "euler_characteristic", "Piece", "PieceDecomposition",
    "pid_decompose", "truncate_mod_power",
]


@dataclass(frozen=True)
class TorsionFactor:
    """Cyclic summand ``R/(base^power)`` whose generator sits in q-degree ``gen_q``.

    ``base`` is a prime integer over Z, or the grading variable's name over a
    graded univariate ring.  ``base_qdeg`` is the q-degree of ``base``.
    """

    base: object
    power: int
    gen_q: int | None
    base_qdeg: int = 0

    @property
    def factor(self):
        return f"{self.base}^{self.power}" if self.power != 1 else f"{self.base}"

    def as_dict(self):
        return {"factor": str(self.base), "power": self.power, "gen_q": self.gen_q}


@dataclass
class BigradedHomology:
    ring: object
    graded: bool
    cells: dict = field(default_factory=dict)  # (i, q) -> [free_rank, [TorsionFactor]]
    mode: str = "blocks"

    def _cell(self, i, q):
        return self.cells.setdefault((i, q), [0, []])

    def rank(self, i, q=None):
        return self.cells.get((i, q), [0, []])[0]

    def torsion(self, i, q=None):
        return list(self.cells.get((i, q), [0, []])[1])

    def table(self):
        """``{(i, q): free rank}`` for nonzero ranks."""
        return {k: v[0] for k, v in sorted(self.cells.items(), key=_cell_key) if v[0]}

    def torsion_table(self):
        return {k: sorted((t.base, t.power) for t in v[1])
                for k, v in sorted(self.cells.items(), key=_cell_key) if v[1]}

    @property
    def total_rank(self):
        return sum(v[0] for v in self.cells.values())

    def rank_by_degree(self):
        out = Counter()
        for (i, _), v in self.cells.items():
            out[i] += v[0]
        return dict(sorted((i, r) for i, r in out.items() if r))

    def all_torsion(self):
        return [(i, q, t) for (i, q), v in sorted(self.cells.items(), key=_cell_key) for t in v[1]]

    def euler(self):
        """Graded Euler characteristic; a torsion class contributes
        ``q^{gen_q} - q^{gen_q + power * qdeg(base)}``."""
        if not self.graded:
            raise UsageError("ungraded homology has no graded Euler characteristic")
        acc = Laurent()
        for (i, q), (rank, tors) in self.cells.items():
            sign = -1 if i % 2 else 1
            acc = acc + Laurent({q: sign * rank})
            for t in tors:
                acc = acc + Laurent({t.gen_q: sign}) - Laurent({t.gen_q + t.power * t.base_qdeg: sign})
        return acc

    def same_as(self, other):
        return self.table() == other.table() and self.torsion_table() == other.torsion_table()

    def rows(self):
        """JSON-ready rows sorted by (i, q)."""
        out = []
        for (i, q), (rank, tors) in sorted(self.cells.items(), key=_cell_key):
            if rank or tors:
                out.append({"i": i, "q": q, "rank": rank,
                            "torsion": [t.as_dict() for t in sorted(tors, key=_tors_key)]})
        return out

    def format_text(self):
        rows = self.rows()
        if not rows:
            return "homology is zero"
        lines = []
        for row in rows:
            q = "-" if row["q"] is None else row["q"]
            parts = []
            if row["rank"]:
                parts.append(f"{self.ring.name}^{row['rank']}" if row["rank"] > 1 else self.ring.name)
            for t in row["torsion"]:
                p = f"{t['factor']}^{t['power']}" if t["power"] != 1 else t["factor"]
                extra = f" [gen q={t['gen_q']}]" if t["gen_q"] != row["q"] else ""
                parts.append(f"{self.ring.name}/({p}){extra}")
            lines.append(f"H^{row['i']},{q} = " + " + ".join(parts))
        return "\n".join(lines)


def _cell_key(kv):
    (i, q), _ = kv
    return (i, -10 ** 9 if q is None else q)


def _tors_key(t):
    return (str(t.base), t.power, t.gen_q if t.gen_q is not None else 0)


# -- helpers ------------------------------------------------------------------


def _prime_powers(n):
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _threads():
    """Worker cap from ``FROBKH_THREADS``: unset means 1, ``0`` means one per CPU."""
    try:
        n = int(os.environ.get("FROBKH_THREADS", "1"))
    except ValueError:
        return 1
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def _mode(C):
    R = C.ring
    if not R.is_euclidean:
        raise UnsupportedDomainError(
            f"homology over {R.name} is not computed directly; simplify the complex "
            "or base-change to Z, a field, or a univariate polynomial ring over a field")
    if not C.graded or isinstance(R, FractionField) and any(d for _, d in R.base.variables):
        return "ungraded"
    if isinstance(R, PolynomialRing) and R.variables[0][1] != 0:
        return "monomial"
    return "blocks"


def _torsion_factors(R, x, gen_q):
    """Split a non-unit invariant factor into homogeneous prime-power factors."""
    if isinstance(x.value, int):
        return [TorsionFactor(p, k, gen_q) for p, k in _prime_powers(x.value)]
    if isinstance(R, PolynomialRing):
        (name, deg), = R.variables
        exps = list(x.value)
        if len(exps) == 1 and deg != 0:
            return [TorsionFactor(name, exps[0][0], gen_q, deg)]
        return [TorsionFactor(f"({x})", 1, gen_q, 0)]
    return [TorsionFactor(str(x), 1, gen_q)]


# -- per-block homology (degree-0 rings) --------------------------------------


def _block_homology(C, q):
    """Homology of the sub-complex spanned by generators of q-degree ``q``."""
    R = C.ring
    idx = {i: [k for k, g in enumerate(C.gens[i]) if g.q == q] for i in C.degrees()}
    pos = {i: {k: n for n, k in enumerate(ks)} for i, ks in idx.items()}
    ranks, factors = {}, {}
    for i in C.degrees():
        if i + 1 not in idx or not idx[i] or not idx[i + 1]:
            ranks[i], factors[i] = 0, []
            continue
        M = [[R.zero] * len(idx[i]) for _ in idx[i + 1]]
        for col, row, c in C.entries(i):
            if col in pos[i] and row in pos[i + 1]:
                M[pos[i + 1][row]][pos[i][col]] = c
        res = smith_normal_form(M, R, transforms=False)
        ranks[i], factors[i] = res.rank, res.invariant_factors
    out = []
    for i in C.degrees():
        free = len(idx[i]) - ranks[i] - ranks.get(i - 1, 0)
        tors = []
        for f in factors.get(i - 1, []):
            if not f.is_unit():
                tors.extend(_torsion_factors(R, f, q))
        out.append((i, free, tors))
    return q, out


def _blocks(C):
    H = BigradedHomology(C.ring, True, mode="blocks")
    qs = C.qdegrees()
    n = _threads()
    if n > 1 and len(qs) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(lambda q: _block_homology(C, q), qs))
    else:
        results = [_block_homology(C, q) for q in qs]
    for q, cells in results:
        for i, free, tors in cells:
            if free or tors:
                cell = H._cell(i, q)
                cell[0] += free
                cell[1].extend(tors)
    return H


# -- ungraded homology --------------------------------------------------------


def _ungraded(C):
    R = C.ring
    H = BigradedHomology(R, False, mode="ungraded")
    ranks, factors = {}, {}
    for i in C.degrees():
        M = C.matrix(i) if C.rank(i + 1) else []
        if not M or not C.rank(i):
            ranks[i], factors[i] = 0, []
            continue
        res = smith_normal_form(M, R, transforms=False)
        ranks[i], factors[i] = res.rank, res.invariant_factors
    for i in C.degrees():
        free = C.rank(i) - ranks[i] - ranks.get(i - 1, 0)
        tors = []
        for f in factors.get(i - 1, []):
            if not f.is_unit():
                tors.extend(_torsion_factors(R, f, None))
        if free or tors:
            cell = H._cell(i, None)
            cell[0] += free
            cell[1].extend(tors)
    return H


# -- graded univariate rings: monomial Smith form -------------------------------


def _monomial_snf(C, i):
    """Smith form of ``d^i`` keeping every entry a monomial ``c * v^k``.

    Returns ``(pivots, kernel_cols)`` where pivots are ``(row q, col q, k)``
    and kernel columns are the q-degrees of the non-pivot columns.
    """
    R = C.ring
    cols_q = [g.q for g in C.gens.get(i, [])]
    rows_q = [g.q for g in C.gens.get(i + 1, [])]
    # column-sparse and row-sparse views of the matrix
    cols = {c: dict(r) for c, r in C.d.get(i, {}).items() if r}
    rows = {}
    for c, rs in cols.items():
        for r, v in rs.items():
            rows.setdefault(r, {})[c] = v
    for rs in cols.values():
        for v in rs.values():
            if len(v.value) != 1:
                raise UsageError("monomial Smith form needs a homogeneous complex")

    def power(v):
        (k,), = v.value
        return k

    pivots = []
    pivot_cols = set()
    while cols:
        best = None
        for c in sorted(cols):
            for r, v in cols[c].items():
                key = (power(v), c, r)
                if best is None or key < best:
                    best = key
        k, pc, pr = best
        p = cols[pc][pr]
        # clear the pivot row with column operations: col_c -= (a/p) * col_pc
        for c, a in list(rows[pr].items()):
            if c == pc:
                continue
            f = a.exact_div(p)
            for r, b in cols[pc].items():
                v = cols[c].get(r, R.zero) - f * b
                if v:
                    cols[c][r] = v
                    rows[r][c] = v
                else:
                    cols[c].pop(r, None)
                    rows[r].pop(c, None)
            if not cols[c]:
                del cols[c]
        # rows other than pr in column pc: row ops only affect the cokernel
        # basis, so the pivot column can simply be dropped along with row pr.
        for r in list(cols[pc]):
            rows[r].pop(pc, None)
        for c in list(rows[pr]):
            cols[c].pop(pr, None)
            if not cols[c]:
                del cols[c]
        del rows[pr]
        cols.pop(pc, None)
        pivots.append((rows_q[pr], cols_q[pc], k))
        pivot_cols.add(pc)
    kernel = [q for c, q in enumerate(cols_q) if c not in pivot_cols]
    return pivots, kernel


def _monomial(C):
    R = C.ring
    (name, deg), = R.variables
    H = BigradedHomology(R, True, mode="monomial")
    snf = {i: _monomial_snf(C, i) for i in C.degrees()}
    for i in C.degrees():
        _, kernel = snf[i]
        prev = snf.get(i - 1, ([], []))[0]
        free = Counter(kernel)
        free.subtract(Counter(rq for rq, _, _ in prev))
        for q, n in free.items():
            if n < 0:  # pragma: no cover - impossible for a chain complex
                raise ArithmeticError("inconsistent graded ranks")
            if n:
                H._cell(i, q)[0] += n
        for rq, _, k in prev:
            if k > 0:
                H._cell(i, rq)[1].append(TorsionFactor(name, k, rq, deg))
    return H


# -- public API ---------------------------------------------------------------


def bigraded_homology(C, presimplify=True):
    """Homology of ``C`` as a table ``(i, q) -> (free rank, torsion)``.

    Over rings concentrated in q-degree 0 the computation is blockwise per q;
    over graded univariate rings it uses a monomial Smith form; ungraded
    complexes get ``q = None``.
    """
    mode = _mode(C)
    if presimplify:
        C = simplify(C)
    if mode == "ungraded":
        return _ungraded(C)
    if mode == "monomial":
        return _monomial(C)
    return _blocks(C)


def euler_characteristic(C):
    """``sum_i (-1)^i sum_gens q^{qdeg}``."""
    acc = {}
    for i, gens in C.gens.items():
        sign = -1 if i % 2 else 1
        for g in gens:
            acc[g.q] = acc.get(g.q, 0) + sign
    return Laurent(acc)


# -- pieces over graded PIDs --------------------------------------------------


@dataclass(frozen=True)
class Piece:
    """Summand ``0 -> R{q_source} --v^m--> R{q_target} -> 0`` in degrees ``i-1, i``."""

    m: int
    i: int
    q_source: int
    q_target: int

    @property
    def qtop(self):
        return max(self.q_source, self.q_target)

    def as_dict(self):
        return {"m": self.m, "i": self.i, "q_source": self.q_source,
                "q_target": self.q_target, "qtop": self.qtop}


@dataclass
class PieceDecomposition:
    ring: object
    variable: str
    var_qdeg: int
    pieces: list
    free: list  # (i, q) per free summand

    def pieces_with_m_above(self, bound):
        return [p for p in self.pieces if p.m > bound]

    def homology(self):
        """Reassemble the bigraded homology table from the pieces."""
        H = BigradedHomology(self.ring, True, mode="monomial")
        for i, q in self.free:
            H._cell(i, q)[0] += 1
        for p in self.pieces:
            H._cell(p.i, p.q_target)[1].append(TorsionFactor(self.variable, p.m, p.q_target,
                                                             self.var_qdeg))
        return H

    def mod_power(self, n):
        """Bigraded dimensions over the residue field of ``C (x) R/(v^n)``."""
        dv = self.var_qdeg
        out = Counter()
        for i, q in self.free:
            for j in range(n):
                out[(i, q + j * dv)] += 1
        for p in self.pieces:
            for j in range(max(0, n - p.m), n):
                out[(p.i - 1, p.q_source + j * dv)] += 1
            for j in range(min(p.m, n)):
                out[(p.i, p.q_target + j * dv)] += 1
        return {k: v for k, v in sorted(out.items()) if v}

    def as_dict(self):
        return {"variable": self.variable,
                "pieces": [p.as_dict() for p in self.pieces],
                "free": [{"i": i, "q": q} for i, q in self.free]}


def pid_decompose(C):
    """Split a complex over a graded univariate PID into pieces and free summands."""
    R = C.ring
    if _mode(C) != "monomial":
        raise UnsupportedDomainError(
            f"pid_decompose needs a graded univariate polynomial ring over a field, got {R.name}")
    (name, deg), = R.variables
    H = bigraded_homology(C)
    pieces, free = [], []
    for (i, q), (rank, tors) in sorted(H.cells.items(), key=_cell_key):
        free.extend([(i, q)] * rank)
        for t in tors:
            pieces.append(Piece(t.power, i, t.gen_q + t.power * deg, t.gen_q))
    pieces.sort(key=lambda p: (p.i, p.q_target, p.m))
    return PieceDecomposition(R, name, deg, pieces, free)


def truncate_mod_power(C, n):
    """``C (x) k[v]/(v^n)`` written as a complex over the field ``k``.

    Each generator ``g`` becomes the k-basis ``g * v^j`` (``j < n``) in
    q-degree ``g.q + j * qdeg(v)``.
    """
    R = C.ring
    if not isinstance(R, PolynomialRing) or R.nvars != 1 or not R.base.is_field:
        raise UsageError("truncate_mod_power needs a complex over k[v]")
    (_, deg), = R.variables
    k = R.base
    gens, d = {}, {}
    for i in C.degrees():
        gens[i] = [Generator(i, g.q + j * deg, g.vertex, g.labels, True)
                   for g in C.gens[i] for j in range(n)]
    for i in C.d:
        cols = {}
        for col, row, c in C.entries(i):
            for e, a in c.value.items():
                for j in range(n):
                    jj = j + e[0]
                    if jj < n:
                        rows = cols.setdefault(col * n + j, {})
                        v = rows.get(row * n + jj, k.zero) + RingElement(k, a)
                        if v:
                            rows[row * n + jj] = v
                        else:
                            rows.pop(row * n + jj, None)
        d[i] = cols
    return GradedComplex(k, gens, d, C.graded, C.n_plus, C.n_minus,
                         f"{C.source} mod v^{n}", None)

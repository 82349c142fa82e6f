"""Smith normal form over Euclidean domains.

Works for any ring whose elements support ``divmod`` and ``euclid_size``:
the integers, fields, and univariate polynomial rings over fields.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedDomainError


@dataclass
class SNFResult:
    ring: object
    S: list  # diagonal form, same shape as the input
    U: list | None  # invertible row transform, U @ M @ V == S
    V: list | None
    invariant_factors: list

    @property
    def rank(self):
        return len(self.invariant_factors)


def identity(ring, n):
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def matmul(A, B, ring):
    if not A or not B:
        rows = len(A)
        cols = len(B[0]) if B else 0
        return [[ring.zero] * cols for _ in range(rows)]
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        Ai = A[i]
        row = [ring.zero] * p
        for k in range(m):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(p):
                b = Bk[j]
                if b:
                    row[j] = row[j] + a * b
        out.append(row)
    return out


def _normalizer(x):
    """Unit ``u`` with ``u*x`` in canonical form (positive / monic / one)."""
    R = x.ring
    if R.is_field:
        return x.inverse()
    if hasattr(R, "nvars"):
        _, lc = R._leading(x.value)
        return R.from_base(R.base._inverse(lc))
    return R(-1) if x.value < 0 else R.one


def smith_normal_form(M, ring, transforms=True):
    """Diagonalize ``M`` (a list of rows) by unimodular row and column operations.

    Pivots are chosen by minimal Euclidean size, ties broken by (row, col).
    """
    if not ring.is_euclidean:
        raise UnsupportedDomainError(f"{ring} is not a Euclidean domain")
    A = [[ring(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(ring, m) if transforms else None
    V = identity(ring, n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        Ad, As = A[dst], A[src]
        for k in range(n):
            if As[k]:
                Ad[k] = Ad[k] + q * As[k]
        if U is not None:
            Ud, Us = U[dst], U[src]
            for k in range(m):
                if Us[k]:
                    Ud[k] = Ud[k] + q * Us[k]

    def add_col(dst, src, q):
        for row in A:
            if row[src]:
                row[dst] = row[dst] + q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] = row[dst] + q * row[src]

    def scale_row(i, u):
        A[i] = [x * u for x in A[i]]
        if U is not None:
            U[i] = [x * u for x in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x:
                    key = (x.euclid_size(), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = A[i][t].divmod(A[t][t])
                    add_row(i, t, -q)
                    if r:
                        swap_rows(i, t)
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = A[t][j].divmod(A[t][t])
                    add_col(j, t, -q)
                    if r:
                        swap_cols(j, t)
                        changed = True
            if changed:
                continue
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = None
            p = A[t][t]
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] and A[i][j].divmod(p)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, ring.one)
        scale_row(t, _normalizer(A[t][t]))
        t += 1
    factors = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    return SNFResult(ring, A, U, V, factors)


def solve_integer_system(A, b, ring):
    """One solution ``x`` of ``A x = b`` over a Euclidean ring, or ``None``."""
    m = len(A)
    n = len(A[0]) if m else 0
    res = smith_normal_form(A, ring)
    Ub = [sum((res.U[i][k] * ring(b[k]) for k in range(m)), ring.zero) for i in range(m)]
    z = [ring.zero] * n
    for i in range(m):
        s = res.S[i][i] if i < n else ring.zero
        if s:
            q, r = Ub[i].divmod(s)
            if r:
                return None
            z[i] = q
        elif Ub[i]:
            return None
    return [sum((res.V[i][k] * z[k] for k in range(n)), ring.zero) for i in range(n)]

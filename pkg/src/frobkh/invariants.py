"""Derived link invariants: Jones polynomial oracle, Lee rank, s-invariant."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import QQ, Laurent, polynomial_ring
from .complex import base_change_complex, flatten, marked_complex
from .cube import build_cube
from .errors import UsageError
from .frobenius import RingHom, make_system
from .homology import bigraded_homology, pid_decompose, truncate_mod_power


# -- Kauffman bracket oracle ----------------------------------------------------
#
# Deliberately self-contained: it only reads the crossings and signs of the
# diagram and does its own state enumeration and loop counting.


def _count_loops(crossings, bits, free_loops):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b, c, d), bit in zip(crossings, bits):
        pairs = ((a, b), (c, d)) if bit == 0 else ((a, d), (b, c))
        for u, v in pairs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    edges = {e for x in crossings for e in x}
    return len({find(e) for e in edges}) + free_loops


def kauffman_bracket_jones(d):
    """Unnormalized Jones polynomial via the Kauffman bracket state sum.

    ``<D>`` uses A-smoothing = 0-smoothing and loop value ``-A^2 - A^-2``;
    then ``(-A^3)^{-w} <D>`` is rewritten with ``A^n -> (-q)^{-n/2}`` and
    multiplied by ``q + q^-1`` so that the unknot gives ``q + q^-1``.
    """
    crossings = list(d.crossings)
    n = len(crossings)
    bracket = {}  # A-exponent -> coefficient
    delta = {2: -1, -2: -1}

    def mul(p, r):
        out = {}
        for e1, c1 in p.items():
            for e2, c2 in r.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return {e: c for e, c in out.items() if c}

    for state in range(2 ** n):
        bits = [(state >> (n - 1 - k)) & 1 for k in range(n)]
        a_count = bits.count(0)
        term = {a_count - (n - a_count): 1}
        loops = _count_loops(crossings, bits, d.free_loops)
        for _ in range(loops - 1):
            term = mul(term, delta)
        for e, c in term.items():
            bracket[e] = bracket.get(e, 0) + c
    w = sum(d.signs)
    norm = {-3 * w: -1 if w % 2 else 1}
    f = mul({e: c for e, c in bracket.items() if c}, norm)
    out = {}
    for e, c in f.items():
        if e % 2:
            raise ArithmeticError("odd A-exponent in normalized bracket")  # pragma: no cover
        k = -e // 2
        coeff = c * (-1 if k % 2 else 1)
        out[k] = out.get(k, 0) + coeff
    return Laurent(out) * Laurent({1: 1, -1: 1})


# -- Lee rank and the s-invariant --------------------------------------------


def _qt_ring():
    return polynomial_ring(QQ, (("t", -4),))


def qt_complex(d):
    """``C_t(D)``: the F5 complex base-changed along ``h -> 0, t -> t`` into Q[t]."""
    sys = make_system("F5")
    Qt = _qt_ring()
    C = flatten(build_cube(d, sys))
    return base_change_complex(C, RingHom(sys.ring, Qt, {"h": 0, "t": Qt.gen("t")}))


def xmodule_complex(d):
    """``C_t(D)`` as a complex of free Q[X]-modules (X acts at the basepoint)."""
    return marked_complex(qt_complex(d))


def lee_rank(d):
    """Free rank of ``H_t(D)`` over Q[t]."""
    H = bigraded_homology(qt_complex(d))
    return sum(H.table().values())


def _require_knot(d):
    if d.n_components != 1:
        raise UsageError(f"the s-invariant needs a knot; this diagram has {d.n_components} components")


def s_invariant(d, decomposition=None):
    """``s = q(free Q[X] generator) - 1``."""
    _require_knot(d)
    P = decomposition or pid_decompose(xmodule_complex(d))
    if len(P.free) != 1 or P.free[0][0] != 0:
        raise ArithmeticError(f"expected one free summand at i=0, got {P.free}")  # pragma: no cover
    return P.free[0][1] - 1


def reduced_dim_prediction(pieces, rational_dim):
    """``dim H - 1 - 2 * #{pieces with m > 1}``."""
    plist = getattr(pieces, "pieces", pieces)
    return rational_dim - 1 - 2 * sum(1 for p in plist if p.m > 1)


def rational_khovanov(d):
    sys = make_system("F1")
    C = flatten(build_cube(d, sys))
    return bigraded_homology(base_change_complex(C, RingHom(sys.ring, QQ, {})))


@dataclass
class InvariantReport:
    components: int
    jones: Laurent
    lee_rank: int
    s: int | None
    pieces: object | None
    rational_dim: int
    predicted_reduced_dim: int | None
    reduced_dim: int | None

    def as_dict(self):
        return {
            "components": self.components,
            "jones": str(self.jones),
            "lee_rank": self.lee_rank,
            "s": self.s,
            "pieces": self.pieces.as_dict() if self.pieces is not None else None,
            "rational_dim": self.rational_dim,
            "predicted_reduced_dim": self.predicted_reduced_dim,
            "reduced_dim": self.reduced_dim,
        }


def invariant_report(d):
    jones = kauffman_bracket_jones(d)
    lee = lee_rank(d)
    dim = rational_khovanov(d).total_rank
    s = pieces = pred = red = None
    if d.n_components == 1:
        M = xmodule_complex(d)
        pieces = pid_decompose(M)
        s = s_invariant(d, pieces)
        pred = reduced_dim_prediction(pieces, dim)
        red = bigraded_homology(truncate_mod_power(M, 1)).total_rank
    return InvariantReport(d.n_components, jones, lee, s, pieces, dim, pred, red)

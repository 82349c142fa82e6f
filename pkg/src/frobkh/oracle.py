"""Test-time oracles: brute-force homology by rank-nullity, golden fixtures.

The rank computation here is a separate row reduction over ``Fraction`` (or
integers mod p); it does not use the Smith normal form or ``simplify``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import IntegerRing, PrimeField, RationalField
from .diagram import from_braid, parse_pd
from .errors import UsageError


def _rank(rows, p=None):
    """Rank of a list of sparse rows ``{col: value}`` by Gaussian elimination."""
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        pivot_row = rows.pop()
        col = min(pivot_row)
        pv = pivot_row[col]
        rank += 1
        rest = []
        for r in rows:
            if col in r:
                f = r[col] * pow(pv, -1, p) % p if p else r[col] / pv
                for c, v in pivot_row.items():
                    nv = r.get(c, 0) - f * v
                    if p:
                        nv %= p
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
            if r:
                rest.append(r)
        rows = rest
    return rank


def _convert(c, p):
    v = c.value
    if p:
        return int(v) % p
    return Fraction(v)


def brute_force_homology_small(C, max_total_dim=512):
    """Per-(i, q) homology dimensions of a complex over Z (tensored with Q), Q or F_p."""
    R = C.ring
    if isinstance(R, PrimeField):
        p = R.p
    elif isinstance(R, (IntegerRing, RationalField)):
        p = None
    else:
        raise UsageError(f"brute-force oracle works over Z, Q or F_p, not {R.name}")
    if C.total_rank > max_total_dim:
        raise UsageError(f"complex has {C.total_rank} generators, oracle limit is {max_total_dim}")
    degrees = sorted(i for i, g in C.gens.items() if g)
    qs = sorted({g.q for i in degrees for g in C.gens[i]})
    rank_d = {}
    for i in degrees:
        for q in qs:
            rows = {}
            for col, rs in C.d.get(i, {}).items():
                if C.gens[i][col].q != q:
                    continue
                for row, c in rs.items():
                    v = _convert(c, p)
                    if v:
                        rows.setdefault(row, {})[col] = v
            rank_d[(i, q)] = _rank(list(rows.values()), p)
    out = {}
    for i in degrees:
        for q in qs:
            n = sum(1 for g in C.gens[i] if g.q == q)
            dim = n - rank_d[(i, q)] - rank_d.get((i - 1, q), 0)
            if dim:
                out[(i, q)] = dim
    return out


# -- golden fixtures ------------------------------------------------------------


def table_to_json(table):
    return [{"i": i, "q": q, "rank": r} for (i, q), r in sorted(table.items())]


def table_from_json(rows):
    return {(row["i"], row["q"]): row["rank"] for row in rows}


@dataclass
class GoldenFixture:
    id: str
    pd: str
    braid: list | None
    strands: int | None
    components: int
    jones: str
    tables: dict  # coefficient name -> {(i, q): rank}
    lee_rank: int
    s: int | None = None
    torsion_z: list = field(default_factory=list)  # [(i, q, factor, power)]
    reidemeister_partners: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def diagram(self):
        if self.braid is not None:
            return from_braid(self.braid, self.strands)
        return parse_pd(self.pd)

    def to_json(self):
        return {
            "id": self.id,
            "pd": self.pd,
            "braid": self.braid,
            "strands": self.strands,
            "components": self.components,
            "jones": self.jones,
            "tables": {k: table_to_json(v) for k, v in sorted(self.tables.items())},
            "lee_rank": self.lee_rank,
            "s": self.s,
            "torsion_z": [list(t) for t in self.torsion_z],
            "reidemeister_partners": self.reidemeister_partners,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data):
        if not data.get("provenance"):
            raise UsageError(f"fixture {data.get('id')} has no provenance note")
        return cls(
            id=data["id"], pd=data["pd"], braid=data.get("braid"), strands=data.get("strands"),
            components=data["components"], jones=data["jones"],
            tables={k: table_from_json(v) for k, v in data["tables"].items()},
            lee_rank=data["lee_rank"], s=data.get("s"),
            torsion_z=[tuple(t) for t in data.get("torsion_z", [])],
            reidemeister_partners=data.get("reidemeister_partners", []),
            provenance=data["provenance"],
        )


def load_fixtures(directory):
    """All ``*.json`` fixtures in ``directory``, sorted by id."""
    out = []
    for path in sorted(Path(directory).glob("*.json")):
        out.append(GoldenFixture.from_json(json.loads(path.read_text())))
    return sorted(out, key=lambda f: f.id)

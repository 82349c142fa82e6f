"""Regenerate the golden fixtures in tests/data/fixtures/.

Tables are computed with the independent oracles only: the brute-force
rank-nullity computation (frobkh.oracle) for the F1 theory over Q and F2,
and the Kauffman bracket state sum for the Jones polynomial.  Expected
s-invariants and Lee ranks come from the literature (see provenance).

Usage: python3 tests/data/make_fixtures.py
"""

import json
from pathlib import Path

from frobkh.algebra import GF, QQ, ZZ
from frobkh.complex import base_change_complex, flatten
from frobkh.cube import build_cube
from frobkh.diagram import from_braid, parse_pd
from frobkh.frobenius import RingHom, make_system
from frobkh.invariants import kauffman_bracket_jones
from frobkh.oracle import GoldenFixture, brute_force_homology_small

OUT = Path(__file__).parent / "fixtures"

POS_BRAID = "positive braid closure: s = w - n + 1 (Rasmussen)"
ALT = "alternating knot: s = -signature"

# id, braid, strands, s, s provenance, Reidemeister partners
CORPUS = [
    ("unknot", [], 1, 0, "normalization s(unknot) = 0", ["unknot-kink-pos", "unknot-kink-neg",
                                                          "unknot-r2", "unknot-3strand"]),
    ("unknot-kink-pos", [1], 2, 0, "unknot diagram", []),
    ("unknot-kink-neg", [-1], 2, 0, "unknot diagram", []),
    ("unknot-r2", [1, 1, -1], 2, 0, "unknot diagram", []),
    ("unknot-3strand", [1, 2], 3, 0, "unknot diagram", []),
    ("unlink2", [], 2, None, "", ["unlink2-r2"]),
    ("unlink2-r2", [1, -1], 2, None, "", []),
    ("hopf-pos", [1, 1], 2, None, "", ["hopf-pos-stab"]),
    ("hopf-pos-stab", [1, 1, 2], 3, None, "", []),
    ("hopf-neg", [-1, -1], 2, None, "", []),
    ("trefoil-pos", [1, 1, 1], 2, 2, POS_BRAID + "; signature -2",
     ["trefoil-pos-stab", "trefoil-pos-r3a", "trefoil-pos-r2"]),
    ("trefoil-pos-stab", [1, 1, 1, 2], 3, 2, POS_BRAID, []),
    ("trefoil-pos-r3a", [1, 2, 1, 1], 3, 2, POS_BRAID, ["trefoil-pos-r3b"]),
    ("trefoil-pos-r3b", [2, 1, 2, 1], 3, 2, POS_BRAID, []),
    ("trefoil-pos-r2", [1, 1, 1, 2, 2, -2], 3, 2, "R2 move on trefoil-pos-stab", []),
    ("trefoil-neg", [-1, -1, -1], 2, -2, ALT + " (signature +2)", []),
    ("figure-eight", [1, -2, 1, -2], 3, 0, ALT + " (signature 0)", ["figure-eight-r2"]),
    ("figure-eight-r2", [1, -2, 1, -2, 1, -1], 3, 0, "R2 move on figure-eight", []),
    ("5_1", [1, 1, 1, 1, 1], 2, 4, POS_BRAID, []),
    ("5_2", [1, 1, 1, 2, -1, 2], 3, 2, ALT + " (signature -2 for this chirality)", []),
    ("6_1", [1, 1, 2, -1, -3, 2, -3], 4, 0, ALT + " (signature 0; slice)", []),
    ("8_19", [1, 1, 1, 2, 1, 1, 1, 2], 3, 6, POS_BRAID + "; torus knot T(3,4)", []),
]

PD_CORPUS = [
    ("trefoil-neg-pd", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", -2,
     "Knot Atlas PD of 3_1 (left-handed); " + ALT, ["trefoil-neg"]),
]


def tables_for(d):
    C = flatten(build_cube(d, make_system("F1")))
    out = {}
    for name, ring in (("Q", QQ), ("F2", GF(2))):
        Cr = base_change_complex(C, RingHom(ZZ, ring, {}))
        out[name] = brute_force_homology_small(Cr, max_total_dim=10 ** 5)
    return out


def fixture(fid, d, braid, strands, s, s_note, partners):
    m = d.n_components
    prov = {
        "tables": "[DERIVED] brute-force rank-nullity over Q and F2 on the F1 cube (frobkh.oracle)",
        "jones": "[DERIVED] Kauffman bracket state sum (frobkh.invariants.kauffman_bracket_jones)",
        "lee_rank": f"[PAPER] Prop 9: rank 2^m with m = {m}",
    }
    if s is not None:
        prov["s"] = f"[DERIVED] {s_note}"
    torsion = []
    if fid == "trefoil-pos":
        torsion = [(3, 7, 2, 1)]
        prov["torsion_z"] = "[DERIVED] spec golden table: one Z/2 at (3,7)"
    return GoldenFixture(fid, d.to_string(), braid, strands, m, str(kauffman_bracket_jones(d)),
                         tables_for(d), 2 ** m, s if m == 1 else None, torsion, partners, prov)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    fixtures = [fixture(fid, from_braid(w, n), w, n, s, note, partners)
                for fid, w, n, s, note, partners in CORPUS]
    fixtures += [fixture(fid, parse_pd(pd), None, None, s, note, partners)
                 for fid, pd, s, note, partners in PD_CORPUS]
    for f in fixtures:
        path = OUT / f"{f.id}.json"
        path.write_text(json.dumps(f.to_json(), indent=2) + "\n")
        print(f"wrote {path.name}")


if __name__ == "__main__":
    main()

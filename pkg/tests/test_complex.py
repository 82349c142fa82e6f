from conftest import f1_complex, f5_complex, over
from frobkh.algebra import QQ, ZZ
from frobkh.complex import (GradedComplex, Generator, base_change_complex, dualize, flatten,
                            marked_complex, simplify, verify_complex)
from frobkh.cube import build_cube
from frobkh.diagram import from_braid, unknot
from frobkh.frobenius import ZHT, RingHom, make_system
from frobkh.homology import bigraded_homology
from frobkh.invariants import qt_complex


def test_flatten_trefoil_counts():
    C = f1_complex("trefoil-pos")
    assert [C.rank(i) for i in C.degrees()] == [4, 6, 12, 8]
    assert C.degrees() == [0, 1, 2, 3]
    assert verify_complex(C)


def test_flatten_gradings():
    C = f1_complex("trefoil-pos")
    # vertex 000 has two circles; label 11 is q = -2 + 0 + 3 = 1
    qs = sorted(g.q for g in C.gens[0])
    assert qs == [1, 3, 3, 5]
    assert all(g.i == i for i, gs in C.gens.items() for g in gs)


def test_flatten_unknot():
    C = flatten(build_cube(unknot(), make_system("F1")))
    assert C.degrees() == [0] and sorted(g.q for g in C.gens[0]) == [-1, 1]
    assert C.n_entries() == 0
    assert bigraded_homology(C).table() == {(0, -1): 1, (0, 1): 1}


def test_verify_detects_flipped_sign():
    C = f1_complex("trefoil-pos").copy()
    col, row, c = next(iter(C.entries(0)))
    C.d[0][col][row] = -c
    rep = verify_complex(C)
    assert not rep and rep.kind == "d_squared"
    assert rep.witness[0] == 0
    assert "d_squared" in str(rep)


def test_verify_detects_inhomogeneous_entry():
    C = f5_complex("hopf-pos").copy()
    h, t = ZHT.gens()
    col, row, c = next(iter(C.entries(0)))
    C.d[0][col][row] = c + h * c if c.qdeg() != -2 else c + 1
    rep = verify_complex(C)
    assert not rep


def test_empty_complex():
    C = GradedComplex(ZZ, {}, {})
    assert verify_complex(C)
    H = bigraded_homology(C)
    assert H.table() == {} and H.total_rank == 0
    assert simplify(C).total_rank == 0


def test_simplify_unlink_example():
    # sigma_1 sigma_1^-1 on two strands closes to a 2-component unlink
    C = flatten(build_cube(from_braid([1, -1], 2), make_system("F1")))
    S = simplify(C)
    assert S.total_rank == 4
    assert bigraded_homology(S, presimplify=False).table() == {(0, -2): 1, (0, 0): 2, (0, 2): 1}


def test_simplify_unknot_r2():
    C = flatten(build_cube(from_braid([1, 1, -1], 2), make_system("F1")))
    S = simplify(C)
    assert S.total_rank == 2 and verify_complex(S)
    assert all(g.synthetic for gs in S.gens.values() for g in gs)


def test_simplify_trefoil_over_z_keeps_torsion():
    C = f1_complex("trefoil-pos")
    S = simplify(C)
    assert verify_complex(S)
    assert S.total_rank == 6
    H = bigraded_homology(S, presimplify=False)
    assert H.same_as(bigraded_homology(C, presimplify=False))
    assert not any(c.is_unit() for i in S.d for _, _, c in S.entries(i))


def test_base_change_f5_to_f1():
    C5 = f5_complex("trefoil-pos")
    psi = RingHom(ZHT, ZZ, {"h": 0, "t": 0})
    C = base_change_complex(C5, psi)
    C1 = f1_complex("trefoil-pos")
    assert C.graded
    for i in C1.d:
        assert C.matrix(i) == C1.matrix(i)


def test_base_change_to_lee_is_ungraded():
    C5 = f5_complex("trefoil-pos")
    C = base_change_complex(C5, RingHom(ZHT, QQ, {"h": 0, "t": 1}))
    assert not C.graded and C.notes
    H = bigraded_homology(C)
    assert H.total_rank == 2 and all(q is None for (_, q) in H.cells)


def test_dualize_involution_and_flip():
    C = f1_complex("trefoil-pos")
    D = dualize(C)
    assert (D.n_plus, D.n_minus) == (C.n_minus, C.n_plus)
    assert verify_complex(D)
    DD = dualize(D)
    assert DD.gens == C.gens
    for i in C.d:
        assert DD.matrix(i) == C.matrix(i)
    HQ = bigraded_homology(over(C, QQ)).table()
    HD = bigraded_homology(over(D, QQ)).table()
    assert HD == {(-i, -q): r for (i, q), r in HQ.items()}


def test_dump_is_stable():
    C = f1_complex("hopf-pos")
    a, b = C.dump(), C.copy().dump()
    assert a == b
    assert a.splitlines()[0] == "complex over Z (graded)"
    assert "d^0:" in a


def test_marked_complex_halves_rank():
    Ct = qt_complex(from_braid([1, 1, 1], 2))
    M = marked_complex(Ct)
    assert M.total_rank * 2 == Ct.total_rank
    assert verify_complex(M)
    assert M.ring.variables == (("X", -2),)


def test_generator_describe():
    g = Generator(0, 1, (0, 1), (0, 1))
    assert g.describe() == "01:1X"
    assert Generator(0, 1).describe() == "synthetic"

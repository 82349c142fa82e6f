import pytest

from frobkh.diagram import from_braid, parse_pd, unknot
from frobkh.frobenius import ZHT, make_system
from frobkh.cube import (build_cube, check_faces, edge_matrix, twist_cube_isomorphism)

HOPF_PD = "X[4,1,3,2] X[2,3,1,4]"


def strs(M):
    return [[str(x) for x in row] for row in M]


def test_unknot_cube():
    cube = build_cube(unknot(), make_system("F1"))
    assert list(cube.states) == [()]
    assert cube.states[()].k == 1 and cube.edges == []


def test_kink_cube():
    d = parse_pd("X[1,1,2,2]")
    cube = build_cube(d, make_system("F1"))
    (e,) = cube.edges
    k0, k1 = cube.states[(0,)].k, cube.states[(1,)].k
    assert e.kind == ("merge" if k0 > k1 else "split")


def test_hopf_cube():
    cube = build_cube(parse_pd(HOPF_PD), make_system("F1"))
    assert len(cube.states) == 4 and len(cube.edges) == 4
    kinds = sorted(e.kind for e in cube.edges)
    assert kinds == ["merge", "merge", "split", "split"]
    assert check_faces(cube) is None


@pytest.mark.parametrize("name", ["F1", "F2", "F3", "F5", "F6", "F7"])
@pytest.mark.parametrize("word,n", [([1, 1, 1], 2), ([1, -2, 1, -2], 3), ([1, 1, 2], 3)])
def test_faces_anticommute(name, word, n):
    cube = build_cube(from_braid(word, n), make_system(name))
    assert check_faces(cube) is None
    assert check_faces(cube, signed=False) is None
    for e in cube.edges:
        ks = cube.states[e.source].k, cube.states[e.target].k
        assert ks[1] - ks[0] == (-1 if e.kind == "merge" else 1)


def _edge(cube, kind):
    return next(e for e in cube.edges if e.kind == kind)


def test_merge_matrix_f1():
    cube = build_cube(from_braid([1, 1], 2), make_system("F1"))
    e = _edge(cube, "merge")
    M = edge_matrix(cube, e, signed=False)
    assert strs(M) == [["1", "0", "0", "0"], ["0", "1", "1", "0"]]


def test_split_and_merge_matrices_f5():
    cube = build_cube(from_braid([1, 1], 2), make_system("F5"))
    M = edge_matrix(cube, _edge(cube, "split"), signed=False)
    assert strs(M) == [["-h", "t"], ["1", "0"], ["1", "0"], ["0", "1"]]
    M = edge_matrix(cube, _edge(cube, "merge"), signed=False)
    # X (x) X -> t*1 + h*X
    assert [str(M[0][3]), str(M[1][3])] == ["t", "h"]


def test_edge_signs():
    cube = build_cube(from_braid([1, 1, 1], 2), make_system("F1"))
    for e in cube.edges:
        assert e.sign == (-1) ** sum(e.source[:e.crossing])


def test_twist_identity_gives_zero_exponents_action():
    F2 = make_system("F2")
    iso = twist_cube_isomorphism(parse_pd(HOPF_PD), F2, (1, 0))
    for r in iso.exponents:
        M = iso.matrix(r)
        n = len(M)
        assert all(M[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


@pytest.mark.parametrize("word,n", [([1, 1], 2), ([1, 1, 1], 2), ([1, -2, 1, -2], 3)])
def test_twist_corollary5(word, n):
    F2 = make_system("F2")
    c = F2.ring.gen("c")
    iso = twist_cube_isomorphism(from_braid(word, n), F2, (1, c))
    assert iso.verify() is None
    assert iso.twisted_system.h == 0 and iso.twisted_system.counit[0] == 0


def test_twist_other_units():
    F1 = make_system("F1")
    iso = twist_cube_isomorphism(from_braid([1, 1, 1], 2), F1, (1, 2))
    assert iso.verify() is None
    F5 = make_system("F5")
    iso = twist_cube_isomorphism(from_braid([1, 1], 2), F5, (-1, 0))
    assert iso.verify() is None
    assert iso.system.ring == ZHT

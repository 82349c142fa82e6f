import pytest

from conftest import all_fixtures, fixture_by_id
from frobkh.algebra import Laurent
from frobkh.diagram import from_braid, mirror, parse_pd, unknot
from frobkh.errors import UsageError
from frobkh.invariants import (invariant_report, kauffman_bracket_jones, lee_rank,
                               rational_khovanov, reduced_dim_prediction, s_invariant)

KNOTS = [f.id for f in all_fixtures() if f.components == 1]


def test_jones_examples():
    assert kauffman_bracket_jones(unknot()) == Laurent({1: 1, -1: 1})
    assert str(kauffman_bracket_jones(from_braid([1, 1, 1], 2))) == "q + q^3 + q^5 - q^9"
    assert kauffman_bracket_jones(from_braid([], 2)) == Laurent({2: 1, 0: 2, -2: 1})


def test_jones_mirror_flips_q():
    for k in ("trefoil-pos", "5_2", "hopf-pos"):
        d = fixture_by_id(k).diagram()
        J, Jm = kauffman_bracket_jones(d), kauffman_bracket_jones(mirror(d))
        assert Jm == Laurent({-e: c for e, c in J.coeffs.items()})


def test_jones_invariant_under_reidemeister():
    for f in all_fixtures():
        for p in f.reidemeister_partners:
            assert kauffman_bracket_jones(f.diagram()) == \
                kauffman_bracket_jones(fixture_by_id(p).diagram())


def test_lee_rank_examples():
    assert lee_rank(unknot()) == 2
    assert lee_rank(from_braid([1, 1], 2)) == 4
    assert lee_rank(from_braid([], 3)) == 8


@pytest.mark.parametrize("fid,s", [("unknot", 0), ("trefoil-pos", 2), ("trefoil-neg", -2),
                                   ("figure-eight", 0), ("5_1", 4), ("5_2", 2), ("6_1", 0),
                                   ("8_19", 6), ("trefoil-neg-pd", -2)])
def test_s_values(fid, s):
    assert s_invariant(fixture_by_id(fid).diagram()) == s


def test_s_needs_knot():
    with pytest.raises(UsageError):
        s_invariant(from_braid([1, 1], 2))
    with pytest.raises(UsageError):
        s_invariant(parse_pd("X[1,4,2,3] X[3,6,4,1] X[5,2,6,5]"))


def test_8_19_reduced_prediction():
    rep = invariant_report(from_braid([1, 1, 1, 2, 1, 1, 1, 2], 3))
    assert rep.rational_dim == 8
    assert rep.predicted_reduced_dim == rep.reduced_dim == 5
    assert rep.s == 6
    assert sorted(p.m for p in rep.pieces.pieces) == [1, 2]


@pytest.mark.parametrize("fid", KNOTS)
def test_reduced_prediction_all_knots(fid):
    rep = invariant_report(fixture_by_id(fid).diagram())
    assert rep.predicted_reduced_dim == rep.reduced_dim
    assert rep.rational_dim == sum(fixture_by_id(fid).tables["Q"].values())


def test_reduced_prediction_formula():
    class P:
        def __init__(self, m):
            self.m = m
    assert reduced_dim_prediction([P(1), P(2), P(3)], 10) == 10 - 1 - 4


def test_report_for_link_has_no_s():
    rep = invariant_report(from_braid([1, 1], 2))
    d = rep.as_dict()
    assert d["s"] is None and d["pieces"] is None and d["lee_rank"] == 4
    assert d["components"] == 2


def test_rational_khovanov_trefoil():
    H = rational_khovanov(from_braid([1, 1, 1], 2))
    assert H.table() == {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}

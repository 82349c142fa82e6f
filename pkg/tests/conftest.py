import functools
from pathlib import Path

import pytest

from frobkh.algebra import GF, QQ, ZZ, polynomial_ring
from frobkh.complex import base_change_complex, flatten
from frobkh.cube import build_cube
from frobkh.frobenius import ZHT, RingHom, make_system
from frobkh.oracle import load_fixtures

FIXTURE_DIR = Path(__file__).parent / "data" / "fixtures"

ACCEPTANCE_RESULTS = {}


@functools.lru_cache(maxsize=None)
def all_fixtures():
    return tuple(load_fixtures(FIXTURE_DIR))


def fixture_by_id(fid):
    for f in all_fixtures():
        if f.id == fid:
            return f
    raise KeyError(fid)


QT = polynomial_ring(QQ, (("t", -4),))


@functools.lru_cache(maxsize=None)
def f1_complex(fid):
    return flatten(build_cube(fixture_by_id(fid).diagram(), make_system("F1")))


@functools.lru_cache(maxsize=None)
def f5_complex(fid):
    return flatten(build_cube(fixture_by_id(fid).diagram(), make_system("F5")))


def over(C, ring):
    """Base change of an F1 (over Z) or F5 (over Z[h,t]) complex into ``ring``.

    F5 goes to ``ring`` via ``h -> 0`` and ``t -> t`` when ``ring`` has a
    variable ``t``, else ``t -> 0``.
    """
    if C.ring == ZZ:
        return base_change_complex(C, RingHom(ZZ, ring, {}))
    assert C.ring == ZHT
    t = ring.gen("t") if "t" in {n for n, _ in getattr(ring, "variables", ())} else 0
    return base_change_complex(C, RingHom(ZHT, ring, {"h": 0, "t": t}))


COEFFS = {"Q": QQ, "F2": GF(2), "Q[t]": QT}


@pytest.fixture(scope="session")
def fixtures():
    return all_fixtures()


def record_acceptance(number, passed, summary):
    ACCEPTANCE_RESULTS[number] = (passed, summary)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        passed, summary = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'} - {summary}")

"""Acceptance gate: one verification suite per exit criterion.

Each test prints a single PASS/FAIL line (run pytest with -s or check
the captured output).  Runtime budgets are enforced inside the suites
themselves, so a pass here certifies both correctness and speed.
"""
import pytest

from semap.verification import SUITES, run_suite

_ORDERED = [
    ("admissible", "1 enumeration exactness at max-gon 50"),
    ("counts", "2 sporadic vertex-count table"),
    ("catalog", "3 catalog integrity, 37 pairwise non-isomorphic entries"),
    ("square-types", "4 square-neighbour signatures of the two 24-vertex twins"),
    ("operator-laws", "5 truncation/rectification laws and inverse round trips"),
    ("surgery", "6 deep-blue matchings and the snub surgeries"),
    ("identify", "7 classification with witnesses, projective catalog"),
    ("transitivity", "8 vertex transitivity and the one exception"),
    ("uniqueness", "9 exhaustive uniqueness of the regular base cases"),
    ("geometry", "10 drum coordinates, octahedron match, OFF round trip"),
]


def test_every_criterion_has_a_suite():
    assert [name for name, _ in _ORDERED] == list(SUITES)


@pytest.mark.parametrize("suite,label", _ORDERED, ids=[s for s, _ in _ORDERED])
def test_criterion(suite, label):
    result = run_suite(suite)
    print(f"criterion {label}: {result.line()}")
    assert result.passed, result.detail

"""Minimal resolutions of random ideals are exact, minimal and no longer than n."""

from typing import List

import pytest

from psmod import SeriesVec, betti_table, build_resolution, minimal_generators, ring_report
from tests.helpers import random_ideals

IDEALS = random_ideals(seed=4007, count=50, max_degree=3)


@pytest.mark.parametrize('gens', IDEALS)
def test_resolution(gens: List[SeriesVec]) -> None:
    res = build_resolution(gens)
    res.check_exact()
    assert res.is_minimal()
    assert res.length <= gens[0].ring.n - 1
    table = betti_table(res)
    assert table.pd <= gens[0].ring.n
    # the alternating sum of the ranks of R/I is zero unless I = 0
    assert sum((-1) ** k * b for k, b in enumerate(table.betti)) == 0


@pytest.mark.parametrize('gens', IDEALS[:20])
def test_auslander_buchsbaum(gens: List[SeriesVec]) -> None:
    report = ring_report(gens)
    n = gens[0].ring.n
    assert report.pd <= n
    assert n - report.pd <= report.dim
    assert report.is_cm == (n - report.pd == report.dim)


@pytest.mark.parametrize('gens', IDEALS)
def test_first_rank_counts_minimal_generators(gens: List[SeriesVec]) -> None:
    res = build_resolution(gens)
    assert res.ranks[0] == len(minimal_generators(gens))
    assert betti_table(res).betti[1] == res.ranks[0]

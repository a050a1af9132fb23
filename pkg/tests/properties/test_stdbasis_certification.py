"""Standard bases of random ideals and modules certify themselves."""

from typing import List

import pytest

from psmod import SeriesVec, diagram_of, is_member, is_standard_basis, standard_basis, weak_normal_form
from tests.helpers import random_ideals, random_modules

IDEALS = random_ideals(seed=1009, count=200)
MODULES = random_modules(seed=2003, count=40)


@pytest.mark.parametrize('gens', IDEALS)
def test_random_ideal(gens: List[SeriesVec]) -> None:
    std = standard_basis(gens)
    assert std.certified
    assert is_standard_basis(std.elements)
    std.check_transform()
    # the inputs lead the basis
    assert std.elements[: len(gens)] == tuple(gens)
    for g in gens:
        assert not weak_normal_form(g, std.elements, full=False).remainder


@pytest.mark.parametrize('gens', MODULES)
def test_random_module(gens: List[SeriesVec]) -> None:
    std = standard_basis(gens)
    assert is_standard_basis(std.elements)
    std.check_transform()
    for element in std.elements[len(gens) :]:
        assert is_member(element, gens)


@pytest.mark.parametrize('gens', IDEALS[:60])
def test_diagram_vertices_form_an_antichain(gens: List[SeriesVec]) -> None:
    vertices = standard_basis(gens).diagram().vertices
    for a in vertices:
        for b in vertices:
            assert a == b or not a.divides(b)


@pytest.mark.parametrize('gens', IDEALS[:60] + MODULES[:20])
def test_diagram_is_stable_under_completion(gens: List[SeriesVec]) -> None:
    std = standard_basis(gens)
    assert diagram_of(gens) == diagram_of(list(std.elements))

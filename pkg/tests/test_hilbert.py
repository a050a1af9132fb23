"""Hilbert-Samuel function and polynomial, and Krull dimension."""

from fractions import Fraction
from typing import List

import pytest

from psmod import Diagram, Exponent, SeriesRing, diagram_of, hs_function, hs_polynomial, hs_values, krull_dimension
from psmod.errors import UsageError, WholeRingError
from tests.helpers import QX, QXY, QXYZ, ZXY, polys
from tests.oracles import hs_oracle


def test_maximal_ideal() -> None:
    D = diagram_of(polys(QXY, 'x', 'y'))
    assert hs_values(D, 5) == [1] * 6
    hs = hs_polynomial(D)
    assert hs.poly_coeffs == (Fraction(1),)
    assert hs.dim == 0
    assert hs.stab == 0


def test_double_line() -> None:
    D = diagram_of(polys(QXY, 'x^2'))
    assert hs_function(D, 3) == 7
    hs = hs_polynomial(D)
    assert hs.poly_coeffs == (Fraction(1), Fraction(2))
    assert hs.dim == 1
    assert hs.multiplicity == 2
    assert hs.format_polynomial() == '2*eta + 1'
    assert hs.evaluate(100) == 201


def test_cusp_and_node() -> None:
    D = diagram_of(polys(QXY, 'x^2 + y^3', 'x*y'))
    assert hs_values(D, 6) == [1, 3, 4, 5, 5, 5, 5]
    assert hs_function(D, 10) == 5
    hs = hs_polynomial(D)
    assert hs.poly_coeffs == (Fraction(5),)
    assert hs.dim == 0
    assert hs.multiplicity == 5
    assert hs.stab == 3


def test_zero_ideal_counts_every_monomial() -> None:
    D = Diagram(2, 1, ())
    assert hs_function(D, 3) == 10
    hs = hs_polynomial(D)
    assert hs.dim == 2
    assert hs.poly_coeffs == (Fraction(1), Fraction(3, 2), Fraction(1, 2))


@pytest.mark.parametrize(
    ('ring', 'texts', 'dim'),
    [
        (QXY, ['x*y'], 1),
        (QXY, ['x^2', 'x*y'], 1),
        (QXY, ['x', 'y'], 0),
        (QXY, ['x', 'y^2'], 0),
        (QXYZ, ['x*y*z'], 2),
        (QXYZ, ['x*y', 'y*z', 'x*z'], 1),
        (QXYZ, ['x', 'y^2'], 1),
    ],
)
def test_krull_dimension(ring: SeriesRing, texts: List[str], dim: int) -> None:
    assert krull_dimension(diagram_of(polys(ring, *texts))) == dim


def test_krull_dimension_of_one_variable() -> None:
    assert krull_dimension(diagram_of([QX.parse('x')])) == 0


def test_unit_ideal_has_no_dimension() -> None:
    D = Diagram(2, 1, (Exponent((0, 0)),))
    with pytest.raises(WholeRingError):
        krull_dimension(D)


def test_modules_are_rejected() -> None:
    D = diagram_of(polys(QXY, '[x, y]'))
    with pytest.raises(UsageError):
        hs_function(D, 2)


def test_negative_eta() -> None:
    D = diagram_of(polys(QXY, 'x'))
    with pytest.raises(UsageError):
        hs_function(D, -1)


def test_long_windows_match_the_sequential_count() -> None:
    D = diagram_of(polys(QXYZ, 'x^3', 'y^2*z'))
    values = hs_values(D, 40)
    assert values == [hs_function(D, e) for e in range(41)]
    assert values == sorted(values)


@pytest.mark.parametrize('texts', [['x^2 + y^3', 'x*y'], ['x^2 - y'], ['x^3 + y^4 + x*y^2'], ['x*y', 'y^3']])
def test_counts_agree_with_linear_algebra(texts: List[str]) -> None:
    gens = polys(ZXY, *texts)
    D = diagram_of(gens)
    for eta in range(6):
        assert hs_function(D, eta) == hs_oracle(gens, eta)

"""Exponents, the local ordering and series-vector arithmetic."""

import random

import pytest

from psmod import INFINITY, Exponent, SeriesRing, SeriesVec, inexp, jet, s_series
from psmod.errors import UsageError
from tests.helpers import QX, QXY, ZXY, random_exponent, random_poly


def test_order_compares_degree_then_component_then_exponent() -> None:
    assert Exponent((0, 2)) < Exponent((1, 1)) < Exponent((2, 0))
    assert Exponent((1, 0), 1) < Exponent((0, 1), 2)
    assert Exponent((3, 3), 2) < Exponent((0, 7), 1)
    assert Exponent((9, 9)) < INFINITY
    assert not INFINITY < INFINITY
    assert INFINITY == INFINITY


def test_order_is_compatible_with_shifts() -> None:
    rng = random.Random(11)
    for _ in range(300):
        a = Exponent(random_exponent(rng, 3, rng.randint(0, 5)), rng.randint(1, 2))
        b = Exponent(random_exponent(rng, 3, rng.randint(0, 5)), rng.randint(1, 2))
        gamma = random_exponent(rng, 3, rng.randint(0, 4))
        if a < b:
            assert a.shift(gamma) < b.shift(gamma)


def test_inexp_examples() -> None:
    R = SeriesRing.create('q', ['x1', 'x2'])
    assert inexp(R.parse('x1*x2 + x1^3')) == Exponent((1, 1), 1)
    assert inexp(R.parse('[x2, x1]')) == Exponent((0, 1), 1)
    assert inexp(R.zero()) is INFINITY
    assert inexp(QXY.parse('x*y + y^2')) == Exponent((0, 2))


def test_inexp_of_sum_and_product() -> None:
    rng = random.Random(3)
    for _ in range(100):
        F, G, Q = (random_poly(rng, ZXY) for _ in range(3))
        if F + G:
            assert inexp(F + G) >= min(inexp(F), inexp(G))
        lead_q = inexp(Q)
        assert isinstance(lead_q, Exponent)
        assert inexp(Q * F) == inexp(F).shift(lead_q.alpha)  # type: ignore[union-attr]


def test_inexp_of_sum_with_distinct_initial_exponents() -> None:
    rng = random.Random(17)
    seen = 0
    for _ in range(200):
        F, G = random_poly(rng, ZXY), random_poly(rng, ZXY)
        if inexp(F) == inexp(G):
            continue
        seen += 1
        assert inexp(F + G) == min(inexp(F), inexp(G))
        assert inexp(F - G) == min(inexp(F), inexp(G))
    assert seen > 100
    assert inexp(QXY.parse('x^2 + y') + QXY.parse('x*y')) == Exponent((0, 1))


@pytest.mark.parametrize(
    ('text', 'mu', 'expected'),
    [
        ('x + x^3', 2, 'x'),
        ('1 + x', 0, '1'),
        ('x^3', 2, '0'),
    ],
)
def test_jet_examples(text: str, mu: int, expected: str) -> None:
    assert jet(QX.parse(text), mu) == QX.parse(expected)


def test_jet_keeps_low_degree_terms() -> None:
    F = QXY.parse('x^2*y')
    assert jet(F, 3) == F
    rng = random.Random(5)
    for _ in range(50):
        G = random_poly(rng, ZXY, max_degree=6)
        assert jet(jet(G, 4), 2) == jet(G, 2)
        assert jet(G, 6) == G


def test_negative_jet_order() -> None:
    with pytest.raises(UsageError):
        jet(QX.parse('x'), -1)


def test_ecart_and_order() -> None:
    F = QX.parse('x + x^3')
    assert F.order() == 1
    assert F.ecart() == 2
    with pytest.raises(UsageError):
        QX.zero().order()


def test_s_series_cancels_initial_terms() -> None:
    S, mult_f, mult_g = s_series(*(QXY.parse(t) for t in ('x^2 + y^3', 'x*y')))
    assert S == QXY.parse('y^4')
    assert mult_f == QXY.parse('y')
    assert mult_g == QXY.parse('x')


def test_s_series_of_monomials_is_zero() -> None:
    S, mult_f, mult_g = s_series(QXY.parse('x^2'), QXY.parse('x*y'))
    assert not S
    assert (mult_f, mult_g) == (QXY.parse('y'), QXY.parse('x'))


def test_s_series_in_different_components() -> None:
    S, mult_f, mult_g = s_series(QXY.parse('[x, 0]'), QXY.parse('[0, y]'))
    assert not S and not mult_f and not mult_g
    assert S.rank == 2


def test_s_series_uses_leading_coefficients() -> None:
    S, mult_f, mult_g = s_series(QXY.parse('2*x + y^2'), QXY.parse('3*x'))
    assert S == QXY.parse('3*y^2')
    assert mult_f == QXY.parse('3')
    assert mult_g == QXY.parse('2')


def test_s_series_of_zero_is_rejected() -> None:
    with pytest.raises(UsageError):
        s_series(QXY.zero(), QXY.parse('x'))


def test_mismatched_ambients_are_rejected() -> None:
    with pytest.raises(UsageError):
        QXY.parse('x') + QXY.parse('[x, y]')
    with pytest.raises(UsageError):
        QXY.parse('x') + ZXY.parse('x')
    with pytest.raises(UsageError):
        QXY.parse('[x, y]') * QXY.parse('[y, x]')


def test_components_round_trip() -> None:
    F = QXY.parse('[x + y, 0, x*y]')
    parts = F.components()
    assert parts[1].is_zero()
    assert SeriesVec.from_components(QXY, parts) == F
    assert parts[2] == QXY.parse('x*y')


def test_scalar_times_vector() -> None:
    assert QXY.parse('x') * QXY.parse('[1, y]') == QXY.parse('[x, x*y]')
    assert QXY.parse('[1, y]') * QXY.parse('x') == QXY.parse('[x, x*y]')


def test_unit_constant_detection() -> None:
    assert QXY.parse('[x, 1 + y]').has_unit_constant()
    assert not QXY.parse('[x, y]').has_unit_constant()


def test_equal_vectors_hash_equal() -> None:
    a = QXY.parse('x + y - x')
    b = QXY.parse('y')
    assert a == b
    assert hash(a) == hash(b)
    assert len({a, b}) == 1

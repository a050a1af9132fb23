"""Rings, shorthand constructors and the seeded random corpus shared by the test modules."""

import random
from typing import List, Sequence, Tuple

from psmod import SeriesRing, SeriesVec

ZP = 'zp:32003'

QXY = SeriesRing.create('q', ['x', 'y'])
QXYZ = SeriesRing.create('q', ['x', 'y', 'z'])
ZXY = SeriesRing.create(ZP, ['x', 'y'])
QX = SeriesRing.create('q', ['x'])


def polys(ring: SeriesRing, *texts: str) -> List[SeriesVec]:
    return [ring.parse(text) for text in texts]


def sorted_vertices(vertices: Sequence[Sequence[int]]) -> List[List[int]]:
    return sorted(list(v) for v in vertices)


def random_exponent(rng: random.Random, n: int, degree: int) -> Tuple[int, ...]:
    alpha = [0] * n
    for _ in range(degree):
        alpha[rng.randrange(n)] += 1
    return tuple(alpha)


def random_poly(rng: random.Random, ring: SeriesRing, max_degree: int = 4, max_terms: int = 4) -> SeriesVec:
    """A nonzero polynomial in the maximal ideal with 1 to `max_terms` terms."""
    p = ring.field.characteristic or 101
    F = ring.zero()
    while not F:
        for _ in range(rng.randint(1, max_terms)):
            alpha = random_exponent(rng, ring.n, rng.randint(1, max_degree))
            F = F + ring.term(alpha, rng.randint(1, p - 1))
    return F


def random_vector(rng: random.Random, ring: SeriesRing, rank: int, max_degree: int = 3) -> SeriesVec:
    while True:
        entries = [random_poly(rng, ring, max_degree, 2) if rng.random() < 0.7 else ring.zero() for _ in range(rank)]
        vec = SeriesVec.from_components(ring, entries)
        if vec:
            return vec


def random_ideals(
    seed: int, count: int, max_vars: int = 3, max_gens: int = 3, max_degree: int = 4, field: str = ZP
) -> List[List[SeriesVec]]:
    """`count` generator lists over 1 to `max_vars` variables, reproducible from `seed`."""
    rng = random.Random(seed)
    names = ['x', 'y', 'z', 'w'][:max_vars]
    out = []
    for _ in range(count):
        ring = SeriesRing.create(field, names[: rng.randint(1, max_vars)])
        out.append([random_poly(rng, ring, max_degree) for _ in range(rng.randint(1, max_gens))])
    return out


def random_modules(seed: int, count: int, max_rank: int = 2, max_gens: int = 3) -> List[List[SeriesVec]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        ring = SeriesRing.create(ZP, ['x', 'y'][: rng.randint(1, 2)])
        rank = rng.randint(1, max_rank)
        out.append([random_vector(rng, ring, rank) for _ in range(rng.randint(1, max_gens))])
    return out

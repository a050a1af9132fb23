"""Hilbert-Samuel function, polynomial and Krull dimension of K[[x]]/I read off the diagram."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
from itertools import combinations
from math import factorial
from typing import FrozenSet, List, Sequence, Tuple

from . import config
from ._parallel import ordered_map
from .errors import IntegrityError, UsageError, WholeRingError
from .stdbasis import Diagram

# windows at least this long are evaluated through the worker pool
_PARALLEL_WINDOW = 32


@dataclass(frozen=True)
class HilbertData:
    values: Tuple[int, ...]
    # c_0 + c_1*eta + ... + c_d*eta^d
    poly_coeffs: Tuple[Fraction, ...]
    stab: int
    dim: int

    @property
    def degree(self) -> int:
        return len(self.poly_coeffs) - 1

    @property
    def multiplicity(self) -> int:
        """Leading coefficient times ``dim!``: the Hilbert-Samuel multiplicity of the quotient."""
        return int(self.poly_coeffs[-1] * factorial(self.dim))

    def polynomial(self, eta: int) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.poly_coeffs):
            total = total * eta + c
        return total

    def evaluate(self, eta: int) -> int:
        if eta < 0:
            raise UsageError(f'eta must be >= 0, got {eta}')
        if eta < len(self.values):
            return self.values[eta]
        return int(self.polynomial(eta))

    def format_polynomial(self, var: str = 'eta') -> str:
        parts = []
        for power, c in reversed(list(enumerate(self.poly_coeffs))):
            if c == 0:
                continue
            mono = '' if power == 0 else var if power == 1 else f'{var}^{power}'
            coeff = str(c)
            if mono and c == 1:
                text = mono
            elif mono and c == -1:
                text = f'-{mono}'
            elif mono:
                text = f'{coeff}*{mono}'
            else:
                text = coeff
            parts.append(text)
        return ' + '.join(parts).replace('+ -', '- ') or '0'


def _require_ideal(D: Diagram) -> None:
    if D.p != 1:
        raise UsageError(f'Hilbert-Samuel data is defined here for ideals, got a module of rank {D.p}')


def _minimal(vertices: FrozenSet[Tuple[int, ...]]) -> FrozenSet[Tuple[int, ...]]:
    return frozenset(
        v for v in vertices if not any(w != v and all(a <= b for a, b in zip(w, v)) for w in vertices)
    )


@lru_cache(maxsize=65536)
def _count_outside(vertices: FrozenSet[Tuple[int, ...]], n: int, eta: int) -> int:
    """Number of beta in N^n with ``|beta| <= eta`` divisible by no vertex."""
    if eta < 0:
        return 0
    if any(not any(v) for v in vertices):
        return 0
    if n == 0:
        return 1
    if not vertices:
        # monomials of degree <= eta in n variables
        return factorial(eta + n) // (factorial(eta) * factorial(n))
    total = 0
    # beta_1 = a; only vertices with v_1 <= a constrain the remaining coordinates
    for a in range(eta + 1):
        projected = _minimal(frozenset(v[1:] for v in vertices if v[0] <= a))
        total += _count_outside(projected, n - 1, eta - a)
    return total


def hs_function(D: Diagram, eta: int) -> int:
    """``H_I(eta)``: lattice points of degree at most `eta` outside the staircase."""
    _require_ideal(D)
    if eta < 0:
        raise UsageError(f'eta must be >= 0, got {eta}')
    return _count_outside(frozenset(v.alpha for v in D.vertices), D.n, eta)


def hs_values(D: Diagram, eta_max: int) -> List[int]:
    _require_ideal(D)
    workers = config.cfg.max_workers if eta_max >= _PARALLEL_WINDOW else 1
    return ordered_map(partial(hs_function, D), list(range(eta_max + 1)), workers)


def _poly_mul_linear(poly: List[Fraction], root: int) -> List[Fraction]:
    # poly * (eta - root)
    out = [Fraction(0)] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] += c
        out[i] -= c * root
    return out


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> List[Fraction]:
    coeffs = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = _poly_mul_linear(basis, xj)
                denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += c * yi / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def krull_dimension(D: Diagram) -> int:
    """Largest coordinate subset containing the support of no vertex."""
    _require_ideal(D)
    supports = [frozenset(i for i, a in enumerate(v.alpha) if a) for v in D.vertices]
    if any(not s for s in supports):
        raise WholeRingError('the ideal contains a unit; K[[x]]/I is the zero ring')
    for size in range(D.n, -1, -1):
        for subset in combinations(range(D.n), size):
            chosen = frozenset(subset)
            if not any(s <= chosen for s in supports):
                return size
    return 0


def hs_polynomial(D: Diagram) -> HilbertData:
    """Fit the Hilbert-Samuel polynomial over a window past every vertex.

    The window ends at ``n * max_vertex_degree + n + 2``; the polynomial is interpolated on
    ``n + 1`` points and checked on the last ``n + 1``. The fitted degree must agree with
    `krull_dimension`.
    """
    _require_ideal(D)
    dim = krull_dimension(D)
    n = D.n
    # at least 2n + 1 so the fitting points never go negative
    window = max(n * D.max_degree() + n + 2, 2 * n + 1)
    values = hs_values(D, window)

    end = window - (n + 1)
    xs = list(range(end - n, end + 1))
    coeffs = _interpolate(xs, [values[x] for x in xs])
    data = HilbertData(tuple(values), tuple(coeffs), 0, dim)

    for eta in range(window - n, window + 1):
        if data.polynomial(eta) != values[eta]:
            raise IntegrityError(f'Hilbert-Samuel values did not stabilise within eta <= {window}')
    if data.degree != dim:
        raise IntegrityError(f'Hilbert-Samuel polynomial has degree {data.degree} but the dimension is {dim}')

    stab = window
    while stab > 0 and data.polynomial(stab - 1) == values[stab - 1]:
        stab -= 1
    return HilbertData(tuple(values), tuple(coeffs), stab, dim)

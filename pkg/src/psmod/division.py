"""Division with remainder under the local ordering.

`weak_normal_form` is an ecart-guided (Mora) reduction. Intermediate remainders may join the
divisor list, which is what makes the loop terminate on polynomial input; the price is a unit
multiplier, so the identity maintained throughout is

    unit * F = sum(quotients[i] * divisors[i]) + remainder

with ``unit`` a polynomial whose constant term is 1.
"""

import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from more_itertools import first_true

from . import config
from .errors import IntegrityError, TailReductionWarning, UsageError
from .series import INFINITY, Exponent, InitialExponent, Key, SeriesVec, key_divides


@dataclass(frozen=True)
class DivisionResult:
    unit: SeriesVec
    quotients: Tuple[SeriesVec, ...]
    remainder: SeriesVec
    # False when tail reduction ran out of passes; the remainder is then only top-reduced
    fully_reduced: bool = True

    def check(self, F: SeriesVec, divisors: Sequence[SeriesVec]) -> None:
        """Re-verify ``unit*F - sum(q_i*G_i) - remainder == 0`` and ``unit(0) == 1``; raise `IntegrityError`."""
        if self.unit.constant_terms() != [self.unit.field.one]:
            raise IntegrityError(f'division unit {self.unit!s} does not have constant term 1')
        residue = self.unit * F - self.remainder
        for q, g in zip(self.quotients, divisors):
            residue = residue - q * g
        if residue:
            raise IntegrityError(f'division identity fails for {F!s}: residue {residue!s}')


@dataclass
class _State:
    """An intermediate remainder kept as an extra divisor, with the identity that produced it."""

    h: SeriesVec
    unit: SeriesVec
    quotients: List[SeriesVec]

    @property
    def lead(self) -> Key:
        key = self.h.leading_key()
        assert key is not None
        return key


@dataclass(frozen=True)
class _Divisor:
    lead: Key
    ecart: int
    # index into the original divisor list, or None for an intermediate state
    index: Optional[int]
    source: Union[SeriesVec, _State]

    @property
    def vec(self) -> SeriesVec:
        return self.source.h if isinstance(self.source, _State) else self.source


def _validate(F: SeriesVec, divisors: Sequence[SeriesVec]) -> None:
    for i, g in enumerate(divisors):
        F._check(g)
        if not g:
            raise UsageError(f'divisor {i} is zero')


class _Counter:
    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.steps = 0

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.limit:
            raise IntegrityError(f'reduction did not finish within {self.limit} steps')


def _top_reduce(F: SeriesVec, divisors: Sequence[SeriesVec], counter: _Counter) -> _State:
    ring = F.ring
    field = ring.field
    state = _State(F, ring.one(), [ring.zero() for _ in divisors])
    table = [_Divisor(g.leading_key(), g.ecart(), i, g) for i, g in enumerate(divisors)]  # type: ignore[arg-type]

    while state.h:
        lead = state.lead
        eligible = [t for t in table if key_divides(t.lead, lead)]
        if not eligible:
            break
        # ties go to the earliest entry of the table
        best = min(eligible, key=lambda t: t.ecart)
        counter.tick()

        h_ecart = state.h.ecart()
        if best.ecart > h_ecart:
            table.append(_Divisor(lead, h_ecart, None, _State(state.h, state.unit, list(state.quotients))))

        g = best.vec
        delta = tuple(a - b for a, b in zip(lead[2:], best.lead[2:]))
        c = field.div(state.h.leading_coeff(), g.leading_coeff())
        h = state.h - g.mul_term(delta, c)
        if best.index is not None:
            quotients = list(state.quotients)
            quotients[best.index] = quotients[best.index] + ring.term(delta, c)
            state = _State(h, state.unit, quotients)
        else:
            prior = best.source
            assert isinstance(prior, _State)
            unit = state.unit - prior.unit.mul_term(delta, c)
            quotients = [q - pq.mul_term(delta, c) for q, pq in zip(state.quotients, prior.quotients)]
            state = _State(h, unit, quotients)

    return state


def _first_reducible(h: SeriesVec, leads: Sequence[Key]) -> Optional[Key]:
    return first_true(h.keys(), default=None, pred=lambda k: any(key_divides(lead, k) for lead in leads))


def weak_normal_form(
    F: SeriesVec,
    divisors: Sequence[SeriesVec],
    full: bool = True,
    tail_passes: Optional[int] = None,
    max_steps: Optional[int] = None,
) -> DivisionResult:
    """Divide `F` by `divisors`.

    With ``full=False`` only the initial term of the remainder is guaranteed irreducible.
    With ``full=True`` the tail is reduced as well, one reducible term at a time. A tail pass
    whose division needed a nontrivial unit rescales the terms already settled, which can
    repeat indefinitely (``1 - x`` against ``x - x^2`` does), so those passes are budgeted;
    exhausting the budget emits `TailReductionWarning` and flags the result.
    """
    _validate(F, divisors)
    if tail_passes is None:
        tail_passes = config.cfg.tail_passes
    counter = _Counter(config.cfg.max_reduction_steps if max_steps is None else max_steps)

    state = _top_reduce(F, divisors, counter)
    ring = F.ring
    fully_reduced = True

    if full and state.h:
        leads: List[Key] = [g.leading_key() for g in divisors]  # type: ignore[misc]
        unit_passes = 0
        while True:
            k = _first_reducible(state.h, leads)
            if k is None:
                break
            if unit_passes >= tail_passes:
                warnings.warn(
                    f'tail reduction of {F!s} stopped after {tail_passes} rescaling passes; '
                    'the remainder is top-reduced only',
                    TailReductionWarning,
                )
                fully_reduced = False
                break
            items = state.h.items()
            low = SeriesVec(ring, F.rank, {key: c for key, c in items if key < k}, canonical=True)
            high = SeriesVec(ring, F.rank, {key: c for key, c in items if key >= k}, canonical=True)
            sub = _top_reduce(high, divisors, counter)
            # sub.unit * high = sum(sub.q * G) + sub.h, so
            # (sub.unit * unit) * F = sum((sub.unit * q + sub.q) * G) + sub.unit * low + sub.h
            if sub.unit != ring.one():
                unit_passes += 1
                low = sub.unit * low
            state = _State(
                low + sub.h,
                sub.unit * state.unit,
                [sub.unit * q + sq for q, sq in zip(state.quotients, sub.quotients)],
            )

    return DivisionResult(state.unit, tuple(state.quotients), state.h, fully_reduced)


def _product_inexp(q: SeriesVec, g: SeriesVec) -> InitialExponent:
    # initial terms multiply over a domain
    kq, kg = q.leading_key(), g.leading_key()
    if kq is None or kg is None:
        return INFINITY
    return Exponent.from_key(kg).shift(kq[2:])


def has_standard_representation(F: SeriesVec, divisors: Sequence[SeriesVec]) -> Tuple[bool, DivisionResult]:
    """Whether `F` reduces to zero with ``min(inexp(q_i * G_i)) == inexp(F)``; the division is the witness."""
    result = weak_normal_form(F, divisors, full=False)
    if result.remainder:
        return False, result
    lowest = min((_product_inexp(q, g) for q, g in zip(result.quotients, divisors)), default=INFINITY)
    return lowest == F.inexp(), result

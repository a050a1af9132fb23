"""Exact coefficient arithmetic: the rationals and prime fields GF(p).

Polynomials store raw scalars (`Fraction` for Q, `int` in ``[0, p)`` for GF(p)) and do their
arithmetic through the owning `Field`, which keeps the inner loops free of wrapper objects.
`FieldElem` is the public, immutable scalar type: a raw value bound to its field.
"""

import re
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import lru_cache
from typing import Any, Union

from .errors import FieldDivisionError, UsageError

Scalar = Union[int, Fraction]

_MAX_PRIME = 2**63
_SELECTOR_ZP = re.compile(r'^zp:(\d+)$')
# deterministic Miller-Rabin witnesses for every n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field(ABC):
    """A coefficient field. Instances are interned: equal selectors give the same object."""

    selector: str
    characteristic: int
    zero: Scalar
    one: Scalar

    @abstractmethod
    def convert(self, value: Union[int, Fraction]) -> Scalar:
        """Map an integer or rational literal into the field."""
        ...

    @abstractmethod
    def add(self, a: Scalar, b: Scalar) -> Scalar: ...

    @abstractmethod
    def sub(self, a: Scalar, b: Scalar) -> Scalar: ...

    @abstractmethod
    def mul(self, a: Scalar, b: Scalar) -> Scalar: ...

    @abstractmethod
    def neg(self, a: Scalar) -> Scalar: ...

    @abstractmethod
    def inv(self, a: Scalar) -> Scalar: ...

    @abstractmethod
    def format(self, a: Scalar) -> str:
        """Shortest parseable text for `a`; round-trips through `convert`."""
        ...

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    def __call__(self, value: Union[int, Fraction]) -> 'FieldElem':
        return FieldElem(self, self.convert(value))

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Field) and self.selector == other.selector

    def __hash__(self) -> int:
        return hash(self.selector)

    def __repr__(self) -> str:
        return f'field_from_selector({self.selector!r})'


class RationalField(Field):
    selector = 'q'
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, value: Union[int, Fraction]) -> Scalar:
        return Fraction(value)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b

    def neg(self, a: Scalar) -> Scalar:
        return -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise FieldDivisionError('division by zero in Q')
        return 1 / Fraction(a)

    def format(self, a: Scalar) -> str:
        return str(Fraction(a))


class PrimeField(Field):
    def __init__(self, p: int) -> None:
        if not 2 <= p < _MAX_PRIME or not is_prime(p):
            raise UsageError(f'field characteristic must be a prime below 2^63, got {p}')
        self.p = p
        self.characteristic = p
        self.selector = f'zp:{p}'
        self.zero = 0
        self.one = 1

    def convert(self, value: Union[int, Fraction]) -> Scalar:
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise FieldDivisionError(f'denominator of {value} vanishes in GF({self.p})')
            return value.numerator * pow(den, -1, self.p) % self.p
        return value % self.p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b % self.p

    def neg(self, a: Scalar) -> Scalar:
        return -a % self.p

    def inv(self, a: Scalar) -> Scalar:
        if a % self.p == 0:
            raise FieldDivisionError(f'division by zero in GF({self.p})')
        return pow(int(a), -1, self.p)

    def format(self, a: Scalar) -> str:
        # symmetric residues read better: p - 1 prints as -1
        v = int(a)
        return str(v - self.p if v > self.p // 2 else v)


def field_from_selector(selector: str) -> Field:
    """Build the field named by `"q"` or `"zp:<prime>"`. Fields are interned."""
    return _field(selector.strip().lower())


@lru_cache(maxsize=None)
def _field(text: str) -> Field:
    if text == 'q':
        return RationalField()
    match = _SELECTOR_ZP.match(text)
    if match is None:
        raise UsageError(f'unknown field selector {text!r}; expected "q" or "zp:<prime>"')
    return PrimeField(int(match.group(1)))


class FieldElem:
    """An immutable element of a `Field`. Stored values are canonical, so equality is
    equality of the raw value."""

    __slots__ = ('field', 'value')

    field: Field
    value: Scalar

    def __init__(self, field: Field, value: Scalar) -> None:
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'value', value)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError('FieldElem is immutable')

    def _coerce(self, other: Any) -> Scalar:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise UsageError(f'mixed-field operands: {self.field.selector} and {other.field.selector}')
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        raise TypeError(f'cannot combine FieldElem with {type(other).__name__}')

    def __add__(self, other: Any) -> 'FieldElem':
        return FieldElem(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other: Any) -> 'FieldElem':
        return FieldElem(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other: Any) -> 'FieldElem':
        return FieldElem(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other: Any) -> 'FieldElem':
        return FieldElem(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> 'FieldElem':
        return FieldElem(self.field, self.field.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other: Any) -> 'FieldElem':
        return FieldElem(self.field, self.field.div(self._coerce(other), self.value))

    def __neg__(self) -> 'FieldElem':
        return FieldElem(self.field, self.field.neg(self.value))

    def inverse(self) -> 'FieldElem':
        return FieldElem(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def is_unit_constant(self) -> bool:
        """Nonzero scalars are the units of K, hence unit constants of K[[x]]."""
        return not self.is_zero()

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.convert(other)
            except FieldDivisionError:
                # a rational whose denominator vanishes mod p names no element of GF(p)
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.selector, self.value))

    def __repr__(self) -> str:
        return f'FieldElem({self.field.selector!r}, {self.field.format(self.value)})'

    def __str__(self) -> str:
        return self.field.format(self.value)

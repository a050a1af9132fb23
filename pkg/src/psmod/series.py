"""Exponents, the local ordering, and power-series vectors held as polynomials.

An element of K[[x]]^p is represented by a polynomial vector: a finite map from exponents
``(alpha, i)`` to nonzero coefficients. Internally each exponent is keyed by the tuple
``(|alpha|, i, alpha_1, ..., alpha_n)``; comparing keys lexicographically *is* the ordering
of initial exponents, so a dict kept in key order has its initial exponent first.
"""

from dataclasses import dataclass
from functools import total_ordering
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from more_itertools import first

from .coeff import Field, FieldElem, Scalar, field_from_selector
from .errors import UsageError

Key = Tuple[int, ...]


def _key(alpha: Sequence[int], comp: int) -> Key:
    return (sum(alpha), comp, *alpha)


class Infinity:
    """The initial exponent of the zero vector; larger than every `Exponent`."""

    _instance: Optional['Infinity'] = None

    def __new__(cls) -> 'Infinity':
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other: Any) -> bool:
        return False

    def __le__(self, other: Any) -> bool:
        return isinstance(other, Infinity)

    def __gt__(self, other: Any) -> bool:
        return not isinstance(other, Infinity)

    def __ge__(self, other: Any) -> bool:
        return True

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Infinity)

    def __hash__(self) -> int:
        return hash('psmod.Infinity')

    def __repr__(self) -> str:
        return 'INFINITY'


INFINITY = Infinity()


@total_ordering
@dataclass(frozen=True)
class Exponent:
    """``(alpha, comp)`` with ``comp`` 1-based, ordered by ``(|alpha|, comp, alpha)``."""

    alpha: Tuple[int, ...]
    comp: int = 1

    def __post_init__(self) -> None:
        if any(a < 0 for a in self.alpha):
            raise UsageError(f'negative entry in exponent {self.alpha!r}')
        if self.comp < 1:
            raise UsageError(f'component index must be >= 1, got {self.comp}')

    @classmethod
    def from_key(cls, key: Key) -> 'Exponent':
        return cls(tuple(key[2:]), key[1])

    @property
    def key(self) -> Key:
        return _key(self.alpha, self.comp)

    @property
    def degree(self) -> int:
        return sum(self.alpha)

    def __lt__(self, other: Any) -> bool:
        if isinstance(other, Infinity):
            return True
        if not isinstance(other, Exponent):
            return NotImplemented
        return self.key < other.key

    def shift(self, gamma: Sequence[int]) -> 'Exponent':
        return Exponent(tuple(a + g for a, g in zip(self.alpha, gamma)), self.comp)

    def divides(self, other: 'Exponent') -> bool:
        """Same component and ``alpha <= other.alpha`` entrywise."""
        return self.comp == other.comp and all(a <= b for a, b in zip(self.alpha, other.alpha))

    def lcm(self, other: 'Exponent') -> Tuple[int, ...]:
        return tuple(max(a, b) for a, b in zip(self.alpha, other.alpha))


InitialExponent = Union[Exponent, Infinity]


def key_divides(a: Key, b: Key) -> bool:
    if a[1] != b[1] or a[0] > b[0]:
        return False
    return all(x <= y for x, y in zip(a[2:], b[2:]))


@dataclass(frozen=True)
class SeriesRing:
    """K[[x_1, ..., x_n]] with named variables; the factory for `SeriesVec` values."""

    field: Field
    variables: Tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.variables)) != len(self.variables):
            raise UsageError(f'variable names must be unique: {list(self.variables)!r}')

    @classmethod
    def create(cls, field: Union[str, Field], variables: Iterable[str]) -> 'SeriesRing':
        if isinstance(field, str):
            field = field_from_selector(field)
        return cls(field, tuple(variables))

    @property
    def n(self) -> int:
        return len(self.variables)

    def zero(self, rank: int = 1) -> 'SeriesVec':
        return SeriesVec(self, rank, {})

    def term(
        self, alpha: Sequence[int], coeff: Union[int, Scalar, FieldElem] = 1, comp: int = 1, rank: int = 1
    ) -> 'SeriesVec':
        if len(alpha) != self.n:
            raise UsageError(f'exponent {tuple(alpha)!r} does not match {self.n} variables')
        if not 1 <= comp <= rank:
            raise UsageError(f'component {comp} outside 1..{rank}')
        value = coeff.value if isinstance(coeff, FieldElem) else self.field.convert(coeff)
        return SeriesVec(self, rank, {_key(alpha, comp): value})

    def constant(self, coeff: Union[int, Scalar, FieldElem]) -> 'SeriesVec':
        return self.term((0,) * self.n, coeff)

    def one(self) -> 'SeriesVec':
        return self.constant(1)

    def gen(self, name: Union[str, int]) -> 'SeriesVec':
        index = self.variables.index(name) if isinstance(name, str) else name
        alpha = [0] * self.n
        alpha[index] = 1
        return self.term(alpha)

    def unit_vector(self, comp: int, rank: int) -> 'SeriesVec':
        return self.term((0,) * self.n, 1, comp, rank)

    def parse(self, text: str) -> 'SeriesVec':
        from .parser import parse_polynomial

        return parse_polynomial(text, self)


class SeriesVec:
    """A polynomial representative of an element of K[[x]]^p.

    Immutable. `rank` is p; scalars are rank-1 vectors. Terms are held in ascending
    exponent order, so the first term is the initial term.
    """

    __slots__ = ('ring', 'rank', '_terms')

    ring: SeriesRing
    rank: int
    _terms: Dict[Key, Scalar]

    def __init__(self, ring: SeriesRing, rank: int, terms: Mapping[Key, Scalar], canonical: bool = False) -> None:
        if rank < 1:
            raise UsageError(f'rank must be >= 1, got {rank}')
        self.ring = ring
        self.rank = rank
        if canonical:
            self._terms = dict(terms)
        else:
            is_zero = ring.field.is_zero
            self._terms = {k: terms[k] for k in sorted(terms) if not is_zero(terms[k])}

    @property
    def field(self) -> Field:
        return self.ring.field

    # -- inspection -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def keys(self) -> List[Key]:
        return list(self._terms)

    def items(self) -> List[Tuple[Key, Scalar]]:
        return list(self._terms.items())

    def inexp(self) -> InitialExponent:
        k = self.leading_key()
        return INFINITY if k is None else Exponent.from_key(k)

    def leading_key(self) -> Optional[Key]:
        return first(self._terms, None)

    def leading_coeff(self) -> Scalar:
        k = self.leading_key()
        return self.field.zero if k is None else self._terms[k]

    def order(self) -> int:
        """``|inexp(F)|``; the order of the series."""
        k = self.leading_key()
        if k is None:
            raise UsageError('the zero vector has no order')
        return k[0]

    def max_degree(self) -> int:
        if not self._terms:
            raise UsageError('the zero vector has no degree')
        return max(k[0] for k in self._terms)

    def ecart(self) -> int:
        """Largest support degree minus the degree of the initial exponent."""
        return self.max_degree() - self.order()

    def constant_terms(self) -> List[Scalar]:
        zero = (0,) * self.ring.n
        return [self._terms.get((0, i, *zero), self.field.zero) for i in range(1, self.rank + 1)]

    def has_unit_constant(self) -> bool:
        """True when some entry has a nonzero constant term (an entry outside the maximal ideal)."""
        return any(k[0] == 0 for k in self._terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: 'SeriesVec') -> None:
        if not isinstance(other, SeriesVec):
            raise TypeError(f'expected SeriesVec, got {type(other).__name__}')
        if other.ring != self.ring or other.rank != self.rank:
            raise UsageError(
                f'ambient mismatch: (n={self.ring.n}, p={self.rank}) vs (n={other.ring.n}, p={other.rank})'
            )

    def _combine(self, other: 'SeriesVec', sign: int) -> 'SeriesVec':
        self._check(other)
        f = self.field
        out = dict(self._terms)
        for k, c in other._terms.items():
            prev = out.get(k)
            if prev is None:
                out[k] = c if sign > 0 else f.neg(c)
            else:
                v = f.add(prev, c) if sign > 0 else f.sub(prev, c)
                if f.is_zero(v):
                    del out[k]
                else:
                    out[k] = v
        return SeriesVec(self.ring, self.rank, out)

    def __add__(self, other: 'SeriesVec') -> 'SeriesVec':
        return self._combine(other, 1)

    def __sub__(self, other: 'SeriesVec') -> 'SeriesVec':
        return self._combine(other, -1)

    def __neg__(self) -> 'SeriesVec':
        f = self.field
        return SeriesVec(self.ring, self.rank, {k: f.neg(c) for k, c in self._terms.items()}, canonical=True)

    def scale(self, c: Union[int, Scalar, FieldElem]) -> 'SeriesVec':
        f = self.field
        value = c.value if isinstance(c, FieldElem) else f.convert(c)
        if f.is_zero(value):
            return self.ring.zero(self.rank)
        return SeriesVec(self.ring, self.rank, {k: f.mul(v, value) for k, v in self._terms.items()}, canonical=True)

    def mul_term(self, alpha: Sequence[int], c: Scalar) -> 'SeriesVec':
        """``c * x^alpha * F`` for a raw field scalar `c`. Order is preserved, so no re-sort."""
        f = self.field
        if f.is_zero(c):
            return self.ring.zero(self.rank)
        d = sum(alpha)
        out: Dict[Key, Scalar] = {}
        for k, v in self._terms.items():
            out[(k[0] + d, k[1], *(a + b for a, b in zip(k[2:], alpha)))] = f.mul(v, c)
        return SeriesVec(self.ring, self.rank, out, canonical=True)

    def __mul__(self, other: 'SeriesVec') -> 'SeriesVec':
        """Multiply a vector by a scalar series; either side may be the scalar (rank 1)."""
        if not isinstance(other, SeriesVec):
            return NotImplemented
        if other.ring != self.ring:
            raise UsageError('operands live in different rings')
        if self.rank != 1 and other.rank != 1:
            raise UsageError(f'cannot multiply two vectors of rank {self.rank} and {other.rank}')
        scalar, vec = (self, other) if self.rank == 1 else (other, self)
        f = self.field
        out: Dict[Key, Scalar] = {}
        for ks, cs in scalar._terms.items():
            alpha = ks[2:]
            for kv, cv in vec._terms.items():
                k = (ks[0] + kv[0], kv[1], *(a + b for a, b in zip(alpha, kv[2:])))
                v = f.mul(cs, cv)
                prev = out.get(k)
                out[k] = v if prev is None else f.add(prev, v)
        return SeriesVec(self.ring, vec.rank, out)

    def jet(self, mu: int) -> 'SeriesVec':
        """The mu-jet: every term of total degree at most `mu`."""
        if mu < 0:
            raise UsageError(f'jet order must be >= 0, got {mu}')
        return SeriesVec(self.ring, self.rank, {k: c for k, c in self._terms.items() if k[0] <= mu}, canonical=True)

    # -- vectors ----------------------------------------------------------

    def components(self) -> List['SeriesVec']:
        parts: List[Dict[Key, Scalar]] = [{} for _ in range(self.rank)]
        for k, c in self._terms.items():
            parts[k[1] - 1][(k[0], 1, *k[2:])] = c
        return [SeriesVec(self.ring, 1, part, canonical=True) for part in parts]

    @classmethod
    def from_components(cls, ring: SeriesRing, entries: Sequence['SeriesVec']) -> 'SeriesVec':
        if not entries:
            raise UsageError('a vector needs at least one entry')
        out: Dict[Key, Scalar] = {}
        for i, entry in enumerate(entries, start=1):
            if entry.rank != 1:
                raise UsageError(f'vector entries must be scalars, entry {i} has rank {entry.rank}')
            for k, c in entry._terms.items():
                out[(k[0], i, *k[2:])] = c
        return cls(ring, len(entries), out)

    # -- value semantics --------------------------------------------------

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, SeriesVec):
            return NotImplemented
        return self.ring == other.ring and self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ring.variables, self.rank, tuple(self._terms.items())))

    def __str__(self) -> str:
        from .parser import format_series

        return format_series(self)

    def __repr__(self) -> str:
        return f'SeriesVec({str(self)!r}, rank={self.rank})'


def inexp(F: SeriesVec) -> InitialExponent:
    return F.inexp()


def jet(F: SeriesVec, mu: int) -> SeriesVec:
    return F.jet(mu)


def s_series(F: SeriesVec, G: SeriesVec) -> Tuple[SeriesVec, SeriesVec, SeriesVec]:
    """The s-series vector ``S = P_FG * F - P_GF * G`` and its two monomial multipliers.

    ``P_FG = lc(G) x^(gamma - alpha_F)`` and ``P_GF = lc(F) x^(gamma - alpha_G)`` with
    ``x^gamma = lcm(x^alpha_F, x^alpha_G)``, so the two initial terms cancel. When the
    initial components differ, S and both multipliers are zero.
    """
    F._check(G)
    kf, kg = F.leading_key(), G.leading_key()
    if kf is None or kg is None:
        raise UsageError('s-series vector of a zero vector')
    ring = F.ring
    if kf[1] != kg[1]:
        return ring.zero(F.rank), ring.zero(), ring.zero()
    ef, eg = Exponent.from_key(kf), Exponent.from_key(kg)
    gamma = ef.lcm(eg)
    beta_f = tuple(g - a for g, a in zip(gamma, ef.alpha))
    beta_g = tuple(g - a for g, a in zip(gamma, eg.alpha))
    cf, cg = F.leading_coeff(), G.leading_coeff()
    mult_f = ring.term(beta_f, FieldElem(ring.field, cg))
    mult_g = ring.term(beta_g, FieldElem(ring.field, cf))
    return F.mul_term(beta_f, cg) - G.mul_term(beta_g, cf), mult_f, mult_g

"""Standard bases, the diagram of initial exponents, and module membership."""

import heapq
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from more_itertools import unique_everseen

from .division import has_standard_representation, weak_normal_form
from .errors import IntegrityError, UsageError
from .series import Exponent, Key, SeriesRing, SeriesVec, s_series


@dataclass(frozen=True)
class PairRepresentation:
    """How the s-series vector of elements ``i < j`` was written over the basis.

    ``unit * (mult_i * G_i - mult_j * G_j) = sum(quotients[m] * G_m)`` exactly, where an
    element added for this very pair appears among the quotients with coefficient 1.
    """

    i: int
    j: int
    mult_i: SeriesVec
    mult_j: SeriesVec
    unit: SeriesVec
    quotients: Tuple[SeriesVec, ...]

    def padded(self, size: int) -> Tuple[SeriesVec, ...]:
        ring = self.unit.ring
        return self.quotients + tuple(ring.zero() for _ in range(size - len(self.quotients)))


@dataclass(frozen=True)
class Diagram:
    """The staircase of initial exponents, held by its vertices."""

    n: int
    p: int
    vertices: Tuple[Exponent, ...]

    @classmethod
    def from_exponents(cls, n: int, p: int, exponents: Iterable[Exponent]) -> 'Diagram':
        candidates = sorted(unique_everseen(exponents))
        vertices: List[Exponent] = []
        # ascending order means a divisor is always seen before anything it divides
        for e in candidates:
            if not any(v.divides(e) for v in vertices):
                vertices.append(e)
        return cls(n, p, tuple(vertices))

    def contains(self, exponent: Exponent) -> bool:
        return any(v.divides(exponent) for v in self.vertices)

    def __contains__(self, exponent: Exponent) -> bool:
        return self.contains(exponent)

    def complement(self, eta: int) -> List[Exponent]:
        """Exponents of total degree at most `eta` outside the staircase, in ascending order."""
        out: List[Exponent] = []
        for degree in range(eta + 1):
            for comp in range(1, self.p + 1):
                for alpha in _compositions(degree, self.n):
                    e = Exponent(alpha, comp)
                    if not self.contains(e):
                        out.append(e)
        return sorted(out)

    def max_degree(self) -> int:
        return max((v.degree for v in self.vertices), default=0)

    def exponent_list(self, exponents: Iterable[Exponent]) -> List[List[int]]:
        """Plain ``[[alpha..., comp]]`` form used by reports; the component is dropped for ideals."""
        if self.p == 1:
            return [list(e.alpha) for e in exponents]
        return [[*e.alpha, e.comp] for e in exponents]

    def vertex_list(self) -> List[List[int]]:
        return self.exponent_list(self.vertices)


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head, *tail)


@dataclass(frozen=True)
class StdBasis:
    """A certified standard basis.

    The inputs are kept, in order, as the first elements (zero inputs excepted), so
    ``transform[k]`` is a unit vector for those. Every later element satisfies
    ``elements[k] == sum(transform[k][l] * source[l])``.
    """

    ring: SeriesRing
    rank: int
    elements: Tuple[SeriesVec, ...]
    source: Tuple[SeriesVec, ...]
    certified: bool
    transform: Tuple[SeriesVec, ...] = field(repr=False)
    representations: Tuple[PairRepresentation, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def diagram(self) -> Diagram:
        return Diagram.from_exponents(self.ring.n, self.rank, (g.inexp() for g in self.elements))  # type: ignore[misc]

    def max_inexp(self) -> Exponent:
        return max(g.inexp() for g in self.elements)  # type: ignore[type-var,return-value]

    def check_transform(self) -> None:
        for k, (g, row) in enumerate(zip(self.elements, self.transform)):
            combo = self.ring.zero(self.rank)
            for coeff, f in zip(row.components(), self.source):
                combo = combo + coeff * f
            if combo != g:
                raise IntegrityError(f'element {k} of the standard basis is not the recorded combination of inputs')


def _require_generators(generators: Sequence[SeriesVec]) -> Tuple[SeriesRing, int]:
    if not generators or all(g.is_zero() for g in generators):
        raise UsageError('need at least one nonzero generator')
    head = generators[0]
    for g in generators[1:]:
        head._check(g)
    return head.ring, head.rank


def _pair_key(keys: Sequence[Key], i: int, j: int) -> Optional[Tuple[int, int, int]]:
    a, b = keys[i], keys[j]
    if a[1] != b[1]:
        return None
    gamma = sum(max(x, y) for x, y in zip(a[2:], b[2:]))
    return (gamma, i, j)


def standard_basis(generators: Sequence[SeriesVec]) -> StdBasis:
    """Complete `generators` to a standard basis.

    Critical pairs are taken in increasing order of ``(|gamma|, i, j)`` with ``x^gamma`` the lcm
    of the two initial monomials; pairs in different components are skipped. Each nonzero
    top-reduced remainder of an s-series vector joins the basis and spawns new pairs.
    """
    ring, rank = _require_generators(generators)
    s = len(generators)

    elements: List[SeriesVec] = []
    transform: List[SeriesVec] = []
    for index, g in enumerate(generators):
        if g:
            elements.append(g)
            transform.append(ring.unit_vector(index + 1, s))
    keys: List[Key] = [g.leading_key() for g in elements]  # type: ignore[misc]

    queue: List[Tuple[int, int, int]] = []
    for j in range(len(elements)):
        for i in range(j):
            entry = _pair_key(keys, i, j)
            if entry is not None:
                heapq.heappush(queue, entry)

    records: List[PairRepresentation] = []
    while queue:
        _, i, j = heapq.heappop(queue)
        S, mult_i, mult_j = s_series(elements[i], elements[j])
        if not S:
            records.append(PairRepresentation(i, j, mult_i, mult_j, ring.one(), ()))
            continue
        result = weak_normal_form(S, elements, full=False)
        quotients = list(result.quotients)
        r = result.remainder
        if r:
            # unit * S - sum(q_m * G_m) = r, and r becomes element t
            t = len(elements)
            row = (mult_i * transform[i] - mult_j * transform[j]) * result.unit
            for q, prior in zip(quotients, transform):
                if q:
                    row = row - q * prior
            elements.append(r)
            transform.append(row)
            keys.append(r.leading_key())  # type: ignore[arg-type]
            quotients.append(ring.one())
            for m in range(t):
                entry = _pair_key(keys, m, t)
                if entry is not None:
                    heapq.heappush(queue, entry)
        records.append(PairRepresentation(i, j, mult_i, mult_j, result.unit, tuple(quotients)))

    return StdBasis(
        ring=ring,
        rank=rank,
        elements=tuple(elements),
        source=tuple(generators),
        certified=True,
        transform=tuple(transform),
        representations=tuple(sorted(records, key=lambda rec: (rec.i, rec.j))),
    )


def diagram_of(generators: Sequence[SeriesVec]) -> Diagram:
    return standard_basis(generators).diagram()


def is_member(F: SeriesVec, generators: Sequence[SeriesVec]) -> bool:
    std = standard_basis(generators)
    return not weak_normal_form(F, std.elements, full=False).remainder


def is_standard_basis(elements: Sequence[SeriesVec]) -> bool:
    """Every pairwise s-series vector has a standard representation over `elements`."""
    _require_generators(elements)
    if any(g.is_zero() for g in elements):
        raise UsageError('standard-basis candidates must be nonzero')
    for j in range(len(elements)):
        for i in range(j):
            S, _, _ = s_series(elements[i], elements[j])
            if S and not has_standard_representation(S, elements)[0]:
                return False
    return True

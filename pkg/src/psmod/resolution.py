"""Syzygies, free resolutions and Betti numbers over K[[x]].

A `FreeResolution` keeps the presentation ``phi_0`` (the generators of M as columns) and the
maps ``phi_1 .. phi_c``; ``phi_k`` has ``ranks[k-1]`` rows and ``ranks[k]`` columns, and the
columns of ``phi_k`` generate the syzygies of the columns of ``phi_(k-1)``.
"""

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Callable, List, Optional, Sequence, Tuple

from . import config
from ._parallel import ordered_map
from .errors import IntegrityError, UsageError
from .series import SeriesRing, SeriesVec
from .stdbasis import StdBasis, is_member, standard_basis

Pivot = Tuple[int, int, int]


@dataclass(frozen=True)
class ModuleMatrix:
    """A ``rows x cols`` matrix of scalar series, stored row-major."""

    ring: SeriesRing
    rows: int
    cols: int
    entries: Tuple[Tuple[SeriesVec, ...], ...]

    @classmethod
    def from_columns(cls, ring: SeriesRing, rows: int, columns: Sequence[SeriesVec]) -> 'ModuleMatrix':
        split = [c.components() for c in columns]
        for j, c in enumerate(columns):
            if c.rank != rows:
                raise UsageError(f'column {j} has rank {c.rank}, expected {rows}')
        return cls.from_rows(ring, [[split[j][i] for j in range(len(columns))] for i in range(rows)])

    @classmethod
    def from_rows(cls, ring: SeriesRing, rows: Sequence[Sequence[SeriesVec]]) -> 'ModuleMatrix':
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise UsageError('matrix rows have different lengths')
        return cls(ring, len(rows), cols, tuple(tuple(r) for r in rows))

    def column(self, col: int) -> SeriesVec:
        return SeriesVec.from_components(self.ring, [self.entries[i][col] for i in range(self.rows)])

    def columns(self) -> List[SeriesVec]:
        return [self.column(j) for j in range(self.cols)]

    def compose(self, other: 'ModuleMatrix') -> 'ModuleMatrix':
        """``self * other``: apply `other` first."""
        if self.cols != other.rows:
            raise UsageError(f'cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}')
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for m in range(self.cols):
                    a, b = self.entries[i][m], other.entries[m][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return ModuleMatrix(self.ring, self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(e for row in self.entries for e in row)

    def unit_positions(self) -> List[Tuple[int, int]]:
        """Positions of entries with a nonzero constant term, in row-major order."""
        return [(i, j) for i, row in enumerate(self.entries) for j, e in enumerate(row) if e.has_unit_constant()]

    def jet(self, mu: int) -> 'ModuleMatrix':
        return replace(self, entries=tuple(tuple(e.jet(mu) for e in row) for row in self.entries))


@dataclass(frozen=True)
class BettiTable:
    betti: Tuple[int, ...]
    pd: int
    cm_type: Optional[int] = None


@dataclass(frozen=True)
class FreeResolution:
    presentation: ModuleMatrix
    maps: Tuple[ModuleMatrix, ...]
    minimal: bool
    # standard bases of the columns of phi_0 .. phi_c, when the builder kept them
    level_bases: Tuple[StdBasis, ...] = field(default=(), repr=False)

    @property
    def ring(self) -> SeriesRing:
        return self.presentation.ring

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def ranks(self) -> Tuple[int, ...]:
        return (self.presentation.cols, *(m.cols for m in self.maps))

    def matrices(self) -> List[ModuleMatrix]:
        return [self.presentation, *self.maps]

    def check_exact(self) -> None:
        """Every composite ``phi_k * phi_(k+1)`` vanishes; raise `IntegrityError` otherwise."""
        mats = self.matrices()
        for k in range(len(mats) - 1):
            if not mats[k].compose(mats[k + 1]).is_zero():
                raise IntegrityError(f'phi_{k} * phi_{k + 1} is not zero')

    def is_minimal(self) -> bool:
        return not any(m.unit_positions() for m in self.maps)

    def jet(self, mu: int) -> 'FreeResolution':
        """Entrywise mu-jets of every matrix. The result need not be a complex."""
        return FreeResolution(self.presentation.jet(mu), tuple(m.jet(mu) for m in self.maps), self.minimal)


def schreyer_syzygies(std: StdBasis) -> List[SeriesVec]:
    """Generators of the syzygies of ``std.elements``, one per recorded critical pair."""
    if not std.certified:
        raise UsageError('schreyer syzygies need a certified standard basis')
    ring = std.ring
    t = len(std.elements)
    out: List[SeriesVec] = []
    for rec in std.representations:
        entries = [ring.zero() for _ in range(t)]
        entries[rec.i] = entries[rec.i] + rec.unit * rec.mult_i
        entries[rec.j] = entries[rec.j] - rec.unit * rec.mult_j
        for m, q in enumerate(rec.padded(t)):
            if q:
                entries[m] = entries[m] - q
        xi = SeriesVec.from_components(ring, entries)
        if xi:
            out.append(xi)
    return out


def _syzygies_with_basis(generators: Sequence[SeriesVec]) -> Tuple[StdBasis, List[SeriesVec]]:
    std = standard_basis(generators)
    std.check_transform()
    ring = std.ring
    s = len(generators)
    out: List[SeriesVec] = []
    # the inputs are the leading elements of the basis, so pulling the element syzygies
    # back through the transform already generates the syzygies of the inputs
    for xi in schreyer_syzygies(std):
        pulled = ring.zero(s)
        for coeff, row in zip(xi.components(), std.transform):
            if coeff:
                pulled = pulled + coeff * row
        if pulled:
            out.append(pulled)
    for k, g in enumerate(generators):
        if not g:
            out.append(ring.unit_vector(k + 1, s))
    return std, out


def syzygies(generators: Sequence[SeriesVec]) -> List[SeriesVec]:
    """Generators of ``Syz(generators)``, each a vector of rank ``len(generators)``."""
    return _syzygies_with_basis(generators)[1]


def minimal_generators(generators: Sequence[SeriesVec]) -> List[SeriesVec]:
    """Drop zeros, then drop (last to first) every generator lying in the span of the rest."""
    kept = [g for g in generators if g]
    if not kept:
        raise UsageError('need at least one nonzero generator')
    for index in range(len(kept) - 1, -1, -1):
        others = kept[:index] + kept[index + 1 :]
        if others and is_member(kept[index], others):
            kept = others
    return kept


def _level_cap(ring: SeriesRing) -> int:
    return ring.n + 1


def build_resolution(generators: Sequence[SeriesVec]) -> FreeResolution:
    """Minimal free resolution of the module generated by `generators`.

    Each level takes minimal generators of the previous level's syzygies; the loop ends when
    the syzygy module is zero, and the last map is then certified injective.
    """
    current = minimal_generators(generators)
    ring, rank = current[0].ring, current[0].rank
    presentation = ModuleMatrix.from_columns(ring, rank, current)
    maps: List[ModuleMatrix] = []
    bases: List[StdBasis] = []

    while True:
        std, syz = _syzygies_with_basis(current)
        bases.append(std)
        if not syz:
            break
        if len(maps) >= _level_cap(ring):
            raise IntegrityError(f'resolution is longer than the {ring.n} variables allow')
        nxt = minimal_generators(syz)
        maps.append(ModuleMatrix.from_columns(ring, len(current), nxt))
        current = nxt

    res = FreeResolution(presentation, tuple(maps), minimal=False, level_bases=tuple(bases))
    res.check_exact()
    last = maps[-1] if maps else presentation
    if not check_injective_minors(last):
        raise IntegrityError('the last map of the resolution is not injective')
    return minimalize(res)


def schreyer_resolution(generators: Sequence[SeriesVec]) -> FreeResolution:
    """The raw resolution: Schreyer syzygies at every level with no minimisation."""
    current = [g for g in generators if g]
    if not current:
        raise UsageError('need at least one nonzero generator')
    ring, rank = current[0].ring, current[0].rank
    presentation = ModuleMatrix.from_columns(ring, rank, current)
    maps: List[ModuleMatrix] = []
    while True:
        syz = syzygies(current)
        if not syz:
            break
        if len(maps) >= _level_cap(ring) + 1:
            raise IntegrityError('raw resolution did not terminate')
        maps.append(ModuleMatrix.from_columns(ring, len(current), syz))
        current = syz
    res = FreeResolution(presentation, tuple(maps), minimal=False)
    res.check_exact()
    return res


def _drop(mat: ModuleMatrix, row: Optional[int] = None, col: Optional[int] = None) -> ModuleMatrix:
    entries = tuple(
        tuple(e for j, e in enumerate(r) if j != col) for i, r in enumerate(mat.entries) if i != row
    )
    rows = mat.rows - (row is not None)
    cols = mat.cols - (col is not None)
    return ModuleMatrix(mat.ring, rows, cols, entries)


def _eliminate(mat: ModuleMatrix, r: int, c: int) -> ModuleMatrix:
    # col_j <- a * col_j - mat[r][j] * col_c, then drop row r and column c
    a = mat.entries[r][c]
    entries = []
    for i in range(mat.rows):
        if i == r:
            continue
        row = []
        for j in range(mat.cols):
            if j == c:
                continue
            e = a * mat.entries[i][j]
            pivot_row = mat.entries[r][j]
            if pivot_row and mat.entries[i][c]:
                e = e - pivot_row * mat.entries[i][c]
            row.append(e)
        entries.append(tuple(row))
    return ModuleMatrix(mat.ring, mat.rows - 1, mat.cols - 1, tuple(entries))


def _pivots(mats: Sequence[ModuleMatrix]) -> List[Pivot]:
    return [(k, i, j) for k in range(1, len(mats)) for i, j in mats[k].unit_positions()]


def minimalize(res: FreeResolution, choose: Optional[Callable[[List[Pivot]], Pivot]] = None) -> FreeResolution:
    """Cancel unit entries pairwise until every map has entries in the maximal ideal.

    Pivots are taken lowest level first, then by position, unless `choose` picks among
    the candidates ``(level, row, col)``.
    """
    res.check_exact()
    mats = res.matrices()
    pick = choose or min

    while True:
        candidates = _pivots(mats)
        if not candidates:
            break
        k, r, c = pick(candidates)
        mats[k] = _eliminate(mats[k], r, c)
        mats[k - 1] = _drop(mats[k - 1], col=r)
        if k + 1 < len(mats):
            mats[k + 1] = _drop(mats[k + 1], row=c)
        # a level whose free module vanished ends the resolution
        for level in range(1, len(mats)):
            if mats[level].cols == 0:
                mats = mats[:level]
                break

    out = FreeResolution(mats[0], tuple(mats[1:]), minimal=True, level_bases=res.level_bases)
    out.check_exact()
    return out


def determinant(rows: Sequence[Sequence[SeriesVec]]) -> SeriesVec:
    """Laplace expansion along the first row; meant for the small minors used here."""
    size = len(rows)
    if size == 0:
        raise UsageError('determinant of an empty matrix')
    if size == 1:
        return rows[0][0]
    ring = rows[0][0].ring
    total = ring.zero()
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        minor = [[e for m, e in enumerate(r) if m != j] for r in rows[1:]]
        term = a * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def check_injective_minors(M: ModuleMatrix) -> bool:
    """Whether the map given by `M` is injective.

    Small matrices are certified by a nonzero maximal minor; wider ones by an empty syzygy
    module of the columns.
    """
    if M.cols == 0:
        return True
    if M.rows < M.cols:
        raise UsageError(f'a {M.rows}x{M.cols} matrix cannot be injective')
    if M.cols > config.cfg.minor_column_limit:
        return not syzygies(M.columns())

    def minor(chosen: Tuple[int, ...]) -> SeriesVec:
        return determinant([[M.entries[i][j] for j in range(M.cols)] for i in chosen])

    minors = ordered_map(minor, list(combinations(range(M.rows), M.cols)), config.cfg.max_workers)
    return any(minors)


def betti_table(res: FreeResolution, quotient: bool = True) -> BettiTable:
    """Betti numbers of a minimal resolution.

    With ``quotient=True`` the resolution is read as one of an ideal I and shifted to R/I:
    ``(1, n_0, ..., n_c)`` with projective dimension ``c + 1``.
    """
    if not res.minimal and not res.is_minimal():
        raise UsageError('Betti numbers need a minimal resolution')
    if quotient:
        if res.presentation.rows != 1:
            raise UsageError('the quotient shift applies to ideals only')
        return BettiTable((1, *res.ranks), res.length + 1)
    return BettiTable(res.ranks, res.length)

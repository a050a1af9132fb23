"""Ring-theoretic verdicts for K[[x]]/I and the jet-truncation laboratory.

Cohen-Macaulayness is decided by Auslander-Buchsbaum (``pd == n - dim``), the type is the
last Betti number, and flatness of ``K[[y]] -> K[[x]]/I`` over a Cohen-Macaulay total space
is the dimension equality ``dim R/I == m + dim R/J`` with ``J = I + (phi_1, ..., phi_m)``.
"""

import warnings
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import config
from ._parallel import ordered_map
from .config import CatalogEntry
from .errors import ApproximationWarning, CriterionInapplicableError, UsageError, WholeRingError
from .hilbert import HilbertData, hs_polynomial
from .resolution import BettiTable, FreeResolution, betti_table, build_resolution
from .series import SeriesRing, SeriesVec
from .stdbasis import Diagram, standard_basis


@dataclass(frozen=True)
class RingReport:
    n: int
    dim: int
    pd: int
    betti: BettiTable
    is_cm: bool
    cm_type: Optional[int]
    is_gorenstein: bool
    hs: HilbertData
    diagram: Diagram
    # None for the zero ideal, whose quotient is K[[x]] itself
    resolution: Optional[FreeResolution] = field(default=None, repr=False)


@dataclass(frozen=True)
class ModuleReport:
    rank: int
    generators: int
    betti: BettiTable
    diagram: Diagram
    resolution: FreeResolution = field(repr=False)


@dataclass(frozen=True)
class MapSpec:
    """``y_k -> images[k]``; every image lies in the maximal ideal of K[[x]]."""

    images: Tuple[SeriesVec, ...]

    def __post_init__(self) -> None:
        for k, image in enumerate(self.images):
            if image.rank != 1:
                raise UsageError(f'map image {k} must be a scalar series')
            if image.has_unit_constant():
                raise UsageError(f'map image {k} ({image!s}) has a constant term; the map is not local')

    @property
    def m(self) -> int:
        return len(self.images)


@dataclass(frozen=True)
class FlatnessReport:
    flat: bool
    m: int
    dim_total: int
    dim_fibre: int
    total: RingReport = field(repr=False)
    fibre: RingReport = field(repr=False)


@dataclass(frozen=True)
class ResolutionJetComparison:
    """mu-jets of the maps of two minimal resolutions, compared map by map."""

    mu: int
    original_ranks: Tuple[int, ...]
    # empty when every generator truncates to zero
    truncated_ranks: Tuple[int, ...]
    # one flag per phi_0 .. phi_c; empty when the ranks differ
    jets_equal: Tuple[bool, ...]

    @property
    def ranks_equal(self) -> bool:
        return self.original_ranks == self.truncated_ranks

    @property
    def all_equal(self) -> bool:
        return self.ranks_equal and all(self.jets_equal)


@dataclass(frozen=True)
class TruncationReport:
    mu: int
    diagram_equal: bool
    hs_equal: bool
    betti_equal: bool
    dim_equal: bool
    cm_equal: bool
    candidate_mu0: int
    empirical_mu0: Optional[int]
    original_vertices: Tuple[Tuple[int, ...], ...]
    truncated_vertices: Tuple[Tuple[int, ...], ...]
    original_betti: Tuple[int, ...]
    truncated_betti: Tuple[int, ...]
    original_hs: Tuple[int, ...]
    truncated_hs: Tuple[int, ...]
    resolution_jets: ResolutionJetComparison = field(repr=False)

    @property
    def all_equal(self) -> bool:
        return self.diagram_equal and self.hs_equal and self.betti_equal and self.dim_equal and self.cm_equal


@dataclass(frozen=True)
class ModuleTruncationReport:
    mu: int
    diagram_equal: bool
    betti_equal: bool
    candidate_mu0: int
    empirical_mu0: Optional[int]
    original_vertices: Tuple[Tuple[int, ...], ...]
    truncated_vertices: Tuple[Tuple[int, ...], ...]
    original_betti: Tuple[int, ...]
    # empty when every generator truncates to zero
    truncated_betti: Tuple[int, ...]
    resolution_jets: ResolutionJetComparison = field(repr=False)

    @property
    def all_equal(self) -> bool:
        return self.diagram_equal and self.betti_equal


@dataclass(frozen=True)
class FlatTruncationReport:
    mu: int
    flat: bool
    # None when K[[x]]/I_mu is not Cohen-Macaulay and the criterion does not apply
    truncated_flat: Optional[bool]
    total_hs_equal: bool
    total_betti_equal: bool
    fibre_hs_equal: bool
    fibre_betti_equal: bool
    truncated_images: Tuple[SeriesVec, ...] = field(repr=False)

    @property
    def all_equal(self) -> bool:
        return (
            self.truncated_flat == self.flat
            and self.total_hs_equal
            and self.total_betti_equal
            and self.fibre_hs_equal
            and self.fibre_betti_equal
        )


def _require_ideal(I: Sequence[SeriesVec]) -> SeriesRing:
    if not I:
        raise UsageError('an ideal needs at least one generator')
    ring = I[0].ring
    for k, g in enumerate(I):
        if g.ring != ring:
            raise UsageError(f'generator {k} lives in a different ring')
        if g.rank != 1:
            raise UsageError(f'generator {k} has rank {g.rank}; ideals take scalar generators')
    return ring


def ring_report(I: Sequence[SeriesVec]) -> RingReport:
    """Dimension, Betti numbers and the Cohen-Macaulay and Gorenstein verdicts for K[[x]]/I."""
    ring = _require_ideal(I)
    if all(g.is_zero() for g in I):
        raise UsageError('the zero ideal has no ring report; K[[x]]/(0) is K[[x]]')
    for k, g in enumerate(I):
        if g.has_unit_constant():
            raise WholeRingError(f'generator {k} ({g!s}) is a unit; K[[x]]/I is the zero ring')

    diagram = standard_basis(I).diagram()
    if any(v.degree == 0 for v in diagram.vertices):
        raise WholeRingError('the ideal contains a unit; K[[x]]/I is the zero ring')
    hs = hs_polynomial(diagram)
    res = build_resolution(I)
    betti = betti_table(res, quotient=True)

    is_cm = betti.pd == ring.n - hs.dim
    cm_type = betti.betti[-1] if is_cm else None
    return RingReport(
        n=ring.n,
        dim=hs.dim,
        pd=betti.pd,
        betti=BettiTable(betti.betti, betti.pd, cm_type),
        is_cm=is_cm,
        cm_type=cm_type,
        is_gorenstein=is_cm and cm_type == 1,
        hs=hs,
        diagram=diagram,
        resolution=res,
    )


def _zero_ideal_report(ring: SeriesRing) -> RingReport:
    diagram = Diagram(ring.n, 1, ())
    hs = hs_polynomial(diagram)
    return RingReport(
        n=ring.n,
        dim=ring.n,
        pd=0,
        betti=BettiTable((1,), 0, 1),
        is_cm=True,
        cm_type=1,
        is_gorenstein=True,
        hs=hs,
        diagram=diagram,
    )


def _ideal_report(I: Sequence[SeriesVec]) -> RingReport:
    ring = _require_ideal(I)
    if all(g.is_zero() for g in I):
        return _zero_ideal_report(ring)
    return ring_report(I)


def module_report(generators: Sequence[SeriesVec]) -> ModuleReport:
    """Betti numbers and projective dimension of the submodule of K[[x]]^p the generators span."""
    res = build_resolution(generators)
    rank = res.presentation.rows
    return ModuleReport(
        rank=rank,
        generators=res.presentation.cols,
        betti=betti_table(res, quotient=False),
        diagram=standard_basis(generators).diagram(),
        resolution=res,
    )


def _fibre_dimension_criterion(total: RingReport, fibre: RingReport, m: int) -> bool:
    return total.dim == m + fibre.dim


def flatness_check(I: Sequence[SeriesVec], phi: MapSpec) -> FlatnessReport:
    """Flatness of ``K[[y_1..y_m]] -> K[[x]]/I`` through the special fibre ``K[[x]]/J``.

    Raises `CriterionInapplicableError` when K[[x]]/I is not Cohen-Macaulay: there the
    dimension equality does not decide flatness.
    """
    total = ring_report(I)
    if not total.is_cm:
        raise CriterionInapplicableError(
            f'K[[x]]/I has depth {total.n - total.pd} < dim {total.dim}; the fibre-dimension criterion needs CM'
        )
    fibre = ring_report([*I, *phi.images])
    return FlatnessReport(
        flat=_fibre_dimension_criterion(total, fibre, phi.m),
        m=phi.m,
        dim_total=total.dim,
        dim_fibre=fibre.dim,
        total=total,
        fibre=fibre,
    )


def truncate_ideal(I: Sequence[SeriesVec], mu: int) -> List[SeriesVec]:
    return [g.jet(mu) for g in I]


def _hs_window(a: HilbertData, b: HilbertData) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    top = max(len(a.values), len(b.values))
    return tuple(a.evaluate(e) for e in range(top)), tuple(b.evaluate(e) for e in range(top))


def _same_hs(a: HilbertData, b: HilbertData) -> bool:
    left, right = _hs_window(a, b)
    return left == right and a.poly_coeffs == b.poly_coeffs


def _vertices(D: Diagram) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(v) for v in D.vertex_list())


def _jet_comparison(mu: int, original: FreeResolution, truncated: Optional[FreeResolution]) -> ResolutionJetComparison:
    truncated_ranks = truncated.ranks if truncated is not None else ()
    jets_equal: Tuple[bool, ...] = ()
    if truncated is not None and truncated.ranks == original.ranks:
        jets_equal = tuple(a == b for a, b in zip(original.jet(mu).matrices(), truncated.jet(mu).matrices()))
    return ResolutionJetComparison(mu, original.ranks, truncated_ranks, jets_equal)


def compare_resolution_jets(generators: Sequence[SeriesVec], mu: int) -> ResolutionJetComparison:
    """Resolve the generators and their mu-jets, then compare the mu-jets of the two resolutions.

    Both resolutions come out of the same deterministic construction, so the maps are compared
    entrywise with no change of basis.
    """
    if mu < 0:
        raise UsageError(f'mu must be >= 0, got {mu}')
    jets = truncate_ideal(generators, mu)
    truncated = build_resolution(jets) if any(jets) else None
    return _jet_comparison(mu, build_resolution(generators), truncated)


def _compare(I: Sequence[SeriesVec], original: RingReport, mu: int) -> Dict[str, Any]:
    truncated = _ideal_report(truncate_ideal(I, mu))
    assert original.resolution is not None
    original_hs, truncated_hs = _hs_window(original.hs, truncated.hs)
    return {
        'mu': mu,
        'diagram_equal': original.diagram.vertices == truncated.diagram.vertices,
        'hs_equal': _same_hs(original.hs, truncated.hs),
        'betti_equal': original.betti.betti == truncated.betti.betti,
        'dim_equal': original.dim == truncated.dim,
        'cm_equal': original.is_cm == truncated.is_cm,
        'original_vertices': _vertices(original.diagram),
        'truncated_vertices': _vertices(truncated.diagram),
        'original_betti': original.betti.betti,
        'truncated_betti': truncated.betti.betti,
        'original_hs': original_hs,
        'truncated_hs': truncated_hs,
        'resolution_jets': _jet_comparison(mu, original.resolution, truncated.resolution),
    }


def _module_row(generators: Sequence[SeriesVec], original: ModuleReport, mu: int) -> Dict[str, Any]:
    jets = truncate_ideal(generators, mu)
    truncated = module_report(jets) if any(jets) else None
    row: Dict[str, Any] = {
        'mu': mu,
        'diagram_equal': False,
        'betti_equal': False,
        'original_vertices': _vertices(original.diagram),
        'truncated_vertices': (),
        'original_betti': original.betti.betti,
        'truncated_betti': (),
        'resolution_jets': _jet_comparison(mu, original.resolution, truncated.resolution if truncated else None),
    }
    if truncated is not None:
        row.update(
            diagram_equal=original.diagram.vertices == truncated.diagram.vertices,
            betti_equal=original.betti.betti == truncated.betti.betti,
            truncated_vertices=_vertices(truncated.diagram),
            truncated_betti=truncated.betti.betti,
        )
    return row


_IDEAL_FLAGS = ('diagram_equal', 'hs_equal', 'betti_equal', 'dim_equal', 'cm_equal')
_MODULE_FLAGS = ('diagram_equal', 'betti_equal')


def _candidate(res: FreeResolution) -> int:
    return max(std.max_inexp().degree for std in res.level_bases)


def candidate_mu0(I: Sequence[SeriesVec]) -> int:
    """The largest ``|max inexp|`` over the standard bases of every level of the resolution."""
    report = ring_report(I)
    assert report.resolution is not None
    return _candidate(report.resolution)


def _scan(I: Sequence[SeriesVec], original: RingReport, mu_max: int) -> List[Dict[str, Any]]:
    return ordered_map(partial(_compare, I, original), list(range(mu_max + 1)), config.cfg.max_workers)


def _first_stable(rows: Sequence[Dict[str, Any]], flags: Sequence[str] = _IDEAL_FLAGS) -> Optional[int]:
    found: Optional[int] = None
    for row in reversed(rows):
        if not all(row[k] for k in flags):
            break
        found = row['mu']
    return found


def _default_mu_max(generators: Sequence[SeriesVec], mu: int) -> int:
    return max(mu, max(g.max_degree() for g in generators if g))


def _warn_above_candidate(empirical: Optional[int], candidate: int) -> None:
    if empirical is not None and empirical > candidate:
        warnings.warn(
            f'plain truncation needs order {empirical}, above the candidate bound {candidate}', ApproximationWarning
        )


def empirical_mu0(I: Sequence[SeriesVec], mu_max: int) -> Optional[int]:
    """Smallest mu such that truncation at every order in ``mu..mu_max`` preserves all invariants."""
    if mu_max < 0:
        raise UsageError(f'mu_max must be >= 0, got {mu_max}')
    return _first_stable(_scan(I, ring_report(I), mu_max))


def compare_truncation(I: Sequence[SeriesVec], mu: int, mu_max: Optional[int] = None) -> TruncationReport:
    """Invariants of I against those of its mu-jet ideal, with both truncation orders.

    The empirical order scans up to `mu_max`, by default the larger of `mu` and the top
    generator degree (past which truncation changes nothing).
    """
    if mu < 0:
        raise UsageError(f'mu must be >= 0, got {mu}')
    original = ring_report(I)
    if mu_max is None:
        mu_max = _default_mu_max(I, mu)
    rows = _scan(I, original, mu_max)
    row = rows[mu] if mu <= mu_max else _compare(I, original, mu)
    candidate = candidate_mu0(I)
    empirical = _first_stable(rows)
    _warn_above_candidate(empirical, candidate)
    return TruncationReport(candidate_mu0=candidate, empirical_mu0=empirical, **row)


def compare_module_truncation(
    generators: Sequence[SeriesVec], mu: int, mu_max: Optional[int] = None
) -> ModuleTruncationReport:
    """The module analogue of `compare_truncation`: staircase and Betti numbers of the submodule
    spanned by `generators` against those of the module spanned by their mu-jets."""
    if mu < 0:
        raise UsageError(f'mu must be >= 0, got {mu}')
    original = module_report(generators)
    if mu_max is None:
        mu_max = _default_mu_max(generators, mu)
    rows = ordered_map(partial(_module_row, generators, original), list(range(mu_max + 1)), config.cfg.max_workers)
    row = rows[mu] if mu <= mu_max else _module_row(generators, original, mu)
    candidate = _candidate(original.resolution)
    empirical = _first_stable(rows, _MODULE_FLAGS)
    _warn_above_candidate(empirical, candidate)
    return ModuleTruncationReport(candidate_mu0=candidate, empirical_mu0=empirical, **row)


def compare_flat_truncation(I: Sequence[SeriesVec], phi: MapSpec, mu: int) -> FlatTruncationReport:
    """Truncate both the ideal and the map at order mu and compare the flatness data.

    Raises `CriterionInapplicableError` when K[[x]]/I itself is not Cohen-Macaulay. A truncated
    total space that is not Cohen-Macaulay is reported as ``truncated_flat=None``.
    """
    if mu < 0:
        raise UsageError(f'mu must be >= 0, got {mu}')
    original = flatness_check(I, phi)
    I_mu = truncate_ideal(I, mu)
    phi_mu = MapSpec(tuple(image.jet(mu) for image in phi.images))
    total = _ideal_report(I_mu)
    fibre = _ideal_report([*I_mu, *phi_mu.images])
    return FlatTruncationReport(
        mu=mu,
        flat=original.flat,
        truncated_flat=_fibre_dimension_criterion(total, fibre, phi.m) if total.is_cm else None,
        total_hs_equal=_same_hs(original.total.hs, total.hs),
        total_betti_equal=original.total.betti.betti == total.betti.betti,
        fibre_hs_equal=_same_hs(original.fibre.hs, fibre.hs),
        fibre_betti_equal=original.fibre.betti.betti == fibre.betti.betti,
        truncated_images=phi_mu.images,
    )


def catalog_mismatches(entry: CatalogEntry, field_selector: str = 'q') -> Dict[str, Tuple[Any, Any]]:
    """Recompute a catalog entry; every expected value that differs maps to ``(expected, observed)``."""
    from .parser import parse_polynomial

    ring = SeriesRing.create(field_selector, entry['variables'])
    I = [parse_polynomial(text, ring) for text in entry['generators']]
    expected = entry['expected']
    report = ring_report(I)
    observed: Dict[str, Any] = {
        'betti': list(report.betti.betti),
        'pd': report.pd,
        'dim': report.dim,
        'cm': report.is_cm,
        'gorenstein': report.is_gorenstein,
        'cm_type': report.cm_type,
        'vertices': sorted(list(v) for v in report.diagram.vertex_list()),
    }
    if 'hs_values' in expected:
        observed['hs_values'] = [report.hs.evaluate(e) for e in range(len(expected['hs_values']))]
    if 'candidate_mu0' in expected:
        observed['candidate_mu0'] = candidate_mu0(I)
    if 'empirical_mu0' in expected:
        observed['empirical_mu0'] = empirical_mu0(I, entry['mu_max'])
    if 'flat' in expected and entry['map_images'] is not None:
        phi = MapSpec(tuple(parse_polynomial(text, ring) for text in entry['map_images']))
        observed['flat'] = flatness_check(I, phi).flat

    mismatches: Dict[str, Tuple[Any, Any]] = {}
    for key, want in expected.items():
        got = observed.get(key)
        if key == 'vertices':
            want = sorted(want)  # type: ignore[type-var]
        if got != want:
            mismatches[key] = (want, got)
    return mismatches

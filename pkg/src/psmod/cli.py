"""Command-line interface: ``psmod <command> PROBLEM.json [options]``.

Every command prints a human-readable report, or with ``--json`` a canonical JSON document
(sorted keys, canonical term order) that is byte-identical across runs. Errors print
``psmod: error: <message>`` to stderr and exit with 1 (usage), 2 (parse), 3 (mathematical
precondition) or 4 (internal integrity).
"""

import argparse
import json
import sys
import warnings
from typing import Any, Callable, Dict, List, NoReturn, Optional, Sequence

from pydantic import BaseModel, ValidationError

from . import config
from .errors import IntegrityError, LargeProblemWarning, ParseError, PsmodError, UsageError
from .hilbert import hs_polynomial
from .problem import ProblemFile
from .resolution import build_resolution
from .ringprops import (
    MapSpec,
    RingReport,
    candidate_mu0,
    compare_flat_truncation,
    compare_module_truncation,
    compare_truncation,
    empirical_mu0,
    flatness_check,
    module_report,
    ring_report,
)
from .series import SeriesVec
from .stdbasis import standard_basis


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


########################################################################################################################
# reports


class Report(BaseModel):
    def to_text(self) -> str:
        lines = []
        for key, value in self.model_dump().items():
            lines.append(f'{key}: {value}')
        return '\n'.join(lines)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode='json'), sort_keys=True, indent=2)


class StdBasisReport(Report):
    generators: List[str]
    elements: List[str]
    certified: bool
    vertices: List[List[int]]

    def to_text(self) -> str:
        lines = [f'standard basis ({len(self.elements)} elements, certified: {self.certified}):']
        lines += [f'  {e}' for e in self.elements]
        return '\n'.join(lines)


class DiagramReport(Report):
    n: int
    p: int
    vertices: List[List[int]]
    max_degree: int
    # exponents of degree <= eta_max outside the staircase, when eta_max is given
    outside: Optional[List[List[int]]] = None

    def to_text(self) -> str:
        lines = [f'diagram vertices (n={self.n}, p={self.p}):']
        lines += [f'  {tuple(v)}' for v in self.vertices]
        if self.outside is not None:
            lines.append(f'outside the staircase: {len(self.outside)} exponents')
        return '\n'.join(lines)


class HilbertReport(Report):
    values: List[int]
    polynomial: str
    poly_coeffs: List[str]
    stab: int
    dim: int
    multiplicity: int

    def to_text(self) -> str:
        return '\n'.join(
            [
                f'H(eta), eta = 0..{len(self.values) - 1}: {self.values}',
                f'Hilbert-Samuel polynomial: {self.polynomial} (from eta = {self.stab})',
                f'dimension: {self.dim}',
                f'multiplicity: {self.multiplicity}',
            ]
        )


class ResolveReport(Report):
    ranks: List[int]
    length: int
    minimal: bool
    # row-major entries of phi_0 .. phi_c
    matrices: List[List[List[str]]]

    def to_text(self) -> str:
        lines = [f'ranks: {self.ranks} (length {self.length}, minimal: {self.minimal})']
        for k, mat in enumerate(self.matrices):
            lines.append(f'phi_{k}:')
            lines += ['  [' + ', '.join(row) + ']' for row in mat]
        return '\n'.join(lines)


class BettiReport(Report):
    betti: List[int]
    pd: int
    quotient: bool

    def to_text(self) -> str:
        what = 'K[[x]]/I' if self.quotient else 'M'
        return f'Betti numbers of {what}: {self.betti}\nprojective dimension: {self.pd}'


class RingReportModel(Report):
    n: int
    dim: int
    pd: int
    betti: List[int]
    cm: bool
    cm_type: Optional[int]
    gorenstein: bool
    hs_values: List[int]
    vertices: List[List[int]]

    @classmethod
    def from_report(cls, report: RingReport) -> 'RingReportModel':
        return cls(
            n=report.n,
            dim=report.dim,
            pd=report.pd,
            betti=list(report.betti.betti),
            cm=report.is_cm,
            cm_type=report.cm_type,
            gorenstein=report.is_gorenstein,
            hs_values=list(report.hs.values),
            vertices=report.diagram.vertex_list(),
        )

    def to_text(self) -> str:
        return '\n'.join(
            [
                f'dim: {self.dim}',
                f'pd: {self.pd}',
                f'betti: {self.betti}',
                f'Cohen-Macaulay: {self.cm}' + (f' (type {self.cm_type})' if self.cm else ''),
                f'Gorenstein: {self.gorenstein}',
            ]
        )


class FlatReport(Report):
    flat: bool
    m: int
    dim_total: int
    dim_fibre: int
    fibre: RingReportModel

    def to_text(self) -> str:
        verdict = 'flat' if self.flat else 'not flat'
        return f'{verdict}: dim R/I = {self.dim_total}, m = {self.m}, dim R/J = {self.dim_fibre}'


class TruncateReport(Report):
    mu: int
    all_equal: bool
    diagram_equal: bool
    hs_equal: bool
    betti_equal: bool
    dim_equal: bool
    cm_equal: bool
    candidate_mu0: int
    empirical_mu0: Optional[int]
    truncated: List[str]
    original_vertices: List[List[int]]
    truncated_vertices: List[List[int]]
    original_betti: List[int]
    truncated_betti: List[int]
    # per phi_0 .. phi_c: do the mu-jets of the two resolutions agree
    resolution_jets: List[bool]

    def to_text(self) -> str:
        flags = ', '.join(
            f'{name}={getattr(self, name)}'
            for name in ('diagram_equal', 'hs_equal', 'betti_equal', 'dim_equal', 'cm_equal')
        )
        return '\n'.join(
            [
                f'mu = {self.mu}: {flags}',
                f'truncated generators: {self.truncated}',
                f'candidate mu0: {self.candidate_mu0}, empirical mu0: {self.empirical_mu0}',
            ]
        )


class ModuleTruncateReport(Report):
    mu: int
    all_equal: bool
    diagram_equal: bool
    betti_equal: bool
    candidate_mu0: int
    empirical_mu0: Optional[int]
    truncated: List[str]
    original_vertices: List[List[int]]
    truncated_vertices: List[List[int]]
    original_betti: List[int]
    truncated_betti: List[int]
    resolution_jets: List[bool]

    def to_text(self) -> str:
        return '\n'.join(
            [
                f'mu = {self.mu}: diagram_equal={self.diagram_equal}, betti_equal={self.betti_equal}',
                f'truncated generators: {self.truncated}',
                f'candidate mu0: {self.candidate_mu0}, empirical mu0: {self.empirical_mu0}',
            ]
        )


class FlatTruncateReport(Report):
    mu: int
    all_equal: bool
    flat: bool
    truncated_flat: Optional[bool]
    total_hs_equal: bool
    total_betti_equal: bool
    fibre_hs_equal: bool
    fibre_betti_equal: bool
    truncated: List[str]
    truncated_images: List[str]

    def to_text(self) -> str:
        after = 'criterion inapplicable' if self.truncated_flat is None else str(self.truncated_flat)
        return '\n'.join(
            [
                f'mu = {self.mu}: flat={self.flat}, truncated flat={after}',
                f'total space: hs_equal={self.total_hs_equal}, betti_equal={self.total_betti_equal}',
                f'special fibre: hs_equal={self.fibre_hs_equal}, betti_equal={self.fibre_betti_equal}',
            ]
        )


class Mu0ScanReport(Report):
    mu_max: int
    candidate_mu0: int
    empirical_mu0: Optional[int]
    bound_holds: bool

    def to_text(self) -> str:
        found = 'not found' if self.empirical_mu0 is None else str(self.empirical_mu0)
        return f'candidate mu0: {self.candidate_mu0}\nempirical mu0 (mu <= {self.mu_max}): {found}'


class CatalogListing(Report):
    entries: List[Dict[str, Any]]

    def to_text(self) -> str:
        return '\n'.join(f'{e["name"]:28} ' + ', '.join(e['generators']) for e in self.entries)


########################################################################################################################
# commands


def _strs(vs: Sequence[SeriesVec]) -> List[str]:
    return [str(v) for v in vs]


def _ideal(problem: ProblemFile) -> List[SeriesVec]:
    gens = problem.parsed_generators()
    if gens[0].rank != 1:
        raise UsageError('this command needs an ideal (scalar generators)')
    return gens


def _std_basis(problem: ProblemFile, args: argparse.Namespace) -> Report:
    std = standard_basis(problem.parsed_generators())
    return StdBasisReport(
        generators=problem.generators,
        elements=_strs(std.elements),
        certified=std.certified,
        vertices=std.diagram().vertex_list(),
    )


def _diagram(problem: ProblemFile, args: argparse.Namespace) -> Report:
    D = standard_basis(problem.parsed_generators()).diagram()
    eta_max = args.eta_max if args.eta_max is not None else problem.options.eta_max
    outside = None if eta_max is None else D.exponent_list(D.complement(eta_max))
    return DiagramReport(n=D.n, p=D.p, vertices=D.vertex_list(), max_degree=D.max_degree(), outside=outside)


def _hilbert(problem: ProblemFile, args: argparse.Namespace) -> Report:
    D = standard_basis(_ideal(problem)).diagram()
    hs = hs_polynomial(D)
    eta_max = args.eta_max if args.eta_max is not None else problem.options.eta_max
    if eta_max is None:
        eta_max = len(hs.values) - 1
    return HilbertReport(
        values=[hs.evaluate(e) for e in range(eta_max + 1)],
        polynomial=hs.format_polynomial(),
        poly_coeffs=[str(c) for c in hs.poly_coeffs],
        stab=hs.stab,
        dim=hs.dim,
        multiplicity=hs.multiplicity,
    )


def _resolve(problem: ProblemFile, args: argparse.Namespace) -> Report:
    res = build_resolution(problem.parsed_generators())
    return ResolveReport(
        ranks=list(res.ranks),
        length=res.length,
        minimal=res.is_minimal(),
        matrices=[[_strs(row) for row in mat.entries] for mat in res.matrices()],
    )


def _betti(problem: ProblemFile, args: argparse.Namespace) -> Report:
    gens = problem.parsed_generators()
    if gens[0].rank == 1:
        table = ring_report(gens).betti
        return BettiReport(betti=list(table.betti), pd=table.pd, quotient=True)
    report = module_report(gens)
    return BettiReport(betti=list(report.betti.betti), pd=report.betti.pd, quotient=False)


def _ring_report(problem: ProblemFile, args: argparse.Namespace) -> Report:
    return RingReportModel.from_report(ring_report(_ideal(problem)))


def _flat_check(problem: ProblemFile, args: argparse.Namespace) -> Report:
    if problem.map_images is None:
        raise UsageError('flat-check needs "map_images" in the problem file')
    report = flatness_check(_ideal(problem), MapSpec(tuple(problem.parsed_map_images())))
    return FlatReport(
        flat=report.flat,
        m=report.m,
        dim_total=report.dim_total,
        dim_fibre=report.dim_fibre,
        fibre=RingReportModel.from_report(report.fibre),
    )


def _mu(problem: ProblemFile, args: argparse.Namespace, command: str) -> int:
    mu = args.mu if args.mu is not None else problem.options.mu
    if mu is None:
        raise UsageError(f'{command} needs --mu')
    return mu


def _truncate(problem: ProblemFile, args: argparse.Namespace) -> Report:
    mu = _mu(problem, args, 'truncate')
    mu_max = args.mu_max if args.mu_max is not None else problem.options.mu_max
    gens = problem.parsed_generators()
    truncated = _strs([g.jet(mu) for g in gens])
    if gens[0].rank > 1:
        module = compare_module_truncation(gens, mu, mu_max)
        return ModuleTruncateReport(
            mu=module.mu,
            all_equal=module.all_equal,
            diagram_equal=module.diagram_equal,
            betti_equal=module.betti_equal,
            candidate_mu0=module.candidate_mu0,
            empirical_mu0=module.empirical_mu0,
            truncated=truncated,
            original_vertices=[list(v) for v in module.original_vertices],
            truncated_vertices=[list(v) for v in module.truncated_vertices],
            original_betti=list(module.original_betti),
            truncated_betti=list(module.truncated_betti),
            resolution_jets=list(module.resolution_jets.jets_equal),
        )
    report = compare_truncation(gens, mu, mu_max)
    return TruncateReport(
        mu=report.mu,
        all_equal=report.all_equal,
        diagram_equal=report.diagram_equal,
        hs_equal=report.hs_equal,
        betti_equal=report.betti_equal,
        dim_equal=report.dim_equal,
        cm_equal=report.cm_equal,
        candidate_mu0=report.candidate_mu0,
        empirical_mu0=report.empirical_mu0,
        truncated=truncated,
        original_vertices=[list(v) for v in report.original_vertices],
        truncated_vertices=[list(v) for v in report.truncated_vertices],
        original_betti=list(report.original_betti),
        truncated_betti=list(report.truncated_betti),
        resolution_jets=list(report.resolution_jets.jets_equal),
    )


def _flat_truncate(problem: ProblemFile, args: argparse.Namespace) -> Report:
    mu = _mu(problem, args, 'flat-truncate')
    if problem.map_images is None:
        raise UsageError('flat-truncate needs "map_images" in the problem file')
    I = _ideal(problem)
    report = compare_flat_truncation(I, MapSpec(tuple(problem.parsed_map_images())), mu)
    return FlatTruncateReport(
        mu=report.mu,
        all_equal=report.all_equal,
        flat=report.flat,
        truncated_flat=report.truncated_flat,
        total_hs_equal=report.total_hs_equal,
        total_betti_equal=report.total_betti_equal,
        fibre_hs_equal=report.fibre_hs_equal,
        fibre_betti_equal=report.fibre_betti_equal,
        truncated=_strs([g.jet(mu) for g in I]),
        truncated_images=_strs(report.truncated_images),
    )


def _mu0_scan(problem: ProblemFile, args: argparse.Namespace) -> Report:
    mu_max = args.mu_max if args.mu_max is not None else problem.options.mu_max
    if mu_max is None:
        raise UsageError('mu0-scan needs --mu-max')
    I = _ideal(problem)
    candidate = candidate_mu0(I)
    empirical = empirical_mu0(I, mu_max)
    return Mu0ScanReport(
        mu_max=mu_max,
        candidate_mu0=candidate,
        empirical_mu0=empirical,
        bound_holds=empirical is not None and empirical <= candidate,
    )


Command = Callable[[ProblemFile, argparse.Namespace], Report]

COMMANDS: Dict[str, Command] = {
    'std-basis': _std_basis,
    'diagram': _diagram,
    'hilbert': _hilbert,
    'resolve': _resolve,
    'betti': _betti,
    'ring-report': _ring_report,
    'flat-check': _flat_check,
    'truncate': _truncate,
    'flat-truncate': _flat_truncate,
    'mu0-scan': _mu0_scan,
}


def get_command(name: str) -> Command:
    try:
        return COMMANDS[name]
    except KeyError:
        raise UsageError(f'unknown command {name!r}; expected one of {sorted(COMMANDS)!r}') from None


def _check_size(problem: ProblemFile, allow_large: bool) -> None:
    n = len(problem.variables)
    gens = problem.parsed_generators() + problem.parsed_map_images()
    degree = max((g.max_degree() for g in gens if g), default=0)
    cfg = config.cfg
    too_big = []
    if n > cfg.max_variables:
        too_big.append(f'{n} variables (cap {cfg.max_variables})')
    if degree > cfg.max_degree:
        too_big.append(f'degree {degree} (cap {cfg.max_degree})')
    if not too_big:
        return
    if not allow_large:
        raise UsageError(f'problem too large: {", ".join(too_big)}; pass --allow-large to run anyway')
    warnings.warn(f'running a large problem: {", ".join(too_big)}', LargeProblemWarning)


def run_command(cmd: str, problem: ProblemFile, args: Optional[argparse.Namespace] = None) -> Report:
    """Run one subcommand on a validated problem and return its report."""
    if args is None:
        args = argparse.Namespace(eta_max=None, mu=None, mu_max=None, allow_large=False)
    _check_size(problem, args.allow_large)
    return get_command(cmd)(problem, args)


########################################################################################################################
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument('problem', nargs='?', help='problem file (JSON)')
    common.add_argument('--catalog', metavar='NAME', help='run on a packaged catalog entry instead of a file')
    common.add_argument('--field', help='override the field: "q" or "zp:<prime>"')
    common.add_argument('--json', action='store_true', help='emit canonical JSON')
    common.add_argument('--allow-large', action='store_true', help='lift the size caps')
    common.add_argument('--max-workers', type=int, help='worker threads for parallel scans')
    common.add_argument('--eta-max', type=int, help='last eta reported by hilbert and diagram')
    common.add_argument('--mu', type=int, help='truncation order for truncate and flat-truncate')
    common.add_argument('--mu-max', type=int, help='largest truncation order scanned')

    parser = _ArgumentParser(prog='psmod', description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    listing = sub.add_parser('catalog', help='list the packaged worked catalog')
    listing.add_argument('--json', action='store_true', help='emit canonical JSON')
    return parser


def _load_problem(args: argparse.Namespace) -> ProblemFile:
    if args.catalog is not None:
        if args.problem is not None:
            raise UsageError('give either a problem file or --catalog, not both')
        entry = config.CATALOG_BY_NAME.get(args.catalog)
        if entry is None:
            names = sorted(config.CATALOG_BY_NAME)
            raise UsageError(f'unknown catalog entry {args.catalog!r}; expected one of {names!r}')
        problem = ProblemFile.from_catalog(entry)
    elif args.problem is None:
        raise UsageError('a problem file (or --catalog NAME) is required')
    else:
        try:
            problem = ProblemFile.from_file(args.problem)
        except OSError as exc:
            raise UsageError(f'cannot read {args.problem!r}: {exc.strerror}') from exc
    if args.field is not None:
        problem = ProblemFile.from_text(json.dumps({**problem.model_dump(), 'field': args.field}))
    return problem


def _catalog_listing() -> Report:
    return CatalogListing(
        entries=[
            {'name': e['name'], 'variables': e['variables'], 'generators': e['generators']} for e in config.CATALOG
        ]
    )


def _run(argv: Optional[Sequence[str]]) -> str:
    args = build_parser().parse_args(argv)
    if args.command == 'catalog':
        report = _catalog_listing()
    else:
        if args.max_workers is not None:
            if args.max_workers < 1:
                raise UsageError(f'--max-workers must be >= 1, got {args.max_workers}')
            config.cfg = config.cfg._replace(max_workers=args.max_workers)
        report = run_command(args.command, _load_problem(args), args)
    return report.to_json() if args.json else report.to_text()


def main(argv: Optional[Sequence[str]] = None) -> int:
    saved = config.cfg
    code = 0
    output = ''
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        try:
            output = _run(argv)
        except PsmodError as exc:
            print(f'psmod: error: {exc}', file=sys.stderr)
            code = exc.exit_code
        except ValidationError as exc:
            print(f'psmod: error: {exc.errors()[0]["msg"]}', file=sys.stderr)
            code = ParseError.exit_code
        except Exception as exc:
            print(f'psmod: error: internal error: {exc!r}', file=sys.stderr)
            code = IntegrityError.exit_code
        finally:
            config.cfg = saved

    for w in caught:
        print(f'psmod: warning: {w.message}', file=sys.stderr)
    if code == 0:
        print(output)
    return code


if __name__ == '__main__':
    sys.exit(main())

"""The command-line surface: commands, JSON output and exit codes."""

import json
from pathlib import Path
from typing import Any, List, Tuple

import pytest
from pytest import CaptureFixture, MonkeyPatch

from psmod import config
from psmod.cli import COMMANDS, DiagramReport, get_command, main, run_command
from psmod.errors import IntegrityError, UsageError
from psmod.problem import ProblemFile


def _write(tmp_path: Path, **doc: Any) -> str:
    path = tmp_path / 'problem.json'
    path.write_text(json.dumps({'field': 'q', 'variables': ['x', 'y'], **doc}), encoding='utf-8')
    return str(path)


def _run(capsys: CaptureFixture[str], argv: List[str]) -> Tuple[int, str, str]:
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json(capsys: CaptureFixture[str], argv: List[str]) -> Any:
    code, out, err = _run(capsys, [*argv, '--json'])
    assert code == 0, err
    return json.loads(out)


def test_catalog_listing(capsys: CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, ['catalog'])
    assert code == 0
    assert 'cusp-and-node' in out
    doc = _json(capsys, ['catalog'])
    assert len(doc['entries']) == 6


def test_std_basis(capsys: CaptureFixture[str]) -> None:
    doc = _json(capsys, ['std-basis', '--catalog', 'cusp-and-node'])
    assert doc['elements'] == ['x^2 + y^3', 'x*y', 'y^4']
    assert doc['certified'] is True
    assert sorted(doc['vertices']) == [[0, 4], [1, 1], [2, 0]]


def test_diagram_of_a_module(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    doc = _json(capsys, ['diagram', _write(tmp_path, generators=['[x, y]', '[y, 0]'])])
    assert doc['p'] == 2
    assert sorted(doc['vertices']) == [[0, 1, 1], [0, 2, 2], [1, 0, 1]]
    assert doc['outside'] is None


def test_diagram_lists_the_exponents_outside_the_staircase(capsys: CaptureFixture[str]) -> None:
    doc = _json(capsys, ['diagram', '--catalog', 'line-with-embedded-point', '--eta-max', '2'])
    assert doc['outside'] == [[0, 0], [0, 1], [1, 0], [0, 2]]


def test_hilbert(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    path = _write(tmp_path, generators=['x^2'])
    doc = _json(capsys, ['hilbert', path, '--eta-max', '5'])
    assert doc['values'] == [1, 3, 5, 7, 9, 11]
    assert doc['polynomial'] == '2*eta + 1'
    assert doc['dim'] == 1
    assert doc['multiplicity'] == 2


def test_hilbert_uses_the_problem_options(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    path = _write(tmp_path, generators=['x^2 + y^3', 'x*y'], options={'eta_max': 3})
    assert _json(capsys, ['hilbert', path])['values'] == [1, 3, 4, 5]


def test_resolve(capsys: CaptureFixture[str]) -> None:
    doc = _json(capsys, ['resolve', '--catalog', 'maximal-ideal-squared'])
    assert doc['ranks'] == [3, 2]
    assert doc['minimal'] is True
    assert doc['matrices'][0] == [['x^2', 'x*y', 'y^2']]


def test_betti(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    assert _json(capsys, ['betti', '--catalog', 'line-with-embedded-point'])['betti'] == [1, 2, 1]
    doc = _json(capsys, ['betti', _write(tmp_path, generators=['[x, y]', '[y, 0]'])])
    assert doc == {'betti': [2], 'pd': 0, 'quotient': False}


def test_ring_report(capsys: CaptureFixture[str]) -> None:
    doc = _json(capsys, ['ring-report', '--catalog', 'node'])
    assert doc['betti'] == [1, 1]
    assert doc['cm'] is True
    assert doc['gorenstein'] is True
    assert doc['cm_type'] == 1
    assert doc['vertices'] == [[1, 1]]
    code, out, _ = _run(capsys, ['ring-report', '--catalog', 'maximal-ideal-squared'])
    assert code == 0
    assert 'Cohen-Macaulay: True (type 2)' in out


@pytest.mark.parametrize(('name', 'flat'), [('parabola-over-line', True), ('node', False)])
def test_flat_check(capsys: CaptureFixture[str], name: str, flat: bool) -> None:
    assert _json(capsys, ['flat-check', '--catalog', name])['flat'] is flat


def test_truncate(capsys: CaptureFixture[str]) -> None:
    doc = _json(capsys, ['truncate', '--catalog', 'cusp-and-node', '--mu', '2'])
    assert doc['all_equal'] is False
    assert doc['truncated'] == ['x^2', 'x*y']
    assert doc['candidate_mu0'] == 4
    assert doc['empirical_mu0'] == 3
    assert doc['resolution_jets'] == [True, False]


def test_truncate_a_module(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    path = _write(tmp_path, generators=['[x, y^2]', '[y, 0]'])
    doc = _json(capsys, ['truncate', path, '--mu', '1'])
    assert doc['truncated'] == ['[x, 0]', '[y, 0]']
    assert doc['betti_equal'] is False
    assert (doc['candidate_mu0'], doc['empirical_mu0']) == (3, 2)
    assert 'hs_equal' not in doc


def test_flat_truncate(capsys: CaptureFixture[str]) -> None:
    doc = _json(capsys, ['flat-truncate', '--catalog', 'parabola-over-line', '--mu', '1'])
    assert doc['flat'] is True
    assert doc['truncated_flat'] is False
    assert doc['truncated'] == ['-y']
    code, _, err = _run(capsys, ['flat-truncate', '--catalog', 'line-with-embedded-point', '--mu', '1'])
    assert code == 1
    assert 'map_images' in err


def test_mu0_scan(capsys: CaptureFixture[str]) -> None:
    doc = _json(capsys, ['mu0-scan', '--catalog', 'cusp-and-node', '--mu-max', '6'])
    assert doc == {'mu_max': 6, 'candidate_mu0': 4, 'empirical_mu0': 3, 'bound_holds': True}


def test_json_output_is_byte_identical(capsys: CaptureFixture[str]) -> None:
    argv = ['resolve', '--catalog', 'cusp-and-node', '--json', '--max-workers', '3']
    first = _run(capsys, argv)
    second = _run(capsys, argv)
    assert first == second
    assert first[0] == 0


def test_json_keys_are_sorted(capsys: CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, ['ring-report', '--catalog', 'node', '--json'])
    assert code == 0
    doc = json.loads(out)
    assert list(doc) == sorted(doc)
    assert out.rstrip('\n') == json.dumps(doc, sort_keys=True, indent=2)


def test_field_override(capsys: CaptureFixture[str]) -> None:
    assert _json(capsys, ['ring-report', '--catalog', 'node', '--field', 'zp:7'])['betti'] == [1, 1]
    code, _, err = _run(capsys, ['ring-report', '--catalog', 'node', '--field', 'zp:8'])
    assert code == 1
    assert err.startswith('psmod: error:')


@pytest.mark.parametrize(
    ('argv', 'code', 'message'),
    [
        ([], 1, 'psmod: error:'),
        (['nope'], 1, 'invalid choice'),
        (['diagram'], 1, 'problem file'),
        (['diagram', '--catalog', 'nope'], 1, 'unknown catalog entry'),
        (['diagram', '/no/such/problem.json'], 1, 'cannot read'),
        (['flat-check', '--catalog', 'line-with-embedded-point'], 1, 'map_images'),
        (['truncate', '--catalog', 'node'], 1, 'needs --mu'),
        (['flat-truncate', '--catalog', 'parabola-over-line'], 1, 'needs --mu'),
        (['diagram', '--catalog', 'node', '--max-workers', '0'], 1, 'max-workers'),
    ],
)
def test_usage_errors(capsys: CaptureFixture[str], argv: List[str], code: int, message: str) -> None:
    got, out, err = _run(capsys, argv)
    assert got == code
    assert out == ''
    assert message in err


def test_file_and_catalog_are_exclusive(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    code, _, err = _run(capsys, ['diagram', _write(tmp_path, generators=['x']), '--catalog', 'node'])
    assert code == 1
    assert 'not both' in err


def test_parse_errors_exit_with_two(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    code, out, err = _run(capsys, ['diagram', _write(tmp_path, generators=['x + z'])])
    assert code == 2
    assert out == ''
    assert 'unknown variable z (line 1, column 5)' in err


def test_precondition_errors_exit_with_three(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    path = _write(tmp_path, generators=['x^2', 'x*y'], map_images=['y'])
    code, _, err = _run(capsys, ['flat-check', path])
    assert code == 3
    assert 'needs CM' in err
    code, _, _ = _run(capsys, ['ring-report', _write(tmp_path, generators=['x', '1 + y'])])
    assert code == 3


def test_integrity_errors_exit_with_four(monkeypatch: MonkeyPatch, capsys: CaptureFixture[str]) -> None:
    def broken(problem: ProblemFile, args: Any) -> DiagramReport:
        raise IntegrityError('phi_0 * phi_1 is not zero')

    monkeypatch.setitem(COMMANDS, 'diagram', broken)
    code, _, err = _run(capsys, ['diagram', '--catalog', 'node'])
    assert code == 4
    assert 'phi_0 * phi_1 is not zero' in err


def test_unexpected_errors_exit_with_four(monkeypatch: MonkeyPatch, capsys: CaptureFixture[str]) -> None:
    def broken(problem: ProblemFile, args: Any) -> DiagramReport:
        raise RuntimeError('boom')

    monkeypatch.setitem(COMMANDS, 'diagram', broken)
    code, out, err = _run(capsys, ['diagram', '--catalog', 'node'])
    assert code == 4
    assert 'internal error' in err
    assert 'boom' in err
    assert out == ''


def test_size_caps(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    path = _write(tmp_path, variables=['x'], generators=['x^17'])
    code, _, err = _run(capsys, ['diagram', path])
    assert code == 1
    assert 'too large' in err
    code, out, err = _run(capsys, ['diagram', path, '--allow-large'])
    assert code == 0
    assert 'psmod: warning: running a large problem' in err
    assert '(17,)' in out


def test_settings_are_restored(capsys: CaptureFixture[str]) -> None:
    before = config.cfg
    _run(capsys, ['diagram', '--catalog', 'node', '--max-workers', '2'])
    assert config.cfg is before


def test_run_command_directly() -> None:
    report = run_command('diagram', ProblemFile.from_catalog(config.CATALOG_BY_NAME['node']))
    assert isinstance(report, DiagramReport)
    assert report.vertices == [[1, 1]]
    with pytest.raises(UsageError, match='unknown command'):
        get_command('nope')

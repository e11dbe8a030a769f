import csv
import io
import json

import pytest
from click.testing import CliRunner
from pydantic import ValidationError

from thetaparity.campaign.runner import run_campaign, trial_seed
from thetaparity.campaign.schemas import CampaignConfig, parse_range
from thetaparity.campaign.writers import CSV_COLUMNS, render_report, report_to_csv, write_report
from thetaparity.core.constants import CampaignCommands, ExitCodes, FieldKinds
from thetaparity.core.exceptions.algebra_exceptions import InvalidLattice, UsageError
from thetaparity.main import cli

SMALL_PAIRS = {'r_range': '1:2', 'precision': 3, 'k_max': 3}


def small_config(command: str, **overrides) -> CampaignConfig:
    values = {'command': command, 'trials': 3, 'seed': 11}
    if command in (CampaignCommands.ISOTROPIC, CampaignCommands.TORSION):
        values.update(SMALL_PAIRS)
    if command == CampaignCommands.SKEW:
        values.update(q_range='1:4', k_max=3)
    if command == CampaignCommands.BASE_CHANGE:
        values.update(rank_max=3, degree_max=2, k_max=3)
    values.update(overrides)
    return CampaignConfig(**values)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False)


def test_parse_range():
    assert parse_range('1:6') == (1, 6)
    assert parse_range('3') == (3, 3)
    assert parse_range(4) == (4, 4)
    with pytest.raises(ValueError):
        parse_range('1-6')


@pytest.mark.parametrize('overrides', [
    {'q_range': '5:2'},
    {'q_range': '0:2'},
    {'prime': 2},
    {'prime': 15},
    {'trials': 0},
    {'seed': 2 ** 64},
    {'only_trial': 3},
    {'mode': 'unknown'},
    {'field': 'complex'},
])
def test_config_rejects_bad_values(overrides):
    with pytest.raises(ValidationError):
        small_config(CampaignCommands.SKEW, **overrides)


def test_config_rejects_k_max_above_precision():
    with pytest.raises(ValidationError):
        small_config(CampaignCommands.ISOTROPIC, k_max=4)


def test_config_rational_field_drops_prime():
    config = small_config(CampaignCommands.SKEW, field=FieldKinds.RATIONAL)
    assert config.prime is None


def test_trial_indices():
    assert small_config(CampaignCommands.SKEW).trial_indices() == [0, 1, 2]
    assert small_config(CampaignCommands.SKEW, only_trial=1).trial_indices() == [1]
    assert small_config(CampaignCommands.COUNTEREXAMPLE).trial_indices() == [0]
    assert small_config(CampaignCommands.COUNTEREXAMPLE, random=True).trial_indices() == [0, 1, 2]


def test_trial_seed_is_deterministic():
    assert trial_seed(20240517, 3) == trial_seed(20240517, 3)
    assert trial_seed(20240517, 3) != trial_seed(20240517, 4)
    assert trial_seed(20240517, 3) != trial_seed(20240518, 3)
    assert 0 <= trial_seed(2 ** 64 - 1, 0) < 2 ** 64


@pytest.mark.parametrize('command', [
    CampaignCommands.SKEW,
    CampaignCommands.ISOTROPIC,
    CampaignCommands.TORSION,
    CampaignCommands.BASE_CHANGE,
])
def test_small_campaigns_pass(command):
    report = run_campaign(small_config(command))
    assert report.passed
    assert report.summary.trials == 3
    assert [record.trial for record in report.records] == [0, 1, 2]
    assert all(record.counterexample is None for record in report.records)
    assert report.summary.statistics['property_failures'] == {}


def test_isotropic_campaign_records():
    report = run_campaign(small_config(CampaignCommands.ISOTROPIC, field=FieldKinds.RATIONAL, trials=2))
    assert report.passed
    for record in report.records:
        d = record.sequences['d']
        assert len(d) == 3
        assert all(x % 2 == 0 for x in d)
        assert d == sorted(d)
        assert record.properties['model_kernel']
    assert set(report.summary.statistics) >= {'m1_even', 'm1_odd', 'q1_minus_q0_even', 'q1_minus_q0_odd'}


@pytest.mark.parametrize('mode', ['mu-param', 'cayley'])
def test_isotropic_campaign_with_default_sizes_is_fast(mode):
    config = CampaignConfig(command=CampaignCommands.ISOTROPIC, mode=mode, trials=40, seed=3)
    assert (config.r_range, config.precision, config.k_max) == ((1, 6), 6, 6)
    report = run_campaign(config)
    assert report.passed
    assert report.summary.wall_time_seconds < 15


def test_torsion_campaign_reaches_deep_exponents():
    report = run_campaign(small_config(CampaignCommands.TORSION, r_range='2:5', precision=4, k_max=4, trials=30))
    assert report.passed
    assert report.summary.statistics['max_exponent'] >= 2


def test_cayley_campaign_has_nonzero_d():
    report = run_campaign(small_config(CampaignCommands.ISOTROPIC, mode='cayley', r_range='2:4', trials=10))
    assert report.passed
    assert any(record.sequences['d'][-1] > 0 for record in report.records)


def test_instance_fault_is_recorded_as_trial_failure(monkeypatch):
    def broken(*args, **kwargs):
        raise InvalidLattice('Решётка не изотропна')

    monkeypatch.setattr('thetaparity.campaign.runner.random_isotropic_pair', broken)
    report = run_campaign(small_config(CampaignCommands.ISOTROPIC, trials=2))
    assert not report.passed
    assert report.summary.failures == 2
    assert all(record.counterexample['error'] == 'InvalidLattice' for record in report.records)


def test_campaign_is_reproducible():
    config = small_config(CampaignCommands.ISOTROPIC, mode='cayley', trials=2)
    first = run_campaign(config).without_timing().model_dump_json()
    second = run_campaign(config).without_timing().model_dump_json()
    assert first == second


def test_only_trial_reproduces_record():
    full = run_campaign(small_config(CampaignCommands.BASE_CHANGE, trials=4))
    single = run_campaign(small_config(CampaignCommands.BASE_CHANGE, trials=4, only_trial=2))
    assert single.records == [full.records[2]]


def test_workers_do_not_change_results():
    config = small_config(CampaignCommands.SKEW, trials=4)
    pooled = config.model_copy(update={'workers': 2})
    assert run_campaign(config).records == run_campaign(pooled).records


def test_counterexample_campaign():
    report = run_campaign(small_config(CampaignCommands.COUNTEREXAMPLE))
    record = report.records[0]
    assert report.passed
    assert record.sequences['image_dim'] == 3
    assert record.sequences['parity'] == 'ODD'
    assert all(r % 2 == 0 for r in record.sequences['contrast_r'])

    zero = run_campaign(small_config(CampaignCommands.COUNTEREXAMPLE, zero=True)).records[0]
    assert zero.sequences['image_dim'] == 0
    assert zero.sequences['parity'] == 'EVEN'


def test_counterexample_random_statistics():
    report = run_campaign(small_config(CampaignCommands.COUNTEREXAMPLE, random=True, trials=5))
    stats = report.summary.statistics
    assert report.passed
    assert stats['trials'] == 5
    assert stats['odd_image_count'] == sum(1 for r in report.records if r.sequences['image_dim'] % 2)


def test_torsion_matrix_file(tmp_path):
    path = tmp_path / 'd.txt'
    path.write_text('s; 1\n0; s\n', encoding='utf-8')
    report = run_campaign(small_config(CampaignCommands.TORSION, matrix_file=str(path)))
    record = report.records[0]
    assert record.sequences['exponents'] == [2]
    assert record.sequences['split'] is False
    assert record.sequences['h1'] == [1, 2, 2]
    assert report.passed


def test_torsion_matrix_file_ignores_precision(tmp_path):
    path = tmp_path / 'd.txt'
    path.write_text('s; 1\n0; s\n', encoding='utf-8')
    config = small_config(CampaignCommands.TORSION, matrix_file=str(path), k_max=5, precision=3)
    report = run_campaign(config)
    assert report.records[0].sequences['h1'] == [1, 2, 2, 2, 2]
    assert report.passed
    with pytest.raises(ValidationError):
        small_config(CampaignCommands.TORSION, k_max=5, precision=3)


def test_torsion_matrix_file_errors_propagate(tmp_path):
    path = tmp_path / 'bad.txt'
    path.write_text('s; x\n', encoding='utf-8')
    with pytest.raises(UsageError):
        run_campaign(small_config(CampaignCommands.TORSION, matrix_file=str(path)))


def test_csv_writer():
    report = run_campaign(small_config(CampaignCommands.SKEW))
    rows = list(csv.reader(io.StringIO(report_to_csv(report))))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 1 + 3 + 1
    assert rows[-1][0] == 'summary'
    assert json.loads(rows[1][4])['r']


def test_write_report(tmp_path):
    report = run_campaign(small_config(CampaignCommands.SKEW))
    path = tmp_path / 'out' / 'report.json'
    write_report(report, path)
    assert json.loads(path.read_text(encoding='utf-8'))['summary']['failures'] == 0
    with pytest.raises(UsageError):
        render_report(report, 'xml')


def test_cli_counterexample(runner):
    result = runner.invoke(cli, ['--log-level', 'ERROR', 'counterexample'])
    assert result.exit_code == ExitCodes.OK
    report = json.loads(result.stdout)
    assert report['records'][0]['sequences']['image_dim'] == 3


def test_cli_skew_writes_csv(runner, tmp_path):
    out = tmp_path / 'skew.csv'
    result = runner.invoke(cli, [
        '--log-level', 'ERROR', 'skew', '--q-range', '1:3', '--k-max', '3', '--trials', '4',
        '--format', 'csv', '--out', str(out),
    ])
    assert result.exit_code == ExitCodes.OK
    assert out.read_text(encoding='utf-8').startswith(','.join(CSV_COLUMNS))


def test_cli_base_change_defaults(runner, tmp_path):
    out = tmp_path / 'bc.json'
    result = runner.invoke(cli, [
        '--log-level', 'ERROR', 'base-change', '--trials', '3', '--rank-max', '2', '--out', str(out),
    ])
    assert result.exit_code == ExitCodes.OK
    assert json.loads(out.read_text(encoding='utf-8'))['config']['trials'] == 3


@pytest.mark.parametrize('args', [
    ['isotropic', '--r-range', '0:2'],
    ['skew', '--q-range', '3:1'],
    ['skew', '--prime', '9'],
    ['isotropic', '--k-max', '7', '--precision', '3'],
])
def test_cli_usage_errors(runner, args):
    result = runner.invoke(cli, ['--log-level', 'ERROR', *args])
    assert result.exit_code == ExitCodes.USAGE


def test_cli_malformed_matrix_file(runner, tmp_path):
    path = tmp_path / 'bad.txt'
    path.write_text('1; s\n1\n', encoding='utf-8')
    result = runner.invoke(cli, ['--log-level', 'ERROR', 'torsion', '--matrix-file', str(path)])
    assert result.exit_code == ExitCodes.USAGE
    assert result.stdout == ''

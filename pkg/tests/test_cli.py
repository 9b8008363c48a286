"""
Тесты интерфейса командной строки
Проверяют формат отчётов, коды завершения и однострочные сообщения об ошибках
"""
import csv
import json
import math

import pytest

from app import cli
from config import Config
from repositories.instance_repository import InstanceRepository
from seed import get_builtin


def _records(output):
    return [json.loads(line) for line in output.splitlines() if line.strip()]


def test_help(runner):
    """Справка перечисляет все команды"""
    result = runner.invoke(cli, ['--help'])

    assert result.exit_code == 0
    for name in ('verify-duality', 'verify-gap', 'counterexample', 'sweep', 'figure'):
        assert name in result.output


def test_verify_duality_builtin(runner):
    """fig1: по записи на каждую из трёх хорд, для хорды (1, i) сумма 5π/4"""
    result = runner.invoke(cli, ['verify-duality', '--builtin', 'fig1'])

    assert result.exit_code == 0, result.stderr
    records = _records(result.stdout)
    assert len(records) == 3
    first = next(record for record in records if record['chord_index'] == 0)
    assert first['angle_sum'] == pytest.approx(5 * math.pi / 4, abs=1e-10)
    assert first['rhs'] == pytest.approx(5 * math.pi / 4)
    assert first['instance'] == 'fig1'
    assert all(record['residual'] <= Config.DUALITY_RESIDUAL for record in records)


def test_verify_duality_single_chord(runner):
    """--chord выбирает одну хорду, неверный номер даёт ошибку"""
    result = runner.invoke(cli, ['verify-duality', '--builtin', 'fig1', '--chord', '2'])
    assert result.exit_code == 0
    assert [record['chord_index'] for record in _records(result.stdout)] == [2]

    result = runner.invoke(cli, ['verify-duality', '--builtin', 'fig1', '--chord', '3'])
    assert result.exit_code == 1
    assert result.stderr.startswith('error: index-out-of-range:')


def test_verify_duality_instance_file(runner, tmp_path, output_dir):
    """Экземпляры из файла, отчёт в файл"""
    instances = [get_builtin('fig3')['instance'], get_builtin('sendov')['instance']]
    path = tmp_path / 'instances.jsonl'
    InstanceRepository.save(path, instances)
    out = output_dir / 'duality.jsonl'

    result = runner.invoke(cli, ['verify-duality', '--instance', str(path), '--out', str(out)])

    assert result.exit_code == 0, result.stderr
    assert result.stdout == ''
    records = _records(out.read_text(encoding='utf-8'))
    # fig3: две хорды, sendov: три хорды
    assert len(records) == 5
    assert {record['instance'] for record in records} == {'fig3', 'sendov'}


def test_verify_duality_zero_weight(runner):
    """Нулевой вес: ошибка положительности и код 1"""
    result = runner.invoke(cli, ['verify-duality', '--builtin', 'zero-weight'])

    assert result.exit_code == 1
    assert result.stderr.startswith('error: positivity-required:')


@pytest.mark.parametrize('args', [
    ['verify-duality'],
    ['verify-duality', '--instance', 'instances.jsonl', '--builtin', 'fig1'],
    ['verify-duality', '--builtin', 'fig7'],
    ['no-such-command'],
])
def test_usage_errors(runner, args):
    """Ошибки использования: одна строка в stderr и код 1"""
    result = runner.invoke(cli, args)

    assert result.exit_code == 1
    assert result.stderr.startswith('error: usage:')
    assert len(result.stderr.strip().splitlines()) == 1


def test_missing_instance_file(runner, tmp_path):
    """Отсутствующий файл: ошибка ввода-вывода"""
    result = runner.invoke(cli, ['verify-duality', '--instance', str(tmp_path / 'missing.jsonl')])

    assert result.exit_code == 1
    assert result.stderr.startswith('error: io:')


def test_invalid_instance_file(runner, tmp_path):
    """Некорректный экземпляр: ошибка конфигурации с номером строки"""
    path = tmp_path / 'bad.jsonl'
    path.write_text('{"zeros": [{"angle": 7.0, "multiplicity": 0}, {"angle": 1.0}]}\n', encoding='utf-8')

    result = runner.invoke(cli, ['verify-duality', '--instance', str(path)])

    assert result.exit_code == 1
    assert result.stderr.startswith('error: invalid-configuration:')
    assert ':1:' in result.stderr


def test_instance_file_with_unreduced_angles(runner, tmp_path):
    """Углы вне [0, 2π) в произвольном порядке приводятся, совпадающие сливаются"""
    path = tmp_path / 'raw.jsonl'
    path.write_text('{"zeros": [{"angle": 7.0}, {"angle": -1.0}, {"angle": 3.0}, {"angle": 3.0}]}\n',
                    encoding='utf-8')

    result = runner.invoke(cli, ['verify-duality', '--instance', str(path)])

    assert result.exit_code == 0, result.stderr
    records = _records(result.stdout)
    assert len(records) == 3
    assert all(record['residual'] <= Config.DUALITY_RESIDUAL for record in records)


def test_duality_assertion_exit_code(runner, monkeypatch):
    """Превышение допуска невязки завершается кодом 2"""
    monkeypatch.setattr(Config, 'DUALITY_RESIDUAL', -1.0)

    result = runner.invoke(cli, ['verify-duality', '--builtin', 'fig1'])

    assert result.exit_code == 2
    assert result.stderr.startswith('assertion-failed: duality-residual:')


def test_verify_gap_builtin(runner):
    """fig2 при ε = 1/4: оба корня внутри круга |u| < 3/4, G = π"""
    result = runner.invoke(cli, ['verify-gap', '--builtin', 'fig2', '--epsilon', '0.25'])

    assert result.exit_code == 0, result.stderr
    [record] = _records(result.stdout)
    assert record['interior_count'] == 2
    assert record['max_gap'] == pytest.approx(math.pi)
    assert record['bound'] == pytest.approx(16.0)
    assert record['satisfied'] is True
    assert record['intermediate_holds'] is True
    assert record['slack'] == pytest.approx(14.0)


def test_verify_gap_default_epsilons(runner):
    """Без --epsilon используется набор из конфигурации"""
    result = runner.invoke(cli, ['verify-gap', '--builtin', 'fig3'])

    assert result.exit_code == 0, result.stderr
    assert [record['epsilon'] for record in _records(result.stdout)] == list(Config.SWEEP_EPSILONS)


@pytest.mark.parametrize('epsilon, prefix', [
    ('1.5', 'error: invalid-configuration:'),
    ('0', 'error: invalid-configuration:'),
    ('abc', 'error: usage:'),
])
def test_verify_gap_invalid_epsilon(runner, epsilon, prefix):
    """ε вне (0, 1) отклоняется"""
    result = runner.invoke(cli, ['verify-gap', '--builtin', 'fig2', '--epsilon', epsilon])

    assert result.exit_code == 1
    assert result.stderr.startswith(prefix)


def test_counterexample_zero_weight(runner):
    """Нулевой вес: сумма углов 3π/4 вместо 5π/4"""
    result = runner.invoke(cli, ['counterexample', 'zero-weight'])

    assert result.exit_code == 0, result.stderr
    [record] = _records(result.stdout)
    assert record['identity_fails'] is True
    assert record['angle_sum'] == pytest.approx(3 * math.pi / 4, abs=1e-9)
    assert record['rhs'] == pytest.approx(5 * math.pi / 4)


def test_counterexample_sendov(runner):
    """L_λ = u² + 0.7u + 0.7, корни дальше 1 от нуля u = 1"""
    result = runner.invoke(cli, ['counterexample', 'sendov'])

    assert result.exit_code == 0, result.stderr
    [record] = _records(result.stdout)
    assert record['coefficients'] == [
        [pytest.approx(0.7), pytest.approx(0.0, abs=1e-14)],
        [pytest.approx(0.7), pytest.approx(0.0, abs=1e-14)],
        [1.0, 0.0],
    ]
    assert record['exceeds_one'] is True
    assert record['distances'][0]['distance'] > 1


def test_counterexample_unknown(runner):
    """Неизвестный контрпример: ошибка использования"""
    result = runner.invoke(cli, ['counterexample', 'bogus'])

    assert result.exit_code == 1
    assert result.stderr.startswith('error: usage:')


SWEEP_ARGS = ['sweep', '--count', '6', '--nmin', '2', '--nmax', '8', '--mmax', '2',
              '--epsilon', '0.1,0.25', '--seed', '3']


def test_sweep_report(runner):
    """Прогон: строка на экземпляр и итоговая строка без нарушений"""
    result = runner.invoke(cli, SWEEP_ARGS + ['--workers', '1'])

    assert result.exit_code == 0, result.stderr
    records = _records(result.stdout)
    assert [record['index'] for record in records[:-1]] == list(range(6))
    summary = records[-1]
    assert summary['summary'] is True
    assert summary['count'] == 6
    assert summary['seed'] == 3
    assert summary['violations'] == 0
    assert all(len(record['gap']) == 2 for record in records[:-1])


def test_sweep_is_deterministic(runner):
    """Одинаковые параметры дают одинаковые байты при любом числе потоков"""
    first = runner.invoke(cli, SWEEP_ARGS + ['--workers', '1'])
    second = runner.invoke(cli, SWEEP_ARGS + ['--workers', '1'])
    threaded = runner.invoke(cli, SWEEP_ARGS + ['--workers', '3'])

    assert first.exit_code == second.exit_code == threaded.exit_code == 0
    assert first.stdout == second.stdout == threaded.stdout


def test_sweep_save_instances(runner, output_dir):
    """Сохранённые экземпляры совпадают с проверенными"""
    path = output_dir / 'instances.jsonl'
    out = output_dir / 'sweep.jsonl'

    result = runner.invoke(cli, SWEEP_ARGS + ['--save-instances', str(path), '--out', str(out)])

    assert result.exit_code == 0, result.stderr
    instances = InstanceRepository.load(path)
    records = _records(out.read_text(encoding='utf-8'))
    assert [instance.index for instance in instances] == list(range(6))
    assert [record['degree'] for record in records[:-1]] == [
        instance.to_configuration().degree for instance in instances
    ]


def test_sweep_invalid_parameters(runner):
    """N_min < 2 отклоняется"""
    result = runner.invoke(cli, ['sweep', '--count', '3', '--nmin', '1'])

    assert result.exit_code == 1
    assert result.stderr.startswith('error: invalid-configuration:')


def test_figure_builtin(runner, output_dir):
    """fig1: SVG и CSV с нулями, корнями 1/3 ± i√8/6 и концами хорды"""
    out = output_dir / 'fig1.svg'

    result = runner.invoke(cli, ['figure', '--builtin', 'fig1', '--out', str(out)])

    assert result.exit_code == 0, result.stderr
    assert out.exists()
    csv_path = output_dir / 'fig1.csv'
    with open(csv_path, encoding='utf-8', newline='') as stream:
        rows = list(csv.reader(stream))
    assert rows[0] == ['kind', 'x', 'y', 'multiplicity']
    assert len(rows) == 8
    roots = {(row[1], row[2]) for row in rows if row[0] == 'root'}
    assert roots == {('0.333333333333', '0.471404520791'), ('0.333333333333', '-0.471404520791')}
    assert [row[0] for row in rows[1:]].count('zero') == 3
    assert [row[0] for row in rows[1:]].count('chord') == 2
    assert str(out) in result.stdout


def test_figure_is_deterministic(runner, output_dir):
    """Повторный рисунок побайтно совпадает"""
    first = output_dir / 'a.svg'
    second = output_dir / 'b.svg'

    runner.invoke(cli, ['figure', '--builtin', 'fig2', '--out', str(first)])
    runner.invoke(cli, ['figure', '--builtin', 'fig2', '--out', str(second)])

    assert first.read_bytes() == second.read_bytes()
    assert (output_dir / 'a.csv').read_bytes() == (output_dir / 'b.csv').read_bytes()


def test_figure_requires_out(runner):
    """--out обязательна"""
    result = runner.invoke(cli, ['figure', '--builtin', 'fig1'])

    assert result.exit_code == 1
    assert result.stderr.startswith('error: usage:')


def test_figure_chord_out_of_range(runner, output_dir):
    """Номер хорды вне диапазона"""
    result = runner.invoke(cli, ['figure', '--builtin', 'fig3', '--chord', '5',
                                 '--out', str(output_dir / 'fig3.svg')])

    assert result.exit_code == 1
    assert result.stderr.startswith('error: index-out-of-range:')


def test_figure_instance_file_defaults_to_first_chord(runner, tmp_path, output_dir):
    """Для файла экземпляров без --chord рисуется хорда 0, а не хорда наибольшего зазора"""
    path = tmp_path / 'arc.jsonl'
    path.write_text('{"zeros": [{"angle": 0.0}, {"angle": 1.0}, {"angle": 2.0}]}\n', encoding='utf-8')
    out = output_dir / 'arc.svg'

    result = runner.invoke(cli, ['figure', '--instance', str(path), '--out', str(out)])

    assert result.exit_code == 0, result.stderr
    with open(output_dir / 'arc.csv', encoding='utf-8', newline='') as stream:
        chord = [(row[1], row[2]) for row in csv.reader(stream) if row[0] == 'chord']
    assert chord == [('1', '0'), ('0.540302305868', '0.841470984808')]

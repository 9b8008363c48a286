"""
Тесты хранилищ и генерации экземпляров
Проверяют чтение и запись файлов экземпляров, канонический вывод отчётов
и воспроизводимость случайных экземпляров
"""
import json
import math

import numpy as np
import pytest

from engine import theorems
from engine.exceptions import InvalidConfigurationError
from models import InstanceSpec, SweepConfig
from repositories.instance_repository import InstanceRepository
from repositories.report_repository import ReportWriter, dumps_record, write_csv
from seed import BUILTIN_INSTANCES, generate_instance, get_builtin


def test_parse_line_defaults():
    """Кратность по умолчанию 1, веса по умолчанию uniform"""
    instance = InstanceRepository.parse_line('{"zeros": [{"angle": 0.0}, {"angle": 1.5}]}')

    assert instance.zeros == ((0.0, 1), (1.5, 1))
    assert instance.weights == 'uniform'


def test_parse_line_errors():
    """Ошибки разбора содержат место строки"""
    with pytest.raises(InvalidConfigurationError, match='f.jsonl:3'):
        InstanceRepository.parse_line('{"zeros": []}', 'f.jsonl:3')
    with pytest.raises(InvalidConfigurationError):
        InstanceRepository.parse_line('[1, 2]')
    with pytest.raises(InvalidConfigurationError):
        InstanceRepository.parse_line('{"zeros": [{"angle": 0.0}, {"angle": 1.0}], "weights": [1.0]}')
    with pytest.raises(InvalidConfigurationError):
        InstanceRepository.parse_line('{"zeros": [{"angle": 0.0}, {"angle": 1.0}], "weights": [0.4, 0.4]}')


def test_parse_line_reduces_angles():
    """Угол 2π + 0.5 приводится к 0.5"""
    instance = InstanceRepository.parse_line('{"zeros": [{"angle": 6.783185307179586}, {"angle": 2.0}]}')

    config = instance.to_configuration()

    assert config.distinct_angles[0] == pytest.approx(0.5, abs=1e-15)
    assert config.distinct_angles[1] == 2.0


@pytest.mark.parametrize('angles, expected_angles, expected_multiplicities', [
    ([1.0, 1.0, 2.0], (1.0, 2.0), (2, 1)),
    ([2.0, 1.0, 1.0], (1.0, 2.0), (2, 1)),
    ([0.0, 6.283185307179586, 3.0], (0.0, 3.0), (2, 1)),
])
def test_parse_line_merges_coincident_angles(angles, expected_angles, expected_multiplicities):
    """Совпадающие углы (в том числе 0 и 2π) сливаются в один нуль с суммарной кратностью"""
    line = json.dumps({'zeros': [{'angle': angle} for angle in angles]})

    config = InstanceRepository.parse_line(line).to_configuration()

    assert config.distinct_angles == pytest.approx(expected_angles, abs=1e-15)
    assert config.multiplicities == expected_multiplicities


def test_explicit_weights_follow_zeros_to_canonical_order():
    """Веса идут в порядке нулей файла и переставляются вместе с ними"""
    line = ('{"zeros": [{"angle": 2.0}, {"angle": 1.0, "multiplicity": 2}], '
            '"weights": [0.5, 0.2, 0.3]}')
    instance = InstanceRepository.parse_line(line)

    config = instance.to_configuration()

    assert config.distinct_angles == (1.0, 2.0)
    assert instance.to_weights(config).weights == (0.2, 0.3, 0.5)


def test_explicit_weights_of_merged_zeros():
    """Веса слитых нулей остаются в порядке их появления в файле"""
    line = ('{"zeros": [{"angle": 3.0}, {"angle": 6.283185307179586}, {"angle": 0.0}], '
            '"weights": [0.5, 0.2, 0.3]}')
    instance = InstanceRepository.parse_line(line)

    config = instance.to_configuration()

    assert config.multiplicities == (2, 1)
    assert instance.to_weights(config).weights == (0.2, 0.3, 0.5)

def test_save_load_round_trip(tmp_path, small_sweep):
    """Сохранённые экземпляры читаются обратно без потери точности углов"""
    instances = [generate_instance(small_sweep, i) for i in range(5)]
    path = tmp_path / 'instances.jsonl'

    InstanceRepository.save(path, instances)
    loaded = InstanceRepository.load(path)

    assert loaded == instances
    for original, restored in zip(instances, loaded):
        assert [a for a, _ in original.zeros] == [a for a, _ in restored.zeros]


def test_load_reports_line_number(tmp_path):
    """Некорректная вторая строка указывается в сообщении"""
    path = tmp_path / 'broken.jsonl'
    path.write_text('{"zeros": [{"angle": 0.0}, {"angle": 1.0}]}\n{"zeros": \n', encoding='utf-8')

    with pytest.raises(InvalidConfigurationError, match=':2:'):
        InstanceRepository.load(path)


def test_load_skips_blank_lines_and_rejects_empty(tmp_path):
    """Пустые строки пропускаются, пустой файл отклоняется"""
    path = tmp_path / 'instances.jsonl'
    path.write_text('\n{"zeros": [{"angle": 0.0, "multiplicity": 2}]}\n\n', encoding='utf-8')
    assert len(InstanceRepository.load(path)) == 1

    empty = tmp_path / 'empty.jsonl'
    empty.write_text('\n', encoding='utf-8')
    with pytest.raises(InvalidConfigurationError):
        InstanceRepository.load(empty)


def test_load_renormalizes_rounded_weights(tmp_path):
    """Округлённые веса перенормируются при построении WeightVector"""
    path = tmp_path / 'rounded.jsonl'
    path.write_text('{"zeros": [{"angle": 0.0}, {"angle": 2.0}, {"angle": 4.0}], '
                    '"weights": [0.333333333333, 0.333333333333, 0.333333333334]}\n', encoding='utf-8')

    weights = InstanceRepository.load(path)[0].to_weights()

    assert math.fsum(weights.weights) == pytest.approx(1.0, abs=1e-14)


def test_dumps_record_is_canonical():
    """Ключи отсортированы, NaN запрещён"""
    assert dumps_record({'b': 1, 'a': [0.5, None]}) == '{"a": [0.5, null], "b": 1}'
    with pytest.raises(ValueError):
        dumps_record({'x': float('nan')})


def test_report_writer_file(tmp_path):
    """Писатель в файл: одна строка JSON на запись"""
    path = tmp_path / 'report.jsonl'
    with ReportWriter(path) as writer:
        writer.write({'index': 0})
        writer.write({'index': 1, 'ok': True})

    assert writer.count == 2
    lines = path.read_text(encoding='utf-8').splitlines()
    assert [json.loads(line)['index'] for line in lines] == [0, 1]


def test_report_writer_stdout(capsys):
    """Без пути отчёт пишется в стандартный вывод"""
    with ReportWriter() as writer:
        writer.write({'value': 1})

    assert capsys.readouterr().out == '{"value": 1}\n'


def test_write_csv(tmp_path):
    """Таблица CSV с заголовком"""
    path = tmp_path / 'table.csv'
    write_csv(path, ('kind', 'x'), [('zero', '1'), ('root', '0.5')])

    assert path.read_text(encoding='utf-8') == 'kind,x\nzero,1\nroot,0.5\n'


def test_generate_instance_deterministic(small_sweep):
    """Экземпляр определяется только зерном и номером"""
    assert generate_instance(small_sweep, 3) == generate_instance(small_sweep, 3)
    assert generate_instance(small_sweep, 3) != generate_instance(small_sweep, 4)

    other = SweepConfig(count=1, degree_range=(2, 12), epsilon_list=(0.1,), multiplicity_max=3, seed=8)
    assert generate_instance(other, 3) != generate_instance(small_sweep, 3)


def test_generated_instances_are_valid(small_sweep):
    """Степень, кратности, разнесение углов и веса в пределах параметров прогона"""
    n_min, n_max = small_sweep.degree_range
    for index in range(small_sweep.count):
        instance = generate_instance(small_sweep, index)
        config = instance.to_configuration()
        weights = instance.to_weights(config)

        assert n_min <= config.degree <= n_max
        assert config.distinct_count >= 2
        assert max(config.multiplicities) <= small_sweep.multiplicity_max
        assert min(weights.weights) >= 1e-4 - 1e-15
        gaps = [chord.alpha for chord in theorems.consecutive_pairs(config)]
        assert min(gaps) >= 1e-6
        assert math.fsum(gaps) == pytest.approx(2 * math.pi)


def test_generated_population_has_multiple_zeros():
    """В прогоне встречаются и простые, и кратные нули"""
    sweep = SweepConfig(count=50, degree_range=(4, 10), epsilon_list=(0.1,), multiplicity_max=3, seed=1)
    simple = [generate_instance(sweep, i).to_configuration().is_simple for i in range(sweep.count)]

    assert any(simple)
    assert not all(simple)


def test_generated_instances_are_canonical(small_sweep):
    """Нули сгенерированного экземпляра уже в каноническом виде конфигурации"""
    for index in range(small_sweep.count):
        instance = generate_instance(small_sweep, index)
        config = instance.to_configuration()

        rebuilt = InstanceSpec.from_configuration(config, seed=small_sweep.seed, index=index)
        assert rebuilt.zeros == instance.zeros
        assert instance.to_weights(config).weights == pytest.approx(instance.weights, rel=1e-13)
        assert InstanceRepository.parse_line(InstanceRepository.dumps(instance)) == instance


@pytest.mark.parametrize('name', sorted(BUILTIN_INSTANCES))
def test_builtin_instances(name):
    """Именованные экземпляры корректны"""
    entry = get_builtin(name)

    assert isinstance(entry['instance'], InstanceSpec)
    assert entry['instance'].name == name
    config = entry['instance'].to_configuration()
    assert config.degree >= 2
    assert len(entry['instance'].to_weights(config)) == config.degree


def test_builtin_fig3_angles():
    """Нули рисунка 3 на 10° и 115°"""
    config = get_builtin('fig3')['instance'].to_configuration()

    assert np.allclose(np.degrees(config.distinct_angles), (10.0, 115.0))


def test_get_builtin_unknown():
    """Неизвестное имя отклоняется"""
    with pytest.raises(InvalidConfigurationError):
        get_builtin('fig9')

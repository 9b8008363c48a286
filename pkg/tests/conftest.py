"""
Файл конфигурации pytest с общими фикстурами для тестирования lune-kit
Содержит именованные экземпляры из разобранных примеров, генератор случайных
чисел с фиксированным зерном и средства запуска команд
"""
import math

import numpy as np
import pytest
from click.testing import CliRunner

from models import ChordArc, SweepConfig, WeightVector, ZeroConfiguration


@pytest.fixture
def fig1_config():
    """
    Нули многочлена L = (u - 1)(u - i)(u + i)
    Используется в рисунках 1 и 2 и в контрпримере с нулевым весом
    """
    return ZeroConfiguration((0.0, math.pi / 2, 3 * math.pi / 2), (1, 1, 1))


@pytest.fixture
def fig1_chord():
    """Хорда (1, i)"""
    return ChordArc(0.0, math.pi / 2)


@pytest.fixture
def uniform3():
    """Равные веса для многочлена степени 3"""
    return WeightVector.uniform(3)


@pytest.fixture
def sendov_config():
    """Нули u³ - 1"""
    return ZeroConfiguration.roots_of_unity(3)


@pytest.fixture
def sendov_weights():
    """Веса (4/5, 1/10, 1/10), при которых L_λ = u² + 0.7u + 0.7"""
    return WeightVector((0.8, 0.1, 0.1))


@pytest.fixture
def double_config():
    """Конфигурация с кратными нулями: (u - 1)²(u - i)²(u + 1)"""
    return ZeroConfiguration((0.0, math.pi / 2, math.pi), (2, 2, 1))


@pytest.fixture
def rng():
    """Генератор случайных чисел с фиксированным зерном"""
    return np.random.default_rng(20240601)


@pytest.fixture
def small_sweep():
    """Небольшой прогон для быстрых тестов"""
    return SweepConfig(count=20, degree_range=(2, 12), epsilon_list=(0.1, 0.25), multiplicity_max=3, seed=7)


@pytest.fixture
def runner():
    """Средство запуска команд click с раздельными stdout и stderr"""
    return CliRunner(mix_stderr=False)


@pytest.fixture
def output_dir(tmp_path):
    """Временная папка для файлов отчётов и рисунков"""
    directory = tmp_path / 'out'
    directory.mkdir()
    return directory


@pytest.fixture
def make_weights(rng):
    """Фабрика строго положительных весов на симплексе"""
    def factory(n):
        return WeightVector.from_values(1e-3 + (1 - n * 1e-3) * rng.dirichlet(np.ones(n)))
    return factory

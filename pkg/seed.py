"""
Генерация экземпляров для проверок
Случайные экземпляры для прогонов и именованные экземпляры из разобранных примеров
"""
import logging
import math

import numpy as np

from config import Config
from engine.exceptions import InvalidConfigurationError
from models import InstanceSpec, ZeroConfiguration

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi

# Доля экземпляров только с простыми нулями
SIMPLE_SHARE = 0.5
# Доля экземпляров, у которых нули собраны на дуге
CLUSTERED_SHARE = 0.3
MAX_ANGLE_ATTEMPTS = 1000


def _random_multiplicities(rng, degree, multiplicity_max):
    """Разбиение N на кратности не больше multiplicity_max, не менее двух частей"""
    if multiplicity_max == 1 or rng.random() < SIMPLE_SHARE:
        return [1] * degree

    parts = []
    remaining = degree
    while remaining > 0:
        part = int(rng.integers(1, min(multiplicity_max, remaining) + 1))
        parts.append(part)
        remaining -= part
    if len(parts) == 1:
        parts = [parts[0] - 1, 1]
    return parts


def _separated(angles, separation):
    gaps = np.diff(np.append(angles, angles[0] + TWO_PI))
    return bool(np.min(gaps) >= separation)


def _random_angles(rng, count, separation=Config.MIN_ANGLE_SEPARATION):
    """
    Различные углы в [0, 2π), попарно (и через 2π) разнесённые не меньше чем на separation
    Часть экземпляров сосредоточена на дуге, чтобы получался большой зазор
    """
    clustered = rng.random() < CLUSTERED_SHARE
    width = rng.uniform(0.1, math.pi) if clustered else TWO_PI
    start = rng.uniform(0.0, TWO_PI)
    for _ in range(MAX_ANGLE_ATTEMPTS):
        angles = np.sort((start + rng.uniform(0.0, width, count)) % TWO_PI)
        if count == 1 or _separated(angles, separation):
            return angles
    raise InvalidConfigurationError('Не удалось разнести углы нулей')


def _random_weights(rng, degree, min_weight=Config.MIN_WEIGHT):
    """Веса из открытого симплекса с min λ_j ≥ min_weight"""
    return min_weight + (1 - degree * min_weight) * rng.dirichlet(np.ones(degree))


def generate_instance(sweep_config, index):
    """
    Случайный экземпляр номер index

    Генератор инициализируется парой (seed, index), поэтому экземпляр
    не зависит от порядка и числа потоков прогона
    """
    rng = np.random.default_rng([sweep_config.seed, index])
    n_min, n_max = sweep_config.degree_range
    degree = int(rng.integers(n_min, n_max + 1))
    multiplicities = _random_multiplicities(rng, degree, sweep_config.multiplicity_max)
    angles = _random_angles(rng, len(multiplicities))
    weights = _random_weights(rng, degree)
    config = ZeroConfiguration(tuple(float(a) for a in angles), tuple(int(m) for m in multiplicities))
    return InstanceSpec.from_configuration(config, weights, seed=sweep_config.seed, index=index)


def _fig1_zeros():
    return ((0.0, 1), (math.pi / 2, 1), (3 * math.pi / 2, 1))


# Именованные экземпляры: описание, хорда по умолчанию (None означает хорду наибольшего зазора), ε для рисунка
BUILTIN_INSTANCES = {
    'fig1': {
        'instance': InstanceSpec(_fig1_zeros(), 'uniform', name='fig1'),
        'chord': 0,
        'epsilon': None,
    },
    'fig2': {
        'instance': InstanceSpec(_fig1_zeros(), 'uniform', name='fig2'),
        'chord': None,
        'epsilon': 0.25,
    },
    'fig3': {
        'instance': InstanceSpec(((math.radians(10), 1), (math.radians(115), 1)), 'uniform', name='fig3'),
        'chord': 0,
        'epsilon': None,
    },
    'zero-weight': {
        'instance': InstanceSpec(_fig1_zeros(), (0.0, 0.5, 0.5), name='zero-weight'),
        'chord': 0,
        'epsilon': None,
    },
    'sendov': {
        'instance': InstanceSpec(((0.0, 1), (TWO_PI / 3, 1), (2 * TWO_PI / 3, 1)), (0.8, 0.1, 0.1), name='sendov'),
        'chord': 0,
        'epsilon': None,
    },
}


def get_builtin(name):
    """Описание именованного экземпляра по имени"""
    if name not in BUILTIN_INSTANCES:
        known = ', '.join(sorted(BUILTIN_INSTANCES))
        raise InvalidConfigurationError(f'Неизвестный экземпляр {name!r}; доступны: {known}')
    return BUILTIN_INSTANCES[name]

"""
Конфигурационный файл для набора инструментов lune-kit
Содержит все числовые допуски, параметры поиска корней, параметры генерации
случайных экземпляров и настройки вывода отчётов и рисунков
"""

import math
import os

from dotenv import load_dotenv

# Локальные переопределения из файла .env (если он существует)
load_dotenv()


def _float_env(name, default):
    """Прочитать вещественный параметр из окружения"""
    value = os.environ.get(name)
    return float(value) if value else default


def _int_env(name, default):
    """Прочитать целочисленный параметр из окружения"""
    value = os.environ.get(name)
    return int(value) if value else default


def _list_env(name, default, cast=float):
    """Прочитать список значений через запятую из окружения"""
    value = os.environ.get(name)
    if not value:
        return default
    return tuple(cast(item) for item in value.split(',') if item.strip())


class Config:
    """
    Базовая конфигурация набора инструментов
    Все допуски собраны в одном месте, функции библиотеки используют их
    как значения по умолчанию для именованных аргументов
    """
    # Поиск корней методом Аберта-Эрлиха
    TOL_ABS = _float_env('LUNE_TOL_ABS', 1e-11)              # допуск невязки |P(w)|
    TOL_STEP = _float_env('LUNE_TOL_STEP', 1e-14)            # допуск относительной поправки
    MAX_ITERATIONS = _int_env('LUNE_MAX_ITERATIONS', 200)
    INITIAL_RADIUS = _float_env('LUNE_INITIAL_RADIUS', 0.9)  # радиус окружности начальных приближений
    ROOT_SEED = _int_env('LUNE_ROOT_SEED', 20240601)         # фиксированный поворот начальных приближений

    # Геометрические допуски
    TOL_ENDPOINT = _float_env('LUNE_TOL_ENDPOINT', 1e-9)     # срабатывание соглашения о концах хорды
    TOL_GEOM = _float_env('LUNE_TOL_GEOM', 1e-10)            # замкнутые множества: граница считается внутри
    TOL_COINCIDE = _float_env('LUNE_TOL_COINCIDE', 1e-12)    # слияние совпадающих углов в кратности

    # Допуски на веса
    TOL_WEIGHT_SUM = 1e-14       # инвариант суммы весов
    TOL_WEIGHT_INPUT = 1e-12     # входные файлы: округлённые десятичные веса перенормируются

    # Пороги проверки теорем
    DUALITY_RESIDUAL = _float_env('LUNE_DUALITY_RESIDUAL', 1e-8)
    CONGRUENCE_TOL = _float_env('LUNE_CONGRUENCE_TOL', 1e-9)
    GAP_CONSTANT = 4 * math.pi   # абсолютная константа c0 принципа зазора

    # Параметры прогона случайных экземпляров
    SWEEP_COUNT = _int_env('LUNE_SWEEP_COUNT', 10000)
    SWEEP_DEGREE_RANGE = (_int_env('LUNE_SWEEP_NMIN', 2), _int_env('LUNE_SWEEP_NMAX', 50))
    SWEEP_EPSILONS = _list_env('LUNE_SWEEP_EPSILONS', (0.05, 0.1, 0.25, 0.5))
    SWEEP_MULTIPLICITY_MAX = _int_env('LUNE_SWEEP_MMAX', 4)
    SWEEP_SEED = _int_env('LUNE_SWEEP_SEED', 42)
    SWEEP_WORKERS = _int_env('LUNE_SWEEP_WORKERS', 4)
    MIN_WEIGHT = 1e-4             # запас строгой положительности сгенерированных весов
    MIN_ANGLE_SEPARATION = 1e-6   # минимальное расстояние между различными нулями
    PROGRESS_EVERY = 500          # частота отладочных сообщений о ходе прогона

    # Выборка точек лунки для проверки лемм
    LUNE_SAMPLES = _int_env('LUNE_SAMPLES', 1000)

    # Вывод
    CSV_DIGITS = 12               # значащих цифр в CSV координат
    FIGURE_ARC_POINTS = 256       # точек дуги при заливке лунки
    LOG_LEVEL = os.environ.get('LUNE_LOG_LEVEL') or 'WARNING'

"""
Алгебра многочленов над комплексными числами
Неполные многочлены L_j = L/(u - z_j), их выпуклые комбинации L_λ = Σ λ_j L_j,
точное выделение кратностей L_λ = Q·L̃_Λ и поиск корней итерацией Аберта-Эрлиха

Все функции чистые: результат зависит только от аргументов,
поэтому их можно вызывать параллельно без синхронизации
"""
import logging
import math

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as npoly
from scipy.optimize import linear_sum_assignment

from config import Config
from engine.exceptions import (
    IndexOutOfRangeError,
    InvalidWeightsError,
    PreconditionError,
    RootFindingError,
)
from models import (
    METHOD_CRITICAL,
    METHOD_DIRECT,
    METHOD_FACTORIZED,
    MonicPolynomial,
    RootMultiset,
    WeightVector,
    ZeroConfiguration,
)

logger = logging.getLogger(__name__)


class MultiplicityFactorization:
    """
    Результат точного разложения L_λ = Q · L̃_Λ
    reduced равен None, если у L единственный различный нуль (тогда L̃_Λ = 1)
    """

    def __init__(self, q, reduced, grouped, reduced_combination):
        self.q = q
        self.reduced = reduced
        self.grouped = grouped
        self.reduced_combination = reduced_combination

    def __iter__(self):
        return iter((self.q, self.reduced, self.grouped, self.reduced_combination))

    def __repr__(self):
        return f'<MultiplicityFactorization deg Q={self.q.degree} deg L̃={self.reduced_combination.degree}>'


def _check_weights(config, weights):
    if len(weights) != config.degree:
        raise InvalidWeightsError(
            f'Длина вектора весов ({len(weights)}) не совпадает со степенью N = {config.degree}'
        )


def expand_from_roots(roots):
    """
    Развернуть произведение ∏(u - r) в монический многочлен
    Последовательное умножение на линейные множители; пустой список даёт 1
    """
    full = np.ones(1, dtype=complex)
    for root in np.asarray(roots, dtype=complex).ravel():
        shifted = np.zeros(len(full) + 1, dtype=complex)
        shifted[1:] += full
        shifted[:-1] -= root * full
        full = shifted
    return MonicPolynomial(full[:-1])


def evaluate(p, u):
    """Значение многочлена (схема Горнера) в точке или массиве точек"""
    return npoly.polyval(u, p.full_coefficients())


def multiply(p, q):
    """Точное произведение двух монических многочленов"""
    return MonicPolynomial(npoly.polymul(p.full_coefficients(), q.full_coefficients())[:-1])


def derivative(p):
    """
    Производная как обычный (не обязательно монический) многочлен
    Производная константы равна нулевому многочлену
    """
    return Polynomial(npoly.polyder(p.full_coefficients()))


def incomplete_polynomial(config, j):
    """
    Неполный многочлен L_j(u) = ∏_{k≠j} (u - z_k)

    Индекс j нумерует расширенное мультимножество в каноническом порядке, с нуля.
    Многочлен строится разворачиванием оставшихся нулей, без численного деления.
    """
    if not 0 <= j < config.degree:
        raise IndexOutOfRangeError(f'Индекс {j} вне диапазона 0..{config.degree - 1}')
    zeros = config.expanded_zeros()
    return expand_from_roots(np.delete(zeros, j))


def convex_combination(config, weights):
    """
    Выпуклая комбинация L_λ = Σ λ_j L_j
    Результат монический степени N - 1 (сумма старших коэффициентов равна Σ λ_j = 1)
    """
    _check_weights(config, weights)
    lam = weights.as_array()
    combined = np.zeros(config.degree - 1, dtype=complex)
    for j, weight in enumerate(lam):
        if weight == 0:
            continue
        combined += weight * incomplete_polynomial(config, j).coefficients
    return MonicPolynomial(combined)


def group_weights(config, weights):
    """
    Сгруппировать веса по различным нулям: Λ_r = Σ_{z_ℓ = ζ_r} λ_ℓ
    Используется канонический порядок расширенного мультимножества
    """
    _check_weights(config, weights)
    return np.bincount(config.distinct_indices(), weights=weights.as_array(),
                       minlength=config.distinct_count)


def multiplicity_factorization(config, weights):
    """
    Точное разложение L_λ = Q · L̃_Λ

    Q(u) = ∏ (u - ζ_r)^{m_r - 1} степени N - M,
    L̃_Λ = Σ Λ_r L̃_r: выпуклая комбинация неполных многочленов
    приведённой конфигурации с простыми нулями, степени M - 1.
    """
    _check_weights(config, weights)
    zeros = config.distinct_zeros()
    q = expand_from_roots(np.repeat(zeros, [m - 1 for m in config.multiplicities]))
    grouped = group_weights(config, weights)

    if config.distinct_count == 1:
        return MultiplicityFactorization(q, None, grouped, MonicPolynomial(()))

    reduced = ZeroConfiguration(config.distinct_angles, (1,) * config.distinct_count)
    reduced_weights = WeightVector.from_values(grouped)
    return MultiplicityFactorization(q, reduced, grouped, convex_combination(reduced, reduced_weights))


def _initial_guesses(degree, radius, seed):
    """Начальные приближения: равномерно на окружности радиуса radius с фиксированным поворотом"""
    rng = np.random.default_rng(seed)
    phase = rng.uniform(0.0, 2 * math.pi)
    return radius * np.exp(1j * (2 * math.pi * np.arange(degree) / degree + phase))


def _aberth_corrections(full, dfull, z):
    """Поправки Аберта-Эрлиха w_k = p/(p' - p·Σ_{j≠k} 1/(z_k - z_j)) и значения p в текущих точках"""
    p = npoly.polyval(z, full)
    dp = npoly.polyval(z, dfull)
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    inverse = 1.0 / diff
    np.fill_diagonal(inverse, 0.0)
    denominator = dp - p * inverse.sum(axis=1)

    corrections = np.zeros_like(z)
    moving = p != 0
    # Вырожденный знаменатель: небольшой сдвиг вместо деления на ноль
    degenerate = moving & (denominator == 0)
    corrections[degenerate] = 1e-3 * (1 + 1j)
    regular = moving & ~degenerate
    corrections[regular] = p[regular] / denominator[regular]
    return corrections, p


def find_roots(p, tol_abs=Config.TOL_ABS, tol_step=Config.TOL_STEP,
               max_iterations=Config.MAX_ITERATIONS, radius=Config.INITIAL_RADIUS,
               seed=Config.ROOT_SEED):
    """
    Все корни монического многочлена с учётом кратности

    Итерация Аберта-Эрлиха для всех корней одновременно. Остановка, когда
    максимальная относительная поправка не больше tol_step, либо когда невязки
    уже в допуске и поправка перестала уменьшаться. Каждый возвращаемый корень
    удовлетворяет |p(w)| ≤ tol_abs · max(1, max |c_i|); иначе RootFindingError
    с лучшим приближением. Тождественно нулевые младшие коэффициенты дают
    точные нулевые корни, линейный множитель решается в замкнутой форме.
    """
    if p.degree < 1:
        raise PreconditionError('Поиск корней требует степени не меньше 1')

    coefficients = p.coefficients
    exact_zero_count = 0
    while exact_zero_count < p.degree and coefficients[exact_zero_count] == 0:
        exact_zero_count += 1
    zero_roots = np.zeros(exact_zero_count, dtype=complex)
    remaining = MonicPolynomial(coefficients[exact_zero_count:])

    threshold = tol_abs * p.coefficient_scale()
    if remaining.degree == 0:
        return RootMultiset(zero_roots, np.zeros(exact_zero_count), METHOD_DIRECT)
    if remaining.degree == 1:
        roots = np.append(zero_roots, -remaining.coefficients[0])
        return RootMultiset(roots, np.abs(evaluate(p, roots)), METHOD_DIRECT)

    full = remaining.full_coefficients()
    dfull = npoly.polyder(full)
    z = _initial_guesses(remaining.degree, radius, seed)

    previous_step = step = math.inf
    iteration = 0
    for iteration in range(1, max_iterations + 1):
        corrections, values = _aberth_corrections(full, dfull, z)
        z = z - corrections
        step = float(np.max(np.abs(corrections) / np.maximum(1.0, np.abs(z))))
        if step <= tol_step:
            break
        if step >= previous_step and np.max(np.abs(values)) <= threshold:
            # Поправки упёрлись в уровень округления
            break
        previous_step = step

    roots = np.append(zero_roots, z)
    residuals = np.abs(evaluate(p, roots))
    result = RootMultiset(roots, residuals, METHOD_DIRECT, iterations=iteration)
    logger.debug('Аберт-Эрлих: степень %d, итераций %d, последняя поправка %.3e',
                 p.degree, iteration, step)

    if not np.all(np.isfinite(roots)) or np.max(residuals) > threshold:
        raise RootFindingError(
            f'Итерация не сошлась за {iteration} шагов: максимальная невязка '
            f'{float(np.nanmax(residuals)):.3e} при допуске {threshold:.3e}',
            best_iterate=result,
        )
    if step > tol_step:
        logger.debug('Корни приняты по критерию невязки (поправка %.3e)', step)
    return result


def _partial_fraction_parts(w, zeros, grouped):
    """
    Слагаемые отношения L̃_Λ'/L̃_Λ в точках w:
    Σ 1/(w - ζ_r), S(w) = Σ Λ_r/(w - ζ_r), Σ Λ_r/(w - ζ_r)² и масштаб Σ Λ_r/|w - ζ_r|
    """
    inverse = 1.0 / (w[:, None] - zeros[None, :])
    weighted = grouped * inverse
    return inverse.sum(axis=1), weighted.sum(axis=1), (weighted * inverse).sum(axis=1), np.abs(weighted).sum(axis=1)


def _combination_values(w, zeros, grouped):
    """L̃_Λ(w) = ∏ (w - ζ_r) · Σ Λ_r/(w - ζ_r), вычисленное без коэффициентов"""
    difference = w[:, None] - zeros[None, :]
    return np.prod(difference, axis=1) * (grouped / difference).sum(axis=1)


def _chord_guesses(zeros):
    """
    Начальные приближения: точки на хордах между соседними нулями, кроме хорды наибольшей дуги
    Точка берётся на 0.55 длины хорды, а не в середине
    """
    following = np.roll(zeros, -1)
    arcs = np.angle(following / zeros) % (2 * math.pi)
    points = 0.45 * zeros + 0.55 * following
    return np.delete(points, int(np.argmax(arcs)))


def find_combination_roots(zeros, grouped, tol_abs=Config.TOL_ABS, tol_step=Config.TOL_STEP,
                           max_iterations=Config.MAX_ITERATIONS):
    """
    Корни L̃_Λ = Σ Λ_r L̃_r для различных нулей ζ_r (против часовой стрелки) и весов Λ_r > 0

    Коэффициенты L̃_Λ не строятся: L̃_Λ(u) = L̃(u)·S(u) при S(u) = Σ Λ_r/(u - ζ_r), откуда
    L̃_Λ'/L̃_Λ = Σ 1/(u - ζ_r) - (Σ Λ_r/(u - ζ_r)²)/S(u). Это отношение подставляется
    в поправку Аберта-Эрлиха. Сходимость оценивается по относительной невязке
    |S(w)| / Σ Λ_r/|w - ζ_r|, которая не портится при сгущении нулей на дуге.
    """
    zeros = np.asarray(zeros, dtype=complex)
    grouped = np.asarray(grouped, dtype=float)
    degree = len(zeros) - 1
    if degree < 1:
        return RootMultiset(np.zeros(0, dtype=complex), np.zeros(0), METHOD_FACTORIZED)
    if degree == 1:
        # Λ_a/(u - a) + Λ_b/(u - b) = 0
        root = np.array([(grouped[0] * zeros[1] + grouped[1] * zeros[0]) / grouped.sum()])
        return RootMultiset(root, np.abs(_combination_values(root, zeros, grouped)), METHOD_FACTORIZED)

    z = _chord_guesses(zeros)
    previous_step = step = math.inf
    iteration = 0
    for iteration in range(1, max_iterations + 1):
        inverse_sum, s, s2, scale = _partial_fraction_parts(z, zeros, grouped)
        with np.errstate(divide='ignore', invalid='ignore'):
            newton = 1.0 / (inverse_sum - s2 / s)
        newton = np.where(np.isfinite(newton), newton, 0)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inverse = 1.0 / diff
        np.fill_diagonal(inverse, 0.0)
        denominator = 1.0 - newton * inverse.sum(axis=1)
        # Вырожденный знаменатель: небольшой сдвиг вместо деления на ноль
        degenerate = denominator == 0
        corrections = np.where(degenerate, 1e-3 * (1 + 1j), newton / np.where(degenerate, 1, denominator))
        z = z - corrections
        step = float(np.max(np.abs(corrections) / np.maximum(1.0, np.abs(z))))
        if step <= tol_step:
            break
        if step >= previous_step and np.max(np.abs(s) / scale) <= tol_abs:
            break
        previous_step = step

    _, s, _, scale = _partial_fraction_parts(z, zeros, grouped)
    backward = np.abs(s) / scale
    result = RootMultiset(z, np.abs(_combination_values(z, zeros, grouped)), METHOD_FACTORIZED,
                          iterations=iteration)
    logger.debug('Аберт-Эрлих без коэффициентов: степень %d, итераций %d, последняя поправка %.3e',
                 degree, iteration, step)

    if not np.all(np.isfinite(z)) or not np.all(backward <= tol_abs):
        raise RootFindingError(
            f'Итерация не сошлась за {iteration} шагов: относительная невязка '
            f'{float(np.nanmax(backward)):.3e} при допуске {tol_abs:.3e}',
            best_iterate=result,
        )
    return result


def roots_of_combination(config, weights):
    """
    Корни L_λ через точное разложение L_λ = Q · L̃_Λ

    Каждый ζ_r с кратностью m_r - 1 помещается точно на окружность (корни Q);
    если суммарный вес Λ_r равен нулю, ζ_r остаётся корнем полной кратности m_r.
    Остальные корни находятся из L̃_Λ итерацией без коэффициентов (find_combination_roots)
    """
    grouped = group_weights(config, weights)
    zeros = config.distinct_zeros()
    positive = grouped > 0
    repeats = np.asarray(config.multiplicities) - positive.astype(int)
    exact = np.repeat(zeros, repeats)
    origins = np.repeat(np.arange(config.distinct_count), repeats)

    numeric = find_combination_roots(zeros[positive], grouped[positive])
    return RootMultiset(
        np.concatenate([exact, numeric.roots]),
        np.concatenate([np.zeros(len(exact)), numeric.residuals]),
        METHOD_FACTORIZED,
        np.concatenate([origins, numeric.origins]),
        numeric.iterations,
    )


def critical_points(config):
    """
    Критические точки L, то есть корни L'/N

    L'/L = Σ m_r/(u - ζ_r), поэтому L'/N совпадает с L_λ при равных весах
    и ищется тем же путём: кратные нули точно, остальные корни без коэффициентов
    """
    result = roots_of_combination(config, WeightVector.uniform(config.degree))
    return RootMultiset(result.roots, result.residuals, METHOD_CRITICAL, result.origins, result.iterations)


def match_roots(first, second):
    """
    Оптимальное паросочетание двух мультимножеств корней (венгерский метод)
    Возвращает пары индексов и максимальное расстояние между сопоставленными корнями
    """
    a = np.asarray(getattr(first, 'roots', first), dtype=complex)
    b = np.asarray(getattr(second, 'roots', second), dtype=complex)
    if len(a) != len(b):
        raise PreconditionError('Мультимножества корней разного размера')
    if len(a) == 0:
        return [], 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return list(zip(rows.tolist(), cols.tolist())), float(cost[rows, cols].max())

"""
Исполняемые проверки теорем о корнях L_λ

Тождество двойственности углов Σ Θ(w_k; z, z⁺) = π + (N - 2)·α/2,
независимая от поиска корней проверка сравнения по модулю 2π,
принцип зазора N_ε ≤ 4π/(εG) и два разобранных контрпримера
"""
import cmath
import dataclasses
import logging
import math

import numpy as np

from config import Config
from engine import lunegeom, polycore
from engine.exceptions import (
    PositivityRequiredError,
    PreconditionError,
    SingleDistinctZeroError,
    UnsupportedMultiplicityError,
)
from models import (
    AngleValue,
    ChordArc,
    DualityReport,
    GapReport,
    WeightVector,
    ZeroConfiguration,
)

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi

# Сравнение зазоров: более поздний зазор побеждает, только если больше на эту величину
GAP_TIE_TOL = 1e-12
# Запас для промежуточного неравенства N_ε·δ ≤ π - G/2
INTERMEDIATE_SLACK = 1e-12


def _require_positive(weights, operation):
    if not weights.strictly_positive:
        raise PositivityRequiredError(
            f'{operation} требует строго положительных весов: при нулевом весе '
            f'тождество двойственности может нарушаться'
        )


def consecutive_pairs(config):
    """
    Все M хорд между соседними различными нулями, включая пару через 2π
    Для последней пары θ⁺ = θ_1 + 2π
    """
    if config.distinct_count < 2:
        raise SingleDistinctZeroError('У многочлена единственный различный нуль, соседних пар нет')
    angles = config.distinct_angles
    chords = [ChordArc(theta, theta_plus) for theta, theta_plus in zip(angles, angles[1:])]
    chords.append(ChordArc(angles[-1], angles[0] + TWO_PI))
    return chords


def max_gap(config):
    """
    Хорда с наибольшим зазором и сам зазор G
    При равенстве побеждает хорда с меньшим начальным углом
    """
    chords = consecutive_pairs(config)
    best = chords[0]
    for chord in chords[1:]:
        if chord.alpha > best.alpha + GAP_TIE_TOL:
            best = chord
    return best, best.alpha


def chord_index(config, chord, tol=Config.TOL_COINCIDE):
    """Номер хорды среди consecutive_pairs(config); PreconditionError, если хорда не соседняя"""
    for index, candidate in enumerate(consecutive_pairs(config)):
        if abs(candidate.theta - chord.theta) <= tol and abs(candidate.theta_plus - chord.theta_plus) <= tol:
            return index
    raise PreconditionError('Хорда не соединяет соседние различные нули конфигурации')


def _build_report(config, chord, index, roots):
    """
    Отчёт двойственности по готовому мультимножеству корней
    Корни, помещённые точно в концы хорды, получают α/2 по соглашению о концах;
    численные корни к концам не притягиваются
    """
    endpoints = {index, (index + 1) % config.distinct_count}
    angles = []
    for root, origin in zip(roots.roots, roots.origins):
        if origin in endpoints:
            angles.append(AngleValue(chord.alpha / 2, True))
        else:
            angles.append(lunegeom.subtended_angle(complex(root), chord, tol_endpoint=0.0))

    angle_sum = math.fsum(angle.value for angle in angles)
    rhs = math.pi + (config.degree - 2) * chord.alpha / 2
    return DualityReport(
        chord=chord,
        per_root_angles=tuple(angles),
        angle_sum=angle_sum,
        rhs=rhs,
        residual=abs(angle_sum - rhs),
        roots=tuple(complex(r) for r in roots.roots),
        method=roots.method,
        chord_index=index,
    )


def verify_angle_duality(config, weights, chord, roots=None):
    """
    Проверка тождества двойственности углов для одной хорды

    Веса должны быть строго положительны. Корни находятся через точное
    разложение L_λ = Q·L̃_Λ; ошибка поиска корней передаётся вызывающему коду.
    Готовые корни L_λ можно передать, чтобы не искать их для каждой хорды.
    """
    _require_positive(weights, 'Тождество двойственности углов')
    index = chord_index(config, chord)
    if roots is None:
        roots = polycore.roots_of_combination(config, weights)
    report = _build_report(config, chord, index, roots)
    logger.debug('Двойственность: хорда %d, сумма %.15f, правая часть %.15f, невязка %.3e',
                 index, report.angle_sum, report.rhs, report.residual)
    return report


def verify_critical_duality(config, chord):
    """Двойственность углов для критических точек L (равные веса, корни L'/N)"""
    index = chord_index(config, chord)
    return _build_report(config, chord, index, polycore.critical_points(config))


def _product_identity_parts(config, weights, chord):
    """Номера концов хорды в расширенном мультимножестве и нули для правой части тождества произведения"""
    if not config.is_simple:
        raise UnsupportedMultiplicityError('Проверка определена только для простых нулей')
    _require_positive(weights, 'Проверка сравнения')
    j = chord_index(config, chord)
    j_plus = (j + 1) % config.distinct_count
    others = np.delete(config.expanded_zeros(), [j, j_plus])
    lam = weights.as_array()
    return lam[j], lam[j_plus], others


def duality_congruence_oracle(config, weights, chord):
    """
    Представитель в [0, 2π) величины arg ∏ (z⁺ - w_k)/(z - w_k) - π - (N - 2)·α/2

    Аргумент берётся от правой части тождества произведения
    -(λ_{j+1}/λ_j)·∏_{ℓ≠j,j+1} (z⁺ - z_ℓ)/(z - z_ℓ), корни L_λ не вычисляются.
    Если тождество двойственности верно, результат сравним с нулём по модулю 2π.
    """
    lam_j, lam_next, others = _product_identity_parts(config, weights, chord)
    z, z_plus = chord.z, chord.z_plus
    # Сумма аргументов сомножителей вместо аргумента произведения: без переполнения
    argument = cmath.phase(-lam_next / lam_j) + float(np.sum(np.angle((z_plus - others) / (z - others))))
    value = (argument - math.pi - (config.degree - 2) * chord.alpha / 2) % TWO_PI
    # Остаток от отрицательного нуля может округлиться ровно до 2π
    return 0.0 if value >= TWO_PI else value


def product_identity_residual(config, weights, chord):
    """
    Относительная невязка тождества произведения
    ∏ (z⁺ - w_k)/(z - w_k) = -(λ_{j+1}/λ_j)·∏_{ℓ≠j,j+1} (z⁺ - z_ℓ)/(z - z_ℓ)
    по найденным корням L_λ
    """
    lam_j, lam_next, others = _product_identity_parts(config, weights, chord)
    z, z_plus = chord.z, chord.z_plus
    roots = polycore.roots_of_combination(config, weights).roots
    lhs = np.prod((z_plus - roots) / (z - roots))
    rhs = -(lam_next / lam_j) * np.prod((z_plus - others) / (z - others))
    return float(abs(lhs - rhs) / max(1.0, abs(rhs)))


def congruence_distance(value):
    """Расстояние от числа до ближайшего кратного 2π"""
    reduced = value % TWO_PI
    return min(reduced, TWO_PI - reduced)


def count_interior(roots, epsilon):
    """N_ε: число корней (с кратностью) со строгим неравенством |w| < 1 - ε"""
    if not 0 < epsilon < 1:
        raise PreconditionError(f'ε = {epsilon!r} должно лежать в (0, 1)')
    values = np.asarray(getattr(roots, 'roots', roots), dtype=complex)
    return int(np.count_nonzero(np.abs(values) < 1 - epsilon))


def gap_case_bound(epsilon, alpha):
    """
    Промежуточная оценка (π - α/2)/δ(ε, α) из разбора случаев α ≤ π и α > π
    Не превосходит 4π/(εα) при любом α из (0, 2π)
    """
    return (math.pi - alpha / 2) / lunegeom.angle_gain_delta(epsilon, alpha)


def intermediate_inequality_holds(report):
    """N_ε·δ(ε, G) ≤ π - G/2 с запасом округления"""
    if report.max_gap >= TWO_PI:
        return report.interior_count == 0
    delta = lunegeom.angle_gain_delta(report.epsilon, report.max_gap)
    return report.interior_count * delta <= math.pi - report.max_gap / 2 + INTERMEDIATE_SLACK


def verify_gap_principle(config, weights, epsilon, roots=None):
    """
    Проверка принципа зазора N_ε ≤ c0/(εG) при c0 = 4π

    При единственном различном нуле все корни L_λ совпадают с ним, N_ε = 0
    и оценка выполняется тривиально; зазор тогда считается равным 2π.
    Готовые корни можно передать, чтобы не искать их для каждого ε заново.
    """
    _require_positive(weights, 'Принцип зазора')
    if not 0 < epsilon < 1:
        raise PreconditionError(f'ε = {epsilon!r} должно лежать в (0, 1)')
    if roots is None:
        roots = polycore.roots_of_combination(config, weights)

    interior = count_interior(roots, epsilon)
    if config.distinct_count == 1:
        gap = TWO_PI
        intermediate = 0.0
    else:
        _, gap = max_gap(config)
        intermediate = gap_case_bound(epsilon, gap)
    bound = Config.GAP_CONSTANT / (epsilon * gap)

    report = GapReport(
        max_gap=gap,
        epsilon=epsilon,
        interior_count=interior,
        bound=bound,
        satisfied=interior <= bound,
        intermediate_bound=intermediate,
        root_count=len(roots),
    )
    report = dataclasses.replace(report, intermediate_holds=intermediate_inequality_holds(report))
    logger.debug('Зазор: G=%.6f ε=%g N_ε=%d оценка %.3f', gap, epsilon, interior, bound)
    return report


def zero_weight_counterexample():
    """
    Нарушение двойственности при нулевом весе

    L = (u - 1)(u - i)(u + i), λ = (0, 1/2, 1/2), хорда (1, i):
    L_λ = u(u - 1), сумма углов 3π/4 вместо π + π/4 = 5π/4.
    Возвращает отчёт и признак нарушения тождества.
    """
    config = ZeroConfiguration((0.0, math.pi / 2, 3 * math.pi / 2), (1, 1, 1))
    weights = WeightVector((0.0, 0.5, 0.5))
    chord = consecutive_pairs(config)[0]
    roots = polycore.roots_of_combination(config, weights)
    report = _build_report(config, chord, 0, roots)
    return report, report.residual > Config.DUALITY_RESIDUAL


def sendov_distance(config, weights):
    """
    Для каждого различного нуля ζ_r расстояние до ближайшего корня L_λ
    Никакая оценка не проверяется: расстояние может превышать 1
    """
    _require_positive(weights, 'Расстояния до корней')
    roots = polycore.roots_of_combination(config, weights).roots
    return [(complex(zeta), float(np.min(np.abs(zeta - roots)))) for zeta in config.distinct_zeros()]

"""
Геометрия лунки Ɔ(z, z⁺) = D̄ ∩ H(z, z⁺)

H(z, z⁺): замкнутая полуплоскость, ограниченная прямой через z и z⁺ и содержащая
дугу единичной окружности, идущую против часовой стрелки от z⁺ к z.
Модуль вычисляет стягиваемые углы Θ(u; z, z⁺) с соглашением о концах хорды,
предикаты принадлежности и количественные леммы: нижнюю оценку угла,
выигрыш угла вдали от окружности и оценку диаметра лунки

Все множества замкнутые: точки на границе в пределах TOL_GEOM считаются внутренними
"""
import cmath
import math

import numpy as np

from config import Config
from engine.exceptions import EndpointProximityError, PreconditionError
from models import AngleValue

TWO_PI = 2 * math.pi


def angle_at(vertex, p, q):
    """
    Неориентированный угол в вершине vertex между лучами к p и к q, в [0, π]
    Формула atan2(|a × b|, a · b) устойчива и при почти коллинеарных лучах
    """
    a = np.asarray(p) - np.asarray(vertex)
    b = np.asarray(q) - np.asarray(vertex)
    product = np.conj(a) * b
    return np.arctan2(np.abs(product.imag), product.real)


def subtended_angle(u, chord, tol_endpoint=Config.TOL_ENDPOINT):
    """
    Стягиваемый угол Θ(u; z, z⁺)

    Если u совпадает с концом хорды в пределах tol_endpoint, применяется
    соглашение о концах: Θ = α/2. Иначе возвращается угол в точке u между лучами
    к z и к z⁺ (эквивалент arccos нормированного скалярного произведения).
    """
    z, z_plus = chord.z, chord.z_plus
    if abs(u - z) <= tol_endpoint or abs(u - z_plus) <= tol_endpoint:
        return AngleValue(chord.alpha / 2, True)
    return AngleValue(float(angle_at(u, z, z_plus)), False)


def subtended_angles(points, chord, tol_endpoint=Config.TOL_ENDPOINT):
    """Векторная форма subtended_angle: массив значений Θ для массива точек"""
    points = np.asarray(points, dtype=complex)
    z, z_plus = chord.z, chord.z_plus
    values = angle_at(points, z, z_plus)
    endpoint = (np.abs(points - z) <= tol_endpoint) | (np.abs(points - z_plus) <= tol_endpoint)
    return np.where(endpoint, chord.alpha / 2, values)


def _signed_distance(points, chord):
    """Знаковое расстояние до прямой через z и z⁺; положительно на стороне дуги z⁺ → z"""
    z, z_plus = chord.z, chord.z_plus
    direction = z_plus - z
    cross = (np.conj(direction) * (np.asarray(points) - z)).imag / abs(direction)
    # Середина дуги против часовой стрелки от z⁺ к z задаёт положительную сторону
    midpoint = cmath.exp(1j * (chord.theta_plus + (TWO_PI - chord.alpha) / 2))
    orientation = math.copysign(1.0, (direction.conjugate() * (midpoint - z)).imag)
    return orientation * cross


def in_half_plane(u, chord, tol_geom=Config.TOL_GEOM):
    """Принадлежность замкнутой полуплоскости H(z, z⁺)"""
    return bool(_signed_distance(u, chord) >= -tol_geom)


def in_lune(u, chord, tol_geom=Config.TOL_GEOM):
    """Принадлежность лунке Ɔ(z, z⁺): |u| ≤ 1 и u ∈ H(z, z⁺)"""
    return abs(u) <= 1 + tol_geom and in_half_plane(u, chord, tol_geom)


def lune_mask(points, chord, tol_geom=Config.TOL_GEOM):
    """Векторная форма in_lune"""
    points = np.asarray(points, dtype=complex)
    return (np.abs(points) <= 1 + tol_geom) & (_signed_distance(points, chord) >= -tol_geom)


def signed_arg_difference(w, chord, tol_endpoint=Config.TOL_ENDPOINT):
    """
    Представитель arg(z⁺ - w) - arg(z - w) в (-π, π]

    Для w в лунке значение лежит в (0, π] и совпадает с Θ(w; z, z⁺);
    для w ∈ D̄ вне H(z, z⁺) значение лежит в [-π, 0) и равно -Θ(w; z, z⁺).
    В концах хорды разность не определена.
    """
    z, z_plus = chord.z, chord.z_plus
    if abs(w - z) <= tol_endpoint or abs(w - z_plus) <= tol_endpoint:
        raise EndpointProximityError('Знаковая разность аргументов не определена в концах хорды')
    value = cmath.phase((z_plus - w) * (z - w).conjugate())
    # Противоположные лучи: представитель π, а не -π
    if value == -math.pi:
        value = math.pi
    return value


def half_gap_angle(chord):
    """Вписанный угол α/2 для точек окружности вне открытой дуги z → z⁺"""
    return chord.alpha / 2


def lune_diameter_bound(u, chord, tol_geom=Config.TOL_GEOM):
    """
    Оценка диаметра при α > π: |u - z| ≤ |z⁺ - z| = 2 sin(α/2) для u в лунке
    Возвращает результат проверки; False означает ошибку в геометрии
    """
    if chord.alpha <= math.pi:
        raise PreconditionError('Оценка диаметра применима только при α > π')
    if not in_lune(u, chord, tol_geom):
        raise PreconditionError('Точка должна лежать в лунке')
    return abs(u - chord.z) <= 2 * math.sin(chord.alpha / 2) + tol_geom


def angle_gain_delta(epsilon, alpha):
    """
    Гарантированный выигрыш угла δ(ε, α) для точек лунки с |u| < 1 - ε:
    (ε/2)·sin(α/2) при α ≤ π и ε/2 при α > π
    """
    if not 0 < epsilon < 1:
        raise PreconditionError(f'ε = {epsilon!r} должно лежать в (0, 1)')
    if not 0 < alpha < TWO_PI:
        raise PreconditionError(f'α = {alpha!r} должно лежать в (0, 2π)')
    if alpha <= math.pi:
        return epsilon / 2 * math.sin(alpha / 2)
    return epsilon / 2


def chord_gain(alpha):
    """
    Точный выигрыш π - α/2 для точек на самой хорде (там Θ = π)
    При α > π и хорде, заходящей внутрь круга |u| < 1 - ε, он больше √(2ε)
    """
    if not 0 < alpha < TWO_PI:
        raise PreconditionError(f'α = {alpha!r} должно лежать в (0, 2π)')
    return math.pi - alpha / 2


def second_intersection(u, chord):
    """
    Вторая точка A пересечения прямой через z⁺ и u с единичной окружностью
    Из |z⁺ + t·d|² = 1 при d = u - z⁺ получаем t = -2 Re(conj(z⁺)·d)/|d|²
    """
    z_plus = chord.z_plus
    d = u - z_plus
    if abs(d) == 0:
        raise PreconditionError('Точка совпадает с z⁺, прямая не определена')
    t = -2 * (z_plus.conjugate() * d).real / abs(d) ** 2
    return z_plus + t * d


def angle_gain_witness(u, chord, tol_geom=Config.TOL_GEOM):
    """
    Разложение выигрыша угла для внутренней точки лунки

    A: вторая точка пересечения прямой z⁺u с окружностью,
    φ1 = Θ(A; u, z) = α/2 (вписанный угол), φ2 = Θ(z; A, u) = Θ(u; z, z⁺) - α/2.
    Точка не должна лежать на прямой хорды.
    """
    if not in_lune(u, chord, tol_geom):
        raise PreconditionError('Точка должна лежать в лунке')
    if abs(_signed_distance(u, chord)) <= tol_geom:
        raise PreconditionError('Точка лежит на прямой хорды, треугольник вырожден')
    a = second_intersection(u, chord)
    phi1 = float(angle_at(a, u, chord.z))
    phi2 = float(angle_at(chord.z, a, u))
    return a, phi1, phi2


def convex_hull(points):
    """
    Выпуклая оболочка точек комплексной плоскости (монотонная цепочка Эндрю)
    Вершины против часовой стрелки, без коллинеарных промежуточных точек
    """
    unique = sorted({(float(p.real), float(p.imag)) for p in np.asarray(points, dtype=complex).ravel()})
    if len(unique) <= 2:
        return [complex(x, y) for x, y in unique]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for point in unique:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], point) <= 0:
            lower.pop()
        lower.append(point)
    upper = []
    for point in reversed(unique):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], point) <= 0:
            upper.pop()
        upper.append(point)
    return [complex(x, y) for x, y in lower[:-1] + upper[:-1]]


def _segment_distance(u, a, b):
    """Расстояние от точки u до отрезка [a, b]"""
    d = b - a
    if d == 0:
        return abs(u - a)
    t = min(1.0, max(0.0, ((u - a) * d.conjugate()).real / abs(d) ** 2))
    return abs(u - (a + t * d))


def convex_hull_contains(points, u, tol_geom=Config.TOL_GEOM):
    """
    Принадлежность точки u замкнутой выпуклой оболочке набора точек
    Проверка полуплоскостями рёбер оболочки; вырожденные оболочки
    (точка, отрезок) проверяются расстоянием
    """
    hull = convex_hull(points)
    if not hull:
        raise PreconditionError('Нужна хотя бы одна точка')
    if len(hull) == 1:
        return abs(u - hull[0]) <= tol_geom
    if len(hull) == 2:
        return _segment_distance(u, hull[0], hull[1]) <= tol_geom
    for a, b in zip(hull, hull[1:] + hull[:1]):
        edge = b - a
        if (edge.conjugate() * (u - a)).imag / abs(edge) < -tol_geom:
            return False
    return True


def lune_boundary_polygon(chord, samples=Config.FIGURE_ARC_POINTS):
    """
    Замкнутый многоугольник границы лунки: хорда z → z⁺,
    затем дуга против часовой стрелки от z⁺ обратно к z
    """
    arc = np.linspace(chord.theta_plus, chord.theta + TWO_PI, samples)
    return np.concatenate([[chord.z], np.exp(1j * arc)])


def lune_bounding_box(chord):
    """
    Описанный прямоугольник лунки (нижний левый и верхний правый углы)
    Кроме вершин многоугольника границы учитываются точки дуги на осях, exp(ikπ/2)
    """
    boundary = lune_boundary_polygon(chord)
    quarter = math.pi / 2
    k = np.arange(math.ceil(chord.theta_plus / quarter), math.floor((chord.theta + TWO_PI) / quarter) + 1)
    points = np.concatenate([boundary, np.exp(1j * quarter * k)])
    return complex(points.real.min(), points.imag.min()), complex(points.real.max(), points.imag.max())


def sample_lune(chord, count, rng, batch=4096):
    """
    Равномерная выборка точек лунки отбором из описанного прямоугольника
    Возвращает ровно count точек
    """
    low, high = lune_bounding_box(chord)
    accepted = []
    total = 0
    while total < count:
        candidates = (rng.uniform(low.real, high.real, batch)
                      + 1j * rng.uniform(low.imag, high.imag, batch))
        inside = candidates[lune_mask(candidates, chord, tol_geom=0.0)]
        accepted.append(inside)
        total += len(inside)
    return np.concatenate(accepted)[:count]

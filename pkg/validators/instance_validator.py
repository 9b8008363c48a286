"""
Валидаторы описаний экземпляров и параметров прогона
Каждая функция возвращает текст ошибки или None, если значение корректно
"""
import math
import numbers

from config import Config


def _is_real(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool) and math.isfinite(value)


def _is_integer(value):
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def validate_zero_entry(entry):
    """
    Проверяет одну запись нуля вида {"angle": ..., "multiplicity": ...}

    Returns:
        str or None: Текст ошибки или None если запись валидна
    """
    if not isinstance(entry, dict):
        return "Запись нуля должна быть объектом с полями angle и multiplicity!"

    if 'angle' not in entry:
        return "У нуля отсутствует поле angle!"

    if not _is_real(entry['angle']):
        return "Угол нуля должен быть конечным числом (радианы)!"

    multiplicity = entry.get('multiplicity', 1)
    if not _is_integer(multiplicity) or multiplicity < 1:
        return "Кратность нуля должна быть целым числом не меньше 1!"

    return None


def validate_zeros(zeros):
    """
    Проверяет список нулей: каждая запись и степень N ≥ 2
    Порядок углов произвольный; совпадающие углы сливаются при построении конфигурации

    Returns:
        str or None: Текст ошибки или None если список валиден
    """
    if not isinstance(zeros, list) or not zeros:
        return "Список нулей должен быть непустым!"

    for position, entry in enumerate(zeros):
        error = validate_zero_entry(entry)
        if error:
            return f"Нуль #{position}: {error}"

    if sum(entry.get('multiplicity', 1) for entry in zeros) < 2:
        return "Степень многочлена N должна быть не меньше 2!"

    return None


def validate_weights(weights, degree):
    """
    Проверяет веса: метка "uniform" или N неотрицательных чисел с суммой 1

    Returns:
        str or None: Текст ошибки или None если веса валидны
    """
    if weights == 'uniform':
        return None

    if not isinstance(weights, list):
        return 'Веса должны быть списком чисел или меткой "uniform"!'

    if len(weights) != degree:
        return f"Число весов ({len(weights)}) не совпадает со степенью N = {degree}!"

    if any(not _is_real(w) or w < 0 for w in weights):
        return "Веса должны быть конечными неотрицательными числами!"

    total = math.fsum(weights)
    if abs(total - 1.0) > Config.TOL_WEIGHT_INPUT:
        return f"Сумма весов равна {total!r}, а должна быть 1!"

    return None


def validate_epsilon(epsilon):
    """Валидация ε ∈ (0, 1)"""
    if not _is_real(epsilon) or not 0 < epsilon < 1:
        return f"ε = {epsilon!r} должно лежать в (0, 1)!"

    return None


def validate_sweep_config(count, degree_range, epsilon_list, multiplicity_max, seed):
    """
    Валидация параметров прогона случайных экземпляров

    Returns:
        str or None: Текст ошибки или None если параметры валидны
    """
    if not _is_integer(count) or count < 1:
        return "Число экземпляров должно быть положительным целым!"

    if len(degree_range) != 2:
        return "Диапазон степеней задаётся парой [N_min, N_max]!"

    n_min, n_max = degree_range
    if n_min < 2:
        return "Минимальная степень N_min должна быть не меньше 2!"

    if n_max < n_min:
        return "N_max должна быть не меньше N_min!"

    if not epsilon_list:
        return "Список ε не может быть пустым!"

    for epsilon in epsilon_list:
        error = validate_epsilon(epsilon)
        if error:
            return error

    if not _is_integer(multiplicity_max) or multiplicity_max < 1:
        return "Максимальная кратность должна быть положительным целым!"

    if not _is_integer(seed) or seed < 0:
        return "Зерно генератора должно быть неотрицательным целым!"

    return None

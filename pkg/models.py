"""
Модели данных набора инструментов lune-kit
В данном файле представлены все основные типы значений: конфигурации нулей
на единичной окружности, веса, монические многочлены, мультимножества корней,
хорды с дугами, а также отчёты проверок и описания экземпляров
Все модели неизменяемы после создания и могут свободно передаваться между потоками
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from config import Config
from engine.exceptions import InvalidConfigurationError, InvalidWeightsError, PreconditionError

TWO_PI = 2 * math.pi

# Метки способа поиска корней
METHOD_DIRECT = 'direct'
METHOD_FACTORIZED = 'factorized'
METHOD_CRITICAL = 'critical'

# Метка корня, найденного численно (а не помещённого точно из множителя Q)
NUMERIC_ORIGIN = -1


def _complex_pair(value):
    """Комплексное число в виде пары [re, im] для JSON"""
    return [float(value.real), float(value.imag)]


@dataclass(frozen=True)
class ZeroConfiguration:
    """
    Мультимножество нулей многочлена L на единичной окружности
    Хранит различные аргументы θ_r (строго возрастают в [0, 2π)) и их кратности m_r

    Расширенное мультимножество упорядочено канонически: сначала по индексу
    различного нуля, затем по повторению. В этом же порядке задаются веса.
    """
    distinct_angles: tuple
    multiplicities: tuple

    def __post_init__(self):
        angles = tuple(float(a) for a in self.distinct_angles)
        multiplicities = tuple(int(m) for m in self.multiplicities)
        object.__setattr__(self, 'distinct_angles', angles)
        object.__setattr__(self, 'multiplicities', multiplicities)

        if len(angles) == 0:
            raise InvalidConfigurationError('Конфигурация должна содержать хотя бы один нуль')
        if len(angles) != len(multiplicities):
            raise InvalidConfigurationError('Число углов не совпадает с числом кратностей')
        if any(not math.isfinite(a) or a < 0 or a >= TWO_PI for a in angles):
            raise InvalidConfigurationError('Все углы должны лежать в [0, 2π)')
        if any(b <= a for a, b in zip(angles, angles[1:])):
            raise InvalidConfigurationError('Углы различных нулей должны строго возрастать')
        if any(m < 1 for m in multiplicities):
            raise InvalidConfigurationError('Кратности должны быть положительными')
        if sum(multiplicities) < 2:
            raise InvalidConfigurationError('Степень многочлена N должна быть не меньше 2')

    @classmethod
    def from_angles(cls, angles, multiplicities=None, tol=Config.TOL_COINCIDE):
        """
        Построить конфигурацию из произвольных углов
        Углы приводятся к [0, 2π), сортируются, совпадающие в пределах tol
        сливаются в один нуль с суммарной кратностью
        """
        if multiplicities is None:
            multiplicities = [1] * len(angles)
        if len(angles) != len(multiplicities):
            raise InvalidConfigurationError('Число углов не совпадает с числом кратностей')

        pairs = []
        for angle, multiplicity in zip(angles, multiplicities):
            reduced = float(angle) % TWO_PI
            # Угол, неотличимый от 2π, совпадает с нулевым
            if reduced > TWO_PI - tol:
                reduced = 0.0
            pairs.append((reduced, int(multiplicity)))
        pairs.sort()

        merged = []
        for angle, multiplicity in pairs:
            if merged and angle - merged[-1][0] <= tol:
                merged[-1][1] += multiplicity
            else:
                merged.append([angle, multiplicity])

        # Слияние через точку 2π ~ 0
        if len(merged) > 1 and merged[0][0] + TWO_PI - merged[-1][0] <= tol:
            merged[0][1] += merged.pop()[1]

        return cls(tuple(a for a, _ in merged), tuple(m for _, m in merged))

    @classmethod
    def roots_of_unity(cls, n):
        """Нули многочлена u^n - 1"""
        return cls(tuple(TWO_PI * k / n for k in range(n)), (1,) * n)

    @property
    def degree(self):
        """Степень N = Σ m_r"""
        return sum(self.multiplicities)

    @property
    def distinct_count(self):
        """Число M различных нулей"""
        return len(self.distinct_angles)

    @property
    def is_simple(self):
        """Все нули простые"""
        return all(m == 1 for m in self.multiplicities)

    def distinct_zeros(self):
        """Различные нули ζ_r = e^{iθ_r}"""
        return np.exp(1j * np.asarray(self.distinct_angles))

    def distinct_indices(self):
        """Индекс различного нуля для каждой позиции расширенного мультимножества"""
        return np.repeat(np.arange(self.distinct_count), self.multiplicities)

    def expanded_angles(self):
        """Аргументы z_j с учётом кратности, в каноническом порядке"""
        return np.repeat(np.asarray(self.distinct_angles), self.multiplicities)

    def expanded_zeros(self):
        """Нули z_j с учётом кратности, в каноническом порядке"""
        return np.repeat(self.distinct_zeros(), self.multiplicities)

    def __repr__(self):
        return f'<ZeroConfiguration N={self.degree} M={self.distinct_count}>'


@dataclass(frozen=True)
class WeightVector:
    """
    Веса λ_j на симплексе: неотрицательны, в сумме дают 1
    """
    weights: tuple

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, 'weights', weights)

        if len(weights) == 0:
            raise InvalidWeightsError('Вектор весов не может быть пустым')
        if any(not math.isfinite(w) or w < 0 for w in weights):
            raise InvalidWeightsError('Веса должны быть конечными и неотрицательными')
        if abs(math.fsum(weights) - 1.0) > Config.TOL_WEIGHT_SUM:
            raise InvalidWeightsError(f'Сумма весов равна {math.fsum(weights)!r}, а должна быть 1')

    @classmethod
    def uniform(cls, n):
        """Равные веса 1/n"""
        return cls((1.0 / n,) * n)

    @classmethod
    def from_values(cls, values, tol=Config.TOL_WEIGHT_INPUT):
        """
        Построить веса из значений, сумма которых равна 1 с точностью tol
        Значения перенормируются, чтобы выполнялся точный инвариант
        """
        values = [float(v) for v in values]
        if not values:
            raise InvalidWeightsError('Вектор весов не может быть пустым')
        total = math.fsum(values)
        if abs(total - 1.0) > tol:
            raise InvalidWeightsError(f'Сумма весов равна {total!r}, а должна быть 1')
        if total == 1.0:
            return cls(tuple(values))
        return cls(tuple(v / total for v in values))

    @property
    def strictly_positive(self):
        """Все веса строго положительны"""
        return min(self.weights) > 0

    def __len__(self):
        return len(self.weights)

    def as_array(self):
        return np.asarray(self.weights, dtype=float)


@dataclass(frozen=True, eq=False)
class MonicPolynomial:
    """
    Монический многочлен u^d + c_{d-1} u^{d-1} + ... + c_0
    Коэффициенты хранятся плотно, от младшей степени к старшей,
    старший коэффициент 1 не хранится
    """
    coefficients: np.ndarray

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=complex).ravel()
        if not np.all(np.isfinite(coefficients)):
            raise PreconditionError('Коэффициенты многочлена должны быть конечными')
        coefficients.setflags(write=False)
        object.__setattr__(self, 'coefficients', coefficients)

    @classmethod
    def from_full(cls, coefficients):
        """Нормировать произвольный многочлен (коэффициенты от младшего) к моническому"""
        coefficients = np.asarray(coefficients, dtype=complex)
        leading = coefficients[-1]
        if leading == 0:
            raise PreconditionError('Старший коэффициент равен нулю')
        return cls(coefficients[:-1] / leading)

    @property
    def degree(self):
        return len(self.coefficients)

    def full_coefficients(self):
        """Все коэффициенты, включая старшую единицу"""
        return np.append(self.coefficients, 1.0 + 0j)

    def coefficient_scale(self):
        """max(1, max |c_i|) для относительного допуска невязки"""
        if self.degree == 0:
            return 1.0
        return max(1.0, float(np.max(np.abs(self.coefficients))))

    def __repr__(self):
        return f'<MonicPolynomial degree={self.degree}>'


@dataclass(frozen=True, eq=False)
class RootMultiset:
    """
    Корни многочлена с учётом кратности и метаданные качества
    origins[k]: индекс различного нуля ζ_r, если корень помещён точно
    из множителя Q, иначе NUMERIC_ORIGIN
    """
    roots: np.ndarray
    residuals: np.ndarray
    method: str
    origins: np.ndarray = None
    iterations: int = 0

    def __post_init__(self):
        roots = np.array(self.roots, dtype=complex).ravel()
        residuals = np.array(self.residuals, dtype=float).ravel()
        if self.origins is None:
            origins = np.full(len(roots), NUMERIC_ORIGIN, dtype=int)
        else:
            origins = np.array(self.origins, dtype=int).ravel()
        if not (len(roots) == len(residuals) == len(origins)):
            raise PreconditionError('Длины корней, невязок и происхождений должны совпадать')
        for array in (roots, residuals, origins):
            array.setflags(write=False)
        object.__setattr__(self, 'roots', roots)
        object.__setattr__(self, 'residuals', residuals)
        object.__setattr__(self, 'origins', origins)

    def __len__(self):
        return len(self.roots)

    def __repr__(self):
        return f'<RootMultiset {self.method} degree={len(self)}>'


@dataclass(frozen=True)
class ChordArc:
    """
    Пара соседних различных нулей z = e^{iθ}, z⁺ = e^{iθ⁺} с θ < θ⁺ < θ + 2π
    alpha = θ⁺ - θ хранится избыточно и проверяется при создании
    """
    theta: float
    theta_plus: float
    alpha: float = None

    def __post_init__(self):
        theta = float(self.theta)
        theta_plus = float(self.theta_plus)
        alpha = theta_plus - theta
        if self.alpha is not None and float(self.alpha) != alpha:
            raise PreconditionError('alpha должна точно равняться θ⁺ - θ')
        if not 0 <= theta < TWO_PI:
            raise PreconditionError('θ должен лежать в [0, 2π)')
        if not 0 < alpha < TWO_PI:
            raise PreconditionError('Зазор α = θ⁺ - θ должен лежать в (0, 2π)')
        object.__setattr__(self, 'theta', theta)
        object.__setattr__(self, 'theta_plus', theta_plus)
        object.__setattr__(self, 'alpha', alpha)

    @classmethod
    def from_angles(cls, theta, theta_plus):
        """Хорда по двум произвольным аргументам; θ⁺ поднимается в (θ, θ + 2π)"""
        theta = float(theta) % TWO_PI
        lift = (float(theta_plus) - theta) % TWO_PI
        return cls(theta, theta + lift)

    @property
    def z(self):
        return cmath.exp(1j * self.theta)

    @property
    def z_plus(self):
        return cmath.exp(1j * self.theta_plus)

    def to_dict(self):
        return {'theta': self.theta, 'theta_plus': self.theta_plus, 'alpha': self.alpha}


@dataclass(frozen=True)
class AngleValue:
    """Неориентированный угол Θ ∈ [0, π]; endpoint_case: применено соглашение о концах"""
    value: float
    endpoint_case: bool = False

    def __post_init__(self):
        if not 0 <= self.value <= math.pi:
            raise PreconditionError(f'Угол {self.value!r} вне [0, π]')


@dataclass(frozen=True)
class DualityReport:
    """
    Отчёт проверки тождества двойственности углов для одной хорды
    Σ Θ(w_k; z, z⁺) = π + (N - 2)·α/2
    """
    chord: ChordArc
    per_root_angles: tuple
    angle_sum: float
    rhs: float
    residual: float
    roots: tuple = ()
    method: str = METHOD_FACTORIZED
    chord_index: int = None

    def to_dict(self):
        return {
            'chord': self.chord.to_dict(),
            'chord_index': self.chord_index,
            'method': self.method,
            'angles': [a.value for a in self.per_root_angles],
            'endpoint_cases': [a.endpoint_case for a in self.per_root_angles],
            'angle_sum': self.angle_sum,
            'rhs': self.rhs,
            'residual': self.residual,
            'roots': [_complex_pair(r) for r in self.roots],
        }


@dataclass(frozen=True)
class GapReport:
    """
    Отчёт проверки принципа зазора N_ε ≤ c0/(εG) при c0 = 4π
    intermediate_bound: оценка (π - G/2)/δ(ε, G) из разбора двух случаев,
    slack = bound - N_ε сообщается, но не проверяется
    """
    max_gap: float
    epsilon: float
    interior_count: int
    bound: float
    satisfied: bool
    intermediate_bound: float = math.inf
    intermediate_holds: bool = True
    root_count: int = 0

    @property
    def slack(self):
        return self.bound - self.interior_count

    def to_dict(self):
        return {
            'max_gap': self.max_gap,
            'epsilon': self.epsilon,
            'interior_count': self.interior_count,
            'bound': self.bound,
            'satisfied': self.satisfied,
            'intermediate_bound': self.intermediate_bound,
            'intermediate_holds': self.intermediate_holds,
            'slack': self.slack,
            'root_count': self.root_count,
        }


@dataclass(frozen=True)
class InstanceSpec:
    """
    Описание экземпляра в файле: нули (угол в радианах, кратность),
    веса в каноническом порядке или метка 'uniform'
    """
    zeros: tuple
    weights: object = 'uniform'
    seed: int = None
    index: int = None
    name: str = None

    def to_configuration(self):
        """
        Конфигурация из нулей файла: углы приводятся к [0, 2π), сортируются,
        совпадающие сливаются с суммарной кратностью
        """
        return ZeroConfiguration.from_angles(
            [angle for angle, _ in self.zeros],
            [multiplicity for _, multiplicity in self.zeros],
        )

    def to_weights(self, config=None):
        """
        Веса экземпляра; 'uniform' раскрывается в λ_j = 1/N
        Явные веса идут в порядке нулей файла и переставляются в канонический порядок конфигурации
        """
        config = config or self.to_configuration()
        if self.weights == 'uniform':
            return WeightVector.uniform(config.degree)
        if len(self.weights) != config.degree:
            raise InvalidWeightsError(f'Число весов ({len(self.weights)}) не совпадает со степенью N = {config.degree}')

        distinct = np.asarray(config.distinct_angles)
        blocks = []
        position = 0
        for angle, multiplicity in self.zeros:
            distance = np.abs(np.angle(np.exp(1j * (float(angle) - distinct))))
            blocks.append((int(np.argmin(distance)), self.weights[position:position + multiplicity]))
            position += multiplicity
        blocks.sort(key=lambda block: block[0])
        return WeightVector.from_values([w for _, block in blocks for w in block])

    @classmethod
    def from_configuration(cls, config, weights='uniform', seed=None, index=None, name=None):
        if isinstance(weights, WeightVector):
            weights = weights.weights
        if not isinstance(weights, str):
            weights = tuple(float(w) for w in weights)
        return cls(
            tuple(zip(config.distinct_angles, config.multiplicities)),
            weights,
            seed,
            index,
            name,
        )

    def to_dict(self):
        data = {
            'zeros': [{'angle': angle, 'multiplicity': multiplicity}
                      for angle, multiplicity in self.zeros],
            'weights': self.weights if self.weights == 'uniform' else list(self.weights),
        }
        for key in ('seed', 'index', 'name'):
            value = getattr(self, key)
            if value is not None:
                data[key] = value
        return data

    @classmethod
    def from_dict(cls, data):
        zeros = tuple((float(item['angle']), int(item['multiplicity'])) for item in data['zeros'])
        weights = data.get('weights', 'uniform')
        if weights != 'uniform':
            weights = tuple(float(w) for w in weights)
        return cls(zeros, weights, data.get('seed'), data.get('index'), data.get('name'))


@dataclass(frozen=True)
class SweepConfig:
    """Параметры прогона случайных экземпляров"""
    count: int = Config.SWEEP_COUNT
    degree_range: tuple = Config.SWEEP_DEGREE_RANGE
    epsilon_list: tuple = Config.SWEEP_EPSILONS
    multiplicity_max: int = Config.SWEEP_MULTIPLICITY_MAX
    seed: int = Config.SWEEP_SEED

    def __post_init__(self):
        from validators.instance_validator import validate_sweep_config

        object.__setattr__(self, 'degree_range', tuple(int(n) for n in self.degree_range))
        object.__setattr__(self, 'epsilon_list', tuple(float(e) for e in self.epsilon_list))
        error = validate_sweep_config(self.count, self.degree_range, self.epsilon_list,
                                      self.multiplicity_max, self.seed)
        if error:
            raise InvalidConfigurationError(error)

"""
Иерархия исключений набора инструментов
Каждое исключение несёт короткий машинный код, который CLI выводит
в однострочном сообщении об ошибке
"""


class LuneKitError(Exception):
    """Базовое исключение для всех ошибок набора инструментов"""
    code = 'lune-kit-error'


class InvalidConfigurationError(LuneKitError, ValueError):
    """Некорректная конфигурация нулей или некорректный экземпляр"""
    code = 'invalid-configuration'


class InvalidWeightsError(LuneKitError, ValueError):
    """Веса не лежат на симплексе или не совпадают по длине со степенью"""
    code = 'invalid-weights'


class IndexOutOfRangeError(LuneKitError, ValueError):
    """Индекс нуля вне расширенного мультимножества"""
    code = 'index-out-of-range'


class PreconditionError(LuneKitError, ValueError):
    """Нарушено предусловие операции (диапазон параметра, положение точки)"""
    code = 'precondition'


class EndpointProximityError(LuneKitError, ValueError):
    """Знаковая разность аргументов не определена в концах хорды"""
    code = 'endpoint-proximity'


class SingleDistinctZeroError(LuneKitError, ValueError):
    """У многочлена единственный различный нуль, пар соседних нулей нет"""
    code = 'single-distinct-zero'


class PositivityRequiredError(LuneKitError, ValueError):
    """Тождество двойственности углов требует строго положительных весов"""
    code = 'positivity-required'


class UnsupportedMultiplicityError(LuneKitError, ValueError):
    """Операция определена только для простых нулей"""
    code = 'unsupported-multiplicity'


class RootFindingError(LuneKitError, ArithmeticError):
    """
    Итерация Аберта-Эрлиха не сошлась
    Хранит лучшее найденное приближение, чтобы вызывающий код мог его изучить
    """
    code = 'root-not-converged'

    def __init__(self, message, best_iterate=None):
        super().__init__(message)
        self.best_iterate = best_iterate

    @property
    def residuals(self):
        """Невязки лучшего приближения"""
        if self.best_iterate is None:
            return None
        return self.best_iterate.residuals


class TheoremAssertionError(LuneKitError, AssertionError):
    """
    Проверка теоремы не прошла (оценка зазора или невязка двойственности)
    CLI завершается с кодом 2
    """
    code = 'assertion-failed'

    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind

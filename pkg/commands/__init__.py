"""
Команды интерфейса командной строки
Каждый модуль содержит функцию-исполнитель (run_*) и одну команду click
"""
import click

from config import Config
from engine.exceptions import InvalidConfigurationError
from validators.instance_validator import validate_epsilon


def instance_options(command):
    """Общие опции выбора экземпляра: --instance <путь> или --builtin <имя>"""
    from seed import BUILTIN_INSTANCES

    command = click.option('--builtin', type=click.Choice(sorted(BUILTIN_INSTANCES)),
                           help='Именованный экземпляр из разобранных примеров')(command)
    command = click.option('--instance', 'instance_path', type=click.Path(dir_okay=False),
                           help='Файл экземпляров (один JSON-объект на строку)')(command)
    return command


def out_option(command):
    """Общая опция --out; без неё отчёт пишется в стандартный вывод"""
    return click.option('--out', 'out_path', type=click.Path(dir_okay=False),
                        help='Файл отчёта (один JSON-объект на строку)')(command)


def seed_option(command):
    """Общая опция --seed"""
    return click.option('--seed', type=int, default=None,
                        help='Зерно генератора случайных чисел')(command)


def load_instances(instance_path, builtin):
    """
    Экземпляры для команды: список пар (InstanceSpec, описание именованного экземпляра или None)
    Ровно один из источников должен быть задан
    """
    from repositories.instance_repository import InstanceRepository
    from seed import get_builtin

    if bool(instance_path) == bool(builtin):
        raise click.UsageError('Укажите ровно одну из опций --instance или --builtin')
    if builtin:
        entry = get_builtin(builtin)
        return [(entry['instance'], entry)]
    return [(instance, None) for instance in InstanceRepository.load(instance_path)]


def parse_epsilons(text):
    """Список ε из строки через запятую; пустая строка даёт значения по умолчанию"""
    if not text:
        return tuple(Config.SWEEP_EPSILONS)
    try:
        values = tuple(float(item) for item in text.split(',') if item.strip())
    except ValueError as e:
        raise click.UsageError(f'Некорректный список ε: {text!r}') from e
    if not values:
        raise click.UsageError('Список ε пуст')
    for value in values:
        error = validate_epsilon(value)
        if error:
            raise InvalidConfigurationError(error)
    return values


def instance_label(instance, position):
    """Метка экземпляра в отчёте: имя, номер генерации или позиция в файле"""
    if instance.name is not None:
        return instance.name
    if instance.index is not None:
        return instance.index
    return position

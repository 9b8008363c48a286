"""
Главный файл набора инструментов lune-kit
Интерфейс командной строки для построения выпуклых комбинаций неполных
многочленов с нулями на единичной окружности, проверки тождества
двойственности углов, принципа зазора и воспроизведения рисунков
"""
import logging
import sys

import click

from config import Config
from engine.exceptions import LuneKitError, TheoremAssertionError

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

# Коды завершения
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ASSERTION = 2


def _usage_line(error):
    """Однострочное сообщение об ошибке использования"""
    message = error.format_message().replace('\n', ' ')
    click.echo(f'error: usage: {message}', err=True)


class LuneKitGroup(click.Group):
    """
    Группа команд с единым разбором ошибок
    Любая ошибка печатается одной строкой в stderr:
    ошибки использования и ввода-вывода завершаются кодом 1,
    невыполненные утверждения теорем кодом 2
    """

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            _usage_line(e)
            sys.exit(EXIT_ERROR)

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except TheoremAssertionError as e:
            click.echo(f'assertion-failed: {e.kind}: {e}', err=True)
            ctx.exit(EXIT_ASSERTION)
        except LuneKitError as e:
            click.echo(f'error: {e.code}: {e}', err=True)
            ctx.exit(EXIT_ERROR)
        except click.UsageError as e:
            _usage_line(e)
            ctx.exit(EXIT_ERROR)
        except OSError as e:
            click.echo(f'error: io: {e}', err=True)
            ctx.exit(EXIT_ERROR)


def configure_logging(verbose=False):
    """Настройка корневого логгера из конфигурации или флага --verbose"""
    level = logging.DEBUG if verbose else getattr(logging, Config.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)
    # Подробные сообщения matplotlib о шрифтах не нужны
    logging.getLogger('matplotlib').setLevel(logging.WARNING)


@click.group(cls=LuneKitGroup)
@click.option('--verbose', '-v', is_flag=True, help='Подробный журнал (уровень DEBUG)')
def cli(verbose):
    """Проверки геометрии выпуклых комбинаций неполных многочленов"""
    configure_logging(verbose)


def register_commands(group):
    """Регистрация всех команд в группе"""
    from commands.counterexample import counterexample_command
    from commands.duality import verify_duality_command
    from commands.figure import figure_command
    from commands.gap import verify_gap_command
    from commands.sweep import sweep_command

    for command in (verify_duality_command, verify_gap_command, counterexample_command,
                    sweep_command, figure_command):
        group.add_command(command)


register_commands(cli)


def main():
    """Точка входа консольного сценария lune-kit"""
    cli(prog_name='lune-kit')


if __name__ == '__main__':
    main()

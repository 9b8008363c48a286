"""
Команда verify-duality: проверка тождества двойственности углов
"""
import logging

import click

from commands import instance_label, instance_options, load_instances, out_option
from config import Config
from engine import polycore, theorems
from engine.exceptions import IndexOutOfRangeError, TheoremAssertionError

logger = logging.getLogger(__name__)


def run_duality(instance, chord=None):
    """
    Отчёты двойственности для экземпляра: по одному на каждую соседнюю хорду
    либо только для хорды с номером chord

    Returns:
        list: Список DualityReport
    """
    config = instance.to_configuration()
    weights = instance.to_weights(config)
    chords = theorems.consecutive_pairs(config)
    if chord is not None:
        if not 0 <= chord < len(chords):
            raise IndexOutOfRangeError(f'Номер хорды {chord} вне диапазона 0..{len(chords) - 1}')
        chords = [chords[chord]]

    roots = polycore.roots_of_combination(config, weights)
    return [theorems.verify_angle_duality(config, weights, arc, roots=roots) for arc in chords]


@click.command('verify-duality')
@instance_options
@click.option('--chord', type=int, default=None, help='Номер хорды (с нуля); по умолчанию все хорды')
@out_option
def verify_duality_command(instance_path, builtin, chord, out_path):
    """Проверить тождество двойственности углов для каждой соседней хорды"""
    from repositories.report_repository import open_report_writer

    worst = 0.0
    with open_report_writer(out_path) as writer:
        for position, (instance, _) in enumerate(load_instances(instance_path, builtin)):
            for report in run_duality(instance, chord):
                writer.write(dict(report.to_dict(), instance=instance_label(instance, position)))
                worst = max(worst, report.residual)

    logger.info('Наибольшая невязка двойственности: %.3e', worst)
    if worst > Config.DUALITY_RESIDUAL:
        raise TheoremAssertionError(
            'duality-residual',
            f'невязка {worst:.3e} превышает допуск {Config.DUALITY_RESIDUAL:.1e}',
        )

"""
Команда figure: рисунок SVG и таблица координат CSV

На рисунке единичная окружность, нули L (кружки), корни L_λ (крестики),
хорда между соседними нулями с залитой лункой и, если задано ε,
внутренняя окружность |u| = 1 - ε
"""
import logging
from pathlib import Path

import click
import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from commands import instance_options, load_instances  # noqa: E402
from config import Config  # noqa: E402
from engine import lunegeom, polycore, theorems  # noqa: E402
from engine.exceptions import IndexOutOfRangeError  # noqa: E402

logger = logging.getLogger(__name__)

matplotlib.rcParams.update({
    'svg.hashsalt': 'lune-kit',   # постоянные идентификаторы элементов SVG
    'svg.fonttype': 'none',
    'figure.dpi': 72,
    'font.size': 10,
})

CSV_HEADER = ('kind', 'x', 'y', 'multiplicity')


def _number(value):
    return f'{value:.{Config.CSV_DIGITS}g}'


def select_chord(config, chord_index=None):
    """Хорда по номеру; без номера берётся хорда наибольшего зазора"""
    chords = theorems.consecutive_pairs(config)
    if chord_index is None:
        return theorems.max_gap(config)[0]
    if not 0 <= chord_index < len(chords):
        raise IndexOutOfRangeError(f'Номер хорды {chord_index} вне диапазона 0..{len(chords) - 1}')
    return chords[chord_index]


def figure_rows(config, roots, chord):
    """Строки CSV: различные нули, корни L_λ, концы хорды"""
    rows = [('zero', _number(zeta.real), _number(zeta.imag), m)
            for zeta, m in zip(config.distinct_zeros(), config.multiplicities)]
    rows += [('root', _number(w.real), _number(w.imag), 1) for w in roots.roots]
    rows += [('chord', _number(p.real), _number(p.imag), '') for p in (chord.z, chord.z_plus)]
    return rows


def output_paths(out_path):
    """Пара путей (SVG, CSV) с общим именем"""
    base = Path(out_path)
    return base.with_suffix('.svg'), base.with_suffix('.csv')


def emit_figure(instance, out_path, chord_index=None, epsilon=None):
    """
    Нарисовать экземпляр и записать координаты

    Returns:
        tuple: Пути к файлам SVG и CSV
    """
    from repositories.report_repository import write_csv

    config = instance.to_configuration()
    weights = instance.to_weights(config)
    roots = polycore.roots_of_combination(config, weights)
    chord = select_chord(config, chord_index)
    svg_path, csv_path = output_paths(out_path)

    circle = np.exp(1j * np.linspace(0, 2 * np.pi, Config.FIGURE_ARC_POINTS))
    lune = lunegeom.lune_boundary_polygon(chord)
    zeros = config.distinct_zeros()

    fig, ax = plt.subplots(figsize=(5, 5))
    try:
        ax.fill(lune.real, lune.imag, color='tab:blue', alpha=0.15, linewidth=0, label='Ɔ(z, z⁺)')
        ax.plot(circle.real, circle.imag, color='black', linewidth=1)
        ax.plot([chord.z.real, chord.z_plus.real], [chord.z.imag, chord.z_plus.imag],
                color='tab:blue', linewidth=1.5)
        if epsilon is not None:
            inner = (1 - epsilon) * circle
            ax.plot(inner.real, inner.imag, color='gray', linestyle='--', linewidth=1,
                    label=f'|u| = 1 - {epsilon:g}')
        ax.plot(zeros.real, zeros.imag, linestyle='none', marker='o', markersize=7,
                markerfacecolor='white', markeredgecolor='black', label='нули L')
        ax.plot(roots.roots.real, roots.roots.imag, linestyle='none', marker='x', markersize=8,
                color='tab:red', label='корни L_λ')
        ax.set_aspect('equal')
        ax.set_xlim(-1.15, 1.15)
        ax.set_ylim(-1.15, 1.15)
        ax.axis('off')
        ax.legend(loc='lower left', fontsize=8, frameon=False)
        fig.savefig(svg_path, format='svg', metadata={'Date': None})
    finally:
        plt.close(fig)

    write_csv(csv_path, CSV_HEADER, figure_rows(config, roots, chord))
    logger.info('Рисунок записан: %s, %s', svg_path, csv_path)
    return svg_path, csv_path


@click.command('figure')
@instance_options
@click.option('--chord', type=int, default=None,
              help='Номер хорды (с нуля); по умолчанию для встроенного экземпляра из его записи '
                   '(или хорда наибольшего зазора), для файла экземпляров хорда 0')
@click.option('--epsilon', type=float, default=None, help='Нарисовать окружность |u| = 1 - ε')
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), required=True,
              help='Файл SVG; таблица CSV пишется рядом с тем же именем')
def figure_command(instance_path, builtin, chord, epsilon, out_path):
    """Нарисовать экземпляр: нули, корни L_λ, хорду и лунку"""
    from validators.instance_validator import validate_epsilon
    from engine.exceptions import InvalidConfigurationError

    instances = load_instances(instance_path, builtin)
    instance, entry = instances[0]
    if len(instances) > 1:
        logger.warning('В файле %d экземпляров, рисуется первый', len(instances))
    if entry is not None:
        chord = entry['chord'] if chord is None else chord
        epsilon = entry['epsilon'] if epsilon is None else epsilon
    elif chord is None:
        chord = 0
    if epsilon is not None:
        error = validate_epsilon(epsilon)
        if error:
            raise InvalidConfigurationError(error)

    svg_path, csv_path = emit_figure(instance, out_path, chord, epsilon)
    click.echo(f'{svg_path}\n{csv_path}')

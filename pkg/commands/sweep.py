"""
Команда sweep: прогон случайных экземпляров

Каждый экземпляр проверяется независимо: двойственность углов на всех
соседних хордах, попадание корней в лунки и в выпуклую оболочку нулей,
сравнение по модулю 2π (для простых нулей) и принцип зазора для каждого ε.
Экземпляры распределяются по потокам, а записи выдаются единственному
писателю в порядке номеров, поэтому файл отчёта зависит только от параметров прогона.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import partial

import click
import numpy as np

from commands import out_option, parse_epsilons, seed_option
from config import Config
from engine import lunegeom, polycore, theorems
from engine.exceptions import LuneKitError, TheoremAssertionError
from models import SweepConfig

logger = logging.getLogger(__name__)


def _duality_checks(config, weights, roots, violations):
    """Двойственность, лунки и сравнение по модулю 2π для всех хорд"""
    residual_max = 0.0
    congruence_max = None
    for chord in theorems.consecutive_pairs(config):
        report = theorems.verify_angle_duality(config, weights, chord, roots=roots)
        residual_max = max(residual_max, report.residual)
        if not np.all(lunegeom.lune_mask(roots.roots, chord)):
            violations.append(f'lune:{report.chord_index}')
        if config.is_simple:
            oracle = theorems.congruence_distance(theorems.duality_congruence_oracle(config, weights, chord))
            congruence_max = oracle if congruence_max is None else max(congruence_max, oracle)

    if residual_max > Config.DUALITY_RESIDUAL:
        violations.append('duality-residual')
    if congruence_max is not None and congruence_max > Config.CONGRUENCE_TOL:
        violations.append('congruence')
    return residual_max, congruence_max


def evaluate_instance(sweep_config, index):
    """
    Проверить экземпляр номер index

    Returns:
        dict: Запись отчёта; список violations пуст, если все проверки прошли
    """
    from seed import generate_instance

    instance = generate_instance(sweep_config, index)
    config = instance.to_configuration()
    weights = instance.to_weights(config)
    record = {
        'index': index,
        'degree': config.degree,
        'distinct': config.distinct_count,
        'multiplicity_max': max(config.multiplicities),
    }
    violations = []
    try:
        roots = polycore.roots_of_combination(config, weights)
        residual_max, congruence_max = _duality_checks(config, weights, roots, violations)
        hull = config.distinct_zeros()
        if not all(lunegeom.convex_hull_contains(hull, complex(root)) for root in roots.roots):
            violations.append('hull')
        gap_reports = []
        for epsilon in sweep_config.epsilon_list:
            report = theorems.verify_gap_principle(config, weights, epsilon, roots=roots)
            gap_reports.append(report.to_dict())
            if not report.satisfied:
                violations.append(f'gap-bound:{epsilon:g}')
            if not report.intermediate_holds:
                violations.append(f'intermediate:{epsilon:g}')
    except LuneKitError as e:
        logger.warning('Экземпляр %d: %s', index, e)
        record.update(error=e.code, violations=[e.code])
        return record

    record.update(
        duality_residual_max=residual_max,
        congruence_max=congruence_max,
        gap=gap_reports,
        violations=violations,
    )
    return record


def run_sweep(sweep_config, writer, workers=Config.SWEEP_WORKERS):
    """
    Выполнить прогон и записать по строке на экземпляр и итоговую строку

    Returns:
        dict: Итоговая запись прогона
    """
    evaluate = partial(evaluate_instance, sweep_config)
    failed = 0
    violation_total = 0
    residual_max = 0.0
    with ThreadPoolExecutor(max_workers=workers) as executor:
        # map сохраняет порядок номеров независимо от порядка завершения
        for record in executor.map(evaluate, range(sweep_config.count)):
            writer.write(record)
            if record['violations']:
                failed += 1
                violation_total += len(record['violations'])
            residual_max = max(residual_max, record.get('duality_residual_max', 0.0))
            if (record['index'] + 1) % Config.PROGRESS_EVERY == 0:
                logger.debug('Прогон: проверено %d из %d', record['index'] + 1, sweep_config.count)

    summary = {
        'summary': True,
        'count': sweep_config.count,
        'seed': sweep_config.seed,
        'degree_range': list(sweep_config.degree_range),
        'epsilon_list': list(sweep_config.epsilon_list),
        'multiplicity_max': sweep_config.multiplicity_max,
        'failed_instances': failed,
        'violations': violation_total,
        'duality_residual_max': residual_max,
    }
    writer.write(summary)
    logger.info('Прогон завершён: %d экземпляров, нарушений %d', sweep_config.count, violation_total)
    return summary


@click.command('sweep')
@click.option('--count', type=int, default=Config.SWEEP_COUNT, show_default=True, help='Число экземпляров')
@click.option('--nmin', type=int, default=Config.SWEEP_DEGREE_RANGE[0], show_default=True, help='Наименьшая степень N')
@click.option('--nmax', type=int, default=Config.SWEEP_DEGREE_RANGE[1], show_default=True, help='Наибольшая степень N')
@click.option('--mmax', type=int, default=Config.SWEEP_MULTIPLICITY_MAX, show_default=True,
              help='Наибольшая кратность нуля')
@click.option('--epsilon', 'epsilon_text', default=None, help='Значения ε через запятую')
@click.option('--workers', type=int, default=Config.SWEEP_WORKERS, show_default=True, help='Число потоков')
@click.option('--save-instances', type=click.Path(dir_okay=False), default=None,
              help='Сохранить сгенерированные экземпляры в файл')
@seed_option
@out_option
def sweep_command(count, nmin, nmax, mmax, epsilon_text, workers, save_instances, seed, out_path):
    """Прогнать случайные экземпляры и записать отчёт"""
    from repositories.instance_repository import InstanceRepository
    from repositories.report_repository import open_report_writer
    from seed import generate_instance

    if workers < 1:
        raise click.UsageError('Число потоков должно быть положительным')
    sweep_config = SweepConfig(
        count=count,
        degree_range=(nmin, nmax),
        epsilon_list=parse_epsilons(epsilon_text),
        multiplicity_max=mmax,
        seed=Config.SWEEP_SEED if seed is None else seed,
    )
    if save_instances:
        InstanceRepository.save(save_instances, (generate_instance(sweep_config, i) for i in range(count)))

    with open_report_writer(out_path) as writer:
        summary = run_sweep(sweep_config, writer, workers)

    if summary['violations']:
        raise TheoremAssertionError(
            'sweep',
            f'экземпляров с нарушениями: {summary["failed_instances"]} из {summary["count"]}',
        )

"""
Команда verify-gap: проверка принципа зазора N_ε ≤ 4π/(εG)
"""
import click

from commands import instance_label, instance_options, load_instances, out_option, parse_epsilons
from engine import polycore, theorems
from engine.exceptions import TheoremAssertionError


def run_gap(instance, epsilon_list):
    """
    Отчёты принципа зазора для экземпляра, по одному на каждое ε
    Корни L_λ находятся один раз

    Returns:
        list: Список GapReport
    """
    config = instance.to_configuration()
    weights = instance.to_weights(config)
    roots = polycore.roots_of_combination(config, weights)
    return [theorems.verify_gap_principle(config, weights, epsilon, roots=roots) for epsilon in epsilon_list]


@click.command('verify-gap')
@instance_options
@click.option('--epsilon', 'epsilon_text', default=None,
              help='Значения ε через запятую; по умолчанию набор из конфигурации')
@out_option
def verify_gap_command(instance_path, builtin, epsilon_text, out_path):
    """Проверить принцип зазора для каждого ε"""
    from repositories.report_repository import open_report_writer

    epsilons = parse_epsilons(epsilon_text)
    failures = []
    with open_report_writer(out_path) as writer:
        for position, (instance, _) in enumerate(load_instances(instance_path, builtin)):
            label = instance_label(instance, position)
            for report in run_gap(instance, epsilons):
                writer.write(dict(report.to_dict(), instance=label))
                if not report.satisfied or not report.intermediate_holds:
                    failures.append(f'{label} ε={report.epsilon:g} N_ε={report.interior_count} '
                                    f'оценка {report.bound:.6g}')

    if failures:
        raise TheoremAssertionError('gap-bound', '; '.join(failures))

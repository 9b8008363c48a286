"""
Команда counterexample: два разобранных примера
zero-weight: нарушение двойственности при нулевом весе,
sendov: корни L_λ на расстоянии больше 1 от нуля многочлена
"""
import click

from commands import out_option
from engine import polycore, theorems


def run_zero_weight():
    """Запись отчёта о нарушении тождества при λ = (0, 1/2, 1/2)"""
    report, identity_fails = theorems.zero_weight_counterexample()
    return dict(report.to_dict(), counterexample='zero-weight', identity_fails=identity_fails)


def run_sendov():
    """Запись с коэффициентами L_λ и расстояниями от каждого нуля до ближайшего корня"""
    from seed import get_builtin

    instance = get_builtin('sendov')['instance']
    config = instance.to_configuration()
    weights = instance.to_weights(config)
    combination = polycore.convex_combination(config, weights)
    distances = theorems.sendov_distance(config, weights)
    return {
        'counterexample': 'sendov',
        'coefficients': [[float(c.real), float(c.imag)] for c in combination.full_coefficients()],
        'distances': [{'zero': [zeta.real, zeta.imag], 'distance': distance} for zeta, distance in distances],
        'exceeds_one': any(distance > 1 for _, distance in distances),
    }


COUNTEREXAMPLES = {
    'zero-weight': run_zero_weight,
    'sendov': run_sendov,
}


@click.command('counterexample')
@click.argument('name', type=click.Choice(sorted(COUNTEREXAMPLES)))
@out_option
def counterexample_command(name, out_path):
    """Воспроизвести разобранный контрпример"""
    from repositories.report_repository import open_report_writer

    with open_report_writer(out_path) as writer:
        writer.write(COUNTEREXAMPLES[name]())

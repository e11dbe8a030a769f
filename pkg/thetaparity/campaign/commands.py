import asyncio
import json
import uuid
from typing import Any, Callable

import click
from loguru import logger
from pydantic import ValidationError

from thetaparity.campaign.archive import archive_report, get_run, list_runs
from thetaparity.campaign.runner import run_campaign
from thetaparity.campaign.schemas import CampaignConfig
from thetaparity.campaign.writers import render_report, write_report
from thetaparity.core.config import settings
from thetaparity.core.constants import CampaignCommands, ExitCodes, FieldKinds, GeneratorModes, ReportFormats
from thetaparity.core.exceptions.algebra_exceptions import ThetaParityError


def field_options(func: Callable) -> Callable:
    """Опции поля коэффициентов."""
    func = click.option('--prime', type=int, default=None,
                        help=f'Модуль простого поля (по умолчанию {settings.DEFAULT_PRIME}).')(func)
    func = click.option('--field', 'field_kind', type=click.Choice(FieldKinds.ALL), default=FieldKinds.PRIME,
                        show_default=True, help='Поле коэффициентов.')(func)
    return func


def output_options(func: Callable) -> Callable:
    """Опции вывода и архива отчёта."""
    func = click.option('--archive', is_flag=True, help='Сохранить отчёт в архив SQLite.')(func)
    func = click.option('--format', 'fmt', type=click.Choice(ReportFormats.ALL), default=ReportFormats.JSON,
                        show_default=True, help='Формат отчёта.')(func)
    func = click.option('--out', type=click.Path(dir_okay=False), default=None,
                        help='Файл отчёта; по умолчанию stdout.')(func)
    return func


def campaign_options(func: Callable) -> Callable:
    """Общие опции кампаний со случайными экземплярами."""
    func = click.option('--only-trial', type=int, default=None,
                        help='Повторить только испытание с этим номером.')(func)
    func = click.option('--workers', type=int, default=None, help='Число процессов.')(func)
    func = click.option('--seed', type=int, default=None, help='Зерно кампании.')(func)
    func = click.option('--trials', type=int, default=None, help='Число испытаний.')(func)
    func = click.option('--k-max', type=int, default=None, help='Наибольшее k.')(func)
    return func


def pair_options(func: Callable) -> Callable:
    """Опции генератора пар изотропных решёток."""
    func = click.option('--precision', type=int, default=None, help='Рабочая точность N.')(func)
    func = click.option('--mode', type=click.Choice(GeneratorModes.ALL), default=GeneratorModes.MU_PARAM,
                        show_default=True, help='Режим генератора.')(func)
    func = click.option('--r-range', type=str, default=None, help="Диапазон r вида 'a:b'.")(func)
    return func


def _execute(command: str, out: str | None, fmt: str, archive: bool, field_kind: str, **fields: Any) -> None:
    """
    Проверяет конфигурацию, выполняет кампанию и выводит отчёт.

    Код завершения: 0, если все свойства выполнены; 1 при нарушении; 2 при ошибке параметров.
    """

    ctx = click.get_current_context()
    values = {key: value for key, value in fields.items() if value is not None}
    try:
        config = CampaignConfig(command=command, field=field_kind, **values)
    except ValidationError as exc:
        logger.error(f"Некорректные параметры кампании {command}")
        click.echo(f"Ошибка параметров:\n{exc}", err=True)
        ctx.exit(ExitCodes.USAGE)
    try:
        report = run_campaign(config)
        if out:
            write_report(report, out, fmt)
        else:
            click.echo(render_report(report, fmt))
        if archive:
            asyncio.run(archive_report(report))
    except ThetaParityError as exc:
        logger.error(f"{type(exc).__name__}: {exc.detail}")
        click.echo(f"Ошибка: {exc.detail}", err=True)
        ctx.exit(exc.exit_code)
    ctx.exit(ExitCodes.OK if report.passed else ExitCodes.PROPERTY_VIOLATION)


@click.command('skew')
@click.option('--q-range', type=str, default=None, help="Диапазон q вида 'a:b'.")
@campaign_options
@field_options
@output_options
def skew_command(**options: Any) -> None:
    """Чётность и монотонность рангов случайных кососимметричных семейств."""
    _execute(CampaignCommands.SKEW, **options)


@click.command('isotropic')
@pair_options
@campaign_options
@field_options
@output_options
def isotropic_command(**options: Any) -> None:
    """Размерности пересечений случайных пар вполне изотропных решёток."""
    _execute(CampaignCommands.ISOTROPIC, **options)


@click.command('torsion')
@click.option('--matrix-file', type=click.Path(dir_okay=False), default=None,
              help='Посчитать профиль кручения коядра матрицы из файла.')
@pair_options
@campaign_options
@field_options
@output_options
def torsion_command(**options: Any) -> None:
    """Расщепление профиля кручения модельного комплекса и замена базы."""
    _execute(CampaignCommands.TORSION, **options)


@click.command('base-change')
@click.option('--rank-max', type=int, default=None, help='Наибольший ранг модулей комплекса.')
@click.option('--degree-max', type=int, default=None, help='Наибольшая степень элементов дифференциала.')
@campaign_options
@field_options
@output_options
def base_change_command(trials: int | None, k_max: int | None, **options: Any) -> None:
    """Замена базы для случайных двучленных комплексов."""
    _execute(
        CampaignCommands.BASE_CHANGE,
        trials=settings.BASE_CHANGE_TRIALS if trials is None else trials,
        k_max=settings.BASE_CHANGE_K_MAX if k_max is None else k_max,
        **options,
    )


@click.command('counterexample')
@click.option('--zero', is_flag=True, help='Нулевая матрица вместо фиксированной.')
@click.option('--random', 'random_', is_flag=True, help='Случайные матрицы над K[x, y]/(x, y)^2.')
@click.option('--with-constant', is_flag=True, help='Разрешить постоянную часть у случайных матриц.')
@campaign_options
@field_options
@output_options
def counterexample_command(random_: bool, **options: Any) -> None:
    """Кососимметричная матрица над K[x, y]/(x, y)^2 с образом нечётной размерности."""
    _execute(CampaignCommands.COUNTEREXAMPLE, random=random_, **options)


@click.command('history')
@click.option('--command', 'command_name', type=click.Choice(CampaignCommands.ALL), default=None,
              help='Только кампании этой подкоманды.')
@click.option('--run-id', type=click.UUID, default=None, help='Показать полную запись одной кампании.')
def history_command(command_name: str | None, run_id: uuid.UUID | None) -> None:
    """Список кампаний из архива или запись одной кампании."""
    if run_id is not None:
        record = asyncio.run(get_run(run_id))
        if record is None:
            click.echo(f"Кампания {run_id} не найдена в архиве.", err=True)
            click.get_current_context().exit(ExitCodes.USAGE)
        click.echo(json.dumps(record, ensure_ascii=False, indent=2))
        return
    runs = asyncio.run(list_runs(command_name))
    if not runs:
        click.echo('Архив пуст.')
        return
    for run in runs:
        click.echo(
            f"{run.id}  {run.created_at}  {run.command:<14} seed={run.seed}  "
            f"trials={run.trials}  failures={run.failures}"
        )


COMMANDS = (
    skew_command,
    isotropic_command,
    torsion_command,
    base_change_command,
    counterexample_command,
    history_command,
)

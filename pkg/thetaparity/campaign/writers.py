import csv
import io
import json
from pathlib import Path

from loguru import logger

from thetaparity.campaign.schemas import Report
from thetaparity.core.constants import ReportFormats
from thetaparity.core.exceptions.algebra_exceptions import UsageError

CSV_COLUMNS = ('trial', 'seed', 'passed', 'params', 'sequences', 'properties', 'counterexample')


def report_to_json(report: Report) -> str:
    return report.model_dump_json(indent=2)


def report_to_csv(report: Report) -> str:
    """
    Одна строка на испытание; вложенные поля записываются компактным JSON.
    Итог кампании идёт последней строкой с trial = 'summary'.
    """

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for record in report.records:
        row = record.model_dump(mode='json')
        writer.writerow([
            row['trial'],
            row['seed'],
            row['passed'],
            *(json.dumps(row[key], sort_keys=True) for key in ('params', 'sequences', 'properties')),
            json.dumps(row['counterexample'], sort_keys=True) if row['counterexample'] is not None else '',
        ])
    writer.writerow(['summary', report.config.seed, report.passed, '', report.summary.model_dump_json(), '', ''])
    return buffer.getvalue()


def render_report(report: Report, fmt: str = ReportFormats.JSON) -> str:
    """
    Сериализует отчёт в выбранном формате.

    :raises UsageError: Неизвестный формат
    """

    if fmt == ReportFormats.JSON:
        return report_to_json(report)
    if fmt == ReportFormats.CSV:
        return report_to_csv(report)
    raise UsageError(f'Неизвестный формат отчёта: {fmt}')


def write_report(report: Report, path: str | Path, fmt: str = ReportFormats.JSON) -> None:
    """
    Записывает отчёт в файл, создавая каталог при необходимости.

    :raises UsageError: Если файл не удалось записать
    """

    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(render_report(report, fmt), encoding='utf-8')
    except OSError as exc:
        raise UsageError(f'Не удалось записать отчёт в {path}: {exc}') from exc
    logger.info(f"Отчёт {report.command} записан в {path}")

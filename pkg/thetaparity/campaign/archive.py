"""
Архив кампаний в SQLite.
"""

import uuid
from typing import Any

from loguru import logger
from sqlalchemy.ext.asyncio import AsyncEngine, AsyncSession, async_sessionmaker

from thetaparity.campaign.dao import CampaignRunDAO, TrialResultDAO
from thetaparity.campaign.schemas import (
    Report, SCampaignRunAdd, SCampaignRunFilter, SCampaignRunInfo, STrialResultAdd, STrialResultFilter
)
from thetaparity.core.config import database_url
from thetaparity.core.dependencies.dao_dep import get_session_with_commit, get_session_without_commit
from thetaparity.dao import database
from thetaparity.dao.database import Base, create_session_maker, ensure_sqlite_directory


async def init_archive(engine: AsyncEngine, url: str) -> None:
    """Создаёт таблицы архива, если их ещё нет."""
    ensure_sqlite_directory(url)
    async with engine.begin() as connection:
        await connection.run_sync(Base.metadata.create_all)


def _open(url: str | None) -> tuple[AsyncEngine, async_sessionmaker[AsyncSession], bool]:
    if url is None or url == database_url:
        return database.engine, database.async_session_maker, False
    engine, session_maker = create_session_maker(url)
    return engine, session_maker, True


async def archive_report(report: Report, url: str | None = None) -> SCampaignRunInfo:
    """
    Сохраняет отчёт кампании: одну строку кампании и по строке на испытание.

    :param report: Отчёт кампании
    :param url: URL базы; по умолчанию из настроек
    :return: Сведения о сохранённой кампании
    """

    engine, session_maker, owned = _open(url)
    try:
        await init_archive(engine, url or database_url)
        async with get_session_with_commit(session_maker) as session:
            run = await CampaignRunDAO(session).add(SCampaignRunAdd(
                command=report.command,
                seed=str(report.config.seed),
                trials=report.summary.trials,
                failures=report.summary.failures,
                config=report.config.model_dump(mode='json'),
                summary=report.summary.model_dump(mode='json'),
            ))
            await session.refresh(run)
            await TrialResultDAO(session).add_many([
                STrialResultAdd(
                    run_id=run.id,
                    trial=record.trial,
                    seed=str(record.seed),
                    passed=record.passed,
                    payload=record.model_dump(mode='json'),
                )
                for record in report.records
            ])
            info = SCampaignRunInfo.model_validate(run)
    finally:
        if owned:
            await engine.dispose()
    logger.info(f"Кампания {report.command} сохранена в архив под ID {info.id}")
    return info


async def list_runs(command: str | None = None, url: str | None = None) -> list[SCampaignRunInfo]:
    """
    Возвращает архивные кампании в порядке записи.

    :param command: Только кампании этой подкоманды
    :param url: URL базы; по умолчанию из настроек
    """

    engine, session_maker, owned = _open(url)
    try:
        await init_archive(engine, url or database_url)
        filters = SCampaignRunFilter(command=command) if command else None
        async with get_session_without_commit(session_maker) as session:
            runs = await CampaignRunDAO(session).find_all(filters)
            return [SCampaignRunInfo.model_validate(run) for run in runs]
    finally:
        if owned:
            await engine.dispose()


async def count_trials(run_id: uuid.UUID, url: str | None = None) -> int:
    """Число сохранённых испытаний кампании."""
    engine, session_maker, owned = _open(url)
    try:
        async with get_session_without_commit(session_maker) as session:
            return await TrialResultDAO(session).count(STrialResultFilter(run_id=run_id))
    finally:
        if owned:
            await engine.dispose()


async def get_run(run_id: uuid.UUID, url: str | None = None) -> dict[str, Any] | None:
    """
    Полная архивная запись кампании.

    :param run_id: ID кампании
    :param url: URL базы; по умолчанию из настроек
    :return: Поля записи (параметры, итог, время записи) или None, если такой кампании нет
    """

    engine, session_maker, owned = _open(url)
    try:
        await init_archive(engine, url or database_url)
        async with get_session_without_commit(session_maker) as session:
            run = await CampaignRunDAO(session).find_one_or_none_by_id(run_id)
            return run.to_dict() if run else None
    finally:
        if owned:
            await engine.dispose()

import uuid
from typing import Any

from sqlalchemy import JSON, ForeignKey, String
from sqlalchemy.orm import Mapped, mapped_column, relationship

from thetaparity.dao.database import Base


class CampaignRun(Base):
    """
    Архивная запись кампании проверки.

    :Attributes:
        command (Mapped[str]): Имя подкоманды
        seed (Mapped[str]): Зерно кампании строкой (64 бита без знака не помещаются в BIGINT)
        trials (Mapped[int]): Число выполненных испытаний
        failures (Mapped[int]): Число испытаний с нарушениями
        config (Mapped[dict]): Параметры кампании
        summary (Mapped[dict]): Итог кампании
        results (Mapped[list["TrialResult"]]): Записи испытаний (один-ко-многим)
    """
    command: Mapped[str] = mapped_column(String, index=True)
    seed: Mapped[str] = mapped_column(String)
    trials: Mapped[int]
    failures: Mapped[int]
    config: Mapped[dict[str, Any]] = mapped_column(JSON)
    summary: Mapped[dict[str, Any]] = mapped_column(JSON)
    results: Mapped[list["TrialResult"]] = relationship(back_populates="run", cascade="all, delete-orphan")

    def __repr__(self):
        return f"{self.__class__.__name__}(id={self.id}, command={self.command}, failures={self.failures})"


class TrialResult(Base):
    """
    Архивная запись одного испытания.

    :Attributes:
        run_id (Mapped[uuid.UUID]): ID кампании (внешний ключ)
        trial (Mapped[int]): Номер испытания
        seed (Mapped[str]): Зерно испытания строкой
        passed (Mapped[bool]): Все свойства выполнены
        payload (Mapped[dict]): Запись испытания целиком
    """
    run_id: Mapped[uuid.UUID] = mapped_column(ForeignKey('campaignruns.id', ondelete='CASCADE'), index=True)
    trial: Mapped[int]
    seed: Mapped[str] = mapped_column(String)
    passed: Mapped[bool]
    payload: Mapped[dict[str, Any]] = mapped_column(JSON)
    run: Mapped["CampaignRun"] = relationship(back_populates="results")

    def __repr__(self):
        return f"{self.__class__.__name__}(id={self.id}, trial={self.trial}, passed={self.passed})"

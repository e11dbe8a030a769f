import uuid
from datetime import datetime
from typing import Any
from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import isprime

from thetaparity.core.config import settings
from thetaparity.core.constants import CampaignCommands, FieldKinds, GeneratorModes


def parse_range(value: Any) -> tuple[int, int]:
    """
    Разбирает диапазон вида 'a:b' (или 'a') в пару целых.

    :param value: Строка, пара или одно число
    :return: Пара (a, b)
    :raises ValueError: Если запись не разбирается
    """

    if isinstance(value, str):
        parts = value.split(':')
        if len(parts) not in (1, 2) or not all(p.strip().lstrip('-').isdigit() for p in parts):
            raise ValueError(f"Диапазон должен иметь вид 'a:b', получено {value!r}")
        numbers = [int(p) for p in parts]
        return numbers[0], numbers[-1]
    if isinstance(value, int):
        return value, value
    low, high = value
    return int(low), int(high)


class CampaignConfig(BaseModel):
    """
    Параметры одной кампании проверки.

    Attributes:
        command (str): Имя подкоманды
        field (str): Вид поля коэффициентов
        prime (int | None): Модуль простого поля
        q_range (tuple[int, int]): Диапазон размеров кососимметричных семейств
        r_range (tuple[int, int]): Диапазон половины ранга пространства
        k_max (int): Наибольшее проверяемое k
        trials (int): Число испытаний
        seed (int): Зерно кампании, 64 бита
        mode (str): Режим генератора пар решёток
        precision (int): Рабочая точность пар решёток
        rank_max (int): Наибольший ранг модулей двучленного комплекса
        degree_max (int): Наибольшая степень элементов дифференциала
        workers (int): Число процессов
        only_trial (int | None): Повторить только это испытание
        matrix_file (str | None): Файл матрицы для команды torsion
        zero (bool): Нулевая матрица в команде counterexample
        random (bool): Случайные матрицы в команде counterexample
        with_constant (bool): Разрешить постоянную часть у случайных матриц
    """

    command: str = Field(description="Имя подкоманды")
    field: str = Field(default=FieldKinds.PRIME, description="Вид поля: prime или rational")
    prime: int | None = Field(default=settings.DEFAULT_PRIME, description="Модуль простого поля")
    q_range: tuple[int, int] = Field(default=(settings.Q_MIN, settings.Q_MAX), description="Диапазон q")
    r_range: tuple[int, int] = Field(default=(settings.R_MIN, settings.R_MAX), description="Диапазон r")
    k_max: int = Field(default=settings.K_MAX, ge=1, description="Наибольшее k")
    trials: int = Field(default=settings.DEFAULT_TRIALS, ge=1, description="Число испытаний")
    seed: int = Field(default=settings.DEFAULT_SEED, ge=0, lt=2 ** 64, description="Зерно кампании")
    mode: str = Field(default=GeneratorModes.MU_PARAM, description="Режим генератора")
    precision: int = Field(default=settings.PRECISION, ge=1, description="Точность пар решёток")
    rank_max: int = Field(default=settings.TORSION_RANK_MAX, ge=1, description="Наибольший ранг модулей")
    degree_max: int = Field(default=settings.TORSION_DEGREE_MAX, ge=0, description="Наибольшая степень элементов")
    workers: int = Field(default=settings.WORKERS, ge=1, description="Число процессов")
    only_trial: int | None = Field(default=None, ge=0, description="Номер единственного испытания")
    matrix_file: str | None = Field(default=None, description="Файл матрицы над A")
    zero: bool = Field(default=False, description="Нулевая матрица вместо фиксированной")
    random: bool = Field(default=False, description="Случайные матрицы над K[x, y]/(x, y)^2")
    with_constant: bool = Field(default=False, description="Постоянная часть у случайных матриц")

    @field_validator("q_range", "r_range", mode="before")
    @classmethod
    def validate_range_syntax(cls, value: Any) -> tuple[int, int]:
        return parse_range(value)

    @field_validator("q_range", "r_range")
    @classmethod
    def validate_range(cls, value: tuple[int, int]) -> tuple[int, int]:
        """
        Проверяет, что диапазон непуст и состоит из положительных чисел.

        Raises:
            ValueError: Если a > b или a < 1
        """

        low, high = value
        if low > high:
            raise ValueError(f"Пустой диапазон {low}:{high}")
        if low < 1:
            raise ValueError(f"Нижняя граница диапазона должна быть положительной, получено {low}")
        return value

    @field_validator("command")
    @classmethod
    def validate_command(cls, value: str) -> str:
        if value not in CampaignCommands.ALL:
            raise ValueError(f"Неизвестная команда: {value}")
        return value

    @field_validator("field")
    @classmethod
    def validate_field(cls, value: str) -> str:
        if value not in FieldKinds.ALL:
            raise ValueError(f"Неизвестный вид поля: {value}")
        return value

    @field_validator("mode")
    @classmethod
    def validate_mode(cls, value: str) -> str:
        if value not in GeneratorModes.ALL:
            raise ValueError(f"Неизвестный режим генератора: {value}")
        return value

    @model_validator(mode="after")
    def check_consistency(self) -> Self:
        """
        Проверяет согласованность параметров между собой.

        Raises:
            ValueError: Модуль не нечётное простое, номер испытания вне диапазона
                или k_max превышает точность случайных пар решёток
        """

        if self.field == FieldKinds.PRIME:
            if self.prime is None or self.prime == 2 or not isprime(self.prime):
                raise ValueError(f"Модуль {self.prime} не является нечётным простым числом")
        else:
            self.prime = None
        if self.only_trial is not None and self.only_trial >= self.trials:
            raise ValueError(f"Испытание {self.only_trial} вне диапазона 0..{self.trials - 1}")
        pairs = self.command == CampaignCommands.ISOTROPIC or (
            self.command == CampaignCommands.TORSION and self.matrix_file is None
        )
        if pairs and self.k_max > self.precision:
            raise ValueError(f"k_max = {self.k_max} превышает точность {self.precision}")
        return self

    @property
    def single_shot(self) -> bool:
        """Команда считает один фиксированный экземпляр, а не кампанию."""
        if self.command == CampaignCommands.COUNTEREXAMPLE:
            return not self.random
        return self.command == CampaignCommands.TORSION and self.matrix_file is not None

    def trial_indices(self) -> list[int]:
        """Номера испытаний, которые нужно выполнить."""
        if self.single_shot:
            return [0]
        if self.only_trial is not None:
            return [self.only_trial]
        return list(range(self.trials))


class TrialRecord(BaseModel):
    """
    Результат одного испытания.

    Attributes:
        trial (int): Номер испытания
        seed (int): Зерно, из которого экземпляр восстанавливается
        params (dict): Размеры экземпляра
        sequences (dict): Вычисленные последовательности размерностей
        properties (dict): Проверенные свойства
        passed (bool): Все свойства выполнены
        counterexample (dict | None): Данные экземпляра при нарушении
    """

    trial: int = Field(ge=0, description="Номер испытания")
    seed: int = Field(ge=0, description="Зерно испытания")
    params: dict[str, Any] = Field(default_factory=dict, description="Параметры экземпляра")
    sequences: dict[str, Any] = Field(default_factory=dict, description="Последовательности размерностей")
    properties: dict[str, bool] = Field(default_factory=dict, description="Проверенные свойства")
    passed: bool = Field(description="Все свойства выполнены")
    counterexample: dict[str, Any] | None = Field(default=None, description="Данные нарушающего экземпляра")


class ReportSummary(BaseModel):
    """
    Итог кампании.

    Attributes:
        trials (int): Число выполненных испытаний
        failures (int): Число испытаний с нарушениями
        statistics (dict): Записанные без утверждений наблюдения
        wall_time_seconds (float): Время выполнения
    """

    trials: int = Field(ge=0, description="Число выполненных испытаний")
    failures: int = Field(ge=0, description="Число испытаний с нарушениями")
    statistics: dict[str, Any] = Field(default_factory=dict, description="Наблюдаемые статистики")
    wall_time_seconds: float = Field(default=0.0, ge=0, description="Время выполнения, с")


class Report(BaseModel):
    """
    Полный отчёт кампании.
    """

    command: str = Field(description="Имя подкоманды")
    config: CampaignConfig = Field(description="Параметры кампании")
    records: list[TrialRecord] = Field(default_factory=list, description="Записи по испытаниям")
    summary: ReportSummary = Field(description="Итог кампании")

    @property
    def passed(self) -> bool:
        return self.summary.failures == 0

    def without_timing(self) -> Self:
        """Копия отчёта без полей времени, для сравнения запусков."""
        summary = self.summary.model_copy(update={'wall_time_seconds': 0.0})
        return self.model_copy(update={'summary': summary})


class SCampaignRunAdd(BaseModel):
    """
    Данные для записи кампании в архив.
    """

    command: str = Field(description="Имя подкоманды")
    seed: str = Field(description="Зерно кампании (строкой, выходит за int64)")
    trials: int = Field(ge=0, description="Число испытаний")
    failures: int = Field(ge=0, description="Число нарушений")
    config: dict[str, Any] = Field(description="Параметры кампании")
    summary: dict[str, Any] = Field(description="Итог кампании")


class STrialResultAdd(BaseModel):
    """
    Данные для записи испытания в архив.
    """

    run_id: uuid.UUID = Field(description="Идентификатор кампании")
    trial: int = Field(ge=0, description="Номер испытания")
    seed: str = Field(description="Зерно испытания строкой")
    passed: bool = Field(description="Все свойства выполнены")
    payload: dict[str, Any] = Field(description="Запись испытания целиком")


class SCampaignRunFilter(BaseModel):
    """
    Фильтр архивных кампаний.
    """

    command: str | None = Field(default=None, description="Имя подкоманды")


class SCampaignRunInfo(BaseModel):
    """
    Краткие сведения об архивной кампании.
    """

    id: uuid.UUID = Field(description="Идентификатор кампании")
    command: str = Field(description="Имя подкоманды")
    seed: str = Field(description="Зерно кампании")
    trials: int = Field(description="Число испытаний")
    failures: int = Field(description="Число нарушений")
    created_at: datetime | None = Field(default=None, description="Время записи")
    model_config = ConfigDict(from_attributes=True)


class STrialResultFilter(BaseModel):
    """
    Фильтр архивных испытаний.
    """

    run_id: uuid.UUID = Field(description="Идентификатор кампании")

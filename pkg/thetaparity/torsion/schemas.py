from pydantic import BaseModel, ConfigDict, Field, field_validator


class TorsionProfile(BaseModel):
    """
    Коядро над локализацией A: свободная часть и A/s^{r_1} + ... + A/s^{r_m}.

    Attributes:
        free_rank (int): Ранг свободной части
        exponents (list[int]): Показатели r_1 <= ... <= r_m, все положительные
    """

    free_rank: int = Field(ge=0, description="Ранг свободной части коядра")
    exponents: list[int] = Field(default_factory=list, description="Показатели кручения по возрастанию")
    model_config = ConfigDict(frozen=True)

    @field_validator("exponents")
    def validate_exponents(cls, value: list[int]) -> list[int]:
        """
        Проверяет положительность и упорядоченность показателей.

        Raises:
            ValueError: Если показатель не положителен или порядок нарушен
        """

        if any(e < 1 for e in value):
            raise ValueError("Показатели кручения должны быть положительными")
        if value != sorted(value):
            raise ValueError("Показатели кручения должны идти по неубыванию")
        return value

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.exponents


class BaseChangeReport(BaseModel):
    """
    Проверка замены базы для двучленного комплекса.

    Attributes:
        profile (TorsionProfile): H^1 над A
        h0 (list[int]): dim H^0 над B_k
        h1 (list[int]): dim H^1 над B_k
        h1_predicted (list[int]): k*free_rank + sum min(r_i, k)
        identity_ok (bool): h1 совпала с предсказанием при всех k
        vanishing_applies (bool): H^1 = 0 над A
        vanishing_ok (bool | None): Формула для h0 при H^1 = 0; None, если не применима
        h0_discrepancy (list[int]): h0 - k*h0_generic по k
    """

    profile: TorsionProfile = Field(description="H^1 над A")
    h0: list[int] = Field(description="Размерности H^0 над B_k")
    h1: list[int] = Field(description="Размерности H^1 над B_k")
    h1_predicted: list[int] = Field(description="Размерности H^1 ⊗ B_k")
    identity_ok: bool = Field(description="H^1 коммутирует с заменой базы на всех k")
    vanishing_applies: bool = Field(description="H^1 = 0, условие второй части применимо")
    vanishing_ok: bool | None = Field(default=None, description="h0 = k*h0_generic при H^1 = 0")
    h0_discrepancy: list[int] = Field(description="h0 - k*h0_generic (только записывается)")

    @property
    def holds(self) -> bool:
        return self.identity_ok and self.vanishing_ok is not False

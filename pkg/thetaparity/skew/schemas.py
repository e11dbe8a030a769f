from typing_extensions import Self

from pydantic import BaseModel, Field, model_validator


class RankSequenceReport(BaseModel):
    """
    Последовательность рангов r_k = dim Im(psi_k) и её проверки.

    Attributes:
        k_max (int): Наибольшее проверенное k
        r (list[int]): Значения r_1, ..., r_{k_max}
        even_ok (bool): Все r_k чётны
        monotone_ok (bool): Последовательность не убывает
        nesting_ok (bool): N_k извлекается как подматрица N_{k+1}
        mismatch (int | None): Первое k, на котором два способа вычисления разошлись
    """

    k_max: int = Field(ge=1, description="Наибольшее проверенное k")
    r: list[int] = Field(description="Ранги r_k для k = 1..k_max")
    even_ok: bool = Field(description="Все r_k чётны")
    monotone_ok: bool = Field(description="Последовательность r_k не убывает")
    nesting_ok: bool = Field(default=True, description="N_k совпадает с подматрицей N_{k+1}")
    mismatch: int | None = Field(default=None, description="Первое k с расхождением путей вычисления")

    @model_validator(mode="after")
    def check_length(self) -> Self:
        """
        Проверяет, что длина последовательности равна k_max.

        Raises:
            ValueError: Если длины не совпадают
        """

        if len(self.r) != self.k_max:
            raise ValueError(f"Ожидалось {self.k_max} значений r_k, получено {len(self.r)}")
        return self

    @property
    def holds(self) -> bool:
        return self.even_ok and self.monotone_ok and self.nesting_ok and self.mismatch is None


class KollarStatistics(BaseModel):
    """
    Статистика чётности размерностей образов над K[x, y]/(x, y)^2.

    Значения только записываются: никакого утверждения о них не делается.
    """

    trials: int = Field(ge=0, description="Число случайных матриц")
    image_dims: list[int] = Field(description="Размерности образов по испытаниям")
    defects: list[int] = Field(description="dim B * rank(M mod (x, y)) - dim образа по испытаниям")
    odd_image_count: int = Field(ge=0, description="Число испытаний с нечётной размерностью образа")
    odd_defect_count: int = Field(ge=0, description="Число испытаний с нечётным дефектом")

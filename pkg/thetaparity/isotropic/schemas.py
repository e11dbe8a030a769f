from typing_extensions import Self

from pydantic import BaseModel, Field, model_validator


class ParityReport(BaseModel):
    """
    Размерности пересечений q_k и величины d_k = k*q_1 - q_k.

    Attributes:
        q (list[int]): q_1, ..., q_{k_max} по прямому вычислению
        q_structural (list[int]): Те же величины через ранги блочных матриц
        d (list[int]): d_k = k*q_1 - q_k
        even_ok (bool): Все d_k чётны
        monotone_ok (bool): d_k не убывают
        path_agreement (bool): Оба пути дали одну последовательность
        transversality_ok (bool): При q_1 = 0 все q_k равны нулю
    """

    q: list[int] = Field(description="Размерности пересечений q_k")
    q_structural: list[int] = Field(description="q_k через формулу k*q - r_k")
    d: list[int] = Field(description="d_k = k*q_1 - q_k")
    even_ok: bool = Field(description="Все d_k чётны")
    monotone_ok: bool = Field(description="Последовательность d_k не убывает")
    path_agreement: bool = Field(description="Прямой и структурный пути совпали")
    transversality_ok: bool = Field(default=True, description="q_1 = 0 влечёт q_k = 0")

    @model_validator(mode="after")
    def check_lengths(self) -> Self:
        if not len(self.q) == len(self.q_structural) == len(self.d):
            raise ValueError("Последовательности q, q_structural и d должны иметь одну длину")
        return self

    @property
    def q1(self) -> int:
        return self.q[0] if self.q else 0

    @property
    def holds(self) -> bool:
        return self.even_ok and self.monotone_ok and self.path_agreement and self.transversality_ok

from dataclasses import dataclass
from typing import Sequence
from typing_extensions import Self

import numpy as np

from thetaparity.core.exceptions.algebra_exceptions import NotSkewSymmetric, UsageError
from thetaparity.linalg.models import BkMatrix, KMatrix, freeze_array
from thetaparity.rings.fields import Field


@dataclass(frozen=True, eq=False)
class SkewFamily:
    """
    Кососимметричная матрица M = sum_j s^j M_j над A, заданная конечным числом слоёв.

    Слои с номером не меньше depth считаются нулевыми.

    :attr field: Поле коэффициентов
    :attr layers: Массив формы (depth, q, q), layers[j] = M_j
    """

    field: Field
    layers: np.ndarray

    def __post_init__(self):
        if self.layers.ndim != 3 or self.layers.shape[1] != self.layers.shape[2]:
            raise UsageError(f'Слои семейства должны быть квадратными, получена форма {self.layers.shape}')
        if self.layers.shape[1] < 1:
            raise UsageError('Размер семейства q должен быть положительным')
        layers = self.layers.astype(self.field.dtype, copy=False)
        for j, layer in enumerate(layers):
            if not KMatrix(self.field, layer).is_skew():
                raise NotSkewSymmetric(f'Слой M_{j} не кососимметричен или имеет ненулевую диагональ')
        object.__setattr__(self, 'layers', freeze_array(layers))

    @classmethod
    def from_layers(cls, field: Field, layers: Sequence[KMatrix | Sequence[Sequence]]) -> Self:
        """
        Строит семейство из списка слоёв M_0, M_1, ...

        :param field: Поле коэффициентов
        :param layers: K-матрицы или вложенные списки
        :return: Семейство
        """

        arrays = [m.entries if isinstance(m, KMatrix) else field.array(m) for m in layers]
        return cls(field, np.stack(arrays))

    @classmethod
    def zero(cls, field: Field, q: int, depth: int = 1) -> Self:
        return cls(field, field.zeros((depth, q, q)))

    @classmethod
    def from_bk(cls, m: BkMatrix) -> Self:
        """Семейство с теми же слоями, что у кососимметричной матрицы над B_k."""
        if m.precision == 0:
            return cls.zero(m.field, m.rows)
        return cls(m.field, m.layers)

    @property
    def q(self) -> int:
        return self.layers.shape[1]

    @property
    def depth(self) -> int:
        return self.layers.shape[0]

    def layer(self, j: int) -> KMatrix:
        """Слой M_j; за пределами хранимой глубины нулевой."""
        if 0 <= j < self.depth:
            return KMatrix(self.field, self.layers[j])
        return KMatrix.zeros(self.field, self.q, self.q)

    def times_s(self) -> 'SkewFamily':
        """Семейство s*M: слои сдвигаются на один, M_0 становится нулевым."""
        head = self.field.zeros((1, self.q, self.q))
        return SkewFamily(self.field, np.concatenate([head, self.layers], axis=0))

    def truncate(self, k: int) -> BkMatrix:
        """Образ M в матрицах над B_k."""
        layers = self.field.zeros((k, self.q, self.q))
        depth = min(k, self.depth)
        layers[:depth] = self.layers[:depth]
        return BkMatrix(self.field, layers)

    def to_json(self) -> list:
        return self.field.array_to_json(self.layers)

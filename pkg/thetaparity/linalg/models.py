from dataclasses import dataclass
from enum import Enum
from typing import Sequence
from typing_extensions import Self

import numpy as np

from thetaparity.core.exceptions.algebra_exceptions import UsageError
from thetaparity.rings.arith import poly_trim, series_matmul
from thetaparity.rings.fields import Field, FieldElement
from thetaparity.rings.models import PolyElement, TruncSeries


class BasisOrder(str, Enum):
    """
    Порядок K-базиса свободного B_k-модуля при развёртке.

    DOMAIN: c_1, ..., c_q, s*c_1, ..., s^(k-1)*c_q (степени s по возрастанию).
    CODOMAIN: s^(k-1)*c_1, ..., s^(k-1)*c_q, ..., c_1, ..., c_q (по убыванию).
    """

    DOMAIN = 'domain'
    CODOMAIN = 'codomain'


def freeze_array(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class KMatrix:
    """
    Матрица над полем K.

    :attr field: Поле коэффициентов
    :attr entries: Двумерный массив канонических представителей (только чтение)
    """

    field: Field
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.ndim != 2:
            raise UsageError(f'Ожидалась двумерная матрица, получено измерений: {self.entries.ndim}')
        object.__setattr__(self, 'entries', freeze_array(self.entries.astype(self.field.dtype, copy=False)))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> Self:
        """
        Строит матрицу из списка строк с канонизацией элементов.

        :param field: Поле коэффициентов
        :param rows: Строки матрицы
        :param cols: Число столбцов (нужно только для матрицы без строк)
        :return: Матрица над K
        """

        if len(rows) == 0:
            return cls.zeros(field, 0, cols or 0)
        return cls(field, field.array(rows))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Self:
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: Field, n: int) -> Self:
        return cls(field, field.identity(n))

    @classmethod
    def hstack(cls, blocks: Sequence['KMatrix']) -> 'KMatrix':
        return KMatrix(blocks[0].field, np.concatenate([b.entries for b in blocks], axis=1))

    @classmethod
    def vstack(cls, blocks: Sequence['KMatrix']) -> 'KMatrix':
        return KMatrix(blocks[0].field, np.concatenate([b.entries for b in blocks], axis=0))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def T(self) -> 'KMatrix':
        return KMatrix(self.field, self.entries.T)

    def is_zero(self) -> bool:
        return not np.any(self.entries != 0)

    def is_skew(self) -> bool:
        """Проверяет M^T = -M и нулевую диагональ."""
        if self.rows != self.cols:
            return False
        neg = self.field.reduce(-self.entries)
        return bool(np.array_equal(self.entries.T, neg) and not np.any(np.diagonal(self.entries) != 0))

    def scaled(self, c: FieldElement) -> 'KMatrix':
        return KMatrix(self.field, self.field.reduce(self.entries * self.field(c)))

    def __matmul__(self, other: 'KMatrix') -> 'KMatrix':
        return KMatrix(self.field, self.field.reduce(self.entries @ other.entries))

    def __add__(self, other: 'KMatrix') -> 'KMatrix':
        return KMatrix(self.field, self.field.reduce(self.entries + other.entries))

    def __sub__(self, other: 'KMatrix') -> 'KMatrix':
        return KMatrix(self.field, self.field.reduce(self.entries - other.entries))

    def __neg__(self) -> 'KMatrix':
        return KMatrix(self.field, self.field.reduce(-self.entries))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, KMatrix)
            and self.field == other.field
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    __hash__ = None

    def to_json(self) -> list:
        return self.field.array_to_json(self.entries)

    def __repr__(self) -> str:
        return f"KMatrix({self.field.name}, {self.to_json()})"


@dataclass(frozen=True, eq=False)
class BkMatrix:
    """
    Матрица над B_k, хранимая слоями: layers[j] есть K-матрица при s^j.

    :attr field: Поле коэффициентов
    :attr layers: Массив формы (k, rows, cols)
    """

    field: Field
    layers: np.ndarray

    def __post_init__(self):
        if self.layers.ndim != 3:
            raise UsageError('Слои матрицы над B_k должны образовывать трёхмерный массив')
        object.__setattr__(self, 'layers', freeze_array(self.layers.astype(self.field.dtype, copy=False)))

    @classmethod
    def from_entries(cls, field: Field, grid: Sequence[Sequence[TruncSeries]], precision: int | None = None) -> Self:
        """
        Строит матрицу из сетки рядов общей точности.

        :param grid: Строки из элементов TruncSeries
        :param precision: Точность, обязательна для пустой сетки
        :return: Матрица над B_k
        :raises UsageError: Если точности элементов различаются
        """

        precisions = {e.precision for row in grid for e in row}
        if len(precisions) > 1:
            raise UsageError(f'Элементы матрицы имеют разные точности: {sorted(precisions)}')
        k = precisions.pop() if precisions else precision
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        layers = field.zeros((k, rows, cols))
        for i, row in enumerate(grid):
            for j, entry in enumerate(row):
                layers[:, i, j] = entry.as_array()
        return cls(field, layers)

    @classmethod
    def constant(cls, m: KMatrix, precision: int) -> Self:
        """Вкладывает K-матрицу в матрицы над B_k как постоянную."""
        layers = m.field.zeros((precision, m.rows, m.cols))
        if precision:
            layers[0] = m.entries
        return cls(m.field, layers)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int, precision: int) -> Self:
        return cls(field, field.zeros((precision, rows, cols)))

    @classmethod
    def identity(cls, field: Field, n: int, precision: int) -> Self:
        return cls.constant(KMatrix.identity(field, n), precision)

    @classmethod
    def hstack(cls, blocks: Sequence['BkMatrix']) -> 'BkMatrix':
        return BkMatrix(blocks[0].field, np.concatenate([b.layers for b in blocks], axis=2))

    @classmethod
    def vstack(cls, blocks: Sequence['BkMatrix']) -> 'BkMatrix':
        return BkMatrix(blocks[0].field, np.concatenate([b.layers for b in blocks], axis=1))

    @property
    def precision(self) -> int:
        return self.layers.shape[0]

    @property
    def rows(self) -> int:
        return self.layers.shape[1]

    @property
    def cols(self) -> int:
        return self.layers.shape[2]

    @property
    def T(self) -> 'BkMatrix':
        return BkMatrix(self.field, self.layers.transpose(0, 2, 1))

    def layer(self, j: int) -> KMatrix:
        """Коэффициент при s^j; за пределами точности нулевой."""
        if 0 <= j < self.precision:
            return KMatrix(self.field, self.layers[j])
        return KMatrix.zeros(self.field, self.rows, self.cols)

    def reduction(self) -> KMatrix:
        """Редукция по модулю s."""
        return self.layer(0)

    def entry(self, i: int, j: int) -> TruncSeries:
        return TruncSeries(self.field, tuple(self.layers[:, i, j]))

    def truncate(self, precision: int) -> 'BkMatrix':
        """Усечение (или дополнение нулями) до точности ``precision``."""
        if precision <= self.precision:
            return BkMatrix(self.field, self.layers[:precision])
        pad = self.field.zeros((precision - self.precision, self.rows, self.cols))
        return BkMatrix(self.field, np.concatenate([self.layers, pad], axis=0))

    def shift_down(self, v: int = 1) -> 'BkMatrix':
        """
        Делит на s^v; результат имеет точность k - v.

        :raises UsageError: Если матрица не делится на s^v
        """

        if np.any(self.layers[:v] != 0):
            raise UsageError(f'Матрица не делится на s^{v}')
        return BkMatrix(self.field, self.layers[v:])

    def shift_up(self, v: int = 1) -> 'BkMatrix':
        """Умножает на s^v с сохранением точности."""
        head = self.field.zeros((min(v, self.precision), self.rows, self.cols))
        return BkMatrix(self.field, np.concatenate([head, self.layers[:self.precision - v]], axis=0))

    def scaled(self, c: FieldElement) -> 'BkMatrix':
        return BkMatrix(self.field, self.field.reduce(self.layers * self.field(c)))

    def is_zero(self) -> bool:
        return not np.any(self.layers != 0)

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.layers, self.layers.transpose(0, 2, 1)))

    def is_skew(self) -> bool:
        neg = self.field.reduce(-self.layers)
        return bool(np.array_equal(self.layers.transpose(0, 2, 1), neg))

    def _check_compatible(self, other: 'BkMatrix') -> None:
        if self.precision != other.precision:
            raise UsageError(f'Матрицы над B_k разной точности: {self.precision} и {other.precision}')

    def __matmul__(self, other: 'BkMatrix') -> 'BkMatrix':
        self._check_compatible(other)
        return BkMatrix(self.field, series_matmul(self.field, self.layers, other.layers))

    def __add__(self, other: 'BkMatrix') -> 'BkMatrix':
        self._check_compatible(other)
        return BkMatrix(self.field, self.field.reduce(self.layers + other.layers))

    def __sub__(self, other: 'BkMatrix') -> 'BkMatrix':
        self._check_compatible(other)
        return BkMatrix(self.field, self.field.reduce(self.layers - other.layers))

    def __neg__(self) -> 'BkMatrix':
        return BkMatrix(self.field, self.field.reduce(-self.layers))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BkMatrix)
            and self.field == other.field
            and self.layers.shape == other.layers.shape
            and bool(np.array_equal(self.layers, other.layers))
        )

    __hash__ = None

    def to_json(self) -> list:
        return self.field.array_to_json(self.layers)


@dataclass(frozen=True, eq=False)
class PolyMatrix:
    """
    Матрица над A с многочленными элементами, хранимая слоями коэффициентов.

    :attr layers: Массив формы (d + 1, rows, cols) без старших нулевых слоёв
    """

    field: Field
    layers: np.ndarray

    def __post_init__(self):
        if self.layers.ndim != 3:
            raise UsageError('Слои многочленной матрицы должны образовывать трёхмерный массив')
        layers = self.layers.astype(self.field.dtype, copy=False)
        if layers.shape[0] == 0:
            layers = self.field.zeros((1,) + layers.shape[1:])
        object.__setattr__(self, 'layers', freeze_array(poly_trim(layers)))

    @classmethod
    def from_entries(cls, field: Field, grid: Sequence[Sequence[PolyElement]], cols: int = 0) -> Self:
        rows = len(grid)
        cols = len(grid[0]) if rows else cols
        depth = max([len(e.coeffs) for row in grid for e in row] + [1])
        layers = field.zeros((depth, rows, cols))
        for i, row in enumerate(grid):
            for j, entry in enumerate(row):
                for t, c in enumerate(entry.coeffs):
                    layers[t, i, j] = c
        return cls(field, layers)

    @classmethod
    def lift(cls, m: BkMatrix) -> Self:
        """Поднимает матрицу над B_k до многочленной (коэффициенты степени < k)."""
        return cls(m.field, m.layers)

    @classmethod
    def constant(cls, m: KMatrix) -> Self:
        return cls(m.field, m.entries[None, :, :])

    @property
    def rows(self) -> int:
        return self.layers.shape[1]

    @property
    def cols(self) -> int:
        return self.layers.shape[2]

    @property
    def degree(self) -> int:
        """Максимальная степень элемента; у нулевой матрицы 0."""
        return self.layers.shape[0] - 1

    @property
    def T(self) -> 'PolyMatrix':
        return PolyMatrix(self.field, self.layers.transpose(0, 2, 1))

    def entry(self, i: int, j: int) -> PolyElement:
        return PolyElement(self.field, tuple(self.layers[:, i, j]))

    def truncate(self, precision: int) -> BkMatrix:
        """Образ в матрицах над B_k."""
        return BkMatrix(self.field, self.layers).truncate(precision)

    def is_zero(self) -> bool:
        return not np.any(self.layers != 0)

    def __matmul__(self, other: 'PolyMatrix') -> 'PolyMatrix':
        depth = self.layers.shape[0] + other.layers.shape[0] - 1
        a = self.truncate(depth)
        b = other.truncate(depth)
        return PolyMatrix(self.field, (a @ b).layers)

    def __add__(self, other: 'PolyMatrix') -> 'PolyMatrix':
        depth = max(self.layers.shape[0], other.layers.shape[0])
        return PolyMatrix(self.field, (self.truncate(depth) + other.truncate(depth)).layers)

    def __sub__(self, other: 'PolyMatrix') -> 'PolyMatrix':
        return self + (-other)

    def __neg__(self) -> 'PolyMatrix':
        return PolyMatrix(self.field, self.field.reduce(-self.layers))

    @classmethod
    def hstack(cls, blocks: Sequence['PolyMatrix']) -> 'PolyMatrix':
        depth = max(b.layers.shape[0] for b in blocks)
        return PolyMatrix(blocks[0].field, np.concatenate([b.truncate(depth).layers for b in blocks], axis=2))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and self.field == other.field
            and self.layers.shape == other.layers.shape
            and bool(np.array_equal(self.layers, other.layers))
        )

    __hash__ = None

    def to_json(self) -> list:
        return [[str(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)]

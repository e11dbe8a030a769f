from dataclasses import dataclass
from typing import Iterable
from typing_extensions import Self

import numpy as np

from thetaparity.core.exceptions.algebra_exceptions import UsageError
from thetaparity.rings.arith import series_inv, series_mul
from thetaparity.rings.fields import Field, FieldElement


@dataclass(frozen=True)
class TruncSeries:
    """
    Элемент B_k = K[s]/(s^k).

    :attr field: Поле коэффициентов
    :attr coeffs: Ровно k канонических коэффициентов, coeffs[j] при s^j
    """

    field: Field
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise UsageError('Точность усечённого ряда должна быть положительной')
        object.__setattr__(self, 'coeffs', tuple(self.field(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, field: Field, coeffs: Iterable, precision: int) -> Self:
        """
        Строит ряд точности ``precision``, дополняя нулями или усекая.

        :param field: Поле коэффициентов
        :param coeffs: Коэффициенты при 1, s, s^2, ...
        :param precision: Точность k
        :return: Ряд в B_k
        """

        values = list(coeffs)[:precision]
        values += [0] * (precision - len(values))
        return cls(field, tuple(values))

    @classmethod
    def one(cls, field: Field, precision: int) -> Self:
        return cls.from_coeffs(field, [1], precision)

    @classmethod
    def zero(cls, field: Field, precision: int) -> Self:
        return cls.from_coeffs(field, [], precision)

    @classmethod
    def monomial(cls, field: Field, degree: int, precision: int, coeff: FieldElement = 1) -> Self:
        return cls.from_coeffs(field, [0] * degree + [coeff], precision)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    @property
    def valuation(self) -> int:
        """Индекс первого ненулевого коэффициента; у нуля равен точности."""
        for j, c in enumerate(self.coeffs):
            if c != 0:
                return j
        return self.precision

    @property
    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    @property
    def is_zero(self) -> bool:
        return self.valuation == self.precision

    def as_array(self) -> np.ndarray:
        return self.field.array(list(self.coeffs))

    def _check_same_ring(self, other: 'TruncSeries') -> None:
        if self.field != other.field or self.precision != other.precision:
            raise UsageError(
                f'Ряды из разных колец: точности {self.precision} и {other.precision}'
            )

    def __add__(self, other: 'TruncSeries') -> 'TruncSeries':
        self._check_same_ring(other)
        return TruncSeries(self.field, tuple(self.field.reduce(self.as_array() + other.as_array())))

    def __neg__(self) -> 'TruncSeries':
        return TruncSeries(self.field, tuple(self.field.reduce(-self.as_array())))

    def __sub__(self, other: 'TruncSeries') -> 'TruncSeries':
        return self + (-other)

    def __mul__(self, other: 'TruncSeries') -> 'TruncSeries':
        self._check_same_ring(other)
        return TruncSeries(self.field, tuple(series_mul(self.field, self.as_array(), other.as_array())))

    def inverse(self) -> 'TruncSeries':
        return TruncSeries(self.field, tuple(series_inv(self.field, self.as_array())))

    def truncate(self, precision: int) -> 'TruncSeries':
        return TruncSeries.from_coeffs(self.field, self.coeffs, precision)

    def __str__(self) -> str:
        terms = [_term(c, j) for j, c in enumerate(self.coeffs) if c != 0]
        return ' + '.join(terms) or '0'


@dataclass(frozen=True)
class PolyElement:
    """
    Многочлен от s без усечения: элемент A в конечной записи.

    :attr coeffs: Коэффициенты, старший ненулевой, у нуля пустой кортеж
    """

    field: Field
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        values = [self.field(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, 'coeffs', tuple(values))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Степень; у нулевого многочлена равна -1."""
        return len(self.coeffs) - 1

    @property
    def valuation(self) -> int | None:
        """Порядок нуля в s = 0; у нулевого многочлена None."""
        for j, c in enumerate(self.coeffs):
            if c != 0:
                return j
        return None

    def __add__(self, other: 'PolyElement') -> 'PolyElement':
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return PolyElement(self.field, tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> 'PolyElement':
        return PolyElement(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other: 'PolyElement') -> 'PolyElement':
        return self + (-other)

    def __mul__(self, other: 'PolyElement') -> 'PolyElement':
        if self.is_zero or other.is_zero:
            return PolyElement(self.field, ())
        n = len(self.coeffs) + len(other.coeffs) - 1
        a = TruncSeries.from_coeffs(self.field, self.coeffs, n)
        b = TruncSeries.from_coeffs(self.field, other.coeffs, n)
        return PolyElement(self.field, (a * b).coeffs)

    def truncate(self, precision: int) -> TruncSeries:
        return TruncSeries.from_coeffs(self.field, self.coeffs, precision)

    def __str__(self) -> str:
        terms = [_term(c, j) for j, c in enumerate(self.coeffs) if c != 0]
        return ' + '.join(terms) or '0'


@dataclass(frozen=True)
class SquareZeroPlaneElement:
    """
    Элемент a + b*x + c*y кольца K[x, y]/(x, y)^2.
    """

    field: Field
    a: FieldElement
    b: FieldElement
    c: FieldElement

    def __post_init__(self):
        for name in ('a', 'b', 'c'):
            object.__setattr__(self, name, self.field(getattr(self, name)))

    @classmethod
    def x(cls, field: Field) -> Self:
        return cls(field, 0, 1, 0)

    @classmethod
    def y(cls, field: Field) -> Self:
        return cls(field, 0, 0, 1)

    @classmethod
    def constant(cls, field: Field, value: FieldElement) -> Self:
        return cls(field, value, 0, 0)

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def coordinates(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        """Координаты в K-базисе {1, x, y}."""
        return self.a, self.b, self.c

    def __add__(self, other: 'SquareZeroPlaneElement') -> 'SquareZeroPlaneElement':
        return SquareZeroPlaneElement(self.field, self.a + other.a, self.b + other.b, self.c + other.c)

    def __neg__(self) -> 'SquareZeroPlaneElement':
        return SquareZeroPlaneElement(self.field, -self.a, -self.b, -self.c)

    def __sub__(self, other: 'SquareZeroPlaneElement') -> 'SquareZeroPlaneElement':
        return self + (-other)

    def __mul__(self, other: 'SquareZeroPlaneElement') -> 'SquareZeroPlaneElement':
        # (x, y)-части перемножаются в ноль
        return SquareZeroPlaneElement(
            self.field,
            self.a * other.a,
            self.a * other.b + self.b * other.a,
            self.a * other.c + self.c * other.a,
        )


def _term(c: FieldElement, j: int) -> str:
    if j == 0:
        return str(c)
    power = 's' if j == 1 else f's^{j}'
    return power if c == 1 else f'{c}*{power}'

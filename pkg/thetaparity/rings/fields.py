from abc import ABC, abstractmethod
from fractions import Fraction
from functools import lru_cache
from typing import Any, TypeAlias

import numpy as np
from sympy import isprime

from thetaparity.core.constants import FieldKinds
from thetaparity.core.exceptions.algebra_exceptions import NotAUnit, UsageError

# Элемент поля хранится своим каноническим представителем:
# int из [0, p) для F_p и несократимая Fraction для Q.
FieldElement: TypeAlias = int | Fraction

# Выше этой границы произведения p * p * n не помещаются в int64
_INT64_PRIME_BOUND = 2 ** 26


class Field(ABC):
    """
    Контекст поля коэффициентов K характеристики, отличной от 2.

    Все матрицы над K хранятся как numpy-массивы канонических представителей
    с типом ``dtype`` контекста; после любой арифметики массив приводится
    методом ``reduce``.
    """

    characteristic: int
    dtype: Any

    @property
    @abstractmethod
    def name(self) -> str:
        ...

    @abstractmethod
    def __call__(self, value: Any) -> FieldElement:
        """Приводит значение к каноническому представителю."""

    @abstractmethod
    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Канонизирует результат арифметики над массивом."""

    @abstractmethod
    def inv(self, a: FieldElement) -> FieldElement:
        ...

    @abstractmethod
    def halve(self, a: FieldElement) -> FieldElement:
        ...

    @abstractmethod
    def random_array(self, rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
        ...

    @abstractmethod
    def to_json(self, value: FieldElement) -> int | str:
        ...

    def array(self, data: Any) -> np.ndarray:
        """
        Строит канонический массив из вложенных списков или массива.

        :param data: Вложенные списки, массив или скаляр
        :return: Массив с типом ``dtype`` поля
        """

        raw = np.array(data, dtype=object)
        flat = [self(x) for x in raw.ravel()]
        return np.array(flat, dtype=self.dtype).reshape(raw.shape)

    def zeros(self, shape: tuple[int, ...]) -> np.ndarray:
        return np.full(shape, self.zero(), dtype=self.dtype)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        np.fill_diagonal(out, self.one())
        return out

    def one(self) -> FieldElement:
        return self(1)

    def zero(self) -> FieldElement:
        return self(0)

    def array_to_json(self, arr: np.ndarray) -> list:
        """Сериализует массив в вложенные списки JSON-совместимых значений."""
        if arr.ndim == 0:
            return self.to_json(arr.item())
        return [self.array_to_json(sub) for sub in arr]

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and self.characteristic == other.characteristic

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.characteristic))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.name})"


class PrimeField(Field):
    """
    Простое поле F_p, p нечётное простое.

    :attr characteristic: Модуль p
    """

    def __init__(self, p: int):
        p = int(p)
        if p == 2:
            raise UsageError('Поле характеристики 2 не поддерживается: деление на 2 обязательно')
        if p < 2 or not isprime(p):
            raise UsageError(f'Модуль {p} не является нечётным простым числом')
        self.characteristic = p
        self.dtype = np.int64 if p < _INT64_PRIME_BOUND else object
        self._half = (p + 1) // 2

    @property
    def name(self) -> str:
        return f"F_{self.characteristic}"

    def array(self, data: Any) -> np.ndarray:
        try:
            raw = np.asarray(data)
        except ValueError:
            return super().array(data)
        if raw.dtype.kind in 'iu' and self.dtype is np.int64:
            return np.mod(raw, self.characteristic).astype(np.int64)
        return super().array(data)

    def __call__(self, value: Any) -> int:
        p = self.characteristic
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise NotAUnit(f'Знаменатель {value.denominator} обращается в ноль в {self.name}')
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return np.mod(arr, self.characteristic).astype(self.dtype, copy=False)

    def inv(self, a: FieldElement) -> int:
        a = self(a)
        if a == 0:
            raise NotAUnit(f'Ноль не обратим в {self.name}')
        return pow(a, -1, self.characteristic)

    def halve(self, a: FieldElement) -> int:
        return self(a) * self._half % self.characteristic

    def random_array(self, rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
        values = rng.integers(0, self.characteristic, size=shape, dtype=np.int64)
        return values.astype(self.dtype)

    def to_json(self, value: FieldElement) -> int:
        return int(value)


class RationalField(Field):
    """
    Поле рациональных чисел Q на ``fractions.Fraction``.
    """

    characteristic = 0
    dtype = object

    # Диапазоны случайных числителей и знаменателей
    _NUMERATOR_BOUND = 9
    _DENOMINATOR_BOUND = 3

    @property
    def name(self) -> str:
        return 'Q'

    def __call__(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, np.integer):
            value = int(value)
        return Fraction(value)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def inv(self, a: FieldElement) -> Fraction:
        a = self(a)
        if a == 0:
            raise NotAUnit('Ноль не обратим в Q')
        return 1 / a

    def halve(self, a: FieldElement) -> Fraction:
        return self(a) / 2

    def random_array(self, rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
        numerators = rng.integers(-self._NUMERATOR_BOUND, self._NUMERATOR_BOUND + 1, size=shape)
        denominators = rng.integers(1, self._DENOMINATOR_BOUND + 1, size=shape)
        flat = [Fraction(int(n), int(d)) for n, d in zip(numerators.ravel(), denominators.ravel())]
        return np.array(flat, dtype=object).reshape(shape)

    def to_json(self, value: FieldElement) -> str:
        return str(self(value))


@lru_cache(maxsize=None)
def make_field(kind: str = FieldKinds.PRIME, prime: int | None = None) -> Field:
    """
    Возвращает контекст поля по виду и модулю.

    :param kind: 'prime' или 'rational'
    :param prime: Модуль для простого поля
    :return: Контекст поля
    :raises UsageError: Неизвестный вид поля, отсутствующий или непростой модуль
    """

    if kind == FieldKinds.RATIONAL:
        return RationalField()
    if kind == FieldKinds.PRIME:
        if prime is None:
            raise UsageError('Для простого поля нужен модуль p')
        return PrimeField(prime)
    raise UsageError(f'Неизвестный вид поля: {kind}')

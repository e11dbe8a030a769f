"""
Арифметика усечённых рядов на уровне numpy-массивов.

Ряд точности k хранится массивом, у которого ось 0 имеет длину k:
элемент ``a[j]`` есть коэффициент при s^j. Остальные оси несут
произвольную форму (вектор, матрица), операции действуют поэлементно.
"""

import numpy as np

from thetaparity.core.exceptions.algebra_exceptions import NotAUnit
from thetaparity.rings.fields import Field


def _toeplitz(field: Field, b: np.ndarray) -> np.ndarray:
    """Массив формы (k, k, ...) с элементами b[t - i] при i <= t и нулями выше."""
    k = b.shape[0]
    t_idx = np.arange(k)[:, None] - np.arange(k)[None, :]
    t_idx = np.where(t_idx >= 0, t_idx, k)
    padded = np.concatenate([b, field.zeros((1,) + b.shape[1:])], axis=0)
    return padded[t_idx]


def series_mul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Поэлементное произведение рядов одной точности с усечением.

    :param field: Поле коэффициентов
    :param a: Массив формы (k, ...)
    :param b: Массив формы (k, ...), совместимой с ``a`` по broadcasting
    :return: Массив формы (k, ...) с коэффициентами произведения
    """

    nd = max(a.ndim, b.ndim)
    a = a.reshape(a.shape[:1] + (1,) * (nd - a.ndim) + a.shape[1:])
    b = b.reshape(b.shape[:1] + (1,) * (nd - b.ndim) + b.shape[1:])
    products = field.reduce(a[None] * _toeplitz(field, b))
    return field.reduce(products.sum(axis=1))


def series_matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Произведение матриц над B_k, заданных слоями.

    :param a: Слои формы (k, m, n)
    :param b: Слои формы (k, n, l)
    :return: Слои формы (k, m, l)
    """

    products = field.reduce(np.matmul(a[None], _toeplitz(field, b)))
    return field.reduce(products.sum(axis=1))


def series_outer(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Внешнее произведение столбца рядов на строку рядов через тёплицеву матрицу.

    :param a: Массив формы (k, m)
    :param b: Массив формы (k, n)
    :return: Массив формы (k, m, n), где out[:, i, j] = a[:, i] * b[:, j] mod s^k
    """

    return field.reduce(np.matmul(a.T[None, :, :], _toeplitz(field, b)))


def series_inv(field: Field, a: np.ndarray) -> np.ndarray:
    """
    Обратный ряд по рекурсии коэффициентов.

    :param a: Массив формы (k,)
    :return: Массив формы (k,)
    :raises NotAUnit: Если свободный член равен нулю
    """

    k = a.shape[0]
    if k == 0:
        return a.copy()
    if a[0] == 0:
        raise NotAUnit('Ряд с нулевым свободным членом необратим')
    head = field.inv(a[0])
    out = field.zeros((k,))
    out[0] = head
    for t in range(1, k):
        acc = field.zero()
        for i in range(1, t + 1):
            acc = acc + a[i] * out[t - i]
        out[t] = field(-head * field(acc))
    return out


def shift_down(field: Field, a: np.ndarray, v: int) -> np.ndarray:
    """
    Делит ряды на s^v, дописывая нули в старшие коэффициенты.

    Результат верен по модулю s^(k - v); вызывающий код домножает его
    только на ряды, делящиеся на s^v.
    """

    if v == 0:
        return a.copy()
    tail = field.zeros((v,) + a.shape[1:])
    return np.concatenate([a[v:], tail], axis=0)


def valuations(a: np.ndarray) -> np.ndarray:
    """
    Валюации рядов поэлементно; у нулевого ряда валюация равна точности.

    :param a: Массив формы (k, ...)
    :return: Целочисленный массив формы (...)
    """

    k = a.shape[0]
    nonzero = a != 0
    has = nonzero.any(axis=0)
    return np.where(has, nonzero.argmax(axis=0), k)


def poly_trim(coeffs: np.ndarray) -> np.ndarray:
    """Отбрасывает старшие нулевые слои, оставляя хотя бы один."""
    nonzero = np.flatnonzero((coeffs != 0).reshape(coeffs.shape[0], -1).any(axis=1)) if coeffs.size else []
    last = int(nonzero[-1]) + 1 if len(nonzero) else 1
    return coeffs[:max(last, 1)]

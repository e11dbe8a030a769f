"""
Кососимметричные матрицы над B = K[x, y]/(x, y)^2.

Над этим кольцом чётность ранга ломается: образ фиксированной матрицы
[[0, 0, x], [0, 0, y], [-x, -y, 0]] имеет размерность 3 над K.
"""

from typing import Sequence

import numpy as np
from loguru import logger

from thetaparity.linalg.models import KMatrix
from thetaparity.linalg.utils import rank
from thetaparity.rings.fields import Field
from thetaparity.rings.models import SquareZeroPlaneElement
from thetaparity.skew.schemas import KollarStatistics

PlaneMatrix = Sequence[Sequence[SquareZeroPlaneElement]]

# Размерность B над K (базис 1, x, y)
PLANE_DIM = 3


def plane_basis(field: Field) -> tuple[SquareZeroPlaneElement, ...]:
    return (
        SquareZeroPlaneElement.constant(field, 1),
        SquareZeroPlaneElement.x(field),
        SquareZeroPlaneElement.y(field),
    )


def flatten_plane_map(field: Field, m: PlaneMatrix) -> KMatrix:
    """
    K-матрица отображения B^n -> B^n, индуцированного m.

    Базисный вектор t_beta * c_j имеет номер 3*j + beta, где t = (1, x, y).

    :param field: Поле коэффициентов
    :param m: Квадратная матрица над B
    :return: Матрица размера 3n x 3n
    """

    n = len(m)
    basis = plane_basis(field)
    flat = field.zeros((PLANE_DIM * n, PLANE_DIM * n))
    for i in range(n):
        for j in range(n):
            for beta, t in enumerate(basis):
                coords = (m[i][j] * t).coordinates()
                flat[PLANE_DIM * i:PLANE_DIM * (i + 1), PLANE_DIM * j + beta] = coords
    return KMatrix(field, flat)


def plane_image_dim(field: Field, m: PlaneMatrix) -> int:
    return rank(flatten_plane_map(field, m))


def counterexample_matrix(field: Field, zero: bool = False) -> list[list[SquareZeroPlaneElement]]:
    """
    Матрица [[0, 0, x], [0, 0, y], [-x, -y, 0]] над B или нулевая матрица того же размера.
    """

    o = SquareZeroPlaneElement.constant(field, 0)
    if zero:
        return [[o] * 3 for _ in range(3)]
    x = SquareZeroPlaneElement.x(field)
    y = SquareZeroPlaneElement.y(field)
    return [
        [o, o, x],
        [o, o, y],
        [-x, -y, o],
    ]


def counterexample_image_dim(field: Field, zero: bool = False) -> int:
    """
    Размерность над K образа фиксированной кососимметричной матрицы над B.

    :param field: Поле коэффициентов
    :param zero: Взять нулевую матрицу вместо фиксированной
    :return: 3 для фиксированной матрицы, 0 для нулевой
    """

    dim = plane_image_dim(field, counterexample_matrix(field, zero=zero))
    logger.debug(f"Размерность образа над K[x, y]/(x, y)^2: {dim}")
    return dim


def random_plane_skew(
    field: Field, rng: np.random.Generator, n: int = 3, with_constant: bool = False
) -> list[list[SquareZeroPlaneElement]]:
    """
    Случайная кососимметричная матрица над B с нулевой диагональю.

    :param field: Поле коэффициентов
    :param rng: Генератор случайных чисел
    :param n: Размер матрицы
    :param with_constant: Разрешить ненулевую постоянную часть
    :return: Матрица над B
    """

    coords = field.random_array(rng, (n, n, PLANE_DIM))
    if not with_constant:
        coords[:, :, 0] = field.zero()
    zero = SquareZeroPlaneElement.constant(field, 0)
    m = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            entry = SquareZeroPlaneElement(field, *coords[i, j])
            m[i][j] = entry
            m[j][i] = -entry
    return m


def kollar_statistics(
    field: Field, trials: int, rng: np.random.Generator, with_constant: bool = False
) -> KollarStatistics:
    """
    Собирает размерности образов случайных кососимметричных матриц над B.

    Дефект dim B * rank(M mod (x, y)) - dim Im(M) записывается вместе с его чётностью.

    :param field: Поле коэффициентов
    :param trials: Число матриц
    :param rng: Генератор случайных чисел
    :param with_constant: Разрешить ненулевую постоянную часть
    :return: Статистика без каких-либо утверждений
    """

    dims, defects = [], []
    for _ in range(trials):
        m = random_plane_skew(field, rng, with_constant=with_constant)
        constant = KMatrix.from_rows(field, [[e.a for e in row] for row in m])
        dim = plane_image_dim(field, m)
        dims.append(dim)
        defects.append(PLANE_DIM * rank(constant) - dim)
    stats = KollarStatistics(
        trials=trials,
        image_dims=dims,
        defects=defects,
        odd_image_count=sum(d % 2 for d in dims),
        odd_defect_count=sum(d % 2 for d in defects),
    )
    logger.info(f"Нечётных образов над K[x, y]/(x, y)^2: {stats.odd_image_count} из {trials}")
    return stats

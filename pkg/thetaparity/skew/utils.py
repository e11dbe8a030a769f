import numpy as np
from loguru import logger

from thetaparity.core.exceptions.algebra_exceptions import InconsistencyError, UsageError
from thetaparity.linalg.models import KMatrix
from thetaparity.linalg.utils import flatten_map, rank
from thetaparity.rings.fields import Field
from thetaparity.skew.models import SkewFamily
from thetaparity.skew.schemas import RankSequenceReport


def build_nk(f: SkewFamily, k: int) -> KMatrix:
    """
    Блочная матрица N_k размера kq x kq: блок (a, b) равен M_{k-1-a-b}.

    Это матрица psi_k в базисе c_1, ..., s^(k-1)c_q у прообраза и в обратном
    порядке степеней у образа, поэтому она антитреугольная, а M_0 стоит на
    главной антидиагонали.

    :param f: Кососимметричное семейство
    :param k: Точность, k >= 1
    :return: Кососимметричная K-матрица
    """

    if k < 1:
        raise UsageError(f'Точность k должна быть положительной, получено {k}')
    q = f.q
    blocks = f.field.zeros((k, q, k, q))
    for a in range(k):
        for b in range(k - a):
            j = k - 1 - a - b
            if j < f.depth:
                blocks[a, :, b, :] = f.layers[j]
    return KMatrix(f.field, blocks.reshape(k * q, k * q))


def nk_submatrix(f: SkewFamily, k: int) -> KMatrix:
    """
    Извлекает N_k из N_{k+1}: без первой блочной строки и последнего блочного столбца.

    :param f: Кососимметричное семейство
    :param k: Точность, k >= 1
    :return: Подматрица размера kq x kq
    """

    q = f.q
    bigger = build_nk(f, k + 1)
    return KMatrix(f.field, bigger.entries[q:, :k * q])


def image_dim_oracle(f: SkewFamily, k: int) -> int:
    """
    Ранг развёртки psi_k: прямое вычисление dim Im(psi_k) без блочной структуры.

    :param f: Кососимметричное семейство
    :param k: Точность, k >= 1
    :return: r_k
    """

    if k < 1:
        raise UsageError(f'Точность k должна быть положительной, получено {k}')
    return rank(flatten_map(f.truncate(k)))


def rank_sequence(f: SkewFamily, k_max: int) -> list[int]:
    """Последовательность r_1, ..., r_{k_max} через ранги N_k."""
    return [rank(build_nk(f, k)) for k in range(1, k_max + 1)]


def check_rank_parity(f: SkewFamily, k_max: int) -> RankSequenceReport:
    """
    Вычисляет r_k двумя путями и проверяет чётность, монотонность и вложенность N_k.

    :param f: Кососимметричное семейство
    :param k_max: Наибольшее k, k_max >= 1
    :return: Отчёт о последовательности рангов
    :raises InconsistencyError: Если ранг N_k не совпал с размерностью образа
    """

    if k_max < 1:
        raise UsageError(f'k_max должно быть положительным, получено {k_max}')
    ranks = []
    nesting_ok = True
    for k in range(1, k_max + 1):
        structural = rank(build_nk(f, k))
        oracle = image_dim_oracle(f, k)
        if structural != oracle:
            logger.error(f"Ранг N_{k} = {structural}, а размерность образа psi_{k} = {oracle}")
            raise InconsistencyError(f'Пути вычисления r_{k} разошлись: {structural} != {oracle}')
        if k < k_max and nk_submatrix(f, k) != build_nk(f, k):
            logger.error(f"N_{k} не совпадает с подматрицей N_{k + 1}")
            nesting_ok = False
        ranks.append(structural)
    report = RankSequenceReport(
        k_max=k_max,
        r=ranks,
        even_ok=all(r % 2 == 0 for r in ranks),
        monotone_ok=all(a <= b for a, b in zip(ranks, ranks[1:])),
        nesting_ok=nesting_ok,
    )
    logger.debug(f"Последовательность r_k для q = {f.q}: {ranks}")
    return report


def random_skew_family(field: Field, q: int, depth: int, rng: np.random.Generator) -> SkewFamily:
    """
    Случайное кососимметричное семейство: M_j = A_j - A_j^T.

    :param field: Поле коэффициентов
    :param q: Размер матриц
    :param depth: Число слоёв
    :param rng: Генератор случайных чисел
    :return: Семейство с равномерными по полю слоями
    """

    if q < 1 or depth < 1:
        raise UsageError(f'Размер и глубина семейства должны быть положительными: q = {q}, depth = {depth}')
    raw = field.random_array(rng, (depth, q, q))
    return SkewFamily(field, field.reduce(raw - raw.transpose(0, 2, 1)))

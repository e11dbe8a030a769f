"""
Точная линейная алгебра над K и над B_k.

Над F_p используется векторизованный метод Гаусса-Жордана по модулю p,
над Q используется исключение без дробей (Bareiss) на строках, приведённых
к целым числам. Выбор ведущего элемента детерминирован: первый ненулевой
элемент столбца среди ещё не обработанных строк.
"""

from fractions import Fraction
from math import lcm

import numpy as np
from loguru import logger

from thetaparity.core.exceptions.algebra_exceptions import NotAUnit, UsageError
from thetaparity.linalg.models import BasisOrder, BkMatrix, KMatrix
from thetaparity.rings.arith import series_inv, series_mul, series_outer
from thetaparity.rings.fields import PrimeField
from thetaparity.rings.models import TruncSeries


def _rref_prime(entries: np.ndarray, field: PrimeField) -> tuple[np.ndarray, list[int]]:
    p = field.characteristic
    m = entries.copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        candidates = np.flatnonzero(m[r:, c] != 0)
        if candidates.size == 0:
            continue
        i = r + int(candidates[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        factors = m[:, c].copy()
        factors[r] = 0
        m = field.reduce(m - np.outer(factors, m[r]))
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _integer_rows(entries: np.ndarray) -> np.ndarray:
    """Домножает каждую строку рациональной матрицы на НОК знаменателей."""
    out = np.empty(entries.shape, dtype=object)
    for i, row in enumerate(entries):
        scale = lcm(1, *(Fraction(x).denominator for x in row))
        out[i] = [int(Fraction(x) * scale) for x in row]
    return out


def _bareiss_echelon(entries: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """
    Ступенчатый вид целочисленной матрицы исключением без дробей.

    После шага с ведущим элементом piv каждая строка ниже пересчитывается как
    (piv * row - row[c] * pivot_row) / prev; деление точное.

    :param entries: Матрица рациональных чисел (dtype=object)
    :return: Ненулевые строки ступенчатого вида и номера ведущих столбцов
    """

    m = _integer_rows(entries)
    rows, cols = m.shape
    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        candidates = np.flatnonzero(m[r:, c] != 0)
        if candidates.size == 0:
            continue
        i = r + int(candidates[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        piv = m[r, c]
        below = m[r + 1:]
        if below.shape[0]:
            m[r + 1:] = (piv * below - np.outer(below[:, c], m[r])) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rref_rational(entries: np.ndarray) -> tuple[np.ndarray, list[int]]:
    echelon, pivots = _bareiss_echelon(entries)
    m = np.array([[Fraction(x) for x in row] for row in echelon], dtype=object).reshape(echelon.shape)
    for t in range(len(pivots) - 1, -1, -1):
        c = pivots[t]
        m[t] = m[t] / m[t, c]
        if t:
            m[:t] = m[:t] - np.outer(m[:t, c], m[t])
    return m, pivots


def rref(m: KMatrix) -> tuple[KMatrix, tuple[int, ...]]:
    """
    Приведённый ступенчатый вид матрицы.

    :param m: Матрица над K
    :return: Ненулевые строки приведённого ступенчатого вида и номера ведущих столбцов
    """

    if isinstance(m.field, PrimeField):
        reduced, pivots = _rref_prime(m.entries, m.field)
    else:
        reduced, pivots = _rref_rational(m.entries)
    if reduced.shape[0] == 0:
        reduced = m.field.zeros((0, m.cols))
    return KMatrix(m.field, reduced), tuple(pivots)


def rank(m: KMatrix) -> int:
    """
    Ранг матрицы над K точным исключением.

    :param m: Матрица над K
    :return: Ранг
    """

    if m.rows == 0 or m.cols == 0:
        return 0
    if isinstance(m.field, PrimeField):
        return len(_rref_prime(m.entries, m.field)[1])
    return len(_bareiss_echelon(m.entries)[1])


def kernel_basis(m: KMatrix) -> KMatrix:
    """
    Базис ядра, записанный столбцами.

    Для каждого свободного столбца f приведённого вида строится вектор с единицей
    в позиции f; базис канонический, так как приведённый вид единственен.

    :param m: Матрица над K размера rows x cols
    :return: Матрица размера cols x (cols - rank)
    """

    reduced, pivots = rref(m)
    field = m.field
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = field.zeros((m.cols, len(free)))
    for j, f in enumerate(free):
        basis[f, j] = field.one()
        for t, c in enumerate(pivots):
            basis[c, j] = field(-reduced.entries[t, f])
    return KMatrix(field, basis)


def complete_to_basis(m: KMatrix) -> KMatrix:
    """
    Дополняет строки полного ранга единичными строками до базиса K^cols.

    :param m: Матрица с линейно независимыми строками
    :return: Квадратная обратимая матрица: приведённые строки m, затем e_j для неведущих j
    :raises UsageError: Если строки m линейно зависимы
    """

    reduced, pivots = rref(m)
    if len(pivots) != m.rows:
        raise UsageError('Строки матрицы линейно зависимы, дополнение до базиса невозможно')
    identity = KMatrix.identity(m.field, m.cols)
    extra = [c for c in range(m.cols) if c not in set(pivots)]
    units = KMatrix(m.field, identity.entries[extra].reshape(len(extra), m.cols))
    return KMatrix.vstack([reduced, units])


def inverse(m: KMatrix) -> KMatrix:
    """
    Обратная матрица через приведённый вид [m | I].

    :raises NotAUnit: Если матрица вырождена
    """

    if m.rows != m.cols:
        raise UsageError(f'Обращение неквадратной матрицы {m.rows}x{m.cols}')
    n = m.rows
    reduced, pivots = rref(KMatrix.hstack([m, KMatrix.identity(m.field, n)]))
    if pivots[:n] != tuple(range(n)):
        raise NotAUnit(f'Матрица {n}x{n} вырождена над {m.field.name}')
    return KMatrix(m.field, reduced.entries[:n, n:])


def subspace_intersection(a: KMatrix, b: KMatrix) -> KMatrix:
    """
    Базис пересечения линейных оболочек столбцов a и b.

    Ядро [a | -b] проецируется на a-часть; образ проекции под действием a
    и есть пересечение.

    :param a: Матрица размера n x p
    :param b: Матрица размера n x q
    :return: Базис colspan(a) ∩ colspan(b), записанный строками в приведённом ступенчатом виде
    :raises UsageError: Если число строк различается
    """

    if a.rows != b.rows:
        raise UsageError(f'Подпространства в пространствах разной размерности: {a.rows} и {b.rows}')
    if a.cols == 0 or b.cols == 0:
        return KMatrix.zeros(a.field, 0, a.rows)
    kernel = kernel_basis(KMatrix.hstack([a, -b]))
    projection = KMatrix(a.field, kernel.entries[:a.cols])
    return rref((a @ projection).T)[0]


def subspace_intersection_dim(a: KMatrix, b: KMatrix) -> int:
    """dim(colspan(a) ∩ colspan(b))."""
    return subspace_intersection(a, b).rows


def flatten_map(
    m: BkMatrix,
    codomain_order: BasisOrder = BasisOrder.DOMAIN,
    domain_order: BasisOrder = BasisOrder.DOMAIN,
) -> KMatrix:
    """
    Матрица K-линейного отображения B_k^cols -> B_k^rows, индуцированного m.

    При возрастающем порядке блок (l, b) равен M_{l-b} при l >= b и нулю иначе;
    порядок CODOMAIN переставляет блоки соответствующей стороны в обратном порядке.

    :param m: Матрица над B_k
    :param codomain_order: Порядок базиса образа (строки)
    :param domain_order: Порядок базиса прообраза (столбцы)
    :return: Матрица размера (k*rows) x (k*cols)
    """

    k, rows, cols = m.layers.shape
    blocks = m.field.zeros((k, rows, k, cols))
    for l in range(k):
        for b in range(l + 1):
            blocks[l, :, b, :] = m.layers[l - b]
    if codomain_order == BasisOrder.CODOMAIN:
        blocks = blocks[::-1]
    if domain_order == BasisOrder.CODOMAIN:
        blocks = blocks[:, :, ::-1]
    return KMatrix(m.field, blocks.reshape(k * rows, k * cols))


def bk_inverse(m: BkMatrix) -> BkMatrix:
    """
    Обратная матрица над B_k по рекурсии X_t = -X_0 * sum_{i=1..t} M_i X_{t-i}.

    :param m: Квадратная матрица с обратимой редукцией
    :return: Матрица X с m @ X = I
    :raises NotAUnit: Если редукция вырождена
    """

    field = m.field
    k, n = m.precision, m.rows
    if m.rows != m.cols:
        raise UsageError(f'Обращение неквадратной матрицы {m.rows}x{m.cols} над B_{k}')
    if k == 0:
        return m
    head = inverse(m.reduction())
    out = field.zeros((k, n, n))
    out[0] = head.entries
    for t in range(1, k):
        acc = field.zeros((n, n))
        for i in range(1, t + 1):
            acc = field.reduce(acc + m.layers[i] @ out[t - i])
        out[t] = field.reduce(-(head.entries @ acc))
    return BkMatrix(field, out)


def bk_det(m: BkMatrix) -> TruncSeries:
    """
    Определитель матрицы над B_k с обратимой редукцией.

    Исключение ведётся по строкам с обратимым ведущим элементом; определитель
    равен произведению ведущих элементов с учётом знака перестановки.

    :param m: Квадратная матрица точности k >= 1
    :return: Определитель как ряд точности k
    :raises NotAUnit: Если редукция вырождена
    """

    field = m.field
    k, n = m.precision, m.rows
    if m.rows != m.cols:
        raise UsageError(f'Определитель неквадратной матрицы {m.rows}x{m.cols}')
    if k == 0:
        raise UsageError('Определитель над B_0 не определён')
    work = m.layers.copy()
    det = field.zeros((k,))
    det[0] = field.one()
    for c in range(n):
        candidates = np.flatnonzero(work[0, c:, c] != 0)
        if candidates.size == 0:
            logger.debug(f"Редукция матрицы {n}x{n} вырождена в столбце {c}")
            raise NotAUnit(f'Редукция матрицы вырождена над {field.name}')
        i = c + int(candidates[0])
        if i != c:
            work[:, [c, i]] = work[:, [i, c]]
            det = field.reduce(-det)
        pivot = work[:, c, c]
        det = series_mul(field, det, pivot)
        if c + 1 < n:
            factors = series_mul(field, work[:, c + 1:, c], series_inv(field, pivot)[:, None])
            work[:, c + 1:, :] = field.reduce(work[:, c + 1:, :] - series_outer(field, factors, work[:, c, :]))
    return TruncSeries(field, tuple(det))

from collections import Counter
from functools import lru_cache
from itertools import accumulate, combinations

import numpy as np
from loguru import logger
from sympy import GF, QQ, Add, Rational, symbols
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from thetaparity.core.exceptions.algebra_exceptions import (
    InconsistencyError, InconsistentSequence, PrecisionExhausted, UsageError
)
from thetaparity.isotropic.generator import random_invertible, random_unimodular
from thetaparity.isotropic.models import BilinearSpace, IsotropicLattice
from thetaparity.linalg.models import KMatrix, PolyMatrix
from thetaparity.linalg.utils import flatten_map, rank
from thetaparity.rings.arith import series_inv, series_mul, series_outer, shift_down, valuations
from thetaparity.rings.fields import Field, PrimeField
from thetaparity.torsion.models import TwoTermComplex
from thetaparity.torsion.schemas import BaseChangeReport, TorsionProfile

S = symbols('s')

# Начальная точность исключения; удваивается, пока не найдены все множители
FIRST_CAP = 4


def default_precision_cap(d: PolyMatrix) -> int:
    """Граница max(rows, cols) * deg + 1, заведомо большая валюации любого ненулевого минора."""
    return max(d.rows, d.cols) * d.degree + 1


def _local_elimination(d: PolyMatrix, cap: int) -> list[int]:
    """
    Исключение над B_cap с ведущим элементом минимальной валюации.

    :return: Валюации ведущих элементов в порядке нахождения (все меньше cap)
    """

    field = d.field
    m, n = d.rows, d.cols
    work = np.array(d.truncate(cap).layers)
    found = []
    for t in range(min(m, n)):
        vals = valuations(work[:, t:, t:])
        v = int(vals.min())
        if v >= cap:
            break
        i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
        i, j = int(i) + t, int(j) + t
        work[:, [t, i], :] = work[:, [i, t], :]
        work[:, :, [t, j]] = work[:, :, [j, t]]
        unit_inv = series_inv(field, shift_down(field, work[:, t, t], v))
        if t + 1 < m:
            factors = series_mul(field, shift_down(field, work[:, t + 1:, t], v), unit_inv[:, None])
            work[:, t + 1:, :] = field.reduce(work[:, t + 1:, :] - series_outer(field, factors, work[:, t, :]))
        if t + 1 < n:
            factors = series_mul(field, shift_down(field, work[:, t, t + 1:], v), unit_inv[:, None])
            work[:, :, t + 1:] = field.reduce(work[:, :, t + 1:] - series_outer(field, work[:, :, t], factors))
        found.append(v)
    return found


def evaluate(d: PolyMatrix, point: int) -> KMatrix:
    """Значение многочленной матрицы в s = point по схеме Горнера."""
    field = d.field
    acc = d.layers[-1]
    for layer in d.layers[-2::-1]:
        acc = field.reduce(acc * field(point) + layer)
    return KMatrix(field, acc)


def generic_rank(d: PolyMatrix) -> int:
    """
    Ранг d над полем частных K(s).

    Ненулевой минор максимального ранга имеет степень не выше min(rows, cols) * deg,
    поэтому он не обращается в ноль хотя бы в одной из точек 0, 1, ..., эта граница.
    Над F_p с p не больше границы точек не хватает, и ранг берётся из исключения
    с гарантированной точностью.

    :param d: Матрица над A
    :return: Ранг над K(s)
    """

    top = min(d.rows, d.cols)
    if top == 0:
        return 0
    bound = top * d.degree
    if isinstance(d.field, PrimeField) and d.field.characteristic <= bound:
        return len(_local_elimination(d, default_precision_cap(d)))
    best = 0
    for point in range(bound + 1):
        best = max(best, rank(evaluate(d, point)))
        if best == top:
            break
    return best


@lru_cache(maxsize=None)
def _poly_domain(field: Field):
    base = GF(field.characteristic) if isinstance(field, PrimeField) else QQ
    return base.poly_ring(S)


def _to_sympy(coeffs: tuple) -> object:
    return Add(*[Rational(c.numerator, c.denominator) * S ** t for t, c in enumerate(coeffs)])


def _sympy_grid(d: PolyMatrix) -> list[list]:
    domain = _poly_domain(d.field)
    return [[domain.from_sympy(_to_sympy(d.entry(i, c).coeffs)) for c in range(d.cols)] for i in range(d.rows)]


def invariant_factor_valuations(d: PolyMatrix, modulus: int | None = None) -> list[int]:
    """
    s-валюации ненулевых инвариантных множителей d над K[s] по возрастанию.

    Нормальная форма Смита строится sympy над GF(p)[s] или QQ[s], независимо
    от локального исключения. С modulus берётся d по модулю s^modulus: у такой
    матрицы валюации, меньшие modulus, те же, что у d, а остальные не меньше modulus.

    :param d: Матрица над A
    :param modulus: Показатель усечения; по умолчанию d берётся целиком
    :return: Отсортированные валюации
    """

    if modulus is not None:
        if modulus < 1:
            raise UsageError(f'Показатель усечения должен быть положительным, получено {modulus}')
        d = PolyMatrix(d.field, d.layers[:modulus])
    if d.rows == 0 or d.cols == 0:
        return []
    factors = invariant_factors(DomainMatrix(_sympy_grid(d), (d.rows, d.cols), _poly_domain(d.field)))
    return sorted(min(monom[0] for monom in f.monoms()) for f in factors if f)


def determinantal_valuation(d: PolyMatrix, j: int) -> int | None:
    """
    Минимальная s-валюация j x j миноров; None, если все миноры нулевые.

    Миноры вычисляются как определители над K[s] средствами sympy.

    :param d: Матрица над A
    :param j: Размер миноров
    :return: Валюация j-го детерминантного делителя
    """

    if j < 1 or j > min(d.rows, d.cols):
        raise UsageError(f'Миноры размера {j} у матрицы {d.rows}x{d.cols} не существуют')
    domain = _poly_domain(d.field)
    grid = _sympy_grid(d)
    best = None
    for rows in combinations(range(d.rows), j):
        for cols in combinations(range(d.cols), j):
            minor = DomainMatrix([[grid[i][c] for c in cols] for i in rows], (j, j), domain).det()
            if not minor:
                continue
            v = min(monom[0] for monom in minor.monoms())
            best = v if best is None else min(best, v)
            if best == 0:
                return 0
    return best


def _cross_check(d: PolyMatrix, pivots: list[int], profile: TorsionProfile) -> None:
    """
    Сверяет исключение с детерминантными делителями и с размерностями коядер над B_k.

    :raises InconsistencyError: При любом расхождении
    """

    ordered = sorted(pivots)
    modulus = max(ordered, default=0) + 1
    found = [v for v in invariant_factor_valuations(d, modulus) if v < modulus]
    # j-й детерминантный делитель имеет валюацию, равную сумме j наименьших показателей
    expected_divisors = list(accumulate(ordered))
    found_divisors = list(accumulate(found))
    if found_divisors != expected_divisors:
        j = next(
            (j for j, (a, b) in enumerate(zip(found_divisors, expected_divisors), start=1) if a != b),
            min(len(found_divisors), len(expected_divisors)) + 1,
        )
        logger.error(f"Валюации детерминантных делителей {found_divisors}, по исключению {expected_divisors}")
        raise InconsistencyError(f'Детерминантный делитель порядка {j} не согласован с исключением')
    for k in sorted({1, max(profile.exponents, default=0) + 1}):
        h = d.rows * k - rank(flatten_map(d.truncate(k)))
        if h != profile_dims(profile, k)[-1]:
            logger.error(f"dim coker над B_{k} = {h}, по профилю {profile_dims(profile, k)[-1]}")
            raise InconsistencyError(f'Размерность коядра над B_{k} не согласована с профилем кручения')


def _eliminate_to_rank(d: PolyMatrix, full: int) -> list[int]:
    """Исключение с удвоением точности, пока не найдены все full ведущих элементов."""
    if full == 0:
        return []
    safe_cap = default_precision_cap(d)
    cap = min(FIRST_CAP, safe_cap)
    while True:
        pivots = _local_elimination(d, cap)
        if len(pivots) >= full or cap >= safe_cap:
            return pivots
        cap = min(2 * cap, safe_cap)


def snf_exponents(d: PolyMatrix, precision_cap: int | None = None, check: bool = True) -> TorsionProfile:
    """
    Инвариантные множители коядра d над локализацией K[s] в (s).

    :param d: Матрица над A
    :param precision_cap: Точность исключения; по умолчанию подбирается удвоением
        до max(rows, cols) * deg + 1
    :param check: Сверять результат с независимыми путями
    :return: Профиль кручения коядра
    :raises PrecisionExhausted: Если какой-либо показатель не разрешается ниже precision_cap
    :raises InconsistencyError: Если независимые пути разошлись
    """

    if precision_cap is not None and precision_cap < 1:
        raise UsageError(f'Граница точности должна быть положительной, получено {precision_cap}')
    full = generic_rank(d)
    if precision_cap is not None:
        pivots = _local_elimination(d, precision_cap) if full else []
        if len(pivots) < full:
            raise PrecisionExhausted(
                f'При точности {precision_cap} разрешено {len(pivots)} инвариантных множителей из {full}'
            )
    else:
        pivots = _eliminate_to_rank(d, full)
    if len(pivots) != full:
        logger.error(f"Исключение нашло {len(pivots)} инвариантных множителей при ранге {full} над K(s)")
        raise InconsistencyError('Число инвариантных множителей не совпало с рангом над полем частных')
    profile = TorsionProfile(free_rank=d.rows - len(pivots), exponents=sorted(v for v in pivots if v > 0))
    if check:
        _cross_check(d, pivots, profile)
    logger.debug(f"Профиль кручения {d.rows}x{d.cols}: {profile}")
    return profile


def m_profile(p: TorsionProfile) -> list[int]:
    """m_j = #{i : r_i >= j} для j = 1..max r_i."""
    top = max(p.exponents, default=0)
    return [sum(1 for r in p.exponents if r >= j) for j in range(1, top + 1)]


def split_check(p: TorsionProfile) -> bool:
    """
    Проверяет, что кручение имеет вид T + T.

    :return: True, если все m_j чётны
    :raises InconsistencyError: Если чётность m_j не совпала с попарным разбиением показателей
    """

    m_even = all(m % 2 == 0 for m in m_profile(p))
    pairs = all(count % 2 == 0 for count in Counter(p.exponents).values())
    if m_even != pairs:
        raise InconsistencyError(f'Две характеристики расщепления разошлись для показателей {p.exponents}')
    return m_even


def profile_dims(p: TorsionProfile, k_max: int) -> list[int]:
    """h_k = k*free_rank + sum_i min(r_i, k) для k = 1..k_max."""
    return [k * p.free_rank + sum(min(r, k) for r in p.exponents) for k in range(1, k_max + 1)]


def profile_from_dims(h: list[int], q0: int) -> TorsionProfile:
    """
    Восстанавливает профиль из размерностей h_k = k*q0 + m_1 + ... + m_k.

    :param h: Размерности h_1, ..., h_K
    :param q0: Ранг свободной части
    :return: Профиль; показатели, не меньшие K, записываются как K
    :raises InconsistentSequence: Если m_k отрицательны или возрастают
    """

    if not h:
        raise UsageError('Последовательность размерностей пуста')
    if q0 < 0:
        raise UsageError(f'Ранг свободной части должен быть неотрицательным, получено {q0}')
    m = [h_k - h_prev - q0 for h_prev, h_k in zip([0] + h[:-1], h)]
    if any(x < 0 for x in m):
        raise InconsistentSequence(f'Отрицательное m_k в последовательности {m}')
    if any(a < b for a, b in zip(m, m[1:])):
        raise InconsistentSequence(f'Последовательность m_k возрастает: {m}')
    exponents = []
    for j, (cur, nxt) in enumerate(zip(m, m[1:] + [0]), start=1):
        exponents.extend([j] * (cur - nxt))
    if m[-1]:
        logger.warning(f"{m[-1]} показателей не меньше {len(h)}; они записаны как {len(h)}")
    return TorsionProfile(free_rank=q0, exponents=exponents)


def model_complex(space: BilinearSpace, w1: IsotropicLattice, w2: IsotropicLattice) -> TwoTermComplex:
    """
    Комплекс A^r + A^r -> V, (a, b) -> a*W1 - b*W2 в координатах V.

    Ядро над B_k имеет размерность q_k; используются точные многочленные базисы решёток.
    """

    w1.validate(space)
    w2.validate(space)
    e1, e2 = w1.polynomial(), w2.polynomial()
    return TwoTermComplex(PolyMatrix.hstack([e1.T, -e2.T]))


def generic_intersection_rank(space: BilinearSpace, w1: IsotropicLattice, w2: IsotropicLattice) -> int:
    """Размерность пересечения W1 и W2 над полем частных: свободный ранг коядра модельного комплекса."""
    return snf_exponents(model_complex(space, w1, w2).d).free_rank


def cohomology_dims(c: TwoTermComplex, k: int) -> tuple[int, int]:
    """
    Размерности ядра и коядра d ⊗ B_k над K.

    :return: (h0, h1)
    """

    if k < 1:
        raise UsageError(f'Точность k должна быть положительной, получено {k}')
    image = rank(flatten_map(c.d.truncate(k)))
    return k * c.rank0 - image, k * c.rank1 - image


def check_base_change(c: TwoTermComplex, k_max: int) -> BaseChangeReport:
    """
    Сравнивает H^1 над B_k с H^1 ⊗ B_k и проверяет формулу для H^0 при H^1 = 0.

    :param c: Двучленный комплекс
    :param k_max: Наибольшее k
    :return: Отчёт; расхождение h0 только записывается
    :raises PrecisionExhausted: Из snf_exponents
    """

    if k_max < 1:
        raise UsageError(f'k_max должно быть положительным, получено {k_max}')
    profile = snf_exponents(c.d)
    h0_generic = c.rank0 - (c.rank1 - profile.free_rank)
    dims = [cohomology_dims(c, k) for k in range(1, k_max + 1)]
    h0 = [a for a, _ in dims]
    h1 = [b for _, b in dims]
    predicted = profile_dims(profile, k_max)
    vanishing = profile.is_zero
    discrepancy = [h - k * h0_generic for k, h in enumerate(h0, start=1)]
    report = BaseChangeReport(
        profile=profile,
        h0=h0,
        h1=h1,
        h1_predicted=predicted,
        identity_ok=h1 == predicted,
        vanishing_applies=vanishing,
        vanishing_ok=all(x == 0 for x in discrepancy) if vanishing else None,
        h0_discrepancy=discrepancy,
    )
    if not report.holds:
        logger.error(f"Замена базы нарушена: h1 = {h1}, ожидалось {predicted}, расхождение h0 = {discrepancy}")
    return report


def random_complex(
    field: Field, rank0: int, rank1: int, degree: int, rng: np.random.Generator
) -> TwoTermComplex:
    """
    Случайный двучленный комплекс со степенями элементов не выше degree.

    Половина экземпляров имеет вид P * diag(s^e_i) * Q с обратимыми P mod s и Q,
    так что кручение нетривиально; остальные равномерно случайны.
    """

    if rank0 < 1 or rank1 < 1 or degree < 0:
        raise UsageError(f'Некорректные размеры комплекса: {rank0}, {rank1}, степень {degree}')
    if degree < 2 or rng.random() < 0.5:
        return TwoTermComplex(PolyMatrix(field, field.random_array(rng, (degree + 1, rank1, rank0))))
    top = degree - 1
    size = min(rank0, rank1)
    diag = field.zeros((top + 1, rank1, rank0))
    ranked = int(rng.integers(0, size + 1))
    for i in range(ranked):
        diag[int(rng.integers(0, top + 1)), i, i] = field.one()
    d = random_unimodular(field, rank1, rng) @ PolyMatrix(field, diag) @ PolyMatrix.constant(
        random_invertible(field, rank0, rng)
    )
    return TwoTermComplex(d)

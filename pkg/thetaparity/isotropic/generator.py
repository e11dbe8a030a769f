"""
Генератор пар вполне изотропных решёток.

Режим mu-param строит W2 по заложенной кососимметричной матрице в
стандартном гиперболическом пространстве. Режим cayley сдвигает W2
изометрией, сравнимой с I по модулю s, затем применяет к обеим решёткам
случайную изометрию (I - X)(I + X)^{-1} и меняет базис V, так что экземпляр
ничего не выдаёт о своём устройстве.
Оба режима хранят точные многочленные базисы решёток.
"""

import numpy as np
from loguru import logger

from thetaparity.core.config import settings
from thetaparity.core.constants import GeneratorModes
from thetaparity.core.exceptions.algebra_exceptions import (
    CayleyRetriesExhausted, InconsistencyError, NotAUnit, UsageError
)
from thetaparity.isotropic.models import (
    BilinearSpace, IsotropicInstance, IsotropicLattice, PlantedData, hyperbolic_gram
)
from thetaparity.linalg.models import BkMatrix, KMatrix, PolyMatrix
from thetaparity.linalg.utils import bk_det, bk_inverse, inverse, rank
from thetaparity.rings.arith import series_mul
from thetaparity.rings.fields import Field
from thetaparity.skew.models import SkewFamily
from thetaparity.skew.utils import build_nk

# Степень заложенной mu в режиме mu-param
MU_DEGREE = 2

# Попытки найти обратимую случайную матрицу над малым полем
INVERTIBLE_RETRIES = 64

# Половина наибольшего ранга s-части сдвига W2 в режиме cayley
DRIFT_RANK_HALF_MAX = 2

Seed = int | np.random.SeedSequence | np.random.Generator


def random_skew(field: Field, n: int, rng: np.random.Generator, depth: int | None = None) -> np.ndarray:
    """Случайная кососимметричная матрица n x n (или стопка из depth таких матриц)."""
    shape = (n, n) if depth is None else (depth, n, n)
    raw = field.random_array(rng, shape)
    return field.reduce(raw - np.swapaxes(raw, -1, -2))


def random_skew_of_rank(field: Field, n: int, rank_bound: int, rng: np.random.Generator) -> np.ndarray:
    """
    Случайная кососимметричная матрица A * J * A^T ранга не выше rank_bound.

    :param rank_bound: Чётная граница ранга, 0 <= rank_bound <= n
    """

    if rank_bound % 2 or not 0 <= rank_bound <= n:
        raise UsageError(f'Граница ранга {rank_bound} должна быть чётной и не больше {n}')
    half = rank_bound // 2
    if half == 0:
        return field.zeros((n, n))
    j = field.zeros((rank_bound, rank_bound))
    idx = np.arange(half)
    j[idx, half + idx] = field.one()
    j[half + idx, idx] = field(-1)
    a = field.random_array(rng, (n, rank_bound))
    return field.reduce(field.reduce(a @ j) @ a.T)


def random_invertible(field: Field, n: int, rng: np.random.Generator) -> KMatrix:
    """
    Случайная обратимая K-матрица.

    :raises InconsistencyError: Если за INVERTIBLE_RETRIES попыток матрица оставалась вырожденной
    """

    for _ in range(INVERTIBLE_RETRIES):
        m = KMatrix(field, field.random_array(rng, (n, n)))
        if rank(m) == n:
            return m
    raise InconsistencyError(f'Не удалось выбрать обратимую матрицу {n}x{n} над {field.name}')


def random_unimodular(field: Field, n: int, rng: np.random.Generator) -> PolyMatrix:
    """Многочленная матрица C_0 + s*C_1 с обратимой C_0."""
    c0 = random_invertible(field, n, rng)
    c1 = field.random_array(rng, (n, n))
    return PolyMatrix(field, np.stack([c0.entries, c1]))


def coordinate_rows(field: Field, r: int, q: int) -> tuple[KMatrix, KMatrix]:
    """
    Базисы U1 = (e_1..e_q, f_{q+1}..f_r) и двойственного U2 = (f_1..f_q, e_{q+1}..e_r).

    :return: Две матрицы r x 2r в координатах (e, f)
    """

    u1 = field.zeros((r, 2 * r))
    u2 = field.zeros((r, 2 * r))
    for i in range(r):
        if i < q:
            u1[i, i] = field.one()
            u2[i, r + i] = field.one()
        else:
            u1[i, r + i] = field.one()
            u2[i, i] = field.one()
    return KMatrix(field, u1), KMatrix(field, u2)


def _choose_q(r: int, rng: np.random.Generator, q: int | None) -> int:
    if q is None:
        return int(rng.integers(0, r + 1))
    if not 0 <= q <= r:
        raise UsageError(f'Заложенное q = {q} вне диапазона [0, {r}]')
    return q


def _mu_param_instance(
    field: Field, r: int, precision: int, rng: np.random.Generator, q: int | None, zero_mu: bool
) -> IsotropicInstance:
    if zero_mu and q is None:
        q = r
    q = _choose_q(r, rng, q)
    if zero_mu:
        psi = field.zeros((MU_DEGREE + 1, r, r))
    else:
        psi = random_skew(field, r, rng, depth=MU_DEGREE + 1)
        # mu_0 случайного чётного ранга, в том числе вырожденная
        psi[0] = random_skew_of_rank(field, r, 2 * int(rng.integers(0, r // 2 + 1)), rng)
    u1, u2 = coordinate_rows(field, r, q)

    # v_i = U1_i + s * sum_j psi_ij U2_j вполне изотропны точно
    graph = field.zeros((MU_DEGREE + 2, r, 2 * r))
    graph[0] = u1.entries
    for t in range(MU_DEGREE + 1):
        graph[t + 1] = field.reduce(psi[t] @ u2.entries)
    w2_exact = random_unimodular(field, r, rng) @ PolyMatrix(field, graph)

    e_rows = KMatrix(field, field.identity(2 * r)[:r])
    w1_exact = random_unimodular(field, r, rng) @ PolyMatrix.constant(e_rows)

    space = BilinearSpace.standard_hyperbolic(field, r, precision)
    planted = PlantedData(q=q, mu=SkewFamily(field, psi[:, :q, :q]) if q else None)
    return IsotropicInstance(
        space,
        IsotropicLattice.from_poly(w1_exact, precision),
        IsotropicLattice.from_poly(w2_exact, precision),
        planted,
    )


def cayley_transform(field: Field, x: PolyMatrix) -> PolyMatrix:
    """
    Многочленная матрица (I - X) * adj(I + X) = det(I + X) * (I - X)(I + X)^{-1}.

    Сопряжённая матрица вычисляется как det * inverse над B_P, где P превышает
    степень любого участвующего многочлена, поэтому результат точен.

    :raises NotAUnit: Если редукция I + X вырождена
    """

    n = x.rows
    depth = n * max(x.degree, 1) + 1
    identity = BkMatrix.identity(field, n, depth)
    truncated = x.truncate(depth)
    one_plus = identity + truncated
    det = bk_det(one_plus)
    adjugate = BkMatrix(field, series_mul(field, bk_inverse(one_plus).layers, det.as_array()[:, None, None]))
    return PolyMatrix.lift((identity - truncated) @ adjugate)


def _cayley_instance(
    field: Field, r: int, precision: int, rng: np.random.Generator, q: int | None, retries: int
) -> IsotropicInstance:
    n = 2 * r
    q = _choose_q(r, rng, q)
    h = hyperbolic_gram(field, r)

    for attempt in range(retries):
        s0 = random_skew(field, n, rng)
        u, v = field.random_array(rng, (2, n))
        # s-часть ранга не выше 2 держит степени det(I + X) и adj(I + X) малыми
        s1 = field.reduce(np.outer(u, v) - np.outer(v, u))
        x = PolyMatrix(field, field.reduce(np.stack([s0, s1]) @ h.entries))
        try:
            transform = cayley_transform(field, x)
            break
        except NotAUnit:
            logger.warning(f"I + X вырождена по модулю s, попытка {attempt + 1} из {retries}")
    else:
        raise CayleyRetriesExhausted(f'За {retries} попыток не найдена X с обратимой I + X')

    # Y = s * S * H: I + Y обратима, а сдвиг сохраняет редукцию W2 и q_1
    drift_rank = 2 * int(rng.integers(1, min(r, DRIFT_RANK_HALF_MAX) + 1))
    y = field.zeros((2, n, n))
    y[1] = field.reduce(random_skew_of_rank(field, n, drift_rank, rng) @ h.entries)
    drift = cayley_transform(field, PolyMatrix(field, y))

    u1, _ = coordinate_rows(field, r, q)
    e_rows = KMatrix(field, field.identity(n)[:r])
    w1_exact = PolyMatrix.constant(e_rows) @ transform
    w2_exact = PolyMatrix.constant(u1) @ drift @ transform

    # Замена базиса V: C = C_0 (I + s*a*E_ij), C^{-1} = (I - s*a*E_ij) C_0^{-1}
    c0 = random_invertible(field, n, rng)
    i, j = rng.choice(n, size=2, replace=False)
    elementary = field.zeros((2, n, n))
    elementary[0] = field.identity(n)
    elementary[1, i, j] = field(int(rng.integers(1, 10)))
    c = PolyMatrix.constant(c0) @ PolyMatrix(field, elementary)
    elementary_inv = elementary.copy()
    elementary_inv[1] = field.reduce(-elementary[1])
    c_inv = PolyMatrix(field, elementary_inv) @ PolyMatrix.constant(inverse(c0))
    gram = c @ PolyMatrix.constant(h) @ c.T

    w1_exact = PolyMatrix.constant(random_invertible(field, r, rng)) @ w1_exact @ c_inv
    w2_exact = PolyMatrix.constant(random_invertible(field, r, rng)) @ w2_exact @ c_inv
    space = BilinearSpace(gram.truncate(precision))
    return IsotropicInstance(
        space,
        IsotropicLattice.from_poly(w1_exact, precision),
        IsotropicLattice.from_poly(w2_exact, precision),
        PlantedData(q=q),
    )


def random_isotropic_pair(
    field: Field,
    r: int,
    precision: int,
    seed: Seed,
    mode: str = GeneratorModes.MU_PARAM,
    q: int | None = None,
    zero_mu: bool = False,
    retries: int | None = None,
) -> IsotropicInstance:
    """
    Строит пространство и пару вполне изотропных решёток.

    :param field: Поле коэффициентов
    :param r: Половина ранга V, r >= 1
    :param precision: Рабочая точность N >= 1
    :param seed: Зерно, SeedSequence или готовый генератор
    :param mode: 'mu-param' или 'cayley'
    :param q: Заложенное q_1; по умолчанию случайное
    :param zero_mu: Заложить mu = 0 (режим mu-param)
    :param retries: Лимит попыток преобразования Кэли
    :return: Экземпляр с проверенными инвариантами
    :raises UsageError: Некорректные размеры или режим
    :raises CayleyRetriesExhausted: Если I + X оставалась вырожденной
    """

    if r < 1:
        raise UsageError(f'Половина ранга r должна быть положительной, получено {r}')
    if precision < 1:
        raise UsageError(f'Точность N должна быть положительной, получено {precision}')
    rng = np.random.default_rng(seed)
    if mode == GeneratorModes.MU_PARAM:
        instance = _mu_param_instance(field, r, precision, rng, q, zero_mu)
    elif mode == GeneratorModes.CAYLEY:
        instance = _cayley_instance(field, r, precision, rng, q, retries or settings.CAYLEY_RETRIES)
    else:
        raise UsageError(f'Неизвестный режим генератора: {mode}')
    instance.w1.validate(instance.space)
    instance.w2.validate(instance.space)
    logger.debug(f"Сгенерирована пара решёток: режим {mode}, r = {r}, q = {instance.planted.q}")
    return instance


def planted_sequence(planted: PlantedData, k_max: int) -> list[int] | None:
    """
    Последовательность q_k, предсказанная заложенной mu; None, если mu не заложена.
    """

    if planted.mu is None:
        return [0] * k_max if planted.q == 0 else None
    family = planted.mu.times_s()
    return [k * planted.q - rank(build_nk(family, k)) for k in range(1, k_max + 1)]

import numpy as np
from loguru import logger

from thetaparity.core.exceptions.algebra_exceptions import (
    InconsistencyError, InvalidLattice, NotAUnit, PrecisionExhausted, UsageError
)
from thetaparity.isotropic.models import BilinearSpace, IsotropicLattice, MuData
from thetaparity.isotropic.schemas import ParityReport
from thetaparity.linalg.models import BkMatrix, KMatrix
from thetaparity.linalg.utils import (
    bk_inverse, complete_to_basis, flatten_map, inverse, kernel_basis, rank, rref, subspace_intersection
)
from thetaparity.skew.utils import build_nk


def _columns(m: BkMatrix, cols: slice | list[int]) -> BkMatrix:
    return BkMatrix(m.field, m.layers[:, :, cols])


def _rows(m: BkMatrix, rows: slice | list[int]) -> BkMatrix:
    return BkMatrix(m.field, m.layers[:, rows, :])


def _check_frame(space: BilinearSpace, e: BkMatrix, f: BkMatrix) -> None:
    identity = BkMatrix.identity(space.field, e.rows, space.precision)
    if not space.pairing(e, e).is_zero():
        raise InconsistencyError('Нарушено условие Q(e_i, e_j) = 0 в гиперболическом базисе')
    if space.pairing(f, e) != identity:
        raise InconsistencyError('Нарушено условие Q(f_i, e_j) = delta_ij в гиперболическом базисе')
    if not space.pairing(f, f).is_zero():
        raise InconsistencyError('Нарушено условие Q(f_i, f_j) = 0 в гиперболическом базисе')


def hyperbolic_complete(space: BilinearSpace, w1: IsotropicLattice) -> BkMatrix:
    """
    Дополняет базис изотропной решётки до гиперболического базиса V.

    Сначала находятся w_i с Q(w_i, e_j) = delta_ij: отображение V -> W1^v сюръективно,
    и его ограничение на ведущие столбцы редукции E*Q обратимо. Затем
    f_i = w_i - 1/2 * sum_j Q(w_i, w_j) e_j.

    :param space: Пространство с формой
    :param w1: Вполне изотропная решётка, прямое слагаемое
    :return: Матрица 2r x 2r, строки e_1..e_r, затем f_1..f_r
    :raises InvalidLattice: Если решётка не изотропна или не прямое слагаемое
    """

    w1.validate(space)
    field = space.field
    e = w1.basis
    paired = e @ space.gram
    _, pivots = rref(paired.reduction())
    if len(pivots) != w1.r:
        raise InvalidLattice('Отображение V -> W1^v не сюръективно по модулю s')
    square = _columns(paired, list(pivots))
    layers = field.zeros(e.layers.shape)
    layers[:, :, list(pivots)] = bk_inverse(square).T.layers
    w = BkMatrix(field, layers)
    c = space.pairing(w, w)
    f = w - c.scaled(field.halve(1)) @ e
    _check_frame(space, e, f)
    return BkMatrix.vstack([e, f])


def frame_coordinates(space: BilinearSpace, x: BkMatrix, frame: BkMatrix) -> tuple[BkMatrix, BkMatrix]:
    """
    Координаты строк x в гиперболическом базисе.

    :return: (alpha, beta), где x = alpha * E + beta * F; alpha = Q(x, F), beta = Q(x, E)
    """

    r = frame.rows // 2
    e, f = _rows(frame, slice(0, r)), _rows(frame, slice(r, 2 * r))
    return space.pairing(x, f), space.pairing(x, e)


def align_and_extract_mu(space: BilinearSpace, w1: IsotropicLattice, w2: IsotropicLattice) -> MuData:
    """
    Нормализует пару решёток и извлекает матрицу mu.

    Шаги: базис W1, согласованный с пересечением редукций; гиперболическое
    дополнение; выбор базиса W2 с v_i = e_i или f_i + sum a_ij e_j по модулю s и
    поправка f_i на кососимметричную матрицу (a_ij); проекция W2 на
    U1 = span(e_1..e_q, f_{q+1}..f_r) вдоль U2; чтение lambda и mu из v_i = e_i + s*z_i.

    :param space: Пространство с формой
    :param w1: Первая решётка
    :param w2: Вторая решётка
    :return: Данные mu
    :raises InvalidLattice: Если решётки некорректны
    :raises InconsistencyError: Если какой-либо шаг нормализации не выполнился
    """

    w1.validate(space)
    w2.validate(space)
    field = space.field
    n, r = space.precision, space.r

    # Шаг 1: базис W1, первые q векторов которого дают базис пересечения редукций
    e1_0, e2_0 = w1.reduction(), w2.reduction()
    kernel = kernel_basis(KMatrix.hstack([e1_0.T, -e2_0.T]))
    q = kernel.cols
    alpha_part = KMatrix(field, kernel.entries[:r].T.reshape(q, r))
    change = complete_to_basis(alpha_part)
    e = BkMatrix.constant(change, n) @ w1.basis

    # Шаг 2: гиперболическое дополнение
    frame = hyperbolic_complete(space, IsotropicLattice(e))
    f = _rows(frame, slice(r, 2 * r))

    # Шаг 3: базис W2 с заданной редукцией и поправка f_i для i > q
    alpha, beta = frame_coordinates(space, w2.basis, frame)
    if not KMatrix(field, beta.reduction().entries[:, :q]).is_zero():
        raise InconsistencyError('Редукция W2 не ортогональна пересечению редукций')
    selector = KMatrix.hstack([
        KMatrix(field, alpha.reduction().entries[:, :q]),
        KMatrix(field, beta.reduction().entries[:, q:]),
    ])
    try:
        reorder = inverse(selector)
    except NotAUnit as exc:
        raise InconsistencyError('Проекция W2 mod s на U1 не является изоморфизмом') from exc
    y_alpha = reorder @ alpha.reduction()
    a = KMatrix(field, y_alpha.entries[q:, q:])
    if not (a + a.T).is_zero():
        raise InconsistencyError('Матрица (a_ij) не кососимметрична')
    if q < r:
        f_tail = _rows(f, slice(q, r)) + BkMatrix.constant(a, n) @ _rows(e, slice(q, r))
        f = BkMatrix.vstack([_rows(f, slice(0, q)), f_tail])
        _check_frame(space, e, f)
        frame = BkMatrix.vstack([e, f])
    v = BkMatrix.constant(reorder, n) @ w2.basis

    # Шаг 4: проекция на U1 вдоль U2
    alpha, beta = frame_coordinates(space, v, frame)
    u1_part = BkMatrix.hstack([_columns(alpha, slice(0, q)), _columns(beta, slice(q, r))])
    if u1_part.reduction() != KMatrix.identity(field, r):
        raise InconsistencyError('U1-координаты базиса W2 не сравнимы с единичной матрицей по модулю s')
    normalizer = bk_inverse(u1_part)
    alpha, beta = normalizer @ alpha, normalizer @ beta
    u2_part = BkMatrix.hstack([_columns(beta, slice(0, q)), _columns(alpha, slice(q, r))])
    if not u2_part.reduction().is_zero():
        raise InconsistencyError('U2-координаты нормализованного базиса W2 не делятся на s')
    z = u2_part.shift_down(1)

    # Шаг 5: v_i = e_i + s*z_i, z_i = sum lambda_ij e_j + sum mu_ij f_j
    mu = BkMatrix(field, z.layers[:, :q, :q])
    lam = BkMatrix(field, z.layers[:, :q, q:])
    if not (mu + mu.T).is_zero():
        logger.error(f"Извлечённая mu не кососимметрична при q = {q}")
        raise InconsistencyError('Извлечённая матрица mu не кососимметрична')
    logger.debug(f"Нормализация пары решёток: r = {r}, q = {q}, точность mu = {n - 1}")
    return MuData(q=q, lam=lam, mu=mu, frame=frame)


def intersection_dims_oracle(space: BilinearSpace, w1: IsotropicLattice, w2: IsotropicLattice, k_max: int) -> list[int]:
    """
    Все q_1, ..., q_{k_max} прямым вычислением в развёртке V ⊗ B_K, K = k_max.

    Решётки являются прямыми слагаемыми, поэтому (W1 ⊗ B_k) ∩ (W2 ⊗ B_k)
    отождествляется с частью пересечения I = (W1 ⊗ B_K) ∩ (W2 ⊗ B_K),
    делящейся на s^(K-k). В ступенчатом виде базиса I по возрастанию степеней s
    это строки с ведущим столбцом в блоках K-k, ..., K-1.

    :param k_max: Наибольшее k, не больше точности пространства
    :return: Список q_k для k = 1..k_max
    :raises PrecisionExhausted: Если k_max превышает точность пространства
    """

    if k_max < 1:
        raise UsageError(f'Точность k должна быть положительной, получено {k_max}')
    if k_max > space.precision:
        raise PrecisionExhausted(f'Запрошено k = {k_max} при точности пространства {space.precision}')
    a = flatten_map(w1.basis.truncate(k_max).T)
    b = flatten_map(w2.basis.truncate(k_max).T)
    meet = subspace_intersection(a, b).entries
    blocks = [int(np.argmax(row != 0)) // space.gram.rows for row in meet]
    return [sum(1 for block in blocks if block >= k_max - k) for k in range(1, k_max + 1)]


def intersection_dim_oracle(space: BilinearSpace, w1: IsotropicLattice, w2: IsotropicLattice, k: int) -> int:
    """
    q_k = dim_K((W1 ⊗ B_k) ∩ (W2 ⊗ B_k)) прямым вычислением в развёртке V ⊗ B_k.

    :raises PrecisionExhausted: Если k превышает точность пространства
    """

    return intersection_dims_oracle(space, w1, w2, k)[-1]


def intersection_dim_structural(mu: MuData, k: int) -> int:
    """
    q_k = k*q - r_k, где r_k есть ранг N_k для семейства s*mu.

    :param mu: Данные нормализации
    :param k: Точность, k >= 1
    :return: q_k
    :raises PrecisionExhausted: Если mu известна с недостаточной точностью
    """

    if k < 1:
        raise UsageError(f'Точность k должна быть положительной, получено {k}')
    if mu.q == 0:
        return 0
    if k > mu.precision + 1:
        raise PrecisionExhausted(f'Для q_{k} нужна mu точности {k - 1}, известна точность {mu.precision}')
    return k * mu.q - rank(build_nk(mu.family(), k))


def check_intersection_parity(space: BilinearSpace, w1: IsotropicLattice, w2: IsotropicLattice, k_max: int) -> ParityReport:
    """
    Вычисляет q_k двумя путями и проверяет чётность и монотонность d_k = k*q_1 - q_k.

    :param k_max: Наибольшее k, не больше точности пространства
    :return: Отчёт о чётности
    :raises InconsistencyError: Если пути вычисления разошлись
    """

    if k_max < 1:
        raise UsageError(f'k_max должно быть положительным, получено {k_max}')
    if k_max > space.precision:
        raise PrecisionExhausted(f'k_max = {k_max} превышает точность пространства {space.precision}')
    mu = align_and_extract_mu(space, w1, w2)
    oracle = intersection_dims_oracle(space, w1, w2, k_max)
    structural = [intersection_dim_structural(mu, k) for k in range(1, k_max + 1)]
    if oracle != structural:
        logger.error(f"q_k прямым путём {oracle}, через mu {structural}")
        raise InconsistencyError(f'Пути вычисления q_k разошлись: {oracle} != {structural}')
    q1 = oracle[0]
    d = [k * q1 - qk for k, qk in enumerate(oracle, start=1)]
    return ParityReport(
        q=oracle,
        q_structural=structural,
        d=d,
        even_ok=all(x % 2 == 0 for x in d),
        monotone_ok=all(a <= b for a, b in zip(d, d[1:])),
        path_agreement=True,
        transversality_ok=q1 != 0 or all(x == 0 for x in oracle),
    )

from dataclasses import dataclass, field as dataclass_field
from typing import NamedTuple
from typing_extensions import Self

import numpy as np

from thetaparity.core.exceptions.algebra_exceptions import InvalidBilinearSpace, InvalidLattice, UsageError
from thetaparity.linalg.models import BkMatrix, KMatrix, PolyMatrix
from thetaparity.linalg.utils import rank
from thetaparity.rings.fields import Field
from thetaparity.skew.models import SkewFamily


@dataclass(frozen=True, eq=False)
class BilinearSpace:
    """
    Свободный модуль V ранга 2r над B_N с симметричной формой Q.

    :attr gram: Симметричная матрица Грама 2r x 2r точности N с невырожденной редукцией
    """

    gram: BkMatrix

    def __post_init__(self):
        g = self.gram
        if g.rows != g.cols or g.rows % 2 or g.rows == 0:
            raise InvalidBilinearSpace(f'Матрица Грама должна быть квадратной чётного размера, получено {g.rows}x{g.cols}')
        if g.precision < 1:
            raise InvalidBilinearSpace('Точность пространства должна быть положительной')
        if not g.is_symmetric():
            raise InvalidBilinearSpace('Матрица Грама не симметрична')
        if rank(g.reduction()) != g.rows:
            raise InvalidBilinearSpace('Редукция матрицы Грама по модулю s вырождена')

    @classmethod
    def standard_hyperbolic(cls, field: Field, r: int, precision: int) -> Self:
        """
        Пространство с матрицей Грама [[0, I], [I, 0]].

        :param field: Поле коэффициентов
        :param r: Половина ранга, r >= 1
        :param precision: Точность N >= 1
        """

        if r < 1:
            raise UsageError(f'Половина ранга r должна быть положительной, получено {r}')
        return cls(BkMatrix.constant(hyperbolic_gram(field, r), precision))

    @property
    def field(self) -> Field:
        return self.gram.field

    @property
    def r(self) -> int:
        return self.gram.rows // 2

    @property
    def precision(self) -> int:
        return self.gram.precision

    def truncate(self, k: int) -> 'BilinearSpace':
        return BilinearSpace(self.gram.truncate(k))

    def pairing(self, a: BkMatrix, b: BkMatrix) -> BkMatrix:
        """Матрица значений Q(a_i, b_j) для строк a и b."""
        return a @ self.gram @ b.T


@dataclass(frozen=True, eq=False)
class IsotropicLattice:
    """
    Свободный подмодуль W ранга r в V, заданный строками базиса.

    :attr basis: Матрица r x 2r над B_N
    :attr exact: Многочленный подъём базиса, если он известен точно
    """

    basis: BkMatrix
    exact: PolyMatrix | None = dataclass_field(default=None)

    def __post_init__(self):
        if self.basis.cols != 2 * self.basis.rows or self.basis.rows == 0:
            raise InvalidLattice(f'Базис решётки должен иметь размер r x 2r, получено {self.basis.rows}x{self.basis.cols}')

    @classmethod
    def from_poly(cls, exact: PolyMatrix, precision: int) -> Self:
        return cls(exact.truncate(precision), exact)

    @property
    def r(self) -> int:
        return self.basis.rows

    @property
    def precision(self) -> int:
        return self.basis.precision

    def truncate(self, k: int) -> 'IsotropicLattice':
        return IsotropicLattice(self.basis.truncate(k), self.exact)

    def reduction(self) -> KMatrix:
        return self.basis.reduction()

    def polynomial(self) -> PolyMatrix:
        """Точные многочленные данные, иначе подъём базиса с B_N."""
        return self.exact if self.exact is not None else PolyMatrix.lift(self.basis)

    def validate(self, space: BilinearSpace) -> None:
        """
        Проверяет изотропность и то, что W является прямым слагаемым V.

        :raises InvalidLattice: Если хотя бы одно условие нарушено
        """

        if self.basis.cols != space.gram.rows or self.basis.precision != space.precision:
            raise InvalidLattice(
                f'Решётка {self.r}x{self.basis.cols} точности {self.precision} не согласована с пространством '
                f'ранга {space.gram.rows} точности {space.precision}'
            )
        if not space.pairing(self.basis, self.basis).is_zero():
            raise InvalidLattice('Решётка не вполне изотропна')
        if rank(self.reduction()) != self.r:
            raise InvalidLattice('Редукция базиса решётки по модулю s имеет неполный ранг')


@dataclass(frozen=True, eq=False)
class MuData:
    """
    Данные нормализованной пары решёток.

    В адаптированном базисе v_i = e_i + s*z_i для i <= q, где
    z_i = sum_{j > q} lambda_ij e_j + sum_{j <= q} mu_ij f_j.

    :attr q: dim(W1 mod s ∩ W2 mod s)
    :attr lam: Матрица q x (r - q) над B_{N-1}
    :attr mu: Кососимметричная матрица q x q над B_{N-1}
    :attr frame: Строки e_1..e_r, f_1..f_r над B_N после выравнивания
    """

    q: int
    lam: BkMatrix
    mu: BkMatrix
    frame: BkMatrix

    @property
    def precision(self) -> int:
        """Точность, с которой известна mu."""
        return self.mu.precision

    def family(self) -> SkewFamily:
        """Семейство s*mu для подсчёта рангов."""
        return SkewFamily.from_bk(self.mu).times_s()


@dataclass(frozen=True, eq=False)
class PlantedData:
    """
    Что генератор знает об экземпляре заранее.

    :attr q: Заложенное q_1
    :attr mu: Заложенная mu в режиме mu-param (слои многочлена)
    """

    q: int
    mu: SkewFamily | None = None


class IsotropicInstance(NamedTuple):
    space: BilinearSpace
    w1: IsotropicLattice
    w2: IsotropicLattice
    planted: PlantedData


def hyperbolic_gram(field: Field, r: int) -> KMatrix:
    """K-матрица [[0, I], [I, 0]] размера 2r x 2r."""
    g = field.zeros((2 * r, 2 * r))
    idx = np.arange(r)
    g[idx, r + idx] = field.one()
    g[r + idx, idx] = field.one()
    return KMatrix(field, g)

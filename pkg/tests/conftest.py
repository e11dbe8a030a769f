import sys

import pytest
from loguru import logger

from thetaparity.isotropic.models import BilinearSpace, IsotropicLattice
from thetaparity.linalg.models import PolyMatrix
from thetaparity.rings.fields import Field, PrimeField, RationalField
from thetaparity.rings.models import PolyElement


@pytest.fixture(autouse=True)
def quiet_logging():
    logger.remove()
    logger.add(sys.stderr, level='WARNING')
    yield
    logger.remove()


@pytest.fixture
def f7() -> PrimeField:
    return PrimeField(7)


@pytest.fixture
def f32003() -> PrimeField:
    return PrimeField(32003)


@pytest.fixture
def qq() -> RationalField:
    return RationalField()


@pytest.fixture(params=['f7', 'qq'])
def small_field(request) -> Field:
    """Поле из разобранных примеров и рациональные числа."""
    return request.getfixturevalue(request.param)


def poly(field: Field, *coeffs) -> PolyElement:
    """Многочлен c_0 + c_1 s + ... по коэффициентам."""
    return PolyElement(field, tuple(coeffs))


def poly_matrix(field: Field, rows) -> PolyMatrix:
    """Многочленная матрица; элемент задаётся числом или кортежем коэффициентов."""
    grid = [[poly(field, *(e if isinstance(e, tuple) else (e,))) for e in row] for row in rows]
    return PolyMatrix.from_entries(field, grid)


def standard_pair(field: Field, w2_rows, precision: int = 4):
    """
    Стандартное гиперболическое пространство ранга 4, W1 = span(e1, e2)
    и W2, заданная строками многочленов в координатах (e1, e2, f1, f2).
    """
    space = BilinearSpace.standard_hyperbolic(field, 2, precision)
    w1 = IsotropicLattice.from_poly(poly_matrix(field, [[1, 0, 0, 0], [0, 1, 0, 0]]), precision)
    w2 = IsotropicLattice.from_poly(poly_matrix(field, w2_rows), precision)
    return space, w1, w2


# W2 = span(e1 + s*f2, e2 - s*f1)
MU_INSTANCE_ROWS = [[1, 0, 0, (0, 1)], [0, 1, (0, -1), 0]]

from loguru import logger

from thetaparity.core.exceptions.algebra_exceptions import NotAUnit, UsageError
from thetaparity.rings.fields import Field, FieldElement
from thetaparity.rings.models import TruncSeries


def trunc_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """
    Произведение в B_k: свёртка коэффициентов с усечением по s^k.

    :param a: Ряд точности k
    :param b: Ряд той же точности k
    :return: Произведение точности k
    :raises UsageError: Если точности различаются
    """

    if a.precision != b.precision:
        raise UsageError(f'Нельзя перемножить ряды точности {a.precision} и {b.precision}')
    return a * b


def trunc_inv(a: TruncSeries) -> TruncSeries:
    """
    Обратный элемент в B_k по рекурсии коэффициентов.

    :param a: Обратимый ряд (ненулевой свободный член)
    :return: Ряд b с trunc_mul(a, b) = 1
    :raises NotAUnit: Если свободный член равен нулю
    """

    if not a.is_unit:
        logger.debug(f"Попытка обратить необратимый ряд {a}")
        raise NotAUnit(f'Ряд {a} не обратим в B_{a.precision}')
    return a.inverse()


def halve(a: FieldElement, field: Field) -> FieldElement:
    """Половина элемента поля; существует, так как характеристика не равна 2."""
    return field.halve(a)

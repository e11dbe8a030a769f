from thetaparity.core.config import settings
from thetaparity.core.constants import FieldKinds
from thetaparity.rings.fields import Field, make_field


def get_field(kind: str = FieldKinds.PRIME, prime: int | None = None) -> Field:
    """
    Возвращает поле коэффициентов; модуль по умолчанию берётся из настроек.

    :param kind: 'prime' или 'rational'
    :param prime: Модуль простого поля
    :return: Контекст поля
    :raises UsageError: Неизвестный вид поля или непростой модуль
    """

    if kind == FieldKinds.PRIME and prime is None:
        prime = settings.DEFAULT_PRIME
    return make_field(kind, prime)

from thetaparity.core.constants import ExitCodes


class ThetaParityError(Exception):
    """
    Базовая ошибка библиотеки.

    :attr exit_code: Код завершения CLI для этой ошибки
    :attr detail: Текст ошибки
    """

    exit_code: int = ExitCodes.PROPERTY_VIOLATION
    detail: str = 'Ошибка вычисления'

    def __init__(self, detail: str | None = None):
        self.detail = detail or self.detail
        super().__init__(self.detail)


# Неверные параметры или конфигурация
class UsageError(ThetaParityError):
    exit_code = ExitCodes.USAGE
    detail = 'Неверные параметры'


# Некорректный файл с матрицей
class MatrixFileError(UsageError):
    detail = 'Некорректный файл с матрицей'


# Элемент не обратим в локальном кольце
class NotAUnit(ThetaParityError):
    detail = 'Элемент не является обратимым'


# Матрица не кососимметрична
class NotSkewSymmetric(UsageError):
    detail = 'Матрица не кососимметрична'


# Форма вырождена или не симметрична
class InvalidBilinearSpace(UsageError):
    detail = 'Грам-матрица не симметрична или её редукция вырождена'


# Решётка не изотропна или не является прямым слагаемым
class InvalidLattice(UsageError):
    detail = 'Решётка не вполне изотропна или не является прямым слагаемым'


# Расхождение двух независимых путей вычисления (ошибка реализации)
class InconsistencyError(ThetaParityError):
    detail = 'Внутреннее расхождение вычислений'


# Не хватает точности для ответа
class PrecisionExhausted(ThetaParityError):
    detail = 'Недостаточная точность'


# Последовательность размерностей не может возникнуть из профиля кручения
class InconsistentSequence(ThetaParityError):
    detail = 'Последовательность размерностей противоречива'


# Преобразование Кэли не удалось за отведённое число попыток
class CayleyRetriesExhausted(ThetaParityError):
    detail = 'Исчерпан лимит попыток построения преобразования Кэли'

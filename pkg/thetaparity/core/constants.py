class ExitCodes:
    """
    Коды завершения CLI
    """

    OK = 0
    PROPERTY_VIOLATION = 1
    USAGE = 2


class GeneratorModes:
    """
    Режимы генератора пар изотропных решёток
    """

    MU_PARAM = 'mu-param'
    CAYLEY = 'cayley'

    ALL = (MU_PARAM, CAYLEY)


class FieldKinds:
    """
    Виды поля коэффициентов
    """

    PRIME = 'prime'
    RATIONAL = 'rational'

    ALL = (PRIME, RATIONAL)


class ReportFormats:
    """
    Форматы отчёта кампании
    """

    JSON = 'json'
    CSV = 'csv'

    ALL = (JSON, CSV)


class CampaignCommands:
    """
    Подкоманды кампаний проверки
    """

    SKEW = 'skew'
    ISOTROPIC = 'isotropic'
    TORSION = 'torsion'
    COUNTEREXAMPLE = 'counterexample'
    BASE_CHANGE = 'base-change'

    ALL = (SKEW, ISOTROPIC, TORSION, COUNTEREXAMPLE, BASE_CHANGE)

import sys

from loguru import logger


def setup_logging(level: str) -> None:
    """
    Настраивает вывод loguru: один поток в stderr, stdout остаётся для отчётов.

    :param level: Уровень логирования (например, 'INFO' или 'DEBUG')
    """

    logger.remove()
    logger.add(
        sys.stderr,
        level=level.upper(),
        format='<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{function} - {message}',
    )

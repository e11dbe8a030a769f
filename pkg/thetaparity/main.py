import click
from loguru import logger

from thetaparity.campaign.commands import COMMANDS
from thetaparity.core.config import settings
from thetaparity.core.logger import setup_logging


def create_cli() -> click.Group:
    """
    Создание и конфигурация CLI.

    :return: Группа команд click
    """

    @click.group(
        help=(
            'Точная проверка чётности размерностей: ранги кососимметричных семейств, '
            'пересечения изотропных решёток, профили кручения и замена базы.'
        ),
    )
    @click.option('--log-level', default=settings.LOG_LEVEL, show_default=True,
                  type=click.Choice(['TRACE', 'DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
                  help='Уровень логирования (stderr).')
    def cli(log_level: str) -> None:
        setup_logging(log_level)
        logger.debug('Инициализация CLI...')

    # Регистрация команд
    register_commands(cli)

    return cli


def register_commands(cli: click.Group) -> None:
    """Регистрация подкоманд."""
    for command in COMMANDS:
        cli.add_command(command)


# Создание экземпляра CLI
cli = create_cli()

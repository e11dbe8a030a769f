import os
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    BASE_DIR: str = os.path.abspath(os.path.join(os.path.dirname(__file__), '../../'))

    # Блок настроек поля коэффициентов
    DEFAULT_PRIME: int = 32003

    # Блок настроек кампаний проверки
    DEFAULT_TRIALS: int = 500
    DEFAULT_SEED: int = 20240517
    K_MAX: int = 6
    PRECISION: int = 6
    Q_MIN: int = 1
    Q_MAX: int = 8
    R_MIN: int = 1
    R_MAX: int = 6
    TORSION_RANK_MAX: int = 6
    TORSION_DEGREE_MAX: int = 4
    BASE_CHANGE_TRIALS: int = 300
    BASE_CHANGE_K_MAX: int = 5
    WORKERS: int = 1

    # Блок настроек алгоритмов
    CAYLEY_RETRIES: int = 32

    # Блок настроек логирования
    LOG_LEVEL: str = 'INFO'

    # Блок настроек архива кампаний
    ARCHIVE_PATH: str = 'data/archive.sqlite3'

    model_config = SettingsConfigDict(env_file=f"{BASE_DIR}/.env")

    def get_archive_path(self) -> str:
        """
        Возвращает абсолютный путь к файлу архива кампаний.

        :return: Путь к SQLite-файлу архива.
        """

        if os.path.isabs(self.ARCHIVE_PATH):
            return self.ARCHIVE_PATH
        return os.path.join(self.BASE_DIR, self.ARCHIVE_PATH)

    def get_sqlite_db_url(self) -> str:
        """
        Генерирует URL для подключения к SQLite базе данных архива.

        :return: Строка с URL для подключения к базе данных.
        """

        return f"sqlite+aiosqlite:///{self.get_archive_path()}"


# Получаем параметры для загрузки переменных среды
settings = Settings()
database_url = settings.get_sqlite_db_url()

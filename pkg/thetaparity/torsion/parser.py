"""
Чтение матриц над A из текстовых файлов.

Одна строка файла - одна строка матрицы; элементы разделяются ';' или ',';
каждый элемент - многочлен от s с целыми коэффициентами, например
``s^2 - 3*s + 1``. Текст после '#' и пустые строки пропускаются.
"""

import re
from pathlib import Path

from loguru import logger
from sympy import Poly, SympifyError, ZZ, sympify
from sympy.polys.polyerrors import PolynomialError

from thetaparity.core.exceptions.algebra_exceptions import MatrixFileError
from thetaparity.linalg.models import PolyMatrix
from thetaparity.rings.fields import Field
from thetaparity.rings.models import PolyElement
from thetaparity.torsion.utils import S

_ENTRY_PATTERN = re.compile(r'^[0-9s+\-*^()\s]+$')
_SEPARATOR = re.compile(r'[;,]')


def parse_entry(text: str, field: Field) -> PolyElement:
    """
    Разбирает один многочлен от s.

    :param text: Запись многочлена
    :param field: Поле, в которое приводятся коэффициенты
    :return: Элемент A
    :raises MatrixFileError: Если запись не является многочленом с целыми коэффициентами
    """

    text = text.strip()
    if not text or not _ENTRY_PATTERN.match(text):
        raise MatrixFileError(f'Недопустимый элемент матрицы: {text!r}')
    try:
        poly = Poly(sympify(text.replace('^', '**'), locals={'s': S}), S)
    except (SympifyError, PolynomialError, SyntaxError, TypeError) as exc:
        raise MatrixFileError(f'Не удалось разобрать многочлен {text!r}: {exc}') from exc
    if poly.get_domain() != ZZ:
        raise MatrixFileError(f'Коэффициенты многочлена {text!r} не целые')
    return PolyElement(field, tuple(int(c) for c in reversed(poly.all_coeffs())))


def parse_matrix_text(text: str, field: Field) -> PolyMatrix:
    """
    Разбирает текст матрицы.

    :raises MatrixFileError: Пустая матрица, строки разной длины или плохие элементы
    """

    grid = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        try:
            grid.append([parse_entry(entry, field) for entry in _SEPARATOR.split(line)])
        except MatrixFileError as exc:
            raise MatrixFileError(f'Строка {number}: {exc.detail}') from exc
    if not grid:
        raise MatrixFileError('Файл не содержит ни одной строки матрицы')
    widths = {len(row) for row in grid}
    if len(widths) != 1:
        raise MatrixFileError(f'Строки матрицы имеют разную длину: {sorted(widths)}')
    return PolyMatrix.from_entries(field, grid)


def parse_matrix_file(path: str | Path, field: Field) -> PolyMatrix:
    """
    Читает матрицу над A из файла.

    :param path: Путь к файлу
    :param field: Поле коэффициентов
    :return: Многочленная матрица
    :raises MatrixFileError: Если файл не читается или содержит ошибки
    """

    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise MatrixFileError(f'Не удалось прочитать файл {path}: {exc}') from exc
    matrix = parse_matrix_text(text, field)
    logger.info(f"Прочитана матрица {matrix.rows}x{matrix.cols} степени {matrix.degree} из {path}")
    return matrix

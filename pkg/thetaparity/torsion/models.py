from dataclasses import dataclass

from thetaparity.linalg.models import PolyMatrix
from thetaparity.rings.fields import Field


@dataclass(frozen=True, eq=False)
class TwoTermComplex:
    """
    Двучленный комплекс 0 -> M^0 -> M^1 -> 0 свободных A-модулей.

    :attr d: Дифференциал, матрица rank1 x rank0 с многочленными элементами
    """

    d: PolyMatrix

    @property
    def field(self) -> Field:
        return self.d.field

    @property
    def rank0(self) -> int:
        return self.d.cols

    @property
    def rank1(self) -> int:
        return self.d.rows

    def __repr__(self) -> str:
        return f"TwoTermComplex({self.rank0} -> {self.rank1}, {self.d.to_json()})"

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thetaparity.core.exceptions.algebra_exceptions import (
    InconsistencyError, InconsistentSequence, MatrixFileError, PrecisionExhausted, UsageError
)
from thetaparity.isotropic.generator import random_invertible
from thetaparity.linalg.models import KMatrix, PolyMatrix
from thetaparity.rings.fields import PrimeField
from thetaparity.torsion.models import TwoTermComplex
from thetaparity.torsion.parser import parse_entry, parse_matrix_file, parse_matrix_text
from thetaparity.torsion.schemas import TorsionProfile
from thetaparity.torsion.utils import (
    check_base_change, cohomology_dims, determinantal_valuation, evaluate, generic_intersection_rank, generic_rank,
    invariant_factor_valuations, m_profile, model_complex, profile_dims, profile_from_dims, random_complex,
    snf_exponents, split_check
)
from tests.conftest import MU_INSTANCE_ROWS, poly_matrix, standard_pair

S = (0, 1)


def test_snf_diagonal(small_field):
    profile = snf_exponents(poly_matrix(small_field, [[S, 0], [0, S]]))
    assert profile == TorsionProfile(free_rank=0, exponents=[1, 1])


def test_snf_jordan_block(small_field):
    profile = snf_exponents(poly_matrix(small_field, [[S, 1], [0, S]]))
    assert profile.free_rank == 0
    assert profile.exponents == [2]


def test_snf_zero_map(f7):
    profile = snf_exponents(poly_matrix(f7, [[0, 0, 0], [0, 0, 0]]))
    assert profile.free_rank == 2
    assert profile.exponents == []


def test_snf_drops_unit_factors(f7):
    profile = snf_exponents(poly_matrix(f7, [[1, 0], [0, (0, 0, 1)], [0, 0]]))
    assert profile == TorsionProfile(free_rank=1, exponents=[2])


def test_snf_precision_cap(f7):
    d = poly_matrix(f7, [[(0, 0, 0, 1)]])
    assert snf_exponents(d).exponents == [3]
    with pytest.raises(PrecisionExhausted):
        snf_exponents(d, precision_cap=2)


def test_snf_agrees_across_fields(qq, f32003):
    rows = [[S, (0, 2)], [(0, 3), (0, 0, 1)]]
    assert snf_exponents(poly_matrix(qq, rows)).exponents == [1, 1]
    assert snf_exponents(poly_matrix(f32003, rows)).exponents == [1, 1]


def test_determinantal_valuation(f7):
    d = poly_matrix(f7, [[S, 1], [0, S]])
    assert determinantal_valuation(d, 1) == 0
    assert determinantal_valuation(d, 2) == 2
    assert determinantal_valuation(poly_matrix(f7, [[0, 0], [0, 0]]), 2) is None


def _diagonal_conjugate(field, powers, seed):
    """P * diag(s^e) * Q со случайными обратимыми P и Q; None в powers даёт нулевой столбец."""
    n = len(powers)
    depth = max(e for e in powers if e is not None) + 1
    layers = field.zeros((depth, n, n))
    for i, e in enumerate(powers):
        if e is not None:
            layers[e, i, i] = field.one()
    rng = np.random.default_rng(seed)
    p, q = random_invertible(field, n, rng), random_invertible(field, n, rng)
    return PolyMatrix.constant(p) @ PolyMatrix(field, layers) @ PolyMatrix.constant(q)


@pytest.mark.parametrize('field_name', ['f7', 'f32003'])
def test_snf_agrees_with_smith_form_on_every_divisor(request, field_name):
    field = request.getfixturevalue(field_name)
    d = _diagonal_conjugate(field, [0, 1, 1, 2, 3, None], 5)
    assert invariant_factor_valuations(d) == [0, 1, 1, 2, 3]
    assert invariant_factor_valuations(d, modulus=2) == [0, 1, 1]
    assert generic_rank(d) == 5
    assert determinantal_valuation(d, 3) == 2
    assert snf_exponents(d) == TorsionProfile(free_rank=1, exponents=[1, 1, 2, 3])


def test_snf_rejects_middle_divisor_mismatch(f32003, monkeypatch):
    d = _diagonal_conjugate(f32003, [0, 1, 1, 2, 3, None], 5)
    # первые два делителя совпадают, третий нет
    monkeypatch.setattr('thetaparity.torsion.utils._local_elimination', lambda d, cap: [0, 1, 2, 2, 3])
    with pytest.raises(InconsistencyError, match='порядка 3'):
        snf_exponents(d)


def test_snf_rejects_rank_mismatch(f32003, monkeypatch):
    d = _diagonal_conjugate(f32003, [0, 1, 2, None], 3)
    monkeypatch.setattr('thetaparity.torsion.utils._local_elimination', lambda d, cap: [0, 1])
    with pytest.raises(InconsistencyError):
        snf_exponents(d)


def test_invariant_factor_valuations_rejects_bad_modulus(f7):
    with pytest.raises(UsageError):
        invariant_factor_valuations(poly_matrix(f7, [[S]]), modulus=0)


def test_generic_rank_and_evaluate(small_field):
    singular = poly_matrix(small_field, [[S, (0, 0, 1)], [1, S]])
    assert evaluate(singular, 2) == KMatrix.from_rows(small_field, [[2, 4], [1, 2]])
    assert generic_rank(singular) == 1
    assert generic_rank(poly_matrix(small_field, [[S, 1], [0, S]])) == 2
    assert generic_rank(poly_matrix(small_field, [[0, 0, 0]])) == 0


def test_generic_rank_over_small_prime():
    # s^3 - s обращается в ноль во всех точках F_3
    f3 = PrimeField(3)
    d = poly_matrix(f3, [[(0, 2, 0, 1), 0], [0, (0, 2, 0, 1)]])
    assert all(evaluate(d, point) == KMatrix.zeros(f3, 2, 2) for point in range(3))
    assert generic_rank(d) == 2
    assert snf_exponents(d).exponents == [1, 1]


def test_torsion_profile_validation():
    with pytest.raises(ValueError):
        TorsionProfile(free_rank=0, exponents=[0, 1])
    with pytest.raises(ValueError):
        TorsionProfile(free_rank=0, exponents=[2, 1])
    assert TorsionProfile(free_rank=0).is_zero


def test_m_profile_and_split():
    assert m_profile(TorsionProfile(free_rank=0, exponents=[1, 1, 2, 2])) == [4, 2]
    assert split_check(TorsionProfile(free_rank=0, exponents=[1, 1, 2, 2]))
    assert split_check(TorsionProfile(free_rank=3, exponents=[2, 2]))
    assert not split_check(TorsionProfile(free_rank=0, exponents=[1, 2]))
    assert split_check(TorsionProfile(free_rank=1))


def test_profile_dims_and_recovery():
    profile = TorsionProfile(free_rank=1, exponents=[1, 3])
    h = profile_dims(profile, 4)
    assert h == [3, 5, 7, 8]
    assert profile_from_dims(h, 1) == profile


def test_profile_recovery_caps_long_exponents():
    assert profile_from_dims([2, 4], 0).exponents == [2, 2]


@pytest.mark.parametrize('h, q0', [([2, 5], 1), ([0], 1)])
def test_profile_recovery_rejects_bad_sequences(h, q0):
    with pytest.raises(InconsistentSequence):
        profile_from_dims(h, q0)


def test_cohomology_dims(f7):
    c = TwoTermComplex(poly_matrix(f7, [[S]]))
    assert cohomology_dims(c, 1) == (1, 1)
    assert cohomology_dims(c, 2) == (1, 1)
    c = TwoTermComplex(poly_matrix(f7, [[1, S]]))
    assert cohomology_dims(c, 3) == (3, 0)


def test_base_change_unit(f7):
    report = check_base_change(TwoTermComplex(poly_matrix(f7, [[1]])), 3)
    assert report.h1 == [0, 0, 0]
    assert report.vanishing_applies and report.vanishing_ok
    assert report.holds


def test_base_change_torsion(f7):
    report = check_base_change(TwoTermComplex(poly_matrix(f7, [[S]])), 2)
    assert report.h1 == report.h1_predicted == [1, 1]
    assert report.vanishing_ok is None
    assert report.h0_discrepancy == [1, 1]
    assert report.holds


def test_model_complex_examples(small_field):
    space, w1, w2 = standard_pair(small_field, MU_INSTANCE_ROWS)
    c = model_complex(space, w1, w2)
    assert (c.rank0, c.rank1) == (4, 4)
    profile = snf_exponents(c.d)
    assert profile == TorsionProfile(free_rank=0, exponents=[1, 1])
    assert split_check(profile)
    assert generic_intersection_rank(space, w1, w1) == 2
    _, _, transverse = standard_pair(small_field, [[0, 0, 1, 0], [0, 0, 0, 1]])
    assert snf_exponents(model_complex(space, w1, transverse).d).is_zero


def test_parse_matrix_text(f7, qq):
    text = '# матрица 2x2\n1; s\n\n0, s^2 - 3*s + 1  # хвост\n'
    d = parse_matrix_text(text, qq)
    assert (d.rows, d.cols) == (2, 2)
    assert d.entry(1, 1).coeffs == (1, -3, 1)
    assert parse_matrix_text(text, f7).entry(1, 1).coeffs == (1, 4, 1)
    assert parse_entry('(s + 1)^2', f7).coeffs == (1, 2, 1)


@pytest.mark.parametrize('text', ['1; x', '1/2', '1; s\n1', '# пусто\n', '1; s^-1'])
def test_parse_matrix_text_rejects(f7, text):
    with pytest.raises(MatrixFileError):
        parse_matrix_text(text, f7)


def test_parse_matrix_file(tmp_path, f7):
    path = tmp_path / 'd.txt'
    path.write_text('s, 1\n0, s\n', encoding='utf-8')
    assert snf_exponents(parse_matrix_file(path, f7)).exponents == [2]
    with pytest.raises(MatrixFileError):
        parse_matrix_file(tmp_path / 'missing.txt', f7)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 3), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=30, deadline=None)
def test_random_complexes_satisfy_base_change(rank0, rank1, degree, seed):
    c = random_complex(PrimeField(7), rank0, rank1, degree, np.random.default_rng(seed))
    report = check_base_change(c, 4)
    assert report.holds
    assert report.h1[0] == profile_dims(report.profile, 1)[0]

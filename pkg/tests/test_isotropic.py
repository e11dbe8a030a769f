from fractions import Fraction

import numpy as np
import pytest

from thetaparity.core.constants import GeneratorModes
from thetaparity.core.exceptions.algebra_exceptions import (
    InvalidBilinearSpace, InvalidLattice, NotAUnit, PrecisionExhausted, UsageError
)
from thetaparity.isotropic.generator import (
    cayley_transform, planted_sequence, random_isotropic_pair, random_skew, random_skew_of_rank
)
from thetaparity.isotropic.models import BilinearSpace, IsotropicLattice
from thetaparity.isotropic.utils import (
    align_and_extract_mu, check_intersection_parity, hyperbolic_complete, intersection_dim_oracle,
    intersection_dim_structural, intersection_dims_oracle
)
from thetaparity.linalg.models import BkMatrix, KMatrix, PolyMatrix
from thetaparity.linalg.utils import rank
from tests.conftest import MU_INSTANCE_ROWS, poly_matrix, standard_pair


def _frame_contracts(space, frame):
    r = frame.rows // 2
    e = BkMatrix(frame.field, frame.layers[:, :r, :])
    f = BkMatrix(frame.field, frame.layers[:, r:, :])
    return space.pairing(e, e), space.pairing(f, f), space.pairing(f, e)


def test_hyperbolic_complete_on_standard_space(small_field):
    space, w1, _ = standard_pair(small_field, MU_INSTANCE_ROWS)
    frame = hyperbolic_complete(space, w1)
    expected_f = BkMatrix.constant(KMatrix.from_rows(small_field, [[0, 0, 1, 0], [0, 0, 0, 1]]), 4)
    assert BkMatrix(small_field, frame.layers[:, 2:, :]) == expected_f


@pytest.mark.parametrize(('field_name', 'minus_half'), [('qq', Fraction(-1, 2)), ('f7', 3)])
def test_hyperbolic_complete_on_rank_two_space(request, field_name, minus_half):
    # Q = [[0, 1], [1, 1]], e_1 = (1, 0): f_1 = (-1/2, 1), над F_7 -1/2 = 3
    field = request.getfixturevalue(field_name)
    space = BilinearSpace(BkMatrix.constant(KMatrix.from_rows(field, [[0, 1], [1, 1]]), 2))
    w1 = IsotropicLattice(BkMatrix.constant(KMatrix.from_rows(field, [[1, 0]]), 2))
    frame = hyperbolic_complete(space, w1)
    assert KMatrix(field, frame.layers[0]) == KMatrix.from_rows(field, [[1, 0], [minus_half, 1]])
    assert frame.layers[0][1, 0] == minus_half
    assert not frame.layers[1].any()


def test_hyperbolic_complete_contracts_on_twisted_space(f7):
    # Q = C H C^T при C = I + s*E_{0,2}: базис E ничего не знает о виде формы
    c = poly_matrix(f7, [[1, 0, (0, 1), 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    h = PolyMatrix.constant(KMatrix.from_rows(f7, [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]))
    space = BilinearSpace((c @ h @ c.T).truncate(3))
    w1 = IsotropicLattice(BkMatrix.constant(KMatrix.from_rows(f7, [[0, 0, 1, 0], [0, 0, 0, 1]]), 3))
    frame = hyperbolic_complete(space, w1)
    ee, ff, fe = _frame_contracts(space, frame)
    assert ee.is_zero() and ff.is_zero()
    assert fe == BkMatrix.identity(f7, 2, 3)


def test_hyperbolic_complete_rejects_non_isotropic(f7):
    space = BilinearSpace.standard_hyperbolic(f7, 2, 2)
    w1 = IsotropicLattice(BkMatrix.constant(KMatrix.from_rows(f7, [[1, 0, 1, 0], [0, 1, 0, 0]]), 2))
    with pytest.raises(InvalidLattice):
        hyperbolic_complete(space, w1)


def test_bilinear_space_validation(f7):
    with pytest.raises(InvalidBilinearSpace):
        BilinearSpace(BkMatrix.constant(KMatrix.from_rows(f7, [[0, 1], [2, 0]]), 2))
    with pytest.raises(InvalidBilinearSpace):
        BilinearSpace(BkMatrix.constant(KMatrix.zeros(f7, 2, 2), 2))
    with pytest.raises(UsageError):
        BilinearSpace.standard_hyperbolic(f7, 0, 2)


def test_mu_extraction_identical_lattices(small_field):
    space, w1, w2 = standard_pair(small_field, [[1, 0, 0, 0], [0, 1, 0, 0]])
    mu = align_and_extract_mu(space, w1, w2)
    assert mu.q == 2
    assert mu.mu.is_zero()
    assert mu.lam.cols == 0


def test_mu_extraction_planted_instance(small_field):
    space, w1, w2 = standard_pair(small_field, MU_INSTANCE_ROWS)
    mu = align_and_extract_mu(space, w1, w2)
    assert mu.q == 2
    assert mu.mu.is_skew()
    assert mu.mu.reduction() == KMatrix.from_rows(small_field, [[0, 1], [-1, 0]])
    assert mu.lam.cols == 0


def test_mu_extraction_transverse(small_field):
    space, w1, w2 = standard_pair(small_field, [[0, 0, 1, 0], [0, 0, 0, 1]])
    assert align_and_extract_mu(space, w1, w2).q == 0


def test_intersection_dim_oracle_examples(small_field):
    space, w1, w2 = standard_pair(small_field, MU_INSTANCE_ROWS)
    assert intersection_dim_oracle(space, w1, w1, 3) == 6
    assert intersection_dim_oracle(space, w1, w2, 3) == 2
    _, _, transverse = standard_pair(small_field, [[0, 0, 1, 0], [0, 0, 0, 1]])
    assert intersection_dim_oracle(space, w1, transverse, 2) == 0
    with pytest.raises(PrecisionExhausted):
        intersection_dim_oracle(space, w1, w2, 5)


def test_intersection_dim_structural_examples(small_field):
    space, w1, w2 = standard_pair(small_field, [[1, 0, 0, 0], [0, 1, 0, 0]])
    mu = align_and_extract_mu(space, w1, w2)
    assert [intersection_dim_structural(mu, k) for k in (1, 2, 3)] == [2, 4, 6]
    _, _, transverse = standard_pair(small_field, [[0, 0, 1, 0], [0, 0, 0, 1]])
    assert intersection_dim_structural(align_and_extract_mu(space, w1, transverse), 4) == 0


def test_check_intersection_parity_identical_lattices(small_field):
    space, w1, _ = standard_pair(small_field, MU_INSTANCE_ROWS)
    report = check_intersection_parity(space, w1, w1, 4)
    assert report.d == [0, 0, 0, 0]
    assert report.holds


def test_check_intersection_parity_planted_instance(small_field):
    space, w1, w2 = standard_pair(small_field, MU_INSTANCE_ROWS, precision=3)
    report = check_intersection_parity(space, w1, w2, 3)
    assert report.q == [2, 2, 2]
    assert report.q_structural == [2, 2, 2]
    assert report.d == [0, 2, 4]
    assert report.even_ok and report.monotone_ok and report.path_agreement


def test_check_intersection_parity_rejects_k_max_above_precision(f7):
    space, w1, w2 = standard_pair(f7, MU_INSTANCE_ROWS, precision=2)
    with pytest.raises(PrecisionExhausted):
        check_intersection_parity(space, w1, w2, 3)


def test_lattice_validation(f7):
    space = BilinearSpace.standard_hyperbolic(f7, 2, 2)
    dependent = IsotropicLattice(BkMatrix.constant(KMatrix.from_rows(f7, [[1, 0, 0, 0], [2, 0, 0, 0]]), 2))
    with pytest.raises(InvalidLattice):
        dependent.validate(space)
    with pytest.raises(InvalidLattice):
        IsotropicLattice(BkMatrix.constant(KMatrix.from_rows(f7, [[1, 0, 0]]), 2))


def test_zero_mu_reproduces_w1_reduction(f32003):
    instance = random_isotropic_pair(f32003, 3, 4, 5, zero_mu=True)
    assert instance.planted.q == 3
    assert rank(KMatrix.vstack([instance.w1.reduction(), instance.w2.reduction()])) == 3
    assert check_intersection_parity(instance.space, instance.w1, instance.w2, 4).q == [3, 6, 9, 12]


@pytest.mark.parametrize('mode', GeneratorModes.ALL)
def test_generator_is_deterministic(f32003, mode):
    a = random_isotropic_pair(f32003, 3, 3, 123, mode=mode)
    b = random_isotropic_pair(f32003, 3, 3, 123, mode=mode)
    assert a.space.gram == b.space.gram
    assert a.w1.basis == b.w1.basis
    assert a.w2.basis == b.w2.basis


def test_generator_rejects_bad_sizes(f7):
    with pytest.raises(UsageError):
        random_isotropic_pair(f7, 0, 3, 1)
    with pytest.raises(UsageError):
        random_isotropic_pair(f7, 2, 3, 1, mode='unknown')


def test_cayley_transform_is_isometry(f32003):
    rng = np.random.default_rng(4)
    h = KMatrix.from_rows(f32003, [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    while True:
        s0 = KMatrix(f32003, random_skew(f32003, 4, rng))
        s1 = KMatrix(f32003, random_skew(f32003, 4, rng))
        x = PolyMatrix(f32003, np.stack([(s0 @ h).entries, (s1 @ h).entries]))
        try:
            t = cayley_transform(f32003, x)
            break
        except NotAUnit:
            continue
    product = t @ PolyMatrix.constant(h) @ t.T
    # T H T^T = det(I + X)^2 * H по всем степеням s
    assert product.layers[0][0, 2] != 0
    for layer in product.layers:
        assert KMatrix(f32003, layer) == h.scaled(layer[0, 2])


@pytest.mark.parametrize('mode', GeneratorModes.ALL)
def test_random_instances_satisfy_parity(f32003, mode):
    for seed in range(6):
        instance = random_isotropic_pair(f32003, 3, 4, seed, mode=mode)
        report = check_intersection_parity(instance.space, instance.w1, instance.w2, 4)
        assert report.holds
        assert report.q1 == instance.planted.q
        planted = planted_sequence(instance.planted, 4)
        if planted is not None:
            assert planted == report.q


def test_intersection_dims_oracle_lists_every_k(small_field):
    space, w1, w2 = standard_pair(small_field, MU_INSTANCE_ROWS, precision=3)
    assert intersection_dims_oracle(space, w1, w1, 3) == [2, 4, 6]
    assert intersection_dims_oracle(space, w1, w2, 3) == [2, 2, 2]
    assert intersection_dims_oracle(space, w1, w2, 2) == [2, 2]
    with pytest.raises(UsageError):
        intersection_dims_oracle(space, w1, w2, 0)


def test_random_skew_of_rank(f32003):
    rng = np.random.default_rng(11)
    for bound in (0, 2, 4):
        s = KMatrix(f32003, random_skew_of_rank(f32003, 5, bound, rng))
        assert s.is_skew()
        assert rank(s) <= bound
    assert rank(KMatrix(f32003, random_skew_of_rank(f32003, 5, 4, rng))) == 4
    with pytest.raises(UsageError):
        random_skew_of_rank(f32003, 5, 3, rng)
    with pytest.raises(UsageError):
        random_skew_of_rank(f32003, 2, 4, rng)


def test_mu_param_mu0_can_be_degenerate(f32003):
    ranks = set()
    for seed in range(30):
        instance = random_isotropic_pair(f32003, 4, 2, seed, q=4)
        ranks.add(rank(KMatrix(f32003, instance.planted.mu.layers[0])))
    assert ranks <= {0, 2, 4}
    assert ranks & {0, 2}


def test_cayley_instances_have_nonzero_mu(f32003):
    reports = []
    for seed in range(24):
        r = 2 + seed % 3
        instance = random_isotropic_pair(f32003, r, 4, seed, mode=GeneratorModes.CAYLEY, q=r)
        report = check_intersection_parity(instance.space, instance.w1, instance.w2, 4)
        assert report.holds
        assert report.q1 == r
        reports.append(report)
    assert any(report.d[-1] > 0 for report in reports)

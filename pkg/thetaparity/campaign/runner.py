"""
Кампании проверки: испытания по командам, их сборка в отчёт и итоговая статистика.

Зерно испытания выводится из зерна кампании и номера испытания, поэтому
результат не зависит ни от порядка, ни от числа процессов.
"""

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, Callable

import numpy as np
from loguru import logger

from thetaparity.campaign.schemas import CampaignConfig, Report, ReportSummary, TrialRecord
from thetaparity.core.constants import CampaignCommands
from thetaparity.core.dependencies.field_dep import get_field
from thetaparity.core.exceptions.algebra_exceptions import (
    InvalidBilinearSpace, InvalidLattice, NotSkewSymmetric, ThetaParityError, UsageError
)
from thetaparity.isotropic.generator import planted_sequence, random_isotropic_pair
from thetaparity.isotropic.models import IsotropicInstance
from thetaparity.isotropic.utils import check_intersection_parity
from thetaparity.rings.fields import Field
from thetaparity.skew.counterexample import PLANE_DIM, counterexample_image_dim, counterexample_matrix, kollar_statistics
from thetaparity.skew.models import SkewFamily
from thetaparity.skew.schemas import KollarStatistics
from thetaparity.skew.utils import check_rank_parity, random_skew_family
from thetaparity.torsion.models import TwoTermComplex
from thetaparity.torsion.parser import parse_matrix_file
from thetaparity.torsion.utils import (
    check_base_change, cohomology_dims, m_profile, model_complex, profile_from_dims, random_complex,
    snf_exponents, split_check
)

TrialRunner = Callable[[CampaignConfig, int], TrialRecord]

# Подклассы UsageError, которые внутри испытания означают сбой генератора, а не ошибку параметров
INSTANCE_FAULTS = (InvalidBilinearSpace, InvalidLattice, NotSkewSymmetric)


def trial_seed(seed: int, trial: int) -> int:
    """
    Зерно испытания, однозначно определённое парой (зерно кампании, номер испытания).

    :param seed: Зерно кампании
    :param trial: Номер испытания
    :return: 64-битное целое
    """

    state = np.random.SeedSequence(seed, spawn_key=(trial,)).generate_state(1, dtype=np.uint64)
    return int(state[0])


def _context(config: CampaignConfig, trial: int) -> tuple[int, np.random.Generator, Field]:
    seed = trial_seed(config.seed, trial)
    return seed, np.random.default_rng(seed), get_field(config.field, config.prime)


def _record(
    trial: int,
    seed: int,
    params: dict[str, Any],
    sequences: dict[str, Any],
    properties: dict[str, bool],
    payload: Callable[[], dict[str, Any]],
) -> TrialRecord:
    passed = all(properties.values())
    if not passed:
        broken = [name for name, ok in properties.items() if not ok]
        logger.error(f"Испытание {trial} (зерно {seed}) нарушило свойства: {broken}")
    return TrialRecord(
        trial=trial,
        seed=seed,
        params=params,
        sequences=sequences,
        properties=properties,
        passed=passed,
        counterexample=None if passed else payload(),
    )


def _error_record(
    trial: int, seed: int, params: dict[str, Any], exc: ThetaParityError, payload: dict[str, Any]
) -> TrialRecord:
    logger.error(f"Испытание {trial} (зерно {seed}) завершилось ошибкой {type(exc).__name__}: {exc.detail}")
    return TrialRecord(
        trial=trial,
        seed=seed,
        params=params,
        passed=False,
        counterexample={'error': type(exc).__name__, 'detail': exc.detail, **payload},
    )


def _reraise_usage(exc: ThetaParityError) -> None:
    """Пробрасывает ошибку параметров; остальные ошибки записываются как сбой испытания."""
    if isinstance(exc, UsageError) and not isinstance(exc, INSTANCE_FAULTS):
        raise exc


def _instance_payload(instance: IsotropicInstance) -> dict[str, Any]:
    return {
        'gram': instance.space.gram.to_json(),
        'w1': instance.w1.polynomial().to_json(),
        'w2': instance.w2.polynomial().to_json(),
    }


def _random_instance(config: CampaignConfig, rng: np.random.Generator, field: Field) -> IsotropicInstance:
    low, high = config.r_range
    r = int(rng.integers(low, high + 1))
    return random_isotropic_pair(field, r, config.precision, rng, mode=config.mode)


def skew_trial(config: CampaignConfig, trial: int) -> TrialRecord:
    """Случайное кососимметричное семейство: чётность и монотонность r_k."""
    seed, rng, field = _context(config, trial)
    low, high = config.q_range
    q = int(rng.integers(low, high + 1))
    family = random_skew_family(field, q, config.k_max, rng)
    params = {'q': q, 'depth': config.k_max}
    try:
        report = check_rank_parity(family, config.k_max)
    except ThetaParityError as exc:
        _reraise_usage(exc)
        return _error_record(trial, seed, params, exc, {'family': family.to_json()})
    properties = {
        'even': report.even_ok,
        'monotone': report.monotone_ok,
        'nesting': report.nesting_ok,
    }
    return _record(trial, seed, params, {'r': report.r}, properties, lambda: {'family': family.to_json()})


def isotropic_trial(config: CampaignConfig, trial: int) -> TrialRecord:
    """
    Случайная пара вполне изотропных решёток: q_k двумя путями, чётность d_k,
    согласие с заложенными данными и с ядром модельного комплекса.
    """

    seed, rng, field = _context(config, trial)
    try:
        instance = _random_instance(config, rng, field)
    except ThetaParityError as exc:
        _reraise_usage(exc)
        return _error_record(trial, seed, {'mode': config.mode}, exc, {})
    params = {'r': instance.space.r, 'mode': config.mode, 'planted_q': instance.planted.q}
    try:
        report = check_intersection_parity(instance.space, instance.w1, instance.w2, config.k_max)
        complex_ = model_complex(instance.space, instance.w1, instance.w2)
        dims = [cohomology_dims(complex_, k) for k in range(1, config.k_max + 1)]
        # сверку с нормальной формой Смита для этих экземпляров выполняет команда torsion
        profile = snf_exponents(complex_.d, check=False)
    except ThetaParityError as exc:
        _reraise_usage(exc)
        return _error_record(trial, seed, params, exc, _instance_payload(instance))
    planted = planted_sequence(instance.planted, config.k_max)
    properties = {
        'even': report.even_ok,
        'monotone': report.monotone_ok,
        'path_agreement': report.path_agreement,
        'transversality': report.transversality_ok,
        'planted_q1': report.q1 == instance.planted.q,
        'planted_sequence': planted is None or planted == report.q,
        'model_kernel': [h0 for h0, _ in dims] == report.q,
        'model_square': all(h0 == h1 for h0, h1 in dims),
    }
    sequences = {
        'q': report.q,
        'd': report.d,
        'm1': len(profile.exponents),
        'q0': profile.free_rank,
    }
    return _record(trial, seed, params, sequences, properties, lambda: _instance_payload(instance))


def torsion_trial(config: CampaignConfig, trial: int) -> TrialRecord:
    """
    Профиль кручения модельного комплекса случайной пары: расщепление T + T
    и замена базы. Экземпляры те же, что в команде isotropic при тех же параметрах.
    """

    if config.matrix_file is not None:
        return matrix_file_trial(config)
    seed, rng, field = _context(config, trial)
    try:
        instance = _random_instance(config, rng, field)
    except ThetaParityError as exc:
        _reraise_usage(exc)
        return _error_record(trial, seed, {'mode': config.mode}, exc, {})
    params = {'r': instance.space.r, 'mode': config.mode, 'planted_q': instance.planted.q}
    try:
        complex_ = model_complex(instance.space, instance.w1, instance.w2)
        base_change = check_base_change(complex_, config.k_max)
        profile = base_change.profile
        split = split_check(profile)
        recovered = profile_from_dims(base_change.h1, profile.free_rank)
    except ThetaParityError as exc:
        _reraise_usage(exc)
        return _error_record(trial, seed, params, exc, _instance_payload(instance))
    capped = [min(e, config.k_max) for e in profile.exponents]
    properties = {
        'split': split,
        'base_change': base_change.identity_ok,
        'profile_recovery': recovered.exponents == capped,
    }
    sequences = {
        'free_rank': profile.free_rank,
        'exponents': profile.exponents,
        'm': m_profile(profile),
        'h1': base_change.h1,
    }
    return _record(trial, seed, params, sequences, properties, lambda: _instance_payload(instance))


def matrix_file_trial(config: CampaignConfig) -> TrialRecord:
    """Профиль кручения коядра матрицы из файла и замена базы для неё."""
    field = get_field(config.field, config.prime)
    d = parse_matrix_file(config.matrix_file, field)
    params = {'matrix_file': config.matrix_file, 'rows': d.rows, 'cols': d.cols, 'degree': d.degree}
    try:
        base_change = check_base_change(TwoTermComplex(d), config.k_max)
    except ThetaParityError as exc:
        _reraise_usage(exc)
        return _error_record(0, config.seed, params, exc, {'d': d.to_json()})
    profile = base_change.profile
    sequences = {
        'free_rank': profile.free_rank,
        'exponents': profile.exponents,
        'm': m_profile(profile),
        'split': split_check(profile),
        'h0': base_change.h0,
        'h1': base_change.h1,
    }
    properties = {'base_change': base_change.identity_ok}
    return _record(0, config.seed, params, sequences, properties, lambda: {'d': d.to_json()})


def base_change_trial(config: CampaignConfig, trial: int) -> TrialRecord:
    """Случайный двучленный комплекс: H^1 над B_k против H^1 ⊗ B_k и формула для H^0."""
    seed, rng, field = _context(config, trial)
    rank0 = int(rng.integers(1, config.rank_max + 1))
    rank1 = int(rng.integers(1, config.rank_max + 1))
    degree = int(rng.integers(0, config.degree_max + 1))
    complex_ = random_complex(field, rank0, rank1, degree, rng)
    params = {'rank0': rank0, 'rank1': rank1, 'degree': degree}
    try:
        report = check_base_change(complex_, config.k_max)
    except ThetaParityError as exc:
        _reraise_usage(exc)
        return _error_record(trial, seed, params, exc, {'d': complex_.d.to_json()})
    properties = {'identity': report.identity_ok}
    if report.vanishing_applies:
        properties['vanishing'] = bool(report.vanishing_ok)
    sequences = {
        'free_rank': report.profile.free_rank,
        'exponents': report.profile.exponents,
        'h0': report.h0,
        'h1': report.h1,
        'h0_discrepancy': report.h0_discrepancy,
    }
    return _record(trial, seed, params, sequences, properties, lambda: {'d': complex_.d.to_json()})


def _contrast_family(field: Field, matrix: list[list]) -> SkewFamily:
    # x, y -> s: та же матрица как кососимметричное семейство над A
    constant = field.array([[e.a for e in row] for row in matrix])
    linear = field.reduce(field.array([[e.b for e in row] for row in matrix]) + field.array(
        [[e.c for e in row] for row in matrix]
    ))
    return SkewFamily(field, np.stack([constant, linear]))


def counterexample_trial(config: CampaignConfig, trial: int) -> TrialRecord:
    """
    Фиксированная матрица над K[x, y]/(x, y)^2 с образом нечётной размерности
    либо, с флагом random, одна случайная матрица для статистики.
    """

    if config.random:
        seed, rng, field = _context(config, trial)
        stats = kollar_statistics(field, 1, rng, with_constant=config.with_constant)
        sequences = {'image_dim': stats.image_dims[0], 'defect': stats.defects[0]}
        params = {'with_constant': config.with_constant}
        return _record(trial, seed, params, sequences, {}, dict)

    field = get_field(config.field, config.prime)
    matrix = counterexample_matrix(field, zero=config.zero)
    dim = counterexample_image_dim(field, zero=config.zero)
    contrast = check_rank_parity(_contrast_family(field, matrix), config.k_max)
    params = {
        'zero': config.zero,
        'matrix': [[[field.to_json(c) for c in e.coordinates()] for e in row] for row in matrix],
    }
    sequences = {
        'image_dim': dim,
        'parity': 'ODD' if dim % 2 else 'EVEN',
        'contrast_r': contrast.r,
    }
    properties = {
        'image_dim': dim == (0 if config.zero else PLANE_DIM),
        'contrast_even': contrast.even_ok,
    }
    return _record(0, config.seed, params, sequences, properties, lambda: {'matrix': params['matrix']})


def _property_failures(records: list[TrialRecord]) -> dict[str, int]:
    counts = Counter()
    for record in records:
        for name, ok in record.properties.items():
            if not ok:
                counts[name] += 1
        if record.counterexample and 'error' in record.counterexample:
            counts[record.counterexample['error']] += 1
    return dict(sorted(counts.items()))


def _isotropic_statistics(records: list[TrialRecord]) -> dict[str, Any]:
    done = [r.sequences for r in records if 'q' in r.sequences]
    m1_odd = sum(1 for s in done if s['m1'] % 2)
    gap_odd = sum(1 for s in done if (s['q'][0] - s['q0']) % 2)
    return {
        'm1_even': len(done) - m1_odd,
        'm1_odd': m1_odd,
        'q1_minus_q0_even': len(done) - gap_odd,
        'q1_minus_q0_odd': gap_odd,
        'transversal_instances': sum(1 for s in done if s['q'][0] == 0),
    }


def _torsion_statistics(records: list[TrialRecord]) -> dict[str, Any]:
    done = [r.sequences for r in records if 'exponents' in r.sequences]
    return {
        'nonzero_torsion': sum(1 for s in done if s['exponents']),
        'max_exponent': max((max(s['exponents']) for s in done if s['exponents']), default=0),
    }


def _base_change_statistics(records: list[TrialRecord]) -> dict[str, Any]:
    done = [r.sequences for r in records if 'h0' in r.sequences]
    return {
        'vanishing_instances': sum(1 for s in done if s['free_rank'] == 0 and not s['exponents']),
        'h0_discrepancy_instances': sum(1 for s in done if any(s['h0_discrepancy'])),
    }


def _counterexample_statistics(records: list[TrialRecord]) -> dict[str, Any]:
    done = [r.sequences for r in records if 'defect' in r.sequences]
    if not done:
        return {}
    dims = [s['image_dim'] for s in done]
    defects = [s['defect'] for s in done]
    stats = KollarStatistics(
        trials=len(done),
        image_dims=dims,
        defects=defects,
        odd_image_count=sum(1 for d in dims if d % 2),
        odd_defect_count=sum(1 for d in defects if d % 2),
    )
    return stats.model_dump(exclude={'image_dims', 'defects'})


TRIAL_RUNNERS: dict[str, tuple[TrialRunner, Callable[[list[TrialRecord]], dict[str, Any]]]] = {
    CampaignCommands.SKEW: (skew_trial, lambda records: {}),
    CampaignCommands.ISOTROPIC: (isotropic_trial, _isotropic_statistics),
    CampaignCommands.TORSION: (torsion_trial, _torsion_statistics),
    CampaignCommands.BASE_CHANGE: (base_change_trial, _base_change_statistics),
    CampaignCommands.COUNTEREXAMPLE: (counterexample_trial, _counterexample_statistics),
}


def run_trials(config: CampaignConfig, runner: TrialRunner, indices: list[int]) -> list[TrialRecord]:
    """
    Выполняет испытания в одном процессе или в пуле процессов.

    :return: Записи, упорядоченные по номеру испытания
    """

    if config.workers > 1 and len(indices) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(partial(runner, config), indices))
    else:
        records = [runner(config, trial) for trial in indices]
    return sorted(records, key=lambda record: record.trial)


def run_campaign(config: CampaignConfig) -> Report:
    """
    Выполняет кампанию проверки по конфигурации.

    :param config: Проверенная конфигурация
    :return: Отчёт с записями и итогом
    :raises UsageError: Некорректные параметры, обнаруженные при построении экземпляров
    """

    runner, statistics = TRIAL_RUNNERS[config.command]
    indices = config.trial_indices()
    logger.info(
        f"Запуск кампании {config.command}: {len(indices)} испытаний, зерно {config.seed}, "
        f"поле {get_field(config.field, config.prime).name}, процессов {config.workers}"
    )
    started = time.perf_counter()
    records = run_trials(config, runner, indices)
    elapsed = time.perf_counter() - started
    failures = sum(1 for record in records if not record.passed)
    summary = ReportSummary(
        trials=len(records),
        failures=failures,
        statistics={**statistics(records), 'property_failures': _property_failures(records)},
        wall_time_seconds=round(elapsed, 3),
    )
    logger.info(f"Кампания {config.command} завершена: нарушений {failures} из {len(records)}, {elapsed:.2f} с")
    return Report(command=config.command, config=config, records=records, summary=summary)

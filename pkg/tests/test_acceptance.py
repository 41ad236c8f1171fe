"""The ten acceptance criteria, one verdict line each.

Every test prints its criterion's pass/fail line before asserting, so
a full run leaves a readable scoreboard.  The module-scoped context
caches the three reference traces; whichever test touches a word first
pays its tracing cost.  Expected values are frozen: a criterion that
the build cannot meet fails here rather than being weakened.
"""

import pytest

from cubewords.verification import (
    VerificationContext,
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
)


@pytest.fixture(scope="module")
def ctx():
    return VerificationContext()


def _report(result):
    print()
    print(result.line)
    assert result.passed, result.detail


def test_criterion_01_interior_complexity_law(ctx):
    _report(criterion_1(ctx))


def test_criterion_02_corner_complexity_law(ctx):
    _report(criterion_2(ctx))


def test_criterion_03_quartic_start_laws(ctx):
    _report(criterion_3(ctx))


def test_criterion_04_reconstruction_equals_tracing(ctx):
    _report(criterion_4(ctx))


def test_criterion_05_return_word_predictions(ctx):
    _report(criterion_5(ctx))


def test_criterion_06_circle_census(ctx):
    _report(criterion_6(ctx))


def test_criterion_07_rank_predicts_slope(ctx):
    _report(criterion_7(ctx))


def test_criterion_08_second_difference_identity(ctx):
    _report(criterion_8(ctx))


def test_criterion_09_projection_and_frequency(ctx):
    _report(criterion_9(ctx))


def test_criterion_10_union_growth_trend(ctx):
    _report(criterion_10(ctx))

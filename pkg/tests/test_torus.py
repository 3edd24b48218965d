"""Torus ensembles: closed-form constants, Newton bodies, and count formulas."""

import math
from fractions import Fraction

import pytest

from realroots.torus import (
    Support,
    ball_support,
    beta_constant,
    box_support,
    complex_count_torus,
    kac_limit,
    mean_real_count_torus,
    newton_ellipsoid_torus,
    newton_polytope,
    real_proportion_torus,
    segment_proportion,
    segment_support,
)

# frozen closed forms for the derivative-moment constants, n = 1..10
BETA_TABLE = [
    2 / 3,
    math.pi / 8,
    4 / 15,
    math.pi / 16,
    16 / 105,
    5 * math.pi / 128,
    32 / 315,
    7 * math.pi / 256,
    256 / 3465,
    21 * math.pi / 1024,
]


def test_beta_table():
    for n, want in enumerate(BETA_TABLE, start=1):
        assert beta_constant(n) == pytest.approx(want, abs=1e-14)


def test_kac_limit_closed_form():
    for n in range(1, 11):
        assert kac_limit(n) == pytest.approx((n + 2) ** (-n / 2), abs=1e-14)
    assert kac_limit(2) == pytest.approx(0.25, abs=1e-14)


def test_segment_proportion_closed_form():
    for m in range(1, 101):
        assert segment_proportion(m) == pytest.approx(
            math.sqrt((m + 1) / (3 * m)), abs=1e-14
        )
    assert segment_proportion(1000) == pytest.approx(1 / math.sqrt(3), abs=1e-3)


# -- supports -----------------------------------------------------------------

def test_support_construction_dedupes_and_sorts():
    s = Support([(1,), (0,), (-1,), (1,)])
    assert s.points == ((-1,), (0,), (1,))
    assert s.dim == 1
    assert len(s) == 3


def test_support_factories():
    assert len(segment_support(2)) == 5
    assert len(box_support(2, 1)) == 9
    assert len(ball_support(2, 2)) == 13  # lattice points in the radius-2 disc
    assert box_support(3, 1).dim == 3


def test_central_symmetry_enforcement():
    assert box_support(2, 1).is_centrally_symmetric()
    asym = Support([(1, 0), (0, 1)])
    assert not asym.is_centrally_symmetric()
    with pytest.raises(ValueError):
        asym.require_symmetric()


def test_newton_polytope_of_box_support():
    p = newton_polytope(box_support(2, 1))
    assert p.volume() == 4
    assert len(p.vertices) == 4


def test_newton_ellipsoid_of_box_is_round():
    e = newton_ellipsoid_torus(box_support(2, 1))
    r = e.ball_radius()
    assert r is not None
    # second-moment normalization: Q = (8 pi^2 / 3) * I
    assert r * r == pytest.approx(8 * math.pi ** 2 / 3, rel=1e-12)


# -- counts -------------------------------------------------------------------

def test_segment_counts_are_kac_exact():
    for m in (1, 2, 5, 12):
        mean = mean_real_count_torus(segment_support(m))
        assert mean.method == "exact1d"
        assert mean.value == pytest.approx(2 * math.sqrt(m * (m + 1) / 3), rel=1e-13)
        assert complex_count_torus(segment_support(m)) == 2 * m


def test_box_ensemble_matches_closed_forms():
    b = box_support(2, 1)
    mean = mean_real_count_torus(b)
    assert mean.method == "balls"
    assert mean.value == pytest.approx(4 * math.pi / 3, rel=1e-12)
    assert complex_count_torus(b) == 8


def test_mixed_supports_complex_count():
    small = box_support(2, 1)
    large = box_support(2, 2)
    # mixed volume of the squares [-1,1]^2 and [-2,2]^2 is 8
    assert complex_count_torus([small, large]) == 16


def test_real_proportion_pipeline_consistency():
    seg = segment_support(5)
    res = real_proportion_torus(seg)
    assert res.method == "exact1d"
    assert res.real_stderr == 0.0
    assert res.complex_count == 10
    assert res.proportion == pytest.approx(segment_proportion(5), rel=1e-13)
    d = res.as_dict()
    assert set(d) >= {"real_count", "complex_count", "proportion", "method"}


def test_box_proportion_value():
    res = real_proportion_torus(box_support(2, 1))
    assert res.proportion == pytest.approx(math.pi / 6, rel=1e-12)


def test_three_dimensional_box_counts():
    b = box_support(3, 1)
    assert complex_count_torus(b) == 48  # 3! * vol([-1,1]^3)
    mean = mean_real_count_torus(b)
    # Q = (8 pi^2/3) I in three variables as well
    want = math.factorial(3) / (2 * math.pi) ** 3 * (4 * math.pi / 3) * (
        8 * math.pi ** 2 / 3
    ) ** 1.5
    assert mean.value == pytest.approx(want, rel=1e-12)


def test_support_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        complex_count_torus([segment_support(1), box_support(2, 1)])

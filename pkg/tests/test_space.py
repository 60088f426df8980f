"""Design-space construction, enumeration, indexing, and uniform sampling."""

import numpy as np
import pytest
from scipy.stats import chi2

from tiaopt import (DesignPoint, DesignSpace, discretize_bias,
                    enumerate_points, sample_uniform, sample_uniform_indices)
from tiaopt.space import cardinality


def small_space(nr=2, nc=2, nv=2):
    return DesignSpace(rf_values=np.linspace(1e3, 1e4, nr),
                       cf_values=np.linspace(1e-12, 1e-11, nc),
                       vd_values=np.linspace(0.0, 10.0, nv))


# -- construction and validation ---------------------------------------------


def test_design_point_validation():
    DesignPoint(rf=1.0, cf=1.0e-12, vd=0.0)  # vd = 0 allowed
    with pytest.raises(ValueError):
        DesignPoint(rf=0.0, cf=1e-12, vd=1.0)
    with pytest.raises(ValueError):
        DesignPoint(rf=1e3, cf=-1e-12, vd=1.0)
    with pytest.raises(ValueError):
        DesignPoint(rf=1e3, cf=1e-12, vd=-0.5)


def test_space_axes_must_be_strictly_increasing():
    with pytest.raises(ValueError):
        DesignSpace(rf_values=[1e3, 1e3], cf_values=[1e-12], vd_values=[0.0])
    with pytest.raises(ValueError):
        DesignSpace(rf_values=[2e3, 1e3], cf_values=[1e-12], vd_values=[0.0])
    with pytest.raises(ValueError):
        DesignSpace(rf_values=[], cf_values=[1e-12], vd_values=[0.0])


def test_discretize_bias_examples():
    assert discretize_bias(0.0, 1.0, 3).tolist() == [0.0, 0.5, 1.0]
    vals = discretize_bias(0.0, 32.0, 72)
    assert vals.size == 72
    assert vals[0] == 0.0
    assert vals[-1] == 32.0
    steps = np.diff(vals)
    assert np.allclose(steps, 32.0 / 71.0, rtol=1e-12)
    with pytest.raises(ValueError):
        discretize_bias(5.0, 5.0, 10)   # degenerate range
    with pytest.raises(ValueError):
        discretize_bias(0.0, 1.0, 1)    # too few values
    with pytest.raises(ValueError):
        discretize_bias(-1.0, 1.0, 3)


def test_cardinality():
    sp = DesignSpace(rf_values=np.arange(1.0, 73.0),
                     cf_values=np.arange(1.0, 73.0),
                     vd_values=np.arange(1.0, 73.0))
    assert sp.cardinality() == 373248
    assert cardinality(sp) == 373248
    assert small_space(1, 1, 1).cardinality() == 1
    sp2 = DesignSpace(rf_values=np.arange(1.0, 71.0),
                      cf_values=np.arange(1.0, 28.0),
                      vd_values=np.arange(1.0, 71.0))
    assert sp2.cardinality() == 70 * 27 * 70 == 132300


# -- enumeration ---------------------------------------------------------------


def test_enumerate_order_and_first_point():
    sp = small_space(2, 2, 2)
    pts = list(enumerate_points(sp))
    assert len(pts) == 8
    assert pts[0] == DesignPoint(sp.rf_values[0], sp.cf_values[0],
                                 sp.vd_values[0])
    # vd innermost: the second point only changes vd
    assert pts[1].rf == pts[0].rf and pts[1].cf == pts[0].cf
    assert pts[1].vd == sp.vd_values[1]
    # rf outermost: the last point of the first rf block precedes the rf step
    assert pts[3].rf == sp.rf_values[0]
    assert pts[4].rf == sp.rf_values[1]


def test_enumerate_exhaustive_unique():
    sp = small_space(10, 10, 10)
    pts = [(p.rf, p.cf, p.vd) for p in enumerate_points(sp)]
    assert len(pts) == sp.cardinality() == 1000
    assert len(set(pts)) == 1000


def test_single_point_space():
    sp = small_space(1, 1, 1)
    pts = list(enumerate_points(sp))
    assert len(pts) == 1
    rng = np.random.default_rng(0)
    for _ in range(5):
        assert sample_uniform(sp, rng) == pts[0]


def test_point_at_index_of_roundtrip():
    sp = small_space(4, 3, 5)
    for index in [(0, 0, 0), (3, 2, 4), (1, 2, 3)]:
        assert sp.index_of(sp.point_at(*index)) == index
    with pytest.raises(ValueError):
        sp.index_of(DesignPoint(999.0, 1e-12, 0.0))


# -- sampling -------------------------------------------------------------------


def test_sampling_reproducible_under_fixed_seed():
    sp = small_space(5, 6, 7)
    a = sample_uniform_indices(sp, np.random.default_rng(42), 100)
    b = sample_uniform_indices(sp, np.random.default_rng(42), 100)
    assert np.array_equal(a, b)


def test_scalar_and_batch_sampling_share_one_stream():
    sp = small_space(5, 6, 7)
    rng_scalar = np.random.default_rng(9)
    singles = [sample_uniform(sp, rng_scalar) for _ in range(50)]
    batch = sample_uniform_indices(sp, np.random.default_rng(9), 50)
    for point, idx in zip(singles, batch):
        assert point == sp.point_at(*(int(v) for v in idx))


def test_sampling_rejects_bare_seeds():
    sp = small_space()
    with pytest.raises(TypeError):
        sample_uniform_indices(sp, 42, 10)
    with pytest.raises(TypeError):
        sample_uniform(sp, np.random.RandomState(0))


def test_sampling_uniform_per_axis_chi_square():
    # 1e5 draws on a 72x72x72 grid; chi-square per axis at significance 0.001
    sp = DesignSpace(rf_values=np.arange(1.0, 73.0),
                     cf_values=np.arange(1.0, 73.0),
                     vd_values=np.arange(1.0, 73.0))
    n = 100_000
    draws = sample_uniform_indices(sp, np.random.default_rng(99), n)
    critical = chi2.ppf(1.0 - 0.001, df=71)
    for axis in range(3):
        counts = np.bincount(draws[:, axis], minlength=72)
        expected = n / 72.0
        stat = float(((counts - expected) ** 2 / expected).sum())
        assert stat < critical


def test_sampling_ranges_cover_every_axis_value():
    sp = small_space(3, 4, 2)
    draws = sample_uniform_indices(sp, np.random.default_rng(1), 2000)
    assert draws.shape == (2000, 3)
    for axis, size in enumerate(sp.shape):
        seen = np.unique(draws[:, axis])
        assert seen.min() == 0 and seen.max() == size - 1
        assert seen.size == size

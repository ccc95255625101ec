import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lorenz_hb import CLASSICAL, LorenzParams, equilibria, vector_field


def test_vector_field_examples():
    np.testing.assert_array_equal(vector_field([0, 0, 0]), [0, 0, 0])
    np.testing.assert_allclose(vector_field([1, 1, 1]), [0, 26, 1 - 8 / 3], rtol=0, atol=1e-15)
    np.testing.assert_allclose(vector_field([1, 0, 0]), [-10, 28, 0], atol=0)


def test_vector_field_vanishes_at_equilibria():
    for eq in equilibria(CLASSICAL):
        assert np.max(np.abs(vector_field(eq))) <= 1e-13


def test_equilibria_classical():
    o1, o2 = equilibria(CLASSICAL)
    q = math.sqrt(72.0)
    np.testing.assert_allclose(o2, [q, q, 27.0], rtol=1e-15)
    np.testing.assert_allclose(o1, [-q, -q, 27.0], rtol=1e-15)


def test_equilibria_unit_case():
    o1, o2 = equilibria(LorenzParams(10, 2, 1))
    np.testing.assert_allclose(o2, [1, 1, 1])
    np.testing.assert_allclose(o1, [-1, -1, 1])


def test_anchor():
    assert CLASSICAL.anchor == 27.0


@pytest.mark.parametrize("kw", [dict(r=1.0), dict(r=0.5), dict(sigma=0.0), dict(b=-1.0),
                                dict(r=float("nan")), dict(sigma=float("inf"))])
def test_rejects_bad_parameters(kw):
    with pytest.raises(ValueError):
        LorenzParams(**kw)


@settings(max_examples=50, deadline=None)
@given(st.floats(-30, 30), st.floats(-30, 30), st.floats(0, 50))
def test_rotation_symmetry(x1, x2, x3):
    # (x1, x2, x3) -> (-x1, -x2, x3) maps the field onto itself
    f = vector_field([x1, x2, x3])
    g = vector_field([-x1, -x2, x3])
    np.testing.assert_allclose(g, [-f[0], -f[1], f[2]], atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 20), st.floats(1.01, 100), st.floats(0.1, 5))
def test_equilibria_are_fixed_points(sigma, r, b):
    p = LorenzParams(sigma, r, b)
    for eq in equilibria(p):
        assert np.max(np.abs(vector_field(eq, p))) <= 1e-12 * max(1.0, r * r)

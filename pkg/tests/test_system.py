import numpy as np
import pytest

from lorenz_hb import (CLASSICAL, HBState, LorenzParams, TrigPoly, assemble_jacobian,
                       assemble_residual, builtin_seed, flatten, harmonic_count, unflatten)
from lorenz_hb.system import size


def h2_explicit(v):
    """The sixteen h=2 balance equations written out term by term (classical parameters).

    Returned in the package's canonical equation order.
    """
    (w, x10, x20, x30,
     c11, s11, c21, s21, c31, s31,
     c12, s12, c22, s22, c32, s32) = v
    k1 = [
        w * s11 - 10 * c21 + 10 * c11,
        -10 * s21 + 10 * s11 - c11 * w,
        2 * w * s12 - 10 * c22 + 10 * c12,
        -10 * s22 + 10 * s12 - 2 * c12 * w,
        10 * x10 - 10 * x20,
    ]
    k2 = [
        c11 * x30 + c31 * x10 + s11 * s32 / 2 + s12 * s31 / 2 + w * s21
        + c11 * c32 / 2 + c12 * c31 / 2 + c21 - 28 * c11,
        s11 * x30 + s31 * x10 + c11 * s32 / 2 - c12 * s31 / 2 + s21
        + c31 * s12 / 2 - c32 * s11 / 2 - 28 * s11 - c21 * w,
        c12 * x30 + c32 * x10 - s11 * s31 / 2 + 2 * w * s22 + c11 * c31 / 2 + c22 - 28 * c12,
        s12 * x30 + s32 * x10 + c11 * s31 / 2 + s22 - 28 * s12 + c31 * s11 / 2 - 2 * c22 * w,
        x10 * x30 + x20 - 28 * x10 + s12 * s32 / 2 + s11 * s31 / 2
        + c12 * c32 / 2 + c11 * c31 / 2,
    ]
    k3 = [
        -c11 * x20 - c21 * x10 + w * s31 - s11 * s22 / 2 - s12 * s21 / 2 + 8 * c31 / 3
        - c11 * c22 / 2 - c12 * c21 / 2,
        -s11 * x20 - s21 * x10 + 8 * s31 / 3 - c11 * s22 / 2 + c12 * s21 / 2
        - c21 * s12 / 2 + c22 * s11 / 2 - c31 * w,
        -c12 * x20 - c22 * x10 + 2 * w * s32 + s11 * s21 / 2 + 8 * c32 / 3 - c11 * c21 / 2,
        -s12 * x20 - s22 * x10 + 8 * s32 / 3 - c11 * s21 / 2 - c21 * s11 / 2 - 2 * c32 * w,
        8 * x30 / 3 - x10 * x20 - s12 * s22 / 2 - s11 * s21 / 2 - c12 * c22 / 2 - c11 * c21 / 2,
    ]
    anchor = x30 + c31 + c32 - 27
    out = []
    for i in range(2):
        for k in (k1, k2, k3):
            out += k[2 * i:2 * i + 2]
    return np.array(out + [k1[4], k2[4], k3[4], anchor])


def random_state(rng, h, scale=3.0):
    v = scale * rng.normal(size=size(h))
    v[0] = rng.uniform(0.5, 6.0)
    v[3] += 25.0
    return unflatten(v, h)


def test_h2_explicit_oracle(rng):
    worst = 0.0
    for _ in range(100):
        z = random_state(rng, 2)
        diff = assemble_residual(z, CLASSICAL) - h2_explicit(flatten(z))
        worst = max(worst, np.max(np.abs(diff)))
    assert worst <= 1e-12


@pytest.mark.parametrize("sign", [1, -1])
def test_equilibrium_embedding_is_root(sign):
    for h in range(1, 41):
        for omega in (0.3, 4.0):
            z = HBState.equilibrium(h, CLASSICAL, sign, omega)
            assert np.max(np.abs(assemble_residual(z, CLASSICAL))) <= 1e-13


def test_equilibrium_root_other_parameters():
    p = LorenzParams(10, 2, 1)
    z = HBState.equilibrium(3, p, 1, 2.0)
    np.testing.assert_array_equal(assemble_residual(z, p), np.zeros(size(3)))


def test_tables_are_near_root(reference_h35):
    assert reference_h35.h == 35
    assert np.max(np.abs(assemble_residual(reference_h35, CLASSICAL))) <= 1e-6


@pytest.mark.parametrize("h", [2, 5])
def test_jacobian_matches_central_differences(rng, h):
    eps = 1e-6
    for _ in range(20):
        z = random_state(rng, h)
        v = flatten(z)
        J = assemble_jacobian(z, CLASSICAL)
        fd = np.empty_like(J)
        for j in range(v.size):
            e = np.zeros_like(v)
            e[j] = eps
            fd[:, j] = (assemble_residual(unflatten(v + e, h)) -
                        assemble_residual(unflatten(v - e, h))) / (2 * eps)
        scale = max(1.0, np.max(np.abs(J)))
        assert np.max(np.abs(J - fd)) <= 1e-6 * scale


def test_jacobian_anchor_row():
    h = 4
    z = random_state(np.random.default_rng(1), h)
    row = assemble_jacobian(z)[-1]
    v = np.zeros(size(h))
    v[3] = 1.0
    v[4 + 4::6] = 1.0  # c3i columns
    np.testing.assert_array_equal(row, v)


def test_jacobian_is_exact_for_quadratic_system(rng):
    # F(z + l d) is quadratic in l: F(z+d) = F(z) + J d + (F(z+d) + F(z-d) - 2F(z)) / 2
    h = 3
    z, d = flatten(random_state(rng, h)), rng.normal(size=size(h))
    F = lambda v: assemble_residual(unflatten(v, h))
    J = assemble_jacobian(unflatten(z, h))
    curv = (F(z + d) + F(z - d) - 2 * F(z)) / 2
    np.testing.assert_allclose(F(z + d), F(z) + J @ d + curv, atol=1e-10)
    # third difference vanishes
    third = F(z + 2 * d) - 3 * F(z + d) + 3 * F(z) - F(z - d)
    assert np.max(np.abs(third)) <= 1e-9


def test_flatten_round_trip(rng):
    for h in (1, 2, 7):
        v = rng.normal(size=size(h))
        np.testing.assert_array_equal(flatten(unflatten(v, h)), v)


def test_flatten_layout():
    x1 = TrigPoly(1.0, [11.0, 12.0], [21.0, 22.0])
    x2 = TrigPoly(2.0, [31.0, 32.0], [41.0, 42.0])
    x3 = TrigPoly(3.0, [51.0, 52.0], [61.0, 62.0])
    v = flatten(HBState(9.0, x1, x2, x3))
    np.testing.assert_array_equal(
        v, [9, 1, 2, 3, 11, 21, 31, 41, 51, 61, 12, 22, 32, 42, 52, 62])


def test_flatten_seed():
    v = flatten(builtin_seed())
    assert v.size == 34
    np.testing.assert_array_equal(v[:6], [4, 0, 0, 0, -1, 0])


def test_unflatten_zeros():
    z = unflatten(np.zeros(size(3)), 3)
    assert z.omega == 0
    assert all(x.allclose(TrigPoly.zeros(3)) for x in z.coords)


def test_unflatten_rejects_wrong_length():
    with pytest.raises(ValueError):
        unflatten(np.zeros(15), 2)


def test_harmonic_count():
    assert harmonic_count(214) == 35
    assert size(35) == 214
    with pytest.raises(ValueError):
        harmonic_count(15)

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from firstkind.catalog import appendix3, disk, f3
from firstkind.config import QuadratureConfig
from firstkind.errors import IllConditionedRecenteringError, InputError, InvalidScaleError, OutOfDomainError
from firstkind.series import (
    CoefficientMap,
    RecenteringTailWarning,
    as_normalized,
    boundary_area,
    evaluate,
    mobius,
    recenter,
    rotate,
    scale,
    series_area,
    taylor_coefficients,
)


def test_evaluate_identity():
    assert evaluate(CoefficientMap([0, 1]), 0.5) == pytest.approx(0.5)


def test_f3_cusp_point_and_derivative():
    assert evaluate(f3(), 1j) == pytest.approx(2j / 3, abs=1e-15)
    assert abs(evaluate(f3(), 1j, 1)) < 1e-15
    assert abs(evaluate(f3(), -1j, 1)) < 1e-15


def test_evaluate_second_derivative():
    # f3'' = 2z
    assert evaluate(f3(), 0.3 + 0.1j, 2) == pytest.approx(0.6 + 0.2j)


def test_evaluate_rejects_outside_disk():
    with pytest.raises(OutOfDomainError):
        evaluate(f3(), 1.1)
    evaluate(f3(), 1 + 5e-13)  # within the slack


def test_evaluate_rejects_bad_order():
    with pytest.raises(InputError):
        evaluate(f3(), 0.1, 3)


def test_coefficient_map_validation():
    with pytest.raises(InputError):
        CoefficientMap([1, 0, 1])
    with pytest.raises(InputError):
        CoefficientMap([0])
    with pytest.raises(InputError):
        CoefficientMap([0, 1, np.nan])


def test_coefficient_map_is_immutable_and_hashable():
    f = CoefficientMap([0, 1, 0, 0.2])
    with pytest.raises(ValueError):
        f.coefficients[0] = 1
    assert f == CoefficientMap([0, 1, 0, 0.2])
    assert len({f, CoefficientMap([0, 1, 0, 0.2])}) == 1
    assert f.truncation_degree == 3
    assert f.coefficient(10) == 0


def test_series_area_examples():
    assert series_area(disk()) == pytest.approx(math.pi, rel=1e-15)
    assert series_area(f3()) == pytest.approx(4 * math.pi / 3, rel=1e-15)
    assert series_area(appendix3(1.0)) == pytest.approx(math.pi * (1 + 4 / 27 + 1 / 45), rel=1e-15)


def test_area_theorem_on_builtins(builtin_maps):
    for name, f in builtin_maps.items():
        assert boundary_area(f, 4096) == pytest.approx(series_area(f), abs=1e-12), name
        # the inscribed polygon converges quadratically
        assert boundary_area(f, 16384, "shoelace") == pytest.approx(series_area(f), abs=1e-6), name


def test_boundary_area_unknown_method():
    with pytest.raises(InputError):
        boundary_area(disk(), 64, "simpson")


def test_scale():
    assert np.allclose(scale(disk(), 2).coefficients, [0, 2])
    with pytest.raises(InvalidScaleError):
        scale(disk(), 0)
    with pytest.raises(InvalidScaleError):
        scale(disk(), -1)


def test_rotate_preserves_moduli_and_area():
    f = appendix3(1.7)
    g = rotate(f, 0.7)
    assert np.allclose(np.abs(g.coefficients), np.abs(f.coefficients), atol=1e-15)
    assert series_area(g) == pytest.approx(series_area(f), abs=1e-12)
    # g(z) = e^{-ia}(f(e^{ia}z) - q) + q
    z = 0.4 * np.exp(1j * np.linspace(0, 6, 7))
    assert np.allclose(g(z), np.exp(-0.7j) * (f(np.exp(0.7j) * z) - f.q) + f.q, atol=1e-14)


def test_taylor_coefficients_exponential():
    c = taylor_coefficients(np.exp, 10, 1.0, 256)
    expected = [1 / math.factorial(k) for k in range(11)]
    assert np.allclose(c, expected, atol=1e-15)
    with pytest.raises(InputError):
        taylor_coefficients(np.exp, 300, 1.0, 256)


def test_recenter_identity_at_zero():
    nm = recenter(disk(), 0)
    assert nm.a1 == pytest.approx(1.0)
    assert abs(nm.a2) < 1e-15


def test_recenter_disk_closed_form():
    # (z + c)/(1 + cz) = c + sum (1 - c^2)(-c)^(k-1) z^k
    c = 0.3
    nm = recenter(disk(), c)
    k = np.arange(1, 8)
    assert nm.q == pytest.approx(0.3, abs=1e-15)
    assert np.allclose(nm.coefficients[1:8], (1 - c**2) * (-c) ** (k - 1), atol=1e-14)
    assert nm.coefficients[1] == pytest.approx(0.91)
    assert nm.coefficients[2] == pytest.approx(-0.273)
    assert nm.coefficients[3] == pytest.approx(0.0819)


def test_recenter_positive_a1_for_complex_centre():
    nm = recenter(appendix3(1.0), 0.2 + 0.3j)
    assert nm.map.a1.imag == 0 and nm.a1 > 0


def test_recenter_rejects_points_near_circle():
    with pytest.raises(IllConditionedRecenteringError):
        recenter(disk(), 1 - 1e-7)


def test_recenter_tail_warning():
    cfg = QuadratureConfig(cauchy_samples=64)
    with pytest.warns(RecenteringTailWarning):
        recenter(appendix3(1.0), 0.9, cfg)


def test_recenter_tail_small_at_moderate_centre():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        nm = recenter(appendix3(2.0), 0.5)
    assert nm.tail < 1e-10


def test_as_normalized_rotates_a1_positive():
    f = CoefficientMap([0.1, 2j, 0, 0.3])
    nm = as_normalized(f)
    assert nm.a1 == pytest.approx(2.0)
    assert series_area(nm.map) == pytest.approx(series_area(f))
    z = 0.5 * np.exp(1j * np.linspace(0, 6, 9))
    assert np.allclose(nm.map(z), f(np.exp(1j * nm.alpha) * z), atol=1e-14)


def test_mobius_is_disk_automorphism():
    z = 0.99 * np.exp(1j * np.linspace(0, 6, 50))
    w = mobius(0.3 - 0.4j, np.exp(1j * np.linspace(0, 6, 50)))
    assert np.allclose(np.abs(w), 1)
    assert np.all(np.abs(mobius(0.3 - 0.4j, z)) < 1)


coeff = st.complex_numbers(max_magnitude=1.0 / 8, allow_nan=False, allow_infinity=False)


@settings(max_examples=30, deadline=None)
@given(
    st.lists(coeff, min_size=1, max_size=7),
    st.floats(0, 0.8),
    st.floats(0, 2 * math.pi),
)
def test_recenter_round_trip(tail, r, phase):
    f = CoefficientMap([0, 1] + tail)
    zstar = r * np.exp(1j * phase)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RecenteringTailWarning)
        nm = recenter(f, zstar)
    z = 0.9 * np.exp(2j * np.pi * np.arange(64) / 64) * np.linspace(0.1, 1, 64)
    assert np.allclose(nm.map(z), f(mobius(zstar, np.exp(1j * nm.alpha) * z)), atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.lists(coeff, min_size=1, max_size=6), st.complex_numbers(max_magnitude=0.9))
def test_derivative_matches_finite_differences(tail, z):
    f = CoefficientMap([0.2, 1] + tail)
    h = 1e-5
    fd = (f(z + h) - f(z - h)) / (2 * h)
    d = f.value(z, 1)
    assert abs(fd - d) <= 1e-8 * max(1.0, abs(d))

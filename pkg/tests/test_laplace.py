import numpy as np
import pytest

from orbitherm.laplace import (
    LaplaceTable,
    TABLE_PAIRS,
    build_table_values,
    laplace_coefficient,
    laplace_derivative,
    laplace_derivatives,
)


def test_alpha_zero_values():
    assert laplace_coefficient(0.5, 0, 0.0) == pytest.approx(2.0, abs=1e-14)
    for j in (1, 2, 3):
        assert laplace_coefficient(0.5, j, 0.0) == pytest.approx(0.0, abs=1e-14)
    ad, a2d2 = laplace_derivatives(0.5, 0, 0.0)
    assert ad == 0.0 and a2d2 == 0.0


def test_quadrature_matches_series():
    for s in (0.5, 1.5):
        for j in range(5):
            for alpha in np.linspace(0.1, 0.8, 8):
                q = laplace_coefficient(s, j, alpha, method="quadrature")
                h = laplace_coefficient(s, j, alpha, method="series")
                assert abs(q - h) <= 1e-9 * max(1.0, abs(h))


def test_derivatives_match_finite_differences():
    da = 1e-5
    for s in (0.5, 1.5):
        for j in range(4):
            for alpha in (0.2, 0.4883, 0.7):
                b1 = laplace_derivative(s, j, alpha, order=1)
                fd1 = (
                    laplace_coefficient(s, j, alpha + da)
                    - laplace_coefficient(s, j, alpha - da)
                ) / (2 * da)
                assert b1 == pytest.approx(fd1, rel=1e-7, abs=1e-7)
                b2 = laplace_derivative(s, j, alpha, order=2)
                fd2 = (
                    laplace_derivative(s, j, alpha + da, 1)
                    - laplace_derivative(s, j, alpha - da, 1)
                ) / (2 * da)
                assert b2 == pytest.approx(fd2, rel=1e-6, abs=1e-6)


def test_operator_forms():
    alpha = 0.4883
    ad, a2d2 = laplace_derivatives(1.5, 2, alpha)
    assert ad == pytest.approx(alpha * laplace_derivative(1.5, 2, alpha, 1), rel=1e-13)
    assert a2d2 == pytest.approx(
        alpha**2 * laplace_derivative(1.5, 2, alpha, 2), rel=1e-13
    )


def test_rejects_alpha_out_of_range():
    with pytest.raises(ValueError):
        laplace_coefficient(0.5, 1, 1.0)
    with pytest.raises(ValueError):
        laplace_coefficient(0.5, 1, -0.1)


def test_table_taylor_accuracy():
    # truncation grows with the derivative order (fewer Taylor terms left)
    alpha0 = 0.4807
    rel_tol = {0: 1e-12, 1: 1e-11, 2: 1e-9, 3: 1e-6}
    table = LaplaceTable.build(alpha0)
    for alpha in (alpha0 - 9e-5, alpha0, alpha0 + 9e-5):
        for pair in range(len(TABLE_PAIRS)):
            s, j = TABLE_PAIRS[pair]
            for order in (0, 1, 2, 3):
                exact = laplace_derivative(s, j, alpha, order)
                got = table.evaluate(pair, alpha, order)
                assert got == pytest.approx(exact, rel=rel_tol[order])


def test_table_staleness_guard():
    table = LaplaceTable.build(0.48)
    assert table.fresh_for(0.48 + 0.48 * 1e-5)
    assert not table.fresh_for(0.49)
    with pytest.raises(ValueError):
        table.evaluate(0, 0.49)
    table.refresh(0.49)
    assert table.fresh_for(0.49)


def test_build_table_values_consistency():
    vals = build_table_values(0.45)
    for pair, (s, j) in enumerate(TABLE_PAIRS):
        for order in range(5):
            assert vals[pair, order] == pytest.approx(
                laplace_derivative(s, j, 0.45, order), rel=1e-12, abs=1e-12
            )


def test_coefficients_positive_for_valid_alpha():
    for alpha in np.linspace(0.05, 0.9, 10):
        for s in (0.5, 1.5):
            assert laplace_coefficient(s, 0, alpha) > 0.0
            assert laplace_coefficient(s, 1, alpha) > 0.0

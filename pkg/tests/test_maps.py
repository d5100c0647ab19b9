import cmath
import math

import numpy as np
import pytest

from siegellab.cfrac import RotationNumber
from siegellab.errors import DomainError, PoleError
from siegellab.maps import (
    INF,
    MoebiusMap,
    conjugate_by,
    fixed_point_formula,
    is_inf,
    make_map,
    multiplier,
    normalizing_moebius,
    parameter_involution,
    tilde_parameter,
)


def random_parameters(rng, n, lo=0.05, hi=4.0):
    """Valid critical parameters staying clear of {0, 1, -1}."""
    out = []
    while len(out) < n:
        c = complex(rng.uniform(-hi, hi), rng.uniform(-hi, hi))
        if min(abs(c), abs(c - 1), abs(c + 1)) > lo:
            out.append(c)
    return out


def test_coefficients_for_c_2(golden):
    g = make_map(2.0 + 0j, golden)
    lam = multiplier(golden)
    assert abs(g.a - (-3.0 * lam / 4.0)) < 1e-15
    assert abs(g.b - (-2.0 / 3.0)) < 1e-15


def test_polynomial_limit_coefficients(golden):
    g = make_map(INF, golden)
    lam = multiplier(golden)
    assert g.b == 0
    assert abs(g.a + lam / 2.0) < 1e-15
    # g(z) = lam z - lam z^2 / 2
    for z in (0.3 + 0.1j, 1.0 + 0j, -2.0 + 0.5j):
        assert abs(g(z) - (lam * z - lam * z * z / 2.0)) < 1e-14


@pytest.mark.parametrize("bad", [1.0 + 0j, -1.0 + 0j, 0.0 + 0j, 1.0 + 1e-12j])
def test_degenerate_parameters_rejected(golden, bad):
    with pytest.raises(DomainError):
        make_map(bad, golden)


def test_normalization_identities_hold(golden):
    rng = np.random.default_rng(7)
    lam = multiplier(golden)
    for c in random_parameters(rng, 50):
        g = make_map(c, golden)
        assert abs(g.a * (g.b + 2.0) + lam) < 1e-12  # the g'(1) = 0 condition
        assert g(0.0) == 0.0
        assert is_inf(g(INF))
        assert abs(g.derivative(0.0) - lam) < 1e-12
        assert abs(g.derivative(1.0)) < 1e-12
        assert abs(g.derivative(c)) < 1e-12


def test_pole_maps_to_infinity(golden):
    g = make_map(2.0 + 0j, golden)
    pole = g.pole()
    assert is_inf(g(pole))
    with pytest.raises(PoleError):
        g.derivative(pole)


def test_eval_matches_independent_horner(golden):
    rng = np.random.default_rng(11)
    for c in random_parameters(rng, 1000):
        g = make_map(c, golden)
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        num = np.polyval([g.a, g.lam, 0.0], z)
        den = np.polyval([g.b, 1.0], z)
        if abs(den) < 1e-12:
            continue
        expect = num / den
        got = g(z)
        assert not is_inf(got)
        assert abs(got - expect) <= 1e-12 * max(1.0, abs(expect))


def test_derivative_matches_finite_differences(golden):
    rng = np.random.default_rng(13)
    h = 1e-6
    for c in random_parameters(rng, 100):
        g = make_map(c, golden)
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(g.b * z + 1.0) < 0.05:  # stay away from the pole
            continue
        fd = (g(z + h) - g(z - h)) / (2.0 * h)
        d = g.derivative(z)
        assert abs(fd - d) <= 1e-5 * max(1.0, abs(d))


def test_critical_points_are_quadratic_roots(golden):
    rng = np.random.default_rng(17)
    lam = multiplier(golden)
    for c in random_parameters(rng, 100):
        g = make_map(c, golden)
        for w in (1.0 + 0j, c):
            assert abs(g.a * g.b * w * w + 2.0 * g.a * w + lam) < 1e-12


def test_fixed_points_fix(golden):
    rng = np.random.default_rng(19)
    for c in random_parameters(rng, 50):
        g = make_map(c, golden)
        zero, infty, p = g.fixed_points()
        assert zero == 0 and is_inf(infty)
        assert abs(g(p) - p) < 1e-10
        assert abs(p - fixed_point_formula(c, golden)) < 1e-9 * max(1.0, abs(p))


def test_fixed_point_against_direct_quadratic_solve(golden):
    g = make_map(2.0 + 0j, golden)
    # solve (a-b) z^2 + (lam-1) z = 0 directly
    roots = np.roots([g.a - g.b, g.lam - 1.0, 0.0])
    nonzero = [r for r in roots if abs(r) > 1e-8]
    assert len(nonzero) == 1
    assert abs(g.fixed_points()[2] - nonzero[0]) < 1e-10


def test_fixed_point_degenerates_toward_minus_one(golden):
    p = make_map(-1.0 + 1e-3, golden).fixed_points()[2]
    assert abs(p) < 0.05


def test_coincident_fixed_points_flagged(golden):
    # parameters where the finite fixed point merges with infinity (a = b)
    lam = multiplier(golden)
    c = ((2.0 - lam) + 2.0 * cmath.sqrt(1.0 - lam)) / lam
    g = make_map(c, golden)
    with pytest.raises(DomainError, match="coincident"):
        g.fixed_points()


def test_orbit_basics(golden):
    g = make_map(2.0 + 0j, golden)
    orb = g.orbit(0.0, 5)
    assert len(orb.points) == 6
    assert all(z == 0 for z in orb.points)
    assert not orb.hit_infinity

    orb_inf = g.orbit(INF, 5)
    assert orb_inf.hit_infinity
    assert all(is_inf(z) for z in orb_inf.points)


def test_orbit_of_polynomial_limit_matches_symbolic_evaluation(golden):
    lam = multiplier(golden)
    g = make_map(INF, golden)
    orb = g.orbit(1.0, 3)
    z1 = lam - lam / 2.0
    z2 = lam * z1 - lam * z1 * z1 / 2.0
    z3 = lam * z2 - lam * z2 * z2 / 2.0
    for got, want in zip(orb.points, [1.0 + 0j, z1, z2, z3]):
        assert abs(got - want) < 1e-14


def test_orbit_csv_marks_infinity(tmp_path, golden):
    g = make_map(2.0 + 0j, golden)
    orb = g.orbit(g.pole(), 3)
    path = tmp_path / "orbit.csv"
    orb.write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "index,re,im"
    assert lines[2].split(",")[1:] == ["inf", "inf"]


# --- Moebius machinery ----------------------------------------------------


def test_moebius_matrix_algebra():
    m = MoebiusMap(2.0, 1.0 + 1j, 0.5j, 1.0)
    minv = m.inverse()
    for z in (0.2 + 0.1j, -1.5 + 2j, 3.0 + 0j):
        assert abs((m @ minv)(z) - z) < 1e-12
        assert abs(minv(m(z)) - z) < 1e-12
    assert is_inf(m(INF)) is False  # c != 0 sends infinity to a/c
    assert abs(m(INF) - 2.0 / 0.5j) < 1e-14


def test_moebius_three_point_normalization():
    m = MoebiusMap.to_zero_one_inf(0.3 + 0.1j, 2.0 - 1j, -0.7 + 0.4j)
    assert abs(m(0.3 + 0.1j)) < 1e-12
    assert abs(m(2.0 - 1j) - 1.0) < 1e-12
    assert is_inf(m(-0.7 + 0.4j))


def test_conjugation_by_identity_returns_same_map(golden):
    g = make_map(2.0 + 0j, golden)
    h = conjugate_by(g, normalizing_moebius(g, 1))
    assert h.c == g.c


def test_tilde_formula_matches_direct_conjugation(golden):
    rng = np.random.default_rng(23)
    for c in random_parameters(rng, 30):
        g = make_map(c, golden)
        try:
            m = normalizing_moebius(g, 2)
        except DomainError:
            continue
        h = conjugate_by(g, m)
        assert abs(h.c - tilde_parameter(c, golden)) < 1e-8 * max(1.0, abs(h.c))


def test_case3_divides_out_the_critical_point(golden):
    c = 2.5 + 1.2j
    g = make_map(c, golden)
    h = conjugate_by(g, normalizing_moebius(g, 3))
    assert abs(h.c - 1.0 / c) < 1e-12


def test_case4_is_the_involution_partner(golden):
    c = 2.5 - 0.8j
    g = make_map(c, golden)
    h = conjugate_by(g, normalizing_moebius(g, 4))
    assert abs(h.c - parameter_involution(c, golden)) < 1e-9


def test_involution_squares_to_identity(golden):
    rng = np.random.default_rng(29)
    for c in random_parameters(rng, 100):
        back = parameter_involution(parameter_involution(c, golden), golden)
        assert abs(back - c) <= 1e-10 * max(1.0, abs(c))


def test_non_normalizing_moebius_rejected(golden):
    g = make_map(2.0 + 0j, golden)
    shift = MoebiusMap(1.0, 0.7, 0.0, 1.0)  # does not fix 0
    with pytest.raises(DomainError):
        conjugate_by(g, shift)

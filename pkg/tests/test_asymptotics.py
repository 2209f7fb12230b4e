import math
import random
from fractions import Fraction

import pytest

from spectralab import asymptotics, catalog
from spectralab.asymptotics import (
    heat_trace,
    polygon_corner_limit,
    psi,
    refined_constants,
    smooth_heat_trace,
    surface_constants,
)
from spectralab.exact import ExactConst


def rat(q):
    return ExactConst.rational(q)


def pi_times(q):
    return ExactConst.term(Fraction(q), pi_pow=1)


def over_pi(q, s=1):
    return ExactConst.term(Fraction(q), root=s, pi_pow=-1)


PSI_FIXTURES = [
    (Fraction(1), Fraction(0)),
    (Fraction(1, 2), Fraction(1, 16)),
    (Fraction(1, 4), Fraction(5, 32)),
    (Fraction(1, 3), Fraction(1, 9)),
    (Fraction(1, 6), Fraction(35, 144)),
]


@pytest.mark.parametrize("mult,value", PSI_FIXTURES)
def test_psi_exact_fixtures(mult, value):
    got = psi(pi_times(mult))
    assert isinstance(got, Fraction)
    assert got == value


def test_psi_float_agrees_with_exact():
    rng = random.Random(7)
    for _ in range(200):
        r = Fraction(rng.randint(1, 399), 200)
        exact = psi(pi_times(r))
        approx = psi(float(r) * math.pi)
        assert abs(approx - float(exact)) < 1e-12


def test_psi_domain_errors():
    for bad in (0.0, -1.0, 2 * math.pi, 7.0):
        with pytest.raises(ValueError):
            psi(bad)
    with pytest.raises(ValueError):
        psi(pi_times(2))
    with pytest.raises(ValueError):
        psi(rat(1))  # exact angles must be multiples of pi


def test_psi_strictly_decreasing_and_signs():
    rng = random.Random(21)
    for _ in range(300):
        lo = rng.uniform(1e-4, math.pi)
        hi = rng.uniform(lo + 1e-6, math.pi)
        assert psi(lo) > psi(hi)
    assert psi(math.pi) == 0.0
    for _ in range(100):
        theta = rng.uniform(math.pi + 1e-6, 2 * math.pi - 1e-6)
        assert psi(theta) < 0
    # a mixed right angle loses exactly what a like right angle gains
    assert psi(pi_times(1)) - psi(pi_times(Fraction(1, 2))) == Fraction(-1, 16)


def test_polygon_corner_limit_small_cases():
    assert polygon_corner_limit(3) == Fraction(1, 3)
    assert polygon_corner_limit(4) == Fraction(1, 4)
    assert polygon_corner_limit(6) == Fraction(5, 24)
    with pytest.raises(ValueError):
        polygon_corner_limit(2)
    with pytest.raises(TypeError):
        polygon_corner_limit(4.0)


def test_polygon_corner_limit_converges_like_one_over_n():
    sixth = Fraction(1, 6)
    rng = random.Random(3)
    ns = [10, 11, 17, 100, 1000, 10000] + [rng.randint(10, 10000) for _ in range(40)]
    for n in ns:
        gap = abs(polygon_corner_limit(n) - sixth) * n
        assert gap <= 2
    # and the limit really is approached from above, monotonically
    assert polygon_corner_limit(10) > polygon_corner_limit(11) > sixth


def test_every_roster_surface_passes_the_stored_row_check():
    for spec in catalog.verification_roster():
        rc = surface_constants(spec)
        assert rc.C == rc.C1 + rc.C2 + rc.C3
        assert rc.sqrt_shift == catalog.is_spherical(spec)


def test_constants_spot_values():
    rc = surface_constants(catalog.sphere())
    assert rc.A == rat(1)
    assert rc.B == rat(0)
    assert rc.C == rat(Fraction(1, 3))
    assert rc.C3 == rat(Fraction(1, 3))
    assert rc.sqrt_shift

    rc = surface_constants(catalog.triangle_306090("ND"))
    assert rc.C == rat(Fraction(-1, 12))
    assert rc.B == over_pi(Fraction(3, 8)) - over_pi(Fraction(1, 8), 3)

    rc = surface_constants(catalog.glued_lune(2))
    assert rc.A == rat(Fraction(1, 2))
    assert rc.B == rat(0)
    assert rc.C == rat(Fraction(5, 12))

    rc = surface_constants(catalog.rectangle(1, 2, "ND"))
    assert rc.A == over_pi(Fraction(1, 2))
    assert rc.B == over_pi(Fraction(-1, 2))
    assert rc.C == rat(Fraction(-1, 4))

    rc = surface_constants(catalog.half_lune(3, "N", "D"))
    assert rc.B == rat(Fraction(1, 4) - Fraction(1, 12))
    assert rc.C == rat(Fraction(1, 24) * (3 - Fraction(1, 3)) + Fraction(1, 36)
                       - Fraction(1, 8))


def test_sector_rows_sum_to_their_base():
    for base in catalog.SECTOR_BASES:
        whole = surface_constants(catalog.base_spec(base))
        total_A = rat(0)
        total_B = rat(0)
        total_C = rat(0)
        for irrep in catalog.sector_irreps(base):
            part = surface_constants(catalog.symmetry_sector(base, irrep))
            total_A = total_A + part.A
            total_B = total_B + part.B
            total_C = total_C + part.C
        assert total_A == whole.A
        assert total_B == whole.B
        assert total_C == whole.C


def test_weyl_term_matches_geometry_for_every_surface():
    for spec in catalog.verification_roster():
        if spec.family is catalog.Family.SYMMETRY_SECTOR and spec.irrep == "2":
            continue
        geom = catalog.geometry(spec)
        rc = surface_constants(spec)
        assert rc.A * 4 * ExactConst.term(1, pi_pow=1) == geom.area
        assert rc.B * 4 * ExactConst.term(1, pi_pow=1) == geom.len_N - geom.len_D


def test_stored_row_mismatch_is_a_hard_error(monkeypatch):
    key = ("hex_torus", "+")
    a, b, c = asymptotics._SECTOR_ROWS[key]
    monkeypatch.setitem(asymptotics._SECTOR_ROWS, key, (a, b, c + 1))
    with pytest.raises(ArithmeticError):
        surface_constants(catalog.symmetry_sector("hex_torus", "+"))


def test_smooth_count_tracks_the_count():
    # not a tight bound, just that the estimate has the right slope
    for spec in (catalog.rectangle(1, 1, "N"), catalog.sphere(),
                 catalog.lune(3, "D")):
        rc = surface_constants(spec)
        from spectralab import spectrum
        for t in (500.0, 2000.0, 9000.0):
            n = spectrum.count(spec, t)
            assert abs(n - rc.smooth_count(t)) < 4.0 * t ** 0.5


def test_heat_trace_sphere_value():
    manual = sum((2 * k + 1) * math.exp(-k * (k + 1)) for k in range(12))
    got = heat_trace(catalog.sphere(), 1.0, 300.0)
    assert got == pytest.approx(manual, abs=1e-12)
    assert got == pytest.approx(1.4184426, abs=1e-6)


def test_heat_trace_zero_mode_limit():
    assert heat_trace(catalog.sphere(), 50.0, 300.0) == pytest.approx(1.0, abs=1e-15)
    assert heat_trace(catalog.rectangle(1, 1, "N"), 40.0, 600.0) == pytest.approx(1.0, abs=1e-15)
    assert heat_trace(catalog.rectangle(1, 1, "D"), 40.0, 600.0) < 1e-100
    # periodic-antiperiodic mix has no constant mode either
    assert heat_trace(catalog.rectangle(1, 1, "MM"), 40.0, 600.0) < 1e-40


def test_heat_trace_rejects_small_cutoff():
    with pytest.raises(ArithmeticError):
        heat_trace(catalog.sphere(), 0.001, 10.0)
    with pytest.raises(ValueError):
        heat_trace(catalog.sphere(), -1.0, 100.0)
    with pytest.raises(ValueError):
        heat_trace(catalog.sphere(), 1.0, 0.0)


def test_heat_trace_difference_shrinks_toward_zero():
    for spec in (catalog.rectangle(1, 1, "N"), catalog.sphere(),
                 catalog.symmetry_sector("square_n", "2")):
        diffs = []
        for t in (0.1, 0.05, 0.02, 0.01):
            h = heat_trace(spec, t, 6000.0)
            diffs.append(abs(h - smooth_heat_trace(spec, t)))
        # the square's true gap is ~e^{-1/t}, below float resolution for
        # small t, so allow a cancellation floor
        for prev, nxt in zip(diffs, diffs[1:]):
            assert nxt <= max(prev, 1e-12)


def test_heat_trace_difference_decreases_in_high_precision():
    # binary64 cannot see the square's ~1e-22 gap at t=0.02, so redo the
    # comparison with mpmath on both sides
    mpmath = pytest.importorskip("mpmath")
    mp = mpmath.mp
    old = mp.dps
    mp.dps = 60
    try:
        from spectralab import spectrum
        for spec in (catalog.rectangle(1, 1, "N"), catalog.sphere()):
            rc = surface_constants(spec)
            vals, mults = spectrum.level_arrays(spec, 40000.0)
            # float64 levels carry ~1e-16 relative error, enough to bury the
            # square's ~1e-21 gap; rebuild them exactly from the integer grid
            if catalog.is_spherical(spec):
                lam = [mpmath.mpf(v) for v in vals.tolist()]
            else:
                unit = spectrum._unit_of(spec)
                pisq = mpmath.pi ** 2
                lam = []
                for v in vals.tolist():
                    q = int(round(v / math.pi ** 2 / float(unit)))
                    lam.append(pisq * q * unit.numerator / unit.denominator)
            gaps = []
            for t in (mpmath.mpf("0.1"), mpmath.mpf("0.05"),
                      mpmath.mpf("0.02"), mpmath.mpf("0.01")):
                h = mpmath.fsum(int(m) * mpmath.exp(-t * v)
                                for v, m in zip(lam, mults.tolist()))
                ht = (_exact_mp(mpmath, rc.A) / t
                      + mpmath.sqrt(mpmath.pi) / 2 * _exact_mp(mpmath, rc.B)
                      / mpmath.sqrt(t) + _exact_mp(mpmath, rc.C))
                gaps.append(abs(h - ht))
            assert gaps[0] > gaps[1] > gaps[2] > gaps[3]
    finally:
        mp.dps = old


def _exact_mp(mpmath, x):
    """ExactConst -> mpf at working precision."""
    total = mpmath.mpf(0)
    for (root, power), coeff in x._terms.items():
        piece = mpmath.mpf(coeff.numerator) / coeff.denominator
        piece *= mpmath.sqrt(root)
        piece *= mpmath.pi ** power
        total += piece
    return total


def test_refined_constants_works_on_raw_geometry():
    geom = catalog.geometry(catalog.equilateral_triangle("D"))
    rc = refined_constants(geom)
    assert rc.C1 == rat(Fraction(1, 3))
    assert rc.C2 == rat(0)
    assert rc.C3 == rat(0)
    assert not rc.sqrt_shift

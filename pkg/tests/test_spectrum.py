import math
import random
from fractions import Fraction

import numpy as np
import pytest

from spectralab import catalog
from spectralab.exact import PI_LO
from spectralab.spectrum import (
    CountReport,
    EigenLevel,
    ExactTime,
    closed_form_identity,
    count,
    level_arrays,
    levels,
    symmetry_counts,
)

F = Fraction


def ET(rho):
    return ExactTime(F(rho))


# Hand-checked first levels.  Each row is (spec, cutoff in units of pi^2,
# cumulative count).  The counts were worked out directly from the mode
# descriptions, not from the formulas under test.
FLAT_FIXTURES = [
    (catalog.flat_torus_rect(1, 1), 2, 9),
    (catalog.rectangle(1, 1, "N"), 1, 3),
    (catalog.rectangle(1, 1, "N"), 2, 4),
    (catalog.rectangle(1, 1, "D"), 2, 1),
    (catalog.rectangle(1, 1, "D"), 5, 3),
    (catalog.rectangle(1, 2, "ND"), 1, 1),
    (catalog.rectangle(1, 1, "NM"), F(1, 4), 1),
    (catalog.rectangle(1, 1, "DM"), F(5, 4), 1),
    (catalog.rectangle(1, 1, "MM"), F(1, 2), 1),
    (catalog.right_iso_triangle(1, "N"), 1, 2),
    (catalog.right_iso_triangle(1, "D"), 5, 1),
    (catalog.right_iso_triangle(1, "ND"), 1, 1),
    (catalog.right_iso_triangle(1, "DN"), 2, 1),
    (catalog.right_iso_triangle(1, "MN"), F(1, 2), 1),
    (catalog.right_iso_triangle(1, "MD"), F(5, 2), 1),
    (catalog.equilateral_triangle("N"), F(16, 9), 3),
    (catalog.equilateral_triangle("D"), F(16, 3), 1),
    (catalog.triangle_306090("N"), F(16, 9), 2),
    (catalog.triangle_306090("ND"), F(16, 9), 1),
    (catalog.cylinder(1, 1, "N"), 1, 2),
    (catalog.cylinder(1, 1, "N"), 4, 5),
    (catalog.cylinder(1, 1, "M"), F(1, 4), 1),
    (catalog.mobius_band(1, 1, "N"), 2, 3),
    (catalog.mobius_band(1, 1, "D"), 1, 1),
    (catalog.flat_projective_plane(), 2, 2),
    (catalog.flat_projective_plane(), 4, 4),
    (catalog.tetrahedron_surface(), F(4, 3), 4),
    (catalog.half_tetrahedron("N"), F(4, 3), 3),
    (catalog.half_tetrahedron("D"), F(4, 3), 1),
]


@pytest.mark.parametrize("spec,rho,want", FLAT_FIXTURES)
def test_flat_fixture(spec, rho, want):
    rep = closed_form_identity(spec, ET(rho))
    assert rep.count == want
    assert rep.closed_form == want


def test_count_steps_at_levels():
    spec = catalog.rectangle(1, 1, "N")
    assert count(spec, ET(F(999, 1000))) == 1
    assert count(spec, ET(1)) == 3
    assert count(spec, ET(F(1001, 1000))) == 3
    # plain rational and float cutoffs agree away from levels
    assert count(spec, 12.0) == count(spec, F(12))


def test_fpp_has_no_level_at_one():
    # the antipodal average kills the whole first torus shell
    lv = levels(catalog.flat_projective_plane(), ET(3))
    assert [(l.key, l.multiplicity) for l in lv] == [(F(0), 1), (F(2), 1)]


def test_ambiguous_cutoff_raises():
    # a rational cutoff within the pi enclosure width of an eigenvalue
    t = PI_LO * PI_LO  # within 1e-96 of the rectangle eigenvalue pi^2
    with pytest.raises(ArithmeticError):
        count(catalog.rectangle(1, 1, "N"), t)


def test_negative_cutoff_rejected():
    with pytest.raises(ValueError):
        count(catalog.sphere(), -1)
    with pytest.raises(ValueError):
        ExactTime(F(-1))


def test_closed_form_matches_count_random_jumps():
    rng = random.Random(7)
    sample = [
        catalog.rectangle(1, 2, "ND"),
        catalog.rectangle(F(3, 2), 1, "MM"),
        catalog.right_iso_triangle(F(1, 2), "MD"),
        catalog.triangle_306090("DN"),
        catalog.cylinder(F(3, 2), 1, "M"),
        catalog.mobius_band(1, F(1, 2), "D"),
        catalog.half_tetrahedron("N"),
    ]
    for spec in sample:
        lv = levels(spec, ET(600))
        for _ in range(40):
            pick = rng.randrange(len(lv))
            rho = F(lv[pick].key)
            rep = closed_form_identity(spec, ET(rho))
            assert rep.count == rep.closed_form
            if pick + 1 < len(lv):
                mid = (rho + F(lv[pick + 1].key)) / 2
                rep = closed_form_identity(spec, ET(mid))
                assert rep.count == rep.closed_form


def test_levels_sorted_and_positive():
    for spec in (catalog.equilateral_triangle("D"), catalog.lune(3, "N")):
        lv = levels(spec, 500)
        assert all(l.multiplicity > 0 for l in lv)
        vals = [l.value for l in lv]
        assert vals == sorted(vals)


def test_level_arrays_agree_with_levels():
    for spec in (catalog.flat_torus_hex(), catalog.hemisphere("D")):
        lv = levels(spec, 300)
        vals, ms = level_arrays(spec, 300)
        assert len(vals) == len(lv)
        assert np.all(ms == np.array([l.multiplicity for l in lv]))
        assert np.allclose(vals, [l.value for l in lv], rtol=1e-12)


# --- spherical families ---------------------------------------------------


def test_sphere_counts():
    sph = catalog.sphere()
    assert count(sph, 0) == 1
    assert count(sph, F(3, 2)) == 1
    assert count(sph, 2) == 4
    assert count(sph, 6) == 9
    # squares of the window index at the bottom of each window
    for k in range(1, 30):
        assert count(sph, k * k - k) == k * k


def test_hemisphere_split_reassembles_sphere():
    for t in (0, 2, 5, 17, F(1234, 7), 9000):
        assert (
            count(catalog.hemisphere("N"), t) + count(catalog.hemisphere("D"), t)
            == count(catalog.sphere(), t)
        )


def test_projective_sphere_is_even_degree_part():
    ps = catalog.projective_sphere()
    assert count(ps, 2) == 1
    assert count(ps, 6) == 6
    lv = levels(ps, 50)
    assert [(l.key, l.multiplicity) for l in lv] == [(0, 1), (2, 5), (4, 9), (6, 13)]


def test_lune_one_is_hemisphere():
    for bc in "ND":
        for t in (0, 2, 30, F(2000, 3)):
            assert count(catalog.lune(1, bc), t) == count(catalog.hemisphere(bc), t)


def test_glued_lune_one_is_sphere():
    for t in (0, 2, 30, 420):
        assert count(catalog.glued_lune(1), t) == count(catalog.sphere(), t)


def test_lune_window_counts():
    # worked small cases: angle pi/2 lune, azimuthal orders multiples of 2
    assert count(catalog.lune(2, "N"), 2) == 2
    assert count(catalog.lune(2, "D"), 2) == 0
    assert count(catalog.lune(2, "D"), 6) == 1
    assert count(catalog.glued_lune(2), 2) == 2


HALF_LUNE_FIXTURES = [
    # m, side, equator, window k, count of degrees below the window
    (4, "N", "N", 5, 4),
    (4, "N", "D", 5, 2),
    (4, "D", "N", 5, 1),
    (4, "D", "D", 5, 0),
    (1, "N", "D", 2, 1),
    (3, "N", "D", 4, 2),
    (3, "D", "N", 4, 1),
    (3, "D", "D", 4, 0),
]


@pytest.mark.parametrize("m,side,eq,k,want", HALF_LUNE_FIXTURES)
def test_half_lune_fixture(m, side, eq, k, want):
    rep = closed_form_identity(catalog.half_lune(m, side, eq), k * k - k)
    assert rep.count == want
    assert rep.closed_form == want


def test_half_lune_pieces_reassemble_lune():
    # Neumann and Dirichlet equator halves partition each lune's spectrum
    rng = random.Random(11)
    for m in (1, 2, 3, 4, 5):
        for side in "ND":
            for _ in range(25):
                k = rng.randrange(1, 60)
                t = k * k - k + rng.randrange(0, 2 * k) if k > 1 else 0
                whole = count(catalog.lune(m, side), t)
                top = count(catalog.half_lune(m, side, "N"), t)
                bot = count(catalog.half_lune(m, side, "D"), t)
                assert top + bot == whole


def test_spherical_closed_forms_integer_everywhere():
    rng = random.Random(13)
    specs = [catalog.half_lune(m, s, e) for m in (1, 2, 3, 4, 6, 7)
             for s in "ND" for e in "ND"]
    specs += [catalog.lune(m, bc) for m in (1, 2, 3, 4) for bc in "ND"]
    specs += [catalog.glued_lune(m) for m in (1, 2, 5)]
    for spec in specs:
        for _ in range(30):
            t = F(rng.randrange(0, 4 * 10**6), rng.randrange(1, 100))
            rep = closed_form_identity(spec, t)
            assert rep.count == rep.closed_form


# --- symmetry sectors -----------------------------------------------------


def test_sector_counts_partition_base():
    rng = random.Random(5)
    for base in catalog.SECTOR_BASES:
        base_spec = catalog.base_spec(base)
        dims = catalog.sector_dims(base)
        for _ in range(12):
            t = ET(F(rng.randrange(1, 3000), rng.randrange(1, 8)))
            parts = symmetry_counts(base, t)
            total = sum(parts.values())
            assert total == count(base_spec, t), base


def test_sector_fixture_square_base():
    # unit Neumann square, first shell: constant in ++, the pair in the 2-dim
    got = symmetry_counts("square_n", ET(1))
    assert got == {"++": 1, "+-": 0, "-+": 0, "--": 0, "2": 2}


def test_sector_fixture_square_torus():
    # first shell (\pm 1, 0), (0, \pm 1): one axis-even diag-even combo, one
    # axis-even diag-odd combo, and a two-dim pair
    got = symmetry_counts("square_torus", ET(4))
    assert got == {"++": 2, "+-": 0, "-+": 1, "--": 0, "2": 2}
    rep = closed_form_identity(catalog.symmetry_sector("square_torus", "+-"), ET(8))
    assert rep.count == rep.closed_form == 1


def test_sector_fixture_equilateral():
    got = symmetry_counts("equilateral_n", ET(F(16, 9)))
    assert got == {"+": 1, "-": 0, "2": 2}
    got = symmetry_counts("hex_torus", ET(F(16, 9)))
    assert got == {"+": 3, "-": 0, "2": 4}


def test_sector_closed_forms_match_counts():
    rng = random.Random(23)
    for base in catalog.SECTOR_BASES:
        for ir in catalog.sector_irreps(base):
            spec = catalog.symmetry_sector(base, ir)
            lv = levels(spec, ET(500))
            for _ in range(20):
                rho = F(lv[rng.randrange(len(lv))].key)
                rep = closed_form_identity(spec, ET(rho))
                assert rep.count == rep.closed_form, (base, ir, rho)


def test_report_types():
    rep = closed_form_identity(catalog.sphere(), 10)
    assert isinstance(rep, CountReport)
    assert rep.t == 10.0
    lv = levels(catalog.sphere(), 10)
    assert isinstance(lv[0], EigenLevel)

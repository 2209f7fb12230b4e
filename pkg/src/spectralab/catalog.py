"""Surface catalog.

SurfaceSpec names one of the model surfaces: flat tori, flat polygons,
cylinders and bands, round-sphere quotients, lunes, polyhedral surfaces, and
symmetry sectors of the square/hexagonal families.  geometry() returns the
exact data behind the two-term counting asymptotics (area, boundary length
split by condition, corners, cone points, curvature integrals), and
geodesic_lengths() lists closed-orbit lengths used to label oscillation
frequencies.

All geometric quantities are ExactConst values (rational combinations of
sqrt(s) and powers of pi), never floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import ExactConst


class Family(enum.Enum):
    """Surface families with explicitly computable spectra."""

    FLAT_TORUS_RECT = "flat_torus_rect"
    FLAT_TORUS_HEX = "flat_torus_hex"
    RECTANGLE = "rectangle"
    RIGHT_ISO_TRIANGLE = "right_iso_triangle"
    EQUILATERAL_TRIANGLE = "equilateral_triangle"
    TRIANGLE_306090 = "triangle_306090"
    CYLINDER = "cylinder"
    MOBIUS_BAND = "mobius_band"
    SPHERE = "sphere"
    HEMISPHERE = "hemisphere"
    PROJECTIVE_SPHERE = "projective_sphere"
    LUNE = "lune"
    HALF_LUNE = "half_lune"
    GLUED_LUNE = "glued_lune"
    FLAT_PROJECTIVE_PLANE = "flat_projective_plane"
    TETRAHEDRON_SURFACE = "tetrahedron_surface"
    HALF_TETRAHEDRON = "half_tetrahedron"
    SYMMETRY_SECTOR = "symmetry_sector"


class CornerKind(enum.Enum):
    """LIKE: both edges at the corner carry the same boundary condition."""

    LIKE = "like"
    MIXED = "mixed"


@dataclass(frozen=True)
class CornerSpec:
    angle: ExactConst
    kind: CornerKind


@dataclass(frozen=True)
class ConePoint:
    angle: ExactConst


@dataclass(frozen=True)
class GeometryData:
    """Exact geometric inputs to the refined counting constants.

    len_N / len_D are the total boundary lengths carrying Neumann resp.
    Dirichlet conditions.  K2_total is the integral of the Gauss curvature
    over the surface; K1_boundary_integral the integral of the geodesic
    curvature along the boundary (zero for every cataloged surface, since
    all boundaries here are geodesic).
    """

    area: ExactConst
    len_N: ExactConst
    len_D: ExactConst
    corners: tuple[CornerSpec, ...]
    cone_points: tuple[ConePoint, ...]
    K2_total: ExactConst
    K1_boundary_integral: ExactConst


@dataclass(frozen=True)
class SurfaceSpec:
    """A surface choice: family tag plus the parameters that family uses.

    Unused parameters keep their defaults and are ignored; build specs with
    the factory functions below, which validate.
    """

    family: Family
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)
    bc: str = ""
    m: int = 1
    bc_side: str = ""
    bc_equator: str = ""
    base: str = ""
    irrep: str = ""

    def label(self) -> str:
        """Canonical text form, e.g. 'rectangle:a=1,b=2,bc=ND'."""
        parts = []
        for name in _FIELDS[self.family]:
            parts.append(f"{name}={_fmt_value(getattr(self, name))}")
        if parts:
            return self.family.value + ":" + ",".join(parts)
        return self.family.value


# Parameters that are meaningful for each family, in canonical label order.
_FIELDS: dict[Family, tuple[str, ...]] = {
    Family.FLAT_TORUS_RECT: ("a", "b"),
    Family.FLAT_TORUS_HEX: (),
    Family.RECTANGLE: ("a", "b", "bc"),
    Family.RIGHT_ISO_TRIANGLE: ("a", "bc"),
    Family.EQUILATERAL_TRIANGLE: ("bc",),
    Family.TRIANGLE_306090: ("bc",),
    Family.CYLINDER: ("a", "b", "bc"),
    Family.MOBIUS_BAND: ("a", "b", "bc"),
    Family.SPHERE: (),
    Family.HEMISPHERE: ("bc",),
    Family.PROJECTIVE_SPHERE: (),
    Family.LUNE: ("m", "bc"),
    Family.HALF_LUNE: ("m", "bc_side", "bc_equator"),
    Family.GLUED_LUNE: ("m",),
    Family.FLAT_PROJECTIVE_PLANE: (),
    Family.TETRAHEDRON_SURFACE: (),
    Family.HALF_TETRAHEDRON: ("bc",),
    Family.SYMMETRY_SECTOR: ("base", "irrep"),
}

BC_CHOICES: dict[Family, tuple[str, ...]] = {
    Family.RECTANGLE: ("N", "D", "ND", "NM", "DM", "MM"),
    Family.RIGHT_ISO_TRIANGLE: ("N", "D", "ND", "DN", "MN", "MD"),
    Family.EQUILATERAL_TRIANGLE: ("N", "D"),
    Family.TRIANGLE_306090: ("N", "D", "ND", "DN"),
    Family.CYLINDER: ("N", "D", "M"),
    Family.MOBIUS_BAND: ("N", "D"),
    Family.HEMISPHERE: ("N", "D"),
    Family.LUNE: ("N", "D"),
    Family.HALF_TETRAHEDRON: ("N", "D"),
}

SECTOR_BASES = (
    "square_torus",
    "square_n",
    "square_d",
    "hex_torus",
    "equilateral_n",
    "equilateral_d",
)

# Boundary-condition pattern of the fundamental-domain triangle for each
# one-dimensional symmetry sector.  Square bases live on the right isosceles
# triangle with legs 1/2 (one leg on the symmetry bisector, the hypotenuse on
# the diagonal); hex/equilateral bases live on a third of their surface.
SECTOR_DOMAIN_BC: dict[str, dict[str, str]] = {
    "square_torus": {"++": "N", "+-": "DN", "-+": "ND", "--": "D"},
    "square_n": {"++": "N", "+-": "MN", "-+": "ND", "--": "MD"},
    "square_d": {"++": "MN", "+-": "DN", "-+": "MD", "--": "D"},
    "hex_torus": {"+": "N", "-": "D"},
    "equilateral_n": {"+": "N", "-": "DN"},
    "equilateral_d": {"+": "ND", "-": "D"},
}


def sector_irreps(base: str) -> tuple[str, ...]:
    if base in ("square_torus", "square_n", "square_d"):
        return ("++", "+-", "-+", "--", "2")
    if base in SECTOR_BASES:
        return ("+", "-", "2")
    raise ValueError(f"unknown sector base {base!r}")


def sector_dims(base: str) -> dict[str, int]:
    """Irrep label -> dimension, for the symmetry group of the base."""
    return {ir: (2 if ir == "2" else 1) for ir in sector_irreps(base)}


def base_spec(base: str) -> SurfaceSpec:
    """The surface a symmetry-sector base name refers to."""
    if base == "square_torus":
        return flat_torus_rect(Fraction(1, 2), Fraction(1, 2))
    if base == "square_n":
        return rectangle(1, 1, "N")
    if base == "square_d":
        return rectangle(1, 1, "D")
    if base == "hex_torus":
        return flat_torus_hex()
    if base == "equilateral_n":
        return equilateral_triangle("N")
    if base == "equilateral_d":
        return equilateral_triangle("D")
    raise ValueError(f"unknown sector base {base!r}")


def _fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return str(v)


def _frac(v, name: str) -> Fraction:
    try:
        f = Fraction(v)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name} must be rational, got {v!r}") from exc
    if f <= 0:
        raise ValueError(f"{name} must be positive, got {v!r}")
    return f


def _check_bc(family: Family, bc: str) -> str:
    allowed = BC_CHOICES[family]
    if bc not in allowed:
        raise ValueError(f"{family.value} boundary condition must be one of {allowed}, got {bc!r}")
    return bc


# --- factories ---


def flat_torus_rect(a=1, b=1) -> SurfaceSpec:
    """Flat torus with periods 2a and 2b."""
    return SurfaceSpec(Family.FLAT_TORUS_RECT, a=_frac(a, "a"), b=_frac(b, "b"))


def flat_torus_hex() -> SurfaceSpec:
    """Flat torus on the hexagonal lattice spanned by (sqrt3,0), (sqrt3/2,3/2)."""
    return SurfaceSpec(Family.FLAT_TORUS_HEX)


def rectangle(a=1, b=1, bc: str = "N") -> SurfaceSpec:
    """Rectangle of sides a (horizontal) and b.

    bc: N, D, ND (Neumann on the length-a edges), NM / DM (N resp. D on the
    vertical edges, Neumann bottom and Dirichlet top), MM (Neumann on left
    and bottom, Dirichlet on right and top).
    """
    return SurfaceSpec(
        Family.RECTANGLE, a=_frac(a, "a"), b=_frac(b, "b"), bc=_check_bc(Family.RECTANGLE, bc)
    )


def right_iso_triangle(a=1, bc: str = "N") -> SurfaceSpec:
    """Right isosceles triangle with legs a.

    bc: N, D, ND (Neumann legs, Dirichlet hypotenuse), DN (the reverse),
    MN / MD (one Neumann and one Dirichlet leg, hypotenuse N resp. D).
    """
    return SurfaceSpec(
        Family.RIGHT_ISO_TRIANGLE, a=_frac(a, "a"), bc=_check_bc(Family.RIGHT_ISO_TRIANGLE, bc)
    )


def equilateral_triangle(bc: str = "N") -> SurfaceSpec:
    """Equilateral triangle of side 1."""
    return SurfaceSpec(
        Family.EQUILATERAL_TRIANGLE, bc=_check_bc(Family.EQUILATERAL_TRIANGLE, bc)
    )


def triangle_306090(bc: str = "N") -> SurfaceSpec:
    """30-60-90 triangle with hypotenuse 1 (half of the side-1 equilateral).

    bc: N, D, ND (Neumann on hypotenuse and shortest side, Dirichlet on the
    bisecting side), DN (the reverse).
    """
    return SurfaceSpec(Family.TRIANGLE_306090, bc=_check_bc(Family.TRIANGLE_306090, bc))


def cylinder(a=1, b=1, bc: str = "N") -> SurfaceSpec:
    """Flat cylinder of circumference a and height b (two boundary circles).

    bc: N, D, or M (Neumann on one circle, Dirichlet on the other).
    """
    return SurfaceSpec(
        Family.CYLINDER, a=_frac(a, "a"), b=_frac(b, "b"), bc=_check_bc(Family.CYLINDER, bc)
    )


def mobius_band(a=1, b=1, bc: str = "N") -> SurfaceSpec:
    """Flat Mobius band of area a*b whose single boundary circle has length 2a."""
    return SurfaceSpec(
        Family.MOBIUS_BAND, a=_frac(a, "a"), b=_frac(b, "b"), bc=_check_bc(Family.MOBIUS_BAND, bc)
    )


def sphere() -> SurfaceSpec:
    """Round unit sphere."""
    return SurfaceSpec(Family.SPHERE)


def hemisphere(bc: str = "N") -> SurfaceSpec:
    """Unit hemisphere, boundary condition on the equator."""
    return SurfaceSpec(Family.HEMISPHERE, bc=_check_bc(Family.HEMISPHERE, bc))


def projective_sphere() -> SurfaceSpec:
    """Unit sphere with antipodal points identified."""
    return SurfaceSpec(Family.PROJECTIVE_SPHERE)


def lune(m: int, bc: str = "N") -> SurfaceSpec:
    """Spherical lune of dihedral angle pi/m between two meridians."""
    return SurfaceSpec(Family.LUNE, m=_order(m), bc=_check_bc(Family.LUNE, bc))


def half_lune(m: int, bc_side: str = "N", bc_equator: str = "N") -> SurfaceSpec:
    """Half lune: the angle-pi/m lune cut along the equator.

    bc_side applies to the two meridian edges, bc_equator to the equator edge.
    """
    if bc_side not in ("N", "D"):
        raise ValueError(f"bc_side must be N or D, got {bc_side!r}")
    if bc_equator not in ("N", "D"):
        raise ValueError(f"bc_equator must be N or D, got {bc_equator!r}")
    return SurfaceSpec(Family.HALF_LUNE, m=_order(m), bc_side=bc_side, bc_equator=bc_equator)


def glued_lune(m: int) -> SurfaceSpec:
    """Closed surface from gluing two angle-pi/m lunes: a sphere with two
    cone points of angle 2 pi / m.  m=1 is the sphere itself."""
    return SurfaceSpec(Family.GLUED_LUNE, m=_order(m))


def flat_projective_plane() -> SurfaceSpec:
    """Flat projective plane of area 1 (two cone points of angle pi)."""
    return SurfaceSpec(Family.FLAT_PROJECTIVE_PLANE)


def tetrahedron_surface() -> SurfaceSpec:
    """Boundary surface of the regular tetrahedron with unit edges."""
    return SurfaceSpec(Family.TETRAHEDRON_SURFACE)


def half_tetrahedron(bc: str = "N") -> SurfaceSpec:
    """Half of the tetrahedron surface cut along a mirror line."""
    return SurfaceSpec(Family.HALF_TETRAHEDRON, bc=_check_bc(Family.HALF_TETRAHEDRON, bc))


def symmetry_sector(base: str, irrep: str) -> SurfaceSpec:
    """Eigenfunctions of a base surface restricted to one symmetry type.

    base: one of square_torus, square_n, square_d (dihedral group of order 8)
    or hex_torus, equilateral_n, equilateral_d (order 6).  irrep: '++', '+-',
    '-+', '--', '2' for the square bases, '+', '-', '2' for the others.
    """
    if base not in SECTOR_BASES:
        raise ValueError(f"unknown sector base {base!r}")
    if irrep not in sector_irreps(base):
        raise ValueError(f"base {base!r} has irreps {sector_irreps(base)}, got {irrep!r}")
    return SurfaceSpec(Family.SYMMETRY_SECTOR, base=base, irrep=irrep)


def _order(m: int) -> int:
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    return m


_FACTORIES = {
    Family.FLAT_TORUS_RECT: flat_torus_rect,
    Family.FLAT_TORUS_HEX: flat_torus_hex,
    Family.RECTANGLE: rectangle,
    Family.RIGHT_ISO_TRIANGLE: right_iso_triangle,
    Family.EQUILATERAL_TRIANGLE: equilateral_triangle,
    Family.TRIANGLE_306090: triangle_306090,
    Family.CYLINDER: cylinder,
    Family.MOBIUS_BAND: mobius_band,
    Family.SPHERE: sphere,
    Family.HEMISPHERE: hemisphere,
    Family.PROJECTIVE_SPHERE: projective_sphere,
    Family.LUNE: lune,
    Family.HALF_LUNE: half_lune,
    Family.GLUED_LUNE: glued_lune,
    Family.FLAT_PROJECTIVE_PLANE: flat_projective_plane,
    Family.TETRAHEDRON_SURFACE: tetrahedron_surface,
    Family.HALF_TETRAHEDRON: half_tetrahedron,
    Family.SYMMETRY_SECTOR: symmetry_sector,
}


def validate(spec: SurfaceSpec) -> SurfaceSpec:
    """Re-run factory validation on a spec built by hand; returns it."""
    kwargs = {name: getattr(spec, name) for name in _FIELDS[spec.family]}
    rebuilt = _FACTORIES[spec.family](**kwargs)
    if rebuilt != spec:
        raise ValueError(f"spec fields outside {_FIELDS[spec.family]} were set on {spec}")
    return spec


def parse_spec(text: str) -> SurfaceSpec:
    """Inverse of SurfaceSpec.label(): 'family:k=v,...' back to a spec.

    Raises ValueError on unknown families, unknown or missing parameters,
    and anything the factory itself rejects.
    """
    head, _, tail = text.strip().partition(":")
    try:
        family = Family(head)
    except ValueError:
        raise ValueError(f"unknown surface family {head!r}") from None
    names = _FIELDS[family]
    kwargs = {}
    if tail:
        for item in tail.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or key not in names:
                raise ValueError(f"bad parameter {item!r} for {head}")
            if key in kwargs:
                raise ValueError(f"duplicate parameter {key!r}")
            kwargs[key] = value.strip()
    if set(kwargs) != set(names):
        missing = sorted(set(names) - set(kwargs))
        raise ValueError(f"{head} needs parameters {missing}")
    for key in ("a", "b"):
        if key in kwargs:
            kwargs[key] = _frac(kwargs[key], key)
    if "m" in kwargs:
        try:
            kwargs["m"] = int(kwargs["m"])
        except ValueError:
            raise ValueError(f"m must be an integer, got {kwargs['m']!r}") from None
    return _FACTORIES[family](**kwargs)


def is_spherical(spec: SurfaceSpec) -> bool:
    """True for the constant-curvature-one families (counting runs in k^2+k windows)."""
    return spec.family in (
        Family.SPHERE,
        Family.HEMISPHERE,
        Family.PROJECTIVE_SPHERE,
        Family.LUNE,
        Family.HALF_LUNE,
        Family.GLUED_LUNE,
    )


def has_boundary(spec: SurfaceSpec) -> bool:
    if spec.family == Family.SYMMETRY_SECTOR:
        return True
    return spec.family in (
        Family.RECTANGLE,
        Family.RIGHT_ISO_TRIANGLE,
        Family.EQUILATERAL_TRIANGLE,
        Family.TRIANGLE_306090,
        Family.CYLINDER,
        Family.MOBIUS_BAND,
        Family.HEMISPHERE,
        Family.LUNE,
        Family.HALF_LUNE,
        Family.HALF_TETRAHEDRON,
    )


# --- geometry ---


def _rat(q) -> ExactConst:
    return ExactConst.rational(q)


def _pi_times(q) -> ExactConst:
    return ExactConst.term(Fraction(q), pi_pow=1)


def _root(q, s: int) -> ExactConst:
    return ExactConst.term(Fraction(q), root=s)


_ZERO = ExactConst()


def _polygon(
    area: ExactConst,
    edges: list[tuple[ExactConst, str]],
    corners: list[tuple[Fraction, int, int]],
) -> GeometryData:
    """Flat polygon data from edge list [(length, 'N'|'D')] and corner list
    [(angle/pi, edge_i, edge_j)]."""
    len_n = _ZERO
    len_d = _ZERO
    for length, bc in edges:
        if bc == "N":
            len_n = len_n + length
        else:
            len_d = len_d + length
    cs = []
    for q, i, j in corners:
        kind = CornerKind.LIKE if edges[i][1] == edges[j][1] else CornerKind.MIXED
        cs.append(CornerSpec(_pi_times(q), kind))
    return GeometryData(
        area=area,
        len_N=len_n,
        len_D=len_d,
        corners=tuple(cs),
        cone_points=(),
        K2_total=_ZERO,
        K1_boundary_integral=_ZERO,
    )


def _closed_flat(area: ExactConst, cone_angles: list[Fraction]) -> GeometryData:
    return GeometryData(
        area=area,
        len_N=_ZERO,
        len_D=_ZERO,
        corners=(),
        cone_points=tuple(ConePoint(_pi_times(q)) for q in cone_angles),
        K2_total=_ZERO,
        K1_boundary_integral=_ZERO,
    )


_RECT_EDGE_BC = {
    # bottom, right, top, left
    "N": ("N", "N", "N", "N"),
    "D": ("D", "D", "D", "D"),
    "ND": ("N", "D", "N", "D"),
    "NM": ("N", "N", "D", "N"),
    "DM": ("N", "D", "D", "D"),
    "MM": ("N", "D", "D", "N"),
}

_RIGHT_ISO_EDGE_BC = {
    # leg, leg, hypotenuse
    "N": ("N", "N", "N"),
    "D": ("D", "D", "D"),
    "ND": ("N", "N", "D"),
    "DN": ("D", "D", "N"),
    "MN": ("N", "D", "N"),
    "MD": ("N", "D", "D"),
}

_306090_EDGE_BC = {
    # hypotenuse, bisecting (long) side, shortest side
    "N": ("N", "N", "N"),
    "D": ("D", "D", "D"),
    "ND": ("N", "D", "N"),
    "DN": ("D", "N", "D"),
}


def _geom_rectangle(a: Fraction, b: Fraction, bc: str) -> GeometryData:
    e = _RECT_EDGE_BC[bc]
    edges = [(_rat(a), e[0]), (_rat(b), e[1]), (_rat(a), e[2]), (_rat(b), e[3])]
    half = Fraction(1, 2)
    corners = [(half, 0, 1), (half, 1, 2), (half, 2, 3), (half, 3, 0)]
    return _polygon(_rat(a * b), edges, corners)


def _geom_right_iso(a: Fraction, bc: str) -> GeometryData:
    e = _RIGHT_ISO_EDGE_BC[bc]
    edges = [(_rat(a), e[0]), (_rat(a), e[1]), (_root(a, 2), e[2])]
    corners = [
        (Fraction(1, 2), 0, 1),
        (Fraction(1, 4), 0, 2),
        (Fraction(1, 4), 1, 2),
    ]
    return _polygon(_rat(a * a / 2), edges, corners)


def _geom_equilateral(bc: str) -> GeometryData:
    edges = [(_rat(1), bc)] * 3
    third = Fraction(1, 3)
    corners = [(third, 0, 1), (third, 1, 2), (third, 2, 0)]
    return _polygon(_root(Fraction(1, 4), 3), edges, corners)


def _geom_306090(bc: str, shrink: bool = False) -> GeometryData:
    """30-60-90 triangle; shrink scales all lengths by 1/sqrt3 (the copy that
    tiles the equilateral triangle as a sixth)."""
    e = _306090_EDGE_BC[bc]
    if shrink:
        hyp = _root(Fraction(1, 3), 3)  # sqrt3/3
        long_side = _rat(Fraction(1, 2))
        short = _root(Fraction(1, 6), 3)  # sqrt3/6
        area = _root(Fraction(1, 24), 3)
    else:
        hyp = _rat(1)
        long_side = _root(Fraction(1, 2), 3)  # sqrt3/2
        short = _rat(Fraction(1, 2))
        area = _root(Fraction(1, 8), 3)
    edges = [(hyp, e[0]), (long_side, e[1]), (short, e[2])]
    corners = [
        (Fraction(1, 2), 1, 2),
        (Fraction(1, 3), 0, 2),
        (Fraction(1, 6), 0, 1),
    ]
    return _polygon(area, edges, corners)


def _geom_cylinder(a: Fraction, b: Fraction, bc: str) -> GeometryData:
    circle = _rat(a)
    if bc == "N":
        len_n, len_d = circle + circle, _ZERO
    elif bc == "D":
        len_n, len_d = _ZERO, circle + circle
    else:
        len_n, len_d = circle, circle
    return GeometryData(
        area=_rat(a * b),
        len_N=len_n,
        len_D=len_d,
        corners=(),
        cone_points=(),
        K2_total=_ZERO,
        K1_boundary_integral=_ZERO,
    )


def _geom_mobius(a: Fraction, b: Fraction, bc: str) -> GeometryData:
    circle = _rat(2 * a)
    return GeometryData(
        area=_rat(a * b),
        len_N=circle if bc == "N" else _ZERO,
        len_D=circle if bc == "D" else _ZERO,
        corners=(),
        cone_points=(),
        K2_total=_ZERO,
        K1_boundary_integral=_ZERO,
    )


def _geom_round(area_pi: Fraction, boundary_pi_n: Fraction, boundary_pi_d: Fraction,
                corners: tuple[CornerSpec, ...] = (), cones: tuple[ConePoint, ...] = ()) -> GeometryData:
    """Unit-curvature surface; area and boundary lengths as multiples of pi."""
    area = _pi_times(area_pi)
    return GeometryData(
        area=area,
        len_N=_pi_times(boundary_pi_n),
        len_D=_pi_times(boundary_pi_d),
        corners=corners,
        cone_points=cones,
        K2_total=area,
        K1_boundary_integral=_ZERO,
    )


def _geom_lune(m: int, bc: str) -> GeometryData:
    pole = CornerSpec(_pi_times(Fraction(1, m)), CornerKind.LIKE)
    return _geom_round(
        Fraction(2, m),
        Fraction(2) if bc == "N" else Fraction(0),
        Fraction(2) if bc == "D" else Fraction(0),
        corners=(pole, pole),
    )


def _geom_half_lune(m: int, bc_side: str, bc_equator: str) -> GeometryData:
    pole = CornerSpec(_pi_times(Fraction(1, m)), CornerKind.LIKE)
    foot_kind = CornerKind.LIKE if bc_side == bc_equator else CornerKind.MIXED
    foot = CornerSpec(_pi_times(Fraction(1, 2)), foot_kind)
    sides = Fraction(1)  # two meridian edges of length pi/2
    equator = Fraction(1, m)
    return _geom_round(
        Fraction(1, m),
        (sides if bc_side == "N" else 0) + (equator if bc_equator == "N" else 0),
        (sides if bc_side == "D" else 0) + (equator if bc_equator == "D" else 0),
        corners=(pole, foot, foot),
    )


def _geom_sector(base: str, irrep: str) -> GeometryData:
    if irrep == "2":
        raise ValueError(
            "the 2-dimensional sector has no single fundamental domain; "
            "derive its asymptotics from the partition of the base surface"
        )
    bc = SECTOR_DOMAIN_BC[base][irrep]
    if base in ("square_torus", "square_n", "square_d"):
        return _geom_right_iso(Fraction(1, 2), bc)
    if base == "hex_torus":
        return _geom_equilateral(bc)
    return _geom_306090(bc, shrink=True)


def geometry(spec: SurfaceSpec) -> GeometryData:
    """Exact geometric data for a surface."""
    validate(spec)
    f = spec.family
    if f == Family.FLAT_TORUS_RECT:
        return _closed_flat(_rat(4 * spec.a * spec.b), [])
    if f == Family.FLAT_TORUS_HEX:
        return _closed_flat(_root(Fraction(3, 2), 3), [])
    if f == Family.RECTANGLE:
        return _geom_rectangle(spec.a, spec.b, spec.bc)
    if f == Family.RIGHT_ISO_TRIANGLE:
        return _geom_right_iso(spec.a, spec.bc)
    if f == Family.EQUILATERAL_TRIANGLE:
        return _geom_equilateral(spec.bc)
    if f == Family.TRIANGLE_306090:
        return _geom_306090(spec.bc)
    if f == Family.CYLINDER:
        return _geom_cylinder(spec.a, spec.b, spec.bc)
    if f == Family.MOBIUS_BAND:
        return _geom_mobius(spec.a, spec.b, spec.bc)
    if f == Family.SPHERE:
        return _geom_round(Fraction(4), Fraction(0), Fraction(0))
    if f == Family.HEMISPHERE:
        return _geom_round(
            Fraction(2),
            Fraction(2) if spec.bc == "N" else Fraction(0),
            Fraction(2) if spec.bc == "D" else Fraction(0),
        )
    if f == Family.PROJECTIVE_SPHERE:
        return _geom_round(Fraction(2), Fraction(0), Fraction(0))
    if f == Family.LUNE:
        return _geom_lune(spec.m, spec.bc)
    if f == Family.HALF_LUNE:
        return _geom_half_lune(spec.m, spec.bc_side, spec.bc_equator)
    if f == Family.GLUED_LUNE:
        cone = ConePoint(_pi_times(Fraction(2, spec.m)))
        return GeometryData(
            area=_pi_times(Fraction(4, spec.m)),
            len_N=_ZERO,
            len_D=_ZERO,
            corners=(),
            cone_points=(cone, cone),
            K2_total=_pi_times(Fraction(4, spec.m)),
            K1_boundary_integral=_ZERO,
        )
    if f == Family.FLAT_PROJECTIVE_PLANE:
        return _closed_flat(_rat(1), [Fraction(1), Fraction(1)])
    if f == Family.TETRAHEDRON_SURFACE:
        return _closed_flat(_root(1, 3), [Fraction(1)] * 4)
    if f == Family.HALF_TETRAHEDRON:
        corner = CornerSpec(_pi_times(Fraction(1, 2)), CornerKind.LIKE)
        boundary = _rat(1) + _root(1, 3)  # 1 + sqrt3
        return GeometryData(
            area=_root(Fraction(1, 2), 3),
            len_N=boundary if spec.bc == "N" else _ZERO,
            len_D=boundary if spec.bc == "D" else _ZERO,
            corners=(corner, corner),
            cone_points=(ConePoint(_pi_times(Fraction(1))),),
            K2_total=_ZERO,
            K1_boundary_integral=_ZERO,
        )
    if f == Family.SYMMETRY_SECTOR:
        return _geom_sector(spec.base, spec.irrep)
    raise ValueError(f"no geometry for {spec}")


# --- geodesic lengths ---


def _rect_lattice_sq(p: Fraction, q: Fraction, cap: Fraction) -> set[Fraction]:
    """Squared lengths of p Z x q Z lattice vectors, 0 < |v|^2 <= cap."""
    out: set[Fraction] = set()
    jmax = int(math.isqrt(int(cap / (p * p)))) + 1
    kmax = int(math.isqrt(int(cap / (q * q)))) + 1
    for j in range(jmax + 1):
        for k in range(kmax + 1):
            if j == 0 and k == 0:
                continue
            s = p * p * j * j + q * q * k * k
            if s <= cap:
                out.add(s)
    return out


def _hex_qs(cap3: int) -> set[int]:
    """Values of m^2 + m n + n^2 in (0, cap3]."""
    out: set[int] = set()
    mmax = int(2 * math.sqrt(max(cap3, 1))) + 2
    for m in range(-mmax, mmax + 1):
        for n in range(mmax + 1):
            q = m * m + m * n + n * n
            if 0 < q <= cap3:
                out.add(q)
    return out


def _multiples_sq(step_sq: Fraction, cap: Fraction) -> set[Fraction]:
    """Squared lengths of positive multiples of sqrt(step_sq)."""
    out: set[Fraction] = set()
    j = 1
    while step_sq * j * j <= cap:
        out.add(step_sq * j * j)
        j += 1
    return out


def _pi_multiples(step: Fraction, L_max: float) -> list[float]:
    out = []
    j = 1
    while True:
        val = float(step * j) * math.pi
        if val > L_max + 1e-12:
            return out
        out.append(val)
        j += 1


def geodesic_lengths(spec: SurfaceSpec, L_max: float) -> list[float]:
    """Sorted lengths of closed geodesic/billiard orbit families up to L_max.

    Flat families use the translation lattice of the reflection/deck cover
    plus the bounce-orbit families forced by the identifications; these are
    the lengths at which the counting remainder oscillates.  Spherical
    families use great-circle orbit lengths.
    """
    validate(spec)
    if L_max <= 0:
        return []
    cap = Fraction(L_max) ** 2
    f = spec.family
    sqs: set[Fraction] = set()
    if f in (Family.FLAT_TORUS_RECT, Family.RECTANGLE):
        sqs = _rect_lattice_sq(2 * spec.a, 2 * spec.b, cap)
    elif f == Family.CYLINDER:
        sqs = _rect_lattice_sq(spec.a, 2 * spec.b, cap)
    elif f == Family.MOBIUS_BAND:
        sqs = _rect_lattice_sq(2 * spec.a, 2 * spec.b, cap)
        step = spec.a * spec.a
        j = 1
        while step * j * j <= cap:
            if j % 2 == 1:
                sqs.add(step * j * j)
            j += 1
    elif f == Family.FLAT_PROJECTIVE_PLANE:
        sqs = _rect_lattice_sq(Fraction(2), Fraction(2), cap)
        sqs |= _multiples_sq(Fraction(1), cap) - _multiples_sq(Fraction(4), cap)
        sqs = {s for s in sqs if s <= cap}
    elif f == Family.RIGHT_ISO_TRIANGLE:
        # even sublattice of a Z^2: generated by a(1,1) and a(1,-1)
        sqs = {2 * spec.a * spec.a * q for q in _rect_lattice_sq(1, 1, cap / (2 * spec.a * spec.a))}
    elif f in (Family.FLAT_TORUS_HEX, Family.EQUILATERAL_TRIANGLE, Family.TRIANGLE_306090):
        sqs = {Fraction(3 * q) for q in _hex_qs(int(cap / 3))}
        if f == Family.EQUILATERAL_TRIANGLE:
            sqs |= _multiples_sq(Fraction(9, 4), cap)
        if f == Family.TRIANGLE_306090:
            sqs |= _multiples_sq(Fraction(9, 4), cap)
            sqs |= _multiples_sq(Fraction(3, 4), cap)
    elif f in (Family.TETRAHEDRON_SURFACE, Family.HALF_TETRAHEDRON):
        sqs = {Fraction(4 * q) for q in _hex_qs(int(cap / 4))}
        if f == Family.HALF_TETRAHEDRON:
            sqs |= _multiples_sq(Fraction(1), cap)
            sqs |= _multiples_sq(Fraction(3), cap)
    elif f == Family.SYMMETRY_SECTOR:
        if spec.base in ("square_torus", "square_n", "square_d"):
            half = Fraction(1, 2)
            sqs = {2 * half * half * q for q in _rect_lattice_sq(1, 1, cap * 2)}
            sqs = {s for s in sqs if s <= cap}
        elif spec.base == "hex_torus":
            sqs = {Fraction(3 * q) for q in _hex_qs(int(cap / 3))}
            sqs |= _multiples_sq(Fraction(9, 4), cap)
        else:
            sqs = {Fraction(q) for q in _hex_qs(int(cap))}
            sqs |= _multiples_sq(Fraction(3, 4), cap)
            sqs |= _multiples_sq(Fraction(1, 4), cap)
    elif f in (Family.SPHERE, Family.HEMISPHERE):
        return _pi_multiples(Fraction(2), L_max)
    elif f == Family.PROJECTIVE_SPHERE:
        return _pi_multiples(Fraction(1), L_max)
    elif f in (Family.LUNE, Family.HALF_LUNE, Family.GLUED_LUNE):
        return _pi_multiples(Fraction(2, spec.m), L_max)
    else:
        raise ValueError(f"no geodesic table for {spec}")
    return sorted(math.sqrt(float(s)) for s in sqs)


# --- roster ---


def verification_roster() -> list[SurfaceSpec]:
    """Every family, each boundary-condition variant, a few parameter shapes:
    the list swept by the counting-identity verification."""
    out = [
        flat_torus_rect(1, 1),
        flat_torus_rect(2, Fraction(3, 2)),
        flat_torus_hex(),
    ]
    out += [rectangle(1, 1, bc) for bc in BC_CHOICES[Family.RECTANGLE]]
    out += [rectangle(2, Fraction(3, 2), "ND"), rectangle(Fraction(3, 2), 1, "NM")]
    out += [right_iso_triangle(1, bc) for bc in BC_CHOICES[Family.RIGHT_ISO_TRIANGLE]]
    out.append(right_iso_triangle(Fraction(1, 2), "N"))
    out += [equilateral_triangle(bc) for bc in ("N", "D")]
    out += [triangle_306090(bc) for bc in BC_CHOICES[Family.TRIANGLE_306090]]
    out += [cylinder(1, 1, bc) for bc in ("N", "D", "M")]
    out.append(cylinder(Fraction(3, 2), 1, "M"))
    out += [mobius_band(1, 1, bc) for bc in ("N", "D")]
    out.append(mobius_band(1, Fraction(1, 2), "D"))
    out.append(sphere())
    out += [hemisphere(bc) for bc in ("N", "D")]
    out.append(projective_sphere())
    out += [lune(m, bc) for m in (1, 2, 3, 5) for bc in ("N", "D")]
    out += [
        half_lune(m, s, e)
        for m in (1, 2, 3, 4, 5)
        for s in ("N", "D")
        for e in ("N", "D")
    ]
    out += [glued_lune(m) for m in (1, 2, 3, 5)]
    out.append(flat_projective_plane())
    out.append(tetrahedron_surface())
    out += [half_tetrahedron(bc) for bc in ("N", "D")]
    out += [
        symmetry_sector(base, ir) for base in SECTOR_BASES for ir in sector_irreps(base)
    ]
    return out

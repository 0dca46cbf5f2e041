import itertools
import random
from fractions import Fraction

import pytest

from cytoric import hodge
from cytoric.chern import (
    CurveClass,
    IntersectionForm,
    c2_dot,
    chern_report,
    curve_census,
    intersection_number,
)
from cytoric.errors import InputError
from cytoric.fan import WeilDivisor, mpcp_triangulate
from cytoric.lattice import NPoint
from oracles import series_c2_quintic, series_c2_cube_hypersurface


def npt(*coords):
    return NPoint(coords)


@pytest.fixture(scope="module")
def p4_form(quintic):
    return IntersectionForm(mpcp_triangulate(quintic))


@pytest.fixture(scope="module")
def cross_form(cube4):
    return IntersectionForm(mpcp_triangulate(cube4))


@pytest.fixture(scope="module")
def example_form(example_s3):
    return IntersectionForm(mpcp_triangulate(example_s3))


# -- raw quadruple values -----------------------------------------------------------


def test_p4_distinct_quadruple(p4_form):
    assert p4_form.value((npt(1, 0, 0, 0), npt(0, 1, 0, 0), npt(0, 0, 1, 0), npt(0, 0, 0, 1))) == 1


def test_p4_repeated_ray_h4(p4_form):
    # all D_i are linearly equivalent on this fan, so any fourfold product is 1
    h = npt(1, 0, 0, 0)
    assert p4_form.value((h, h, h, h)) == 1
    assert p4_form.value((h, h, npt(0, 1, 0, 0), npt(0, 0, 1, 0))) == 1


def test_cross_fan_square_vanishes(cross_form):
    # opposite rays never share a cone; each factor squares to zero
    e1 = npt(1, 0, 0, 0)
    assert cross_form.value((e1, e1, npt(0, 1, 0, 0), npt(0, 0, 1, 0))) == 0
    assert (
        cross_form.value((e1, npt(-1, 0, 0, 0), npt(0, 1, 0, 0), npt(0, 0, 1, 0))) == 0
    )


def test_cross_fan_distinct_axes(cross_form):
    v = cross_form.value((npt(1, 0, 0, 0), npt(0, -1, 0, 0), npt(0, 0, 1, 0), npt(0, 0, 0, -1)))
    assert v == 1


def test_example_orbifold_quadruple(example_form):
    v = example_form.value(
        (npt(1, 0, 0, 0), npt(0, 1, 0, 0), npt(0, 0, -1, 0), npt(1, 1, 1, -2))
    )
    assert v == Fraction(1, 2)


def test_non_spanning_support_is_zero(example_form):
    v = example_form.value(
        (npt(1, 0, 0, 0), npt(-1, 0, 0, 0), npt(0, 1, 0, 0), npt(0, 0, 1, 0))
    )
    assert v == 0


def test_smooth_cone_spanning_rays_give_one(p4_form, cross_form):
    for form in (p4_form, cross_form):
        for cone in form.fan.maximal_cones:
            if cone.multiplicity == 1:
                assert form.value(cone.rays) == 1


# -- symmetry and relations -----------------------------------------------------------


def test_symmetry_under_permutations(example_form):
    rng = random.Random(5)
    rays = example_form.rays
    for _ in range(120):
        quad = tuple(rng.choice(rays) for _ in range(4))
        base = example_form.value(quad)
        for perm in itertools.permutations(quad):
            assert example_form.value(perm) == base


def test_functional_relations_annihilate(example_form, cross_form, p4_form):
    # for every lattice functional m: sum_i <m, v_i> D_i pairs to zero
    rng = random.Random(11)
    for form in (example_form, cross_form, p4_form):
        rays = form.rays
        for _ in range(40):
            m = [rng.randint(-3, 3) for _ in range(4)]
            rel = WeilDivisor.from_dict(
                {r: sum(a * b for a, b in zip(m, r)) for r in rays}
            )
            picks = [WeilDivisor.ray(rng.choice(rays)) for _ in range(3)]
            assert intersection_number(form, rel, *picks) == 0


# -- c2 pairings ---------------------------------------------------------------------


def test_c2_quintic_hyperplane_matches_series_oracle(quintic, p4_form):
    oracle = series_c2_quintic()
    assert oracle == 50
    value = c2_dot(quintic, p4_form, WeilDivisor.ray(npt(1, 0, 0, 0)))
    assert value == oracle


def test_c2_cube_matches_monomial_oracle(cube4, cross_form):
    oracle = series_c2_cube_hypersurface()
    assert oracle == 24
    value = c2_dot(cube4, cross_form, WeilDivisor.ray(npt(1, 0, 0, 0)))
    assert value == oracle


def test_c2_zero_divisor(quintic, p4_form):
    assert c2_dot(quintic, p4_form, WeilDivisor.zero()) == 0


def test_c2_linearity(example_s3, example_form):
    rng = random.Random(3)
    rays = example_form.rays
    for _ in range(10):
        a = WeilDivisor.ray(rng.choice(rays), rng.randint(-2, 3))
        b = WeilDivisor.ray(rng.choice(rays), rng.randint(1, 3))
        alpha = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        beta = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        combo = alpha * a + beta * b
        lhs = c2_dot(example_s3, example_form, combo)
        rhs = alpha * c2_dot(example_s3, example_form, a) + beta * c2_dot(
            example_s3, example_form, b
        )
        assert lhs == rhs


def test_c2_anticanonical_positive(example_s3, quintic, cube4, example_form, p4_form, cross_form):
    pairs = [(example_s3, example_form), (quintic, p4_form), (cube4, cross_form)]
    for delta, form in pairs:
        mk = WeilDivisor.anticanonical(form.fan)
        assert c2_dot(delta, form, mk) > 0


def test_c2_quintic_anticanonical_value(quintic, p4_form):
    # -K restricts to 5H so the pairing is 5 * 50
    mk = WeilDivisor.anticanonical(p4_form.fan)
    assert c2_dot(quintic, p4_form, mk) == 250


def test_c2_cube_anticanonical_value(cube4, cross_form):
    # eight ray classes each pairing to 24
    mk = WeilDivisor.anticanonical(cross_form.fan)
    assert c2_dot(cube4, cross_form, mk) == 8 * 24


def test_intersection_number_dense_matches_sparse(quintic, p4_form):
    # -K = 5H on the quintic ambient: (-K)^4 = 625 H^4
    mk = WeilDivisor.anticanonical(p4_form.fan)
    assert intersection_number(p4_form, mk, mk, mk, mk) == 625


def test_c2_rejects_wrong_fan(example_s3, quintic):
    f = mpcp_triangulate(quintic)
    with pytest.raises(InputError):
        c2_dot(example_s3, f, WeilDivisor.zero())


# -- curve census --------------------------------------------------------------------


def test_curve_census_cube_all_smooth(cube4):
    f = mpcp_triangulate(cube4)
    census = curve_census(cube4, f)
    assert len(census.entries) == 24
    assert all(e.kind is CurveClass.SMOOTH_SECTION for e in census.entries)
    assert census.uncovered == frozenset()


def test_curve_census_cross_empty_rule(cross4):
    # the dual is the cube; every edge touching a facet-interior point is empty
    f = mpcp_triangulate(cross4)
    census = curve_census(cross4, f)
    classified = hodge.classify_boundary(cross4.dual())
    for entry in census.entries:
        a, b = entry.edge
        if (
            classified[a].kind is hodge.PointType.IN_3FACE
            or classified[b].kind is hodge.PointType.IN_3FACE
        ):
            assert entry.kind is CurveClass.EMPTY


def test_curve_census_example_vertices_only(example_s3):
    f = mpcp_triangulate(example_s3)
    census = curve_census(example_s3, f)
    kinds = {e.kind for e in census.entries}
    assert CurveClass.EMPTY not in kinds or all(
        e.face_dim == 3 for e in census.entries if e.kind is CurveClass.EMPTY
    )
    assert census.uncovered == frozenset()
    # all endpoints are vertices of the dual here
    classified = hodge.classify_boundary(example_s3.dual())
    assert all(info.kind is hodge.PointType.VERTEX for info in classified.values())


def test_c2_vanishes_on_divisors_missing_the_hypersurface(cross4):
    # rays interior to dual facets lie over the deepest torus-fixed points,
    # which a generic anticanonical section avoids entirely
    fan = mpcp_triangulate(cross4)
    form = IntersectionForm(fan)
    classified = hodge.classify_boundary(cross4.dual())
    mk = WeilDivisor.anticanonical(fan)
    skipped = [p for p, info in classified.items() if info.kind is hodge.PointType.IN_3FACE]
    assert len(skipped) == 8
    for p in skipped:
        d = WeilDivisor.ray(p)
        assert c2_dot(cross4, form, d) == 0
        assert intersection_number(form, d, mk, mk, mk) == 0


def test_intersection_form_rejects_wrong_dimension(square):
    fan2d = mpcp_triangulate(square)
    with pytest.raises(InputError):
        IntersectionForm(fan2d)


def test_chern_report_smoke(quintic):
    f = mpcp_triangulate(quintic)
    rep = chern_report(quintic, f)
    values = dict(rep.c2_values)
    assert values["-K"] == 250
    audit = rep.positivity[0]
    assert audit.nef and audit.c2_value > 0 and audit.restricted_degree == 625

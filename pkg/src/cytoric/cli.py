"""Command-line front end.

Four subcommand groups mirror the library layers: `poly` (convex geometry
and reflexivity), `cy` (Hodge data of the anticanonical hypersurface),
`fan` (face fans, refinements, divisor audits), `chern` (intersection
numbers and second-Chern-class pairings).  Every command takes polytope
files; `--json` switches to a machine-readable tree with stable keys and
deterministic byte-identical output, `--jobs N` fans independent input
files out to worker processes, results merged in input order.

Exit status: 0 success, 1 domain error (e.g. non-reflexive input where
reflexivity is required), 2 usage error.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import click

from . import chern as chern_mod
from . import fan as fan_mod
from . import hodge as hodge_mod
from .errors import CytoricError, OriginNotInteriorError
from .fan import WeilDivisor
from .lattice import NPoint
from .polyfile import dump_polytope, parse_polytope_path
from .polytope import RationalPolytope, hull


def _frac(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _load(path):
    return hull(parse_polytope_path(path))


def _fan_for(path, resolve: bool):
    delta = _load(path)
    if resolve:
        return delta, fan_mod.mpcp_triangulate(delta)
    return delta, fan_mod.face_fan(delta)


def parse_divisor(spec: str, fan) -> WeilDivisor:
    """Divisor syntax: 'anticanonical' (alias '-K'), or comma-separated
    'ray=coeff' terms where ray is an index into the fan's ray order or a
    coordinate tuple like (1,0,0,0), and coeff is an integer or p/q."""
    spec = spec.strip()
    if spec in ("anticanonical", "-K"):
        return WeilDivisor.anticanonical(fan)
    coeffs = {}
    depth = 0
    term = ""
    terms = []
    for ch in spec:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            terms.append(term)
            term = ""
        else:
            term += ch
    if term:
        terms.append(term)
    for raw in terms:
        if "=" not in raw:
            raise click.UsageError(f"divisor term {raw!r} is not ray=coeff")
        ray_part, coeff_part = raw.rsplit("=", 1)
        ray_part = ray_part.strip()
        try:
            coeff = Fraction(coeff_part.strip())
        except (ValueError, ZeroDivisionError):
            raise click.UsageError(f"bad coefficient {coeff_part!r}")
        if ray_part.startswith("("):
            inner = ray_part.strip("()")
            try:
                coords = tuple(int(c) for c in inner.split(","))
            except ValueError:
                raise click.UsageError(f"bad ray coordinates {ray_part!r}")
            ray = NPoint(coords)
            if ray not in set(fan.rays):
                raise click.UsageError(f"{ray_part} is not a ray of the fan")
        else:
            try:
                idx = int(ray_part)
            except ValueError:
                raise click.UsageError(f"bad ray index {ray_part!r}")
            if not 0 <= idx < len(fan.rays):
                raise click.UsageError(
                    f"ray index {idx} out of range 0..{len(fan.rays) - 1}"
                )
            ray = fan.rays[idx]
        coeffs[ray] = coeffs.get(ray, Fraction(0)) + coeff
    return WeilDivisor.from_dict(coeffs)


# -- report builders (top level: picklable for --jobs workers) --------------------


def report_poly_check(path, opts):
    p = _load(path)
    try:
        reflexive = p.is_reflexive()
        note = None
    except OriginNotInteriorError:
        reflexive = False
        note = "origin is not strictly interior"
    out = {
        "dim": p.ambient_dim,
        "vertices": len(p.vertices),
        "facets": len(p.facets),
        "reflexive": reflexive,
        "points": p.n_points,
        "interior_points": p.n_interior,
    }
    if note:
        out["note"] = note
    return out


def report_poly_dual(path, opts):
    p = _load(path)
    d = p.dual()
    if isinstance(d, RationalPolytope):
        return {
            "reflexive": False,
            "dual": {
                "lattice": False,
                "vertices": [[_frac(c) for c in v] for v in d.vertices],
            },
        }
    return {
        "reflexive": True,
        "dual": {
            "lattice": True,
            "vertices": [list(v) for v in d.vertices],
        },
    }


def report_poly_points(path, opts):
    p = _load(path)
    census = p.census()
    by_dim = {}
    for pt in census.boundary:
        d = census.face_of[pt].dim
        by_dim[str(d)] = by_dim.get(str(d), 0) + 1
    return {
        "l": census.n_points,
        "l_star": census.n_interior,
        "boundary_by_face_dim": by_dim,
        "points": [
            {
                "point": list(pt),
                "face_dim": -1 if census.face_of[pt] is None else census.face_of[pt].dim,
            }
            for pt in census.points
        ],
    }


def report_poly_faces(path, opts):
    p = _load(path)
    p.census()
    counts = {str(d): n for d, n in p.faces().counts().items()}
    euler = sum((-1) ** d * n for d, n in p.faces().counts().items())
    return {
        "counts": counts,
        "euler_sum": euler,
        "euler_ok": euler == 1 - (-1) ** p.dim,
        "faces": [
            {
                "dim": f.dim,
                "vertices": len(f.vertices),
                "l": f.n_points,
                "l_star": f.n_interior,
            }
            for f in p.faces()
        ],
    }


def report_poly_dump(path, opts):
    points = parse_polytope_path(path)
    return {"points": [list(pt) for pt in points], "text": dump_polytope(points)}


def report_cy_hodge(path, opts):
    p = _load(path)
    rep = hodge_mod.report(p)
    return {
        "h11": rep.h11,
        "h12": rep.h12,
        "euler": rep.euler,
        "terms": {
            "dual_points": rep.n_dual_points,
            "facet_interior_correction": rep.facet_interior_correction,
            "two_face_pairing_term": rep.two_face_pairing_term,
            "linear_relations": 4,
        },
    }


def report_cy_census(path, opts):
    p = _load(path)
    census = hodge_mod.divisor_census(p)
    return {
        "census": {
            "a": len(census.irreducible_points),
            "f_points": [
                {"point": list(pt), "components": n} for pt, n in census.split_points
            ],
            "skipped": [list(pt) for pt in census.off_hypersurface_points],
            "total_components": census.total_components,
            "h11": census.rank,
        }
    }


def _fan_summary(fan):
    return {
        "provenance": fan.provenance,
        "max_cones": len(fan.maximal_cones),
        "rays": len(fan.rays),
        "simplicial": fan.is_simplicial,
    }


def report_fan_build(path, opts):
    _, fan = _fan_for(path, opts.get("resolve", False))
    out = {"fan": _fan_summary(fan)}
    out["fan"]["cones"] = [[list(r) for r in c.rays] for c in fan.maximal_cones]
    out["ray_order"] = [list(r) for r in fan.rays]
    return out


def report_fan_mpcp(path, opts):
    delta, fan = _fan_for(path, True)
    dual = delta.dual()
    return {
        "fan": _fan_summary(fan),
        "fine": set(fan.rays) == set(dual.boundary_points()),
        "crepant": True,
        "normalized_volume": dual.normalized_volume(),
    }


def report_fan_singular(path, opts):
    _, fan = _fan_for(path, opts.get("resolve", False))
    census = fan_mod.singularity_census(fan)
    return {
        "singular": [
            {"rays": [list(r) for r in cone.rays], "mult": mult}
            for cone, mult in census
        ],
        "count": len(census),
    }


def report_fan_picard(path, opts):
    _, fan = _fan_for(path, opts.get("resolve", False))
    return {"picard_rank_q": fan_mod.picard_rank_q(fan), "fan": _fan_summary(fan)}


def report_fan_nef(path, opts):
    _, fan = _fan_for(path, opts.get("resolve", False))
    divisor = parse_divisor(opts["divisor"], fan)
    qc, index = fan_mod.is_qcartier(fan, divisor)
    out = {"qcartier": qc, "cartier_index": index}
    if qc and fan.is_simplicial:
        out["nef"] = fan_mod.is_nef(fan, divisor)
    elif not qc:
        raise CytoricError("divisor is not Q-Cartier; nef test undefined")
    else:
        raise CytoricError("nef test needs the refined fan; pass --resolve")
    return out


def report_chern_c2(path, opts):
    delta, fan = _fan_for(path, True)
    form = chern_mod.IntersectionForm(fan)
    minus_k = WeilDivisor.anticanonical(fan)
    values = [{"divisor": "-K", "value": _frac(chern_mod.c2_dot(delta, form, minus_k))}]
    for r in fan.rays:
        values.append(
            {
                "divisor": f"D{tuple(r)}",
                "value": _frac(chern_mod.c2_dot(delta, form, WeilDivisor.ray(r))),
            }
        )
    audits = []
    specs = [("anticanonical", minus_k)]
    for spec in opts.get("divisors", ()):
        specs.append((spec, parse_divisor(spec, fan)))
    for label, div in specs:
        nef = fan_mod.is_nef(fan, div)
        degree = chern_mod.intersection_number(form, div, minus_k, minus_k, minus_k)
        value = chern_mod.c2_dot(delta, form, div)
        audits.append(
            {
                "divisor": label,
                "nef": nef,
                "restricted_degree": _frac(degree),
                "c2": _frac(value),
                "positive": value > 0,
            }
        )
    return {"c2": {"values": values, "audit": audits}}


def report_chern_curves(path, opts):
    delta, fan = _fan_for(path, True)
    census = chern_mod.curve_census(delta, fan)
    return {
        "curves": {
            "entries": [
                {
                    "edge": [list(e.edge[0]), list(e.edge[1])],
                    "class": e.kind.value,
                    "count": e.count,
                    "face_dim": e.face_dim,
                }
                for e in census.entries
            ],
            "by_class": {k.value: n for k, n in sorted(census.by_kind().items(), key=lambda t: t[0].value)},
            "covered_irreducible": len(census.covered_irreducible),
            "covered_split": len(census.covered_split),
            "uncovered": [list(p) for p in sorted(census.uncovered)],
        }
    }


_COMMANDS = {
    "poly.check": report_poly_check,
    "poly.dual": report_poly_dual,
    "poly.points": report_poly_points,
    "poly.faces": report_poly_faces,
    "poly.dump": report_poly_dump,
    "cy.hodge": report_cy_hodge,
    "cy.census": report_cy_census,
    "fan.build": report_fan_build,
    "fan.mpcp": report_fan_mpcp,
    "fan.singular": report_fan_singular,
    "fan.picard": report_fan_picard,
    "fan.nef": report_fan_nef,
    "chern.c2": report_chern_c2,
    "chern.curves": report_chern_curves,
}


def _run_one(command, path, opts):
    try:
        return 0, _COMMANDS[command](path, opts)
    except CytoricError as exc:
        return 1, {"error": str(exc)}


def _render_text(tree, indent=0):
    lines = []
    pad = "  " * indent
    if isinstance(tree, dict):
        for key, value in tree.items():
            if isinstance(value, (dict, list)) and value and not _is_scalar_list(value):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(tree, list):
        for item in tree:
            if isinstance(item, list) and _is_scalar_list(item):
                lines.append(f"{pad}- {_scalar(item)}")
            elif isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(tree)}")
    return lines


def _is_scalar_list(value):
    return isinstance(value, list) and all(
        not isinstance(x, (dict, list)) for x in value
    )


def _scalar(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(str(x) for x in value) + "]"
    return str(value)


def _execute(ctx, command, paths, opts):
    as_json = ctx.obj["json"]
    jobs = ctx.obj["jobs"]
    results = []
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_one, command, p, opts) for p in paths]
            results = [f.result() for f in futures]
    else:
        results = [_run_one(command, p, opts) for p in paths]
    status = 0
    if as_json:
        payload = []
        for path, (code, tree) in zip(paths, results):
            payload.append({"file": path, **tree})
            status = max(status, code)
        doc = payload[0] if len(payload) == 1 else payload
        click.echo(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for path, (code, tree) in zip(paths, results):
            status = max(status, code)
            if command == "poly.dump" and code == 0:
                click.echo(tree["text"], nl=False)
                continue
            if len(paths) > 1:
                click.echo(f"== {path}")
            for line in _render_text(tree):
                click.echo(line)
    ctx.exit(status)


def _common(f):
    f = click.argument("paths", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))(f)
    return f


@click.group()
@click.option("--json", "as_json", is_flag=True, help="machine-readable output with stable keys")
@click.option("--jobs", type=int, default=1, show_default=True, help="parallel workers for multiple input files")
@click.pass_context
def main(ctx, as_json, jobs):
    """Exact toolkit for reflexive polytopes and toric Calabi-Yau data."""
    if jobs < 1:
        raise click.UsageError("--jobs must be at least 1")
    ctx.obj = {"json": as_json, "jobs": jobs}


@main.group()
def poly():
    """Convex geometry: hulls, duality, reflexivity, faces, points."""


@poly.command("check")
@_common
@click.pass_context
def poly_check(ctx, paths):
    """Reflexivity and size summary."""
    _execute(ctx, "poly.check", paths, {})


@poly.command("dual")
@_common
@click.pass_context
def poly_dual(ctx, paths):
    """Vertices of the polar dual."""
    _execute(ctx, "poly.dual", paths, {})


@poly.command("points")
@_common
@click.pass_context
def poly_points(ctx, paths):
    """Lattice point census with face assignments."""
    _execute(ctx, "poly.points", paths, {})


@poly.command("faces")
@_common
@click.pass_context
def poly_faces(ctx, paths):
    """Face lattice summary with per-face point counts."""
    _execute(ctx, "poly.faces", paths, {})


@poly.command("dump")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def poly_dump(ctx, path):
    """Re-emit the parsed point list in the canonical file format."""
    _execute(ctx, "poly.dump", (path,), {})


@main.group()
def cy():
    """Hodge data of the anticanonical hypersurface."""


@cy.command("hodge")
@_common
@click.pass_context
def cy_hodge(ctx, paths):
    """h11, h12, Euler characteristic, and the count terms."""
    _execute(ctx, "cy.hodge", paths, {})


@cy.command("census")
@_common
@click.pass_context
def cy_census(ctx, paths):
    """Divisor census: irreducible, split, and skipped boundary points."""
    _execute(ctx, "cy.census", paths, {})


@main.group()
def fan():
    """Face fans, crepant refinements, and divisor audits."""


def _resolve_opt(f):
    return click.option("--resolve", is_flag=True, help="use the crepant refinement instead of the face fan")(f)


@fan.command("build")
@_common
@_resolve_opt
@click.pass_context
def fan_build(ctx, paths, resolve):
    """Construct the fan and list its maximal cones."""
    _execute(ctx, "fan.build", paths, {"resolve": resolve})


@fan.command("mpcp")
@_common
@click.pass_context
def fan_mpcp(ctx, paths):
    """Crepant simplicial refinement summary."""
    _execute(ctx, "fan.mpcp", paths, {})


@fan.command("singular")
@_common
@_resolve_opt
@click.pass_context
def fan_singular(ctx, paths, resolve):
    """Maximal cones with multiplicity above one."""
    _execute(ctx, "fan.singular", paths, {"resolve": resolve})


@fan.command("picard")
@_common
@_resolve_opt
@click.pass_context
def fan_picard(ctx, paths, resolve):
    """Picard rank over Q."""
    _execute(ctx, "fan.picard", paths, {"resolve": resolve})


@fan.command("nef")
@_common
@_resolve_opt
@click.option("--divisor", required=True, help="ray=coeff list, 'anticanonical', or '-K'")
@click.pass_context
def fan_nef(ctx, paths, resolve, divisor):
    """Q-Cartier and nef tests for a divisor."""
    _execute(ctx, "fan.nef", paths, {"resolve": resolve, "divisor": divisor})


@main.group()
def chern():
    """Second Chern class pairings and the toric curve census."""


@chern.command("c2")
@_common
@click.option("--divisor", "divisors", multiple=True, help="extra classes to audit (ray=coeff list)")
@click.pass_context
def chern_c2(ctx, paths, divisors):
    """c2 pairings against -K and each ray divisor, plus positivity audit."""
    _execute(ctx, "chern.c2", paths, {"divisors": tuple(divisors)})


@chern.command("curves")
@_common
@click.pass_context
def chern_curves(ctx, paths):
    """Classify the curves the refinement's 2-cones cut on the hypersurface."""
    _execute(ctx, "chern.curves", paths, {})


if __name__ == "__main__":
    main()

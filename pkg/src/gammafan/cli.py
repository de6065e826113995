"""Command-line surface: reproducible JSON artifacts for the full pipeline.

Every command reads a configuration file {"A": [[...]], optional "a0vee"}
and writes one JSON artifact (stdout by default).  All exact numbers are
strings ("p/q"); evaluation output is floating with an explicit
precision_bits field.  The seed is recorded in every artifact and the
encoder is canonical, so identical invocations are byte-identical.
Report commands optionally render PNG figures next to the JSON via
--figures DIR.

Exit codes: 0 success, 1 domain error (with a structured error artifact
naming the failing precondition), 2 usage error.
"""

import json
import os
import sys
from fractions import Fraction

import click

from . import gorcone, gseries, jsonio, polycone, srring, triang
from .errors import GammafanError, PreconditionFailed


def _emit(payload, command, seed, params, output):
    artifact = {"command": command, "seed": seed, "params": params}
    artifact.update(payload)
    text = jsonio.dumps(artifact)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _fail(err, output):
    payload = {
        "error": {
            "type": type(err).__name__,
            "message": str(err),
        }
    }
    if isinstance(err, PreconditionFailed):
        payload["error"]["precondition"] = err.condition
    text = jsonio.dumps(payload)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    sys.exit(1)


def _load_cfg(path):
    a, a0vee = jsonio.load_config(path)
    return triang.PointConfiguration(a, a0vee=a0vee)


def _parse_fracs(text):
    return [Fraction(part.strip()) for part in text.split(",") if part.strip()]


def _parse_ints(text):
    return [int(part.strip()) for part in text.split(",") if part.strip()]


def _parse_complexes(text):
    return [complex(part.strip().replace(" ", "")) for part in text.split(",")]


def _select_triangulation(cfg, selector, seed):
    """Resolve --triangulation: 'T<k>' label, JSON simplex list, or weights."""
    selector = selector.strip()
    if selector.upper().startswith("T") and selector[1:].isdigit():
        tris = triang.enumerate_regular(cfg, seed=seed)
        k = int(selector[1:])
        if not 1 <= k <= len(tris):
            raise click.UsageError(
                f"label {selector} out of range: {len(tris)} triangulations")
        return tris[k - 1]
    if selector.startswith("["):
        simplices = json.loads(selector)
        return triang.from_simplices(cfg, simplices, seed=seed)
    return triang.from_weight(cfg, _parse_fracs(selector))


def _triangulation_option(fn):
    return click.option(
        "--triangulation", "-t", required=True,
        help="T<k> canonical label, JSON list of maximal simplices, "
             "or comma-separated weight vector")(fn)


@click.group()
def main():
    """Exact triangulations, secondary fans, graded rings and Gamma-series."""


@main.command()
@click.argument("config", type=click.Path(exists=True))
@click.option("--output", "-o", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
def kernel(config, output, seed):
    """Saturated integer kernel basis of the configuration matrix."""
    try:
        cfg = _load_cfg(config)
        _emit({"B": jsonio.enc_int_mat(cfg.B),
               "a0vee": jsonio.enc_int_vec(cfg.a0vee)},
              "kernel", seed, {"config": os.path.basename(config)}, output)
    except GammafanError as err:
        _fail(err, output)


@main.command()
@click.argument("config", type=click.Path(exists=True))
@click.option("--weights", default=None, help="comma-separated rationals, length N-n")
@click.option("--heights", default=None, help="comma-separated positive rationals, length N")
@click.option("--output", "-o", type=click.Path(), default=None)
@click.option("--figures", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
def triangulate(config, weights, heights, output, figures, seed):
    """Triangulation from a secondary weight or from lifting heights."""
    if (weights is None) == (heights is None):
        raise click.UsageError("give exactly one of --weights or --heights")
    try:
        cfg = _load_cfg(config)
        if weights is not None:
            tri = triang.from_weight(cfg, _parse_fracs(weights))
            params = {"weights": weights}
        else:
            tri = triang.from_heights(cfg, _parse_fracs(heights))
            params = {"heights": heights}
        params["config"] = os.path.basename(config)
        payload = {"triangulation": jsonio.triangulation_dict(tri),
                   "secondary_cone": jsonio.cone_dict(tri.secondary_cone())}
        if figures:
            from . import figures as figmod
            os.makedirs(figures, exist_ok=True)
            figpath = os.path.join(figures, "triangulation.png")
            figmod.render_triangulation(cfg, tri, figpath)
            payload["figures"] = [figpath]
        _emit(payload, "triangulate", seed, params, output)
    except GammafanError as err:
        _fail(err, output)


@main.command("enumerate")
@click.argument("config", type=click.Path(exists=True))
@click.option("--output", "-o", type=click.Path(), default=None)
@click.option("--figures", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
def enumerate_cmd(config, output, figures, seed):
    """All regular triangulations plus the secondary-fan adjacency graph."""
    try:
        cfg = _load_cfg(config)
        tris = triang.enumerate_regular(cfg, seed=seed)
        edges = triang.adjacency(tris)
        labels = [f"T{i + 1}" for i in range(len(tris))]
        payload = {
            "count": len(tris),
            "triangulations": [
                dict(label=labels[i], **jsonio.triangulation_dict(t))
                for i, t in enumerate(tris)],
            "adjacency": [[labels[i], labels[j]] for i, j in edges],
        }
        if figures:
            from . import figures as figmod
            os.makedirs(figures, exist_ok=True)
            paths = []
            for i, t in enumerate(tris):
                p = os.path.join(figures, f"triangulation_{labels[i]}.png")
                figmod.render_triangulation(cfg, t, p, title=labels[i])
                paths.append(p)
            p = os.path.join(figures, "adjacency.png")
            figmod.render_adjacency(labels, edges, p)
            paths.append(p)
            payload["figures"] = paths
        _emit(payload, "enumerate", seed,
              {"config": os.path.basename(config)}, output)
    except GammafanError as err:
        _fail(err, output)


@main.command()
@click.argument("config", type=click.Path(exists=True))
@click.option("--output", "-o", type=click.Path(), default=None)
@click.option("--figures", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
def chambers(config, output, figures, seed):
    """Sign vectors of the full-dimensional chambers of the b_j arrangement."""
    try:
        cfg = _load_cfg(config)
        signs = sorted(polycone.chamber_sign_vectors(cfg.b), reverse=True)
        negation_closed = all(tuple(-s for s in v) in set(signs) for v in signs)
        payload = {
            "count": len(signs),
            "sign_vectors": [list(s) for s in signs],
            "closed_under_negation": negation_closed,
        }
        if figures:
            from . import figures as figmod
            os.makedirs(figures, exist_ok=True)
            p = os.path.join(figures, "chambers.png")
            figmod.render_sign_vectors(signs, p)
            payload["figures"] = [p]
        _emit(payload, "chambers", seed,
              {"config": os.path.basename(config)}, output)
    except GammafanError as err:
        _fail(err, output)


@main.command()
@click.argument("config", type=click.Path(exists=True))
@_triangulation_option
@click.option("--output", "-o", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
def ring(config, triangulation, output, seed):
    """Graded ring report for one triangulation."""
    try:
        cfg = _load_cfg(config)
        tri = _select_triangulation(cfg, triangulation, seed)
        r = srring.build_ring(cfg, tri)
        _emit({"ring": jsonio.ring_dict(r),
               "triangulation": jsonio.triangulation_dict(tri)},
              "ring", seed,
              {"config": os.path.basename(config), "triangulation": triangulation},
              output)
    except GammafanError as err:
        _fail(err, output)


@main.command()
@click.argument("config", type=click.Path(exists=True))
@_triangulation_option
@click.option("--beta", required=True, help="comma-separated integers, length n")
@click.option("--order", type=int, default=6, show_default=True,
              help="truncation bound on |lambda|_1")
@click.option("--output", "-o", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
def series(config, triangulation, beta, order, output, seed):
    """Truncated ring-valued Gamma-series."""
    try:
        cfg = _load_cfg(config)
        tri = _select_triangulation(cfg, triangulation, seed)
        r = srring.build_ring(cfg, tri)
        s = gseries.build_series(r, _parse_ints(beta), order)
        _emit({"series": jsonio.series_dict(s),
               "basis_monomials": [r.monomial_name(i) for i in range(r.total_dim)]},
              "series", seed,
              {"config": os.path.basename(config), "triangulation": triangulation,
               "beta": beta, "order": order},
              output)
    except GammafanError as err:
        _fail(err, output)


@main.command()
@click.argument("config", type=click.Path(exists=True))
@_triangulation_option
@click.option("--beta", required=True, help="comma-separated integers, length n")
@click.option("--order", type=int, default=4, show_default=True)
@click.option("--output", "-o", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
def verify(config, triangulation, beta, order, output, seed):
    """Euler/box/recursion/core-ideal verification battery, pass/fail per check."""
    try:
        cfg = _load_cfg(config)
        tri = _select_triangulation(cfg, triangulation, seed)
        r = srring.build_ring(cfg, tri)
        checks = gseries.verification_report(r, _parse_ints(beta), order, seed=seed)
        _emit({"checks": checks, "all_pass": all(c["pass"] for c in checks)},
              "verify", seed,
              {"config": os.path.basename(config), "triangulation": triangulation,
               "beta": beta, "order": order},
              output)
    except GammafanError as err:
        _fail(err, output)


@main.command()
@click.argument("config", type=click.Path(exists=True))
@_triangulation_option
@click.option("--beta", required=True, help="comma-separated integers, length n")
@click.option("--order", type=int, default=8, show_default=True)
@click.option("--z", "zpoint", default=None,
              help="comma-separated complex values, length N; default: a certified deep point")
@click.option("--precision", type=int, default=53, show_default=True)
@click.option("--check-domain/--no-check-domain", default=True, show_default=True)
@click.option("--output", "-o", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
def evaluate(config, triangulation, beta, order, zpoint, precision,
             check_domain, output, seed):
    """Numeric ring-valued value of the series at a point."""
    try:
        cfg = _load_cfg(config)
        tri = _select_triangulation(cfg, triangulation, seed)
        r = srring.build_ring(cfg, tri)
        s = gseries.build_series(r, _parse_ints(beta), order)
        if zpoint is None:
            z = gseries.deep_domain_point(tri)
        else:
            z = _parse_complexes(zpoint)
        val = gseries.evaluate(s, z, check_domain=check_domain,
                               precision=precision)
        _emit({"value_coords": [jsonio.enc_complex(complex(v)) for v in val.coords],
               "basis_monomials": [r.monomial_name(i) for i in range(r.total_dim)],
               "precision_bits": val.precision_bits,
               "tail_estimate": float(val.tail_estimate),
               "domain_margin": float(val.domain_margin),
               "z": [jsonio.enc_complex(complex(v)) for v in z]},
              "evaluate", seed,
              {"config": os.path.basename(config), "triangulation": triangulation,
               "beta": beta, "order": order, "precision": precision},
              output)
    except GammafanError as err:
        _fail(err, output)


@main.command()
@click.argument("config", type=click.Path(exists=True))
@_triangulation_option
@click.option("--degree-bound", type=int, default=3, show_default=True)
@click.option("--output", "-o", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
def gorenstein(config, triangulation, degree_bound, output, seed):
    """Reflexive Gorenstein cone report with the projected fan."""
    try:
        cfg = _load_cfg(config)
        tri = _select_triangulation(cfg, triangulation, seed)
        report = gorcone.gorenstein_report(cfg, tri)
        fan = gorcone.projected_fan(cfg, tri)
        interior_ok = gorcone.interior_identity_check(cfg, tri, degree_bound)
        _emit({"gorenstein": jsonio.gorenstein_dict(report),
               "projected_fan": jsonio.fan_dict(fan),
               "interior_identity": interior_ok,
               "interior_identity_degree_bound": degree_bound},
              "gorenstein", seed,
              {"config": os.path.basename(config), "triangulation": triangulation},
              output)
    except GammafanError as err:
        _fail(err, output)


if __name__ == "__main__":
    main()

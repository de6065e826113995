"""JSON encoding of exact values and the artifact schemas.

All exact numbers cross the CLI boundary as strings: integers as decimal
strings, rationals as "p/q" (or "p" when the denominator is 1).  Floating
values appear only in evaluation artifacts, which carry an explicit
precision_bits field.  Serialization is deterministic: keys are sorted
and list orders are canonical, so identical invocations produce
byte-identical artifacts.
"""

import json
from fractions import Fraction


def enc_int(x):
    return str(int(x))


def enc_int_vec(v):
    return [enc_int(x) for x in v]


def enc_int_mat(m):
    return [enc_int_vec(row) for row in m]


def enc_frac(x):
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def enc_frac_vec(v):
    return [enc_frac(x) for x in v]


def enc_complex(z):
    re, im = float(z.real), float(z.imag)
    sign = "+" if im >= 0 else "-"
    return f"{re!r}{sign}{abs(im)!r}i"


def dec_int(s):
    return int(s)


def dec_frac(s):
    return Fraction(str(s))


def dec_int_vec(v):
    return [int(x) for x in v]


def dec_int_mat(m):
    return [dec_int_vec(row) for row in m]


def dec_frac_vec(v):
    return [dec_frac(x) for x in v]


def dumps(obj):
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_config(path):
    """Read a configuration file: {"A": [[...]], optional "a0vee": [...]}.

    Integer entries may be given as numbers or decimal strings.
    """
    with open(path) as fh:
        raw = json.load(fh)
    a = dec_int_mat(raw["A"])
    a0vee = dec_int_vec(raw["a0vee"]) if "a0vee" in raw else None
    return a, a0vee


def cone_dict(cone):
    return {
        "ambient_dim": cone.dim,
        "generators": [enc_frac_vec(r) for r in cone.rays],
        "lineality": [enc_frac_vec(v) for v in cone.lineality],
        "inequalities": [enc_frac_vec(g) for g in cone.ineqs],
        "equations": [enc_frac_vec(e) for e in cone.eqs],
    }


def triangulation_dict(tri):
    return {
        "maximal": [list(s) for s in tri.maximal],
        "weight": enc_frac_vec(tri.weight),
        "core": list(tri.core()),
        "volumes": [int(v) for v in tri.volumes()],
        "unimodular": tri.is_unimodular(),
        "volume_product": enc_int(tri.volume_product()),
    }


def ring_dict(ring):
    reduced, relations = ring.reduced_generator_relations()
    return {
        "dims_per_degree": list(ring.dims),
        "total_dim": ring.total_dim,
        "basis_monomials": [ring.monomial_name(i) for i in range(ring.total_dim)],
        "reduced_generators": [f"c{j}" for j in reduced],
        "relations_in_reduced_generators": relations,
        "core": list(ring.tri.core()),
        "c_core_coords": enc_frac_vec(ring.core_element().coords),
    }


def series_dict(series):
    return {
        "beta": enc_int_vec(series.beta),
        "gamma0": enc_int_vec(series.gamma0),
        "order_bound": series.l_max,
        "terms": [
            {"lambda": enc_int_vec(lam), "coeff_coords": enc_frac_vec(q.coords)}
            for lam, q in sorted(series.terms.items())
        ],
    }


def parse_series_terms(ring, data):
    """Inverse of series_dict for round-trip checks."""
    terms = {}
    for entry in data["terms"]:
        lam = tuple(dec_int_vec(entry["lambda"]))
        terms[lam] = ring.element(dec_frac_vec(entry["coeff_coords"]))
    return terms


def gorenstein_dict(report):
    return {
        "a0vee": enc_int_vec(report.a0vee),
        "a0": enc_int_vec(report.a0),
        "index": report.index,
        "dual_generators": [enc_int_vec(g) for g in report.dual_generators],
        "is_reflexive": report.is_reflexive,
        "is_completely_split": report.is_completely_split,
        "boxes": {str(i): [enc_int_vec(p) for p in pts]
                  for i, pts in report.boxes.items()},
    }


def fan_dict(fan):
    return {
        "base_simplex": list(fan.base_simplex),
        "core": list(fan.core),
        "dimension": fan.dimension,
        "generators": {str(j): enc_int_vec(v) for j, v in fan.generators.items()},
        "maximal_cones": [list(c) for c in fan.maximal_cones],
        "complete": fan.complete,
        "smooth": fan.smooth,
    }

"""Batch JSON front end.

Subcommands parse a JSON input document, dispatch to the library, and emit a
deterministic JSON report (sorted keys, rationals as exact "p/q" strings).
Exit codes: 0 success, 1 malformed input, 2 violated mathematical
precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

from .coxring import CoxRing, GradedPolynomial, R1Piece, j0_piece, jacobian_piece
from .divisor import TorusInvariantDivisor
from .errors import SemitoricError, ValidationError
from .fan import Fan
from .hodge import h21_batyrev, h_p2, mirror_check, triangulation_helper
from .polytope import HPolytope, LatticePolytope, vertices_from_inequalities
from .residue import CupProduct, ResidueMap
from .threefold import ThreefoldAnalysis


# -- schema helpers -----------------------------------------------------------


def _need(doc, key, kind, path):
    if not isinstance(doc, dict) or key not in doc:
        raise ValidationError(f"{path}: missing field '{key}'")
    val = doc[key]
    if kind is int and isinstance(val, bool) or not isinstance(val, kind):
        raise ValidationError(f"{path}.{key}: expected {kind.__name__}")
    return val


def _int_list(val, path):
    if not isinstance(val, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in val):
        raise ValidationError(f"{path}: expected a list of integers")
    return val


def parse_fan(doc, path="fan") -> Fan:
    rays = _need(doc, "rays", list, path)
    cones = _need(doc, "max_cones", list, path)
    rays = [_int_list(r, f"{path}.rays[{i}]") for i, r in enumerate(rays)]
    cones = [_int_list(c, f"{path}.max_cones[{i}]") for i, c in enumerate(cones)]
    return Fan(rays, cones)


def parse_polytope(doc, path="polytope") -> LatticePolytope:
    if "vertices" in doc:
        verts = [_int_list(v, f"{path}.vertices[{i}]")
                 for i, v in enumerate(doc["vertices"])]
        return LatticePolytope(verts)
    if "inequalities" in doc:
        ineqs = []
        for i, row in enumerate(doc["inequalities"]):
            n = _int_list(_need(row, "normal", list, f"{path}.inequalities[{i}]"),
                          f"{path}.inequalities[{i}].normal")
            r = _need(row, "rhs", int, f"{path}.inequalities[{i}]")
            ineqs.append((n, r))
        return vertices_from_inequalities(HPolytope(ineqs))
    raise ValidationError(f"{path}: need 'vertices' or 'inequalities'")


def parse_polynomial(doc, ring: CoxRing, path="polynomial") -> GradedPolynomial:
    terms = {}
    for i, t in enumerate(_need(doc, "terms", list, path)):
        exps = tuple(_int_list(_need(t, "exps", list, f"{path}.terms[{i}]"),
                               f"{path}.terms[{i}].exps"))
        num = _need(t, "num", int, f"{path}.terms[{i}]")
        den = t.get("den", 1)
        if not isinstance(den, int) or den == 0:
            raise ValidationError(f"{path}.terms[{i}].den: expected a nonzero integer")
        terms[exps] = terms.get(exps, Fraction(0)) + Fraction(num, den)
    degree = None
    if "degree_rep" in doc:
        degree = ring.degree_class(_int_list(doc["degree_rep"], f"{path}.degree_rep"))
    return ring.polynomial(terms, degree)


def fan_to_json(fan: Fan):
    return {"rays": [list(r) for r in fan.rays],
            "max_cones": [sorted(c) for c in fan.max_cones]}


def q_str(x) -> str:
    return str(Fraction(x))


# -- subcommand handlers ---------------------------------------------------------


def cmd_fan_check(doc, verify):
    fan = parse_fan(_need(doc, "fan", dict, "input"))
    issues = fan.validate()
    return {
        "criterion": "fan axioms: strong convexity, common faces, completeness",
        "complete": fan.is_complete,
        "simplicial": fan.is_simplicial,
        "issues": issues,
        "n_rays": len(fan.rays),
        "n_max_cones": len(fan.max_cones),
    }


def _parse_divisor(doc):
    fan = parse_fan(_need(doc, "fan", dict, "input"))
    coeffs = _int_list(_need(doc, "coeffs", list, "input"), "input.coeffs")
    return TorusInvariantDivisor(fan, coeffs)


def cmd_divisor_analyze(doc, verify):
    div = _parse_divisor(doc)
    out = {"criterion": "support-function convexity classification of a divisor",
           "cartier": div.is_cartier()}
    if not out["cartier"]:
        return out
    out["globally_generated"] = div.is_globally_generated()
    out["ample"] = div.is_strictly_convex()
    out["semiample"] = div.is_semiample()
    poly = div.section_polytope()
    out["section_polytope"] = {
        "dim": poly.dim,
        "vertices": sorted([q_str(x) for x in v] for v in poly.vertices),
        "lattice_points": len(poly.lattice_points()) if not poly.is_empty else 0,
    }
    if out["globally_generated"]:
        out["top_self_intersection"] = q_str(div.degree())
    if verify:
        out["verification"] = {
            "nakai_globally_generated_matches": div.nakai_globally_generated()
            == out["globally_generated"],
            "nakai_ample_matches": div.nakai_ample() == out["ample"],
        }
    return out


def cmd_divisor_sigma_d(doc, verify):
    div = _parse_divisor(doc)
    coarse = div.sigma_d()
    return {
        "criterion": "coarsened fan of a semiample divisor; three constructions agree",
        "fan": fan_to_json(coarse),
        "pushforward_coeffs": list(div.pushforward(coarse).coeffs),
    }


def cmd_divisor_nakai(doc, verify):
    div = _parse_divisor(doc)
    curves = []
    for tau in div.fan.cones(div.fan.dim - 1):
        curves.append({"cone": sorted(tau.ray_indices),
                       "value": q_str(div.curve_intersection(tau))})
    return {
        "criterion": "intersection-number criterion for global generation and ampleness",
        "globally_generated": div.nakai_globally_generated(),
        "ample": div.nakai_ample(),
        "curve_numbers": curves,
    }


def cmd_divisor_stratify(doc, verify):
    div = _parse_divisor(doc)
    strata = []
    for rec in div.stratify():
        strata.append({
            "cone": sorted(rec.cone.ray_indices),
            "container_rays": sorted(list(r) for r in rec.container.generators()),
            "torus_factor_dim": rec.torus_factor_dim,
        })
    return {"criterion": "orbit stratification of a regular semiample hypersurface",
            "strata": strata}


def cmd_ring_dims(doc, verify):
    fan = parse_fan(_need(doc, "fan", dict, "input"))
    ring = CoxRing(fan)
    f = parse_polynomial(_need(doc, "polynomial", dict, "input"), ring)
    entries = []
    for i, rep in enumerate(_need(doc, "degrees", list, "input")):
        gamma = ring.degree_class(_int_list(rep, f"input.degrees[{i}]"))
        s_dim = ring.piece_dim(gamma)
        r_dim = s_dim - jacobian_piece(f, gamma).dim
        r0_dim = s_dim - j0_piece(f, gamma).dim
        r1_dim_ = R1Piece(f, gamma).dim
        entries.append({"degree_rep": list(gamma.rep), "s_dim": s_dim,
                        "r_dim": r_dim, "r0_dim": r0_dim, "r1_dim": r1_dim_})
    return {"criterion": "graded dimensions of the Jacobian-type quotients",
            "entries": entries}


def cmd_residue_eval(doc, verify):
    fan = parse_fan(_need(doc, "fan", dict, "input"))
    ring = CoxRing(fan)
    sections = [parse_polynomial(s, ring, f"input.sections[{i}]")
                for i, s in enumerate(_need(doc, "sections", list, "input"))]
    argument = parse_polynomial(_need(doc, "argument", dict, "input"), ring)
    res = ResidueMap(ring, sections)
    return {
        "criterion": "toric residue normalized to the section-polytope volume",
        "residue": q_str(res.residue(argument)),
        "jacobian_residue": q_str(res.volume),
    }


def cmd_cup_pair(doc, verify):
    fan = parse_fan(_need(doc, "fan", dict, "input"))
    ring = CoxRing(fan)
    f = parse_polynomial(_need(doc, "f", dict, "input"), ring, "input.f")
    A = parse_polynomial(_need(doc, "A", dict, "input"), ring, "input.A")
    B = parse_polynomial(_need(doc, "B", dict, "input"), ring, "input.B")
    a = _need(doc, "a", int, "input")
    b = _need(doc, "b", int, "input")
    cp = CupProduct(ring, f)
    val = cp.pair(A, B, a, b)
    return {"criterion": "cup-product pairing through the Jacobian-ring trace",
            "pairing": val.to_json()}


def cmd_threefold_h3(doc, verify):
    fan = parse_fan(_need(doc, "fan", dict, "input"))
    ring = CoxRing(fan)
    f = parse_polynomial(_need(doc, "polynomial", dict, "input"), ring)
    analysis = ThreefoldAnalysis(f)
    blocks = {}
    hodge = {}
    for a in range(4):
        blocks[str(a)] = [{
            "kind": b.kind, "dim": b.dim,
            "sigma": list(b.sigma) if b.sigma else None,
            "interior_ray": b.interior_ray,
        } for b in analysis.blocks(a)]
        hodge[f"h{3 - a}{a}"] = analysis.hodge_number(a)
    grams = []
    if doc.get("gram", True):
        for a in range(4):
            g = analysis.gram(a, 3 - a)
            grams.append({
                "level_a": a, "level_b": 3 - a,
                "rank": g.rank(),
                "entries": [[v.to_json() for v in row] for row in g.entries],
            })
    out = {
        "criterion": "middle-cohomology decomposition and cup product, rank 4",
        "hodge_numbers": hodge,
        "blocks": blocks,
    }
    if grams:
        out["gram"] = grams
    return out


def cmd_hodge_h_p2(doc, verify):
    delta = parse_polytope(_need(doc, "polytope", dict, "input"))
    p = _need(doc, "p", int, "input")
    refinement = doc.get("refinement", "none")
    coarse = delta.normal_fan()
    if refinement == "mpcp":
        fine = triangulation_helper(delta.dual_polytope())
    elif refinement == "none":
        fine = coarse
    else:
        raise ValidationError("input.refinement: expected 'none' or 'mpcp'")
    return {"criterion": "subdivision-count formula for h^{d-1-p,2}",
            "p": p, "value": h_p2(delta, fine, coarse, p)}


def cmd_hodge_h21(doc, verify):
    delta = parse_polytope(_need(doc, "polytope", dict, "input"))
    return {"criterion": "lattice-point formula for h^{2,1} of a crepant "
                         "Calabi-Yau threefold hypersurface",
            "value": h21_batyrev(delta)}


def cmd_mirror_check(doc, verify):
    delta = parse_polytope(_need(doc, "polytope", dict, "input"))
    rep = mirror_check(delta)
    return {
        "criterion": "Hodge-number comparison across a 7-dimensional mirror pair",
        "h32": rep.side.value(3, 2),
        "h32_dual": rep.mirror_side.value(3, 2),
        "symmetric": rep.symmetric,
        "witnesses": rep.mirror_side.values[0].witnesses,
    }


def _fixture(name):
    ref = resources.files("semitoric") / "fixtures" / name
    return json.loads(ref.read_text())


def cmd_corpus_run(doc, verify):
    results = []

    blowup = _fixture("blowup_pullback.json")
    report = cmd_divisor_sigma_d(blowup, verify)
    p2 = parse_fan(_fixture("projective_plane.json")["fan"])
    results.append({
        "name": "blowdown of the pulled-back hyperplane class",
        "passed": parse_fan(report["fan"]) == p2,
    })

    cubic = _fixture("fermat_cubic.json")
    pair = cmd_cup_pair(cubic, verify)
    results.append({
        "name": "elliptic-curve pairing of the Fermat cubic",
        "passed": pair["pairing"] == {"rational": "1/9", "two_pi_i_exponent": 2},
    })

    quintic = _fixture("fermat_quintic.json")
    dims = cmd_ring_dims(quintic, verify)
    results.append({
        "name": "Fermat quintic graded dimensions",
        "passed": [e["r1_dim"] for e in dims["entries"]] == [1, 101, 101, 1],
    })

    sec6 = _fixture("sec6_polytope.json")
    mirror = cmd_mirror_check(sec6, verify)
    results.append({
        "name": "7-dimensional mirror-pair comparison",
        "passed": mirror["h32"] == 0 and mirror["h32_dual"] >= 1
        and not mirror["symmetric"],
    })

    crepant = _fixture("p11222_crepant.json")
    crepant.setdefault("gram", False)
    h3 = cmd_threefold_h3(crepant, verify)
    results.append({
        "name": "crepant weighted-projective threefold decomposition",
        "passed": h3["hodge_numbers"] == {"h30": 1, "h21": 86, "h12": 86, "h03": 1},
    })

    return {"criterion": "bundled regression corpus",
            "all_passed": all(r["passed"] for r in results),
            "results": results}


HANDLERS = {
    ("fan", "check"): cmd_fan_check,
    ("divisor", "analyze"): cmd_divisor_analyze,
    ("divisor", "sigma-d"): cmd_divisor_sigma_d,
    ("divisor", "nakai"): cmd_divisor_nakai,
    ("divisor", "stratify"): cmd_divisor_stratify,
    ("ring", "dims"): cmd_ring_dims,
    ("residue", "eval"): cmd_residue_eval,
    ("cup", "pair"): cmd_cup_pair,
    ("threefold", "h3"): cmd_threefold_h3,
    ("hodge", "h-p2"): cmd_hodge_h_p2,
    ("hodge", "h21"): cmd_hodge_h21,
    ("mirror", "check"): cmd_mirror_check,
    ("corpus", "run"): cmd_corpus_run,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="semitoric",
        description="Exact computations with semiample divisors and "
                    "hypersurfaces in complete toric varieties.")
    sub = parser.add_subparsers(dest="group", required=True)
    groups = {}
    for (group, action) in HANDLERS:
        if group not in groups:
            groups[group] = sub.add_parser(group).add_subparsers(
                dest="action", required=True)
        leaf = groups[group].add_parser(action)
        leaf.add_argument("--input", help="path to the JSON input document")
        leaf.add_argument("--output", default="stdout",
                          help="path for the JSON report, or 'stdout'")
        leaf.add_argument("--threads", type=int, default=1,
                          help="reserved; computations are deterministic")
        leaf.add_argument("--verify", action="store_true",
                          help="run redundant cross-algorithm checks")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = HANDLERS[(args.group, args.action)]
    try:
        if args.input is None:
            doc = {} if (args.group, args.action) == ("corpus", "run") else None
            if doc is None:
                raise ValidationError("--input is required for this subcommand")
        else:
            try:
                with open(args.input) as fh:
                    doc = json.load(fh)
            except OSError as exc:
                raise ValidationError(f"cannot read input: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise ValidationError(f"input is not valid JSON: {exc}") from exc
        report = handler(doc, args.verify)
    except ValidationError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except SemitoricError as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report, sort_keys=True, indent=2, separators=(",", ": "))
    if args.output == "stdout":
        print(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())

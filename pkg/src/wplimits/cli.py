"""Command-line front end: JSON problems in, schema-tagged JSON reports out.

Exit codes: 0 success, 2 precondition or genericity failure, 3 schema error,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from functools import lru_cache
from importlib import resources
from math import gcd

import jsonschema

from wplimits import __version__
from wplimits import chains as CH
from wplimits import invariants as INV
from wplimits.curvemodel import (
    HYPERELLIPTIC,
    ComponentModel,
    check_h0_drop,
    check_subset_vanishing,
    check_composition_vanishing,
    l_dim,
)
from wplimits.errors import GenericityError, InvariantBreach, PreconditionError, SchemaError
from wplimits.generate import generic_model
from wplimits.linalg import fmt_qq, to_qq
from wplimits.places import INFINITY, Point
from wplimits.selftest import run_selftest

REPORT_TAG = "wplimits/report/1"
PROBLEM_TAG = "wplimits/problem/1"

EXIT_OK, EXIT_PRECONDITION, EXIT_SCHEMA, EXIT_INVARIANT = 0, 2, 3, 4


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("wplimits").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(doc, name: str) -> None:
    try:
        jsonschema.validate(doc, load_schema(name))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{name}: {exc.message} at /{path}") from None


def jsonable(obj):
    """Recursively convert results to JSON-ready values (rationals as strings)."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        return fmt_qq(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# --- problem parsing ---------------------------------------------------------


def parse_component(doc) -> ComponentModel:
    marked = [Point(to_qq(p["x"]), to_qq(p["y"]) if "y" in p else None) for p in doc["marked"]]
    return ComponentModel(doc["kind"], tuple(doc.get("f", ())), tuple(marked))


def component_to_json(model: ComponentModel) -> dict:
    out = {"kind": model.kind, "marked": [jsonable(_point_json(p)) for p in model.marked]}
    if model.kind == HYPERELLIPTIC:
        out["f"] = [fmt_qq(c) for c in model.f]
    return out


def _point_json(p: Point) -> dict:
    return {"x": p.x} if p.y is None else {"x": p.x, "y": p.y}


def problem_profile(problem) -> INV.GenusProfile:
    pr = problem["profile"]
    return INV.GenusProfile(pr["g1"], pr["g2"], pr["delta"])


def _accept_for(profile, j):
    i = 3 - j

    def accept(model):
        if not check_h0_drop(model, i, profile):
            return False
        return profile.ell(i) == 0 or bool(check_subset_vanishing(model, i, profile))

    return accept


def build_curve(problem, profile):
    from wplimits.nodalglue import NodalCurve

    if "components" in problem:
        comps = [parse_component(c) for c in problem["components"]]
    else:
        rng = random.Random(problem.get("seed", 0))
        comps = [generic_model(rng, profile.genus(j), profile.delta, _accept_for(profile, j)) for j in (1, 2)]
    curve = NodalCurve(*comps)
    if curve.profile != profile:
        raise PreconditionError(f"components have profile {curve.profile.as_tuple()}, declared {profile.as_tuple()}")
    return curve


def default_glues(problem, profile):
    """Glues for ``L_{pi,1}, L_{pi,2}``; compatible with the power relation by default."""
    from wplimits.nodalglue import compatible_glue_pair, omega_glue

    given = problem.get("glue", {})
    out = {}
    if profile.lam is not None:
        q = [r + 2 for r in range(profile.delta)]
        g1, g2 = compatible_glue_pair(profile, q, -1, -1)
        out = {1: g1, 2: g2}
    else:
        out = {1: omega_glue(profile.delta), 2: omega_glue(profile.delta)}
    for key, glue in given.items():
        out[int(key)] = tuple(to_qq(v) for v in glue)
    return out


def _side(curve, j, coeffs, inf):
    D = curve.component(j).marked_divisor(coeffs)
    if inf:
        D = D + type(D).build(curve.component(j), {INFINITY: inf})
    return D


# --- commands ------------------------------------------------------------------


def cmd_invariants(problem, opts):
    profile, twist, table = INV.compute_profile(*problem_profile(problem).as_tuple())
    parts = INV.limit_degree_parts(profile)
    res = {
        "g": profile.g,
        "ell": list(twist.ell),
        "m": list(twist.m),
        "deg_L": [list(r) for r in table.deg_L],
        "h0_L": [list(r) for r in table.h0_L],
        "delta_coefficient_vpi": INV.vpi_delta_coefficient(profile),
        "delta_coefficient_wnu": INV.wnu_delta_coefficient(profile),
        "ramification_degrees": list(parts[:2]),
        "node_term_degree": parts[2],
        "total_degree": INV.total_limit_degree(profile),
    }
    if twist.lam is not None:
        res["lambda"] = list(twist.lam)
    if gcd(profile.g1, profile.g2) % profile.delta == 0 and profile.delta >= 2:
        res["delta_coefficient_complete"] = INV.complete_delta_coefficient(profile)
    if profile.delta == 2:
        res["component_count"] = INV.component_count_delta2(profile)
        res["irreducible"] = INV.is_V_irreducible(profile)
    return res, ["profile invariants", "limit degree identity g^3 - g"]


def _cond_json(r):
    return {"holds": r.holds, "witness": jsonable(r.witness), "values": jsonable(r.values)}


def cmd_conditions(problem, opts):
    profile = problem_profile(problem)
    curve = build_curve(problem, profile)
    budget = problem.get("budget", opts.get("budget") or 20000)
    res = {"components": [component_to_json(curve.component(j)) for j in (1, 2)]}
    for i in (1, 2):
        model = curve.component(3 - i)
        c1 = check_h0_drop(model, i, profile)
        c3 = check_subset_vanishing(model, i, profile)
        c5 = check_composition_vanishing(model, i, profile, budget)
        if c5.holds and not c3.holds or c3.holds and not c1.holds:
            raise InvariantBreach(f"condition implications violated for i={i}")
        res[f"i={i}"] = {
            "component": 3 - i,
            "h0_drop": _cond_json(c1),
            "subset_vanishing": _cond_json(c3),
            "composition_vanishing": _cond_json(c5),
        }
    return res, ["genericity conditions: h0 drop, subset vanishing, composition vanishing"]


def cmd_h0(problem, opts):
    from wplimits.nodalglue import L_pi, glued_h0

    profile = problem_profile(problem)
    curve = build_curve(problem, profile)
    glues = default_glues(problem, profile)
    res = {"components": [component_to_json(curve.component(j)) for j in (1, 2)]}
    for i in (1, 2):
        sheaf = L_pi(curve, profile, i, glues[i])
        secs = glued_h0(curve, sheaf)
        res[f"L_pi{i}"] = {
            "glue": jsonable(sheaf.glue),
            "h0": secs.dim,
            "expected": profile.g,
            "rho_rank": [secs.rho_rank(1), secs.rho_rank(2)],
            "side_h0": [secs.space1.dim, secs.space2.dim],
            "side_h0_expected": [INV.expected_h0_L(profile, i, j) for j in (1, 2)],
        }
    if "divisor" in problem:
        d = problem["divisor"]
        model = curve.component(d["component"])
        D = _side(curve, d["component"], d["coeffs"], d.get("infinity", 0))
        K = model.canonical_divisor()
        a, b = l_dim(model, D), l_dim(model, K - D)
        res["divisor"] = {
            "degree": D.degree(),
            "h0": a,
            "h0_K_minus_D": b,
            "riemann_roch": a - b == D.degree() - model.genus + 1,
        }
    return res, ["sections of the glued sheaves L_pi,i"]


def _gap_check(sys, R):
    from wplimits.ramification import gap_weight

    for place in R.divisor.rational_support():
        if gap_weight(sys, place) != R.divisor.mult(place):
            return False
    return True


def cmd_ramification(problem, opts):
    from wplimits.ramification import LinearSystem, ram_divisor

    profile = problem_profile(problem)
    curve = build_curve(problem, profile)
    twists = problem.get("twist", {})
    res = {"components": [component_to_json(curve.component(j)) for j in (1, 2)]}
    for j in (1, 2):
        n = int(twists.get(str(j), 1 + profile.ell(j)))
        sys = LinearSystem.complete(curve.component(j), curve.delta_divisor(j, n))
        R = ram_divisor(sys)
        res[f"component{j}"] = {
            "twist": n,
            "dim": sys.dim,
            "degree": sys.degree,
            "divisor": R.to_json(),
            "plucker_degree": INV.plucker_ram_degree(sys.dim, sys.degree, curve.component(j).genus),
            "gap_check": _gap_check(sys, R),
        }
    return res, ["Wronskian ramification divisors", "Plucker degree formula"]


def cmd_limit_divisor(problem, opts):
    from wplimits.nodalglue import vpi_subspace
    from wplimits.ramification import assemble_limit_via_vpi, assemble_Wnu, systems_from_vpi

    profile = problem_profile(problem)
    curve = build_curve(problem, profile)
    glues = default_glues(problem, profile)
    v1 = vpi_subspace(curve, profile, 1, glues[1])
    v2 = vpi_subspace(curve, profile, 2, glues[2])
    small, big = systems_from_vpi(curve, profile, v1, v2)
    via_wnu = assemble_Wnu(curve, profile, *big)
    via_vpi = assemble_limit_via_vpi(curve, profile, *small)
    if via_wnu.divisor != via_vpi.divisor:
        raise InvariantBreach("the two limit assemblies disagree")
    g = profile.g
    res = {
        "components": [component_to_json(curve.component(j)) for j in (1, 2)],
        "glue": {"1": jsonable(glues[1]), "2": jsonable(glues[2])},
        "divisor": via_wnu.divisor.to_json(),
        "total_degree": via_wnu.total_degree,
        "expected_degree": g ** 3 - g,
        "assemblies_agree": True,
        "wnu": via_wnu.to_json(curve),
        "ramification_of_vpi": via_vpi.to_json(curve),
    }
    return res, ["limit Weierstrass divisor via W_nu", "limit Weierstrass divisor via V_pi ramification"]


def cmd_smoothable(problem, opts):
    from wplimits.nodalglue import L_pi, make_glued, smoothable_pair, smoothable_single

    profile = problem_profile(problem)
    curve = build_curve(problem, profile)
    glues = default_glues(problem, profile)
    given = problem.get("sheaves", {})
    sheaves = {}
    for i in (1, 2):
        doc = given.get(str(i))
        if doc is None:
            sheaves[i] = L_pi(curve, profile, i, glues[i])
        else:
            s1 = _side(curve, 1, doc["side1"], doc.get("side1_infinity", 0))
            s2 = _side(curve, 2, doc["side2"], doc.get("side2_infinity", 0))
            sheaves[i] = make_glued(curve, s1, s2, [to_qq(v) for v in doc["glue"]])
    res = {"sheaves": {str(i): sheaves[i].to_json() for i in (1, 2)}}
    for i in (1, 2):
        if profile.ell(i) == 0:
            continue
        r = smoothable_single(curve, profile, i, sheaves[i])
        res[f"single{i}"] = {
            "holds": r.holds,
            "failing_side": r.failing_side,
            "corrected_glue": jsonable(r.corrected_glue),
        }
    if profile.lam is not None:
        r = smoothable_pair(curve, profile, sheaves[1], sheaves[2])
        res["pair"] = {
            "holds": r.holds,
            "failing_side": r.failing_side,
            "lattice_witness": jsonable(r.lattice.witness) if r.lattice is not None else None,
        }
    return res, ["smoothability of glued sheaves"]


def cmd_orbit(problem, opts):
    from wplimits.grassmann import gcd_divisible, membership_pair, membership_single
    from wplimits.grassmann import orbit_descriptor_pair, orbit_descriptor_single
    from wplimits.nodalglue import vpi_subspace

    profile = problem_profile(problem)
    curve = build_curve(problem, profile)
    glues = default_glues(problem, profile)
    res = {"components": [component_to_json(curve.component(j)) for j in (1, 2)]}
    V = {}
    for i in (1, 2):
        if profile.ell(i) == 0:
            res[f"single{i}"] = {"kind": "trivial", "dimension": 0}
            continue
        res[f"single{i}"] = orbit_descriptor_single(curve, profile, i).to_json()
        V[i] = vpi_subspace(curve, profile, i, glues[i])
        if profile.genus(3 - i) % profile.delta:
            m = membership_single(curve, profile, i, V[i])
            res[f"single{i}"]["member"] = m.member
            res[f"single{i}"]["witness"] = jsonable(m.witness)
    if profile.lam is not None:
        res["pair"] = orbit_descriptor_pair(curve, profile).to_json()
        if not gcd_divisible(profile):
            m = membership_pair(curve, profile, V[1], V[2])
            res["pair"]["member"] = m.member
            res["pair"]["reason"] = m.reason
    return res, ["torus orbits in products of Grassmannians"]


def cmd_chain(problem, opts):
    profile = problem_profile(problem)
    mu = problem.get("mu", [1] * profile.delta)
    normal = CH.normalize_mu(mu)
    chain = CH.build_chain(profile, normal)
    i = problem.get("i", 1)
    budget = problem.get("budget", opts.get("budget") or 100000)
    res = {"mu_class": list(normal), "chain": chain.to_json()}
    if "lambda" in problem:
        lam = {v: 0 for v in chain.vertices}
        unknown = set(problem["lambda"]) - set(chain.vertices)
        if unknown:
            raise PreconditionError(f"unknown components {sorted(unknown)}")
        lam.update(problem["lambda"])
        check = CH.validate_lambda_constraints(chain, profile, i, lam)
        res["lambda"] = {
            "degrees": CH.twist_degrees(chain, lam),
            "valid": check.ok,
            "violations": list(check.violations),
        }
    search = CH.feasible_lambda_search(chain, profile, i, budget)
    res["feasible"] = {
        "i": i,
        "candidates": [dict(c) for c in search.candidates],
        "examined": search.examined,
        "budget_exhausted": search.exhausted,
        "bound": search.bound,
        "uniqueness_certified": False,
        "note": search.note,
    }
    return res, ["chain models and twist degrees"]


COMMANDS = {
    "invariants": cmd_invariants,
    "conditions": cmd_conditions,
    "h0": cmd_h0,
    "ramification": cmd_ramification,
    "limit-divisor": cmd_limit_divisor,
    "smoothable": cmd_smoothable,
    "orbit": cmd_orbit,
    "chain": cmd_chain,
}


# --- driver ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wplimits", description="Limits of Weierstrass points on two-component nodal curves.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("command", choices=sorted(COMMANDS) + ["selftest"])
    ap.add_argument("input", nargs="?", help="problem JSON file")
    ap.add_argument("--in", dest="infile", help="problem JSON file")
    ap.add_argument("--g1", type=int)
    ap.add_argument("--g2", type=int)
    ap.add_argument("--delta", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--budget", type=int)
    ap.add_argument("--size", type=int, default=5, help="selftest iterations")
    ap.add_argument("--mutate", action="store_true", help="selftest: inject a known fault")
    ap.add_argument("--out", help="also write the report here")
    return ap


def load_problem(args) -> dict:
    path = args.infile or args.input
    if path:
        try:
            with open(path) as fh:
                problem = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    else:
        problem = {}
    flags = {"g1": args.g1, "g2": args.g2, "delta": args.delta}
    if any(v is not None for v in flags.values()):
        prof = dict(problem.get("profile", {}))
        prof.update({k: v for k, v in flags.items() if v is not None})
        problem["profile"] = prof
    if args.seed is not None:
        problem["seed"] = args.seed
    if args.budget is not None:
        problem["budget"] = args.budget
    validate(problem, "problem")
    return problem


def run(args) -> tuple:
    """Return ``(exit_code, report)``."""
    report = {"schema": REPORT_TAG, "command": args.command, "status": "ok"}
    start = time.perf_counter()
    code = EXIT_OK
    try:
        if args.command == "selftest":
            seed = 0 if args.seed is None else args.seed
            summary = run_selftest(seed, args.size, mutate=args.mutate)
            report["input"] = {"seed": seed, "size": args.size, "mutate": args.mutate}
            report["results"] = summary
            report["provenance"] = ["property suite"]
            if summary["failures"]:
                report["status"] = "failed"
                code = EXIT_INVARIANT
        else:
            problem = load_problem(args)
            report["input"] = problem
            results, prov = COMMANDS[args.command](problem, {"budget": args.budget})
            report["results"] = jsonable(results)
            report["provenance"] = prov
    except SchemaError as exc:
        code = EXIT_SCHEMA
        report["status"] = "schema"
        report["error"] = {"kind": "schema", "message": str(exc)}
    except (InvariantBreach, AssertionError) as exc:
        code = EXIT_INVARIANT
        report["status"] = "invariant"
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
    except PreconditionError as exc:
        code = EXIT_PRECONDITION
        report["status"] = "precondition"
        witness = exc.witness if isinstance(exc, GenericityError) else None
        report["error"] = {"kind": type(exc).__name__, "message": str(exc), "witness": jsonable(witness)}
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    validate(report, "report")
    return code, report


def body(report: dict) -> dict:
    """The deterministic part of a report."""
    return {k: v for k, v in report.items() if k != "timing"}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, report = run(args)
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

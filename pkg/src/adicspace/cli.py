"""Command-line frontend.

Every subcommand reads JSON (or a bundled preset), computes exactly, and
prints one JSON report to stdout (or --out FILE).  Reports carry the tool
version and the sha256 of the input for reproducibility and contain no
timestamps, so identical inputs give byte-identical output.  Module errors
exit 1 with {"error": {"code", "message"}}; usage problems exit 2.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import __version__
from . import atcheck, bratteli, dimspace, labeling, rotation, stacking, walk
from .errors import AdicspaceError, UsageError
from .laurent import LaurentPoly

PRESETS = {
    "odometer": lambda depth: bratteli.odometer_diagram(depth),
    "morse": lambda depth: bratteli.morse_diagram(depth),
}


def _load_diagram(args) -> tuple:
    """Returns (diagram, input-bytes) from --preset/--k or a JSON file path."""
    if getattr(args, "preset", None):
        depth = args.depth or 8
        name = args.preset
        if name.startswith("circulant"):
            k = int(name.split(":", 1)[1]) if ":" in name else (args.k or 4)
            d = bratteli.circulant_diagram(k, depth)
        elif name in PRESETS:
            d = PRESETS[name](depth)
        else:
            raise UsageError(f"unknown preset {name!r}")
        payload = json.dumps(bratteli.diagram_to_json(d), sort_keys=True).encode()
        return d, payload
    if not getattr(args, "diagram", None):
        raise UsageError("need a diagram file or --preset")
    with open(args.diagram, "rb") as fh:
        payload = fh.read()
    return bratteli.validate_diagram(json.loads(payload)), payload


def _report(args, body: dict, payload: bytes | None = None) -> int:
    head = {"tool": {"name": "adicspace", "version": __version__}}
    if payload is not None:
        head["input_sha256"] = hashlib.sha256(payload).hexdigest()
    head.update(body)
    text = json.dumps(head, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _budget(args) -> int:
    if getattr(args, "budget", None):
        return args.budget
    env = os.environ.get("ADICSPACE_BUDGET")
    return int(env) if env else atcheck.DEFAULT_BUDGET


def cmd_validate(args) -> int:
    d, payload = _load_diagram(args)
    body = {
        "ok": True,
        "levels": [len(l) for l in d.levels],
        "edges": [len(e) for e in d.edges],
        "maximal_paths_per_level": [bratteli.maximal_path_count(d, n) for n in range(d.depth)],
    }
    return _report(args, body, payload)


def cmd_label(args) -> int:
    d, payload = _load_diagram(args)
    lab = labeling.label_edges(d)
    return _report(args, labeling.labeling_to_json(d, lab), payload)


def cmd_matrices(args) -> int:
    d, payload = _load_diagram(args)
    lab = labeling.label_edges(d)
    space = dimspace.build_matrices(d, lab)
    shown = space.matrices[: args.depth] if args.depth else space.matrices
    body = {"matrices": [m.to_json() for m in shown]}
    if args.product:
        try:
            lo, hi = (int(x) for x in args.product.split(".."))
        except ValueError as exc:
            raise UsageError(f"bad --product range {args.product!r}") from exc
        body["product"] = {"range": [lo, hi],
                           "matrix": dimspace.partial_product(space, lo, hi).to_json()}
    if args.norm:
        with open(args.norm) as fh:
            vec = [LaurentPoly.from_json(p) for p in json.load(fh)]
        horizon = args.horizon if args.horizon is not None else space.depth
        body["norm"] = {"horizon": horizon,
                        "value": str(dimspace.horizon_norm(space, vec, 0, horizon))}
    return _report(args, body, payload)


def cmd_walk(args) -> int:
    d, payload = _load_diagram(args)
    lab = labeling.label_edges(d)
    space = dimspace.build_matrices(d, lab)
    level = args.level if args.level is not None else space.depth
    body = {"level": level}
    exact = None
    if args.exact or not args.trials:
        exact = walk.exact_distribution(space, level, walk.WalkState(0, 0, 0))
        body["exact"] = walk.histogram_to_json(exact)
    if args.trials:
        emp = walk.simulate(space, level, args.trials, args.seed)
        body["empirical"] = walk.histogram_to_json(emp)
        if exact is not None:
            body["tv_distance"] = str(walk.tv_distance(exact, emp))
    return _report(args, body, payload)


def _parse_cf(args) -> rotation.CFExpansion:
    if args.cf_file:
        with open(args.cf_file) as fh:
            terms = [int(t) for t in fh.read().replace(",", " ").split()]
    elif args.cf:
        terms = [int(t) for t in args.cf.split(",")]
    else:
        raise UsageError("need --cf or --cf-file")
    return rotation.CFExpansion(terms)


def cmd_rotation(args) -> int:
    cf = _parse_cf(args)
    rule = rotation.parse_rule(args.rule) if args.rule else None
    payload = json.dumps({"cf": list(cf.terms)}, sort_keys=True).encode()
    depth = args.depth or max(1, cf.depth - 2)
    body = {"cf": list(cf.terms), "alpha": [str(cf.alpha().lo), str(cf.alpha().hi)]}
    report = rotation.summability_report(cf, rule)
    body["summability"] = {
        "partial_sum": str(report.partial_sum),
        "verdict": report.verdict,
        "tail_bound": None if report.tail_bound is None else str(report.tail_bound),
    }
    if args.matrices:
        body["matrices"] = [rotation.rotation_matrix(cf, n).to_json() for n in range(depth)]
    if args.polys:
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            polys = rotation.rank_one_polys(cf, depth, rule)
        body["polys"] = [p.to_json() for p in polys]
    if args.gaps:
        gaps = []
        for n in range(1, depth):
            g = rotation.rank_one_gap(cf, n)
            gaps.append({
                "n": n,
                "gap": [str(g.gap.lo), str(g.gap.hi)],
                "tail_bound": None if g.tail_bound is None else str(g.tail_bound),
            })
        body["gaps"] = gaps
    return _report(args, body, payload)


def cmd_stack(args) -> int:
    cf = _parse_cf(args)
    payload = json.dumps({"cf": list(cf.terms)}, sort_keys=True).encode()
    tower = stacking.build_tower(cf, args.stage)
    body = {
        "stage": tower.stage,
        "height": tower.height,
        "width": str(tower.width),
        "total_space": str(tower.total_space),
        "intervals": [[str(lo), str(hi)] for lo, hi in tower.intervals],
    }
    if args.map is not None:
        x = Fraction(args.map)
        body["map"] = {"x": str(x), "Tx": str(stacking.tower_map(tower, x))}
    if args.compare:
        tol = Fraction(args.tolerance)
        rep = stacking.compare_with_rotation(tower, cf, args.grid, tol)
        body["compare"] = {
            "grid": rep.grid,
            "counted": rep.counted,
            "tolerance": str(rep.tolerance),
            "out_fraction": str(rep.out_fraction),
            "values": [
                {"value": str(s.value), "levels": s.level_count, "mass": s.grid_mass,
                 "distance": [str(s.distance.lo), str(s.distance.hi)]}
                for s in rep.stats
            ],
        }
    return _report(args, body, payload)


def cmd_at(args) -> int:
    budget = _budget(args)
    payload = json.dumps({"k": args.k, "M": args.M, "N": args.N}, sort_keys=True).encode()
    a = atcheck.circulant_product(args.k, args.M, args.N, budget)
    body = {"k": args.k, "M": args.M, "N": args.N,
            "column_mass": [str(v) for v in a.column_sums_at_one()]}
    if args.explicit:
        if args.k != 4:
            raise UsageError("the explicit construction is the k = 4 case")
        cand = atcheck.explicit_candidate(args.M, args.N, budget)
        phis, gs = atcheck.explicit_rank_one(args.M, args.N, budget)
        gsum = gs[0] + gs[1] + gs[2] + gs[3]
        body["explicit"] = {
            "error": str(atcheck.approximation_error(a, cand)),
            "phi_masses": [str(p.one_norm()) for p in phis],
            "g_norm": str(gsum.one_norm()),
        }
    if args.greedy:
        cand = atcheck.greedy_rank_one(a, args.greedy)
        body["greedy"] = {"iters": args.greedy,
                          "error": str(atcheck.approximation_error(a, cand))}
    return _report(args, body, payload)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="adicspace",
                                 description="exact diagram-to-dimension-space toolkit")
    ap.add_argument("--version", action="version", version=f"adicspace {__version__}")
    sub = ap.add_subparsers(dest="command")

    def common(p, diagram=True):
        if diagram:
            p.add_argument("diagram", nargs="?", help="diagram JSON file")
            p.add_argument("--preset", help="odometer | morse | circulant:K")
            p.add_argument("--depth", type=int, help="preset depth")
            p.add_argument("--k", type=int, help="circulant size for --preset circulant")
        p.add_argument("--out", help="write the report to FILE instead of stdout")
        p.add_argument("--budget", type=int, help="monomial budget cap")
        p.add_argument("--seed", type=int, default=0, help="simulation seed")

    p = sub.add_parser("validate", help="validate a diagram")
    common(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("label", help="run the inductive edge labeling")
    common(p)
    p.set_defaults(fn=cmd_label)

    p = sub.add_parser("matrices", help="emit the dimension-space matrices")
    common(p)
    p.add_argument("--product", help="partial product range a..b")
    p.add_argument("--norm", help="vector JSON file for a horizon norm")
    p.add_argument("--horizon", type=int)
    p.set_defaults(fn=cmd_matrices)

    p = sub.add_parser("walk", help="random-walk distributions")
    common(p)
    p.add_argument("--level", type=int)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--exact", action="store_true")
    p.set_defaults(fn=cmd_walk)

    p = sub.add_parser("rotation", help="continued-fraction rotation tools")
    common(p, diagram=False)
    p.add_argument("--cf", help="comma-separated partial quotients")
    p.add_argument("--cf-file", help="file with partial quotients")
    p.add_argument("--rule", help="growth rule, e.g. linear:c=1")
    p.add_argument("--depth", type=int)
    p.add_argument("--matrices", action="store_true")
    p.add_argument("--polys", action="store_true")
    p.add_argument("--gaps", action="store_true")
    p.set_defaults(fn=cmd_rotation)

    p = sub.add_parser("stack", help="cutting-and-stacking towers")
    common(p, diagram=False)
    p.add_argument("--cf", help="comma-separated partial quotients")
    p.add_argument("--cf-file", help="file with partial quotients")
    p.add_argument("--stage", type=int, required=True)
    p.add_argument("--map", help="map one rational point")
    p.add_argument("--compare", action="store_true")
    p.add_argument("--grid", type=int, default=10000)
    p.add_argument("--tolerance", default="1/10")
    p.set_defaults(fn=cmd_stack)

    p = sub.add_parser("at", help="circulant products and rank-one errors")
    common(p, diagram=False)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--explicit", action="store_true")
    p.add_argument("--greedy", type=int, default=0)
    p.set_defaults(fn=cmd_at)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if not getattr(args, "command", None):
            ap.print_usage(sys.stderr)
            return 2
        return args.fn(args)
    except UsageError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": exc.message}}),
              file=sys.stderr)
        return 2
    except AdicspaceError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": exc.message}}))
        return 1
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(json.dumps({"error": {"code": "BadInput", "message": str(exc)}}))
        return 1


if __name__ == "__main__":
    sys.exit(main())

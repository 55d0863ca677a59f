"""Command-line driver.

Every subcommand prints a JSON report (``--json``) or a short human summary,
optionally writes the JSON to ``--out``, and exits 0 when all checks pass,
1 when an identity fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import acceptance, betti, ktheory, perturb, prepotential, swcurve
from .blowup import check_blowup_gap, direct_finst, recursive_solve
from .exactalg import ArtifactError, rational_sample
from .localization import Params, constant_part, rank_one_closed_form_check, shift_law_check, zinst

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("INSTANTON_THREADS", "1")))
    except ValueError:
        return 1


def _series_json(s) -> dict:
    return s.to_json_obj()


def _need(value, name):
    if value is None:
        raise UsageError(f"--{name} is required for this subcommand")
    return value


# ---------------------------------------------------------------------------
# subcommands


def cmd_zinst(args) -> dict:
    r = _need(args.rank, "rank")
    q_order = args.q_order if args.q_order is not None else 3
    if r < 1 or q_order < 0 or args.tau_degree < 0:
        raise UsageError("rank must be >= 1 and orders nonnegative")
    checks, series = [], []
    for i in range(args.samples):
        s = rational_sample(args.seed + i, r)
        p = Params.evaluated(s)
        z = constant_part(zinst(r, p, q_order, tau_degree=args.tau_degree))
        series.append({"sample": s.as_dict(), "coefficients": _series_json(z)})
        if r == 1:
            checks.append(dict(rank_one_closed_form_check(p, q_order), sample=s.as_dict()))
        checks.append(dict(shift_law_check(r, p, min(q_order, 3), min(args.tau_degree or 2, 2)),
                           sample=s.as_dict()))
    return {"checks": checks, "series": series}


def cmd_blowup(args) -> dict:
    r = _need(args.rank, "rank")
    k = args.sector
    q_order = args.q_order if args.q_order is not None else (3 if r == 2 else 2)
    checks = []
    for i in range(args.samples):
        s = rational_sample(args.seed + i, r)
        p = Params.evaluated(s)
        rep = check_blowup_gap(r, k, p, q_order).as_dict()
        rep.update(check="blowup-gap", sample=s.as_dict())
        checks.append(rep)
        if k == 0:
            rec = constant_part(recursive_solve(r, p, q_order))
            direct = constant_part(direct_finst(r, p, q_order))
            checks.append({"check": "recursion-vs-localization", "pass": rec == direct,
                           "sample": s.as_dict()})
    return {"checks": checks}


def cmd_prepotential(args) -> dict:
    r = _need(args.rank, "rank")
    q_order = args.q_order if args.q_order is not None else 3
    a_samples = prepotential.default_a_samples(r, max(args.samples, 2), args.seed)
    exp = prepotential.expand_F(r, a_samples, q_order, args.tau_degree)
    checks = [{"check": "regularity", "pass": exp.regular, "violations": exp.violations},
              {"check": "expansion-form", "pass": exp.expansion_form_ok()},
              prepotential.check_H_vanishes(r, q_order, args.seed, args.samples)]
    out = {"expansion": exp.as_dict()}
    if r == 2:
        rec = prepotential.reconstruct_rank2(exp)
        checks.append({"check": "two-sample-reconstruction", "pass": rec["consistent"]})
        out["reconstruction"] = rec
    if args.sw_compare:
        if r != 2:
            raise UsageError("--sw-compare is available for rank 2 only")
        a = a_samples[0]
        checks += [prepotential.nekrasov_check(q_order, args.samples, args.seed),
                   prepotential.matone_check(2, q_order, max(args.samples, 2), args.seed),
                   prepotential.genus_one_check(q_order, max(args.samples, 2), args.seed),
                   prepotential.contact_term_checks(a, q_order)]
    checks.append(prepotential.recursion_agreement(r, min(q_order, 3 if r == 2 else 2), args.seed))
    out["checks"] = checks
    return out


def cmd_sw(args) -> dict:
    q_order = args.q_order if args.q_order is not None else 20
    if q_order < 0:
        raise UsageError("--q-order must be nonnegative")
    want = args.check
    checks = []
    if want in ("contact", "all"):
        quartic = swcurve.jacobi_quartic_defect(q_order)
        routes = swcurve.theta11_prime_routes(q_order)
        checks += [
            swcurve.contact_identity_check(q_order),
            swcurve.contact_identity_via_mirror(q_order),
            {"check": "jacobi-quartic", "pass": not quartic.terms},
            {"check": "theta11-prime-routes", "pass": routes[0] == routes[1] == routes[2]},
        ]
    if want in ("genus1", "all"):
        ab = swcurve.eq_AB_identities(min(q_order, 12))
        checks.append({"check": "eq-AB", "pass": bool(ab["expA4"] and ab["theta01_triple_product"]
                                                      and ab["expB8_over_disc_constant"] is not None), **ab})
        checks.append(prepotential.genus_one_check(min(q_order, 3), max(args.samples, 2), args.seed))
    if want in ("fs", "all"):
        checks.append(swcurve.fintushel_stern_check(min(q_order, 6), 10))
    return {"checks": checks,
            "u_over_a2": _series_json(swcurve.u_over_a2(min(q_order, 6))),
            "mirror_map": _series_json(swcurve.mirror_map(min(q_order, 6)))}


def cmd_betti(args) -> dict:
    q_order = args.q_order if args.q_order is not None else 4
    checks = []
    if args.ochiai:
        checks.append(betti.ochiai_check(q_order))
        return {"checks": checks}
    r = _need(args.rank, "rank")
    k = args.sector
    if not 0 <= k < r:
        raise UsageError("sector must satisfy 0 <= k < rank")
    checks.append(betti.poincare_quot_gen(r, q_order))
    checks.append(betti.poincare_blowup_gen(r, k, q_order))
    checks.append(betti.virtual_hodge_consistency(r, k, q_order))
    if r == 2 and k == 0:
        checks.append(betti.rank2_alt_check(q_order))
    polys = {n: betti.coefficients(betti.poincare_quot(r, n)) for n in range(q_order + 1)}
    return {"checks": checks, "poincare_quot": polys}


def cmd_ktheory(args) -> dict:
    q_order = args.q_order if args.q_order is not None else 6
    checks = [ktheory.hilbert_series_check(q_order, args.t_degree),
              ktheory.hbar_check(q_order, args.hbar_order)]
    return {"checks": checks}


def cmd_perturb(args) -> dict:
    if args.eps_order < 2:
        raise UsageError("--eps-order must be at least 2")
    rep = perturb.check_all(args.eps_order, args.k_range)
    return {"checks": list(rep["reports"].values())}


def _run_criterion(job):
    name, seed, samples = job
    return acceptance.run(name, seed, samples)


def cmd_all(args) -> dict:
    jobs = [(n, args.seed, args.samples) for n in acceptance.CRITERIA]
    workers = _threads()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reps = list(pool.map(_run_criterion, jobs))
    else:
        reps = [_run_criterion(j) for j in jobs]
    checks = []
    for rep in reps:
        rep = dict(rep)
        rep["check"] = rep.pop("id")
        rep.pop("seconds", None)
        checks.append(rep)
    return {"checks": checks}


COMMANDS = {
    "zinst": cmd_zinst,
    "blowup-check": cmd_blowup,
    "prepotential": cmd_prepotential,
    "sw": cmd_sw,
    "betti": cmd_betti,
    "ktheory": cmd_ktheory,
    "perturb-check": cmd_perturb,
    "all": cmd_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=3)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--out", metavar="FILE", help="write the JSON report to FILE")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = argparse.ArgumentParser(prog="instanton", description="Exact instanton-counting checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = add("zinst", "instanton partition function at sampled points")
    p.add_argument("--rank", type=int)
    p.add_argument("--q-order", type=int)
    p.add_argument("--tau-degree", type=int, default=0)

    p = add("blowup-check", "blowup equations and gap bounds")
    p.add_argument("--rank", type=int)
    p.add_argument("--sector", type=int, default=0)
    p.add_argument("--q-order", type=int)

    p = add("prepotential", "F0, H, G, F1 and the rank-2 comparisons")
    p.add_argument("--rank", type=int)
    p.add_argument("--q-order", type=int)
    p.add_argument("--tau-degree", type=int, default=0)
    p.add_argument("--sw-compare", action="store_true")

    p = add("sw", "Seiberg-Witten side q-series identities")
    p.add_argument("--q-order", "--order", type=int, dest="q_order")
    p.add_argument("--check", choices=["contact", "genus1", "fs", "all"], default="all")

    p = add("betti", "Poincare polynomial generating functions")
    p.add_argument("--rank", type=int)
    p.add_argument("--sector", type=int, default=0)
    p.add_argument("--q-order", type=int)
    p.add_argument("--ochiai", action="store_true")

    p = add("ktheory", "symmetric-product characters and conifold invariants")
    p.add_argument("--q-order", type=int)
    p.add_argument("--hbar-order", type=int, default=4, help="largest genus g")
    p.add_argument("--t-degree", type=int, default=8)

    p = add("perturb-check", "perturbation-term identities")
    p.add_argument("--eps-order", type=int, default=8)
    p.add_argument("--k-range", type=int, default=3)

    add("all", "the full acceptance suite")
    return parser


def _status(checks) -> bool:
    return all(bool(c.get("pass")) for c in checks)


def _render(report: dict) -> str:
    lines = [f"{report['command']}: {'PASS' if report['pass'] else 'FAIL'}"]
    for c in report["result"].get("checks", []):
        lines.append(f"  {'PASS' if c.get('pass') else 'FAIL'}  {c.get('check')}")
    if "wall_seconds" in report:
        lines.append(f"  wall time {report['wall_seconds']:.2f} s")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("command", "json", "out", "timing")}
    t0 = time.perf_counter()
    try:
        result = COMMANDS[args.command](args)
    except (UsageError, ArtifactError, ValueError) as exc:
        print(f"instanton {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok = _status(result.get("checks", []))
    report = {"command": args.command, "parameters": params, "seed": args.seed,
              "pass": ok, "result": result}
    if args.timing:
        report["wall_seconds"] = time.perf_counter() - t0
    text = json.dumps(_jsonable(report), sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text if args.json else _render(report))
    return EXIT_PASS if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

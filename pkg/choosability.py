#!/usr/bin/env python3
"""
choosability.py - CLI único para o toolkit de (a,b)-escolhabilidade

Subcomandos:
  oracle color | choosable   brute-force (L,b)-colouring / choosability check
  path slp | damage | color | identities
  cycle color                odd cycles at a/b >= 2 + 1/k
  pairs classify | find      couples and the (S,T) pair search
  theta solve | verify       (2m+1,m)-colouring of theta graphs
  lemma sweep                exact sweeps of F(x,y) and the binomial identities
  classify                   core, 2-choosability, 3-choice-critical family
  suite                      acceptance criteria 1-11

JSON vai para stdout (ou --out); resumos vão para stderr via logging.
Exit codes: 0 ok / found, 1 none / witness / failed check, 2 invalid input,
3 search budget exceeded, 4 internal contract breach.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from coloring_model import (
    ColoringContractError,
    InputError,
    SearchBudgetExceeded,
    check_lists,
    coloring_from_json,
    dumps_report,
    graph_from_json,
    load_json,
    lists_from_json,
    theta_from_json,
    verify_coloring,
)
from graph_classifier import is_3_choice_critical
from lemma_lab import FLOOR_OFFSETS, verify_binomial_identities, verify_main_lemma
from odd_cycle_coloring import CycleInstance, color_odd_cycle
from oracle_search import SamplerConfig, check_choosable, find_lb_coloring
from pair_search import (
    TheoremFalsified,
    check_conditions_c,
    check_conditions_t,
    classify_couples,
    find_pair,
)
from path_calculus import (
    DamageMismatch,
    as_seq,
    color_path,
    damage,
    hat_sets,
    reduced_slp_identity,
    residual_sequence,
    slp_identity_check,
)
from theta_solver import SplitInvariantError, solve
from validate_suite import (
    SUITE_TARGETS_JSON,
    SUITE_WORKERS,
    RunConfig,
    parse_only,
    run_suite,
    summary_frame,
    write_suite_xlsx,
)


logger = logging.getLogger("choosability")

# -------------------------------------------------------------------
# CONFIG (tunable via env)
# -------------------------------------------------------------------
LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")
OUTDIR = os.environ.get("OUTDIR", "output")

CONTRACT_ERRORS = (ColoringContractError, DamageMismatch, TheoremFalsified, SplitInvariantError)


# -------------------------------------------------------------------
# helpers
# -------------------------------------------------------------------
def emit(report: dict, args) -> None:
    text = dumps_report(report)
    if args.out:
        folder = os.path.dirname(args.out)
        if folder:
            os.makedirs(folder, exist_ok=True)
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info("[CLI] wrote %s", args.out)
    else:
        sys.stdout.write(text)


def xlsx_path(args, default_name: str) -> str | None:
    if not args.xlsx:
        return None
    if args.xlsx == "auto":
        os.makedirs(OUTDIR, exist_ok=True)
        return os.path.join(OUTDIR, default_name)
    return args.xlsx


def parse_colours(raw: str | None) -> frozenset[int]:
    if not raw:
        return frozenset()
    try:
        colours = [int(x) for x in raw.split(",") if x.strip()]
    except ValueError as e:
        raise InputError(f"colour sets are comma-separated integers, got {raw!r}") from e
    if any(c < 0 for c in colours):
        raise InputError(f"colours must be non-negative, got {raw!r}")
    return frozenset(colours)


def read_graph(path: str):
    return graph_from_json(load_json(path))


def read_lists(path: str):
    return lists_from_json(load_json(path))


def read_path_lists(path: str):
    lists = read_lists(path)
    # vertex order along the path is the key order of the JSON object
    return list(lists), as_seq(lists.values())


def read_theta_or_graph(args):
    if bool(args.theta) == bool(args.graph):
        raise InputError("give exactly one of --theta or --graph")
    if args.theta:
        return theta_from_json(load_json(args.theta))
    return read_graph(args.graph)


# -------------------------------------------------------------------
# oracle
# -------------------------------------------------------------------
def cmd_oracle_color(args) -> int:
    graph = read_graph(args.graph)
    lists = read_lists(args.lists)
    check_lists(graph, lists)
    phi = find_lb_coloring(graph, lists, args.b, args.node_budget)
    emit({"command": "oracle color", "b": args.b, "colorable": phi is not None,
          "coloring": phi.to_json() if phi else None}, args)
    logger.info("[ORACLE] (L,%d)-colouring %s", args.b, "found" if phi else "does not exist")
    return 0 if phi else 1


def cmd_oracle_choosable(args) -> int:
    graph = read_graph(args.graph)
    cfg = SamplerConfig(mode=args.mode, palette_size=args.palette, sample_count=args.samples,
                        seed=args.seed, node_budget=args.node_budget)
    report = check_choosable(graph, args.a, args.b, cfg)
    emit({"command": "oracle choosable", **report}, args)
    return 1 if report["verdict"] == "witness" else 0


# -------------------------------------------------------------------
# path
# -------------------------------------------------------------------
def cmd_path_slp(args) -> int:
    names, seq = read_path_lists(args.lists)
    profile = hat_sets(seq) if len(seq) % 2 == 1 else residual_sequence(seq)
    emit({"command": "path slp", "vertices": names, "profile": profile.to_json()}, args)
    logger.info("[PATH] n=%d S_L=%d", len(seq), profile.slp)
    return 0


def cmd_path_damage(args) -> int:
    names, seq = read_path_lists(args.lists)
    S, T = parse_colours(args.S), parse_colours(args.T)
    dam = damage(seq, S, T)
    lhs, rhs = reduced_slp_identity(seq, S, T)
    emit({"command": "path damage", "vertices": names, "S": sorted(S), "T": sorted(T), "damage": dam,
          "reduced_slp": {"lhs": lhs, "rhs": rhs, "ok": lhs == rhs}}, args)
    return 0


def cmd_path_color(args) -> int:
    names, seq = read_path_lists(args.lists)
    picks = color_path(seq, args.m)
    coloring = None if picks is None else {"fold": args.m, "assignment": {v: sorted(p) for v, p in zip(names, picks)}}
    emit({"command": "path color", "m": args.m, "colorable": picks is not None,
          "slp": residual_sequence(seq).slp, "needed": len(seq) * args.m, "coloring": coloring}, args)
    return 0 if picks is not None else 1


def cmd_path_identities(args) -> int:
    names, seq = read_path_lists(args.lists)
    report = slp_identity_check(seq)
    if not report["hypotheses_ok"]:
        raise InputError("; ".join(report["hypothesis_issues"]))
    emit({"command": "path identities", "vertices": names, **report}, args)
    return 0 if report["ok"] else 1


# -------------------------------------------------------------------
# cycle / pairs
# -------------------------------------------------------------------
def cmd_cycle_color(args) -> int:
    lists = read_lists(args.lists)
    phi = color_odd_cycle(CycleInstance(args.k, args.a, args.b, lists))
    emit({"command": "cycle color", "k": args.k, "a": args.a, "b": args.b, "coloring": phi.to_json()}, args)
    return 0


def cmd_pairs_classify(args) -> int:
    theta = theta_from_json(load_json(args.theta))
    lists = read_lists(args.lists)
    check_lists(theta.graph, lists)
    emit({"command": "pairs classify", "lengths": list(theta.lengths),
          **classify_couples(theta, lists).to_json()}, args)
    return 0


def cmd_pairs_find(args) -> int:
    theta = theta_from_json(load_json(args.theta))
    lists = read_lists(args.lists)
    check_lists(theta.graph, lists)
    ell = len(lists["u"])
    check = check_conditions_t if len(theta.lengths) == 4 else check_conditions_c
    conditions = check(theta, lists, ell, args.tau, args.m)
    size = args.m - args.tau
    pair = find_pair(theta, lists, size, conditions["budgets"], conditions_ok=conditions["ok"])
    emit({"command": "pairs find", "size": size, "conditions": conditions,
          "pair": pair.to_json() if pair else None}, args)
    logger.info("[PAIRS] conditions %s, pair %s", "hold" if conditions["ok"] else "fail",
                "found" if pair else "not found")
    return 0 if pair else 1


# -------------------------------------------------------------------
# theta
# -------------------------------------------------------------------
def cmd_theta_solve(args) -> int:
    target = read_theta_or_graph(args)
    lists = read_lists(args.lists)
    check_lists(target.graph if args.theta else target, lists)
    phi = solve(target, lists, args.m, args.node_budget)
    if phi is None:
        emit({"command": "theta solve", "fold": args.m, "colorable": False, "assignment": None}, args)
        logger.info("[THETA] no (L,%d)-colouring exists", args.m)
        return 1
    emit(phi.to_json(), args)
    logger.info("[THETA] coloured with certificate %s", phi.certificate)
    return 0


def cmd_theta_verify(args) -> int:
    target = read_theta_or_graph(args)
    graph = target.graph if args.theta else target
    lists = read_lists(args.lists)
    check_lists(graph, lists)
    phi = coloring_from_json(load_json(args.coloring))
    issues = verify_coloring(graph, lists, args.m, phi)
    emit({"command": "theta verify", "m": args.m, "valid": not issues, "issues": issues}, args)
    return 0 if not issues else 1


# -------------------------------------------------------------------
# lemma / classify / suite
# -------------------------------------------------------------------
def cmd_lemma_sweep(args) -> int:
    if args.identities:
        report = verify_binomial_identities(args.lmax)
    else:
        report = verify_main_lemma(args.lmax, FLOOR_OFFSETS[args.floor])
    emit(report.to_json(), args)
    out = xlsx_path(args, f"{report.name}_lmax{args.lmax}.xlsx")
    if out:
        report.write_xlsx(out)
        logger.info("[LEMMA] wrote %s", out)
    return 0 if report.ok else 1


def cmd_classify(args) -> int:
    graph = read_graph(args.graph)
    cls = is_3_choice_critical(graph)
    emit({"command": "classify", **cls.to_json()}, args)
    return 0


def cmd_suite(args) -> int:
    cfg = RunConfig(seed=args.seed, quick=args.quick, lemma_lmax=args.lemma_lmax,
                    workers=args.workers, targets_path=args.targets, only=parse_only(args.only))
    report = run_suite(cfg)
    emit(report, args)
    for line in summary_frame(report).to_string(index=False).splitlines():
        logger.info("[SUITE] %s", line)
    out = xlsx_path(args, f"suite_{cfg.profile_name}_seed{cfg.seed}.xlsx")
    if out:
        write_suite_xlsx(report, out)
        logger.info("[SUITE] wrote %s", out)
    return 0 if report["ok"] else 1


# -------------------------------------------------------------------
# MAIN
# -------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    common.add_argument("--quick", action="store_true", help="reduced ranges (suite)")
    common.add_argument("--verbose", action="store_true", help="enable debug logging")
    common.add_argument("--node-budget", type=int, default=None)

    ap = argparse.ArgumentParser(prog="choosability", description=__doc__.splitlines()[1])
    sub = ap.add_subparsers(dest="command", required=True)

    oracle = sub.add_parser("oracle").add_subparsers(dest="action", required=True)
    p = oracle.add_parser("color", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--lists", required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_oracle_color)
    p = oracle.add_parser("choosable", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--palette", type=int, default=None)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_oracle_choosable)

    path = sub.add_parser("path").add_subparsers(dest="action", required=True)
    for name, func in (("slp", cmd_path_slp), ("identities", cmd_path_identities)):
        p = path.add_parser(name, parents=[common])
        p.add_argument("--lists", required=True)
        p.set_defaults(func=func)
    p = path.add_parser("damage", parents=[common])
    p.add_argument("--lists", required=True)
    p.add_argument("--S", default="")
    p.add_argument("--T", default="")
    p.set_defaults(func=cmd_path_damage)
    p = path.add_parser("color", parents=[common])
    p.add_argument("--lists", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_path_color)

    cycle = sub.add_parser("cycle").add_subparsers(dest="action", required=True)
    p = cycle.add_parser("color", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--lists", required=True)
    p.set_defaults(func=cmd_cycle_color)

    pairs = sub.add_parser("pairs").add_subparsers(dest="action", required=True)
    p = pairs.add_parser("classify", parents=[common])
    p.add_argument("--theta", required=True)
    p.add_argument("--lists", required=True)
    p.set_defaults(func=cmd_pairs_classify)
    p = pairs.add_parser("find", parents=[common])
    p.add_argument("--theta", required=True)
    p.add_argument("--lists", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--tau", type=int, default=0)
    p.set_defaults(func=cmd_pairs_find)

    theta = sub.add_parser("theta").add_subparsers(dest="action", required=True)
    for name, func in (("solve", cmd_theta_solve), ("verify", cmd_theta_verify)):
        p = theta.add_parser(name, parents=[common])
        p.add_argument("--theta", default=None)
        p.add_argument("--graph", default=None)
        p.add_argument("--lists", required=True)
        p.add_argument("--m", type=int, required=True)
        if name == "verify":
            p.add_argument("--coloring", required=True)
        p.set_defaults(func=func)

    lemma = sub.add_parser("lemma").add_subparsers(dest="action", required=True)
    p = lemma.add_parser("sweep", parents=[common])
    p.add_argument("--lmax", type=int, default=12)
    p.add_argument("--floor", choices=sorted(FLOOR_OFFSETS), default="k+1")
    p.add_argument("--identities", dest="identities", action="store_true",
                   help="sweep the binomial identity families instead of the main inequality")
    p.add_argument("--xlsx", default=None, help="Excel path, or 'auto' for OUTDIR")
    p.set_defaults(func=cmd_lemma_sweep)

    p = sub.add_parser("classify", parents=[common])
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("suite", parents=[common])
    p.add_argument("--lemma-lmax", type=int, default=None)
    p.add_argument("--only", default=None, help="comma-separated criterion ids")
    p.add_argument("--targets", default=SUITE_TARGETS_JSON)
    p.add_argument("--workers", type=int, default=SUITE_WORKERS)
    p.add_argument("--xlsx", default=None, help="Excel path, or 'auto' for OUTDIR")
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(message)s",
    )
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        return args.func(args)
    except (InputError, OSError) as e:
        logger.error("[CLI] invalid input: %s", e)
        return 2
    except SearchBudgetExceeded as e:
        logger.error("[CLI] search budget exceeded: %s", e)
        return 3
    except CONTRACT_ERRORS as e:
        logger.critical("[CLI] internal contract breach (%s): %s", type(e).__name__, e)
        return 4


if __name__ == "__main__":
    sys.exit(main())

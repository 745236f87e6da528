"""Command line front end.

Exit codes: 0 success, 2 bad input file, 3 unsupported query or conversion,
4 the brute-force oracle contradicts the decision procedure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import oracle
from .decide import (
    UNDECIDED_NON_FROBENIUS,
    decide_lca_sensitivity,
    decide_sensitivity,
    inj_surj_from_matrix,
)
from .dynamics import (
    block_config,
    grid_from_trajectory,
    hoca_step,
    stack_to_config,
    trajectory,
    unblock_config,
    write_grid,
)
from .lmatrix import FrobeniusSpec, ShapeError, degree_span
from .models import (
    HocaRule,
    LcaRule,
    PnuCaRule,
    frobenius_to_hoca,
    frobenius_to_lca,
    hoca_to_frobenius,
    lca_to_frobenius,
    pnuca_to_lca,
    rule_to_matrix,
)
from .rulefile import SchemaError, load_config, load_rule

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_UNSUPPORTED = 3
EXIT_CONTRADICTION = 4


class Unsupported(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _as_lca(rule) -> LcaRule:
    if isinstance(rule, LcaRule):
        return rule
    if isinstance(rule, FrobeniusSpec):
        return frobenius_to_lca(rule)
    if isinstance(rule, HocaRule):
        return frobenius_to_lca(hoca_to_frobenius(rule))
    return pnuca_to_lca(rule)[0]


def sensitivity_of(rule):
    if isinstance(rule, FrobeniusSpec):
        return decide_sensitivity(rule)
    if isinstance(rule, HocaRule):
        return decide_sensitivity(hoca_to_frobenius(rule))
    return decide_lca_sensitivity(_as_lca(rule))


def analyze(rule) -> dict:
    sens = sensitivity_of(rule)
    out = {}
    if sens.status == UNDECIDED_NON_FROBENIUS:
        out["status"] = sens.status
    else:
        out.update(sens.to_json())
    out.update(inj_surj_from_matrix(rule_to_matrix(rule)).to_json())
    return out


def cmd_analyze(args) -> int:
    rule = load_rule(args.rule)
    result = analyze(rule)
    _emit(result)
    if args.strict and result.get("status") == UNDECIDED_NON_FROBENIUS:
        raise Unsupported("sensitivity is only decided for Frobenius-form or one-dimensional rules")
    return EXIT_OK


def convert(rule, target: str):
    if target == "frobenius":
        if isinstance(rule, FrobeniusSpec):
            return rule
        if isinstance(rule, HocaRule):
            return hoca_to_frobenius(rule)
        if isinstance(rule, LcaRule):
            try:
                return lca_to_frobenius(rule)
            except ShapeError as exc:
                raise Unsupported(str(exc)) from exc
    elif target == "hoca":
        if isinstance(rule, HocaRule):
            return rule
        if isinstance(rule, FrobeniusSpec):
            return frobenius_to_hoca(rule)
        if isinstance(rule, LcaRule):
            return frobenius_to_hoca(convert(rule, "frobenius"))
    elif target == "lca":
        return _as_lca(rule)
    kind = type(rule).__name__
    raise Unsupported(f"no conversion from {kind} to {target}")


def cmd_convert(args) -> int:
    rule = load_rule(args.rule)
    _emit(convert(rule, args.to).to_json())
    return EXIT_OK


def _parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("window must look like lo:hi")
    lo, hi = int(lo), int(hi)
    if lo > hi:
        raise argparse.ArgumentTypeError("window needs lo <= hi")
    return lo, hi


def cmd_simulate(args) -> int:
    rule = load_rule(args.rule)
    configs = [load_config(p) for p in args.config]
    T = args.steps
    for c in configs:
        if c.m != rule.m:
            raise SchemaError(f"configuration over Z_{c.m} for a rule over Z_{rule.m}")

    if isinstance(rule, HocaRule) and len(configs) == rule.memory and all(c.n == 1 for c in configs):
        stack = configs
        traj = [stack_to_config(stack)]
        for _ in range(T):
            stack = hoca_step(rule, stack)
            traj.append(stack_to_config(stack))
        reach = rule.radius
    elif isinstance(rule, PnuCaRule) and len(configs) == 1 and configs[0].n == 1:
        # simulate the block LCA and unfold, so the trace is on the original cells
        lca, conj = pnuca_to_lca(rule)
        M = rule_to_matrix(lca)
        blocked = trajectory(M, block_config(configs[0], conj.block), T)
        traj = [unblock_config(c) for c in blocked]
        reach = rule.radius
    else:
        if len(configs) != 1:
            raise SchemaError("expected exactly one configuration file for this rule")
        M = rule_to_matrix(rule)
        if configs[0].n != M.n:
            raise SchemaError(f"configuration has {configs[0].n} components, rule needs {M.n}")
        traj = trajectory(M, configs[0], T)
        lo_e, hi_e = degree_span(M)
        reach = max(-lo_e, hi_e)

    if args.window is not None:
        lo, hi = args.window
    else:
        sup = traj[0].support() or (0, 0)
        lo, hi = sup[0] - T * reach, sup[1] + T * reach
    grid = grid_from_trajectory(traj, lo, hi)
    paths = write_grid(grid, traj[0].m, traj[0].n, lo, hi, args.format, args.out)
    _emit(
        {
            "steps": T,
            "window": [lo, hi],
            "files": [str(p) for p in paths],
            "support": [list(c.support()) if c.support() else None for c in traj],
        }
    )
    return EXIT_OK


def run_oracle(rule, max_steps: int, growth: int, periods: int) -> dict:
    verdict = analyze(rule)
    census = oracle.power_census(rule_to_matrix(rule), max_steps, growth)
    if verdict.get("status") == UNDECIDED_NON_FROBENIUS:
        sens = "n/a"
    elif census.outcome == oracle.INCONCLUSIVE:
        sens = "inconclusive"
    elif (census.outcome == oracle.CYCLE) == verdict["equicontinuous"]:
        sens = "ok"
    else:
        sens = "contradiction"

    lca = _as_lca(rule)
    periodic = []
    for L in range(1, periods + 1):
        pm = oracle.periodic_map(lca, L)
        entry = pm.to_json()
        w = oracle.kernel_witness(pm)
        if w is not None:
            entry["kernel_witness"] = w
        periodic.append(entry)
    inj = "ok"
    if verdict["injective"] and not all(e["injective"] for e in periodic):
        inj = "contradiction"
    elif not verdict["surjective"] and all(e["surjective"] for e in periodic):
        # finite periods only give a necessary condition; absence of a witness is not a contradiction
        inj = "unwitnessed"

    if "contradiction" in (sens, inj):
        status = "contradiction"
    elif sens == "inconclusive":
        status = "inconclusive"
    else:
        status = "ok"
    return {
        "status": status,
        "agreement": {"sensitivity": sens, "injectivity": inj},
        "verdict": verdict,
        "census": census.to_json(),
        "periodic": periodic,
    }


def cmd_oracle(args) -> int:
    rule = load_rule(args.rule)
    report = run_oracle(rule, args.max_steps, args.growth_threshold, args.periods)
    _emit(report)
    return EXIT_CONTRADICTION if report["status"] == "contradiction" else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hoca-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide sensitivity, injectivity and surjectivity")
    p.add_argument("rule")
    p.add_argument("--strict", action="store_true", help="exit 3 when sensitivity is undecided")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="write a space-time trace")
    p.add_argument("rule")
    p.add_argument("config", nargs="+", help="configuration file(s); a HOCA takes one per layer")
    p.add_argument("--steps", type=int, default=16)
    p.add_argument("--window", type=_parse_window, default=None)
    p.add_argument("--format", choices=("pgm", "csv"), default="pgm")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("convert", help="convert between rule representations")
    p.add_argument("rule")
    p.add_argument("--to", choices=("hoca", "frobenius", "lca", "pnuca"), required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("oracle", help="cross-check verdicts by brute force")
    p.add_argument("rule")
    p.add_argument("--max-steps", type=int, default=oracle.DEFAULT_MAX_STEPS)
    p.add_argument("--growth-threshold", type=int, default=oracle.DEFAULT_GROWTH)
    p.add_argument("--periods", type=int, default=8)
    p.set_defaults(func=cmd_oracle)
    return parser


def _fail(code: int, msg: str) -> int:
    sys.stderr.write(json.dumps({"error": msg, "code": code}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "steps", 0) < 0:
        return _fail(EXIT_SCHEMA, "steps must be >= 0")
    try:
        return args.func(args)
    except SchemaError as exc:
        return _fail(EXIT_SCHEMA, str(exc))
    except Unsupported as exc:
        return _fail(EXIT_UNSUPPORTED, str(exc))


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface.  Every command prints one JSON document.

Exit status: 0 on success, 2 on invalid input, 3 on an internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .element import induced_element
from .errors import FullGroupError, InvariantError
from .kakutani import canonical_equivalence, weld, weld_report
from .odometer import OdometerSystem
from .oracle import compare_with_analysis, simulate_line
from .orbits import DEFAULT_DEPTH_CAP, analyze, index, is_positive
from .parser import eval_set, evaluate, parse, parse_set, to_word
from .positive import (
    canonical_conjugator,
    generator_conjugacy,
    positive_form,
    strong_sign_form,
    strongly_positive_domain,
)
from .rewriting import normal_form, pure_cycle_decomposition, reduce_word, word_of_normal_form


def _element(args):
    return evaluate(parse(args.expr), args.system)


def cmd_analyze(args):
    return analyze(_element(args), args.depth_cap).as_dict()


def cmd_normal_form(args):
    h = _element(args)
    nf = normal_form(h)
    return {
        "element": h.serialize(),
        "r": nf.r,
        "chain": [A.literal() for A in nf.chain],
        "normal_form": word_of_normal_form(nf, args.system).literal(),
    }


def cmd_reduce_word(args):
    word = to_word(parse(args.expr), args.system)
    reduced = reduce_word(word)
    return {"input": word.literal(), "reduced": reduced.literal(), "element": reduced.evaluate().serialize()}


def cmd_positive_form(args):
    h = _element(args)
    ssf = strong_sign_form(h)
    out = {"element": h.serialize(), "positive_form": positive_form(h).serialize()}
    if is_positive(h):
        out["Y_plus"] = strongly_positive_domain(h).literal()
    out["strong_sign_form"] = {
        "h_p": ssf.h_p.serialize(),
        "h_gt": ssf.h_gt.serialize(),
        "k_gt": ssf.k_gt.serialize(),
        "h_lt": ssf.h_lt.serialize(),
        "k_lt": ssf.k_lt.serialize(),
    }
    return out


def cmd_conjugator(args):
    h = _element(args)
    k = canonical_conjugator(h)
    verdict = generator_conjugacy(h)
    return {
        "element": h.serialize(),
        "positive_form": positive_form(h).serialize(),
        "conjugator": k.serialize(),
        "generator_conjugacy": verdict.kind,
    }


def cmd_pure_cycles(args):
    h = _element(args)
    return {
        "element": h.serialize(),
        "pure_cycles": [
            {"base": pc.base.literal(), "length": pc.length, "signature": list(pc.signature)}
            for pc in pure_cycle_decomposition(h)
        ],
    }


def cmd_induce(args):
    h = _element(args)
    A = eval_set(parse_set(args.on), args.system)
    return {"element": h.serialize(), "set": A.literal(), "induced": induced_element(h, A).serialize()}


def cmd_index(args):
    return index(_element(args))


def cmd_simulate(args):
    h = _element(args)
    window = args.window if args.window is not None else max(1000, 8 * h.size * max(1, h.norm()))
    stats = simulate_line(h, window)
    o_plus, o_minus = stats.orbit_counts()
    periods = sorted({int(p) for p in stats.period[stats.interior] if p})
    return {
        "element": h.serialize(),
        "window": window,
        "block": stats.block,
        "orbits_per_block": {"positive": o_plus, "negative": o_minus},
        "periods": periods,
        "mean_cocycle": round(stats.mean_cocycle, 12),
        "mismatches": compare_with_analysis(h, window),
    }


def cmd_weld(args):
    with open(args.file) as fh:
        desc = json.load(fh)
    systems = [OdometerSystem.parse(s) for s in desc["components"]]
    if len(systems) == 1:
        W = weld(systems[0], depth_cap=args.depth_cap)
    elif len(systems) == 2:
        kappa = canonical_equivalence(systems[0], desc["kappa"][0], systems[1], desc["kappa"][1])
        W = weld(systems[0], systems[1], kappa, depth_cap=args.depth_cap)
    else:
        raise FullGroupError("a weld joins one or two components")
    out = {
        "components": [s.literal() for s in systems],
        "quotient_cycle": W.quotient_cycle(),
    }
    if "spec" in desc:
        specs = [evaluate(parse(text), s) for text, s in zip(desc["spec"], systems)]
        out["report"] = weld_report(W, specs, args.depth_cap)
    return out


COMMANDS = {
    "analyze": (cmd_analyze, "cycle structure, partitions, orbit numbers and index"),
    "normal-form": (cmd_normal_form, "nested induced-generator normal form"),
    "reduce-word": (cmd_reduce_word, "reduce a word in g, g^-1 and induced generators"),
    "positive-form": (cmd_positive_form, "strongly positive form and strong sign form"),
    "conjugator": (cmd_conjugator, "canonical conjugator of a positive element"),
    "pure-cycles": (cmd_pure_cycles, "pure-cycle decomposition of a periodic element"),
    "induce": (cmd_induce, "first-return map to a clopen set"),
    "index": (cmd_index, "value of the index map"),
    "simulate": (cmd_simulate, "brute-force orbit simulation on the integer line"),
    "weld": (cmd_weld, "weld two odometers from a JSON description"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bases", nargs="+", default=["per=[2]"], help="e.g. pre=[2] per=[3]")
    common.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP)
    common.add_argument("--out", help="write the report to this file")
    parser = argparse.ArgumentParser(prog="fullgroup", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "weld":
            p.add_argument("file", help="JSON with components, kappa and optional spec")
        else:
            p.add_argument("expr", help="element expression, e.g. 'g_[1]^2 g^-1'")
        if name == "induce":
            p.add_argument("--on", required=True, help="set expression, e.g. '[0]+[11]'")
        if name == "simulate":
            p.add_argument("--window", type=int)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.system = OdometerSystem.parse(args.bases)
        result = COMMANDS[args.command][0](args)
    except FullGroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(result, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0

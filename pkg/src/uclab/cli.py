"""Command-line entry points.

Subcommands: verify (run the statement suite), rise (transcript dump),
account (per-element counting sets), bounds (average and irreducible
reports), antichain (maximize/check/scd), sample (random union-closed
families).  Exit codes: 0 all pass, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import antichain as ac
from .setfam import SetFamily, extremes, format_family, is_antichain, is_union_closed, parse_family
from .rising import Word, rise
from .accounting import hyper_accounts, rising_accounts
from .bounds import average_report, frankl_witness, irreducible_bound
from .harness import SuiteConfig, enumerate_union_closed, run_suite, sample_union_closed


def _read_family(path: str) -> SetFamily:
    with open(path) as fh:
        return parse_family(fh.read())


def _json_value(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def _emit(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, default=_json_value)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_verify(args) -> int:
    cfg = SuiteConfig(
        n=args.n,
        mode="exhaustive" if args.exhaustive else "sample",
        sample_count=args.sample,
        seed=args.seed,
        word_mode=args.words,
        checks=tuple(args.checks.split(",")) if args.checks else None,
        output=args.json,
        workers=args.workers,
    )
    report = run_suite(cfg)
    for result in report.results:
        status = "ok" if result.failures == 0 else "FAIL"
        print(f"{status:4s} {result.name}: {result.cases} cases, {result.failures} failures")
    for finding in report.findings:
        print(f"FINDING: {finding}")
    print(("all checks passed" if report.ok else "CHECK FAILURES") + f" in {report.seconds:.1f}s")
    return 0 if report.ok else 1


def _cmd_rise(args) -> int:
    family = _read_family(args.family)
    ground = family.ground
    word = Word.from_labels(args.word, ground) if args.word else Word.identity(ground.n)
    t = rise(family, word)
    _emit(
        {
            "word": word.labels(ground),
            "sections": [[ground.subset_str(m) for m in sec.members] for sec in t.sections],
            "forward": [
                [ground.subset_str(g), ground.subset_str(t.forward[g])] for g in family.members
            ],
            "image": [ground.subset_str(m) for m in t.image.members],
        },
        args.json,
    )
    return 0


def _cmd_account(args) -> int:
    family = _read_family(args.family)
    ground = family.ground
    word = Word.from_labels(args.word, ground) if args.word else Word.identity(ground.n)
    accounts = rising_accounts(family, word)
    hyper = hyper_accounts(family)
    per_element = {}
    for a in range(ground.n):
        per_element[ground.labels[a]] = {
            "spurious": [ground.subset_str(m) for m in accounts.spurious_by_element[a].members],
            "pure": [ground.subset_str(m) for m in accounts.pure_by_element[a].members],
            "hyper_spurious": [
                ground.subset_str(m) for m in hyper.hyper_spurious_by_element[a].members
            ],
            "hyper_pure": [ground.subset_str(m) for m in hyper.hyper_pure_by_element[a].members],
        }
    # construction of both reports asserts every identity they satisfy
    _emit(
        {
            "word": word.labels(ground),
            "elements": per_element,
            "identities": {
                "partition": True,
                "balance": True,
                "local_characterization": True,
                "cover_sandwich": True,
            },
        },
        args.json,
    )
    return 0


def _cmd_bounds(args) -> int:
    family = _read_family(args.family)
    ground = family.ground
    word = Word.from_labels(args.word, ground) if args.word else Word.identity(ground.n)
    if args.localizer == "min":
        localizer, _ = extremes(family)
    else:
        localizer = _read_family(args.localizer)
        localizer = SetFamily.of(ground, localizer.members)
    avg = average_report(family, localizer, word)
    irr = irreducible_bound(family, word)
    witness = frankl_witness(family) if family.members != (0,) else None
    _emit(
        {
            "word": word.labels(ground),
            "localizer": [ground.subset_str(m) for m in localizer.members],
            "average": {
                "ideal_size": avg.ideal_size,
                "length_sum": avg.length_sum,
                "average": str(avg.average),
                "bound_partition": str(avg.bound_partition),
                "partition_attained": avg.partition_attained,
                "bound_general": avg.bound_general,
                "general_holds": avg.general_holds,
                "general_attained": avg.general_attained,
                "bound_max_antichain": (
                    str(avg.bound_max_antichain) if avg.bound_max_antichain is not None else None
                ),
                "bound_invariant": str(avg.bound_invariant),
                "bound_hyper": str(avg.bound_hyper),
                "sigma_localizer": avg.sigma_s,
                "reimer_holds": avg.reimer_holds,
            },
            "irreducible": {
                "j_count": irr.j_count,
                "min_image": irr.min_image,
                "second_level": irr.second_level,
                "paper_bound": irr.paper_bound,
                "sperner_bound": irr.sperner_bound,
            },
            "frankl_witness": ground.labels[witness] if witness is not None else None,
        },
        args.json,
    )
    return 0


def _cmd_antichain(args) -> int:
    if args.antichain_cmd == "maximize":
        seed = _read_family(args.seed_family) if args.seed_family else None
        state = ac.maximize_objective(args.n, seed)
        ground = state.antichain.ground
        _emit(
            {
                "n": args.n,
                "objective": state.objective,
                "ceiling": ac.objective_ceiling(args.n),
                "antichain": [ground.subset_str(m) for m in state.antichain.members],
                "first_upward": [ground.subset_str(m) for m in state.first_upward.members],
            },
            args.json,
        )
        return 0
    if args.antichain_cmd == "check":
        family = _read_family(args.family)
        ground = family.ground
        out = {"antichain": is_antichain(family)}
        if out["antichain"]:
            state = ac.antichain_state(family)
            out.update(
                objective=state.objective,
                ceiling=ac.objective_ceiling(ground.n),
                first_upward=[ground.subset_str(m) for m in state.first_upward.members],
                augmentable=ac.is_augmentable(family),
                min_len=state.min_len,
                max_len=state.max_len,
            )
        _emit(out, args.json)
        return 0
    d = ac.symmetric_chains(args.n)
    ground = ac.middle_layer(args.n).ground
    _emit(
        {
            "n": args.n,
            "chains": [[ground.subset_str(z) for z in chain] for chain in d.chains],
        },
        args.json,
    )
    return 0


def _cmd_sample(args) -> int:
    families = sample_union_closed(args.n, args.count, args.seed)
    if args.json:
        _emit(
            [
                [fam.ground.subset_str(m) for m in fam.members]
                for fam in families
            ],
            args.json if args.json != "-" else None,
        )
    else:
        for fam in families:
            print(format_family(fam))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uclab", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", help="run the statement-verification suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--sample", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--words", choices=("all", "sample"), default=None)
    p.add_argument("--checks", default=None, help="comma-separated check ids")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", default=None, help="write the JSON report here")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("rise", help="dump a rising transcript")
    p.add_argument("--family", required=True)
    p.add_argument("--word", default=None)
    p.add_argument("--json", default=None)
    p.set_defaults(fn=_cmd_rise)

    p = sub.add_parser("account", help="per-element counting sets")
    p.add_argument("--family", required=True)
    p.add_argument("--word", default=None)
    p.add_argument("--json", default=None)
    p.set_defaults(fn=_cmd_account)

    p = sub.add_parser("bounds", help="average-length and irreducible bounds")
    p.add_argument("--family", required=True)
    p.add_argument("--word", default=None)
    p.add_argument("--localizer", default="min", help="'min' or a .fam file")
    p.add_argument("--json", default=None)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("antichain", help="antichain extremal machinery")
    asub = p.add_subparsers(dest="antichain_cmd", required=True)
    pm = asub.add_parser("maximize")
    pm.add_argument("--n", type=int, required=True)
    pm.add_argument("--seed-family", default=None)
    pm.add_argument("--json", default=None)
    pc = asub.add_parser("check")
    pc.add_argument("--family", required=True)
    pc.add_argument("--json", default=None)
    ps = asub.add_parser("scd")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--json", default=None)
    p.set_defaults(fn=_cmd_antichain)

    p = sub.add_parser("sample", help="sample union-closed families")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--json", nargs="?", const="-", default=None)
    p.set_defaults(fn=_cmd_sample)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cmd", None) == "verify" and args.words is None:
        args.words = "all" if args.n <= 3 else "sample"
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

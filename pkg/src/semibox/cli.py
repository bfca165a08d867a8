"""Command-line surface: reproducible experiments with machine-readable output.

Every report embeds the tool version, the resolved configuration and a
verification block; identical configuration (including the seed) produces
byte-identical JSON.  Exit codes: 0 success, 1 verification failure,
2 input error, 3 cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .amalgam import classify_semigroup_base, complete_amalgam, is_inverse_amalgamation_base
from .chains import (
    big_str,
    cayley_chain,
    chain_ideal_report,
    track_fixed_points,
    verify_tracked,
)
from .embeddings import build_dilation
from .errors import CapExceededError, FlowerHypothesisError
from .flower import (
    flower_partition,
    graham_houghton,
    group_pattern_witness,
    is_transversal,
    transversal_subset_search,
)
from .green import (
    eggbox_data,
    green_classes,
    green_full_transformations,
    green_partial_bijections,
    is_ideal_chain,
)
from .library import named_semigroup
from .serialize import (
    amalgam_from_json,
    canonical_json,
    flower_instance_from_json,
    flower_instance_to_json,
    partial_bijection_to_json,
    partition_from_json,
    partition_to_json,
    semigroup_from_json,
    subset_to_json,
    transformation_to_json,
)
from .transformations import PartialBijection, Transformation

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _envelope(command: str, config: dict, result, verification) -> dict:
    return {
        "tool": "semibox",
        "version": __version__,
        "command": command,
        "config": config,
        "result": result,
        "verification": verification,
    }


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_semigroup(args):
    if getattr(args, "name", None):
        return named_semigroup(args.name)
    if getattr(args, "table_file", None):
        return semigroup_from_json(_load_json(args.table_file))
    raise ValueError("need --name or --table-file")


def _parse_image_sets(text: str):
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            out.append(frozenset(int(x) - 1 for x in chunk.split(",")))
    return tuple(out)


def _parse_track(text: str, kind: str):
    tokens = [tok.strip() for tok in text.split(",")]
    if kind == "T":
        return Transformation.from_one_based(int(t) for t in tokens)
    return PartialBijection.from_one_based(
        None if t in ("-", "null", "") else int(t) for t in tokens
    )


def _green_for_family(args):
    if args.family == "T":
        return green_full_transformations(args.n)
    if args.family == "I":
        return green_partial_bijections(args.n)
    return green_classes(_load_semigroup(args))


def cmd_eggbox(args):
    green = _green_for_family(args)
    boxes = eggbox_data(green)
    d_equals_j = green.d_class == green.j_class
    result = {
        "boxes": boxes,
        "d_class_count": green.n_d,
        "ideal_chain": is_ideal_chain(green),
        "idempotents": len(green.idempotents),
        "size": green.size,
    }
    verification = {"ok": d_equals_j, "d_equals_j": d_equals_j}
    report = _envelope(
        "eggbox",
        {
            "family": args.family,
            "n": args.n,
            "table_file": args.table_file,
            "name": args.name,
            "format": args.format,
            "seed": args.seed,
        },
        result,
        verification,
    )
    rendered = None
    if args.format == "ascii":
        from .render import eggbox_ascii

        rendered = eggbox_ascii(green)
    if args.dot:
        dot_chunks = []
        for d in sorted(set(green.d_class)):
            dot_chunks.append(f"// D-class {d}\n" + graham_houghton(green, d).to_dot())
        with open(args.dot, "w") as fh:
            fh.write("\n".join(dot_chunks) + "\n")
    if args.figure:
        from .render import eggbox_figure

        eggbox_figure(green, args.figure)
    return report, rendered


def cmd_flower(args):
    inst = flower_instance_from_json(_load_json(args.instance_file))
    partition = flower_partition(inst)
    checks = {
        "transversal": [is_transversal(a, partition) for a in inst.a_sets],
        "non_transversal": [not is_transversal(b, partition) for b in inst.b_sets],
        "parts": partition.t == inst.t,
    }
    checks["ok"] = all(checks["transversal"]) and all(checks["non_transversal"]) and checks["parts"]
    report = _envelope(
        "flower",
        {"instance_file": args.instance_file, "seed": args.seed},
        {"instance": flower_instance_to_json(inst), "partition": partition_to_json(partition)},
        checks,
    )
    if args.figure:
        from .render import partition_figure

        partition_figure(partition, inst.a_sets, inst.b_sets, args.figure)
    return report, None


def cmd_witness(args):
    bundle = group_pattern_witness(
        args.n,
        args.r,
        _parse_image_sets(args.group),
        _parse_image_sets(args.nongroup),
        route=args.route,
    )
    result = {
        "route": bundle.route,
        "m": bundle.degree,
        "c_images": bundle.c.one_based(),
        "t": bundle.t,
        "head_size": bundle.head_size,
        "group_images": [subset_to_json(s) for s in bundle.group_images],
        "nongroup_images": [subset_to_json(s) for s in bundle.nongroup_images],
    }
    report = _envelope(
        "witness",
        {
            "n": args.n,
            "r": args.r,
            "group": args.group,
            "nongroup": args.nongroup,
            "route": args.route,
            "seed": args.seed,
        },
        result,
        bundle.checks,
    )
    if args.figure:
        from .render import partition_figure

        partition_figure(
            bundle.partition,
            bundle.mapped_group_sets,
            bundle.mapped_nongroup_sets,
            args.figure,
        )
    return report, None


def cmd_classify(args):
    s = _load_semigroup(args)
    if args.mode == "A":
        verdict = is_inverse_amalgamation_base(s)
    else:
        verdict = classify_semigroup_base(s)
    report = _envelope(
        "classify",
        {
            "mode": args.mode,
            "name": args.name,
            "table_file": args.table_file,
            "seed": args.seed,
        },
        {"status": verdict.status, "reason": verdict.reason},
        {"ok": True},
    )
    return report, None


def cmd_chain(args):
    stage = cayley_chain(args.kind, args.n, args.depth)
    result = {
        "kind": args.kind,
        "n": args.n,
        "depth": args.depth,
        "sizes": [big_str(s) for s in stage.sizes],
        "materialized": stage.materialized is not None,
    }
    verification = {"ok": True}
    if args.track:
        origin = _parse_track(args.track, args.kind)
        tracked = track_fixed_points(stage, origin)
        result["track"] = {
            "origin": transformation_to_json(origin)
            if args.kind == "T"
            else partial_bijection_to_json(origin),
            "fix_counts": [big_str(c) for c in tracked.fix_counts],
        }
        base_small = (args.kind == "T" and args.n <= 4) or (
            args.kind == "I" and args.n <= 4
        )
        if base_small and args.depth >= 1:
            verification = verify_tracked(stage, tracked)
            verification = {
                "ok": verification["ok"],
                "direct_counts": {
                    k: v for k, v in verification.items() if isinstance(v, dict)
                },
            }
    if args.ideal_report:
        result["ideal_report"] = chain_ideal_report(args.kind, args.n, args.depth)
    report = _envelope(
        "chain",
        {
            "kind": args.kind,
            "n": args.n,
            "depth": args.depth,
            "track": args.track,
            "ideal_report": args.ideal_report,
            "seed": args.seed,
        },
        result,
        verification,
    )
    if args.figure:
        from .render import chain_figure

        chain_figure(chain_ideal_report(args.kind, args.n, args.depth), args.figure)
    return report, None


def cmd_dilation(args):
    ctx = build_dilation(args.n, args.r)
    morphism = ctx.psi_morphism(seed=args.seed)
    verification = morphism.verify()
    samples = []
    from .transformations import all_transformations

    pool = all_transformations(args.n)
    for alpha in pool[: args.samples]:
        samples.append(
            {
                "alpha": alpha.one_based(),
                "image_points": sorted(x + 1 for x in set(ctx.psi(alpha).images)),
            }
        )
    result = {
        "Y": list(range(args.n + 1, args.n + ctx.extra + 1)),
        "epsilon": ctx.padded_idempotent.one_based(),
        "Z_size": len(ctx.z_elements) + 1,
        "target_degree": ctx.degree,
        "h_class_size": ctx.h_size,
        "psi_samples": samples,
        "verification_report": verification,
    }
    report = _envelope(
        "dilation",
        {"n": args.n, "r": args.r, "samples": args.samples, "seed": args.seed},
        result,
        {"ok": verification["ok"]},
    )
    return report, None


def cmd_dualsearch(args):
    data = _load_json(args.instance_file)
    m = int(data["m"])
    t = int(data["t"])
    require = [partition_from_json({"m": m, "blocks": b}) for b in data["require"]]
    avoid = [partition_from_json({"m": m, "blocks": b}) for b in data["avoid"]]
    found, checked = transversal_subset_search(m, t, require, avoid)
    verification = {"ok": True}
    if found is not None:
        verification = {
            "ok": all(is_transversal(found, p) for p in require)
            and all(not is_transversal(found, p) for p in avoid)
        }
    report = _envelope(
        "dualsearch",
        {"instance_file": args.instance_file, "seed": args.seed},
        {
            "found": subset_to_json(found) if found is not None else None,
            "subsets_checked": checked,
            "note": "exhaustive over this instance; no general criterion implied",
        },
        verification,
    )
    return report, None


def cmd_amalgam(args):
    am = amalgam_from_json(_load_json(args.amalgam_file))
    completion = complete_amalgam(am, max_degree=args.max_degree)
    if completion is None:
        result = {
            "found": False,
            "caveat": "not found within cap; absence is not a proof of non-embeddability",
        }
        verification = {"ok": True}
    else:
        to_json = (
            partial_bijection_to_json if completion.kind == "I" else transformation_to_json
        )
        result = {
            "found": True,
            "degree": completion.degree,
            "kind": completion.kind,
            "g1": [to_json(completion.g1[i]) for i in range(am.arm1.size)],
            "g2": [to_json(completion.g2[i]) for i in range(am.arm2.size)],
        }
        verification = completion.verification
    report = _envelope(
        "amalgam",
        {
            "amalgam_file": args.amalgam_file,
            "max_degree": args.max_degree,
            "seed": args.seed,
        },
        result,
        verification,
    )
    return report, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semibox",
        description="finite semigroup workbench: egg-boxes, witnesses, amalgams, chains",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, figure=False):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write the report here instead of stdout")
        if figure:
            p.add_argument("--figure", help="render a figure to this file")

    p = sub.add_parser("eggbox", help="egg-box decomposition of T_n, I_n or a custom table")
    p.add_argument("--family", choices=["T", "I", "custom"], default="T")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--table-file")
    p.add_argument("--name", help="named semigroup from the library")
    p.add_argument("--format", choices=["json", "ascii"], default="json")
    p.add_argument("--dot", help="write Graham-Houghton graphs as DOT here")
    common(p, figure=True)
    p.set_defaults(func=cmd_eggbox)

    p = sub.add_parser("flower", help="solve a transversal-pattern instance from a file")
    p.add_argument("--instance-file", required=True)
    common(p, figure=True)
    p.set_defaults(func=cmd_flower)

    p = sub.add_parser("witness", help="group/non-group pattern witness in one R-class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--group", required=True, help="semicolon-separated image sets, e.g. '1,2;1,3'")
    p.add_argument("--nongroup", required=True)
    p.add_argument("--route", choices=["auto", "direct", "dilation"], default="auto")
    common(p, figure=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("classify", help="amalgamation-base membership")
    p.add_argument("--mode", choices=["A", "B"], required=True)
    p.add_argument("--table-file")
    p.add_argument("--name")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("chain", help="iterated right-regular tower stages")
    p.add_argument("--kind", choices=["T", "I"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--track", help="base element, 1-based images ('-' for undefined)")
    p.add_argument("--ideal-report", action="store_true")
    common(p, figure=True)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("dilation", help="build the H-class dilation of T_n at rank r")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--samples", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_dilation)

    p = sub.add_parser("dualsearch", help="brute-force dual transversal search")
    p.add_argument("--instance-file", required=True)
    common(p)
    p.set_defaults(func=cmd_dualsearch)

    p = sub.add_parser("amalgam", help="search for an amalgam completion")
    p.add_argument("--amalgam-file", required=True)
    p.add_argument("--max-degree", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_amalgam)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, rendered = args.func(args)
    except FlowerHypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    text = rendered if rendered is not None else canonical_json(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not report["verification"].get("ok", True):
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``refldisc <command> --group <descriptor> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from .groups import (
    ReflectionGroup,
    UnsupportedGroup,
    available_characters,
    build_group,
    find_character,
    parse_descriptor,
)
from .invariants import discriminant
from .isotypic import PreconditionError, abar_hilbert, m_series, molien_isotypic, rank_report
from .linalg import PolyMatrix
from .matfact import (
    discriminant_mf,
    isotypic_blocks,
    match_swallowtail,
    monomial_log_mf,
    mult_matrix,
    verify_mf,
)
from .mckay import abar_quiver, mckay_quiver_chars, mckay_quiver_sn, to_dot
from .scalars import fmt_scalar

log = logging.getLogger("refldisc")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3
MATFACT_LIMIT = 24


class UsageError(Exception):
    pass


class Unsupported(Exception):
    pass


def _num(q) -> int | str:
    q = q if not hasattr(q, "denominator") or q.denominator != 1 else int(q)
    return q if isinstance(q, int) else fmt_scalar(q)


def _poly_json(p) -> dict:
    d = p.to_json()
    return {"variables": d["variables"], "weights": d["weights"], "terms": d["terms"], "text": d["text"]}


# --- commands ---------------------------------------------------------------


def cmd_group(group: ReflectionGroup, args) -> dict:
    return {
        "group": group.descriptor,
        "order": group.order,
        "dim": group.dim,
        "variables": list(group.ring.names),
        "degrees": list(group.degrees),
        "m": group.m,
        "m1": group.m1,
        "mirrors": [str(group.mirror_form(k)) for k in range(group.m1)],
        "mirror_orders": list(group.mirror_orders),
    }


def _text_group(r: dict) -> str:
    lines = [
        f"group    {r['group']}",
        f"|G|      {r['order']}",
        f"degrees  {r['degrees']}",
        f"m        {r['m']}",
        f"m1       {r['m1']}",
        "mirrors:",
    ]
    lines += [f"  {h}  (order {o})" for h, o in zip(r["mirrors"], r["mirror_orders"])]
    return "\n".join(lines)


def cmd_discriminant(group: ReflectionGroup, args) -> dict:
    data = discriminant(group)
    out = {
        "group": group.descriptor,
        "basic_invariants": [str(f) for f in data.inv.polys],
        "J": _poly_json(data.J),
        "z": _poly_json(data.z),
        "delta": _poly_json(data.delta),
        "unit": fmt_scalar(data.unit),
        "jacobian_unit": fmt_scalar(data.jacobian_unit),
    }
    if group.family == "sym-essential" and group.params == (4,):
        out["swallowtail_match"] = match_swallowtail(data.delta).to_json()
    return out


def _text_discriminant(r: dict) -> str:
    lines = [f"group  {r['group']}"]
    lines += [f"f{i + 1}     {f}" for i, f in enumerate(r["basic_invariants"])]
    lines += [
        f"J      {r['J']['text']}",
        f"z      {r['z']['text']}",
        f"Delta  {r['delta']['text']}",
        f"unit   {r['unit']}",
        f"J = {r['jacobian_unit']} * prod of mirror forms to the power (order - 1)",
    ]
    if "swallowtail_match" in r:
        sm = r["swallowtail_match"]
        lines.append(f"swallowtail match: {'yes' if sm['matches'] else 'no'}")
        lines.append(f"  normal form (computed):  {sm['computed_normal_form']}")
        lines.append(f"  normal form (reference): {sm['reference_normal_form']}")
    return "\n".join(lines)


def cmd_ranks(group: ReflectionGroup, args) -> dict:
    try:
        report = rank_report(group, per_component=args.per_component)
    except PreconditionError as exc:
        raise Unsupported(str(exc)) from exc
    return report.to_json()


def _text_ranks(r: dict) -> str:
    lines = [f"group  {r['group']}"]
    if r["labels"]:
        lines.append(f"{'label':<14}{'dim':>5}{'rank':>6}")
        lines += [f"{e['name']:<14}{e['dim']:>5}{e['rank']:>6}" for e in r["labels"]]
    if r["rank_abar"] is not None:
        lines.append(f"rank Abar = {r['rank_abar']}")
    for c in r["components"]:
        lines.append(f"component r={c['r']} orbit={c['orbit_size']} rank={c['rank']}")
    return "\n".join(lines)


def cmd_hilbert(group: ReflectionGroup, args) -> dict:
    try:
        chars = [find_character(group, args.label)] if args.label else available_characters(group)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    out = {"group": group.descriptor, "labels": []}
    for chi in chars:
        out["labels"].append(
            {
                "name": chi.name,
                "dim": chi.dim,
                "S_series": molien_isotypic(group, chi).to_json(),
                "M_series": m_series(group, chi).to_json(),
            }
        )
    if args.abar:
        out["abar"] = abar_hilbert(group).to_json()
    return out


def _text_hilbert(r: dict) -> str:
    lines = [f"group  {r['group']}"]
    for e in r["labels"]:
        lines.append(f"{e['name']} (dim {e['dim']}):")
        lines.append(f"  H_S = {e['S_series']['text']}")
        lines.append(f"  H_M = {e['M_series']['text']}")
    if "abar" in r:
        lines.append(f"H_Abar = {r['abar']['text']}")
    return "\n".join(lines)


def cmd_matfact(group: ReflectionGroup, args) -> dict:
    if group.order > MATFACT_LIMIT and not args.force:
        raise Unsupported(f"|G| = {group.order} exceeds {MATFACT_LIMIT}; pass --force to run anyway")
    data = discriminant(group)
    mf = discriminant_mf(group)
    MJ = mult_matrix(group, "J")
    ident = PolyMatrix.identity(data.inv.uring, group.order, data.delta)
    out = {
        "group": group.descriptor,
        "size": group.order,
        "delta": str(data.delta),
        "unit": fmt_scalar(data.unit),
        "verified_zJ": verify_mf(mf),
        "factorization": mf.to_json(),
    }
    if group.is_true_reflection_group:
        out["verified_J_squared"] = (MJ * MJ) == ident * data.jacobian_unit
    if group.family != "monomial":
        out["blocks"] = [
            {"label": b.label, "target": b.target, "size": b.size, "verified": verify_mf(b.mf)}
            for b in isotypic_blocks(group)
        ]
    else:
        r, n = group.params
        log_mf = monomial_log_mf(r, n)
        out["log_factorizations"] = [
            {"label": p.label, "size": p.size, "verified": verify_mf(p)} for p in log_mf.pairs
        ]
    return out


def _text_matfact(r: dict) -> str:
    lines = [f"group  {r['group']}", f"size   {r['size']}", f"Delta  {r['delta']}", f"unit   {r['unit']}"]
    lines.append(f"M_z M_J = M_J M_z = Delta I: {r['verified_zJ']}")
    if "verified_J_squared" in r:
        lines.append(f"M_J^2 = c Delta I: {r['verified_J_squared']}")
    for b in r.get("blocks", []):
        lines.append(f"block {b['label']} -> {b['target']}: size {b['size']}, verified {b['verified']}")
    for b in r.get("log_factorizations", []):
        lines.append(f"{b['label']} mu: size {b['size']}, verified {b['verified']}")
    return "\n".join(lines)


def _quiver(group: ReflectionGroup, args):
    if group.family == "monomial":
        raise Unsupported("McKay quivers need a full character table")
    if group.family in ("sym", "sym-essential"):
        q = mckay_quiver_sn(group.params[0])
        if mckay_quiver_chars(group) != q:
            raise RuntimeError("character and combinatorial quivers disagree")
    else:
        q = mckay_quiver_chars(group)
    if args.abar:
        det = find_character(group, "det").name
        q = abar_quiver(q, det)
    return q


def cmd_quiver(group: ReflectionGroup, args) -> dict:
    return dict(group=group.descriptor, **_quiver(group, args).to_json())


def _text_quiver(r: dict) -> str:
    lines = [f"group  {r['group']}", "vertices: " + " ".join(r["vertices"])]
    lines += [f"  {a['from']} -> {a['to']}  x{a['mult']}" for a in r["arrows"]]
    lines += [f"  loop at {v}  x{c}" for v, c in r["loops"].items()]
    return "\n".join(lines)


COMMANDS = {
    "group": (cmd_group, _text_group),
    "discriminant": (cmd_discriminant, _text_discriminant),
    "ranks": (cmd_ranks, _text_ranks),
    "hilbert": (cmd_hilbert, _text_hilbert),
    "matfact": (cmd_matfact, _text_matfact),
    "quiver": (cmd_quiver, _text_quiver),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refldisc",
        description="Discriminants, matrix factorizations, isotypical ranks and McKay quivers of reflection groups.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("descriptor", nargs="?", help="group descriptor (alternative to --group)")
    parser.add_argument("--group", "-g", help='"cyclic:d", "sym:n", "sym-essential:n" or "monomial:r,n"')
    parser.add_argument("--format", "-f", choices=["text", "json", "dot"], default="text")
    parser.add_argument("--label", help="character label, e.g. 'triv', 'det', '(3,1)' or 'chi2'")
    parser.add_argument("--out", "-o", help="write the report to this file")
    parser.add_argument("--per-component", action="store_true", help="rank data per mirror orbit")
    parser.add_argument("--abar", action="store_true", help="quiver/series of Abar (drop the det vertex)")
    parser.add_argument("--force", action="store_true", help=f"allow matfact beyond |G| = {MATFACT_LIMIT}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str]:
    """Run the CLI; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    desc = args.group or args.descriptor
    if not desc:
        return EXIT_USAGE, "", "error: a group descriptor is required (--group)\n"
    if args.group and args.descriptor and args.group != args.descriptor:
        return EXIT_USAGE, "", "error: conflicting group descriptors\n"
    try:
        family, params = parse_descriptor(desc)
    except ValueError as exc:
        return EXIT_USAGE, "", f"error: {exc}\n"
    if args.format == "dot" and args.command != "quiver":
        return EXIT_USAGE, "", "error: --format dot is only available for the quiver command\n"
    try:
        group = build_group(family, *params)
    except ValueError as exc:
        return EXIT_USAGE, "", f"error: {exc}\n"
    fn, text_fn = COMMANDS[args.command]
    log.info("running %s on %s", args.command, group.descriptor)
    try:
        if args.command == "quiver" and args.format == "dot":
            text = to_dot(_quiver(group, args), group.descriptor)
        else:
            report = fn(group, args)
            text = json.dumps(report, indent=2) + "\n" if args.format == "json" else text_fn(report) + "\n"
    except UsageError as exc:
        return EXIT_USAGE, "", f"error: {exc}\n"
    except (Unsupported, UnsupportedGroup) as exc:
        return EXIT_UNSUPPORTED, "", f"unsupported: {exc}\n"
    except Exception as exc:  # internal or verification failure
        log.debug("failure", exc_info=True)
        return EXIT_FAIL, "", f"failure: {type(exc).__name__}: {exc}\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return EXIT_OK, "", ""
    return EXIT_OK, text, ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

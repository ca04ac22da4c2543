"""Command-line entry point: ``eqpatch <group> <command> [options]``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
3 an enumeration budget or degree bound was exhausted.

Reports are JSON with sorted keys.  They are printed to stdout (``--format``
json or text) and written to ``--out`` (default: ``$EQPATCH_OUT`` if set).
The ``timestamp`` field is the only run-dependent value.
"""
from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import birkhoff as bk
from . import modcat as mc
from . import serialize as ser
from . import suites
from .equalizer import EqMorphism, bl_eq_context, eq_cokernel, eq_kernel, identity_context, two_chart_eq_context
from .errors import BoundExceeded, BudgetExceeded, EqPatchError, ParseError
from .fincat import verify_universal_property
from .matrix import smith_normal_form
from .modcat import ModuleMap
from .patching import bl_context, glue
from .rings import field_by_name

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
OUT_ENV = "EQPATCH_OUT"


@dataclass
class RunConfig:
    group: str
    command: str
    seed: Optional[int] = None
    samples: Optional[int] = None
    base_field: str = "f5"
    context: str = "bl"
    input: list = field(default_factory=list)
    options: dict = field(default_factory=dict)
    out: Optional[str] = None
    format: str = "text"


class UsageError(Exception):
    pass


# -- command implementations ---------------------------------------------------------------


def _need_seed(cfg: RunConfig) -> int:
    if cfg.seed is None:
        raise UsageError(f"{cfg.group} {cfg.command} is randomized and needs --seed")
    return cfg.seed


def _inputs(cfg: RunConfig, n: int) -> list:
    if len(cfg.input) != n:
        raise UsageError(f"{cfg.group} {cfg.command} expects {n} input file(s), got {len(cfg.input)}")
    return [ser.load_json(p) for p in cfg.input]


def _eq_context(name: str, k):
    if name == "bl":
        return bl_eq_context(k)
    if name == "p1":
        return two_chart_eq_context(k)
    if name == "id":
        return identity_context(k)
    raise UsageError(f"unknown context {name!r}")


def cmd_fincat_verify(cfg: RunConfig) -> dict:
    if cfg.input:
        (d,) = _inputs(cfg, 1)
        C0 = ser.decode_fincat(ser._get(d, "source", ""), "$.source")
        C1 = ser.decode_fincat(ser._get(d, "target", ""), "$.target")
        test = ser.decode_fincat(ser._get(d, "test", ""), "$.test")
        d0 = ser.decode_functor(C0, C1, ser._get(d, "d0", ""), "$.d0")
        d1 = ser.decode_functor(C0, C1, ser._get(d, "d1", ""), "$.d1")
        rep = verify_universal_property(d0, d1, test, budget=cfg.options.get("budget") or 2_000_000)
        return {"suite": "fincat", **rep.as_dict()}
    return suites.fincat_suite(_need_seed(cfg), cfg.samples or 20)


def cmd_modcat_snf(cfg: RunConfig) -> dict:
    (d,) = _inputs(cfg, 1)
    m = ser.decode_matrix(d, "$")
    U, D, V = smith_normal_form(m)
    ok = (U @ m @ V) == D
    return {"U": ser.encode_matrix(U), "D": ser.encode_matrix(D), "V": ser.encode_matrix(V), "ok": ok}


def cmd_modcat_tensor(cfg: RunConfig) -> dict:
    a, b = _inputs(cfg, 2)
    M, N = ser.decode_module(a, "$0"), ser.decode_module(b, "$1")
    T = mc.tensor(M, N)
    inv = mc.invariants(T)
    return {"tensor": ser.encode_module(T), "invariants": _inv(inv), "ok": True}


def cmd_modcat_hom(cfg: RunConfig) -> dict:
    a, b = _inputs(cfg, 2)
    M, N = ser.decode_module(a, "$0"), ser.decode_module(b, "$1")
    H, maps = mc.hom_set_basis(M, N)
    return {"hom": ser.encode_module(H), "invariants": _inv(mc.invariants(H)), "generators": [ser.encode_map(f) for f in maps], "ok": True}


def _inv(inv: mc.Invariants) -> dict:
    return {"torsion": [ser.encode_elem(x) for x in inv.torsion], "rank": inv.rank}


def cmd_eq_coherence(cfg: RunConfig) -> dict:
    return suites.coherence_suite(_need_seed(cfg), cfg.samples or 100, cfg.base_field)


def cmd_eq_exactness(cfg: RunConfig) -> dict:
    return suites.exactness_suite(_need_seed(cfg), cfg.samples or 200, tuple(cfg.options.get("fields") or ("f5", "q")))


def _eq_morphism(cfg: RunConfig) -> EqMorphism:
    (d,) = _inputs(cfg, 1)
    ctx = _eq_context(cfg.context, field_by_name(cfg.base_field))
    x = ser.decode_eq_object(ctx, ser._get(d, "source", "$"), "$.source")
    y = ser.decode_eq_object(ctx, ser._get(d, "target", "$"), "$.target")
    mats = ser._list(ser._get(d, "maps", "$"), "$.maps")
    if len(mats) != len(ctx.lanes):
        raise ParseError(f"$.maps: expected {len(ctx.lanes)} lane matrices, got {len(mats)}")
    maps = []
    for i, (m, M, N, R) in enumerate(zip(mats, x.carriers, y.carriers, ctx.lanes)):
        try:
            maps.append(ModuleMap(M, N, ser.decode_matrix(m, f"$.maps[{i}]", R)))
        except ParseError:
            raise
        except EqPatchError as e:
            raise ParseError(f"$.maps[{i}]: {e}") from None
    try:
        return EqMorphism(x, y, maps)
    except EqPatchError as e:
        raise ParseError(f"$.maps: {e}") from None


def cmd_eq_kernel(cfg: RunConfig) -> dict:
    K, inc = eq_kernel(_eq_morphism(cfg))
    return {"kernel": ser.encode_eq_object(K), "inclusion": [ser.encode_matrix(f.matrix, False) for f in inc.maps], "ok": True}


def cmd_eq_cokernel(cfg: RunConfig) -> dict:
    C, proj = eq_cokernel(_eq_morphism(cfg))
    return {"cokernel": ser.encode_eq_object(C), "projection": [ser.encode_matrix(f.matrix, False) for f in proj.maps], "ok": True}


def cmd_patch_glue(cfg: RunConfig) -> dict:
    (d,) = _inputs(cfg, 1)
    ctx = bl_context(field_by_name(cfg.base_field))
    x = ser.decode_eq_object(ctx.eq, d, "$")
    res = glue(ctx, x)
    ok = all(mc.is_iso(f) for f in res.witness.maps)
    return {
        "module": ser.encode_module(res.module),
        "invariants": _inv(mc.invariants(res.module)),
        "witness": [ser.encode_matrix(f.matrix, False) for f in res.witness.maps],
        "ok": ok,
    }


def cmd_patch_roundtrip(cfg: RunConfig) -> dict:
    n = cfg.samples or 100
    return suites.roundtrip_suite(_need_seed(cfg), n, n, cfg.base_field)


def cmd_patch_fullfaithful(cfg: RunConfig) -> dict:
    return suites.full_faithfulness_suite(_need_seed(cfg), cfg.samples or 50, cfg.base_field)


def _cocycle(cfg: RunConfig) -> bk.Cocycle:
    (d,) = _inputs(cfg, 1)
    return ser.decode_cocycle(d, "$")


def cmd_birkhoff_factor(cfg: RunConfig) -> dict:
    if not cfg.input:
        return suites.birkhoff_suite(_need_seed(cfg), cfg.samples or 200)
    c = _cocycle(cfg)
    f = bk.birkhoff_factorize(c)
    return {
        "exponents": list(f.type.exponents),
        "minus": ser.encode_matrix(f.minus),
        "plus": ser.encode_matrix(f.plus),
        "normalized_at_infinity": f.normalized_at_infinity,
        "ok": f.product() == c.matrix,
    }


def cmd_birkhoff_reconstruct(cfg: RunConfig) -> dict:
    if not cfg.input:
        return suites.reconstruct_suite(_need_seed(cfg), cfg.samples or 50, cfg.base_field)
    r = bk.reconstruct(bk.TwoChartDatum(_cocycle(cfg)))
    return {
        "type": list(r.type.exponents),
        "birkhoff_type": list(r.birkhoff_type.exponents),
        "threshold": r.n,
        "kernel_threshold": r.m,
        "h0": r.h,
        "quotient": ser.encode_cocycle(r.quotient.phi),
        "ok": r.agrees,
    }


def cmd_mv_report(cfg: RunConfig) -> dict:
    try:
        ts_group = suites.parse_group(cfg.options.get("group") or "gm")
    except ValueError as e:
        raise UsageError(str(e)) from None
    return suites.six_term_suite(
        _need_seed(cfg),
        cfg.context,
        str(ts_group).lower().replace("(", "").replace(")", ""),
        cfg.base_field,
        cfg.samples or 100,
        cfg.options.get("mutation"),
    )


COMMANDS = {
    ("fincat", "verify"): cmd_fincat_verify,
    ("modcat", "snf"): cmd_modcat_snf,
    ("modcat", "tensor"): cmd_modcat_tensor,
    ("modcat", "hom"): cmd_modcat_hom,
    ("eq", "check-coherence"): cmd_eq_coherence,
    ("eq", "check-exactness"): cmd_eq_exactness,
    ("eq", "kernel"): cmd_eq_kernel,
    ("eq", "cokernel"): cmd_eq_cokernel,
    ("patch", "glue"): cmd_patch_glue,
    ("patch", "roundtrip"): cmd_patch_roundtrip,
    ("patch", "fullfaithful"): cmd_patch_fullfaithful,
    ("birkhoff", "factor"): cmd_birkhoff_factor,
    ("birkhoff", "reconstruct"): cmd_birkhoff_reconstruct,
    ("mv", "report"): cmd_mv_report,
}


# -- report rendering ---------------------------------------------------------------------


def render_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key in sorted(report):
        v = report[key]
        if isinstance(v, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{key}: [{len(v)} entries]")
        else:
            lines.append(f"{pad}{key}: {json.dumps(v, sort_keys=True, default=str)}")
    return "\n".join(line for line in lines if line)


def report_json(report: dict) -> str:
    return ser.dumps(report)


def strip_timestamp(text: str) -> str:
    """The report with its timestamp removed, for determinism comparisons."""
    d = json.loads(text)
    d.pop("timestamp", None)
    return ser.dumps(d)


def run(cfg: RunConfig) -> tuple[int, dict]:
    fn = COMMANDS[(cfg.group, cfg.command)]
    report = fn(cfg)
    report = {"command": f"{cfg.group} {cfg.command}", **report}
    report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return (EXIT_OK if report.get("ok") else EXIT_FAIL), report


def _positive(name: str):
    def parse(s: str) -> int:
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {s!r}") from None
        if v <= 0:
            raise argparse.ArgumentTypeError(f"{name} must be positive, got {v}")
        return v

    return parse


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eqpatch", description="Patching, equalizer categories and splitting types, checked exactly.")
    groups = p.add_subparsers(dest="group", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="seed for randomized suites (required for them)")
    common.add_argument("--samples", type=_positive("--samples"), help="number of samples or instances")
    common.add_argument("--field", default="f5", help="base field: f<p> or q (default f5)")
    common.add_argument("--context", default="bl", choices=["bl", "p1", "id"], help="patching context")
    common.add_argument("--out", help=f"directory for the JSON report (default ${OUT_ENV})")
    common.add_argument("--format", choices=["text", "json"], default="text", help="stdout format")
    commands = {
        "fincat": {"verify": "equalizer universal property (input file or generated instances)"},
        "modcat": {"snf": "Smith normal form of a matrix", "tensor": "tensor product of two modules", "hom": "Hom module of two modules"},
        "eq": {
            "check-coherence": "monoidal coherence suite",
            "check-exactness": "faithful exactness suite",
            "kernel": "kernel of an equalizer morphism",
            "cokernel": "cokernel of an equalizer morphism",
        },
        "patch": {"glue": "glue an equalizer object to a module", "roundtrip": "round-trip suite", "fullfaithful": "Hom comparison suite"},
        "birkhoff": {"factor": "factorize a cocycle (or run the suite)", "reconstruct": "reconstruct from global sections (or run the suite)"},
        "mv": {"report": "six-term exactness report"},
    }
    for g, cmds in commands.items():
        gp = groups.add_parser(g)
        sub = gp.add_subparsers(dest="command", required=True)
        for c, help_ in cmds.items():
            cp = sub.add_parser(c, parents=[common], help=help_)
            cp.add_argument("input", nargs="*", help="JSON input file(s)")
            if g == "mv":
                cp.add_argument("--group", dest="torsor_group", default="gm", help="gm, glN or slN")
                cp.add_argument("--mutation", choices=["naive"], help="replace the connecting map by a naive mutant")
            if g == "fincat":
                cp.add_argument("--budget", type=_positive("--budget"), help="enumeration step cap")
            if (g, c) == ("eq", "check-exactness"):
                cp.add_argument("--fields", nargs="+", help="fields to sample over (default f5 q)")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    opts = {}
    for key in ("torsor_group", "mutation", "budget", "fields"):
        if hasattr(args, key):
            opts["group" if key == "torsor_group" else key] = getattr(args, key)
    return RunConfig(
        group=args.group,
        command=args.command,
        seed=args.seed,
        samples=args.samples,
        base_field=args.field,
        context=args.context,
        input=list(args.input),
        options=opts,
        out=args.out or os.environ.get(OUT_ENV),
        format=args.format,
    )


def _report_name(cfg: RunConfig) -> str:
    parts = [cfg.group, cfg.command]
    if cfg.context != "bl":
        parts.append(cfg.context)
    if cfg.group == "mv" and (cfg.options.get("group") or "gm") != "gm":
        parts.append(cfg.options["group"].lower())
    if cfg.seed is not None:
        parts.append(f"seed{cfg.seed}")
    return "-".join(parts) + ".json"


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    try:
        field_by_name(cfg.base_field)
        code, report = run(cfg)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"eqpatch: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"eqpatch: input error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, BoundExceeded) as e:
        print(f"eqpatch: resource bound in {cfg.group} {cfg.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    text = report_json(report)
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        with open(os.path.join(cfg.out, _report_name(cfg)), "w") as fh:
            fh.write(text)
    if cfg.format == "json":
        sys.stdout.write(text)
    else:
        print(render_text({k: v for k, v in report.items() if k != "timestamp"}))
        print("PASS" if code == EXIT_OK else "FAIL")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 success, 1 verification violations, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import breuil, kernels
from .arithmetic import CharExp, FieldContext, InputError, encode_char
from .galois import (Irreducible, Reducible, compatible, is_full_subset, is_ordinary,
                     local_weight_set, witness_members)
from .types_jh import (InternalError, cuspidal_data, jh_cuspidal, jh_principal,
                       total_dimension, type_irreducible_simple, type_reducible)
from .verify import SUITES, default_jobs, run_suite
from .weights import canonicalize_weight, classify, enumerate_weights

log = logging.getLogger("serreweights")


class CliError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(message)


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise CliError(f"{what} must be a comma-separated list of integers, got {text!r}")


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise CliError(f"{what} must be an integer, got {text!r}")


def _common(sp: argparse.ArgumentParser, multi: bool = False):
    sp.add_argument("--p", required=True, help="prime" + (" (comma list)" if multi else ""))
    sp.add_argument("--r", required=True, help="residue degree" + (" (comma list)" if multi else ""))
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table")
    sp.set_defaults(fmt="json")
    sp.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    sp.add_argument("--max-seconds", type=float, default=None,
                    help="stop starting new work after this many seconds")
    sp.add_argument("--out", default=None, help="write output to FILE")
    sp.add_argument("-v", "--verbose", action="store_true")


def _data_flags(sp):
    kind = sp.add_mutually_exclusive_group(required=True)
    kind.add_argument("--reducible", dest="kind", action="store_const", const="reducible")
    kind.add_argument("--irreducible", dest="kind", action="store_const", const="irreducible")
    for name in ("psi1", "psi2", "theta"):
        sp.add_argument(f"--{name}", default=None, help=f"{name} as an exponent residue")
        sp.add_argument(f"--{name}-digits", default=None, help=f"{name} as a digit vector")


def _weight_flags(sp, required=True):
    sp.add_argument("--a", required=required, help="comma list a_1..a_r")
    sp.add_argument("--b", required=required, help="comma list b_1..b_r")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="serreweights", description="Serre weight combinatorics for GL2")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    sp = sub.add_parser("weights", help="enumerate canonical weights")
    _common(sp)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--regular", dest="cls", action="store_const", const="regular")
    g.add_argument("--weakly-regular", dest="cls", action="store_const", const="weakly_regular")

    sp = sub.add_parser("weight-set", help="weights compatible with local Galois data")
    _common(sp)
    _data_flags(sp)
    sp.add_argument("--regular", action="store_true")

    sp = sub.add_parser("type", help="inertial type attached to a weight and subset")
    _common(sp)
    _weight_flags(sp)
    sp.add_argument("--J", default=None, help="niveau-1 bitmask (bit i mod r is tau_i)")
    sp.add_argument("--full-J", default=None, help="niveau-2 bitmask (bit i is sigma_i)")

    sp = sub.add_parser("jh", help="Jordan-Hoelder factors of a type")
    _common(sp)
    _weight_flags(sp, required=False)
    sp.add_argument("--J", default=None)
    sp.add_argument("--full-J", default=None)
    sp.add_argument("--chi1", default=None)
    sp.add_argument("--chi2", default=None)
    sp.add_argument("--c", default=None, help="cuspidal c vector (with --psi)")
    sp.add_argument("--psi", default=None)

    sp = sub.add_parser("compat", help="compatibility witnesses for one weight")
    _common(sp)
    _data_flags(sp)
    _weight_flags(sp)

    sp = sub.add_parser("fl", help="FL quantities and their twelve property checks for (b, J)")
    _common(sp)
    sp.add_argument("--b", required=True)
    sp.add_argument("--J", required=True)

    sp = sub.add_parser("verify", help="run an exhaustive verification suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    _common(sp, multi=True)
    return ap


def _ctx(args) -> FieldContext:
    return FieldContext(_int(args.p, "--p"), _int(args.r, "--r"))


def _char(args, ctx, name: str, niveau: int, required: bool = True) -> Optional[CharExp]:
    res = getattr(args, name, None)
    dig = getattr(args, f"{name}_digits", None)
    if res is not None and dig is not None:
        raise CliError(f"give only one of --{name} and --{name}-digits")
    if res is not None:
        return CharExp(ctx, niveau, _int(res, f"--{name}"))
    if dig is not None:
        return encode_char(ctx, _ints(dig, f"--{name}-digits"), niveau)
    if required:
        raise CliError(f"--{name} (or --{name}-digits) is required")
    return None


def _data(args, ctx):
    if args.kind == "reducible":
        return Reducible(_char(args, ctx, "psi1", 1), _char(args, ctx, "psi2", 1))
    return Irreducible(_char(args, ctx, "theta", 2))


def _weight(args, ctx):
    return canonicalize_weight(ctx, _ints(args.a, "--a"), _ints(args.b, "--b"))


def _mask(text, what) -> int:
    m = _int(text, what)
    if m < 0:
        raise CliError(f"{what} must be non-negative")
    return m


def _niveau1_mask(ctx, text) -> int:
    J = _mask(text, "--J")
    if J > ctx.full_mask():
        raise CliError(f"--J must be below {1 << ctx.r}")
    return J


def _full_mask(ctx, text) -> int:
    J = _mask(text, "--full-J")
    if not is_full_subset(ctx, J):
        raise CliError("--full-J is not a full subset")
    return J


def cmd_weights(args):
    ctx = _ctx(args)
    ws = [w.to_json() for w in enumerate_weights(ctx, args.cls)]
    return {"p": ctx.p, "r": ctx.r, "class": args.cls or "all", "count": len(ws),
            "weights": ws}, 0


def _witness_json(ctx, data, wit):
    niveau = 1 if isinstance(data, Reducible) else 2
    return [witness_members(ctx, J, niveau) for J in wit]


def cmd_weight_set(args):
    ctx = _ctx(args)
    data = _data(args, ctx)
    rows = []
    for w, wit in local_weight_set(ctx, data, args.regular):
        row = {**w.to_json(), "witnesses": _witness_json(ctx, data, wit), "witness_masks": wit}
        if isinstance(data, Reducible):
            row["ordinary"] = 0 in wit or ctx.full_mask() in wit
        rows.append(row)
    return {"data": data.to_json(), "regular_only": bool(args.regular), "count": len(rows),
            "weights": rows}, 0


def cmd_type(args):
    ctx = _ctx(args)
    w = _weight(args, ctx)
    if (args.J is None) == (args.full_J is None):
        raise CliError("give exactly one of --J and --full-J")
    out = {"p": ctx.p, "r": ctx.r, "weight": w.to_json()}
    if args.J is not None:
        J = _niveau1_mask(ctx, args.J)
        t = type_reducible(ctx, w, J)
        out.update({"J": witness_members(ctx, J, 1), "type": t.to_json(),
                    "c": list(kernels.digits(ctx.p, ctx.r, (t.chi2.exp - t.chi1.exp) % ctx.e1))})
    else:
        J = _full_mask(ctx, args.full_J)
        d = cuspidal_data(ctx, w, J)
        simple = type_irreducible_simple(ctx, w, J)
        out.update({"J": witness_members(ctx, J, 2), "type": d.type.to_json(),
                    "K_J": witness_members(ctx, d.K, 1), "c": list(d.c), "psi": d.psi.exp,
                    "simple_type": simple.to_json(), "agree": simple == d.type})
    return out, 0


def _factor_rows(ctx, factors):
    return [{**f.to_json(), "class": classify(ctx, f.weight).value} for f in factors]


def cmd_jh(args):
    ctx = _ctx(args)
    if args.chi1 is not None or args.chi2 is not None:
        if args.chi1 is None or args.chi2 is None:
            raise CliError("--chi1 and --chi2 go together")
        c1 = CharExp(ctx, 1, _int(args.chi1, "--chi1"))
        c2 = CharExp(ctx, 1, _int(args.chi2, "--chi2"))
        t = {"kind": "ps", "chi1": c1.exp, "chi2": c2.exp}
        fs = jh_principal(ctx, c1, c2)
        want = ctx.q + 1
    elif args.c is not None:
        if args.psi is None:
            raise CliError("--c needs --psi")
        psi = CharExp(ctx, 1, _int(args.psi, "--psi"))
        c = _ints(args.c, "--c")
        t = {"kind": "cusp-data", "c": c, "psi": psi.exp}
        fs = jh_cuspidal(ctx, c, psi)
        want = ctx.q - 1
    else:
        if args.a is None or args.b is None:
            raise CliError("give --chi1/--chi2, --c/--psi, or a weight with --J/--full-J")
        w = _weight(args, ctx)
        if args.J is not None and args.full_J is None:
            ty = type_reducible(ctx, w, _niveau1_mask(ctx, args.J))
            fs = jh_principal(ctx, ty.chi1, ty.chi2)
            want = ctx.q + 1
        elif args.full_J is not None and args.J is None:
            d = cuspidal_data(ctx, w, _full_mask(ctx, args.full_J))
            ty = d.type
            fs = jh_cuspidal(ctx, d.c, d.psi)
            want = ctx.q - 1
        else:
            raise CliError("give exactly one of --J and --full-J")
        t = ty.to_json()
    dim = total_dimension(fs)
    return {"p": ctx.p, "r": ctx.r, "type": t, "factors": _factor_rows(ctx, fs),
            "dimension": dim, "expected_dimension": want}, 0


def cmd_compat(args):
    ctx = _ctx(args)
    data = _data(args, ctx)
    w = _weight(args, ctx)
    wit = compatible(ctx, data, w)
    out = {"data": data.to_json(), "weight": w.to_json(), "class": classify(ctx, w).value,
           "compatible": bool(wit), "witnesses": _witness_json(ctx, data, wit),
           "witness_masks": wit}
    out["ordinary"] = is_ordinary(ctx, data, w) if wit else None
    return out, 0


def cmd_fl(args):
    ctx = _ctx(args)
    b = _ints(args.b, "--b")
    J = _niveau1_mask(ctx, args.J)
    fl = breuil.fl_quantities(ctx, b, J)
    props = breuil.fl_check_properties(ctx, b, J)
    out = {"p": ctx.p, "r": ctx.r, "b": b, "J": witness_members(ctx, J, 1),
           "quantities": fl.to_json(),
           "properties": [x.to_json() for x in props],
           "model": breuil.rank2_model_params(ctx, b, J).to_json(),
           "crystalline": breuil.crystalline_spec(ctx, b, J).to_json()}
    return out, 0 if all(x.passed for x in props) else 1


def cmd_verify(args):
    ps = _ints(args.p, "--p")
    rs = _ints(args.r, "--r")
    if not ps or not rs:
        raise CliError("--p and --r need at least one value")
    for p in ps:
        for r in rs:
            FieldContext(p, r)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    if jobs < 1:
        raise CliError("--jobs must be at least 1")
    rep = run_suite(args.suite, ps, rs, jobs=jobs, max_seconds=args.max_seconds)
    print(f"{args.suite}: {rep.status} ({rep.cases} cases, {rep.violation_count} violations, "
          f"{rep.wall_seconds:.2f}s)", file=sys.stderr)
    return rep.to_json(), 0 if rep.ok else 1


COMMANDS = {
    "weights": cmd_weights,
    "weight-set": cmd_weight_set,
    "type": cmd_type,
    "jh": cmd_jh,
    "compat": cmd_compat,
    "fl": cmd_fl,
    "verify": cmd_verify,
}


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_cell(x) for x in v) + "]"
    if isinstance(v, dict):
        return " ".join(f"{k}={_cell(x)}" for k, x in v.items())
    return str(v)


def render_table(obj: dict) -> str:
    """Scalars as key: value lines, lists of dicts as aligned tables."""
    lines = []
    for key, val in obj.items():
        if isinstance(val, list) and val and all(isinstance(x, dict) for x in val):
            cols = list(dict.fromkeys(k for row in val for k in row))
            rows = [[_cell(row.get(c, "")) for c in cols] for row in val]
            widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines.append(f"{key}:")
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)))
            for r in rows:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)))
        else:
            lines.append(f"{key}: {_cell(val)}")
    return "\n".join(lines) + "\n"


def render(obj: dict, fmt: str) -> str:
    if fmt == "table":
        return render_table(obj)
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise CliError("a command is required")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        out, code = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    text = render(out, args.fmt)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())

"""Command line: ``torsion-kit {ring,ideal,module,check,suite,apolarity}``.

Exit codes: 0 all pass, 1 some fail, 2 some undetermined, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Sequence

from ._version import __version__
from .runspec import (
    CHECKS,
    EXIT_INPUT,
    InputError,
    RunSpec,
    load_runspec,
    parse_runspec,
    ring_summary,
    run,
)
from .rings import RingError, make_ring


def _ring_arg(text: str) -> Any:
    """A compact ring string, inline JSON, or a path to a TOML/JSON file holding a ring."""
    t = text.strip()
    if t.startswith("{") or t.startswith("["):
        try:
            return json.loads(t)
        except json.JSONDecodeError as e:
            raise InputError(f"bad ring JSON: {e.msg}", key="ring", line=e.lineno, column=e.colno) from None
    p = Path(t)
    if p.suffix.lower() in (".toml", ".json") and p.exists():
        return load_runspec(p).ring
    return t


def _elements(text: Optional[str]) -> list[Any]:
    """'2', '2,4' or '[1,0];[0,1]'."""
    if not text or not text.strip():
        return []
    body = text.replace(";", ",") if "[" in text else text
    try:
        return json.loads(f"[{body}]")
    except json.JSONDecodeError:
        raise InputError(f"cannot read elements {text!r}", key="gens") from None


def _module_arg(text: Optional[str]) -> Any:
    if not text:
        return "regular"
    t = text.strip()
    if t.startswith("{"):
        try:
            return json.loads(t)
        except json.JSONDecodeError as e:
            raise InputError(f"bad module JSON: {e.msg}", key="module", line=e.lineno, column=e.colno) from None
    if t in ("R", "regular"):
        return "regular"
    if t.startswith("R^"):
        return {"type": "free", "rank": int(t[2:])}
    if t.startswith("R/"):
        return {"type": "cyclic", "ideal": {"gens": _elements(t[2:].strip("()"))}}
    raise InputError(f"cannot read module {text!r}; use R, R^k, R/(gens) or JSON", key="module")


def _spec_from(args: argparse.Namespace, checks: list[dict], modules: Optional[dict] = None,
               ideal: bool = True) -> RunSpec:
    doc: dict[str, Any] = {"ring": _ring_arg(args.ring), "checks": checks, "seed": args.seed or 0,
                           "options": _options(args)}
    if ideal:
        doc["ideals"] = {"I": {"gens": _elements(getattr(args, "ideal", None)) or [1]}}
    if modules:
        doc["modules"] = modules
    return parse_runspec(json.dumps(doc), "json")


def _options(args: argparse.Namespace) -> dict[str, int]:
    out = {}
    for k in ("bound_card", "resolution_length", "offset_bound"):
        v = getattr(args, k, None)
        if v is not None:
            out[k] = v
    return out


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _finish(spec: RunSpec, args: argparse.Namespace) -> int:
    for k, v in _options(args).items():
        setattr(spec, k, v)
    if args.seed is not None:
        spec.seed = args.seed
    doc = run(spec)
    text = doc.to_text() if args.format == "text" else doc.to_json(timing=not args.no_timing)
    _emit(text, args.out or spec.output)
    return doc.exit_code


def cmd_ring(args: argparse.Namespace) -> int:
    R = make_ring(_ring_arg(args.ring))
    info = ring_summary(R)
    if args.format == "text":
        lines = [f"{info['description']}: order {info['order']}, Z/{info['modulus']}-rank {info['rank']}",
                 f"ideals: {', '.join(info['ideals'])}",
                 f"idempotent ideals: {', '.join(info['idempotent_ideals'])}",
                 f"principal ideal ring: {info['principal_ideal_ring']}; "
                 f"product of fields: {info['product_of_fields']}"]
        _emit("\n".join(lines), args.out)
    else:
        _emit(json.dumps(info, indent=2, sort_keys=True), args.out)
    return 0


def cmd_ideal(args: argparse.Namespace) -> int:
    return _finish(_spec_from(args, [{"name": "ideal"}]), args)


def cmd_module(args: argparse.Namespace) -> int:
    ops = args.ops or ["gamma", "lambda", "predicates"]
    for o in ops:
        if o not in CHECKS:
            raise InputError(f"unknown operation {o!r}", key="ops")
    spec = _spec_from(args, [{"name": o} for o in ops], {"M": _module_arg(args.module)})
    return _finish(spec, args)


def cmd_check(args: argparse.Namespace) -> int:
    if args.spec:
        spec = load_runspec(args.spec)
        if args.name:
            spec.checks = [c for c in spec.checks if c["name"] in args.name]
        return _finish(spec, args)
    if not args.name or not args.ring:
        raise InputError("check needs a spec file, or --ring together with check names")
    checks = []
    for n in args.name:
        if n not in CHECKS:
            raise InputError(f"unknown check {n!r}", key="name")
        c: dict[str, Any] = {"name": n}
        params = CHECKS[n][1]
        for k in ("k", "q", "qmax"):
            v = getattr(args, k)
            if v is not None and k in params:
                c[k] = v
        if "family" in params and args.max_order:
            c["family"] = {"max_order": args.max_order}
        if "sequence" in params:
            c["sequence"] = _elements(args.ideal) or [1]
        checks.append(c)
    return _finish(_spec_from(args, checks, {"M": _module_arg(args.module)}), args)


def suite_files(which: str = "suite") -> list[Path]:
    root = resources.files("torsion_kit") / "fixtures" / which
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith((".toml", ".json")))


def cmd_suite(args: argparse.Namespace) -> int:
    files = [Path(f) for f in args.files] or suite_files(args.which)
    docs = []
    for f in files:
        spec = load_runspec(f)
        for k, v in _options(args).items():
            setattr(spec, k, v)
        if args.seed is not None:
            spec.seed = args.seed
        doc = run(spec)
        docs.append((f.name, doc))
    if args.format == "text":
        text = "\n\n".join(f"== {name}\n{doc.to_text()}" for name, doc in docs)
    else:
        text = json.dumps({name: doc.to_dict(timing=not args.no_timing) for name, doc in docs},
                          indent=2, sort_keys=True)
    _emit(text, args.out)
    codes = {doc.exit_code for _, doc in docs}
    return 1 if 1 in codes else (2 if 2 in codes else 0)


def cmd_apolarity(args: argparse.Namespace) -> int:
    try:
        gens = json.loads(args.gens)
    except json.JSONDecodeError as e:
        raise InputError(f"bad generator list: {e.msg}", key="gens", line=e.lineno, column=e.colno) from None
    base = {"degree": args.degree, "nvars": args.nvars, "gens": gens}
    checks = [{"name": "apolarity_profile", **base, "kmax": args.kmax},
              {"name": "apolarity_layers", **base, "k": args.k}]
    doc = {"checks": checks, "seed": args.seed or 0}
    return _finish(parse_runspec(json.dumps(doc), "json"), args)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--bound-card", dest="bound_card", type=int, default=None,
                   help="largest module whose submodule lattice is enumerated (default 256)")
    p.add_argument("--resolution-length", dest="resolution_length", type=int, default=None,
                   help="free resolution length for Ext/Tor (default 4)")
    p.add_argument("--offset-bound", dest="offset_bound", type=int, default=None,
                   help="pro-zero search window (default 8)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--no-timing", action="store_true", help="omit the timing block (byte-stable output)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="torsion-kit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"torsion-kit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring", help="validate a ring and list its ideals")
    p.add_argument("ring", help='e.g. "Z/8", "F2 x F3", "F2[x]/(x^2)" or inline JSON')
    _common(p)
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("ideal", help="powers, idempotency and radical of an ideal")
    p.add_argument("ring")
    p.add_argument("ideal", help='generators: "2" or "[1,0];[0,1]"')
    _common(p)
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("module", help="gamma, lambda and the reducedness predicates")
    p.add_argument("ring")
    p.add_argument("ideal")
    p.add_argument("--module", default=None, help="R, R^k, R/(gens) or module JSON (default R)")
    p.add_argument("--op", dest="ops", action="append", default=None,
                   help="operation to run (repeatable): gamma, gamma_bar, lambda, predicates, ...")
    _common(p)
    p.set_defaults(func=cmd_module)

    p = sub.add_parser("check", help="run named checks from a spec file or the command line")
    p.add_argument("spec", nargs="?", default=None, help="TOML/JSON run spec")
    p.add_argument("--name", action="append", default=None, help=f"one of: {', '.join(sorted(CHECKS))}")
    p.add_argument("--ring", default=None)
    p.add_argument("--ideal", default=None)
    p.add_argument("--module", default=None)
    p.add_argument("--max-order", dest="max_order", type=int, default=None)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("-q", type=int, default=None)
    p.add_argument("--qmax", type=int, default=None)
    _common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suite", help="run the bundled example suite")
    p.add_argument("files", nargs="*", help="run these spec files instead")
    p.add_argument("--which", choices=("suite", "controls"), default="suite")
    _common(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("apolarity", help="annihilators in a truncated inverse system over Q")
    p.add_argument("--nvars", type=int, default=1)
    p.add_argument("--degree", type=int, default=5, help="truncation degree D")
    p.add_argument("--gens", required=True, help='JSON list of monomials/polys, e.g. "[[2]]"')
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("-k", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_apolarity)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, RingError) as e:
        print(f"torsion-kit: input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

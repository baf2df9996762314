"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 on usage errors (bad flags, unparsable input, truncation too small).
"""

from __future__ import annotations

import argparse
import json
import sys

from .bosonisation import (
    ConstructionError,
    bosonise,
    conjugation_check,
    generic_agreement,
    kpm_extend,
    kpm_witness,
    relation_images,
)
from .kernel import ParahopfError
from .parser import dump_presentation, evaluate, load_presentation, presentation_to_dict
from .presets import algebra, casimir_checks, lie_closure_check, pbw_dimension, u_n_check
from .quotient import filtration_dimension
from .report import CheckResult, Report
from .superhopf import DEFAULT_SEED, check_hopf_axioms


class UsageError(ParahopfError):
    pass


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")


def _common(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = parser.add_argument_group("global options")
    g.add_argument("--algebra", default=d("pb:1"),
                   help="preset pb:n, pf:n, pbg:n or pbk:n (default pb:1)")
    g.add_argument("--presentation", metavar="FILE", default=d(None),
                   help="load a presentation (and maps) from a text file instead")
    g.add_argument("--degree", type=int, default=d(None), help="truncation degree D")
    g.add_argument("--seed", type=_seed, default=d(DEFAULT_SEED),
                   help="seed for random samples (default 0x5EED)")
    g.add_argument("--format", choices=("text", "json"), default=d("text"))
    g.add_argument("--samples", type=int, default=d(100),
                   help="random samples for the Hopf check (default 100)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="parahopf",
        description="Exact computations in parastatistics algebras and their Hopf structures.",
    )
    _common(top, suppress=False)
    sub = top.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        _common(p, suppress=True)
        return p

    p = cmd("normalize", "print the normal form of an expression")
    p.add_argument("expr")
    cmd("dim", "dimension of the degree-<=D filtration piece")
    p = cmd("check", "run a verification suite")
    p.add_argument("suite", choices=("hopf", "lie", "casimir"))
    p.add_argument("--max-power", type=int, default=4, help="largest m for the Casimir suite")
    cmd("bosonize", "emit the bosonised algebra B(g) of a super-Hopf algebra")
    cmd("extend-k", "emit the K± extension of a parabosonic algebra")
    cmd("export", "print the presentation and structure maps")
    return top


# ---------------------------------------------------------------------------


def _load(args):
    """(presentation, maps, family, n) from --presentation or --algebra."""
    if args.presentation:
        try:
            with open(args.presentation, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {args.presentation}: {e.strerror}")
        p, maps = load_presentation(text)
        fams = {g.family for g in p.generators}
        family = "b" if "b" in fams else "f" if "f" in fams else None
        n = max((g.index for g in p.generators if g.family == family), default=0)
        return p, maps, None, n
    try:
        a = algebra(args.algebra)
    except ValueError as e:
        raise UsageError(str(e))
    return a.presentation, a.maps, a.family, a.n


def _payload(args, p, degree, reports, extra=None) -> dict:
    checks = [r.to_dict() for rep in reports for r in rep.results]
    d = {"command": args.command if args.command != "check" else f"check {args.suite}",
         "algebra": p.name, "degree": degree, "seed": args.seed, "checks": checks}
    if extra:
        d.update(extra)
    return d


def _cmd_normalize(args, out):
    p, _, _, _ = _load(args)
    x = evaluate(args.expr, p, args.degree)
    if args.format == "json":
        return 0, _payload(args, p, args.degree, [], {"input": args.expr, "result": str(x)})
    print(x, file=out)
    return 0, None


def _cmd_dim(args, out):
    p, _, kind, n = _load(args)
    D = p.degree if args.degree is None else args.degree
    dim = filtration_dimension(p, D)
    rep = Report("PBW count")
    if kind is not None:
        res = rep.add(CheckResult("PBW count", checked=1))
        expected = pbw_dimension(kind, n, D)
        res.details["expected"] = expected
        if dim != expected:
            res.fail(f"quotient dimension {dim} differs from the PBW count {expected}")
    code = 0 if rep.passed else 1
    if args.format == "json":
        return code, _payload(args, p, D, [rep], {"dimension": dim})
    print(dim, file=out)
    for r in rep.results:
        if r.witness:
            print(f"{r.status.upper()}: {r.name}: {r.witness}", file=out)
    return code, None


def _cmd_check(args, out):
    p, maps, kind, n = _load(args)
    D = args.degree
    if args.suite == "hopf":
        if maps is None:
            raise UsageError("the presentation file declares no structure maps")
        D = p.degree if D is None else D
        reports = [check_hopf_axioms(p, maps, D, samples=args.samples, seed=args.seed)]
    elif args.suite == "lie":
        D = p.degree if D is None else D
        reports = [lie_closure_check(p, D)]
    else:
        if not any(g.family == "b" for g in p.generators):
            raise UsageError("the Casimir suite needs parabosonic generators")
        M = args.max_power
        if M < 1:
            raise UsageError("--max-power must be at least 1")
        reports = [u_n_check(p, n, max(4, D or 4)), casimir_checks(p, n, M, D)]
    return _finish(args, p, D, reports, out)


def _finish(args, p, D, reports, out, extra=None, preamble=None):
    code = 0 if all(r.passed for r in reports) else 1
    if args.format == "json":
        return code, _payload(args, p, D, reports, extra)
    if preamble:
        out.write(preamble)
    comment = "# " if preamble else ""
    for rep in reports:
        for line in rep.text().splitlines():
            print(comment + line, file=out)
    return code, None


def _cmd_bosonize(args, out):
    p, maps, _, _ = _load(args)
    if maps is None or not maps.braided:
        raise UsageError("bosonize needs a super algebra with braided structure maps (e.g. pb:n)")
    sp = bosonise(p, maps, name=f"pbg:{p.name[3:]}" if p.name.startswith("pb:") else None)
    D = sp.presentation.degree if args.degree is None else args.degree
    reports = [generic_agreement(sp, D=D), conjugation_check(sp, D)]
    q = sp.presentation
    extra = {"presentation": presentation_to_dict(q, sp.maps)}
    return _finish(args, q, D, reports, out, extra, dump_presentation(q, sp.maps))


def _cmd_extend_k(args, out):
    p, _, _, _ = _load(args)
    if not p.generators or any(g.family != "b" for g in p.generators):
        raise UsageError("extend-k needs a parabosonic presentation (e.g. pb:n)")
    name = f"pbk:{p.name[3:]}" if p.name.startswith("pb:") else None
    q, maps = kpm_extend(p, name=name)
    D = q.degree if args.degree is None else args.degree
    reports = [relation_images(q, maps, D), kpm_witness(q, min(D, 2))]
    extra = {"presentation": presentation_to_dict(q, maps)}
    return _finish(args, q, D, reports, out, extra, dump_presentation(q, maps))


def _cmd_export(args, out):
    p, maps, _, _ = _load(args)
    if args.format == "json":
        return 0, _payload(args, p, p.degree, [], {"presentation": presentation_to_dict(p, maps)})
    out.write(dump_presentation(p, maps))
    return 0, None


_COMMANDS = {
    "normalize": _cmd_normalize,
    "dim": _cmd_dim,
    "check": _cmd_check,
    "bosonize": _cmd_bosonize,
    "extend-k": _cmd_extend_k,
    "export": _cmd_export,
}


def run(argv=None, out=None, err=None) -> int:
    """Run one command line; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.samples < 0:
        print("parahopf: error: --samples must be non-negative", file=err)
        return 2
    try:
        code, payload = _COMMANDS[args.command](args, out)
    except ConstructionError as e:
        print(f"parahopf: construction failed: {e}", file=err)
        return 1
    except (ParahopfError, ValueError) as e:
        print(f"parahopf: error: {e}", file=err)
        return 2
    if payload is not None:
        print(json.dumps(payload, indent=2, ensure_ascii=False), file=out)
    return code


def main() -> None:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    sys.exit(run())


if __name__ == "__main__":
    main()

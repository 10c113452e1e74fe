"""Command-line front end.  Every subcommand prints one JSON report on stdout.

Exit status: 0 on success, 1 when the answer is negative (Fails, No,
StrictIsNot, or `validate` finding a law violation), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Callable

from .category import CategoryError, FunctorError, SearchBoundExceeded, validate_category, validate_functor
from .fileformat import (
    Loader,
    ParseError,
    ValidationFailed,
    category_to_doc,
    functor_to_doc,
    load_json,
    profile_to_doc,
    report_violations,
    verdict_to_doc,
)
from .grothendieck import grothendieck, validate_diagram
from .homotopy import Answer, Config, homology, weak_equivalence
from .theorems import (
    Conclusion,
    Outcome,
    PropertyReport,
    check_property_Bn,
    check_property_Cn,
    check_property_Q,
    homotopy_fibre_model,
    homotopy_pullback,
)
from .zigzag import build_comma, build_two_sided, slice_at_source, slice_at_target, slice_two_sided, strict_pullback

ENV_MAX_DIM = "CATHO_MAX_DIM"
ENV_SEARCH_BOUND = "CATHO_SEARCH_BOUND"


class UsageError(Exception):
    pass


def property_to_doc(r: PropertyReport) -> dict:
    doc: dict[str, Any] = {"property": r.property, "overall": r.overall.value}
    if r.verdicts:
        doc["verdicts"] = [{"morphism": m, "verdict": verdict_to_doc(v)} for m, v in r.verdicts]
    if r.sub_reports:
        doc["objects"] = [{"object": y, "report": property_to_doc(s)} for y, s in r.sub_reports]
    return doc


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError(f"{name} must be non-negative")
    return value


def _config(args: argparse.Namespace) -> Config:
    max_dim = args.max_dim if args.max_dim is not None else _env_int(ENV_MAX_DIM, 3)
    bound = args.search_bound if args.search_bound is not None else _env_int(ENV_SEARCH_BOUND, 2)
    if max_dim < 0 or bound < 0:
        raise UsageError("--max-dim and --search-bound must be non-negative")
    return Config(max_dim=max_dim, search_bound=bound)


def _n(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    return args.n


# subcommands return (result, exit code)

def cmd_validate(args, loader: Loader, config: Config):
    doc = load_json(args.file)
    kind = args.kind
    if kind == "auto":
        if isinstance(doc, dict) and "index" in doc:
            kind = "diagram"
        elif isinstance(doc, dict) and "on_objects" in doc:
            kind = "functor"
        else:
            kind = "category"
    if kind == "category":
        report = validate_category(loader.category(args.file, validate=False))
    elif kind == "functor":
        report = validate_functor(loader.functor(args.file, validate=False))
    else:
        report = validate_diagram(loader.diagram(args.file, validate=False))
    result = {"kind": kind, "ok": report.ok, "violations": report_violations(report)}
    return result, 0 if report.ok else 1


def cmd_homology(args, loader: Loader, config: Config):
    c = loader.category(args.category)
    p = homology(c, config.max_dim, config.simplex_bound, allow_partial=True)
    return {"objects": len(c.objects), "morphisms": len(c.morphisms), "profile": profile_to_doc(p)}, 0


def cmd_groth(args, loader: Loader, config: Config):
    D = loader.diagram(args.diagram)
    G = grothendieck(D)
    return {
        "total": category_to_doc(G.total),
        "projection": functor_to_doc(G.projection, "#total", load_json(args.diagram)["index"]),
    }, 0


def cmd_comma(args, loader: Loader, config: Config):
    f = loader.functor(args.f)
    n = _n(args)
    if args.g is None:
        C = build_comma(f, n)
        return {"category": category_to_doc(C.category), "h": functor_to_doc(C.h)}, 0
    g = loader.functor(args.g)
    _same_target(f, g)
    C = build_two_sided(f, g, n)
    return {
        "category": category_to_doc(C.category),
        "strict": category_to_doc(C.strict.category),
        "k": functor_to_doc(C.k),
    }, 0


def _same_target(f, g) -> None:
    if f.target != g.target:
        raise UsageError("f and g must have the same target category")


def cmd_slice(args, loader: Loader, config: Config):
    f = loader.functor(args.f)
    n = _n(args)
    chosen = [a for a in ("target", "source", "z") if getattr(args, a) is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --target, --source, --z")
    which = chosen[0]
    obj = getattr(args, which)
    if which == "z":
        if args.g is None:
            raise UsageError("--z needs a second functor g")
        g = loader.functor(args.g)
        _same_target(f, g)
        C = build_two_sided(f, g, n)
        _need(obj, C.g.source)
        sl = slice_two_sided(C, obj)
    else:
        C = build_comma(f, n)
        if which == "target":
            _need(obj, f.target)
            sl = slice_at_target(C, obj)
        else:
            _need(obj, f.source)
            sl = slice_at_source(C, obj)
    return {"at": {which: obj}, "category": category_to_doc(sl.category)}, 0


def _need(obj: str, c) -> None:
    if obj not in c:
        raise UsageError(f"unknown object {obj!r}")


def _outcome_code(o: Outcome) -> int:
    return 1 if o is Outcome.FAILS else 0


def cmd_check_q(args, loader: Loader, config: Config):
    r = check_property_Q(loader.diagram(args.diagram), config)
    return property_to_doc(r), _outcome_code(r.overall)


def cmd_check_bn(args, loader: Loader, config: Config):
    r = check_property_Bn(loader.functor(args.f), _n(args), config)
    return property_to_doc(r), _outcome_code(r.overall)


def cmd_check_cn(args, loader: Loader, config: Config):
    r = check_property_Cn(loader.category(args.category), _n(args), config)
    return property_to_doc(r), _outcome_code(r.overall)


def cmd_hofib(args, loader: Loader, config: Config):
    f = loader.functor(args.f)
    _need(args.at, f.target)
    m = homotopy_fibre_model(f, _n(args), args.at, config)
    result = {
        "at": args.at,
        "model": category_to_doc(m.category),
        "is_homotopy_fibre": m.report.overall.value,
        "property": property_to_doc(m.report),
    }
    return result, _outcome_code(m.report.overall)


def cmd_pullback(args, loader: Loader, config: Config):
    f, g = loader.functor(args.f), loader.functor(args.g)
    _same_target(f, g)
    P = strict_pullback(f, g)
    return {
        "category": category_to_doc(P.category),
        "proj_x": functor_to_doc(P.proj_x),
        "proj_z": functor_to_doc(P.proj_z),
    }, 0


def cmd_hopullback(args, loader: Loader, config: Config):
    f, g = loader.functor(args.f), loader.functor(args.g)
    _same_target(f, g)
    r = homotopy_pullback(f, g, _n(args), config)
    result = {
        "conclusion": r.conclusion.value,
        "property": property_to_doc(r.bn_report),
        "k": verdict_to_doc(r.k_verdict),
        "strict": category_to_doc(r.strict.category),
        "model": category_to_doc(r.model.category),
    }
    negative = r.conclusion is Conclusion.STRICT_IS_NOT or r.bn_report.overall is Outcome.FAILS
    return result, 1 if negative else 0


def cmd_we(args, loader: Loader, config: Config):
    v = weak_equivalence(loader.functor(args.f), config)
    return verdict_to_doc(v), 1 if v.answer is Answer.NO else 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catho", description="Finite categories and homotopy pullbacks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-dim", type=int, default=None, help=f"homology degree cap (env {ENV_MAX_DIM}, default 3)")
    common.add_argument(
        "--search-bound", type=int, default=None, help=f"intermediate functors per zigzag (env {ENV_SEARCH_BOUND}, default 2)"
    )
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    with_n = argparse.ArgumentParser(add_help=False)
    with_n.add_argument("--n", type=int, default=1, help="zigzag length (default 1)")

    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func: Callable, help: str, parents=(common,)) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, parents=list(parents))
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check the laws of a category, functor or diagram file")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=["auto", "category", "functor", "diagram"], default="auto")

    add("homology", cmd_homology, "integral homology of the nerve").add_argument("category")
    add("groth", cmd_groth, "Grothendieck construction of a diagram").add_argument("diagram")

    sp = add("comma", cmd_comma, "zigzag comma category", (common, with_n))
    sp.add_argument("f")
    sp.add_argument("g", nargs="?")

    sp = add("slice", cmd_slice, "a slice of the zigzag comma category", (common, with_n))
    sp.add_argument("f")
    sp.add_argument("g", nargs="?")
    sp.add_argument("--target", help="fix the end object of the zigzags")
    sp.add_argument("--source", help="fix the starting object in X")
    sp.add_argument("--z", help="fix the object of Z (two-sided)")

    add("check-q", cmd_check_q, "property Q of a diagram").add_argument("diagram")
    add("check-bn", cmd_check_bn, "property B_n of a functor", (common, with_n)).add_argument("f")
    add("check-cn", cmd_check_cn, "property C_n of a category", (common, with_n)).add_argument("category")

    sp = add("hofib", cmd_hofib, "homotopy fibre model over an object", (common, with_n))
    sp.add_argument("f")
    sp.add_argument("--at", required=True, help="object of the target")

    sp = add("pullback", cmd_pullback, "strict pullback")
    sp.add_argument("f")
    sp.add_argument("g")

    sp = add("hopullback", cmd_hopullback, "homotopy pullback model and comparison", (common, with_n))
    sp.add_argument("f")
    sp.add_argument("g")

    add("we", cmd_we, "is a functor a weak homotopy equivalence?").add_argument("f")
    return p


def _inputs(args: argparse.Namespace) -> dict:
    skip = {"func", "command", "max_dim", "search_bound", "out", "n"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        result, code = args.func(args, Loader(), config)
    except ValidationFailed as exc:
        # a broken input is an operational error outside of `validate`
        parser.print_usage(sys.stderr)
        print(f"catho: error: {exc}", file=sys.stderr)
        for v in exc.report.violations:
            print(f"  {v}", file=sys.stderr)
        return 2
    except (ParseError, UsageError, CategoryError, FunctorError, SearchBoundExceeded, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        parser.print_usage(sys.stderr)
        print(f"catho: error: {msg}", file=sys.stderr)
        return 2
    echoed: dict[str, Any] = {"max_dim": config.max_dim, "search_bound": config.search_bound}
    if hasattr(args, "n"):
        echoed["n"] = args.n
    report = {"command": args.command, "inputs": _inputs(args), "config": echoed, "result": result}
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

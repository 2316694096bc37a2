"""Command-line front end.

Exit codes: 0 success, 1 internal error or a failing gallery check,
2 invalid input (the message names the failing check).
"""

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from . import __version__, exprdsl
from .curves import Verdict, curve_classify, curve_from_json, geodesic_or_invariant_check
from .errors import ValidationError
from .gallery import gallery, get_entry
from .immersion import from_json
from .slant import SamplerConfig, SweepRow, classify, sweep
from .structure import StructureClass, label_note, load_manifold, lookup


def _positive_float(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return x


def _positive_int(text):
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if x < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text}")
    return x


def load_json(path):
    """Read a JSON file; syntax errors name the file and the byte offset."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ValidationError(f"{path}: cannot read: {exc.strerror}") from exc
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ValidationError(f"{path}: not UTF-8 at byte offset {exc.start}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise ValidationError(
            f"{path}: malformed JSON at byte offset {offset} (line {exc.lineno}, column {exc.colno}): {exc.msg}"
        ) from exc


def _number(text, what):
    """A number or a constant expression such as ``pi/4``."""
    try:
        return float(exprdsl.evaluate(exprdsl.parse(text), {}))
    except ValidationError as exc:
        raise ValidationError(f"{what}: {exc}") from exc


def _assignments(items, what) -> dict:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ValidationError(f"{what} expects name=value, got {item!r}")
        out[name.strip()] = _number(value.strip(), f"{what} {name}")
    return out


def _config(args) -> SamplerConfig:
    kw = {}
    for attr, key in (("samples", "samples"), ("seed", "seed"),
                      ("tol_residual", "tol_residual"), ("tol_const", "tol_const")):
        value = getattr(args, attr, None)
        if value is not None:
            kw[key] = value
    return SamplerConfig(**kw).validate()


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _emit(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _structure_arg(args, fallback=None):
    if getattr(args, "registry", None):
        return lookup(args.registry).structure, args.registry
    if getattr(args, "manifold", None):
        return load_manifold(load_json(args.manifold)), args.manifold
    if fallback is not None:
        return fallback, "inline"
    raise ValidationError("no structure given: use -m FILE or -r KEY (or an 'ambient' field in the input)")


# -- commands ----------------------------------------------------------------


def cmd_verify_structure(args):
    S, source = _structure_arg(args)
    note = label_note(lookup(args.registry)) if args.registry else None
    if args.format == "json":
        doc = {"version": __version__, "source": source, "structure": S.as_dict(), "summary": S.summary(),
               "labelNote": note}
        _emit(args, _dump(doc))
        return 0
    lines = [
        S.summary(),
        f"class: {S.klass.value}",
        f"epsilon: {S.epsilon:+d}",
        f"compat: {S.compat.value}",
        f"signature: {S.g.signature}",
        f"residual J^2: {S.square_residual!r}",
        f"residual compat: {S.compat_residual!r}",
        f"residual adjoint: {S.adjoint_residual!r}",
    ]
    if note:
        lines.append(f"note: {note}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_classify(args):
    doc = load_json(args.input)
    imm, ambient = from_json(doc)
    S, source = _structure_arg(args, ambient)
    config = _config(args)
    result = classify(imm, S, config)
    if args.format == "text":
        d = result.as_dict()
        _emit(args, "".join(f"{k}: {d[k]}\n" for k in sorted(d)))
        return 0
    report = {
        "version": __version__,
        "input": args.input,
        "structure": source,
        "config": config.as_dict(),
        "jacobian": imm.jacobian_kind,
        "report": result.as_dict(),
    }
    _emit(args, _dump(report))
    return 0


def cmd_gallery_list(args):
    lines = []
    for e in gallery():
        flag = "" if e.enabled else f"  [disabled: {e.disabled_reason}]"
        params = ", ".join(f"{k}={v:g}" for k, v in e.defaults.items())
        lines.append(f"{e.name:5s} {e.structure_name:3s} {e.description} ({params}){flag}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_gallery_run(args):
    config = _config(args)
    overrides = _assignments(args.param, "-p")
    if args.name:
        entries = [get_entry(args.name)]
    else:
        entries = gallery(include_disabled=False)
        if overrides:
            raise ValidationError("-p needs a single entry name")
    results = []
    for e in entries:
        unknown = set(overrides) - set(e.parameters)
        if unknown:
            from .errors import UnknownParameter

            raise UnknownParameter(f"{e.name} has no parameters {sorted(unknown)}; parameters: {e.parameters}")
        consts = {**e.defaults, **overrides}
        reason = e.excluded(consts)
        if reason:
            raise ValidationError(f"{e.name}: constants violate the entry constraint ({reason})")
        results.append(e.run(consts, config))
    if args.format == "json":
        _emit(args, _dump({"version": __version__, "config": config.as_dict(),
                           "results": [r.as_dict() for r in results]}))
    else:
        lines = []
        for r in results:
            c = r.classification
            theta = "" if c.theta is None else f" theta {c.theta:.6f}"
            line = f"{r.entry} {'PASS' if r.passed else 'FAIL'}, lambda {c.lam:.6f}, {c.typetag.value}{theta}"
            if r.failures:
                line += " (" + "; ".join(r.failures) + ")"
            lines.append(line)
        _emit(args, "\n".join(lines) + "\n")
    return 0 if all(r.passed for r in results) else 1


def _range(text):
    name, sep, bounds = text.partition("=")
    parts = bounds.split(":")
    if not sep or len(parts) != 3:
        raise ValidationError(f"--param expects name=lo:hi:step, got {text!r}")
    lo, hi, step = (_number(p, f"--param {name}") for p in parts)
    return name.strip(), (lo, hi, step)


def cmd_sweep(args):
    entry = get_entry(args.name)
    param, rng = _range(args.param)
    rows = sweep(entry, param, rng, _assignments(args.fix, "--fix"), _config(args))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SweepRow.CSV_HEADER)
    for row in rows:
        w.writerow(row.csv_fields())
    _emit(args, buf.getvalue())
    return 0


def cmd_curve(args):
    c, S = curve_from_json(load_json(args.input))
    if args.samples:
        from dataclasses import replace

        c = replace(c, samples=args.samples)
    if S.dim == 2 and S.klass is StructureClass.NORDEN:
        verdict, rep = geodesic_or_invariant_check(c, S)
    else:
        verdict, rep = Verdict.NOT_APPLICABLE, curve_classify(c, S)
    _emit(args, _dump({
        "version": __version__,
        "input": args.input,
        "structure": S.summary(),
        "config": {"samples": c.samples, "domain": list(c.domain)},
        "report": rep.as_dict(),
        "geodesicOrInvariant": verdict.value,
    }))
    return 0


# -- parser ------------------------------------------------------------------


def _add_structure(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("-m", "--manifold", metavar="FILE", help="manifold JSON: {dim, J, g} or {registry}")
    g.add_argument("-r", "--registry", metavar="KEY", help="registered structure, e.g. S5")


def _add_sampler(p):
    p.add_argument("--samples", type=_positive_int, help="sample count (default 64)")
    p.add_argument("--seed", type=int, help="sampling seed (default 42)")
    p.add_argument("--tol-residual", type=_positive_float, help="|P^2 - lambda I| tolerance")
    p.add_argument("--tol-const", type=_positive_float, help="lambda constancy tolerance")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nordenslant", description="Slant submanifold classification.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-structure", help="classify a (J, g) pair")
    _add_structure(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_verify_structure)

    p = sub.add_parser("classify", help="classify an immersion")
    _add_structure(p)
    p.add_argument("-i", "--input", required=True, metavar="FILE")
    _add_sampler(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("gallery", help="list or run the example gallery")
    gsub = p.add_subparsers(dest="gallery_command", required=True)
    q = gsub.add_parser("list")
    q.add_argument("-o", "--output")
    q.set_defaults(run=cmd_gallery_list)
    q = gsub.add_parser("run")
    q.add_argument("name", nargs="?", help="entry name; omit to run every enabled entry")
    q.add_argument("-p", "--param", action="append", metavar="NAME=VALUE")
    _add_sampler(q)
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.add_argument("-o", "--output")
    q.set_defaults(run=cmd_gallery_run)

    p = sub.add_parser("sweep", help="classify along a one-parameter family")
    p.add_argument("name")
    p.add_argument("--param", required=True, metavar="NAME=LO:HI:STEP")
    p.add_argument("--fix", action="append", metavar="NAME=VALUE")
    _add_sampler(p)
    p.add_argument("-o", "--output", metavar="FILE.csv")
    p.set_defaults(run=cmd_sweep)

    p = sub.add_parser("curve", help="analyse a curve")
    p.add_argument("-i", "--input", required=True, metavar="FILE")
    p.add_argument("--samples", type=_positive_int)
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_curve)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - last-resort boundary
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 on success, 1 when a mathematical check fails (the report is
still printed), 2 for malformed input or flags.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from typing import Optional, Sequence

from .chain import (AugmentedChainComplex, ChainComplex, TruncationWarning, homologies, validate_complex)
from .cubical import (AugmentedCubicalObject, CubicalObject, FiniteCubicalSet, Poset, validate_augmented,
                      validate_cubical, validate_finite_cubical)
from .derive import (AdditiveFunctor, Resolution, compare_with_classical, derived_functors, full_resolution,
                     resolution_em_report, tor_oracle, validate_resolution)
from .exactalg import FgAbGroup, Hom
from .homotopy import FiniteCubicalGroup, KanError, kan_check, pi_report, validate_cubical_group
from .io import InputError, dumps, group_from_json, load_path, resolution_to_json
from .norm import normalize
from .report import Report
from .simplicial import SimplicialObject, validate_simplicial
from .suite import run_suite

DEFAULT_MAX_DIM = 6


class UsageError(Exception):
    """Bad flags or input; mapped to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _max_dim() -> int:
    raw = os.environ.get("MOOREBOX_MAX_DIM", str(DEFAULT_MAX_DIM))
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"MOOREBOX_MAX_DIM must be an integer, got {raw!r}") from None
    if cap < 0:
        raise UsageError("MOOREBOX_MAX_DIM must be non-negative")
    return cap


def _dim(value: int) -> int:
    cap = _max_dim()
    if value < 1:
        raise UsageError("--dim-bound must be at least 1")
    if value > cap:
        raise UsageError(f"--dim-bound {value} exceeds MOOREBOX_MAX_DIM={cap}")
    return value


def _group(text: str, flag: str) -> FgAbGroup:
    try:
        return group_from_json(text, flag)
    except InputError as exc:
        raise UsageError(str(exc)) from None


def _functor(text: str) -> AdditiveFunctor:
    if text == "identity":
        return AdditiveFunctor.identity()
    kind, sep, rest = text.partition(":")
    if not sep or kind not in ("tensor", "hom"):
        raise UsageError(f"--functor: expected identity, tensor:<group> or hom:<group>, got {text!r}")
    b = _group(rest, "--functor")
    return AdditiveFunctor.tensor(b) if kind == "tensor" else AdditiveFunctor.hom_from(b)


class Output:
    """Collects reports and prints them as text or JSON lines."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.failed = False

    def line(self, text: str) -> None:
        if self.fmt == "text":
            print(text, file=self.stream)

    def record(self, payload: dict) -> None:
        if self.fmt == "json":
            print(dumps(payload), file=self.stream)

    def report(self, rep: Report, label: Optional[str] = None, **extra) -> None:
        self.failed |= not rep.ok
        if self.fmt == "json":
            self.record({**extra, **rep.to_dict()})
            return
        status = "ok" if rep.ok else f"FAILED ({len(rep.failures)} violations)"
        print(f"{label or rep.check}: {status}", file=self.stream)
        for f in rep.failures[:10]:
            print(f"  {f}", file=self.stream)
        if len(rep.failures) > 10:
            print(f"  ... {len(rep.failures) - 10} more", file=self.stream)


# ---------------------------------------------------------------------------
# commands


def _verify_object(obj, level: Optional[str]) -> Report:
    if isinstance(obj, Resolution):
        return validate_resolution(obj, level)
    if isinstance(obj, AugmentedCubicalObject):
        return validate_augmented(obj, level)
    if isinstance(obj, CubicalObject):
        return validate_cubical(obj, level)
    if isinstance(obj, FiniteCubicalGroup):
        return validate_cubical_group(obj)
    if isinstance(obj, FiniteCubicalSet):
        return validate_finite_cubical(obj, level or "cc")
    if isinstance(obj, SimplicialObject):
        return validate_simplicial(obj, level)
    if isinstance(obj, (ChainComplex, AugmentedChainComplex)):
        c = obj.complex if isinstance(obj, AugmentedChainComplex) else obj
        rep = validate_complex(c)
        if isinstance(obj, AugmentedChainComplex) and c.dim_bound >= 1:
            rep.expect((obj.augmentation @ c.d(1)).is_zero(), identity="ε d_1 = 0")
        return rep
    if isinstance(obj, Hom):
        rep = Report("hom")
        rep.expect(obj.is_well_defined(), identity="respects relations")
        return rep
    rep = Report(type(obj).__name__.lower())
    if isinstance(obj, FgAbGroup):
        rep.details["canonical"] = str(obj)
    elif isinstance(obj, Poset):
        rep.details["size"] = len(obj.elements)
    return rep


def cmd_verify(args, out: Output) -> None:
    for path in args.inputs:
        obj = load_path(path)
        try:
            rep = _verify_object(obj, args.level)
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from None
        out.report(rep, f"{rep.check} {path}", input=path)


def cmd_homology(args, out: Output) -> None:
    for path in args.inputs:
        obj = load_path(path)
        if isinstance(obj, Resolution):
            obj = obj.cubical()
        if isinstance(obj, AugmentedCubicalObject):
            obj = obj.object
        if isinstance(obj, AugmentedChainComplex):
            obj = obj.complex
        if isinstance(obj, CubicalObject):
            try:
                c = normalize(obj, args.variant).complex
            except ValueError as exc:
                raise UsageError(f"{path}: {exc}") from None
        elif isinstance(obj, ChainComplex):
            c = obj
        else:
            raise UsageError(f"{path}: homology needs a cubical object or chain complex")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            hs = [str(h) for h in homologies(c)]
        out.record({"input": path, "variant": args.variant, "homology": hs, "certified_through": len(hs) - 1})
        for n, h in enumerate(hs):
            out.line(f"H_{n} = {h}")


def cmd_resolve(args, out: Output) -> None:
    a = _group(args.a, "--a")
    p = full_resolution(a, _dim(args.dim_bound), seed=args.seed)
    rep = validate_resolution(p, "pcpc")
    rep.absorb(resolution_em_report(p))
    out.report(rep, f"resolution of {a}", a=str(a))
    out.line("ranks: " + ", ".join(str(g.ngens) for g in p.groups))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(resolution_to_json(p)) + "\n")


def cmd_derive(args, out: Output) -> None:
    a = _group(args.a, "--a")
    t = _functor(args.functor)
    hs = [str(h) for h in derived_functors(t, a, _dim(args.dim_bound), args.variant)]
    out.record({"a": str(a), "functor": t.describe(), "variant": args.variant, "derived": hs})
    for n, h in enumerate(hs):
        out.line(f"L_{n} = {h}")


def cmd_tor(args, out: Output) -> None:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    a, b = _group(args.a, "--a"), _group(args.b, "--b")
    t = str(tor_oracle(a, b, args.n))
    out.record({"a": str(a), "b": str(b), "n": args.n, "tor": t})
    out.line(t)


def cmd_compare(args, out: Output) -> None:
    a, b = _group(args.a, "--a"), _group(args.b, "--b")
    rep = compare_with_classical(b, a, _dim(args.dim_bound))
    out.report(rep)
    for d in rep.details["degrees"]:
        out.line(f"degree {d['degree']}: cubical {d['cubical']}, classical {d['classical']}")


def _finite(path: str):
    obj = load_path(path)
    if isinstance(obj, CubicalObject):
        try:
            obj = FiniteCubicalGroup.from_cubical_object(obj)
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from None
    if not isinstance(obj, (FiniteCubicalGroup, FiniteCubicalSet)):
        raise UsageError(f"{path}: expected a finite cubical set or group")
    return obj


def cmd_pi(args, out: Output) -> None:
    obj = _finite(args.input)
    cs = obj.cset if isinstance(obj, FiniteCubicalGroup) else obj
    degrees = [args.n] if args.n is not None else list(range(cs.dim_bound))
    for n in degrees:
        if not 0 <= n < cs.dim_bound:
            raise UsageError(f"--n must lie in 0..{cs.dim_bound - 1}")
        try:
            rep = pi_report(obj, n)
        except KanError as exc:
            rep = Report("pi", failures=[{"degree": n, "identity": "Kan", "error": str(exc)}])
        out.report(rep, f"pi_{n}", n=n)
        if rep.ok:
            out.line(f"pi_{n} = {rep.details.get('group', 'order ' + str(rep.details['order']))}")


def cmd_kan(args, out: Output) -> None:
    obj = _finite(args.input)
    cs = obj.cset if isinstance(obj, FiniteCubicalGroup) else obj
    up_to = cs.dim_bound if args.up_to is None else args.up_to
    if not 1 <= up_to <= cs.dim_bound:
        raise UsageError(f"--up-to must lie in 1..{cs.dim_bound}")
    out.report(kan_check(cs, up_to))


def cmd_suite(args, out: Output) -> None:
    only = set(args.only) if args.only else None
    for num, name, rep in run_suite(args.seed, only):
        out.report(rep, f"criterion {num} ({name})", criterion=num, name=name)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="moorebox", description="Cubical Moore complexes, normalizations and derived functors.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", help="validate typed JSON inputs")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--level")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("homology", help="normalize and compute homology")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--variant", choices=("N", "M", "C", "F"), default="N")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("resolve", help="build and validate a resolution")
    s.add_argument("--a", required=True)
    s.add_argument("--dim-bound", type=int, default=3)
    s.add_argument("--seed", type=int)
    s.add_argument("--output")
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("derive", help="cubical derived functors")
    s.add_argument("--a", required=True)
    s.add_argument("--functor", default="identity")
    s.add_argument("--variant", choices=("N", "M", "C"), default="N")
    s.add_argument("--dim-bound", type=int, default=3)
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("tor", help="classical Tor")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_tor)

    s = sub.add_parser("compare", help="cubical against classical Tor")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--dim-bound", type=int, default=3)
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("pi", help="homotopy groups of a finite cubical set or group")
    s.add_argument("input")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_pi)

    s = sub.add_parser("kan", help="check the Kan filler condition")
    s.add_argument("input")
    s.add_argument("--up-to", type=int)
    s.set_defaults(func=cmd_kan)

    s = sub.add_parser("suite", help="run the acceptance battery")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--only", type=int, nargs="+")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out = Output(args.format)
        args.func(args, out)
    except (UsageError, InputError) as exc:
        print(f"moorebox: error: {exc}", file=sys.stderr)
        return 2
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())

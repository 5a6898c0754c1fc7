"""``mincomp`` command line.

Exit codes: 0 exists / ok, 2 bad input, 3 empty base, 4 search too large,
5 window verification failed (including an exhausted shell cap),
10 no minimal complement (or none certified), 11 unknown.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import List, Optional, Sequence, Tuple

from . import oracle
from .decide import Decision, Outcome, decide
from .epsets import EPSet, canonicalize, format_epset, parse_epset, residue_profile
from .errors import (
    EmptyBase,
    MincompError,
    SearchTooLarge,
    ShellCapExceeded,
)
from .finitegrp import (
    FiniteAbelianGroup,
    GroupSubset,
    extract_minimal,
    minimal_r_net,
    pair_minimal_complement,
    power,
    product_minimal,
)
from .gallery import (
    diagonal,
    diagonal_hyperplane_windows,
    example_infinite,
    hyperplane,
    ksy_adapter,
    polynomial_image,
)
from .witness import (
    DEFAULT_SHELL_CAP,
    WitnessComplement,
    build_witness,
    infer_shells,
    parse_witness_dump,
    verify_window,
)

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_EMPTY_BASE = 3
EXIT_SEARCH_TOO_LARGE = 4
EXIT_WINDOW_FAILED = 5
EXIT_NOT_EXISTS = 10
EXIT_UNKNOWN = 11


class UsageError(Exception):
    pass


# -- formatting -------------------------------------------------------------

def _fmt_el(p) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def _fmt_set(pts) -> str:
    return "{" + ", ".join(_fmt_el(p) for p in sorted(pts)) + "}"


def _fmt_machine_set(pts) -> str:
    # the trivial group's only element prints as "()" so it differs from the empty set
    return ";".join(",".join(str(x) for x in p) if p else "()" for p in sorted(pts))


def _emit(lines: Sequence[str]):
    for line in lines:
        print(line)


# -- parsing helpers ----------------------------------------------------------

def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_epset(path: str) -> EPSet:
    return parse_epset(_read(path))


def _parse_group(spec: str) -> FiniteAbelianGroup:
    try:
        factors = tuple(int(x) for x in spec.split(",") if x.strip())
        return FiniteAbelianGroup(factors)
    except ValueError as exc:
        raise UsageError(f"bad group spec {spec!r}: {exc}") from None


def _parse_subset(g: FiniteAbelianGroup, text: str) -> GroupSubset:
    """Semicolon-separated tuples; for cyclic groups commas also separate elements."""
    text = text.strip()
    if text == "all":
        return g.full()
    rank = len(g.invariant_factors)
    chunks = text.replace(";", ",").split(",") if rank == 1 else text.split(";")
    els = []
    for chunk in chunks:
        try:
            el = tuple(int(x) for x in chunk.split(","))
        except ValueError:
            raise UsageError(f"bad element {chunk.strip()!r} in {text!r}") from None
        if len(el) != rank:
            raise UsageError(f"element {chunk.strip()!r} needs {rank} coordinates")
        els.append(el)
    return g.subset(els)


def _parse_box(text: str, d: int) -> Tuple[Tuple[int, int], ...]:
    sides = []
    for part in text.split(","):
        try:
            lo, hi = part.split(":")
            sides.append((int(lo), int(hi)))
        except ValueError:
            raise UsageError(f"bad box side {part!r}; expected lo:hi") from None
    if len(sides) == 1:
        sides = sides * d
    if len(sides) != d or any(lo > hi for lo, hi in sides):
        raise UsageError(f"box {text!r} does not describe a nonempty box in Z^{d}")
    return tuple(sides)


def _parse_ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def _parse_points(text: str) -> List[Tuple[int, ...]]:
    try:
        return [tuple(int(x) for x in chunk.split(",")) for chunk in text.split(";") if chunk.strip()]
    except ValueError:
        raise UsageError(f"bad point list {text!r}") from None


# -- commands -------------------------------------------------------------------

def cmd_decompose(args) -> int:
    cw = canonicalize(_load_epset(args.file))
    prof = residue_profile(cw)
    factors = list(prof.quotient.invariant_factors)
    if args.format == "machine":
        _emit([
            f"periodic={str(prof.is_periodic).lower()}",
            f"factors={','.join(map(str, factors))}",
            f"sporadic={_fmt_machine_set(cw.sporadic)}",
            f"base={_fmt_machine_set(cw.base)}",
            f"Q={_fmt_machine_set(prof.Q)}",
            f"W0={_fmt_machine_set(prof.W0)}",
            f"W1={_fmt_machine_set(prof.W1)}",
        ])
        return EXIT_OK
    print(format_epset(cw), end="")
    _emit([
        f"# periodic: {str(prof.is_periodic).lower()}",
        f"# factors {factors}",
        f"# Q = {_fmt_set(prof.Q)}",
        f"# W0 = {_fmt_set(prof.W0)}",
        f"# W1 = {_fmt_set(prof.W1)}",
    ])
    return EXIT_OK


def _decision_lines(dec: Decision, machine: bool) -> List[str]:
    if machine:
        lines = [f"outcome={dec.outcome.value}"]
        if dec.reason is not None:
            lines.append(f"reason={dec.reason.value}")
        if dec.certificate is not None:
            lines.append(f"certificate={_fmt_machine_set(dec.certificate.N.elements)}")
            lines.append("witness=" + ";".join(
                f"{','.join(map(str, n))}:{','.join(map(str, q))}"
                for n, q in dec.certificate.witness))
        if dec.necessary_certificate is not None:
            lines.append(f"necessary={_fmt_machine_set(dec.necessary_certificate)}")
        return lines
    prof = dec.profile
    lines = [f"quotient: {prof.group}", f"Q = {_fmt_set(prof.Q)}",
             f"W1 = {_fmt_set(prof.W1)}", f"outcome: {dec.outcome.value}"]
    if dec.reason is not None:
        lines.append(f"reason: {dec.reason.value}")
    if dec.certificate is not None:
        lines.append(f"certificate N = {_fmt_set(dec.certificate.N.elements)}")
        for n, q in dec.certificate.witness:
            lines.append(f"  {_fmt_el(n)} + {_fmt_el(q)} is reached only from {_fmt_el(n)}")
    if dec.necessary_certificate is not None:
        lines.append(f"necessary condition holds with N = {_fmt_set(dec.necessary_certificate)}")
    return lines


_OUTCOME_EXIT = {Outcome.EXISTS: EXIT_OK, Outcome.NOT_EXISTS: EXIT_NOT_EXISTS,
                 Outcome.UNKNOWN: EXIT_UNKNOWN}


def cmd_decide(args) -> int:
    dec = decide(_load_epset(args.file))
    _emit(_decision_lines(dec, args.format == "machine"))
    return _OUTCOME_EXIT[dec.outcome]


def _report(report, machine: bool) -> int:
    print(report.machine() if machine else report.text())
    return EXIT_OK if report.ok else EXIT_WINDOW_FAILED


def cmd_witness(args) -> int:
    if args.shells < 0:
        raise UsageError("--shells must be >= 0")
    dec = decide(_load_epset(args.file))
    if dec.outcome is not Outcome.EXISTS:
        _emit(_decision_lines(dec, args.format == "machine"))
        return EXIT_NOT_EXISTS
    wit = build_witness(dec.canonical, dec.certificate, args.shells)
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write(wit.dump())
    else:
        print(wit.dump(), end="")
    core = _parse_box(args.core, dec.canonical.dim) if args.core else \
        tuple((-args.shells, args.shells) for _ in range(dec.canonical.dim))
    return _report(verify_window(dec.canonical, wit, core, args.cap), args.format == "machine")


def cmd_verify(args) -> int:
    dec = decide(_load_epset(args.file))
    if dec.outcome is not Outcome.EXISTS:
        _emit(_decision_lines(dec, args.format == "machine"))
        return EXIT_NOT_EXISTS
    try:
        kept, removed = parse_witness_dump(_read(args.witness))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = dec.canonical.dim
    if any(len(p) != d for p in kept | removed):
        raise UsageError(f"witness points must lie in Z^{d}")
    shells = args.shells
    if shells is None:
        shells = infer_shells(dec.canonical, dec.certificate, kept | removed)
    wit = WitnessComplement(dec.certificate, dec.canonical.basis, shells, kept, removed)
    core = _parse_box(args.core, d)
    return _report(verify_window(dec.canonical, wit, core, args.cap), args.format == "machine")


def _verified(ok: bool):
    if not ok:
        raise AssertionError("result failed the reference check")


def cmd_group(args) -> int:
    g = _parse_group(args.group)
    machine = args.format == "machine"
    if args.verb == "extract-minimal":
        w, c = _parse_subset(g, args.w), _parse_subset(g, args.c)
        m = extract_minimal(w, c)
        _verified(oracle.naive_minimality_check(g.invariant_factors, w.elements, m.elements))
        print(f"minimal={_fmt_machine_set(m.elements)}" if machine else f"minimal complement {_fmt_set(m.elements)}")
        return EXIT_OK
    if args.verb == "pair":
        q1, q = _parse_subset(g, args.q1), _parse_subset(g, args.q)
        cert = pair_minimal_complement(q1, q)
        if cert is None:
            print("N=" if machine else "no minimal complement of the pair")
            return EXIT_NOT_EXISTS
        _verified(oracle.naive_pair_check(g.invariant_factors, q1.elements, q.elements, cert.N.elements))
        print(f"N={_fmt_machine_set(cert.N.elements)}" if machine else f"N = {_fmt_set(cert.N.elements)}")
        return EXIT_OK
    if args.verb == "rnet":
        a = _parse_subset(g, args.a)
        net = minimal_r_net(a, args.r)
        _verified(oracle.naive_minimality_check(g.invariant_factors, power(a, args.r).elements,
                                                net.elements))
        print(f"net={_fmt_machine_set(net.elements)}" if machine
              else f"minimal {args.r}-net {_fmt_set(net.elements)} ({len(net)} elements)")
        return EXIT_OK
    if args.verb == "product":
        return _group_product(args, g, machine)
    raise UsageError(f"unknown verb {args.verb!r}")


def _group_product(args, g: FiniteAbelianGroup, machine: bool) -> int:
    if args.part:
        parts = []
        for text in args.part:
            try:
                gs, ws, cs = text.split("|")
            except ValueError:
                raise UsageError(f"--part {text!r} must look like 'factors|W|C'") from None
            pg = _parse_group(gs)
            parts.append((_parse_subset(pg, ws), _parse_subset(pg, cs)))
        w, m = product_minimal(parts)
        if w.group != g:
            raise UsageError(f"parts multiply to {w.group}, not {g}")
        _verified(oracle.naive_minimality_check(g.invariant_factors, w.elements, m.elements))
        print(f"product={_fmt_machine_set(m.elements)}" if machine
              else f"minimal complement of the product {_fmt_set(m.elements)}")
        return EXIT_OK
    if not args.file or args.h is None:
        raise UsageError("product needs --file and --h, or one or more --part")
    h = _parse_subset(g, args.h)
    hmin = extract_minimal(h, g.full())
    _verified(oracle.naive_minimality_check(g.invariant_factors, h.elements, hmin.elements))
    dec = decide(_load_epset(args.file))
    if dec.outcome is not Outcome.EXISTS:
        _emit(_decision_lines(dec, machine))
        return EXIT_NOT_EXISTS
    wit = build_witness(dec.canonical, dec.certificate, args.shells)
    core = _parse_box(args.core, dec.canonical.dim) if args.core else \
        tuple((-args.shells, args.shells) for _ in range(dec.canonical.dim))
    report = verify_window(dec.canonical, wit, core, args.cap)
    if machine:
        _emit([f"free_certificate={_fmt_machine_set(dec.certificate.N.elements)}",
               f"finite_complement={_fmt_machine_set(hmin.elements)}", report.machine()])
    else:
        _emit([f"free factor: certificate N = {_fmt_set(dec.certificate.N.elements)}",
               f"finite factor: minimal complement of H = {_fmt_set(hmin.elements)} (exact)",
               "product: (witness M) x (finite complement)", report.text()])
    return EXIT_OK if report.ok else EXIT_WINDOW_FAILED


def cmd_gallery(args) -> int:
    machine = args.format == "machine"
    if args.name == "example-infinite":
        F = _parse_points(args.F) if args.F else None
        print(format_epset(example_infinite(args.variant, args.d, k=args.k, i=args.i, F=F)), end="")
        return EXIT_OK
    if args.name == "ksy":
        w = ksy_adapter(args.m, _parse_ints(args.X), _parse_ints(args.Y0 or ""),
                        _parse_ints(args.Y1 or ""))
        print(format_epset(w), end="")
        return EXIT_OK
    if args.name == "diagonal":
        core = _parse_box(args.core, args.d)
        margin = max(max(abs(lo), abs(hi)) for lo, hi in core)
        big = tuple((lo - margin, hi + margin) for lo, hi in core)
        win = diagonal_hyperplane_windows(args.d, args.i, big, signs=args.signs)
        dset = diagonal(args.d, args.signs)
        uncovered = oracle.window_cover_check(win.h_points, dset.__contains__, oracle.Box(core))
        h_core = sorted(p for p in hyperplane(args.d, args.i).window(core))
        lonely = [p for p in h_core
                  if oracle.representations(win.h_points, dset.__contains__, p) == [p]]
        ok = not uncovered and len(lonely) == len(h_core)
        if machine:
            _emit([f"uncovered={len(uncovered)}", f"hyperplane_points={len(h_core)}",
                   f"minimality_witnesses={len(lonely)}"])
        else:
            _emit([f"diagonal points in window: {len(win.d_points)}",
                   f"hyperplane points in window: {len(win.h_points)}",
                   f"core targets uncovered: {len(uncovered)}",
                   f"hyperplane core points that only cover themselves: {len(lonely)}/{len(h_core)}",
                   "eventually periodic: no", "PASS" if ok else "FAIL"])
        return EXIT_OK if ok else EXIT_WINDOW_FAILED
    if args.name == "polynomial":
        domain = _parse_box(args.domain, args.m)
        img = polynomial_image(args.f, args.m, domain)
        if machine:
            for i in sorted(img.missed):
                _emit([f"coord{i}_surjective={str(img.surjective_on_window(i)).lower()}",
                       f"coord{i}_on_hyperplane={img.on_hyperplane[i]}"])
        else:
            print(img.report())
        return EXIT_OK
    raise UsageError(f"unknown gallery entry {args.name!r}")


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mincomp",
                                description="Minimal additive complements in Z^d and finite abelian groups.")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "machine"), default="text")
    # repeated after a verb; must not reset a value given before it
    nested = argparse.ArgumentParser(add_help=False)
    nested.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("decompose", parents=[fmt], help="canonical decomposition of an EPSet file")
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("decide", parents=[fmt], help="does a minimal complement exist")
    s.add_argument("file")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("witness", parents=[fmt], help="build and verify an explicit minimal complement")
    s.add_argument("file")
    s.add_argument("--shells", type=int, default=12)
    s.add_argument("--core", help="box lo:hi[,lo:hi...]; default [-shells, shells]^d")
    s.add_argument("--cap", type=int, default=DEFAULT_SHELL_CAP)
    s.add_argument("--dump", help="write the K/R dump here instead of stdout")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("verify", parents=[fmt], help="window report for a K/R witness dump")
    s.add_argument("file")
    s.add_argument("--witness", required=True)
    s.add_argument("--core", required=True)
    s.add_argument("--shells", type=int)
    s.add_argument("--cap", type=int, default=DEFAULT_SHELL_CAP)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("group", parents=[fmt], help="finite abelian group computations")
    s.add_argument("--group", required=True, help="invariant factors, e.g. 2,2")
    verbs = s.add_subparsers(dest="verb", required=True)
    v = verbs.add_parser("extract-minimal", parents=[nested])
    v.add_argument("--w", required=True)
    v.add_argument("--c", required=True)
    v = verbs.add_parser("pair", parents=[nested])
    v.add_argument("--q1", required=True)
    v.add_argument("--q", required=True)
    v = verbs.add_parser("rnet", parents=[nested])
    v.add_argument("--a", required=True)
    v.add_argument("--r", type=int, required=True)
    v = verbs.add_parser("product", parents=[nested])
    v.add_argument("--file")
    v.add_argument("--h")
    v.add_argument("--shells", type=int, default=12)
    v.add_argument("--core")
    v.add_argument("--cap", type=int, default=DEFAULT_SHELL_CAP)
    v.add_argument("--part", action="append", help="factors|W|C, repeatable")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("gallery", parents=[fmt], help="named example families")
    names = s.add_subparsers(dest="name", required=True)
    v = names.add_parser("example-infinite", parents=[nested])
    v.add_argument("--variant", type=int, choices=(1, 2, 3), required=True)
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--k", type=int)
    v.add_argument("--i", type=int)
    v.add_argument("--F", help="points separated by ';', coordinates by ','")
    v = names.add_parser("ksy", parents=[nested])
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--X", required=True)
    v.add_argument("--Y0")
    v.add_argument("--Y1")
    v = names.add_parser("diagonal", parents=[nested])
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--i", type=int, required=True)
    v.add_argument("--core", default="-5:5")
    v.add_argument("--signs", choices=("all", "main"), default="all")
    v = names.add_parser("polynomial", parents=[nested])
    v.add_argument("--f", action="append", required=True, help="one polynomial per coordinate")
    v.add_argument("--m", type=int, default=1)
    v.add_argument("--domain", default="-10:10")
    s.set_defaults(func=cmd_gallery)
    return p


_VALUE_OPTIONS = {"--core", "--domain", "--w", "--c", "--q1", "--q", "--a", "--h", "--part",
                  "--X", "--Y0", "--Y1", "--F", "--f"}
_NEGATIVE = re.compile(r"^-\d")


def _glue_negative_values(argv: Sequence[str]) -> List[str]:
    """Turn ``--core -6:6`` into ``--core=-6:6`` so argparse does not see an option."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            if nxt is not None and _NEGATIVE.match(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except EmptyBase as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_BASE
    except SearchTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEARCH_TOO_LARGE
    except ShellCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WINDOW_FAILED
    except (UsageError, MincompError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

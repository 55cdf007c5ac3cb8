"""Command-line interface: ``triplesys construct | verify | enumerate | spectrum``.

Exit codes
  0  success (for verify: every requested property holds)
  1  invalid parameters, bounds, or an unparsable input file
  2  construction error (e.g. order not in the spectrum, invalid input system)
  3  verify: some requested property fails (the witness is printed)
  4  enumerate: search budget exceeded
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import kernels
from .algebra import make_abelian_group
from .constructions import (affine_mendelsohn, anti_double, char2_mendelsohn, field_mendelsohn,
                            netto_sts, projective_sts, spectrum_construct, spectrum_offenders,
                            steiner_affine)
from .designs import (OrientedTripleSystem, UnorderedTripleSystem, dumps_design, find_mitre,
                      is_proper, loads_design, mts_to_quasigroup, quasigroup_to_mts,
                      sts_to_quasigroup)
from .enumeration import count_affine
from .errors import (ConsistencyFailure, InvalidSTS, NotInSpectrum, NotMendelsohn, ParseError,
                     SearchBudgetExceeded, TriplesysError)
from .moufang import dumps_loop, is_commutative_moufang, loads_loop, nucleus
from .quasigroup import (CayleyTable, antidistributivity_witness, dumps_table, loads_table,
                         predicate_suite, three_generated_medial)

EXIT_OK, EXIT_PARAMS, EXIT_CONSTRUCT, EXIT_PROPERTY, EXIT_BUDGET = 0, 1, 2, 3, 4

TABLE_PROPERTIES = ("idempotent", "commutative", "semisymmetric", "totally_symmetric",
                    "medial", "left_distributive", "right_distributive", "distributive",
                    "mendelsohn", "antidistributive", "proper", "three_generated_medial")
STS_PROPERTIES = ("antimitre",)
LOOP_PROPERTIES = ("cml",)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAMS, f"{self.prog}: error: {message}\n")


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace("x", ",").split(",") if t.strip()]


def _matrix(text: str):
    rows = [r for r in text.split(";") if r.strip()]
    if len(rows) == 1 and "," not in rows[0]:
        return int(rows[0])
    return [_int_list(r) for r in rows]


def _fail(code: int, exc: BaseException) -> int:
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return code


# -- construct ---------------------------------------------------------------

def _build(args):
    kind = args.kind
    if kind == "affine":
        if args.factors is None or args.k is None:
            raise ValueError("affine needs --factors and --k")
        G = make_abelian_group(_int_list(args.factors))
        return affine_mendelsohn(G, _matrix(args.k))
    if kind == "field":
        return field_mendelsohn(args.p, args.d)
    if kind == "char2":
        return char2_mendelsohn(args.d)
    if kind == "steiner":
        return steiner_affine(args.d)
    if kind == "spectrum":
        if args.v is None:
            raise ValueError("spectrum needs --v")
        return spectrum_construct(args.v)
    if kind == "netto":
        return netto_sts(args.p, args.d)
    if kind == "projective":
        return projective_sts(args.n)
    if kind == "double":
        if args.input is None:
            raise ValueError("double needs --input")
        C = _read_design(args.input)
        if not isinstance(C, UnorderedTripleSystem):
            raise InvalidSTS("double needs an STS input file")
        orient = None
        if args.orientation:
            orient = [tuple(map(int, line.split())) for line in
                      Path(args.orientation).read_text().splitlines()
                      if line.split("#", 1)[0].strip()]
        return anti_double(C, orient)
    raise ValueError(f"unknown kind {kind}")


def _read_design(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc)) from None
    return loads_design(text)


def _summary(obj, strict: bool, threads: int | None) -> str:
    if isinstance(obj, UnorderedTripleSystem):
        return (f"order={obj.v} blocks={len(obj)} "
                f"antimitre={_flag(find_mitre(obj) is None)}")
    Q = obj if isinstance(obj, CayleyTable) else mts_to_quasigroup(obj)
    S = obj if isinstance(obj, OrientedTripleSystem) else quasigroup_to_mts(obj)
    rep = predicate_suite(Q, threads=threads)
    anti = antidistributivity_witness(Q, strict=strict, threads=threads) is None
    return (f"order={Q.n} blocks={len(S)} proper={_flag(is_proper(S))} "
            f"medial={_flag(rep.medial)} distributive={_flag(rep.distributive)} "
            f"antidistributive={_flag(anti)}")


def _render(obj, fmt: str) -> str:
    if fmt == "qg":
        if isinstance(obj, UnorderedTripleSystem):
            obj = sts_to_quasigroup(obj)
        elif isinstance(obj, OrientedTripleSystem):
            obj = mts_to_quasigroup(obj)
        return dumps_table(obj)
    if isinstance(obj, CayleyTable):
        obj = quasigroup_to_mts(obj)
    return dumps_design(obj)


def cmd_construct(args) -> int:
    try:
        obj = _build(args)
    except (NotInSpectrum, InvalidSTS, ParseError, ConsistencyFailure, OSError) as exc:
        return _fail(EXIT_CONSTRUCT, exc)
    except (TriplesysError, ValueError) as exc:
        return _fail(EXIT_PARAMS, exc)
    text = _render(obj, args.format)
    summary = _summary(obj, args.strict, args.threads) if args.summary else None
    if args.output:
        Path(args.output).write_text(text)
        if summary:
            print(summary)
    else:
        sys.stdout.write(text)
        if summary:
            print(summary, file=sys.stderr)
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def _load_any(text: str, check_order: bool):
    head = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if head == "QG":
        return loads_table(text)
    if head == "LOOP":
        return loads_loop(text)
    if head in ("MTS", "STS"):
        try:
            return loads_design(text, check_order=check_order)
        except (ParseError, TriplesysError, ValueError) as exc:
            raise ParseError(str(exc)) from None
    raise ParseError("unrecognised header; expected QG, MTS, STS or LOOP")


def _dump_any(obj) -> str:
    if isinstance(obj, CayleyTable):
        return dumps_table(obj)
    if isinstance(obj, (OrientedTripleSystem, UnorderedTripleSystem)):
        return dumps_design(obj)
    return dumps_loop(obj)


def _check_table(Q: CayleyTable, props, strict, threads, S=None):
    rep = predicate_suite(Q, threads=threads)
    out = []
    for name in props:
        wit = None
        if name in rep.as_dict():
            ok = rep.as_dict()[name]
            if name == "distributive":
                wit = rep.witnesses.get("left_distributive") or rep.witnesses.get("right_distributive")
            elif name == "totally_symmetric":
                wit = next((rep.witnesses[k] for k in ("idempotent", "commutative", "semisymmetric")
                            if k in rep.witnesses), None)
            else:
                wit = rep.witnesses.get(name)
        elif name == "mendelsohn":
            ok = rep.mendelsohn
            wit = rep.witnesses.get("idempotent") or rep.witnesses.get("semisymmetric")
        elif name == "antidistributive":
            try:
                wit = antidistributivity_witness(Q, strict=strict, threads=threads)
            except NotMendelsohn:
                wit = ("not-mendelsohn",)
            ok = wit is None
        elif name == "proper":
            if S is None:
                try:
                    S = quasigroup_to_mts(Q)
                except NotMendelsohn:
                    S = None
            ok = S is not None and is_proper(S)
        elif name == "three_generated_medial":
            # every subquasigroup generated by three elements is medial
            ok, wit = three_generated_medial(Q)
        else:
            raise ValueError(f"property {name} does not apply to a quasigroup")
        out.append((name, ok, wit))
    return out


def cmd_verify(args) -> int:
    try:
        obj = _load_any(Path(args.path).read_text(), not args.no_order_check)
    except (ParseError, OSError) as exc:
        return _fail(EXIT_PARAMS, exc)
    except (TriplesysError, ValueError) as exc:
        return _fail(EXIT_PARAMS, ParseError(str(exc)))
    props = list(args.property or [])
    try:
        if isinstance(obj, UnorderedTripleSystem):
            props = props or list(STS_PROPERTIES) + ["medial", "distributive"]
            Q = sts_to_quasigroup(obj)
            results = []
            sts_props = [p for p in props if p in STS_PROPERTIES]
            for p in sts_props:
                m = find_mitre(obj)
                results.append((p, m is None, tuple(m) if m else None))
            results += _check_table(Q, [p for p in props if p not in sts_props],
                                    args.strict, args.threads)
        elif isinstance(obj, OrientedTripleSystem):
            props = props or list(TABLE_PROPERTIES)
            results = _check_table(mts_to_quasigroup(obj), props, args.strict, args.threads, S=obj)
        elif isinstance(obj, CayleyTable):
            props = props or list(TABLE_PROPERTIES)
            results = _check_table(obj, props, args.strict, args.threads)
        else:
            props = props or list(LOOP_PROPERTIES)
            if any(p not in LOOP_PROPERTIES for p in props):
                raise ValueError(f"loops support only {', '.join(LOOP_PROPERTIES)}")
            results = [("cml", is_commutative_moufang(obj), None)]
            print(f"nucleus={len(nucleus(obj))}")
    except ValueError as exc:
        return _fail(EXIT_PARAMS, exc)
    for name, ok, wit in results:
        line = f"{name}={_flag(ok)}"
        if not ok and wit is not None:
            line += " witness=" + ",".join(str(w) for w in wit)
        print(line)
    if args.canonical_out:
        Path(args.canonical_out).write_text(_dump_any(obj))
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_PROPERTY


# -- enumerate / spectrum ----------------------------------------------------

def cmd_enumerate(args) -> int:
    loops = []
    try:
        for path in args.loop or ():
            loops.append(loads_loop(Path(path).read_text()))
        report = count_affine(args.v, mode=args.mode, budget=args.budget, loops=loops)
    except SearchBudgetExceeded as exc:
        return _fail(EXIT_BUDGET, exc)
    except (TriplesysError, ValueError, OSError) as exc:
        return _fail(EXIT_PARAMS, exc)
    print(report)
    if args.emit_representatives:
        out = Path(args.emit_representatives)
        out.mkdir(parents=True, exist_ok=True)
        for i, Q in enumerate(report.representatives()):
            (out / f"aff_{args.v}_{i:03d}.qg").write_text(dumps_table(Q))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    try:
        bad = spectrum_offenders(args.v)
    except ValueError as exc:
        return _fail(EXIT_PARAMS, exc)
    if bad:
        offenders = ",".join(f"{q}^{e}" for q, e in bad)
        print(f"v={args.v} member=false offender={offenders}")
    else:
        print(f"v={args.v} member=true")
    return EXIT_OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    env_budget = int(os.environ.get("TRIPLESYS_BUDGET", 10**8))
    parser = _Parser(prog="triplesys",
                     description="Construct, verify and enumerate Mendelsohn triple systems.")
    parser.add_argument("--threads", type=int, default=None, help="workers for exhaustive scans")
    parser.add_argument("--strict", action="store_true",
                        help="check both distributive laws for anti-distributivity")
    parser.add_argument("--budget", type=int, default=env_budget,
                        help="backtracking node budget (default: $TRIPLESYS_BUDGET or 1e8)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a triple system")
    c.add_argument("kind", choices=["affine", "field", "char2", "steiner", "spectrum",
                                    "netto", "projective", "double"])
    c.add_argument("--p", type=int, default=7)
    c.add_argument("--d", type=int, default=1)
    c.add_argument("--n", type=int, default=3, help="projective dimension + 1")
    c.add_argument("--v", type=int)
    c.add_argument("--factors", help="cyclic orders, e.g. 3,3")
    c.add_argument("--k", help="automorphism: an integer, or rows like '2,0;0,2'")
    c.add_argument("--input", help="STS file for 'double'")
    c.add_argument("--orientation", help="file of cyclically ordered blocks for 'double'")
    c.add_argument("--output", "-o")
    c.add_argument("--format", choices=["blocks", "qg"], default="blocks")
    c.add_argument("--no-summary", dest="summary", action="store_false")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check properties of a QG/MTS/STS/LOOP file")
    v.add_argument("path")
    v.add_argument("--property", "-p", action="append",
                   choices=TABLE_PROPERTIES + STS_PROPERTIES + LOOP_PROPERTIES)
    v.add_argument("--canonical-out", help="write the canonical form of the input here")
    v.add_argument("--no-order-check", action="store_true",
                   help="warn instead of failing on an impossible order")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="count affine Mendelsohn quasigroups of order v")
    e.add_argument("--v", type=int, required=True)
    e.add_argument("--mode", choices=["structured", "search"], default="structured")
    e.add_argument("--emit-representatives", metavar="DIR")
    e.add_argument("--loop", action="append", help="LOOP file of order v (repeatable)")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("spectrum", help="decide membership in the distributive spectrum")
    s.add_argument("--v", type=int, required=True)
    s.set_defaults(func=cmd_spectrum)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is not None and args.budget <= 0:
        print("error: budget must be positive", file=sys.stderr)
        return EXIT_PARAMS
    if args.threads is not None:
        if args.threads <= 0:
            print("error: threads must be positive", file=sys.stderr)
            return EXIT_PARAMS
        kernels.set_threads(args.threads)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands build the named complexes, verify the lifting conditions, and
compute homotopy monoids and invertibly connected components.  All output is
deterministic JSON (see :mod:`complicial.documents`); exit codes are 0 for
success, 1 for input or validation errors, 2 for mathematical failures
(verification failed, no filler), and 3 for I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import adapters, documents, homotopy, lifting, standard
from .errors import ComplicialError, NoFiller, NotKan, NotQuasiCategory
from .strat import StratifiedSSet, gproduct, min_strat

MATH_ERRORS = (NoFiller, NotQuasiCategory, NotKan)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is reserved for
    # mathematical failures here, so route usage errors to exit 1.
    def error(self, message):  # noqa: D102
        raise _UsageError(message)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_complex(path: str) -> StratifiedSSet:
    try:
        return documents.doc_to_complex(json.loads(_read_text(path)))
    except (KeyError, IndexError, TypeError) as exc:
        raise _UsageError(f"malformed complex document: {exc!r}") from exc


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_category(args) -> adapters.FiniteCategory:
    try:
        if args.monoid:
            raw = json.loads(_read_text(args.monoid))
            if "perm_generators" in raw:
                return adapters.from_permutations(
                    raw["perm_generators"], raw.get("bound", 10000)
                )
            return adapters.monoid_category(
                raw["elements"], raw["unit"], raw["table"]
            )
        if args.category:
            raw = json.loads(_read_text(args.category))
            names = [m["name"] for m in raw["morphisms"]]
            objects = list(raw["objects"])
            src = [objects.index(m["src"]) for m in raw["morphisms"]]
            tgt = [objects.index(m["tgt"]) for m in raw["morphisms"]]
            identities = [names.index(raw["identities"][o]) for o in objects]
            comp = {}
            for pair, result in raw["composition"].items():
                f, g = pair.split("|")
                comp[(names.index(f), names.index(g))] = names.index(result)
            return adapters.make_category(
                objects, names, src, tgt, identities, comp
            )
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise _UsageError(f"malformed algebra input: {exc!r}") from exc
    raise _UsageError("nerve needs --monoid or --category")


def _int_params(params: list[str], how_many: int, name: str) -> list[int]:
    if len(params) != how_many:
        raise _UsageError(f"{name} takes {how_many} numeric parameter(s)")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise _UsageError(f"{name} parameters must be integers") from None


def cmd_build(args) -> int:
    name = args.name
    params = args.params
    cap = args.cap
    if name == "delta":
        (n,) = _int_params(params, 1, name)
        x = standard.delta(n, cap if cap is not None else n)
    elif name == "delta-t":
        (n,) = _int_params(params, 1, name)
        x = standard.delta_t(n, cap if cap is not None else n)
    elif name == "boundary":
        (n,) = _int_params(params, 1, name)
        x = standard.boundary(n, cap if cap is not None else max(n - 1, 0))
    elif name in ("comp-delta", "comp-horn", "horn-prime", "delta-prime",
                  "delta-dprime"):
        k, n = _int_params(params, 2, name)
        d = cap if cap is not None else n
        builder = {
            "comp-delta": standard.complicial_delta,
            "horn-prime": standard.horn_prime,
            "delta-prime": standard.delta_prime,
            "delta-dprime": standard.delta_dprime,
        }
        if name == "comp-horn":
            x, _ = standard.complicial_horn(k, n, d)
        else:
            x = builder[name](k, n, d)
    elif name == "nerve":
        if cap is None:
            raise _UsageError("nerve needs --cap")
        if params:
            raise _UsageError("nerve takes no positional parameters")
        x = min_strat(adapters.nerve(_load_category(args), cap))
    elif name == "th0":
        if len(params) != 1:
            raise _UsageError("th0 takes one input path (or -)")
        x = adapters.th0(_load_complex(params[0]).underlying)
    elif name == "qcat-e":
        if len(params) != 1:
            raise _UsageError("qcat-e takes one input path (or -)")
        x = adapters.quasicat_e(_load_complex(params[0]).underlying)
    elif name == "product":
        if len(params) != 2:
            raise _UsageError("product takes two input paths")
        x = gproduct(_load_complex(params[0]), _load_complex(params[1]))
    else:  # pragma: no cover - argparse restricts choices
        raise _UsageError(f"unknown builder {name}")
    _emit(args, documents.dumps(documents.complex_to_doc(x, name=args.name)))
    return 0


def cmd_verify(args) -> int:
    x = _load_complex(args.complex)
    bound = args.max_dim if args.max_dim is not None else x.cap
    report = lifting.verify_weak_complicial(x, bound, threads=args.threads)
    doc = documents.result_doc(
        "verify",
        {
            "complex_sha256": documents.complex_digest(x),
            "max_dim": bound,
        },
        documents.verify_payload(report, witness_limit=args.limit),
    )
    _emit(args, documents.dumps(doc))
    return 0 if report.passed else 2


def _resolve_vertex(x: StratifiedSSet, spec: str):
    u = x.underlying
    for v in u.simplices(0):
        if v.label == spec:
            return v
    try:
        index = int(spec)
    except ValueError:
        raise _UsageError(f"no vertex labeled {spec!r}") from None
    if not 0 <= index < u.counts[0]:
        raise _UsageError(f"vertex index {index} out of range")
    return u.id_at(0, index)


def cmd_tau(args) -> int:
    x = _load_complex(args.complex)
    vertex = _resolve_vertex(x, args.vertex)
    table = homotopy.tau_table(x, vertex, args.n, threads=args.threads)
    audit = None
    if args.audit_well_defined:
        audit = homotopy.audit_well_defined(x, vertex, table)
    doc = documents.result_doc(
        "tau",
        {
            "complex_sha256": documents.complex_digest(x),
            "n": args.n,
            "vertex": documents.id_str(vertex),
            "audit_well_defined": bool(args.audit_well_defined),
        },
        documents.table_payload(table, audit),
    )
    _emit(args, documents.dumps(doc))
    if audit is not None and not audit.all_consistent:
        return 2
    return 0


def cmd_tau0(args) -> int:
    x = _load_complex(args.complex)
    result = homotopy.tau0(x)
    doc = documents.result_doc(
        "tau0",
        {"complex_sha256": documents.complex_digest(x)},
        documents.tau0_payload(result),
    )
    _emit(args, documents.dumps(doc))
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="complicial", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a named complex")
    b.add_argument("name", choices=[
        "delta", "delta-t", "comp-delta", "comp-horn", "horn-prime",
        "delta-prime", "delta-dprime", "boundary", "nerve", "th0",
        "qcat-e", "product",
    ])
    b.add_argument("params", nargs="*",
                   help="numeric parameters, or input paths for "
                        "th0/qcat-e/product ('-' reads stdin)")
    b.add_argument("--cap", type=int, default=None)
    b.add_argument("--monoid", help="monoid JSON file (for nerve)")
    b.add_argument("--category", help="category JSON file (for nerve)")
    b.add_argument("--out", help="write the document here instead of stdout")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check the weak complicial conditions")
    v.add_argument("complex", help="complex JSON path ('-' reads stdin)")
    v.add_argument("--max-dim", type=int, default=None)
    v.add_argument("--threads", type=int, default=None)
    v.add_argument("--limit", type=int, default=None,
                   help="serialize at most this many witnesses per row")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tau", help="compute a homotopy monoid table")
    t.add_argument("complex")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--vertex", default="0")
    t.add_argument("--audit-well-defined", action="store_true")
    t.add_argument("--threads", type=int, default=None)
    t.add_argument("--out")
    t.set_defaults(func=cmd_tau)

    t0 = sub.add_parser("tau0", help="invertibly connected components")
    t0.add_argument("complex")
    t0.add_argument("--out")
    t0.set_defaults(func=cmd_tau0)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MATH_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ComplicialError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

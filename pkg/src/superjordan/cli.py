"""Command line front end.

Exit codes: 0 success or accepted, 1 property violation, 2 parse error,
3 invalid parameters.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import certs
from .catalog import InvalidParameters, SpecParseError, build, parse_spec
from .decomposition import (
    NoCanonicalEmbedding,
    certify_example1,
    certify_example2,
    certify_jvf_split,
    random_conjugate_search,
    screen,
)
from .report import REPORT_IDS, UnknownReport, write_report
from .superalgebra import check_axioms

OK, VIOLATION, PARSE_ERROR, INVALID = 0, 1, 2, 3


def _err(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _spec(text: str, strict: bool):
    return parse_spec(text).validate(strict)


def _emit(doc: dict, out: str | None) -> None:
    if out:
        certs.write(doc, out)
        print(f"wrote {out}")


def cmd_build(args) -> int:
    spec = _spec(args.spec, not args.permissive)
    alg = build(spec, strict=not args.permissive)
    e, o = alg.parity_dims
    print(f"{spec}: dim {alg.dim} (even {e}, odd {o})")
    _emit(certs.document("algebra", certs.algebra_payload(alg), args.seed), args.out)
    return OK


def _load_algebra(text: str, strict: bool):
    path = Path(text)
    if path.suffix == ".json" or path.is_file():
        doc = certs.read(path)
        p = doc["payload"]
        if doc["kind"] == "axioms":
            p = p["algebra"]
        elif doc["kind"] != "algebra":
            raise certs.DocumentError(f"{path}: expected an algebra dump, got {doc['kind']}")
        return certs.algebra_from_payload(p)
    return build(_spec(text, strict), strict=strict)


def cmd_axioms(args) -> int:
    alg = _load_algebra(args.spec, not args.permissive)
    rep = check_axioms(alg)
    print(f"{alg.name or args.spec}: {rep.summary()}")
    for label, items in (("grading", rep.grading), ("supercommutativity", rep.supercommutativity),
                         ("jordan", rep.jordan_identity)):
        for t in items[:10]:
            print(f"  {label} violation at basis triple {t}")
    _emit(certs.document("axioms", certs.axioms_payload(alg, rep), args.seed), args.out)
    return OK if rep.ok else VIOLATION


def _print_cert(cert) -> None:
    print(f"{cert.target}: " + ("accepted" if cert.accepted else f"rejected ({cert.reason})"))
    for tag, r in (("A", cert.part_a), ("B", cert.part_b)):
        kind = r.simplicity.kind if r.simplicity else "-"
        print(f"  part {tag} {r.claim}: dims {r.parity_dims} closed={r.closed} proper={r.proper} simple={kind}")
    print(f"  span ranks even {cert.span_rank_even} odd {cert.span_rank_odd} of {cert.target_dims}; "
          f"overlap ({cert.intersection_even},{cert.intersection_odd})")
    for n in cert.notes:
        print(f"  note: {n}")


def cmd_verify(args) -> int:
    target = _spec(args.target, strict=True)
    which = args.which
    permissive = args.permissive
    if which in ("example1", "example2"):
        if target.family != "M":
            raise InvalidParameters(f"{which} needs a full matrix target, got {target}")
        n, m = target.params
        fn = certify_example1 if which == "example1" else certify_example2
        cert = fn(n, m, seed=args.seed, permissive=permissive)
    elif which in ("jvf-split", "split"):
        if target.family != "JVf" or len(args.params) != 2:
            raise InvalidParameters("split needs a JVf target and two sizes: m0_first n1_first")
        a, b = (int(x) for x in args.params)
        cert = certify_jvf_split(*target.params, a, b, seed=args.seed)
    elif which == "search":
        if len(args.params) != 2:
            raise InvalidParameters("search needs two part specs")
        a, b = (_spec(x, strict=True) for x in args.params)
        try:
            cert = random_conjugate_search(target, a, b, trials=args.trials, seed=args.seed)
        except NoCanonicalEmbedding as exc:
            raise InvalidParameters(str(exc)) from exc
        if cert is None:
            print(f"{target}: no accepted placement in {args.trials} trials")
            return VIOLATION
    else:
        raise SpecParseError(f"unknown construction {which!r}")
    _print_cert(cert)
    _emit(certs.certificate_document(cert), args.out)
    return OK if cert.accepted else VIOLATION


def cmd_screen(args) -> int:
    target = _spec(args.target, strict=True)
    rep = screen(target, args.max_dim)
    print(f"{target}: {len(rep.survivors)} surviving pairs, {len(rep.excluded)} excluded")
    print("a\tb\tnote")
    for p in rep.survivors:
        print(f"{p.a}\t{p.b}\t{p.note}")
    counts = rep.rule_counts()
    print("rules: " + ", ".join(f"{k}={counts[k]}" for k in sorted(counts)))
    _emit(certs.screening_document(rep, args.max_dim), args.out)
    return OK


def cmd_report(args) -> int:
    out = args.out or "report"
    cells, tsv, png, docs = write_report(args.id, out, args.grid, args.seed)
    for c in cells:
        print(f"{c.key}\t{c.status}\t{c.computed}")
    print(f"wrote {tsv}, {png} and {len(docs)} documents")
    return OK if all(c.status != "mismatch" for c in cells) else VIOLATION


def cmd_check(args) -> int:
    worst = OK
    for path in args.files:
        doc = certs.read(path)
        same, diffs = certs.check(doc)
        verdict = certs.verdict_of(doc)
        if same:
            print(f"{path}: reproduced ({doc['kind']}, verdict {'pass' if verdict else 'fail'})")
        else:
            print(f"{path}: differs in {', '.join(diffs)}")
            worst = VIOLATION
    return worst


def parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (a directory for report)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--permissive", action="store_true", help="allow zero-size blocks")

    ap = argparse.ArgumentParser(prog="superjordan", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build", parents=[common], help="build a catalog algebra")
    p.add_argument("spec")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("axioms", parents=[common], help="check the super-Jordan axioms")
    p.add_argument("spec", help="family spec or algebra dump file")
    p.set_defaults(fn=cmd_axioms)

    p = sub.add_parser("verify", parents=[common], help="certify a two-part decomposition")
    p.add_argument("target")
    p.add_argument("which", choices=["example1", "example2", "jvf-split", "split", "search"])
    p.add_argument("params", nargs="*")
    p.add_argument("--trials", type=int, default=8)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("screen", parents=[common], help="screen candidate type pairs")
    p.add_argument("target")
    p.add_argument("--max-dim", type=int, default=None)
    p.set_defaults(fn=cmd_screen)

    p = sub.add_parser("report", parents=[common], help="grid report with TSV and PNG output")
    p.add_argument("id", help=", ".join(REPORT_IDS))
    p.add_argument("--grid", type=int, default=None)
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("check", parents=[common], help="recompute documents and compare")
    p.add_argument("files", nargs="+")
    p.set_defaults(fn=cmd_check)
    return ap


def main(argv=None) -> int:
    try:
        args = parser().parse_args(argv)
    except SystemExit as exc:
        return PARSE_ERROR if exc.code else OK
    try:
        return args.fn(args)
    except (SpecParseError, UnknownReport, certs.DocumentError, FileNotFoundError) as exc:
        return _err(str(exc), PARSE_ERROR)
    except InvalidParameters as exc:
        return _err(str(exc), INVALID)


if __name__ == "__main__":
    sys.exit(main())

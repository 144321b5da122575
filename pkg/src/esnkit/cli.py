"""Command-line surface.

Exit codes: 0 when every assertion holds, 1 when a counterexample or
validation failure was found, 2 for usage and IO errors.  Reports are
byte-deterministic for fixed inputs and seed; timing goes to stderr.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import corpus, suites
from .arrows import (
    ElementMap,
    classify,
    enumerate_maps,
    hasse_report,
    resolve_budget,
    transfer_functor_map,
)
from .categories import FiniteCategory
from .core import BudgetExceeded, Failure, MalformedInputError, VerificationError
from .esn import category_of
from .formats import (
    FormatError,
    MapFile,
    SemigroupFile,
    encode_category,
    encode_map,
    encode_semigroup,
    load,
    save,
)
from .partial_maps import KIND_I, KIND_PT, KIND_PT_STAR, build_monoid
from .report import Report, emit_report
from .semigroups import derive_restriction

USAGE_ERROR = 2


def _write(args, data: bytes) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _emit(args, report: Report) -> int:
    if report.wall_ms is not None:
        print(f"[{report.suite}] {report.wall_ms:.0f} ms", file=sys.stderr)
    _write(args, emit_report(report, args.format))
    return 0 if report.ok else 1


def _resolve_structure(token: str, base: Path):
    """A corpus name, or a path to a structure file (anything with a dot)."""
    if "." in token or "/" in token:
        return load(base / token if not Path(token).is_absolute() else Path(token))
    if token in corpus.SEMIGROUP_NAMES:
        fx = corpus.semigroup_fixture(token)
        return SemigroupFile(fx.semigroup, _semilattice_of(fx))
    if token in corpus.CATEGORY_NAMES:
        return corpus.category(token)
    raise FormatError(f"unknown structure {token!r}")


def _semilattice_of(fx):
    from .semigroups import validate_semilattice

    ds = validate_semilattice(fx.semigroup, fx.E)
    if isinstance(ds, Failure):
        raise FormatError(str(ds))
    return ds


def _restriction_of(value, token: str):
    if isinstance(value, SemigroupFile):
        if token in corpus.RESTRICTION_NAMES:
            return corpus.restriction(token)
        derived = derive_restriction(value.semigroup, value.E)
        if isinstance(derived, Failure):
            raise FormatError(f"{token}: not a restriction semigroup: {derived}")
        return derived
    raise FormatError(f"{token}: expected a semigroup")


def _map_endpoints(mf: MapFile, base: Path):
    ends = []
    for token in (mf.source, mf.target):
        value = _resolve_structure(token, base)
        if isinstance(value, SemigroupFile):
            ends.append(_restriction_of(value, token))
        elif isinstance(value, FiniteCategory):
            ends.append(value)
        else:
            raise FormatError(f"{token}: a map cannot point at another map")
    if isinstance(ends[0], FiniteCategory) != isinstance(ends[1], FiniteCategory):
        raise FormatError("map endpoints must both be semigroups or both categories")
    return ends


def cmd_check(args) -> int:
    value = load(Path(args.infile))
    name = Path(args.infile).stem
    if isinstance(value, SemigroupFile):
        report = suites.semigroup_suite(name, value.semigroup, value.E)
    elif isinstance(value, FiniteCategory):
        report = suites.category_suite(name, value)
    else:
        raise FormatError("check expects a semigroup or category file")
    return _emit(args, report)


def cmd_esn(args) -> int:
    value = load(Path(args.infile))
    name = Path(args.infile).stem
    if isinstance(value, SemigroupFile):
        report = suites.esn_suite(name, (value.semigroup, value.E))
    elif isinstance(value, FiniteCategory):
        report = suites.esn_suite(name, value)
    else:
        raise FormatError("esn expects a semigroup or category file")
    return _emit(args, report)


def cmd_szendrei(args) -> int:
    from .szendrei import build_sz, check_closed_forms, iota, find_unique_lift
    from .categories import LEVEL_GROUPOID, LEVEL_INDUCTIVE

    value = load(Path(args.infile))
    if not isinstance(value, FiniteCategory):
        raise FormatError("szendrei expects a category file")
    if not (value.validated(LEVEL_INDUCTIVE) and value.validated(LEVEL_GROUPOID)):
        raise FormatError("szendrei expects an inductive groupoid")
    name = Path(args.infile).stem
    report = Report("szendrei", {"base": name})
    sz = build_sz(value)
    report.add("expansion_builds")
    report.inputs["size"] = sz.n
    if args.check_formulas:
        report.extend(check_closed_forms(sz))
    if args.lift:
        identity = ElementMap(value, value, tuple(range(value.n)))
        found = find_unique_lift(sz, identity)
        report.add("unique_lift_identity", found if isinstance(found, Failure) else None)
    return _emit(args, report)


def cmd_classify(args) -> int:
    base = Path(args.infile).parent
    mf = load(Path(args.infile))
    if not isinstance(mf, MapFile):
        raise FormatError("classify expects a map file")
    src, tgt = _map_endpoints(mf, base)
    m = ElementMap(src, tgt, mf.values)
    cls = classify(m)
    report = Report("classify", {"from": mf.source, "to": mf.target, "values": list(mf.values)})
    for flag, val in sorted(cls.flags().items()):
        report.counts[flag] = int(val)
    report.add("classified")
    return _emit(args, report)


def cmd_hasse(args) -> int:
    base = Path(args.infile).parent
    mf = load(Path(args.infile))
    if not isinstance(mf, MapFile):
        raise FormatError("hasse expects a map file")
    src, tgt = _map_endpoints(mf, base)
    m = ElementMap(src, tgt, mf.values)
    out = [hasse_report(classify(m))]
    if not isinstance(src, FiniteCategory):
        partners = (category_of(src), category_of(tgt))
        out.append(hasse_report(classify(transfer_functor_map(m, partners))))
    _write(args, ("\n".join(out) + "\n").encode())
    return 0


def cmd_enumerate(args) -> int:
    base = Path(".")
    src = _resolve_structure(args.src, base)
    tgt = _resolve_structure(args.tgt, base)
    if isinstance(src, SemigroupFile):
        src = _restriction_of(src, args.src)
    if isinstance(tgt, SemigroupFile):
        tgt = _restriction_of(tgt, args.tgt)
    run = enumerate_maps(src, tgt, flag=args.filter, cap=args.cap, budget=args.budget, seed=args.seed)
    report = Report(
        "enumerate",
        {
            "source": args.src,
            "target": args.tgt,
            "filter": args.filter or "none",
            "budget": run.budget,
            "seed": args.seed if args.seed is not None else "none",
            "sampled": run.sampled,
        },
    )
    matched = [list(m.values) for m, _ in run]
    report.inputs["scanned"] = run.scanned
    report.inputs["matched"] = len(matched)
    if args.show_maps:
        report.inputs["maps"] = matched
    report.counts.update(run.counts)
    report.add("enumeration_completed")
    return _emit(args, report)


def cmd_verify_theorems(args) -> int:
    if args.corpus != "default":
        raise FormatError(f"unknown corpus {args.corpus!r}")
    t0 = time.time()
    combined = Report("verify-theorems", {"corpus": args.corpus, "budget": resolve_budget(args.budget)})
    parts = [
        suites.corpus_check_suite(),
        suites.small_transfer_suite(),
        suites.composition_suite(),
        suites.szendrei_suite("z2"),
        suites.szendrei_suite("c_i2"),
        suites.lift_suite(),
        suites.transfer_sweep_suite(budget=args.budget),
    ]
    for part in parts:
        for c in part.checks:
            combined.add(f"{part.suite}:{c.name}", c.failure)
        combined.counts.update(
            {f"{part.suite}:{k}": v for k, v in part.counts.items()}
        )
        for k, v in part.inputs.items():
            if k in ("wedge_nonclosure_witness", "maps", "size"):
                combined.inputs[f"{part.suite}:{k}"] = v
    combined.wall_ms = (time.time() - t0) * 1000
    return _emit(args, combined)


def cmd_gen(args) -> int:
    kind = {"PT": KIND_PT, "PTstar": KIND_PT_STAR, "I": KIND_I}[args.kind]
    built = build_monoid(kind, args.ground)
    payload = encode_semigroup(built.semigroup, built.identities)
    name = args.out or f"{args.kind.lower()}{args.ground}.semigroup.json"
    save(name, payload)
    print(f"wrote {name} ({built.semigroup.n} elements)", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="esnkit",
        description="verify restriction-semigroup and inductive-category structure exhaustively",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, infile=True):
        if infile:
            p.add_argument("--in", dest="infile", required=True, help="structure file")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("check", help="validate a structure and run its axiom suites"))
    common(sub.add_parser("esn", help="round-trip a structure through the correspondence"))

    p = sub.add_parser("szendrei", help="build a groupoid expansion and cross-check it")
    common(p)
    p.add_argument("--check-formulas", action="store_true")
    p.add_argument("--lift", action="store_true", help="run the identity lift search")

    common(sub.add_parser("classify", help="classify one map against every arrow notion"))
    common(sub.add_parser("hasse", help="arrow class membership report for one map"))

    p = sub.add_parser("enumerate", help="enumerate and classify all maps between two structures")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--filter", help="only stream maps with this flag")
    p.add_argument("--cap", type=int, help="stop after this many matches")
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--show-maps", action="store_true")
    common(p, infile=False)

    p = sub.add_parser("verify-theorems", help="run the full theorem suite over the corpus")
    p.add_argument("--corpus", default="default")
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int)
    common(p, infile=False)

    p = sub.add_parser("gen", help="emit a partial-transformation monoid fixture")
    p.add_argument("--kind", choices=("PT", "PTstar", "I"), required=True)
    p.add_argument("--n", dest="ground", type=int, required=True)
    p.add_argument("--out")
    return parser


COMMANDS = {
    "check": cmd_check,
    "esn": cmd_esn,
    "szendrei": cmd_szendrei,
    "classify": cmd_classify,
    "hasse": cmd_hasse,
    "enumerate": cmd_enumerate,
    "verify-theorems": cmd_verify_theorems,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return COMMANDS[args.command](args)
    except (FormatError, MalformedInputError, BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except VerificationError as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

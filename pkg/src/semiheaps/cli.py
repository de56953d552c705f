"""Command-line interface.

Every command prints a report of ``key: value`` lines (or one JSON object
with ``--json``).  Exit status: 0 when the law holds or the algebras are
equivalent, 1 on a violation or a negative answer, 2 on bad input.  An
internal self-check failure exits with 3.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import constructions as cons
from .biunits import biunit_pairs, classify
from .correspondence import SwitchMonoid, lambda_corr, omega
from .io import AlgebraFile, format_ints, load, parse_ints, save
from .laws import check_semiheap
from .search.enumeration import MAX_EXHAUSTIVE_N, enumerate_semiheaps
from .search.isomorphism import ternar_isomorphic
from .search.warps import SearchLimitReached, warp_equivalent
from .tables import (
    DEFAULT_WITNESS_LIMIT,
    AlgebraError,
    BinaryTable,
    Endomap,
    LawReport,
    TernaryTable,
    ValidationError,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

# largest ternary table (n**3 entries) that make will write out
MAX_WRITTEN_ENTRIES = 2_000_000

LAWS = ("semiheap", "heap", "diheap", "abelian", "group", "monoid")
FILTERS = ("heap", "diheap", "has-biunit-pair")


class InputError(Exception):
    pass


# report rendering


def _plain(v):
    """JSON-friendly copy of a report value."""
    if isinstance(v, Endomap):
        return list(v.as_tuple())
    if isinstance(v, (tuple, list)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, np.integer):
        return int(v)
    return v


def _text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, Endomap):
        return format_ints(v.as_tuple())
    if isinstance(v, tuple) and len(v) == 1:
        return _text(v[0])
    if isinstance(v, tuple):
        return "(" + ",".join(_text(x) for x in v) + ")"
    if isinstance(v, list):
        return " ".join(_text(x) for x in v) if v else "none"
    return str(v)


class Report:
    """Ordered key/value report.  Repeated keys are allowed in text form."""

    def __init__(self, command: str):
        self.entries: list[tuple[str, object]] = [("command", command)]
        self.code = EXIT_OK
        # file text for stdout; the report then goes to stderr
        self.payload: str | None = None

    def add(self, key: str, value) -> None:
        self.entries.append((key, value))

    def add_law(self, rep: LawReport, prefix: str = "") -> None:
        self.add(prefix + "holds", rep.holds)
        self.add(prefix + "violations", rep.total_violations)
        self.add(prefix + "checked", rep.checked)
        if rep.seed is not None:
            self.add(prefix + "seed", rep.seed)
        for w in rep.violations:
            self.add(prefix + "witness", w)

    def render(self, as_json: bool) -> str:
        if not as_json:
            return "\n".join(f"{k}: {_text(v)}" for k, v in self.entries)
        out: dict = {}
        for k, v in self.entries:
            if k.endswith("witness"):
                out.setdefault(k + "es", []).append(_plain(v))
            else:
                out[k] = _plain(v)
        out["exit_code"] = self.code
        return json.dumps(out, sort_keys=True)


# helpers


def _load(path: str, kind: str | None = None) -> AlgebraFile:
    rec = load(path)
    if kind is not None and rec.kind != kind:
        raise InputError(f"{path}: expected a {kind} file, got {rec.kind}")
    return rec


def _labels(rec: AlgebraFile) -> tuple[int, ...] | None:
    labels = rec.meta_ints("labels")
    if labels is not None and len(labels) != rec.n:
        raise InputError("meta.labels must have one label per element")
    return labels


def _relabel_pairs(pairs, labels):
    return [(labels[a], labels[b]) for a, b in pairs]


def _write_or_print(rec: AlgebraFile, out: str | None, report: Report) -> None:
    if out:
        save(rec, out)
        report.add("written", out)
    else:
        report.payload = rec.to_text()


def _mask_report(law: str, bad: np.ndarray, limit: int) -> LawReport:
    return LawReport.from_mask(law, bad, limit)


# verify


def _verify_ternar(t: TernaryTable, law: str, args, report: Report) -> LawReport:
    base = check_semiheap(t, args.witness_limit, samples=args.samples, seed=args.seed)
    if law == "semiheap":
        return base
    if law == "abelian":
        return _mask_report("abelian", t.data != t.data.transpose(2, 1, 0), args.witness_limit)
    report.add_law(base, "semiheap_")
    if not base.holds:
        return LawReport(law, (), 1, 1, base.seed)
    bp = biunit_pairs(t)
    if law == "heap":
        good = set(bp.biunit_elements)
    else:
        good = set(bp.support())
    bad = np.array([x not in good for x in range(t.n)])
    return _mask_report(law, bad, args.witness_limit)


def _verify_binary(s: BinaryTable, law: str, args, report: Report) -> LawReport:
    assoc = s.associativity(args.witness_limit)
    report.add_law(assoc, "associative_")
    report.add("identity", s.identity)
    if not assoc.holds or s.identity is None:
        return LawReport(law, (), 1, 1)
    if law == "monoid":
        return LawReport(law, (), 0, 1)
    inv = s.inverses()
    bad = np.array([inv.get(x) is None for x in range(s.n)])
    return _mask_report(law, bad, args.witness_limit)


def cmd_verify(args) -> Report:
    report = Report(f"verify {args.law}")
    rec = _load(args.file)
    report.add("kind", rec.kind)
    report.add("n", rec.n)
    report.add("law", args.law)
    binary_law = args.law in ("group", "monoid")
    if binary_law != (rec.kind == "binary"):
        raise InputError(f"law {args.law!r} does not apply to a {rec.kind} file")
    alg = rec.to_algebra()
    if binary_law:
        rep = _verify_binary(alg, args.law, args, report)
    else:
        rep = _verify_ternar(alg, args.law, args, report)
    report.add_law(rep)
    report.code = EXIT_OK if rep.holds else EXIT_VIOLATION
    return report


# biunits


def cmd_biunits(args) -> Report:
    report = Report("biunits")
    rec = _load(args.file, "ternar")
    t = rec.to_algebra()
    bp = biunit_pairs(t)
    labels = _labels(rec)
    report.add("n", t.n)
    report.add("left_pairs", list(bp.left_pairs))
    report.add("right_pairs", list(bp.right_pairs))
    report.add("full_pairs", list(bp.full_pairs))
    report.add("biunits", list(bp.biunit_elements))
    report.add("support", list(bp.support()))
    report.add("fingerprint", bp.fingerprint())
    if labels is not None:
        report.add("labels", list(labels))
        report.add("full_pairs_labelled", _relabel_pairs(bp.full_pairs, labels))
    for k, v in classify(t).as_dict().items():
        report.add(k, v)
    return report


# correspond


def _parse_switch(text: str, n: int) -> Endomap:
    phi = Endomap(parse_ints(text))
    if phi.n != n:
        raise InputError(f"switch has {phi.n} entries, expected {n}")
    return phi


def cmd_correspond(args) -> Report:
    report = Report(f"correspond {args.direction}")
    if args.direction == "to-monoid":
        rec = _load(args.file, "ternar")
        if not args.pair:
            raise InputError("to-monoid needs --pair A B")
        t = rec.to_algebra()
        pair = tuple(args.pair)
        m = omega(t, pair)
        report.add("pair", pair)
        report.add("identity", m.identity)
        report.add("switch", m.switch)
        out = AlgebraFile.from_algebra(m.monoid, name=rec.name and f"{rec.name}-monoid", metadata={
            "switch": format_ints(m.switch.as_tuple()),
            "source_pair": format_ints(pair),
            "mapping": "omega",
        })
        if args.round_trip:
            back, back_pair = lambda_corr(m)
            same = back == t and back_pair == pair
            report.add("round_trip_pair", back_pair)
            report.add("round_trip", "identical" if same else "differs")
            report.code = EXIT_OK if same else EXIT_VIOLATION
    else:
        rec = _load(args.file, "binary")
        s = rec.to_algebra()
        if args.switch is not None:
            phi = _parse_switch(args.switch, s.n)
        else:
            phi = rec.meta_endomap("switch")
            if phi is None:
                raise InputError("to-semiheap needs --switch or meta.switch in the file")
            if phi.n != s.n:
                raise InputError("meta.switch has the wrong length")
        m = SwitchMonoid(s, phi)
        t, pair = lambda_corr(m)
        report.add("switch", phi)
        report.add("pair", pair)
        out = AlgebraFile.from_algebra(t, name=rec.name and f"{rec.name}-semiheap", metadata={
            "pair": format_ints(pair),
            "source_switch": format_ints(phi.as_tuple()),
            "mapping": "lambda",
        })
        if args.round_trip:
            back = omega(t, pair)
            same = back.monoid == s and back.switch == phi
            report.add("round_trip", "identical" if same else "differs")
            report.code = EXIT_OK if same else EXIT_VIOLATION
    if args.out:
        save(out, args.out)
        report.add("written", args.out)
    return report


# enumerate


def _keep(t: TernaryTable, filt: str | None) -> bool:
    if filt is None:
        return True
    if filt == "has-biunit-pair":
        return bool(biunit_pairs(t).full_pairs)
    c = classify(t)
    return c.heap if filt == "heap" else c.diheap


def cmd_enumerate(args) -> Report:
    report = Report("enumerate")
    n = args.n
    if not (1 <= n <= MAX_EXHAUSTIVE_N):
        raise InputError(f"n must be between 1 and {MAX_EXHAUSTIVE_N}")
    report.add("n", n)
    report.add("up_to_iso", args.up_to_iso)
    report.add("filter", args.filter)
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    total = kept = 0
    dumped = []
    for t in enumerate_semiheaps(n, up_to_iso=args.up_to_iso):
        total += 1
        if not _keep(t, args.filter):
            continue
        if out_dir is not None:
            save(AlgebraFile.from_algebra(t, name=f"semiheap-{n}-{kept}"), out_dir / f"semiheap-{n}-{kept:04d}.txt")
        if args.dump:
            dumped.append(t.flat())
        kept += 1
    report.add("enumerated", total)
    report.add("count", kept)
    for flat in dumped:
        report.add("table", list(flat))
    if out_dir is not None:
        report.add("written", str(out_dir))
    return report


# equiv


def cmd_equiv(args) -> Report:
    report = Report(f"equiv {args.mode}")
    r1, r2 = _load(args.file1, "ternar"), _load(args.file2, "ternar")
    if r1.n != r2.n:
        raise InputError(f"size mismatch: {r1.n} vs {r2.n}")
    t1, t2 = r1.to_algebra(), r2.to_algebra()
    report.add("n", t1.n)
    if args.mode == "iso":
        f = ternar_isomorphic(t1, t2)
        report.add("equivalent", f is not None)
        report.add("bijection", f)
    else:
        path = warp_equivalent(t1, t2, max_depth=args.max_depth)
        report.add("equivalent", path is not None)
        if path is not None:
            report.add("path_length", len(path))
            for phi in path.maps:
                report.add("step", phi)
    report.code = EXIT_OK if dict(report.entries)["equivalent"] else EXIT_VIOLATION
    return report


# make


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {text!r}") from None


def _params(args, count: int, optional: int = 0) -> list[str]:
    p = args.params
    if not (count <= len(p) <= count + optional):
        want = str(count) if not optional else f"{count}-{count + optional}"
        raise InputError(f"{args.construction} takes {want} parameter(s), got {len(p)}")
    return p


def _make_file(args):
    """The AlgebraFile for a dense construction, or a lazy ternar."""
    c = args.construction
    if c == "cyclic-sum":
        (n,) = _params(args, 1)
        n = _int(n, "N")
        return AlgebraFile.from_algebra(cons.cyclic_sum_diheap(n), f"cyclic-sum-{n}", {"construction": "cyclic-sum"})
    if c == "group":
        (g,) = _params(args, 1)
        grp = cons.group_by_name(g)
        inv = grp.inverses()
        return AlgebraFile.from_algebra(grp, f"group-{g.lower()}", {
            "construction": "group", "switch": format_ints(inv[x] for x in range(grp.n))})
    if c == "group-heap":
        (g,) = _params(args, 1)
        return AlgebraFile.from_algebra(cons.group_heap(cons.group_by_name(g)), f"group-heap-{g.lower()}",
                                        {"construction": "group-heap"})
    if c == "odd-residues":
        (m,) = _params(args, 1)
        m = _int(m, "M")
        return AlgebraFile.from_algebra(cons.odd_residues(m), f"odd-residues-{m}", {
            "construction": "odd-residues", "labels": format_ints(cons.odd_residue_labels(m))})
    if c == "constant-semigroup":
        n, k = _params(args, 2)
        return AlgebraFile.from_algebra(cons.constant_semigroup(_int(n, "N"), _int(k, "C")),
                                        f"constant-semigroup-{n}-{k}", {"construction": "constant-semigroup"})
    if c == "constant-ternar":
        p = _params(args, 1, optional=1)
        n = _int(p[0], "N")
        k = _int(p[1], "C") if len(p) > 1 else 0
        return AlgebraFile.from_algebra(cons.constant_ternar(n, k), f"constant-ternar-{n}-{k}",
                                        {"construction": "constant-ternar"})
    if c == "relations":
        a, b = _params(args, 2)
        a, b = _int(a, "A"), _int(b, "B")
        t = cons.relation_semiheap(a, b)
        if isinstance(t, cons.LazyTernar):
            return t
        return AlgebraFile.from_algebra(t, f"relations-{a}-{b}", {"construction": "relations"})
    if c == "boolean-matrices":
        (k,) = _params(args, 1)
        k = _int(k, "K")
        _size_guard(2 ** (k * k), 2)
        return AlgebraFile.from_algebra(cons.boolean_matrix_monoid(k), f"boolean-matrices-{k}", {
            "construction": "boolean-matrices", "switch": format_ints(cons.boolean_transpose(k).as_tuple())})
    if c == "boolean-matrix-semiheap":
        (k,) = _params(args, 1)
        k = _int(k, "K")
        _size_guard(2 ** (k * k), 3)
        t = cons.involuted_semigroup_semiheap(cons.boolean_matrix_monoid(k), cons.boolean_transpose(k))
        return AlgebraFile.from_algebra(t, f"boolean-matrix-semiheap-{k}", {"construction": "boolean-matrix-semiheap"})
    if c == "cubic":
        p = _params(args, 1, optional=1)
        N = _int(p[0], "N")
        scalars = p[1] if len(p) > 1 else "z2"
        if not (1 <= N <= 3):
            raise InputError("cubic matrices are supported for N = 1, 2, 3")
        lazy = cons.cubic_matrix_semiheap(N, scalars)
        if N == 1:
            a, b, cc = np.indices((lazy.n,) * 3)
            return AlgebraFile.from_algebra(TernaryTable(lazy.bracket_many(a, b, cc)), f"cubic-1-{scalars}",
                                            {"construction": "cubic", **{k: str(v) for k, v in lazy.distinguished.items()}})
        return lazy
    raise InputError(f"unknown construction {c!r}")


def _size_guard(n: int, arity: int) -> None:
    if n > 2**20 or n**arity > 2**62:
        raise InputError("construction too large")


def _check_right_pairs(t, a: int, b: int) -> tuple[bool, bool, int, int]:
    """Whether ``(a, b)`` is a right / left pair; counts of failing elements."""
    x = np.arange(t.n)
    A, B = np.full_like(x, a), np.full_like(x, b)
    right_bad = int((t.bracket_many(x, A, B) != x).sum())
    left_bad = int((t.bracket_many(A, B, x) != x).sum())
    return right_bad == 0, left_bad == 0, right_bad, left_bad


def _biunit_check(t, distinguished: dict, report: Report) -> bool:
    if "I" not in distinguished:
        raise InputError("--check-biunit applies to the cubic construction")
    if t.n > 2**20:
        raise InputError("--check-biunit scans every element; too many elements")
    I, iota = distinguished["I"], distinguished["iota"]
    ok = True
    for name, (a, b) in (("I,iota", (I, iota)), ("iota,I", (iota, I))):
        right, left, rbad, lbad = _check_right_pairs(t, a, b)
        report.add(f"right_pair({name})", right)
        report.add(f"right_pair({name})_failures", rbad)
        report.add(f"left_pair({name})", left)
        report.add(f"left_pair({name})_failures", lbad)
        ok &= right
    report.add("elements_checked", t.n)
    return ok


def cmd_make(args) -> Report:
    report = Report(f"make {args.construction} {' '.join(args.params)}".rstrip())
    made = _make_file(args)
    if isinstance(made, cons.LazyTernar):
        report.add("n", made.n)
        report.add("name", made.name)
        for k in sorted(made.distinguished):
            report.add(f"element.{k}", made.distinguished[k])
        if args.out:
            raise InputError(f"{made.name} has {made.n} elements; too large to write as a table")
        ok = True
        if args.check_biunit:
            ok = _biunit_check(made, made.distinguished, report)
        rep = check_semiheap(made, args.witness_limit, samples=args.samples, seed=args.seed)
        report.add_law(rep, "semiheap_")
        report.code = EXIT_OK if ok and rep.holds else EXIT_VIOLATION
        return report
    rec = made
    if rec.kind == "ternar" and rec.n**3 > MAX_WRITTEN_ENTRIES:
        raise InputError("table too large to write")
    report.add("kind", rec.kind)
    report.add("n", rec.n)
    report.add("entries", len(rec.table))
    if args.check_biunit:
        t = rec.to_algebra()
        if rec.kind != "ternar" or "I" not in rec.metadata:
            raise InputError("--check-biunit applies to the cubic construction")
        dist = {"I": int(rec.metadata["I"]), "iota": int(rec.metadata["iota"])}
        ok = _biunit_check(_DenseView(t), dist, report)
        report.code = EXIT_OK if ok else EXIT_VIOLATION
    _write_or_print(rec, args.out, report)
    return report


class _DenseView:
    """Gives a dense table the ``bracket_many`` interface."""

    def __init__(self, t: TernaryTable):
        self.n, self._T = t.n, t.data

    def bracket_many(self, a, b, c):
        return self._T[a, b, c]


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--witness-limit", type=int, default=DEFAULT_WITNESS_LIMIT, metavar="K",
                        help="maximum witnesses to print (default %(default)s)")
    common.add_argument("--seed", type=int, default=0, metavar="S", help="seed for sampled checks (default 0)")
    common.add_argument("--json", action="store_true", help="print one JSON object")
    common.add_argument("--timings", action="store_true", help="append wall-clock time")

    p = argparse.ArgumentParser(prog="semiheaps", description="Check, build and search small semiheaps.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="check a law on an algebra file")
    v.add_argument("file")
    v.add_argument("law", choices=LAWS)
    v.add_argument("--samples", type=int, default=None, help="sample quintuples instead of checking all")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("biunits", parents=[common], help="list biunit pairs of a ternar file")
    b.add_argument("file")
    b.set_defaults(func=cmd_biunits)

    c = sub.add_parser("correspond", parents=[common], help="semiheap with pair <-> monoid with switch")
    c.add_argument("direction", choices=("to-monoid", "to-semiheap"))
    c.add_argument("file")
    c.add_argument("--pair", type=int, nargs=2, metavar=("A", "B"))
    c.add_argument("--switch", help="switch image, e.g. '0 3 2 1'")
    c.add_argument("--out", metavar="PATH")
    c.add_argument("--round-trip", action="store_true", help="apply the inverse map and compare")
    c.set_defaults(func=cmd_correspond)

    e = sub.add_parser("enumerate", parents=[common], help="enumerate semiheaps of a given size")
    e.add_argument("n", type=int)
    e.add_argument("--up-to-iso", action="store_true")
    e.add_argument("--filter", choices=FILTERS)
    e.add_argument("--dump", action="store_true", help="print every table")
    e.add_argument("--out", metavar="DIR", help="write one file per table")
    e.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("equiv", parents=[common], help="isomorphism or warp equivalence of two ternars")
    q.add_argument("file1")
    q.add_argument("file2")
    q.add_argument("--mode", choices=("iso", "warp"), default="iso")
    q.add_argument("--max-depth", type=int, default=None, help="cap the warp search depth")
    q.set_defaults(func=cmd_equiv)

    m = sub.add_parser("make", parents=[common], help="build a named construction")
    m.add_argument("construction", choices=(
        "cyclic-sum", "group", "group-heap", "odd-residues", "relations", "constant-semigroup",
        "constant-ternar", "boolean-matrices", "boolean-matrix-semiheap", "cubic"))
    m.add_argument("params", nargs="*")
    m.add_argument("--out", metavar="PATH")
    m.add_argument("--check-biunit", action="store_true", help="cubic: check (I,iota) and (iota,I)")
    m.add_argument("--samples", type=int, default=None, help="quintuples sampled for large ternars")
    m.set_defaults(func=cmd_make)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.witness_limit < 0:
        parser.error("--witness-limit must be non-negative")
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (InputError, AlgebraError, SearchLimitReached) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.timings:
        report.add("time_s", f"{time.perf_counter() - start:.3f}")
    if report.payload is not None:
        sys.stdout.write(report.payload)
        print(report.render(args.json), file=sys.stderr)
    else:
        print(report.render(args.json))
    return report.code


if __name__ == "__main__":
    sys.exit(main())

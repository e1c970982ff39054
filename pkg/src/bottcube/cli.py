"""Command-line front end.

Exit codes: 0 success, 1 input error (or failed selfcheck), 2 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import acceptance
from .census import classify, dumps, run_census, summarize
from .cohomology import (
    build_ring,
    build_ring_from_lambda,
    expected_ranks,
    find_square_zero_basis,
    is_BQ_algebra_mod2,
    iso_to_product_test,
)
from .fan2d import Fan2D, enumerate_fans, is_complete_smooth, normalize_at, semifree_vectors
from .quasitoric import (
    BottMatrix,
    CharMatrixCube,
    bott_matrix_from,
    bott_up_to_omniorientation,
    is_bott_tower,
    is_valid_characteristic,
)
from .semifree import enumerate_semifree_vectors, factorization_report
from .simplicial import (
    SimplePolytope,
    SimplicialComplex,
    is_combinatorial_cube,
    is_crosscomplex,
    is_crosscomplex_recursive,
)


class InputError(Exception):
    pass


def load_input(value: str | None):
    if value is None:
        raise InputError("--input is required")
    text = value if value.lstrip().startswith(("{", "[")) else _read(value)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e}") from e


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e


def parse_matrix(obj) -> tuple[CharMatrixCube, BottMatrix | None]:
    """Accept CharMatrixCube JSON ({"lambda_star"}) or BottMatrix JSON ({"a"})."""
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object with 'lambda_star' or 'a'")
    try:
        if "a" in obj:
            a = BottMatrix.from_json(obj)
            return a.as_char(), a
        if "lambda_star" in obj:
            return CharMatrixCube.from_json(obj), None
    except (ValueError, TypeError) as e:
        raise InputError(str(e)) from e
    raise InputError("expected a JSON object with 'lambda_star' or 'a'")


class Output:
    def __init__(self, path: str | None):
        self.fh = open(path, "w") if path else sys.stdout

    def write(self, line: str) -> None:
        self.fh.write(line + "\n")

    def close(self) -> None:
        if self.fh is not sys.stdout:
            self.fh.close()


def emit(out: Output, obj, pretty: bool) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=True) if pretty else dumps(obj))


def cmd_classify(args, out: Output) -> int:
    c, _ = parse_matrix(load_input(args.input))
    emit(out, classify(c, timing=args.timing).to_json(args.timing), args.pretty)
    return 0


def _bott_for(c: CharMatrixCube, a: BottMatrix | None) -> BottMatrix | None:
    if a is not None:
        return a
    if is_valid_characteristic(c):
        if is_bott_tower(c):
            return bott_matrix_from(c)[0]
        omni = bott_up_to_omniorientation(c)
        if omni is not None:
            return omni.bott
    return None


def cmd_semifree(args, out: Output) -> int:
    c, a = parse_matrix(load_input(args.input))
    if not is_valid_characteristic(c):
        raise InputError("not a valid characteristic matrix")
    rep = {"semifree_vectors": [list(v) for v in enumerate_semifree_vectors(c)]}
    a = _bott_for(c, a)
    if a is None:
        rep.update(strict_factorization=None, relaxed_factorization=None,
                   integer_factorization=None, strict_steps=None)
    else:
        rep.update(factorization_report(a))
    emit(out, rep, args.pretty)
    return 0


def cmd_cohomology(args, out: Output) -> int:
    c, a = parse_matrix(load_input(args.input))
    if not is_valid_characteristic(c):
        raise InputError("not a valid characteristic matrix")
    ring = build_ring(a) if a is not None else build_ring_from_lambda(c)
    ranks = ring.graded_ranks()
    bq = is_BQ_algebra_mod2(ring)
    bott = _bott_for(c, a)
    if bott is not None:
        test = iso_to_product_test(bott)
        iso, basis = test.iso, test.basis
    else:
        iso, basis = False, None
    rep = {
        "ring": ring.to_json(),
        "graded_ranks": list(ranks),
        "expected_ranks": list(expected_ranks(ring.n)),
        "bq_mod2": bq,
        "iso_to_product": iso,
        "basis": None if basis is None else [list(b) for b in basis],
    }
    if args.search_bound:
        found = find_square_zero_basis(ring, args.search_bound)
        rep["square_zero_search"] = {"bound": args.search_bound,
                                     "basis": None if found is None else [list(b) for b in found]}
    if args.pretty:
        out.write(f"n = {ring.n}, coefficients {ring.coeffs}")
        out.write("degree  rank  expected")
        for q, (r, e) in enumerate(zip(ranks, expected_ranks(ring.n))):
            out.write(f"{2 * q:>6}  {r:>4}  {e:>8}")
        out.write(f"BQ-algebra mod 2: {bq}")
        out.write(f"iso to product of 2-spheres: {iso}" + (f" (basis {rep['basis']})" if basis else ""))
    else:
        emit(out, rep, False)
    return 0


def cmd_census(args, out: Output) -> int:
    lo, hi = _range(args)
    records = []
    for rec in run_census(args.kind, args.rank, lo, hi, jobs=args.jobs, timing=args.timing):
        records.append(rec)
        if not args.pretty:
            out.write(dumps(rec))
    summary = summarize(records)
    summary.update(kind=args.kind, rank=args.rank, entry_min=lo, entry_max=hi)
    if args.pretty:
        out.write(f"census kind={args.kind} rank={args.rank} entries in [{lo}, {hi}]")
        for k, v in summary.items():
            if k not in ("kind", "rank", "entry_min", "entry_max"):
                out.write(f"  {k:<28}{v:>8}")
    else:
        out.write(dumps({"summary": summary}))
    return 0


def _range(args) -> tuple[int, int]:
    if args.bound is not None:
        lo, hi = -args.bound, args.bound
    else:
        lo, hi = -2, 2
    if args.entry_min is not None:
        lo = args.entry_min
    if args.entry_max is not None:
        hi = args.entry_max
    if lo > hi:
        raise InputError(f"empty entry range [{lo}, {hi}]")
    return lo, hi


def cmd_crosscomplex(args, out: Output) -> int:
    obj = load_input(args.input)
    try:
        if "vertex_facets" in obj:
            p = SimplePolytope.from_json(obj)
            rep = {"kind": "polytope", "dim": p.dim, "combinatorial_cube": is_combinatorial_cube(p)}
        elif "facets" in obj:
            k = SimplicialComplex.from_json(obj)
            rep = {"kind": "complex", "dim": k.dim, "crosscomplex": is_crosscomplex(k),
                   "crosscomplex_recursive": is_crosscomplex_recursive(k)}
        else:
            raise InputError("expected complex JSON {vertices, facets} or polytope JSON {facets, vertex_facets}")
    except (ValueError, TypeError, KeyError) as e:
        raise InputError(str(e)) from e
    emit(out, rep, args.pretty)
    return 0


def cmd_fan2d(args, out: Output) -> int:
    if args.input is not None:
        try:
            f = Fan2D.from_json(load_input(args.input))
        except (ValueError, TypeError, KeyError, IndexError) as e:
            raise InputError(str(e)) from e
        ok = is_complete_smooth(f)
        rep = {"rays": [list(r) for r in f.rays], "complete_smooth": ok,
               "semifree": [list(v) for v in semifree_vectors(f)] if ok else None}
        emit(out, rep, args.pretty)
        return 0
    total = 0
    semi = []
    for f in enumerate_fans(args.max_rays, args.bound or 6):
        total += 1
        vecs = semifree_vectors(f)
        if vecs:
            semi.append((f, vecs))
        if not args.pretty:
            out.write(dumps({"rays": [list(r) for r in f.rays], "semifree": [list(v) for v in vecs]}))
    normalized = set()
    for f, vecs in semi:
        for nu in vecs:
            g, _ = normalize_at(f, nu)
            normalized.add(g.rays)
    summary = {"fans": total, "semifree_fans": len(semi),
               "ray_counts": sorted({len(f) for f, _ in semi}),
               "normal_forms": sorted([list(map(list, r)) for r in normalized])}
    if args.pretty:
        out.write(f"{total} complete smooth fans, {len(semi)} with a semifree circle")
        for f, vecs in semi:
            out.write(f"  {f.rays}  nu in {vecs}")
        out.write(f"normal forms: {summary['normal_forms']}")
    else:
        out.write(dumps({"summary": summary}))
    return 0


def cmd_selfcheck(args, out: Output) -> int:
    results = acceptance.run_all(verbose=True, echo=out.write)
    failed = [r.key for r in results if not r.passed]
    out.write(f"{len(results) - len(failed)}/{len(results)} criteria passed"
              + (f"; failed: {', '.join(failed)}" if failed else ""))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bottcube", description="Bott tower and cube quasitoric classification")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", help="path to a JSON file, '-' for stdin, or inline JSON")
        sp.add_argument("--output", help="write to this file instead of stdout")
        sp.add_argument("--pretty", action="store_true", help="human-readable output")
        return sp

    sp = common(sub.add_parser("classify", help="all verdicts for one matrix"))
    sp.add_argument("--timing", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = common(sub.add_parser("semifree", help="semifree vectors and factorization criteria"))
    sp.set_defaults(func=cmd_semifree)

    sp = common(sub.add_parser("cohomology", help="ring dump, graded ranks, BQ verdict, product test"))
    sp.add_argument("--search-bound", type=int, default=0,
                    help="also run the brute-force square-zero basis search with this coefficient bound")
    sp.set_defaults(func=cmd_cohomology)

    sp = common(sub.add_parser("census", help="sweep matrices and stream JSON-lines records"))
    sp.add_argument("--kind", choices=["char", "bott"], default="char",
                    help="char: valid reduced submatrices; bott: Bott matrices by above-diagonal entries")
    sp.add_argument("--rank", type=int, default=2)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--entry-min", type=int)
    sp.add_argument("--entry-max", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include per-record timings (output no longer reproducible)")
    sp.set_defaults(func=cmd_census)

    sp = common(sub.add_parser("crosscomplex", help="crosscomplex / combinatorial cube recognition"))
    sp.set_defaults(func=cmd_crosscomplex)

    sp = common(sub.add_parser("fan2d", help="classify one fan, or sweep all fans without --input"))
    sp.add_argument("--max-rays", type=int, default=10)
    sp.add_argument("--bound", type=int)
    sp.set_defaults(func=cmd_fan2d)

    sp = common(sub.add_parser("selfcheck", help="run the acceptance criteria"))
    sp.set_defaults(func=cmd_selfcheck)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.output)
    try:
        return args.func(args, out)
    except InputError as e:
        print(dumps({"error": "input", "message": str(e)}), file=sys.stderr)
        return 1
    except AssertionError as e:
        print(dumps({"error": "internal", "message": str(e)}), file=sys.stderr)
        return 2
    finally:
        out.close()


if __name__ == "__main__":
    sys.exit(main())

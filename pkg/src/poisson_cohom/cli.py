"""Command-line surface: structure checks, Casimir listings, Betti and
Euler tables, signature listings and the golden-table corpus runner.

Exit codes: 0 success, 1 invariant or golden failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources

from . import diagrams, engine, fixtures
from .casimir import casimir_space
from .complexes import PolyContext
from .diagrams import enumerate_signatures, sig_dim
from .engine import ComplexReport, cross_check, run
from .poisson import PoissonStructure, jacobi_check

CACHE_ENV = "POISSON_COHOM_CACHE"


class CliError(Exception):
    pass


def _parse_weights(text: str) -> list:
    """'2', '0..4' or comma lists of both."""
    out: list = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo, hi = chunk.split("..")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise CliError("empty weight range %r" % chunk)
            out.extend(range(lo, hi + 1))
        elif chunk:
            out.append(int(chunk))
    if not out:
        raise CliError("no weights given")
    return out


def render_table(report: ComplexReport) -> str:
    """Rows dim / dim(ker) / rank / Betti aligned per degree, Euler last."""
    if report.is_empty():
        return "(empty complex)"
    header = ["m"] + ["%d" % r.m for r in report.rows]
    rows = [
        ["dim"] + ["%d" % r.dim for r in report.rows],
        ["dim(ker)"] + ["%d" % r.kernel_dim for r in report.rows],
        ["rank"] + ["%d" % r.rank for r in report.rows],
        ["Betti"] + ["%d" % r.betti for r in report.rows],
    ]
    widths = [max(len(line[i]) for line in [header] + rows)
              for i in range(len(header))]
    lines = []
    for line in [header] + rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(line, widths)))
    lines.append("Euler = %d" % report.euler)
    return "\n".join(lines)


def _load(path: str, no_check: bool):
    try:
        return fixtures.load_structure(path, check=not no_check)
    except (OSError, ValueError) as exc:
        raise CliError(str(exc))


def _cache_dir(args) -> str | None:
    return os.environ.get(CACHE_ENV) or getattr(args, "cache_dir", None) or None


def cmd_check(args) -> int:
    obj = _load(args.structure, no_check=True)
    if isinstance(obj, PoissonStructure):
        ok, cert = jacobi_check(obj)
        print("n = %d, h = %d, entries = %d" % (obj.n, obj.h, len(obj.p)))
        if ok:
            print("Jacobi identity: OK")
            return 0
        (i, j, k), res = cert
        print("Jacobi identity: FAILS at (%d,%d,%d), residual %s"
              % (i + 1, j + 1, k + 1, res))
        return 1
    from .poisson import r_schouten
    sb = r_schouten(obj, obj)
    print("graded 2-vector, n = %d, polynomial degree = %d" % (obj.n, obj.poly_degree()))
    if sb.is_zero():
        print("R-Schouten self-bracket: OK (Poisson-like)")
        return 0
    print("R-Schouten self-bracket: nonzero (%d terms)" % len(sb.terms))
    return 1


def cmd_casimir(args) -> int:
    obj = _load(args.structure, args.no_check)
    if not isinstance(obj, PoissonStructure):
        raise CliError("casimir needs a Poisson structure")
    for j in range(args.min_degree, args.max_degree + 1):
        cb = casimir_space(obj, j)
        print("degree %d: dim %d" % (j, len(cb)))
        for f in cb.basis:
            print("  %s   (leading monomial %s)" % (f, f.leading_monomial()))
    return 0


def cmd_betti(args) -> int:
    obj = _load(args.structure, args.no_check)
    weights = _parse_weights(args.weights)
    sink_dir = args.dump_matrices
    failures = 0
    for w in weights:
        sink = None
        if sink_dir:
            os.makedirs(sink_dir, exist_ok=True)

            def sink(m, mat, w=w):
                path = os.path.join(sink_dir, "%s_w%d_d%d.mtx" % (args.mode, w, m))
                with open(path, "w", encoding="utf-8") as fh:
                    fh.write("%d %d\n" % (mat.n_rows, mat.n_cols))
                    for (r, c) in sorted(mat.entries):
                        v = mat.entries[(r, c)]
                        fh.write("%d %d %d/%d\n" % (r, c, v.numerator, v.denominator))

        reports = run(obj, args.mode, [w], direction=args.direction,
                      cache_dir=_cache_dir(args), jobs=args.jobs, matrix_sink=sink)
        rep = reports[0]
        bad = cross_check(rep)
        if bad:
            failures += 1
            print("invariant violations at w=%d: %s" % (w, ", ".join(bad)),
                  file=sys.stderr)
        if args.format == "structured":
            print(rep.serialize(), end="")
            print()
        else:
            print("weight %d:" % w)
            print(render_table(rep))
            print()
    return 1 if failures else 0


def cmd_euler(args) -> int:
    weights = _parse_weights(args.weights)
    vals = []
    for w in weights:
        if args.mode == "poly-module":
            vals.append(diagrams.euler_polymodule(args.n, args.h, w))
        else:
            vals.append(diagrams.euler_combinatorial(args.n, args.h, w))
    print("weights:", " ".join(str(w) for w in weights))
    print("euler:  ", " ".join(str(v) for v in vals))
    return 0


def cmd_diagrams(args) -> int:
    obj = _load(args.structure, args.no_check) if args.structure else None
    if obj is not None and isinstance(obj, PoissonStructure):
        ctx = PolyContext(obj, "hamiltonian" if args.mode == "hamiltonian" else "bar")
        n, h, cap, start = obj.n, obj.h, ctx.cap, ctx.start
    else:
        n, h = args.n, args.h
        cap, start = diagrams.poly_caps(n), 1
    wt = lambda j: j - 2 + h
    for w in _parse_weights(args.weights):
        print("weight %d:" % w)
        lo, hi = diagrams.degree_range(w, wt, cap, start)
        for m in range(0, hi + 1):
            sigs = enumerate_signatures(m, w, wt, cap, start)
            if not sigs:
                continue
            total = sum(sig_dim(s, cap) for s in sigs)
            desc = "  +  ".join(
                " ".join("k%d=%d" % (j, k) for j, k in sig) for sig in sigs)
            print("  m=%d dim=%d: %s" % (m, total, desc))
    return 0


def _golden_paths(directory: str | None) -> list:
    if directory:
        return sorted(os.path.join(directory, f) for f in os.listdir(directory)
                      if f.endswith(".golden"))
    root = resources.files("poisson_cohom") / "goldens"
    return sorted(str(p) for p in root.iterdir() if p.name.endswith(".golden"))


def parse_golden(text: str) -> dict:
    entry: dict = {"rows": [], "slow": False, "label": ""}
    in_rows = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if raw.startswith("#") and not entry["label"]:
            entry["label"] = raw.lstrip("# ").strip()
        if not line:
            continue
        if line.startswith("rows"):
            in_rows = True
            continue
        if "=" in line and not in_rows:
            key, val = [s.strip() for s in line.split("=", 1)]
            if key in ("structure", "mode", "direction"):
                entry[key] = val
            elif key == "weight":
                entry[key] = int(val)
            elif key == "slow":
                entry[key] = val.lower() in ("1", "true", "yes")
            continue
        if in_rows and "=" in line:
            key, val = [s.strip() for s in line.split("=", 1)]
            if key == "euler":
                entry["euler"] = int(val)
            continue
        entry["rows"].append([int(p) for p in line.split()])
    return entry


def run_goldens(directory: str | None = None, slow: bool = False,
                cache_dir: str | None = None, jobs: int = 1,
                out=None) -> tuple:
    """Compare every golden file field-exactly; (passed, failed, skipped)."""
    if out is None:
        out = sys.stdout
    paths = _golden_paths(directory)
    passed = failed = skipped = 0
    if not paths:
        print("warning: empty golden corpus", file=out)
        return (0, 0, 0)
    for path in paths:
        with open(path, "r", encoding="utf-8") as fh:
            entry = parse_golden(fh.read())
        name = os.path.basename(path)
        if entry["slow"] and not slow:
            skipped += 1
            print("SKIP %s (slow; rerun with --slow)" % name, file=out)
            continue
        structure = fixtures.load_structure(entry["structure"])
        rep = run(structure, entry["mode"], [entry["weight"]],
                  direction=entry.get("direction", "cochain"),
                  cache_dir=cache_dir, jobs=jobs)[0]
        problems = []
        for m, dim, ker, rank, betti in entry["rows"]:
            row = rep.row_at(m)
            got = (row.dim, row.kernel_dim, row.rank, row.betti)
            if got != (dim, ker, rank, betti):
                problems.append("m=%d expected dim/ker/rank/betti=%s got %s"
                                % (m, (dim, ker, rank, betti), got))
        if "euler" in entry and rep.euler != entry["euler"]:
            problems.append("euler expected %d got %d" % (entry["euler"], rep.euler))
        problems.extend(cross_check(rep))
        if problems:
            failed += 1
            print("FAIL %s [%s]" % (name, entry["label"]), file=out)
            for p in problems:
                print("     " + p, file=out)
        else:
            passed += 1
            print("PASS %s [%s]" % (name, entry["label"]), file=out)
    print("goldens: %d passed, %d failed, %d skipped" % (passed, failed, skipped),
          file=out)
    return (passed, failed, skipped)


def cmd_goldens(args) -> int:
    _, failed, _ = run_goldens(args.corpus, slow=args.slow,
                               cache_dir=_cache_dir(args), jobs=args.jobs)
    return 1 if failed else 0


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="poisson-cohom",
        description="Exact weight-graded Lie algebra cohomology of "
                    "homogeneous Poisson structures.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_mode=True):
        p.add_argument("structure",
                       help="structure file or builtin:<name> (%s)"
                            % ", ".join(fixtures.builtin_names()))
        p.add_argument("--no-check", action="store_true",
                       help="skip the Jacobi / self-bracket check at load")
        if with_mode:
            p.add_argument("--mode", default="poly-bar", choices=engine.MODES)
        p.add_argument("--cache-dir", default=None,
                       help="report cache directory (or $%s)" % CACHE_ENV)
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("check", help="load a structure and verify its identity")
    p.add_argument("structure",
                   help="structure file or builtin:<name> (%s)"
                        % ", ".join(fixtures.builtin_names()))
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("casimir", help="Casimir bases per degree")
    common(p, with_mode=False)
    p.add_argument("--min-degree", type=int, default=1)
    p.add_argument("--max-degree", type=int, default=4)
    p.set_defaults(fn=cmd_casimir)

    p = sub.add_parser("betti", help="dimension/kernel/rank/Betti tables")
    common(p)
    p.add_argument("--weights", required=True, help="e.g. 2 or 0..4 or 1,3")
    p.add_argument("--direction", default="cochain", choices=("cochain", "chain"))
    p.add_argument("--format", default="table", choices=("table", "structured"))
    p.add_argument("--dump-matrices", default=None,
                   help="directory for coordinate-list matrix dumps")
    p.set_defaults(fn=cmd_betti)

    p = sub.add_parser("euler", help="combinatorial Euler characteristics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--mode", default="poly-bar",
                   choices=("poly-bar", "poly-module"))
    p.set_defaults(fn=cmd_euler)

    p = sub.add_parser("diagrams", help="signatures and dimensions per degree")
    p.add_argument("structure", nargs="?", default=None)
    p.add_argument("--no-check", action="store_true")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--mode", default="poly-bar", choices=("poly-bar", "hamiltonian"))
    p.add_argument("--weights", required=True)
    p.set_defaults(fn=cmd_diagrams)

    p = sub.add_parser("goldens", help="run the golden-table corpus")
    p.add_argument("corpus", nargs="?", default=None,
                   help="golden directory (default: packaged corpus)")
    p.add_argument("--slow", action="store_true",
                   help="include the heavyweight gated entries")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_goldens)

    return ap


def main(argv=None) -> int:
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except AssertionError as exc:
        print("invariant failure: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

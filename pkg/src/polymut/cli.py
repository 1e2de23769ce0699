"""Command-line interface: ``polymut <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import ehrhart, laurent, lattice, minkowski, mutation, search, textio


class UsageError(Exception):
    pass


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _fmt(x) -> str:
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


def _line(values) -> str:
    return " ".join(_fmt(v) for v in values)


def _yes(b: bool) -> str:
    return "true" if b else "false"


# -- subcommands -------------------------------------------------------------

def cmd_hull(args, out):
    out.write(textio.format_polytope(textio.read_polytope(args.polytope)))


def cmd_dual(args, out):
    D = lattice.dual(textio.read_polytope(args.polytope))
    for v in D.vertices:
        out.write(_line(v) + "\n")
    out.write(f"r {D.denominator}\n")


def cmd_fano(args, out):
    P = textio.read_polytope(args.polytope)
    out.write(f"fano {_yes(lattice.is_fano(P))}\n")
    out.write(f"reflexive {_yes(lattice.is_reflexive(P))}\n")
    out.write(f"canonical {_yes(lattice.is_canonical(P))}\n")
    if lattice.is_fano(P):
        out.write(f"gorenstein_index {lattice.gorenstein_index(P)}\n")


def cmd_volume(args, out):
    out.write(f"{lattice.normalized_volume(textio.read_polytope(args.polytope))}\n")


def cmd_width(args, out):
    P = textio.read_polytope(args.polytope)
    hmin, hmax = lattice.height_range(P, args.w)
    out.write(f"width {lattice.width(P, args.w)}\nh_min {hmin}\nh_max {hmax}\n")


def cmd_mutate(args, out):
    P = textio.read_polytope(args.polytope)
    F = textio.read_polytope(args.factor)
    out.write(textio.format_polytope(mutation.mutate(P, args.w, F)))


def cmd_enumerate(args, out):
    P = textio.read_polytope(args.polytope)
    if not lattice.is_fano(P):
        raise ValueError("enumeration needs a Fano polytope")
    results = mutation.enumerate_mutations(P, args.max_width, exact_bound=args.exact)
    chunks = []
    for r in results:
        chunks.append(textio.format_mutation_record(r.w, r.F) + "\n" + textio.format_polytope(r.Q))
    out.write("\n".join(chunks))


def cmd_ehrhart(args, out):
    P = textio.read_polytope(args.polytope)
    Q = lattice.dual(P) if args.dual else P
    d = ehrhart.delta_vector(Q)
    mmax = args.mmax if args.mmax is not None else 2 * d.r * (d.n + 1)
    out.write("counts " + _line(ehrhart.ehrhart_counts(Q, mmax)) + "\n")
    out.write("delta " + _line(d.deltas) + "\n")
    out.write(f"r {d.r}\n")
    out.write(f"quasi_period {ehrhart.quasi_period(Q)}\n")
    out.write(f"palindromic {_yes(ehrhart.is_palindromic(d))}\n")


def cmd_minkpoly(args, out):
    P = textio.read_polytope(args.polytope)
    polys = minkowski.minkowski_polynomials(P, up_to_symmetry=args.up_to_symmetry)
    out.write("\n".join(textio.format_polynomial(f, f"m{i + 1}") for i, f in enumerate(polys)))


def cmd_period(args, out):
    recs = textio.read_named_polynomials(args.polynomial)
    if len(recs) == 1:
        out.write(_line(laurent.period_coeffs(recs[0][1], args.kmax)) + "\n")
        return
    for name, f in recs:
        out.write(f"{name} " + _line(laurent.period_coeffs(f, args.kmax)) + "\n")


def cmd_amutate(args, out):
    f = textio.read_polynomial(args.polynomial)
    pre = textio.read_matrix(args.pre)
    post = textio.read_matrix(args.post)
    A = textio.read_polynomial(args.A)
    out.write(textio.format_polynomial(laurent.algebraic_mutate(f, pre, A, post)))


def _key(item):
    name, f, length = item
    return search.period_key(f, length)


def cmd_bucket(args, out):
    items = []
    for path in args.polynomials:
        items.extend(textio.read_named_polynomials(path))
    names = [n for n, _ in items]
    if len(set(names)) != len(names):
        raise ValueError("polynomial names must be unique")
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            keys = list(pool.map(_key, [(n, f, args.length) for n, f in items]))
    else:
        keys = [_key((n, f, args.length)) for n, f in items]
    groups: dict = {}
    for (name, f), key in zip(items, keys):
        groups.setdefault(key, search.Bucket(key)).members.append(search.PolyRecord(name, f))
    out.write(textio.format_manifest([groups[k] for k in sorted(groups)]))


def cmd_connect(args, out):
    config = search.ConnectConfig(args.max_width, args.polytope_class, args.max_depth, args.max_nodes)
    for bid, key, members in textio.read_manifest(args.manifest):
        b = search.Bucket(key, [search.PolyRecord(n, f) for n, f in members])
        res = search.connect(b, config)
        status = "connected" if res.connected else "disconnected"
        extra = " truncated" if res.truncated else ""
        extra += " fingerprint-separated" if res.separated_by_fingerprint else ""
        out.write(f"bucket {bid} {status} components={len(res.components)}{extra}\n")
        for comp in res.components:
            out.write("component " + " ".join(comp) + "\n")
        for e in res.edges:
            out.write(textio.format_edge(e) + "\n")


def cmd_ingest(args, out):
    polys = search.ingest_classification(args.classification, args.expect)
    out.write(f"records {len(polys)}\n")
    if args.minkpoly:
        supported = total = 0
        for P in polys:
            fs = minkowski.minkowski_polynomials(P, up_to_symmetry=True)
            supported += bool(fs)
            total += len(fs)
        out.write(f"supporting {supported}\nunsupporting {len(polys) - supported}\npolynomials {total}\n")


def cmd_equiv(args, out):
    P = textio.read_polytope(args.first)
    Q = textio.read_polytope(args.second)
    M = lattice.gl_equivalent(P, Q)
    if M is None:
        out.write("not equivalent\n")
        return
    out.write("equivalent\n")
    for row in M:
        out.write(_line(row) + "\n")


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="polymut", description="Mutations of lattice polytopes and Laurent polynomials.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, func, help_, poly_arg="polytope"):
        sp = sub.add_parser(name, help=help_, description=help_)
        if poly_arg:
            sp.add_argument(poly_arg, help=f"{poly_arg} file")
        sp.set_defaults(func=func)
        return sp

    cmd("hull", cmd_hull, "print the vertices of the convex hull")
    cmd("dual", cmd_dual, "print the vertices of the dual polytope and its denominator")
    cmd("fano", cmd_fano, "report Fano, reflexive and canonical status")
    cmd("volume", cmd_volume, "print the normalized volume")
    sp = cmd("width", cmd_width, "print width, h_min and h_max for a width vector")
    sp.add_argument("--w", type=_vector, required=True, help="width vector a,b,c")
    sp = cmd("mutate", cmd_mutate, "combinatorial mutation of a polytope")
    sp.add_argument("--w", type=_vector, required=True, help="width vector a,b,c")
    sp.add_argument("--factor", required=True, help="factor polytope file")
    sp = cmd("enumerate", cmd_enumerate, "list mutations up to GL-equivalence of the result")
    sp.add_argument("--max-width", type=int, default=3)
    sp.add_argument("--exact", action="store_true", help="use the exact factor bound instead of --max-width")
    sp = cmd("ehrhart", cmd_ehrhart, "Ehrhart counts, delta-vector, r and quasi-period")
    sp.add_argument("--dual", action="store_true", help="work with the dual polytope")
    sp.add_argument("--mmax", type=_nonneg, default=None)
    sp = cmd("minkpoly", cmd_minkpoly, "all Minkowski polynomials on a reflexive 3-polytope")
    sp.add_argument("--up-to-symmetry", action="store_true", help="identify polynomials related by automorphisms")
    sp = cmd("period", cmd_period, "period sequence c_0..c_kmax", "polynomial")
    sp.add_argument("--kmax", type=_nonneg, required=True)
    sp = cmd("amutate", cmd_amutate, "algebraic mutation of a Laurent polynomial", "polynomial")
    sp.add_argument("--pre", required=True, help="matrix file applied first")
    sp.add_argument("--A", required=True, help="factor polynomial in the first n-1 variables")
    sp.add_argument("--post", required=True, help="matrix file applied last")
    sp = cmd("bucket", cmd_bucket, "group polynomials by their first period coefficients", None)
    sp.add_argument("polynomials", nargs="+", help="polynomial files")
    sp.add_argument("--length", type=int, default=search.BUCKET_KEY_LENGTH)
    sp.add_argument("--workers", type=int, default=1)
    sp = cmd("connect", cmd_connect, "search for mutations connecting bucket members", "manifest")
    sp.add_argument("--max-width", type=int, default=2)
    sp.add_argument("--class", dest="polytope_class", choices=search.POLYTOPE_CLASSES, default="minkowski")
    sp.add_argument("--max-depth", type=int, default=4)
    sp.add_argument("--max-nodes", type=int, default=2000)
    sp = cmd("ingest", cmd_ingest, "read a classification file", "classification")
    sp.add_argument("--expect", choices=["reflexive", "canonical", "fano"], default=None)
    sp.add_argument("--minkpoly", action="store_true", help="also count Minkowski polynomials")
    sp = cmd("equiv", cmd_equiv, "test GL(n,Z)-equivalence of two polytopes", None)
    sp.add_argument("first")
    sp.add_argument("second")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        args.func(args, out)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

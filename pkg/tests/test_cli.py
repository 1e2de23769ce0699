import io
from fractions import Fraction
import subprocess
import sys

import pytest

from polymut.cli import main
from polymut.laurent import LaurentPolynomial
from polymut.lattice import convex_hull
from polymut.search import MutationEdge, bucket
from polymut.textio import (
    ParseError,
    format_edge,
    format_manifest,
    format_matrix_inline,
    format_poly_inline,
    format_polynomial,
    format_polytope,
    parse_edge,
    parse_matrix_inline,
    parse_poly_inline,
    read_manifest,
    read_named_polynomials,
    read_polynomial,
    read_polytope,
    read_polytopes,
)

from conftest import poly


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


# -- text formats --

def test_polytope_round_trip(tmp_path):
    P = convex_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -3)])
    path = tmp_path / "p.txt"
    path.write_text("# a comment\n" + format_polytope(P))
    assert read_polytope(path) == P
    with open(path) as fh:
        assert read_polytope(fh) == P


def test_polytope_parse_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 0 0\n0 1\n")
    with pytest.raises(ParseError) as err:
        read_polytope(path)
    assert err.value.line == 2
    path.write_text("1 a 0\n")
    with pytest.raises(ParseError):
        read_polytope(path)


def test_multiple_polytopes(tmp_path):
    path = tmp_path / "many.txt"
    path.write_text("1 0\n0 1\n-1 -1\n\n\n1 0\n-1 0\n0 1\n0 -1\n")
    assert [len(P.vertices) for P in read_polytopes(path)] == [3, 4]


def test_polynomial_round_trip(tmp_path):
    f = poly("x*y^2*z^2 + 2*z + 1/z - 3/(x*y)")
    path = tmp_path / "f.txt"
    path.write_text(format_polynomial(f, "g"))
    assert read_polynomial(path) == f
    assert read_named_polynomials(path) == [("g", f)]


def test_rational_coefficients_round_trip(tmp_path):
    f = LaurentPolynomial({(1, 0): 1, (0, -1): Fraction(-2, 3)})
    path = tmp_path / "f.txt"
    path.write_text(format_polynomial(f))
    assert read_polynomial(path) == f


def test_inline_formats():
    M = ((1, -1, 1), (0, 1, -1), (0, 0, 1))
    assert format_matrix_inline(M) == "[1 -1 1;0 1 -1;0 0 1]"
    assert parse_matrix_inline(format_matrix_inline(M)) == M
    A = poly("1 + x + 2*x/y")
    assert parse_poly_inline(format_poly_inline(A), 3) == A
    assert format_poly_inline(None) == "none"
    assert parse_poly_inline("none", 3) is None


def test_edge_round_trip():
    I = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    e = MutationEdge("a", "b~1", I, poly("1 + y", "xy"), I, 2)
    assert parse_edge(format_edge(e)) == e
    g = MutationEdge("b~1", "c", I, None, I, 0)
    assert parse_edge(format_edge(g)) == g


def test_manifest_round_trip(data_dir, tmp_path):
    items = read_named_polynomials(data_dir / "pair_f1.txt") + read_named_polynomials(data_dir / "pair_f2.txt")
    path = tmp_path / "m.txt"
    path.write_text(format_manifest(bucket(items)))
    (bid, key, members), = read_manifest(path)
    assert bid == "1" and key == (1, 0, 28, 216, 3516, 49680, 783640, 12594960)
    assert members == items


# -- subcommands --

def test_period(data_dir):
    assert run("period", data_dir / "pair_f1.txt", "--kmax", 5) == (0, "1 0 28 216 3516 49680\n")


def test_mutate(data_dir):
    code, out = run("mutate", data_dir / "p1113.txt", "--w=-1,2,0", "--factor", data_dir / "p1113_factor.txt")
    assert code == 0
    assert out == "-1 -1 -3\n0 0 1\n0 1 0\n4 3 6\n"


def test_ehrhart_dual(data_dir):
    code, out = run("ehrhart", data_dir / "newt_sublattice_f1.txt", "--dual")
    assert code == 0
    assert "delta 1 95 294 95 1\n" in out
    assert "palindromic true\n" in out


def test_hull_dual_fano_volume(data_dir):
    p = data_dir / "p1113.txt"
    assert run("hull", p)[1].splitlines()[-1] == "1 0 0"
    assert run("dual", p)[1].splitlines()[-1] == "r 1"
    assert run("fano", p)[1].splitlines()[:2] == ["fano true", "reflexive true"]
    assert run("volume", data_dir / "newt_pair_f1.txt") == (0, "32\n")
    assert run("volume", data_dir / "newt_pair_f.txt") == (0, "28\n")


def test_width(data_dir):
    assert run("width", data_dir / "p1113.txt", "--w=-1,2,0") == (0, "width 3\nh_min -1\nh_max 2\n")


def test_enumerate(data_dir):
    code, out = run("enumerate", data_dir / "p1113.txt")
    assert code == 0
    assert out.count("w=(") == 3


def test_minkpoly(data_dir):
    code, out = run("minkpoly", data_dir / "six_vertex.txt")
    assert code == 0
    assert out.count("name m") == 2


def test_amutate(data_dir):
    code, out = run("amutate", data_dir / "first_f.txt", "--pre", data_dir / "first_M.txt",
                    "--A", data_dir / "first_A.txt", "--post", data_dir / "first_Minv.txt")
    assert code == 0
    got = read_polynomial(io.StringIO(out))
    assert got == poly("x*y^2*z^2 + x*y*z + 2*y*z^2 + 2*z + 1/z + 1/y + z^2/x + z/(x*y)")


def test_amutate_divisibility_failure(data_dir, tmp_path):
    A = tmp_path / "A.txt"
    A.write_text("1 : 0 0\n1 : 1 0\n1 : 0 1\n")
    code, _ = run("amutate", data_dir / "first_f.txt", "--pre", data_dir / "first_M.txt",
                  "--A", A, "--post", data_dir / "first_Minv.txt")
    assert code == 1


def test_equiv(data_dir):
    assert run("equiv", data_dir / "newt_pair_f1.txt", data_dir / "newt_pair_f.txt") == (0, "not equivalent\n")
    code, out = run("equiv", data_dir / "p1113.txt", data_dir / "p1113.txt")
    assert out.startswith("equivalent\n")


def test_bucket_and_connect(data_dir, tmp_path):
    files = [data_dir / f"{n}.txt" for n in ("pair_f1", "pair_f2", "pair_f")]
    code, manifest = run("bucket", *files)
    assert code == 0
    code2, manifest2 = run("bucket", *files, "--workers", 2)
    assert manifest2 == manifest
    path = tmp_path / "manifest.txt"
    path.write_text(manifest)
    code, out = run("connect", path, "--class", "any")
    assert code == 0
    assert out.startswith("bucket 1 connected components=1\n")
    edges = [parse_edge(line) for line in out.splitlines() if line.startswith("edge ")]
    assert edges
    assert run("connect", path, "--class", "any")[1] == out


def test_connect_reports_fingerprint_split(data_dir, tmp_path):
    code, manifest = run("bucket", data_dir / "sublattice_f1.txt", data_dir / "sublattice_f2.txt")
    path = tmp_path / "m.txt"
    path.write_text(manifest)
    code, out = run("connect", path)
    assert code == 0
    assert out.splitlines()[0] == "bucket 1 disconnected components=2 fingerprint-separated"


def test_ingest(tmp_path):
    path = tmp_path / "cls.txt"
    path.write_text("1 0 0\n0 1 0\n0 0 1\n-1 -1 -1\n")
    assert run("ingest", path, "--expect", "reflexive", "--minkpoly") == (
        0, "records 1\nsupporting 1\nunsupporting 0\npolynomials 1\n")


def test_domain_error_exit_code(data_dir, capsys):
    code, _ = run("mutate", data_dir / "p1113.txt", "--w=-2,4,0", "--factor", data_dir / "p1113_factor.txt")
    assert code == 1
    assert "primitive" in capsys.readouterr().err


def test_usage_error_exit_codes(data_dir):
    assert run("frobnicate")[0] == 2
    assert run("width", data_dir / "p1113.txt")[0] == 2
    assert run("width", data_dir / "p1113.txt", "--w=1,x")[0] == 2
    assert run("period", data_dir / "missing.txt", "--kmax", 2)[0] == 2


def test_console_script(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "polymut.cli", "period", str(data_dir / "pair_f2.txt"), "--kmax", "5"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "1 0 28 216 3516 49680\n"
    proc = subprocess.run([sys.executable, "-m", "polymut.cli", "mutate", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "--factor" in proc.stdout

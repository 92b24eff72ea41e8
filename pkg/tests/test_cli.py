import json
from fractions import Fraction as F

from hesslab import parse_polynomial, build_even_circles, EvenCircleParams
from hesslab.cli import emit_csv, emit_svg, main
from hesslab.topology import trace_curve


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerifyCommand:
    def test_theorem2_passes_and_writes_report(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code, stdout, _ = run_cli(
            capsys, "verify", "theorem2", "--radii", "1,2,3", "--json", str(out)
        )
        assert code == 0
        data = json.loads(out.read_text())
        assert data["overall"] is True
        traced = [c for c in data["claims"] if c["id"] == "traced-circles"][0]
        assert traced["observed"] == 4
        assert "overall: pass" in stdout

    def test_theorem1_good_position_failure(self, tmp_path, capsys):
        out = tmp_path / "bad.json"
        code, _, stderr = run_cli(
            capsys,
            "verify",
            "theorem1",
            "--a", "1",
            "--b", "-1",
            "--ai", "-2,-3",
            "--json", str(out),
        )
        assert code == 1
        assert "(-2, 0)" in stderr
        data = json.loads(out.read_text())
        assert data["overall"] is False
        assert data["witness"]["witness_point"] == ["-2", "0"]

    def test_exit_status_matches_overall(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "theorem3", "--n", "1")
        assert code == 0

    def test_seed_determinism(self, tmp_path, capsys):
        reports = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            code, _, _ = run_cli(
                capsys,
                "verify", "theorem1",
                "--a", "1", "--b", "-1", "--ai", "-1", "--bj", "1",
                "--seed", "7",
                "--json", str(out),
            )
            assert code == 0
            data = json.loads(out.read_text())
            data.pop("timings")
            reports.append(json.dumps(data, sort_keys=True))
        assert reports[0] == reports[1]

    def test_instance_file(self, tmp_path, capsys):
        inst = tmp_path / "inst.json"
        inst.write_text(
            json.dumps(
                {"family": "outer", "a": "1", "b": "-1",
                 "a_list": ["-1"], "b_list": ["1"]}
            )
        )
        code, stdout, _ = run_cli(
            capsys, "verify", "theorem1", "--instance", str(inst)
        )
        assert code == 0


class TestFamilyCommand:
    def test_round_trip(self, capsys):
        code, stdout, _ = run_cli(
            capsys, "family", "--family", "outer",
            "--a", "1", "--b", "-1", "--ai", "-1", "--bj", "1",
        )
        assert code == 0
        from hesslab import build_outer_oval, OuterOvalParams

        expected = build_outer_oval(OuterOvalParams(1, -1, (F(-1),), (F(1),)))
        assert parse_polynomial(stdout.strip()) == expected

    def test_odd_prints_quotient(self, capsys):
        code, stdout, _ = run_cli(capsys, "family", "--family", "odd", "--n", "1")
        assert code == 0
        lines = stdout.strip().splitlines()
        num = parse_polynomial(lines[0].split("=", 1)[1])
        den = parse_polynomial(lines[1].split("=", 1)[1])
        from hesslab import BivariatePolynomial

        X = BivariatePolynomial.x()
        Y = BivariatePolynomial.y()
        assert num == X ** 2 + Y ** 2 - 1
        assert den == X ** 2 + Y ** 2 + 1

    def test_decimal_rejected(self, capsys):
        code, _, stderr = run_cli(
            capsys, "family", "--family", "even", "--radii", "1.5,2"
        )
        assert code == 2
        assert "exact rational" in stderr


class TestClassifyCommand:
    def test_far_point_elliptic(self, capsys):
        code, stdout, _ = run_cli(
            capsys, "classify", "--family", "even", "--radii", "1,2",
            "--point", "10,0",
        )
        assert code == 0
        assert stdout.strip() == "Elliptic"

    def test_odd_far_point_hyperbolic(self, capsys):
        code, stdout, _ = run_cli(
            capsys, "classify", "--family", "odd", "--n", "1", "--point", "10,0"
        )
        assert code == 0
        assert stdout.strip() == "Hyperbolic"


class TestTraceCommand:
    def test_writes_svg_and_csv(self, tmp_path, capsys):
        svg = tmp_path / "curve.svg"
        csv = tmp_path / "curve.csv"
        code, stdout, _ = run_cli(
            capsys, "trace", "--family", "odd", "--n", "2",
            "--svg", str(svg), "--csv", str(csv),
        )
        assert code == 0
        text = svg.read_text()
        assert text.count("<path") == 3
        rows = csv.read_text().splitlines()
        assert rows[0] == "component,vertex,x,y"
        assert len(rows) > 10


class TestAffineCheckCommand:
    def test_identity_holds(self, capsys):
        code, stdout, _ = run_cli(
            capsys, "affine-check", "--poly", "x*y",
            "--linear", "1,1,0,1", "--translate", "0,1",
        )
        assert code == 0
        assert "holds" in stdout

    def test_singular_map_is_an_error(self, capsys):
        code, _, stderr = run_cli(
            capsys, "affine-check", "--poly", "x*y", "--linear", "1,1,1,1"
        )
        assert code == 2


class TestEmitters:
    def test_svg_empty_curve(self, tmp_path):
        path = tmp_path / "empty.svg"
        emit_svg([], str(path))
        text = path.read_text()
        assert "<svg" in text and "<path" not in text

    def test_svg_one_circle(self, tmp_path):
        comps = trace_curve(
            build_even_circles(EvenCircleParams((1,))) * 0
            + (parse_polynomial("x^2 + y^2 - 1")),
            (-2, 2, -2, 2),
            32,
        )
        path = tmp_path / "one.svg"
        emit_svg(comps, str(path))
        assert path.read_text().count("<path") == 1

    def test_csv_round_trip_length(self, tmp_path):
        comps = trace_curve(parse_polynomial("x^2 + y^2 - 1"), (-2, 2, -2, 2), 32)
        path = tmp_path / "one.csv"
        emit_csv(comps, str(path))
        rows = path.read_text().splitlines()[1:]
        assert len(rows) == len(comps[0].polyline)

    def test_report_reemission_identical(self, tmp_path):
        from hesslab import verify_theorem2
        from hesslab.cli import emit_report

        report = verify_theorem2(EvenCircleParams((1, 2)))
        p1 = tmp_path / "r1.json"
        p2 = tmp_path / "r2.json"
        emit_report(report, str(p1))
        emit_report(report, str(p2))
        assert p1.read_bytes() == p2.read_bytes()

import json
from fractions import Fraction

import pytest

from fordseq import cli, counting
from fordseq.constants import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, SIEVE_LIMIT_ENV_VAR
from fordseq.errors import UsageError

F3 = "0/1, 1/3, 1/2, 2/3, 1/1\n"


@pytest.fixture(autouse=True)
def small_sieve_limit(monkeypatch):
    monkeypatch.setenv(SIEVE_LIMIT_ENV_VAR, "20000")


def invoke(capsysbinary, *argv: str) -> tuple[int, str]:
    code = cli.main(list(argv))
    return code, capsysbinary.readouterr().out.decode("utf-8")


class TestParseRational:
    @pytest.mark.parametrize("text,expected", [("1/9", Fraction(1, 9)), ("2/4", Fraction(1, 2)), ("2", Fraction(2))])
    def test_accepts(self, text, expected):
        assert cli.parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["1.5", "-1/9", "+1/9", "1/0", "a/b", "", "1/"])
    def test_rejects(self, text):
        with pytest.raises(UsageError):
            cli.parse_rational(text)


class TestExtract:
    def test_m_32(self, capsysbinary, golden_f32):
        code, out = invoke(capsysbinary, "extract", "--m", "32")
        assert code == EXIT_OK
        assert out == ", ".join(str(f) for f in golden_f32) + "\n"

    def test_m_1_json(self, capsysbinary):
        code, out = invoke(capsysbinary, "extract", "--m", "1", "--format", "json")
        assert code == EXIT_OK
        assert out == '[{"p":0,"q":1},{"p":1,"q":1}]\n'

    def test_csv(self, capsysbinary):
        code, out = invoke(capsysbinary, "extract", "--m", "2", "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines() == ["p,q,value", "0,1,0.000000000000", "1,2,0.500000000000", "1,1,1.000000000000"]

    def test_affine_line(self, capsysbinary):
        code, out = invoke(capsysbinary, "extract", "--m", "1000000", "--b", "1/9")
        assert code == EXIT_OK
        assert out == "0/1, 1/2, 1/1\n"

    def test_intercept_outside_unit_interval(self, capsysbinary):
        assert invoke(capsysbinary, "extract", "--m", "32", "--b", "2")[0] == EXIT_DOMAIN

    def test_decimal_intercept(self, capsysbinary):
        assert invoke(capsysbinary, "extract", "--m", "32", "--b", "1.5")[0] == EXIT_USAGE

    @pytest.mark.parametrize("argv", [["extract"], ["extract", "--m", "0"], ["extract", "--m", "x"], ["nothing"], []])
    def test_usage_errors(self, capsysbinary, argv):
        assert invoke(capsysbinary, *argv) == (EXIT_USAGE, "")

    def test_unsupported_format(self, capsysbinary):
        assert invoke(capsysbinary, "extract", "--m", "3", "--format", "svg")[0] == EXIT_USAGE


class TestCard:
    def test_m_32(self, capsysbinary):
        assert invoke(capsysbinary, "card", "--m", "32") == (EXIT_OK, "48\n")

    @pytest.mark.parametrize("method", ["mobius", "brute", "columns"])
    def test_methods(self, capsysbinary, method):
        assert invoke(capsysbinary, "card", "--m", "6", "--method", method) == (EXIT_OK, "8\n")

    def test_json(self, capsysbinary):
        code, out = invoke(capsysbinary, "card", "--m", "32", "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out) == {"m": 32, "method": "exact", "cardinality": 48}

    def test_bad_sieve_limit(self, capsysbinary, monkeypatch):
        monkeypatch.setenv(SIEVE_LIMIT_ENV_VAR, "abc")
        assert invoke(capsysbinary, "card", "--m", "32")[0] == EXIT_DOMAIN


class TestJumps:
    def test_csv_rows(self, capsysbinary):
        code, out = invoke(capsysbinary, "jumps", "--from", "2", "--to", "6")
        assert code == EXIT_OK
        assert out == "m,omega,jump\n2,1,1\n3,1,1\n4,1,1\n5,1,1\n6,2,2\n"

    def test_with_cardinality(self, capsysbinary):
        code, out = invoke(capsysbinary, "jumps", "--from", "5", "--to", "6", "--cardinality")
        assert code == EXIT_OK
        assert out == "m,omega,jump,cardinality\n5,1,1,6\n6,2,2,8\n"

    def test_json(self, capsysbinary):
        code, out = invoke(capsysbinary, "jumps", "--from", "30", "--to", "30", "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out) == [{"m": 30, "omega": 3, "jump": 4}]

    def test_reversed_range(self, capsysbinary):
        assert invoke(capsysbinary, "jumps", "--from", "6", "--to", "2")[0] == EXIT_USAGE


class TestFarey:
    def test_order_3(self, capsysbinary):
        assert invoke(capsysbinary, "farey", "--n", "3") == (EXIT_OK, F3)

    def test_horizontal_line(self, capsysbinary):
        assert invoke(capsysbinary, "farey", "--k", "1/10") == (EXIT_OK, F3)

    def test_line_above_circles(self, capsysbinary):
        assert invoke(capsysbinary, "farey", "--k", "2") == (EXIT_OK, "\n")

    @pytest.mark.parametrize("argv", [["--n", "0"], ["--n", "3", "--k", "1/9"], []])
    def test_usage_errors(self, capsysbinary, argv):
        assert invoke(capsysbinary, "farey", *argv)[0] == EXIT_USAGE


class TestReport:
    def test_single_row(self, capsysbinary):
        code, out = invoke(capsysbinary, "report", "--from", "32", "--to", "32")
        assert code == EXIT_OK
        header, row, summary = out.splitlines()
        assert header.startswith("m,exact,a1,a2,a3")
        assert row.startswith("32,48,")
        assert float(row.split(",")[2]) == pytest.approx(67.754, abs=1e-3)
        assert summary.startswith("# best=")

    def test_third_approximation_wins(self, capsysbinary):
        code, out = invoke(capsysbinary, "report", "--from", "1000", "--to", "10000", "--step", "100")
        assert code == EXIT_OK
        assert out.splitlines()[-1].startswith("# best=a3 ")
        assert len(out.splitlines()) == 93

    def test_json(self, capsysbinary):
        code, out = invoke(capsysbinary, "report", "--from", "32", "--to", "33", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert [r["exact"] for r in payload["rows"]] == [48, 50]
        assert set(payload["summary"]["mean_abs_error"]) == {"a1", "a2", "a3"}

    @pytest.mark.parametrize("argv", [["--from", "10", "--to", "2"], ["--from", "1", "--to", "5"]])
    def test_invalid_ranges(self, capsysbinary, argv):
        assert invoke(capsysbinary, "report", *argv)[0] == EXIT_USAGE


class TestRender:
    def test_is_deterministic(self, capsysbinary):
        first = invoke(capsysbinary, "render", "--kind", "line", "--m", "32")
        second = invoke(capsysbinary, "render", "--kind", "line", "--m", "32")
        assert first == second
        assert first[1].startswith('<?xml version="1.0" encoding="UTF-8"?>')

    def test_writes_out_file(self, capsysbinary, tmp_path):
        target = tmp_path / "figure.svg"
        assert invoke(capsysbinary, "render", "--kind", "lattice", "--m", "32", "--out", str(target)) == (EXIT_OK, "")
        assert target.read_bytes().endswith(b"</svg>\n")

    def test_unwritable_out(self, capsysbinary, tmp_path):
        target = tmp_path / "missing" / "figure.svg"
        assert invoke(capsysbinary, "render", "--m", "5", "--out", str(target))[0] == EXIT_DOMAIN

    def test_approximation_figure(self, capsysbinary):
        code, out = invoke(capsysbinary, "render", "--kind", "approx", "--from", "2", "--to", "200", "--step", "2")
        assert code == EXIT_OK
        assert out.count("<polyline") == 4

    @pytest.mark.parametrize(
        "argv",
        [
            ["--kind", "approx", "--from", "2"],
            ["--kind", "approx", "--from", "50", "--to", "10"],
            ["--kind", "line"],
            ["--kind", "approx", "--from", "1", "--to", "10"],
        ],
    )
    def test_missing_or_invalid_parameters(self, capsysbinary, argv):
        assert invoke(capsysbinary, "render", *argv) == (EXIT_USAGE, "")


class TestOutputFlags:
    def test_format_before_command(self, capsysbinary):
        code, out = invoke(capsysbinary, "--format", "json", "extract", "--m", "1")
        assert code == EXIT_OK
        assert out == '[{"p":0,"q":1},{"p":1,"q":1}]\n'

    def test_out_before_command(self, capsysbinary, tmp_path):
        target = tmp_path / "card.txt"
        assert invoke(capsysbinary, "--out", str(target), "card", "--m", "32") == (EXIT_OK, "")
        assert target.read_text() == "48\n"

    def test_command_flag_wins(self, capsysbinary):
        code, out = invoke(capsysbinary, "--format", "json", "card", "--m", "32", "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines() == ["m,method,cardinality", "32,exact,48"]

    def test_defaults_without_flags(self):
        args = cli.build_parser().parse_args(["card", "--m", "3"])
        assert (args.format, args.out, args.verbose) == (None, None, False)

    def test_verbose_before_command(self, capsysbinary):
        assert invoke(capsysbinary, "--verbose", "card", "--m", "6") == (EXIT_OK, "8\n")


class TestVerify:
    def test_passes(self, capsysbinary):
        code, out = invoke(capsysbinary, "verify", "--max-m", "100")
        assert code == EXIT_OK
        assert out.endswith("OK\n")

    def test_smallest_bound(self, capsysbinary):
        assert invoke(capsysbinary, "verify", "--max-m", "1")[0] == EXIT_OK

    def test_bound_beyond_range(self, capsysbinary):
        assert invoke(capsysbinary, "verify", "--max-m", "100001")[0] == EXIT_USAGE

    def test_injected_fault(self, capsysbinary, monkeypatch):
        jump = counting.jump

        def off_by_one(m, sieves=None):
            record = jump(m, sieves)
            return type(record)(m=record.m, s_m=record.s_m + 1, omega_m=record.omega_m)

        monkeypatch.setattr(counting, "jump", off_by_one)
        code, out = invoke(capsysbinary, "verify", "--max-m", "50")
        assert code == EXIT_DOMAIN
        assert "FAIL jumps" in out
        assert out.endswith("FAILED: jumps\n")

import io
import json
import subprocess
import sys

import pytest

from cantorgroups.cli import REPORT_VERSION, main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, _ = run(*argv, "--json")
    return code, json.loads(out)


class TestEval:
    def test_swap_squared(self):
        code, out, _ = run("eval", "V{0->1,1->0} * V{0->1,1->0}")
        assert code == 0 and out == "V{ e -> e }\n"

    def test_conjugation_over_z2(self):
        code, out, _ = run("eval", "iotaE((1,0)) * V{0->1 : (2,3), 1->0} * iotaE((1,0))^-1",
                           "--oracle", "Z^2")
        assert code == 0 and out.strip() == "V{ 0 -> 1 : (2,3), 1 -> 0 }"

    def test_json_report(self):
        code, data = report("eval", "tor(3)")
        assert code == 0
        assert data["version"] == REPORT_VERSION
        assert data["ok"] and data["result"]["type"] == "V"
        assert "seconds" not in data

    def test_timing_is_opt_in(self):
        _, data = report("eval", "tor(3)", "--timing")
        assert "seconds" in data

    def test_parse_error_exit_code(self):
        code, out, err = run("eval", "V{0->1")
        assert code == 2 and "position" in err and out == ""
        code, data = report("eval", "V{0->1")
        assert code == 2 and data["error"]["type"] == "ParseError"
        assert data["error"]["position"] == 1

    def test_twisted(self):
        code, out, _ = run("eval", "tau(1) * tau(2)", "--action", "Z")
        assert code == 0 and out.strip() == "SV{ {} -[3]-> {} }"


class TestCommands:
    def test_act(self):
        assert run("act", "V{0->1,1->0}", "(0)")[1] == "1(0)\n"
        code, data = report("act", "V{0->1 : a, 1->0 : b}", "1(0)", "--oracle", "F2")
        assert data["result"] == {"point": "(0)", "label": "b"}
        code, out, _ = run("act", "tau(1)", "{0:(1)}", "--action", "Z")
        assert out.strip() == "{1:(1)}|(0)"

    def test_order(self):
        assert run("order", "tor(5)")[1] == "5\n"
        code, data = report("order", "iota0(a)", "--oracle", "F2", "--max", "20")
        assert code == 0 and data["result"] == {"order": None, "max": 20}
        assert run("order", "SV{ {0:0} -> {0:1}, {0:1} -> {0:0} }", "--action", "Z")[1] == "2\n"

    def test_center(self):
        code, out, _ = run("center", "iotaE((1,0))", "--oracle", "Z^2")
        assert code == 0 and out == "central (1,0)\n"
        code, data = report("center", "V{0->1,1->0}")
        assert data["result"]["kind"] == "not_central"

    def test_witness(self):
        code, data = report("witness", "{e}", "{0}")
        assert code == 0
        assert data["result"]["checks"] == {"source_equals_U": True, "range_inside_V": True}
        assert data["result"]["bisection"] == "B{ e => 0 [e] }"
        code, data = report("witness", "[{}]", "[{0:0}]", "--action", "Z")
        assert code == 0 and data["result"]["range"] == "[{0:0}]"

    def test_witness_empty_target(self):
        code, data = report("witness", "{e}", "{}")
        assert code == 2 and data["error"]["type"] == "EmptyTarget"

    def test_unknown_command_and_oracle(self):
        assert run("frobnicate", "x")[0] == 2
        assert run("eval", "tor(2)", "--oracle", "nope")[0] == 2
        assert run()[0] == 2


class TestSelftest:
    def test_small_run(self):
        code, out, _ = run("selftest", "torsion")
        assert code == 0
        assert out.splitlines()[-1] == "PASS suite torsion"

    def test_unknown_suite(self):
        code, data = report("selftest", "nope")
        assert code == 2 and data["error"]["type"] == "UnknownSuite"

    def test_deterministic(self):
        a = run("selftest", "confluence", "--seed", "3", "--n", "40", "--json")[1]
        b = run("selftest", "confluence", "--seed", "3", "--n", "40", "--json")[1]
        assert a == b
        data = json.loads(a)
        assert data["result"]["seed"] == 3 and data["ok"]

    @pytest.mark.parametrize("suite,seed,n", [("group-axioms", 42, 1000),
                                              ("ij-roundtrip", 7, 500),
                                              ("confluence", 1, 500)])
    def test_documented_runs(self, suite, seed, n):
        code, out, _ = run("selftest", suite, "--seed", str(seed), "--n", str(n))
        assert code == 0, out


class TestScripts:
    def test_let_and_commands(self, tmp_path):
        script = tmp_path / "run.cg"
        script.write_text("# conjugate by a central label\n"
                          "let z = (1,0)\n"
                          "let t = V{0->1 : (2,3), 1->0}\n"
                          "eval iotaE(z) * t * iotaE(z)^-1\n"
                          "order t --max 10\n")
        code, out, _ = run("--script", str(script), "--oracle", "Z^2")
        assert code == 0
        assert out.splitlines() == ["V{ 0 -> 1 : (2,3), 1 -> 0 }", "> 10"]

    def test_rebinding_fails(self, tmp_path):
        script = tmp_path / "run.cg"
        script.write_text("let t = tor(2)\nlet t = tor(3)\neval t\n")
        code, out, err = run("--script", str(script))
        assert code == 1 and "already bound" in err
        assert out == "V{ 0 -> 1, 1 -> 0 }\n"

    def test_json_script(self, tmp_path):
        script = tmp_path / "run.cg"
        script.write_text("let a = tor(3)\neval a^3\n")
        code, data = report("--script", str(script))
        assert code == 0 and data["command"] == "script"
        assert [r["line"] for r in data["reports"]] == [1, 2]


def test_reports_are_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "cantorgroups.cli", "selftest", "twist-laws", "--n", "30",
           "--json"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["ok"]

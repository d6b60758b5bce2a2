"""End-to-end command-line behavior, exit codes, and output bytes."""

from __future__ import annotations

import json
import re

import pytest

from wdsparql.cli import main

from conftest import DATA_DIR

BLOGGERS = str(DATA_DIR / "bloggers.nt")
Q_JOIN = str(DATA_DIR / "bloggers_join.rq")
Q_OPT = str(DATA_DIR / "bloggers_optional_type.rq")
Q_LEAKY = str(DATA_DIR / "bloggers_leaky_var.rq")

JOIN_TSV = (
    "?u\t?x\t?y\t?z\n"
    '"Jon Foobar"\t<http://foobar.xx/blog.rdf>\t<http://example.org/id1>'
    "\t<http://example.org/id1>\n"
)
OPT_TSV = (
    "?u\t?v\t?x\t?y\t?z\n"
    '"Jon Foobar"\t<http://xmlns.com/foaf/0.1/Agent>\t<http://foobar.xx/blog.rdf>'
    "\t<http://example.org/id1>\t<http://example.org/id1>\n"
)


def run_main(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEvaluation:
    def test_join_query_tsv(self, capsys):
        code, out, err = run_main(capsys, "--data", BLOGGERS, "--query", Q_JOIN)
        assert code == 0
        assert out == JOIN_TSV
        assert err == ""

    def test_optional_query_tsv(self, capsys):
        code, out, _ = run_main(capsys, "--data", BLOGGERS, "--query", Q_OPT)
        assert code == 0
        assert out == OPT_TSV

    def test_join_query_json(self, capsys):
        code, out, _ = run_main(
            capsys, "--data", BLOGGERS, "--query", Q_JOIN, "--format", "json"
        )
        assert code == 0
        assert json.loads(out) == {
            "vars": ["?u", "?x", "?y", "?z"],
            "rows": [
                {
                    "?u": '"Jon Foobar"',
                    "?x": "<http://foobar.xx/blog.rdf>",
                    "?y": "<http://example.org/id1>",
                    "?z": "<http://example.org/id1>",
                }
            ],
        }

    def test_unbound_cells_empty_in_tsv_absent_in_json(self, capsys, tmp_path):
        data = tmp_path / "d.nt"
        data.write_text(
            "<t:a> <t:p> <t:b> .\n<t:b> <t:q> <t:c> .\n<t:d> <t:p> <t:e> .\n"
        )
        query = tmp_path / "q.rq"
        query.write_text(
            "SELECT * WHERE { ?x <t:p> ?y OPTIONAL { ?y <t:q> ?z } }"
        )
        code, out, _ = run_main(capsys, "--data", str(data), "--query", str(query))
        assert code == 0
        assert out == (
            "?x\t?y\t?z\n"
            "<t:a>\t<t:b>\t<t:c>\n"
            "<t:d>\t<t:e>\t\n"
        )
        code, out, _ = run_main(
            capsys, "--data", str(data), "--query", str(query), "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["rows"] == [
            {"?x": "<t:a>", "?y": "<t:b>", "?z": "<t:c>"},
            {"?x": "<t:d>", "?y": "<t:e>"},
        ]

    def test_rows_sorted_lexicographically(self, capsys, tmp_path):
        data = tmp_path / "d.nt"
        data.write_text(
            '<t:b> <t:name> "beta" .\n'
            '<t:a> <t:name> "alpha" .\n'
            '<t:c> <t:name> "gamma" .\n'
        )
        query = tmp_path / "q.rq"
        query.write_text("SELECT * WHERE { ?x <t:name> ?y }")
        code, out, _ = run_main(capsys, "--data", str(data), "--query", str(query))
        assert code == 0
        assert out.splitlines() == [
            "?x\t?y",
            '<t:a>\t"alpha"',
            '<t:b>\t"beta"',
            '<t:c>\t"gamma"',
        ]

    def test_engines_produce_identical_bytes(self, capsys):
        outputs = set()
        for engine in ("reference", "naive", "oracle"):
            code, out, _ = run_main(
                capsys, "--data", BLOGGERS, "--query", Q_OPT, "--engine", engine
            )
            assert code == 0
            outputs.add(out)
        assert len(outputs) == 1

    def test_projection_warning_for_unused_variable(self, capsys, tmp_path):
        query = tmp_path / "q.rq"
        query.write_text("SELECT ?x ?nope WHERE { ?x <t:p> ?y }")
        data = tmp_path / "d.nt"
        data.write_text("<t:a> <t:p> <t:b> .\n")
        code, out, err = run_main(capsys, "--data", str(data), "--query", str(query))
        assert code == 0
        assert "warning: ?nope is projected but never appears" in err
        assert out == "?nope\t?x\n\t<t:a>\n"


class TestModes:
    def test_strict_rejects_leaky_query(self, capsys):
        code, out, err = run_main(capsys, "--data", BLOGGERS, "--query", Q_LEAKY)
        assert code == 2
        assert out == ""
        assert "not well-designed" in err
        assert "?z" in err

    def test_fallback_evaluates_leaky_query(self, capsys):
        code, out, err = run_main(
            capsys,
            "--data", BLOGGERS, "--query", Q_LEAKY, "--mode", "oracle-fallback",
        )
        assert code == 0
        assert out == "?u\t?x\t?y\t?z\n"
        assert err == ""

    def test_strict_reports_unplannable_group(self, capsys, tmp_path):
        query = tmp_path / "q.rq"
        query.write_text("SELECT * WHERE { OPTIONAL { ?x <t:p> ?y } }")
        data = tmp_path / "d.nt"
        data.write_text("<t:a> <t:p> <t:b> .\n")
        code, _, err = run_main(capsys, "--data", str(data), "--query", str(query))
        assert code == 1
        assert "try --mode oracle-fallback" in err
        code, out, _ = run_main(
            capsys,
            "--data", str(data), "--query", str(query), "--mode", "oracle-fallback",
        )
        assert code == 0
        assert out == "?x\t?y\n<t:a>\t<t:b>\n"


class TestCheck:
    def test_well_designed_query(self, capsys):
        code, out, _ = run_main(capsys, "--check", "--query", Q_OPT)
        assert code == 0
        assert out == (
            "union_free: true\n"
            "safe: true\n"
            "well_designed: true\n"
            "opt_normal_form: false\n"
        )

    def test_join_query_is_normal_form(self, capsys):
        code, out, _ = run_main(capsys, "--check", "--query", Q_JOIN)
        assert code == 0
        assert out.endswith("opt_normal_form: true\n")

    def test_leaky_query(self, capsys):
        code, out, _ = run_main(capsys, "--check", "--query", Q_LEAKY)
        assert code == 2
        lines = out.splitlines()
        assert lines[0] == "union_free: true"
        assert lines[1] == "safe: true"
        assert lines[2].startswith("well_designed: false (")
        assert "?z" in lines[2]
        assert lines[3] == "opt_normal_form: false"

    def test_check_needs_no_data(self, capsys):
        code, out, _ = run_main(capsys, "--check", "--query", Q_JOIN)
        assert code == 0
        assert "union_free" in out


class TestExplain:
    def test_plan_rendering(self, capsys):
        code, out, _ = run_main(capsys, "--explain", "--query", Q_OPT)
        assert code == 0
        assert out == (
            "OPT\n"
            "  BGP { ?x <http://xmlns.com/foaf/0.1/maker> ?y"
            " . ?z <http://xmlns.com/foaf/0.1/name> ?u }\n"
            "  BGP { ?y <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> ?v }\n"
        )

    def test_single_leaf_plan(self, capsys):
        code, out, _ = run_main(capsys, "--explain", "--query", Q_JOIN)
        assert code == 0
        assert out == (
            "BGP { ?x <http://xmlns.com/foaf/0.1/maker> ?y"
            " . ?z <http://xmlns.com/foaf/0.1/name> ?u }\n"
        )

    def test_rejects_leaky_query(self, capsys):
        code, out, err = run_main(capsys, "--explain", "--query", Q_LEAKY)
        assert code == 2
        assert out == ""
        assert "?z" in err

    def test_reports_unplannable_group(self, capsys, tmp_path):
        query = tmp_path / "q.rq"
        query.write_text("SELECT * WHERE { OPTIONAL { ?x <t:p> ?y } }")
        code, _, err = run_main(capsys, "--explain", "--query", str(query))
        assert code == 1
        assert "cannot build a plan" in err

    def test_explain_then_evaluate_with_data(self, capsys):
        code, out, _ = run_main(
            capsys, "--explain", "--query", Q_JOIN, "--data", BLOGGERS
        )
        assert code == 0
        assert out.startswith("BGP {")
        assert out.endswith(JOIN_TSV)


class TestDiagnostics:
    def test_missing_query_file(self, capsys, tmp_path):
        code, _, err = run_main(
            capsys, "--data", BLOGGERS, "--query", str(tmp_path / "absent.rq")
        )
        assert code == 1
        assert "cannot read query" in err

    def test_missing_data_file(self, capsys, tmp_path):
        code, _, err = run_main(
            capsys, "--data", str(tmp_path / "absent.nt"), "--query", Q_JOIN
        )
        assert code == 1
        assert "cannot read data" in err

    def test_query_syntax_error_names_file_and_position(self, capsys, tmp_path):
        query = tmp_path / "bad.rq"
        query.write_text("SELECT * WHERE { ?x <t:p> }")
        code, _, err = run_main(capsys, "--data", BLOGGERS, "--query", str(query))
        assert code == 1
        assert "bad.rq" in err
        assert re.search(r"line \d+, column \d+", err)

    def test_data_syntax_error_names_file_and_position(self, capsys, tmp_path):
        data = tmp_path / "bad.nt"
        data.write_text("<t:a> <t:p> .\n")
        code, _, err = run_main(capsys, "--data", str(data), "--query", Q_JOIN)
        assert code == 1
        assert "bad.nt" in err
        assert re.search(r"line \d+, column \d+", err)

    def test_unknown_engine(self, capsys):
        code, _, err = run_main(
            capsys, "--data", BLOGGERS, "--query", Q_JOIN, "--engine", "turbo"
        )
        assert code == 1
        assert "unknown engine 'turbo'" in err

    def test_data_required_without_check_or_explain(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--query", Q_JOIN])
        assert info.value.code == 2
        assert "--data is required" in capsys.readouterr().err


class TestTiming:
    def test_phase_lines_on_stderr(self, capsys):
        code, out, err = run_main(
            capsys, "--data", BLOGGERS, "--query", Q_OPT, "--time"
        )
        assert code == 0
        assert out == OPT_TSV
        phases = dict(
            line.split(": ", 1) for line in err.strip().splitlines()
        )
        assert set(phases) == {"load", "parse", "rewrite", "leaves", "joins", "project"}
        for value in phases.values():
            assert re.fullmatch(r"\d+\.\d{3} ms", value)

    def test_fallback_phases(self, capsys):
        code, _, err = run_main(
            capsys,
            "--data", BLOGGERS, "--query", Q_LEAKY,
            "--mode", "oracle-fallback", "--time",
        )
        assert code == 0
        names = {line.split(":", 1)[0] for line in err.strip().splitlines()}
        assert names == {"load", "parse", "oracle", "project"}

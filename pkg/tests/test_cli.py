"""Tests for cli.py - the pseudocat command line."""

import json
import logging
from unittest.mock import patch

import pytest

from pseudocat_workbench import cli
from pseudocat_workbench.config import (
    EXIT_INPUT_ERROR,
    EXIT_LAW_FAILURE,
    EXIT_OK,
    EXIT_SEARCH_BOUND,
)

TWIST = """\
pseudocategory Twist {
  objects X;
  horizontal u: X -> X;
  cells z: u => u [id_X, id_X];
  ccompose z.z = id_u;
  unit X = u;
  tensor u*u = u;
  tensorcell z*z = id_u, z*id_u = z, id_u*z = z;
  alpha identity;
  lambda u = z;
  rho u = z;
}
pseudofunctor I : Twist -> Twist { objects X -> X; horizontal u -> u; cells z -> z; mu identity; eps identity; }
natural th : I => I { objects X = id_X; horizontal u = id_u; }
pseudonatural T : I => I { objects X = u; tau u = id_u; }
modification M : T => T over th, th { objects X = z; }
check Twist;
compose I I;
"""

ARROW = """\
category Two { objects A B; arrows f: A -> B; }
model D = discrete(Two);
model G = group(2, 0);
model GG = product(G, G);
model H = identity(GG);
hom D D;
"""


@pytest.fixture(autouse=True)
def quiet(monkeypatch):
    """No log handlers and no saved settings."""
    monkeypatch.setattr("pseudocat_workbench.cli.settings_store.load_settings", lambda: {})
    with patch("pseudocat_workbench.cli.setup_logging") as mock_setup:
        yield mock_setup


@pytest.fixture
def twist(tmp_path):
    path = tmp_path / "twist.pdc"
    path.write_text(TWIST, encoding="utf-8")
    return path


@pytest.fixture
def arrow(tmp_path):
    path = tmp_path / "arrow.pdc"
    path.write_text(ARROW, encoding="utf-8")
    return path


class TestCheck:
    """Tests for ``pseudocat check``."""

    def test_directives_run_in_order(self, twist, capsys):
        assert cli.main(["check", str(twist)]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("Twist:")
        assert "II:" in out

    def test_named_structure_as_json(self, twist, capsys):
        assert cli.main(["check", str(twist), "Twist", "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["structure"] == "Twist"
        assert payload["summary"] == {"failed": 0, "passed": 21, "total": 21}

    def test_law_failure(self, tmp_path, capsys):
        path = tmp_path / "broken.pdc"
        path.write_text(TWIST.replace("rho u = z;", "rho u = id_u;"), encoding="utf-8")
        assert cli.main(["check", str(path), "Twist", "--json"]) == EXIT_LAW_FAILURE
        laws = {law["id"]: law for law in json.loads(capsys.readouterr().out)["laws"]}
        assert laws["pseudocat.unitors-agree-on-identities"]["status"] == "fail"

    def test_without_directives_every_pseudocategory_is_checked(self, tmp_path, capsys):
        path = tmp_path / "plain.pdc"
        path.write_text("category C { objects A; }\nmodel P = discrete(C);\n", encoding="utf-8")
        assert cli.main(["check", str(path)]) == EXIT_OK
        assert capsys.readouterr().out.startswith("P:")

    def test_verbose_selects_debug_logging(self, twist, quiet):
        cli.main(["check", str(twist), "Twist", "--verbose"])
        quiet.assert_called_once_with(logging.DEBUG)


class TestInputErrors:
    """Parse errors, missing files and bad arguments exit with the input-error code."""

    def test_syntax_error_as_json(self, tmp_path, capsys):
        path = tmp_path / "bad.pdc"
        path.write_text("category C { objects A; }\ncategory D { objects B }\n", encoding="utf-8")
        assert cli.main(["check", str(path), "--json"]) == EXIT_INPUT_ERROR
        captured = capsys.readouterr()
        error = json.loads(captured.out)["error"]
        assert error["kind"] == "DslSyntaxError"
        assert error["line"] == 2
        assert captured.err.startswith("error: 2:")

    def test_missing_file(self, tmp_path, capsys):
        assert cli.main(["check", str(tmp_path / "nope.pdc")]) == EXIT_INPUT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_non_positive_bound(self, twist):
        assert cli.main(["check", str(twist), "--bound", "0"]) == EXIT_INPUT_ERROR

    def test_wrong_kind(self, twist, capsys):
        assert cli.main(["compose", str(twist), "Twist", "I"]) == EXIT_INPUT_ERROR
        assert "is not a pseudo-functor" in capsys.readouterr().err

    def test_curry_needs_a_product(self, twist, capsys):
        assert cli.main(["curry", str(twist), "I"]) == EXIT_INPUT_ERROR
        assert "not a declared product" in capsys.readouterr().err

    def test_unknown_mu_cell_under_a_transformation(self, tmp_path, capsys):
        path = tmp_path / "unknown_mu.pdc"
        path.write_text(
            TWIST
            + "pseudofunctor J : Twist -> Twist { objects X -> X; horizontal u -> u;"
            " cells z -> z; mu u, u = nope; eps identity; }\n"
            "pseudonatural T2 : J => J { objects X = u; tau u = id_u; }\n",
            encoding="utf-8",
        )
        assert cli.main(["check", str(path), "T2", "--json"]) == EXIT_INPUT_ERROR
        laws = json.loads(capsys.readouterr().out)["laws"]
        assert [law["id"] for law in laws if law["status"] == "fail"] == ["boundary"]

    def test_composing_non_composable_functors(self, tmp_path, capsys):
        path = tmp_path / "mismatch.pdc"
        path.write_text(
            "category Two { objects A B; arrows f: A -> B; }\n"
            "model D = discrete(Two);\n"
            "model Id = identity(D);\n"
            + TWIST.split("natural th")[0],
            encoding="utf-8",
        )
        assert cli.main(["compose", str(path), "I", "Id", "--json"]) == EXIT_INPUT_ERROR
        payload = json.loads(capsys.readouterr().out)
        assert payload["laws"][0]["id"] == "pseudofunctor.composable"


class TestCompositionCommands:
    """Tests for compose, vcomp, pcomp, hcomp and iso-search."""

    def test_compose_show(self, twist, capsys):
        assert cli.main(["compose", str(twist), "I", "I", "--show"]) == EXIT_OK
        out = capsys.readouterr().out
        assert '"horizontal": {' in out
        assert "II:" in out

    def test_vcomp(self, twist):
        assert cli.main(["vcomp", str(twist), "T", "T"]) == EXIT_OK
        assert cli.main(["vcomp", str(twist), "th", "th"]) == EXIT_OK
        assert cli.main(["vcomp", str(twist), "M", "M"]) == EXIT_OK

    def test_vcomp_of_mixed_kinds(self, twist, capsys):
        assert cli.main(["vcomp", str(twist), "th", "M"]) == EXIT_INPUT_ERROR
        assert "cannot be composed vertically" in capsys.readouterr().err

    def test_pcomp(self, twist):
        assert cli.main(["pcomp", str(twist), "M", "M"]) == EXIT_OK

    @pytest.mark.parametrize("variant", ["w1", "w2"])
    def test_hcomp(self, twist, variant):
        assert cli.main(["hcomp", str(twist), "T", "T", "--variant", variant]) == EXIT_OK

    def test_iso_search(self, twist, capsys):
        assert cli.main(["iso-search", str(twist), "T", "T", "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["structure"] == "iso(T,T)"
        assert payload["laws"][0] == {"id": "search.invertible-modification", "status": "pass"}


class TestHomAndCurry:
    """Tests for hom and curry."""

    def test_hom(self, arrow, capsys):
        assert cli.main(["hom", str(arrow), "D", "D"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("Hom(D,D):")

    def test_hom_directive(self, arrow):
        assert cli.main(["check", str(arrow)]) == EXIT_OK

    def test_search_bound_exit_code(self, arrow, capsys):
        assert cli.main(["hom", str(arrow), "D", "D", "--bound", "1", "--json"]) == EXIT_SEARCH_BOUND
        error = json.loads(capsys.readouterr().out)["error"]
        assert error["kind"] == "SearchSpaceTooLarge"
        assert error["bound"] == 1

    @pytest.mark.parametrize("convention", ["b-first", "a-first"])
    def test_curry_round_trip(self, arrow, convention, capsys):
        code = cli.main(["curry", str(arrow), "H", "--convention", convention, "--json"])
        reports = json.loads(capsys.readouterr().out)
        assert [r["structure"] for r in reports] == ["curry(H)", "round-trip(H)"]
        assert code == EXIT_OK


class TestModel:
    """Tests for ``pseudocat model``."""

    @pytest.mark.parametrize(
        "argv",
        [
            ["span", "1"],
            ["grp", "4", "2"],
            ["negation", "2"],
            ["crossed", "3"],
            ["morab", "z2z4"],
            ["terminal"],
            ["discrete"],
            ["codiscrete"],
            ["span", "--bound", "1"],
        ],
    )
    def test_built_in_models_pass(self, argv):
        assert cli.main(["model", *argv]) == EXIT_OK

    def test_span_size_out_of_range(self, capsys):
        assert cli.main(["model", "span", "4"]) == EXIT_INPUT_ERROR
        assert "span size" in capsys.readouterr().err
        assert cli.main(["model", "span", "--bound", "4"]) == EXIT_INPUT_ERROR

    def test_model_arity(self):
        assert cli.main(["model", "grp", "4"]) == EXIT_INPUT_ERROR

    def test_broken_model_is_a_law_failure(self, capsys):
        assert cli.main(["model", "morab", "klambda", "--json"]) == EXIT_LAW_FAILURE
        payload = json.loads(capsys.readouterr().out)
        assert payload["laws"][0]["id"] == "model.k-lambda-zero"

    def test_saved_span_size_is_the_default(self, monkeypatch):
        monkeypatch.setattr(
            "pseudocat_workbench.cli.settings_store.load_settings", lambda: {"span_size": 1}
        )
        with patch("pseudocat_workbench.cli.span_pseudocategory") as mock_spans:
            mock_spans.side_effect = ValueError("stop")
            cli.main(["model", "span"])
        mock_spans.assert_called_once_with(1)


class TestExitCode:
    """Tests for exit_code."""

    def test_boundary_failures_are_input_errors(self):
        from pseudocat_workbench.ambient import BoundaryMismatch
        from pseudocat_workbench.report import ValidationReport

        report = ValidationReport("x")
        report.record_violation(BoundaryMismatch("ill-typed", ("f",)))
        assert cli.exit_code([report]) == EXIT_INPUT_ERROR
        assert cli.exit_code([ValidationReport("y")]) == EXIT_OK

"""Tests for report.py - validation reports and canonical JSON."""

import json

import pytest

from pseudocat_workbench.ambient import BoundaryMismatch, LawViolation
from pseudocat_workbench.report import (
    LAW_REGISTRY,
    LawResult,
    ValidationReport,
    dump_json,
    emit_json,
    emit_json_many,
    jsonable,
)


class TestCheck:
    """Tests for ValidationReport.check."""

    def test_passing_law(self):
        report = ValidationReport("P")
        assert report.check("pseudocat.pentagon", iter(()))
        assert report.results == [LawResult("pseudocat.pentagon", True)]
        assert report.passed

    def test_first_witness_is_kept(self):
        report = ValidationReport("P")
        assert not report.check("pseudocat.triangle", iter([("f", "g"), ("h", "k")]))
        assert report.failures[0].witness == ("f", "g")
        assert report.status("pseudocat.triangle") is False

    def test_raised_violation_counts_as_failure(self):
        def instances():
            raise LawViolation("broken", ("x",))
            yield  # pragma: no cover

        report = ValidationReport("P")
        assert not report.check("pseudocat.interchange", instances())
        result = report.failures[0]
        assert result.witness == ("x",)
        assert result.detail == "broken"

    def test_unregistered_law_is_refused(self):
        with pytest.raises(KeyError, match="unregistered"):
            ValidationReport("P").check("pseudocat.no-such-law", [])

    def test_record_violation_uses_the_law_of_the_exception(self):
        report = ValidationReport("P")
        report.record_violation(BoundaryMismatch("ill-typed", ("a",)))
        assert report.failures[0].law_id == "boundary"
        assert report.status("pseudocat.pentagon") is None

    def test_every_registered_id_is_namespaced(self):
        for law_id in LAW_REGISTRY:
            assert law_id == "structure" or law_id == "boundary" or "." in law_id


class TestOutput:
    """Tests for rendering and JSON output."""

    @pytest.fixture
    def report(self):
        report = ValidationReport("P")
        report.check("pseudocat.pentagon", [])
        report.check("pseudocat.triangle", [("f", ("g", 1))])
        return report

    def test_summary(self, report):
        assert report.summary() == {"failed": 1, "passed": 1, "total": 2}

    def test_to_dict(self, report):
        assert report.to_dict() == {
            "structure": "P",
            "laws": [
                {"id": "pseudocat.pentagon", "status": "pass"},
                {"id": "pseudocat.triangle", "status": "fail", "witness": ["f", ["g", 1]]},
            ],
            "summary": {"failed": 1, "passed": 1, "total": 2},
        }

    def test_render(self, report):
        lines = report.render().splitlines()
        assert lines[0] == "P:"
        assert lines[1] == "  [pass] pseudocat.pentagon"
        assert lines[2].startswith("  [FAIL] pseudocat.triangle")
        assert lines[-1] == "  1 passed, 1 failed"

    def test_emit_json_is_canonical(self, report):
        payload = emit_json(report)
        assert payload.endswith(b"\n")
        assert payload == emit_json(report)
        assert list(json.loads(payload)) == ["laws", "structure", "summary"]

    def test_emit_many(self, report):
        assert json.loads(emit_json_many([report, report]))[1]["structure"] == "P"

    def test_extend(self, report):
        other = ValidationReport("Q")
        other.extend(report)
        assert len(other.results) == 2


class TestJsonable:
    """Tests for jsonable and dump_json."""

    def test_nested_identifiers(self):
        assert jsonable((("a", 1), {"k": (2,)}, None)) == [["a", 1], {"k": [2]}, None]

    def test_dict_keys_become_strings(self):
        assert jsonable({("g", "f"): "h"}) == {"('g', 'f')": "h"}

    def test_sets_are_sorted(self):
        assert jsonable(frozenset({"b", "a"})) == ["a", "b"]

    def test_violation(self):
        assert jsonable(BoundaryMismatch("x", ("f",))) == {"law": "boundary", "witness": ["f"]}

    def test_dump_json_keeps_unicode(self):
        assert dump_json({"name": "λ"}).decode("utf-8") == '{\n  "name": "λ"\n}\n'

"""Golden corpus: every .pdc file under tests/corpus checked through the CLI."""

import json
from pathlib import Path
from unittest.mock import patch

import pytest

from pseudocat_workbench import cli

CORPUS = Path(__file__).parent / "corpus"
EXPECTED = json.loads((CORPUS / "expected.json").read_text(encoding="utf-8"))


@pytest.fixture(autouse=True)
def quiet(monkeypatch):
    monkeypatch.setattr("pseudocat_workbench.cli.settings_store.load_settings", lambda: {})
    with patch("pseudocat_workbench.cli.setup_logging"):
        yield


def _run(path: Path, capsys) -> tuple[int, str]:
    code = cli.main(["check", str(path), "--json"])
    return code, capsys.readouterr().out


def _failing(payload) -> list[str]:
    if isinstance(payload, dict) and "error" in payload:
        return []
    reports = payload if isinstance(payload, list) else [payload]
    return [law["id"] for report in reports for law in report["laws"] if law["status"] == "fail"]


class TestCorpus:
    """Exit codes, failing laws and byte-stable output per corpus file."""

    def test_corpus_is_complete(self):
        files = sorted(p.name for p in CORPUS.glob("*.pdc"))
        assert files == sorted(EXPECTED)
        assert len(files) >= 15

    @pytest.mark.parametrize("name", sorted(EXPECTED))
    def test_file(self, name, capsys):
        expected = EXPECTED[name]
        code, out = _run(CORPUS / name, capsys)
        payload = json.loads(out)
        assert code == expected["exit"]
        assert sorted(_failing(payload)) == sorted(expected["failing"])
        if "error" in expected:
            assert payload["error"]["kind"] == expected["error"]

    @pytest.mark.parametrize("name", sorted(EXPECTED))
    def test_output_is_deterministic(self, name, capsys):
        first = _run(CORPUS / name, capsys)
        second = _run(CORPUS / name, capsys)
        assert first == second

    def test_witness_names_the_failing_diagram(self, capsys):
        _, out = _run(CORPUS / "twist_alpha.pdc", capsys)
        laws = {law["id"]: law for law in json.loads(out)["laws"]}
        assert laws["pseudocat.pentagon"]["witness"] == ["u", "u", "u", "u"]

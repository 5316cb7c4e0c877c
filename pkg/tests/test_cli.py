import json
from pathlib import Path

import pytest

from npicheck.cli import run
from npicheck.logs import Log
from npicheck.orders import parse_target_spec
from npicheck.report import ReportOptions, full_report, report_json
from npicheck.textio import (
    ParseError,
    UnknownVertex,
    format_log,
    format_presentation,
    parse_artin_graph,
    parse_log,
    parse_presentation,
    sniff_kind,
)
from samples import (
    LOT_SINGLE_EDGE_TEXT,
    SAMPLE_A_TEXT,
    SAMPLE_B_TEXT,
    SAMPLE_BRAID_TEXT,
    TORSION_TEXT,
    sample_a,
)

GOLDEN = Path(__file__).parent / "golden"


def test_parse_presentation_examples():
    p = parse_presentation(SAMPLE_A_TEXT)
    assert p.generators == ("a", "b", "c")
    assert p.relators[0] == (-1, 2)
    assert p.relators[1] == (-3, -2, 3, 1, 2, -1, -3, -2, 3, 3)
    simple = parse_presentation("gens: a\nrel: a^2\n")
    assert simple.relators == ((1, 1),)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_presentation("gens: a\nrel: a^0\n")
    assert err.value.line == 2 and "nonzero exponent" in err.value.expected
    with pytest.raises(ParseError):
        parse_presentation("rel: a\n")
    with pytest.raises(ParseError):
        parse_presentation("gens: a\nrel: b\n")
    with pytest.raises(ParseError):
        parse_presentation("")
    # comments and blank lines are fine
    ok = parse_presentation("# header\n\ngens: a b # trailing\nrel: a b\n")
    assert ok.generators == ("a", "b")


def test_parse_log():
    log = parse_log(LOT_SINGLE_EDGE_TEXT)
    assert log == Log(("a", "b", "c"), ((0, 1, 2),))
    with pytest.raises(UnknownVertex):
        parse_log("vertices: a b\nedge: a b q\n")
    assert parse_log("vertices: a b\n").edges == ()


def test_parse_artin_graph():
    g = parse_artin_graph("vertices: s t\nedge: s t 3\n")
    assert g.edges == ((0, 1, 3),)
    with pytest.raises(ParseError):
        parse_artin_graph("vertices: s t\nedge: s t 1\n")


def test_roundtrip():
    for text in (SAMPLE_A_TEXT, SAMPLE_B_TEXT, SAMPLE_BRAID_TEXT, TORSION_TEXT):
        pres = parse_presentation(text)
        assert parse_presentation(format_presentation(pres)) == pres
    log = parse_log(LOT_SINGLE_EDGE_TEXT)
    assert parse_log(format_log(log)) == log


def test_sniff_kind():
    assert sniff_kind(SAMPLE_A_TEXT) == "presentation"
    assert sniff_kind(LOT_SINGLE_EDGE_TEXT) == "log"


@pytest.fixture()
def files(tmp_path):
    paths = {}
    for name, text in [
        ("a.pres", SAMPLE_A_TEXT),
        ("braid.pres", SAMPLE_BRAID_TEXT),
        ("torsion.pres", TORSION_TEXT),
        ("lot.log", LOT_SINGLE_EDGE_TEXT),
        ("broken.pres", "gens: a\nrel: a^0\n"),
    ]:
        path = tmp_path / name
        path.write_text(text)
        paths[name] = str(path)
    return paths


def test_cli_report_verdicts(files, capsys):
    assert run(["report", files["a.pres"]]) == 0
    out = capsys.readouterr().out
    assert "NPI-certified(Thm 3.4)" in out

    assert run(["report", files["braid.pres"], "--target", "braid:4:opp", "--phi", "named"]) == 0
    out = capsys.readouterr().out
    assert "NPI-certified(Thm 3.6)" in out
    assert "assumed" in out

    assert run(["lot", files["lot.log"]]) == 0
    out = capsys.readouterr().out
    assert "NPI-certified(Cor 4.3)" in out


def test_cli_concat_auto_braid_z(files, capsys):
    assert run(["concat", files["braid.pres"], "--target", "z", "--phi", "auto"]) == 0
    out = capsys.readouterr().out
    assert "NotConcatenable" in out and "Concatenable:" not in out


def test_cli_h1_torsion(files, capsys):
    assert run(["h1", files["torsion.pres"]]) == 0
    out = capsys.readouterr().out
    assert "torsion [2]" in out and "HypothesisFailure" in out


def test_cli_validate_and_phi(files, capsys):
    assert run(["validate", files["a.pres"]]) == 0
    assert "ok" in capsys.readouterr().out
    assert run(["phi", files["a.pres"]]) == 0
    assert "a=1, b=1, c=1" in capsys.readouterr().out
    assert run(["phi", files["torsion.pres"]]) == 0
    assert "NoSurjection" in capsys.readouterr().out


def test_cli_minima_and_cover(files, capsys):
    assert run(["minima", files["a.pres"]]) == 0
    out = capsys.readouterr().out
    assert "b:(+0,-2)" in out and "c:(+2,-0)" in out
    assert run(["cover", files["a.pres"], "--window=-4,4"]) == 0
    out = capsys.readouterr().out
    assert "certificate verified" in out


def test_cli_immerse(files, capsys):
    assert run(["immerse", files["torsion.pres"], "--bounds", "1,1"]) == 0
    out = capsys.readouterr().out
    assert "candidates within bounds (1, 1): 1" in out


def test_cli_exit_codes(files, capsys):
    assert run(["report", files["broken.pres"]]) == 2
    assert run(["report", files["a.pres"], "--target", "nonsense"]) == 2
    assert run(["nonsense-command"]) == 2
    assert run(["report", str(Path(files["a.pres"]).parent / "missing.pres")]) == 2


def test_cli_internal_assertions_exit_3(files, monkeypatch, capsys):
    import npicheck.cli as cli_mod

    def boom(*args, **kwargs):
        raise AssertionError("synthetic internal failure")

    monkeypatch.setattr(cli_mod, "full_report", boom)
    assert run(["report", files["a.pres"]]) == 3


def test_report_json_deterministic_and_golden():
    cases = [
        ("sample_a", SAMPLE_A_TEXT, "z", "auto"),
        ("sample_b", SAMPLE_B_TEXT, "z", "auto"),
        ("sample_braid", SAMPLE_BRAID_TEXT, "braid:4:opp", "named"),
    ]
    for name, text, target_spec, phi in cases:
        pres = parse_presentation(text)

        def build():
            options = ReportOptions(
                target=parse_target_spec(target_spec), phi_spec=phi
            )
            return report_json(full_report(pres, options, input_text=text))

        first, second = build(), build()
        assert first == second
        assert first == (GOLDEN / f"{name}.json").read_text()


def test_report_json_fields_stable():
    doc = json.loads((GOLDEN / "sample_a.json").read_text())
    for field in (
        "format",
        "input",
        "hypotheses",
        "phi",
        "attempts",
        "cover",
        "oracle_scan",
        "lot",
        "adian",
        "verdict",
    ):
        assert field in doc
    assert doc["format"] == "npicheck-report-v1"
    assert doc["verdict"]["citation"] == "Thm 3.4"
    assert doc["cover"]["ok"] is True


def test_report_lex_target(files, capsys):
    assert (
        run(
            [
                "report",
                files["a.pres"],
                "--target",
                "zlex:2",
                "--phi",
                "a=1:0,b=1:0,c=1:0",
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "NPI-certified(Thm 3.6)" in out


def test_report_free_presentation(tmp_path, capsys):
    path = tmp_path / "free.pres"
    path.write_text("gens: a b\n")
    assert run(["report", str(path)]) == 0
    assert "NPI-certified(Thm 3.4)" in capsys.readouterr().out


def test_report_scan_option(files, capsys):
    assert run(["report", files["torsion.pres"], "--scan", "1,1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"]["status"] == "hypothesis-failure"
    assert doc["oracle_scan"]["count"] == 1

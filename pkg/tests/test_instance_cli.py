from __future__ import annotations

import json
from pathlib import Path

import pytest

from matchstab.cli import main
from matchstab.errors import ParseError
from matchstab.instance import emit_instance, parse_instance

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def _run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_fixtures_and_roundtrip():
    for name in ("fig6", "fig7", "fig8", "fig9", "fig9m"):
        text = (FIXTURES / f"{name}.json").read_text()
        instance = parse_instance(text)
        again = parse_instance(emit_instance(instance))
        assert again.graph == instance.graph
        assert again.matching == instance.matching


def test_parse_rejects_bad_documents():
    with pytest.raises(ParseError):
        parse_instance("not json")
    with pytest.raises(ParseError):
        parse_instance('{"vertices": ["a", "a"], "edges": []}')
    with pytest.raises(ParseError):
        parse_instance('{"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "w": 0.5}]}')
    with pytest.raises(ParseError):
        parse_instance('{"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "w": "-1"}]}')
    with pytest.raises(ParseError):
        parse_instance(
            '{"vertices": ["a", "b", "c"], "edges": [{"u": "a", "v": "b", "w": "1"}],'
            ' "matching": [["a", "c"]]}'
        )


def test_gamma_command(capsys):
    code, out, _err = _run(capsys, "gamma", str(FIXTURES / "fig6.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"] == {"gamma": 2}


def test_stabilize_vertices_command(capsys):
    code, out, _err = _run(capsys, "stabilize-vertices", str(FIXTURES / "fig9.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["S"] == ["p"]
    assert doc["outputs"]["nu_before"] == "5"
    assert doc["outputs"]["nu_after"] == "4"


def test_m_stabilize_infeasible_exit_code(capsys):
    code, out, _err = _run(capsys, "m-stabilize", str(FIXTURES / "fig9m.json"))
    assert code == 2
    doc = json.loads(out)
    assert doc["outputs"]["status"] == "infeasible"


def test_m_stabilize_requires_matching(capsys):
    code, _out, err = _run(capsys, "m-stabilize", str(FIXTURES / "fig9.json"))
    assert code == 1
    assert "matching" in err


def test_check_stability_single_edge(tmp_path, capsys):
    path = tmp_path / "edge.json"
    path.write_text(
        '{"vertices": ["u", "v"], "edges": [{"u": "u", "v": "v", "w": "3"}]}'
    )
    code, out, _err = _run(capsys, "check-stability", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["stable"] is True


def test_unknown_command_and_bad_file(capsys):
    code, _out, err = _run(capsys, "frobnicate", str(FIXTURES / "fig9.json"))
    assert code == 1 and "invalid choice" in err
    code, _out, err = _run(capsys, "gamma", "no-such-file.json")
    assert code == 1 and "no-such-file" in err


def test_outputs_are_byte_identical(capsys):
    _code, first, _err = _run(capsys, "min-cycles", str(FIXTURES / "fig6.json"))
    _code, second, _err = _run(capsys, "min-cycles", str(FIXTURES / "fig6.json"))
    assert first == second
    assert "timing" not in first


def test_oracle_subcommands(capsys):
    code, out, _err = _run(capsys, "oracle", "nu", str(FIXTURES / "fig8.json"))
    assert code == 0 and json.loads(out)["outputs"]["nu"] == "8"
    code, out, _err = _run(capsys, "oracle", "min-edge-stabilizer", str(FIXTURES / "fig8.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["outputs"]["size"] == 1 and doc["outputs"]["F"] == [["q", "r"]]
    code, out, _err = _run(capsys, "oracle", "min-m-stabilizer", str(FIXTURES / "fig9m.json"))
    assert json.loads(out)["outputs"]["status"] == "infeasible"


def test_verify_roundtrip(tmp_path, capsys):
    for command, fixture in [
        ("solve-fractional", "fig8.json"),
        ("min-cycles", "fig6.json"),
        ("gamma", "fig9.json"),
        ("stabilize-vertices", "fig9.json"),
        ("stabilize-edges", "fig6.json"),
        ("check-stability", "fig8.json"),
    ]:
        instance = str(FIXTURES / fixture)
        code, out, _err = _run(capsys, command, instance)
        assert code == 0
        result_path = tmp_path / "result.json"
        result_path.write_text(out)
        code, out, _err = _run(capsys, "verify", instance, "--result", str(result_path))
        assert code == 0, (command, out)
        assert json.loads(out)["verified"] is True


def test_verify_catches_tampering(tmp_path, capsys):
    instance = str(FIXTURES / "fig9.json")
    _code, out, _err = _run(capsys, "stabilize-vertices", instance)
    doc = json.loads(out)
    doc["certificates"]["surviving_cover"]["q"] = "1"
    result_path = tmp_path / "tampered.json"
    result_path.write_text(json.dumps(doc))
    code, out, _err = _run(capsys, "verify", instance, "--result", str(result_path))
    assert code == 1
    assert json.loads(out)["verified"] is False


def test_batch_runs_with_jobs(capsys):
    code, out, _err = _run(
        capsys,
        "--jobs", "2",
        "gamma",
        str(FIXTURES / "fig6.json"),
        str(FIXTURES / "fig9.json"),
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["outputs"]["gamma"] == 2
    assert json.loads(lines[1])["outputs"]["gamma"] == 1


def test_selftest_smoke(capsys):
    code, out, _err = _run(capsys, "selftest", "--seed", "3")
    assert code == 0
    assert "selftest: PASS" in out

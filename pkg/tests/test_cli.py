"""CLI behaviour: parsing, exit codes, schema stability."""
import json

import pytest

from orbiforge.cli import main
from orbiforge.fixtures import fixture_text
from orbiforge.presfile import (ParseError, parse_presentation, parse_word,
                                render_presentation)


@pytest.fixture()
def p6_file(tmp_path):
    path = tmp_path / "p6.txt"
    path.write_text(fixture_text("p6"))
    return str(path)


class TestParser:
    def test_p6_parse(self):
        p = parse_presentation(fixture_text("p6"))
        assert p.name == "p6"
        assert p.generators == ("a", "b")
        assert [r.letters for r in p.relators] == [
            (1,) * 6, (2,) * 3, (1, 2, 1, 2)]

    def test_unknown_generator_position(self):
        with pytest.raises(ParseError) as err:
            parse_presentation("group t\ngens a b\nrel a c\n")
        assert err.value.line == 3
        assert "c" in err.value.message

    def test_missing_gens(self):
        with pytest.raises(ParseError):
            parse_presentation("group t\nrel a\n")

    def test_empty_generator_list(self):
        with pytest.raises(ParseError):
            parse_presentation("group t\ngens\n")

    def test_negative_and_nested_powers(self):
        p = parse_presentation("group t\ngens a b\nrel (a b^-1)^2\n")
        assert p.relators[0].letters == (1, -2, 1, -2)

    def test_render_parse_roundtrip_on_bundled_corpus(self):
        for name in ("p6", "p4", "tetrahedral", "figure8"):
            p = parse_presentation(fixture_text(name))
            assert parse_presentation(render_presentation(p)) == p

    def test_render_is_normal_form(self):
        text = "group t\ngens a b\nrel (a b)^2\nrel a a a\n"
        p = parse_presentation(text)
        rendered = render_presentation(p)
        assert rendered == "group t\ngens a b\nrel a b a b\nrel a^3\n"
        assert parse_presentation(rendered) == p

    def test_parse_word_against_presentation(self):
        p = parse_presentation(fixture_text("p6"))
        assert parse_word("b a^-2", p).letters == (2, -1, -1)


class TestSubcommands:
    def test_abelianize(self, p6_file, capsys):
        assert main(["abelianize", p6_file]) == 0
        assert "Z/6" in capsys.readouterr().out

    def test_cosets(self, p6_file, capsys):
        rc = main(["cosets", p6_file, "--subgroup", "b a^-2; b^-1 a^2"])
        assert rc == 0
        assert "index: 6" in capsys.readouterr().out

    def test_classify_model(self, capsys):
        assert main(["classify", "p6"]) == 0
        assert "S2(2,3,6)" in capsys.readouterr().out

    def test_classify_kernel(self, capsys):
        assert main(["classify", "p6", "--sign", "a=-1"]) == 0
        assert "S2(3,3,3)" in capsys.readouterr().out

    def test_double_cover(self, capsys):
        assert main(["double-cover", "p4m"]) == 0
        assert "S2(2,4,4)" in capsys.readouterr().out

    def test_rhombic(self, capsys):
        assert main(["rhombic", "1,0", "1/2,1/2*rt3"]) == 0
        assert "yes" in capsys.readouterr().out
        assert main(["rhombic", "2,0", "0,1"]) == 0
        assert "no" in capsys.readouterr().out

    def test_verdict(self, capsys):
        assert main(["verdict", "S2(2,4,4)"]) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["status"] == "excluded"
        assert record["reason"] == "four_torsion"
        assert all(c["pass"] for c in record["checks"])

    def test_verdict_realizable(self, capsys):
        assert main(["verdict", "D2(3;3)", "--no-checks"]) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["status"] == "realizable"
        assert "figure-eight" in record["witness"]


class TestExitCodes:
    def test_unknown_model_is_input_error(self, capsys):
        assert main(["classify", "p7"]) == 2

    def test_unknown_signature_is_input_error(self, capsys):
        assert main(["verdict", "S2(9,9,9)"]) == 2

    def test_unknown_check_id_is_input_error(self, capsys):
        assert main(["verify-paper", "--only", "no-such-check"]) == 2

    def test_parse_error_is_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("group t\ngens a\nrel a c\n")
        assert main(["abelianize", str(bad)]) == 2

    def test_resource_limit_is_exit_3(self, p6_file, capsys, monkeypatch):
        monkeypatch.setenv("ORBIFORGE_MAX_COSETS", "2")
        assert main(["cosets", p6_file, "--subgroup", "b a^-2; b^-1 a^2"]) == 3

    def test_invalid_sign_is_input_error(self, capsys):
        assert main(["classify", "p6", "--sign", "b=-1"]) == 2


class TestVerifyRunner:
    def test_single_check_selection(self, capsys):
        assert main(["verify-paper", "--only", "rigid-index"]) == 0
        out = capsys.readouterr().out
        assert "rigid-index" in out
        assert "1 pass" in out

    def test_json_deterministic_across_runs(self, capsys):
        assert main(["verify-paper", "--only", "rep-236,rep-244,degree-metadata",
                     "--format", "json", "--seed", "7"]) == 0
        first = capsys.readouterr().out
        assert main(["verify-paper", "--only", "rep-236,rep-244,degree-metadata",
                     "--format", "json", "--seed", "7"]) == 0
        second = capsys.readouterr().out
        assert first == second
        payload = json.loads(first)
        assert payload["summary"]["fail"] == 0
        assert all(set(c) == {"id", "anchor", "status", "detail", "wall_time_ms"}
                   for c in payload["checks"])

    def test_cited_checks_reported(self, capsys):
        assert main(["verify-paper", "--only", "cited-ab-upgrade"]) == 0
        assert "CITED" in capsys.readouterr().out

    def test_resource_limit_during_verify_is_exit_3(self, capsys, monkeypatch):
        monkeypatch.setenv("ORBIFORGE_MAX_COSETS", "2")
        assert main(["verify-paper", "--only", "rigid-index"]) == 3

    def test_model_presentations_roundtrip(self):
        from orbiforge.fixtures import model_presentation_text
        from orbiforge.wallpaper import MODEL_NAMES, model

        for name in MODEL_NAMES:
            text = model_presentation_text(name)
            assert parse_presentation(text) == model(name).presentation

    def test_verdict_records_signature_note(self, capsys):
        assert main(["verdict", "D2(2,2;R)", "--no-checks"]) == 0
        record = json.loads(capsys.readouterr().out)
        assert "typo" in record.get("signature_note", "")

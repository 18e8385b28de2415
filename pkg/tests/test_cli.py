"""Command line: exit codes, outputs, scripted wizard replay."""

from __future__ import annotations

import json

import pytest

from ontoform import fixture_path
from ontoform.cli import main
from ontoform.thesaurus import extract_hierarchy, scheme_from_graph, transitive_reduction
from ontoform.turtle import parse_turtle

REEF_TTL = str(fixture_path("reef_extract.ttl"))
DOC_TTL = str(fixture_path("technical_document.ttl"))
ANSWERS = str(fixture_path("pv_answers.json"))


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestUsage:
    def test_no_command_exits_one(self, capsys):
        with pytest.raises(SystemExit) as wrapper:
            main([])
        assert wrapper.value.code == 1

    def test_unknown_flag_exits_one(self, capsys):
        with pytest.raises(SystemExit) as wrapper:
            main(["components", DOC_TTL, "X", "--frobnicate"])
        assert wrapper.value.code == 1

    def test_help_exits_zero(self, capsys):
        with pytest.raises(SystemExit) as wrapper:
            main(["--help"])
        assert wrapper.value.code == 0


class TestTransform:
    def test_skos_fixture_reports_counts(self, capsys, tmp_path):
        out = tmp_path / "reef.ttl"
        code, stdout, _ = run(capsys, "transform", REEF_TTL, "--out", str(out))
        assert code == 0
        assert "14 classes" in stdout
        g = parse_turtle(out.read_text(encoding="utf-8"))
        assert len(g) > 0

    def test_csv_sample_counts(self, capsys, tmp_path):
        out = tmp_path / "seal.ttl"
        code, stdout, _ = run(
            capsys, "transform", str(fixture_path("sealing_fragment.csv")), "--out", str(out)
        )
        assert code == 0
        assert stdout.strip() == "4 classes, 3 edges"

    def test_reduce_drops_redundant_edge(self, capsys, tmp_path):
        src = tmp_path / "tri.csv"
        src.write_text(
            "id,label,broader_id\nA,alpha,\nB,beta,A\nC,gamma,B\n", encoding="utf-8"
        )
        # add the redundant C -> A link through a second row for C
        with src.open("a", encoding="utf-8") as f:
            f.write("C,gamma,A\n")
        out = tmp_path / "tri.ttl"
        code, stdout, _ = run(capsys, "transform", str(src), "--out", str(out), "--reduce")
        assert code == 0
        assert stdout.strip() == "3 classes, 2 edges"

    def test_reduction_matches_library_on_fixture(self, capsys, tmp_path):
        out = tmp_path / "reef.ttl"
        code, stdout, _ = run(capsys, "transform", REEF_TTL, "--out", str(out), "--reduce")
        assert code == 0
        scheme = scheme_from_graph(
            parse_turtle(fixture_path("reef_extract.ttl").read_text(encoding="utf-8"))
        )
        expected = transitive_reduction(extract_hierarchy(scheme))
        assert f"{len(expected.classes)} classes, {len(expected.edges)} edges" == stdout.strip()

    def test_cyclic_input_exits_three_with_cycle(self, capsys, tmp_path):
        src = tmp_path / "loop.csv"
        src.write_text("A,alpha,B\nB,beta,A\n", encoding="utf-8")
        code, _, stderr = run(capsys, "transform", str(src), "--out", str(tmp_path / "x.ttl"))
        assert code == 3
        assert "cyclic" in stderr
        assert "->" in stderr

    def test_unparsable_input_exits_two(self, capsys, tmp_path):
        src = tmp_path / "broken.ttl"
        src.write_text("@prefix broken", encoding="utf-8")
        code, _, stderr = run(capsys, "transform", str(src), "--out", str(tmp_path / "x.ttl"))
        assert code == 2
        assert "line" in stderr

    def test_missing_file_exits_two(self, capsys, tmp_path):
        code, _, _ = run(capsys, "transform", str(tmp_path / "nope.ttl"), "--out", "x.ttl")
        assert code == 2


class TestMerge:
    def test_fixture_pair_merges(self, capsys, tmp_path):
        hierarchy = tmp_path / "reef.ttl"
        assert run(capsys, "transform", REEF_TTL, "--out", str(hierarchy), "--reduce")[0] == 0
        merged = tmp_path / "merged.ttl"
        report = tmp_path / "report.json"
        code, stdout, _ = run(
            capsys, "merge", str(hierarchy), DOC_TTL,
            "--out", str(merged), "--report", str(report),
        )
        assert code == 0
        assert "7 matched" in stdout
        doc = json.loads(report.read_text(encoding="utf-8"))
        assert doc["reef_fraction"] == pytest.approx(7 / 9)
        g = parse_turtle(merged.read_text(encoding="utf-8"))
        assert len(g) > 0

    def test_pipeline_reproduces_bundled_merged_ontology(self, capsys, tmp_path):
        # transform --reduce + merge over the bundled sources must rebuild
        # fixtures/pv_module.ttl byte for byte
        hierarchy = tmp_path / "reef.ttl"
        assert run(capsys, "transform", REEF_TTL, "--out", str(hierarchy), "--reduce")[0] == 0
        merged = tmp_path / "merged.ttl"
        report = tmp_path / "report.json"
        code, _, _ = run(
            capsys, "merge", str(hierarchy), DOC_TTL,
            "--out", str(merged), "--report", str(report),
        )
        assert code == 0
        assert merged.read_bytes() == fixture_path("pv_module.ttl").read_bytes()

    def test_disjoint_inputs_produce_empty_result(self, capsys, tmp_path):
        a = tmp_path / "a.ttl"
        b = tmp_path / "b.ttl"
        a.write_text(
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
            "<http://x/A> a owl:Class ; rdfs:label \"alpha\" .\n",
            encoding="utf-8",
        )
        b.write_text(
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
            "<http://y/B> a owl:Class ; rdfs:label \"beta\" .\n",
            encoding="utf-8",
        )
        merged = tmp_path / "m.ttl"
        report = tmp_path / "r.json"
        code, stdout, _ = run(
            capsys, "merge", str(a), str(b), "--out", str(merged), "--report", str(report)
        )
        assert code == 0
        assert "0 matched" in stdout
        assert len(parse_turtle(merged.read_text(encoding="utf-8"))) == 0
        assert json.loads(report.read_text(encoding="utf-8"))["name_conflicts"] == []

    def test_duplicate_label_reported_not_fatal(self, capsys, tmp_path):
        a = tmp_path / "a.ttl"
        a.write_text(
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
            "<http://x/A1> a owl:Class ; rdfs:label \"même nom\" .\n"
            "<http://x/A2> a owl:Class ; rdfs:label \"même nom\" .\n",
            encoding="utf-8",
        )
        b = tmp_path / "b.ttl"
        b.write_text(
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
            "<http://y/B> a owl:Class ; rdfs:label \"même nom\" .\n",
            encoding="utf-8",
        )
        report = tmp_path / "r.json"
        code, stdout, _ = run(
            capsys, "merge", str(a), str(b),
            "--out", str(tmp_path / "m.ttl"), "--report", str(report),
        )
        assert code == 0
        assert "1 name conflicts" in stdout
        doc = json.loads(report.read_text(encoding="utf-8"))
        assert doc["name_conflicts"][0]["label"] == "meme nom"


class TestComponents:
    def test_verre_polymere_definition_order(self, capsys):
        code, stdout, _ = run(capsys, "components", DOC_TTL, "VerrePolymere")
        assert code == 0
        assert stdout.splitlines() == [
            "hasComponent CableElectrique",
            "hasComponent Cadre",
            "hasComponent CellulePhotoV",
            "hasComponent FilmPolymere",
            "hasComponent VerreInterieur",
        ]

    def test_full_identifier_accepted(self, capsys):
        code, stdout, _ = run(
            capsys, "components", DOC_TTL, "http://www.cstb.fr/ontodt#VerrePolymere"
        )
        assert code == 0
        assert len(stdout.splitlines()) == 5

    def test_primitive_class_prints_nothing(self, capsys):
        code, stdout, _ = run(capsys, "components", DOC_TTL, "Cadre")
        assert code == 0
        assert stdout == ""

    def test_unknown_class_exits_two(self, capsys):
        code, _, stderr = run(capsys, "components", DOC_TTL, "Chimera")
        assert code == 2
        assert "Chimera" in stderr


class TestWizard:
    def test_scripted_run_completes(self, capsys, tmp_path):
        base = tmp_path / "out" / "session1"
        code, stdout, _ = run(
            capsys, "wizard", DOC_TTL,
            "--product", "VerrePolymere",
            "--answers", ANSWERS,
            "--session-id", "demo",
            "--out", str(base),
        )
        assert code == 0
        assert "Complete: 6 instances" in stdout
        ttl = (tmp_path / "out" / "session1.ttl").read_text(encoding="utf-8")
        assert "# session: demo" in ttl
        assert "doc:inst-6" in ttl
        html = (tmp_path / "out" / "session1.html").read_text(encoding="utf-8")
        assert html.count("<section") == 6

    def test_replay_is_deterministic(self, capsys, tmp_path):
        outputs = []
        for run_dir in ("a", "b"):
            base = tmp_path / run_dir / "s"
            code, _, _ = run(
                capsys, "wizard", DOC_TTL,
                "--product", "VerrePolymere",
                "--answers", ANSWERS,
                "--session-id", "demo",
                "--out", str(base),
            )
            assert code == 0
            outputs.append((tmp_path / run_dir / "s.ttl").read_bytes())
        assert outputs[0] == outputs[1]

    def test_missing_designation_exits_three(self, capsys, tmp_path):
        script = tmp_path / "script.json"
        script.write_text(json.dumps([{"values": {"longueur": "10"}}]), encoding="utf-8")
        code, _, stderr = run(
            capsys, "wizard", DOC_TTL,
            "--product", "VerrePolymere",
            "--answers", str(script),
            "--out", str(tmp_path / "s"),
        )
        assert code == 3
        assert "designation" in stderr

    def test_stale_form_id_exits_three(self, capsys, tmp_path):
        script = tmp_path / "script.json"
        script.write_text(
            json.dumps([{"form_id": "form-9", "values": {"designation": "x"}}]),
            encoding="utf-8",
        )
        code, _, stderr = run(
            capsys, "wizard", DOC_TTL,
            "--product", "VerrePolymere",
            "--answers", str(script),
            "--out", str(tmp_path / "s"),
        )
        assert code == 3
        assert "form-9" in stderr

    def test_wrong_concept_in_script_exits_three(self, capsys, tmp_path):
        script = tmp_path / "script.json"
        script.write_text(
            json.dumps(
                [{"concept": "http://www.cstb.fr/ontodt#Cadre", "values": {"designation": "x"}}]
            ),
            encoding="utf-8",
        )
        code, _, stderr = run(
            capsys, "wizard", DOC_TTL,
            "--product", "VerrePolymere",
            "--answers", str(script),
            "--out", str(tmp_path / "s"),
        )
        assert code == 3
        assert "pending form" in stderr

    def test_short_script_exits_three(self, capsys, tmp_path):
        script = tmp_path / "script.json"
        script.write_text(json.dumps([{"values": {"designation": "m"}}]), encoding="utf-8")
        code, _, stderr = run(
            capsys, "wizard", DOC_TTL,
            "--product", "VerrePolymere",
            "--answers", str(script),
            "--out", str(tmp_path / "s"),
        )
        assert code == 3
        assert "pending" in stderr

    def test_product_outside_root_exits_three(self, capsys, tmp_path):
        code, _, stderr = run(
            capsys, "wizard", DOC_TTL,
            "--product", "Cadre",
            "--answers", ANSWERS,
            "--out", str(tmp_path / "s"),
        )
        assert code == 3
        assert "product" in stderr.lower()

    def test_bad_script_json_exits_two(self, capsys, tmp_path):
        script = tmp_path / "script.json"
        script.write_text("not json", encoding="utf-8")
        code, _, _ = run(
            capsys, "wizard", DOC_TTL,
            "--product", "VerrePolymere",
            "--answers", str(script),
            "--out", str(tmp_path / "s"),
        )
        assert code == 2

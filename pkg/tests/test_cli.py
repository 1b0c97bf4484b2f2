import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from hurwitzpic.abelian import AbelianGroup
from hurwitzpic.cli import OutputRecord, compute, main

GOLDEN = Path(__file__).parent / "golden"
SCHEMA = json.loads(resources.files("hurwitzpic").joinpath("output.schema.json").read_text())

GOLDEN_CASES = [
    ("pic_k4_g2.txt", ["pic", "--k", "4", "--g", "2"]),
    ("pic_k3_g3_simple_coprime.txt", ["pic", "--k", "3", "--g", "3", "--simple", "--coprime"]),
    ("pic_k5_g2.json", ["pic", "--k", "5", "--g", "2", "--format", "json"]),
    ("pic_k3_g2_explain.txt", ["pic", "--k", "3", "--g", "2", "--explain"]),
    ("table_k3_2_12.md", ["table", "--k", "3", "--g-range", "2..12"]),
    ("table_k4_simple_2_8.csv", ["table", "--k", "4", "--g-range", "2..8", "--simple", "--format", "csv"]),
    ("table_k5_2_4.json", ["table", "--k", "5", "--g-range", "2..4", "--format", "json"]),
]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name,argv", GOLDEN_CASES)
def test_golden(capsys, name, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


@pytest.mark.parametrize("name,argv", GOLDEN_CASES)
def test_byte_identical_across_runs(capsys, name, argv):
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_pic_examples(capsys):
    assert run(capsys, "pic", "--k", "4", "--g", "2", "--quiet")[1] == "Z + Z/10\n"
    assert run(capsys, "pic", "--k", "5", "--g", "3", "--quiet")[1] == "Z + Z\n"
    assert run(capsys, "pic", "--k", "3", "--g", "3", "--simple", "--quiet")[1] == "Z/3 + Z/18\n"
    assert run(capsys, "pic", "--k", "3", "--g", "5", "--simple", "--coprime", "--quiet")[1] == "Z/26 + Z/3\n"


def test_coprime_falls_back_to_invariant_form(capsys):
    # Z/2 + Z/6 has no two-summand coprime presentation
    assert run(capsys, "pic", "--k", "4", "--g", "2", "--simple", "--coprime", "--quiet")[1] == "Z/2 + Z/6\n"


def test_text_and_json_encode_the_same_group(capsys):
    for k, g, simple in [(3, 2, False), (3, 12, False), (4, 5, True), (5, 2, False), (5, 7, True)]:
        flags = ["--simple"] if simple else []
        text = run(capsys, "pic", "--k", str(k), "--g", str(g), "--quiet", *flags)[1].strip()
        rec = OutputRecord.from_dict(json.loads(
            run(capsys, "pic", "--k", str(k), "--g", str(g), "--format", "json", *flags)[1]))
        assert text == rec.display_form
        assert AbelianGroup(rec.free_rank, rec.invariant_factors) == compute(k, g, simple).group


def test_json_validates_against_schema(capsys):
    docs = [
        run(capsys, "pic", "--k", "4", "--g", "7", "--format", "json")[1],
        run(capsys, "pic", "--k", "3", "--g", "2", "--simple", "--format", "json")[1],
        run(capsys, "table", "--k", "4", "--g-range", "2..5", "--format", "json")[1],
        run(capsys, "verify", "--gmax", "3", "--format", "json")[1],
    ]
    for doc in docs:
        jsonschema.validate(json.loads(doc), SCHEMA)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"k": 3}, SCHEMA)


def test_output_record_round_trip():
    for k in (3, 4, 5):
        for g in (2, 3, 6):
            for simple in (False, True):
                rec = OutputRecord.from_result(compute(k, g, simple))
                assert OutputRecord.from_dict(json.loads(json.dumps(rec.to_dict()))) == rec


def test_output_record_rejects_inconsistent_display():
    d = OutputRecord.from_result(compute(4, 2, False)).to_dict()
    d["group"]["display_form"] = "Z + Z/18"
    with pytest.raises(ValueError):
        OutputRecord.from_dict(d)


@pytest.mark.parametrize("argv", [
    ["pic", "--k", "6", "--g", "3"],
    ["pic", "--k", "3", "--g", "1"],
    ["verify", "--gmax", "1"],
    ["table", "--k", "3", "--g-range", "5..4"],
    ["table", "--k", "3", "--g-range", "1..4"],
    ["table", "--k", "3", "--g-range", "garbage"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    capsys.readouterr()


def test_verify_gmax_2_covers_only_genus_two(capsys):
    code, out, _ = run(capsys, "verify", "--gmax", "2", "--format", "json")
    report = json.loads(out)
    assert report["gmax"] == 2 and len(report["checks"]) == 14
    failed = {c["name"] for c in report["checks"] if not c["passed"]}
    # the only failures are the two genus-two simply branched discrepancies
    assert failed == {"corollary-simple-k4", "corollary-simple-k5"}
    assert code == 1 and report["passed"] is False


def test_verify_text_report_names_what_each_row_certifies(capsys):
    _, out, _ = run(capsys, "verify", "--gmax", "4")
    rows = out.strip().splitlines()[:-1]
    assert len(rows) == 14
    for row in rows:
        status, name, certifies = row.split(None, 2)
        assert status in ("PASS", "FAIL")
        assert any(w in certifies for w in ("Theorem", "Corollary", "Lemma", "Example", "Trigonal",
                                            "Hodge", "Base", "Integrality", "Coherence"))


def test_parallel_matches_serial(capsys):
    serial = run(capsys, "table", "--k", "5", "--g-range", "2..14", "--format", "csv")[1]
    assert run(capsys, "table", "--k", "5", "--g-range", "2..14", "--format", "csv", "--jobs", "3")[1] == serial
    v1 = run(capsys, "verify", "--gmax", "6", "--format", "json")
    v3 = run(capsys, "verify", "--gmax", "6", "--format", "json", "--jobs", "3")
    assert v1 == v3


def test_out_file(tmp_path, capsys):
    target = tmp_path / "t.md"
    code, out, _ = run(capsys, "table", "--k", "3", "--g-range", "2..12", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "table_k3_2_12.md").read_text()


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "hurwitzpic.cli", "pic", "--k", "4", "--g", "2", "--quiet"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "Z + Z/10\n"

"""Exercises every subcommand through main() plus one real process run."""

from __future__ import annotations

import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from gpdkit import (
    FiniteGroupoid,
    GeneratorSpec,
    GroupoidMorphism,
    HSMorphism,
    PrincipalBundle,
    dumps,
    hs_from_groupoid_morphism,
    identity_ggt,
    loads,
    pullback_bundle,
    random_groupoid,
    validate_bundle,
    validate_groupoid,
    validate_hs,
)
from gpdkit.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
UNIT = str(FIXTURES / "unit-z2.bnd")
Z2 = str(FIXTURES / "z2.gpd")
S3 = str(FIXTURES / "s3.gpd")


def test_validate_accepts_fixtures(capsys):
    assert main(["validate", Z2, UNIT]) == 0
    out = capsys.readouterr().out
    assert out == f"{Z2}: ok\n{UNIT}: ok\n"


def test_validate_reports_violations(tmp_path, capsys):
    doc = json.loads((FIXTURES / "z2.gpd").read_text())
    entry = next(e for e in doc["body"]["compose"] if e[:2] == ["a", "a"])
    entry[2] = "a"
    bad = tmp_path / "bad.gpd"
    bad.write_text(json.dumps(doc))
    assert main(["validate", str(bad)]) == 1
    out = capsys.readouterr().out
    assert f"{bad}: " in out and "violations" in out
    assert "\n  " in out


def test_validate_rejects_malformed_file(tmp_path, capsys):
    mangled = tmp_path / "mangled.gpd"
    mangled.write_text("not json")
    assert main(["validate", str(mangled)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: ") and "invalid JSON" in err


def test_validate_missing_file(capsys):
    assert main(["validate", "no-such-file.gpd"]) == 2
    assert "cannot read no-such-file.gpd" in capsys.readouterr().err


def test_divide_prints_the_quotient_arrow(capsys):
    assert main(["divide", UNIT, "e", "a"]) == 0
    assert capsys.readouterr().out == "a\n"


def test_divide_across_fibers_fails(tmp_path, unit_z2, capsys):
    wide = pullback_bundle(unit_z2, {"m0": "*", "m1": "*"})
    path = tmp_path / "wide.bnd"
    path.write_text(dumps(wide))
    p, q = '["m0","e"]', '["m1","e"]'
    assert main(["divide", str(path), p, q]) == 1
    assert "lie over different base points" in capsys.readouterr().err


def test_divide_unknown_point(capsys):
    assert main(["divide", UNIT, "zz", "a"]) == 2
    assert "not a total point" in capsys.readouterr().err


def test_morphisms_lists_both(capsys):
    assert main(["morphisms", UNIT, UNIT]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "2 morphisms"
    assert lines[1] == "morphism 0: a:a e:e"
    assert lines[2] == "morphism 1: a:e e:a"


def test_ggt_identity_invert_compose(tmp_path, unit_z2, capsys):
    assert main(["ggt", "identity", UNIT]) == 0
    text = capsys.readouterr().out
    assert loads(text) == identity_ggt(unit_z2)

    k = tmp_path / "k.ggt"
    k.write_text(text)
    assert main(["ggt", "invert", str(k)]) == 0
    assert loads(capsys.readouterr().out) == identity_ggt(unit_z2)

    assert main(["ggt", "compose", str(k), str(k)]) == 0
    assert loads(capsys.readouterr().out) == identity_ggt(unit_z2)

    assert main(["ggt", "compose", str(k)]) == 2
    assert "needs two ggt files" in capsys.readouterr().err


def test_ggt_rejects_wrong_document_kind(capsys):
    assert main(["ggt", "identity", Z2]) == 2
    assert "expected a bundle document, got groupoid" in capsys.readouterr().err


def test_gauge_group_output(capsys):
    assert main(["gauge-group", UNIT]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "order 2"
    assert lines[1].startswith("unit ")
    assert sum(1 for line in lines if line.startswith("element ")) == 2


def test_hs_gauge_group_output(tmp_path, z2, capsys):
    ident = GroupoidMorphism(
        z2, z2, {x: x for x in z2.objects}, {g: g for g in z2.arrows}
    )
    path = tmp_path / "id.hs"
    path.write_text(dumps(hs_from_groupoid_morphism(ident)))
    assert main(["hs-gauge-group", str(path)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "order 2"


def test_gauge_groupoid_with_export(tmp_path, capsys):
    out_file = tmp_path / "gauge.gpd"
    assert main(["gauge-groupoid", UNIT, UNIT, "--export", str(out_file)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "objects P0 P1"
    assert lines[1] == "arrows 8"
    assert lines[2] == "valid yes"
    assert lines[3] == f"exported {out_file}"
    exported = loads(out_file.read_text())
    assert isinstance(exported, FiniteGroupoid)
    assert validate_groupoid(exported).ok
    assert len(exported.arrows) == 8


def test_gauge_groupoid_hs_flag(tmp_path, z2, capsys):
    ident = GroupoidMorphism(
        z2, z2, {x: x for x in z2.objects}, {g: g for g in z2.arrows}
    )
    path = tmp_path / "id.hs"
    path.write_text(dumps(hs_from_groupoid_morphism(ident)))
    assert main(["gauge-groupoid", "--hs", str(path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "arrows 2"
    assert lines[2] == "valid yes"


def test_gen_is_deterministic(capsys):
    assert main(["gen", "groupoid", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "groupoid", "--seed", "3"]) == 0
    assert capsys.readouterr().out == first
    assert loads(first) == random_groupoid(GeneratorSpec(3))


def test_gen_bundle_and_hs_validate(capsys):
    assert main(["gen", "bundle", "--seed", "5", "--base", "2"]) == 0
    B = loads(capsys.readouterr().out)
    assert isinstance(B, PrincipalBundle)
    assert validate_bundle(B).ok

    assert main(["gen", "hs", "--seed", "2"]) == 0
    h = loads(capsys.readouterr().out)
    assert isinstance(h, HSMorphism)
    assert validate_hs(h).ok


def test_gen_bundle_can_reuse_a_groupoid_file(capsys):
    assert main(["gen", "bundle", "--seed", "1", "--groupoid", Z2, "--base", "2"]) == 0
    B = loads(capsys.readouterr().out)
    assert B.groupoid == loads(Path(Z2).read_text())


def test_gen_impossible_bundle(capsys):
    assert main(["gen", "bundle", "--seed", "0", "--groupoid", S3, "--max-total", "2"]) == 2
    assert "no fiber fits" in capsys.readouterr().err


def test_check_theorems_passes_and_reports(tmp_path, capsys):
    report = tmp_path / "report.json"
    argv = [
        "check-theorems",
        "--fixtures", str(FIXTURES),
        "--max-size", "10",
        "--report", str(report),
    ]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert first.count("PASS ") == 20
    assert "20/20 checks passed" in first
    first_report = report.read_bytes()
    doc = json.loads(first_report)
    assert doc["ok"] is True and len(doc["checks"]) == 20

    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert report.read_bytes() == first_report


def test_check_theorems_rejects_bad_dir(capsys):
    assert main(["check-theorems", "--fixtures", "no-such-dir"]) == 2
    assert "not a directory" in capsys.readouterr().err


def test_check_theorems_flags_corrupt_fixture(tmp_path, capsys):
    corrupted = tmp_path / "fixtures"
    shutil.copytree(FIXTURES, corrupted)
    doc = json.loads((corrupted / "z2.gpd").read_text())
    entry = next(e for e in doc["body"]["compose"] if e[:2] == ["a", "a"])
    entry[2] = "a"
    (corrupted / "z2.gpd").write_text(json.dumps(doc))
    assert main(["check-theorems", "--fixtures", str(corrupted), "--max-size", "10"]) == 1
    out = capsys.readouterr().out
    assert "FAIL def-groupoid" in out
    assert "z2.gpd" in out
    assert "19/20 checks passed" in out


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_oracle_bound_exit(monkeypatch, capsys):
    monkeypatch.setenv("GPDKIT_ORACLE_BOUNDS", "total=1")
    assert main(["morphisms", UNIT, UNIT]) == 2
    assert "refusing enumeration" in capsys.readouterr().err


def test_module_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "gpdkit", "divide", UNIT, "e", "a"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "a\n"

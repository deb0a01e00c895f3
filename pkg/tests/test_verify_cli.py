import json

import pytest

from chaincat.cli import main
from chaincat.verify import (
    CHECKS,
    CheckReport,
    ResourceLimit,
    check_cones_principal,
    export_cayley,
    run_all,
    run_check,
)


class TestRunner:
    def test_every_check_passes_at_n3(self):
        for name in CHECKS:
            report = run_check(name, 3)
            assert report.status == "pass", (name, report.witness)
            assert report.witness is None
            assert report.elapsed_ms >= 0

    def test_unknown_check(self):
        with pytest.raises(ValueError, match="unknown check"):
            run_check("bogus", 3)

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="supports n"):
            run_check("green", 9)
        with pytest.raises(ValueError):
            run_check("counts", 2)

    def test_run_all_caps_per_check(self):
        reports = run_all(5)
        by_name = {r.check: r for r in reports}
        assert by_name["cones-principal"].n == 4
        assert by_name["cones-principal"].counts["capped_from"] == 5
        assert by_name["factorize-L"].n == 4
        assert by_name["green"].n == 5 and "capped_from" not in by_name["green"].counts
        assert all(r.status == "pass" for r in reports)
        assert len(reports) == len(CHECKS)

    def test_report_dict_schema(self):
        report = run_check("counts", 4)
        data = report.to_dict()
        assert set(data) == {"check", "n", "status", "counts", "witness", "elapsed_ms"}
        json.dumps(data)

    def test_sampled_suite_passes_across_seeds(self):
        for seed in (0, 1, 2024):
            assert run_check("factorize-Pi", 5, seed=seed).status == "pass"

    def test_exceptions_become_failed_reports(self, monkeypatch):
        from chaincat import verify

        def boom(n, seed=0):
            raise RuntimeError("kaput")

        monkeypatch.setitem(verify.CHECKS, "boom", verify.CheckDef(boom, 3, 4))
        report = run_check("boom", 3)
        assert report.status == "fail"
        assert "kaput" in report.witness["exception"]


class TestFaultInjection:
    def test_dropped_cone_produces_witness(self):
        ok, counts, witness = check_cones_principal(3, _corrupt=lambda cones: cones[1:])
        assert not ok
        assert witness["missing"] == 1 and witness["extra"] == 0
        assert "vertex" in witness["cone"]

    def test_duplicated_state_detected_via_runner(self):
        report = CheckReport("cones-principal", 3, "fail", {}, {"reason": "x"}, 0)
        assert report.status == "fail" and report.witness is not None

    def test_swapped_cone_produces_extra(self):
        from chaincat.verify import left_category

        cat = left_category(4)

        def corrupt(cones):
            from chaincat.cones import Cone

            victim = max(cones, key=lambda c: len(c.vertex.image))
            bad = dict(victim.components)
            target = next(
                obj for obj in victim.components if len(cat.hom(obj, victim.vertex)) > 1
            )
            bad[target] = next(
                m for m in cat.hom(target, victim.vertex) if m != victim.components[target]
            )
            return [c for c in cones if c != victim] + [Cone(cat, victim.vertex, bad)]

        ok, counts, witness = check_cones_principal(4, _corrupt=corrupt)
        assert not ok and witness["extra"] == 1 and witness["missing"] == 1


class TestCLI:
    def test_single_check_pass(self, capsys):
        assert main(["--check", "counts", "--n", "5"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "oxn=125" in out

    def test_all_n3_passes(self, capsys):
        assert main(["--check", "all", "--n", "3"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == len(CHECKS)

    def test_all_n4_passes(self, capsys):
        assert main(["--check", "all", "--n", "4"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == len(CHECKS)
        assert f"{len(CHECKS)}/{len(CHECKS)} checks passed" in out

    def test_json_format(self, capsys):
        assert main(["--check", "green", "--n", "3", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["passed"] is True
        assert data["reports"][0]["check"] == "green"
        assert data["reports"][0]["status"] == "pass"

    def test_json_schema_all_reports(self, capsys):
        assert main(["--check", "all", "--n", "3", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert set(data) == {"reports", "passed"} and data["passed"] is True
        assert len(data["reports"]) == len(CHECKS)
        for report in data["reports"]:
            assert set(report) == {"check", "n", "status", "counts", "witness", "elapsed_ms"}
            assert report["check"] in CHECKS
            assert report["status"] in ("pass", "fail")
            assert report["witness"] is None or isinstance(report["witness"], dict)
            assert isinstance(report["elapsed_ms"], int) and report["elapsed_ms"] >= 0
            assert isinstance(report["n"], int)
            assert all(isinstance(k, str) for k in report["counts"])

    def test_usage_errors_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--check", "counts"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["--n", "3"])
        assert exc.value.code == 2
        assert main(["--check", "nope", "--n", "3"]) == 2
        assert main(["--check", "green", "--n", "12"]) == 2

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["--check", "counts", "--n", "3", "--format", "json", "--out", str(out)]) == 0
        capsys.readouterr()
        data = json.loads(out.read_text())
        assert data["passed"] is True

    def test_list(self, capsys):
        assert main(["--list"]) == 0
        out = capsys.readouterr().out
        for name in CHECKS:
            assert name in out


class TestExport:
    def test_export_ox3(self, tmp_path):
        path = tmp_path / "ox3.json"
        export_cayley("oxn", 3, str(path))
        data = json.loads(path.read_text())
        assert data["order"] == 9
        assert len(data["table"]) == 9 and all(len(row) == 9 for row in data["table"])
        assert data["elements"][1] == "[1,1,2]"

    def test_export_tl_isomorphic_table_size(self, tmp_path):
        path = tmp_path / "tl3.json"
        export_cayley("TL", 3, str(path))
        data = json.loads(path.read_text())
        assert data["order"] == 9

    def test_export_all_selectors_n3(self, tmp_path):
        for selector in ("oxn", "TL", "TR", "TPo", "TPi"):
            path = tmp_path / f"{selector}.json"
            export_cayley(selector, 3, str(path))
            assert json.loads(path.read_text())["order"] == 9

    def test_resource_limit(self, tmp_path):
        with pytest.raises(ResourceLimit):
            export_cayley("oxn", 12, str(tmp_path / "big.json"))

    def test_unknown_selector(self, tmp_path):
        with pytest.raises(ValueError, match="selector"):
            export_cayley("weird", 3, str(tmp_path / "x.json"))

    def test_cli_export(self, tmp_path, capsys):
        path = tmp_path / "ox4.json"
        assert main(["--export-cayley", "oxn", "--n", "4", "--out", str(path)]) == 0
        assert json.loads(path.read_text())["order"] == 34
        assert main(["--export-cayley", "oxn", "--n", "12", "--out", str(tmp_path / "no.json")]) == 2
        with pytest.raises(SystemExit) as exc:
            main(["--export-cayley", "oxn", "--n", "3"])
        assert exc.value.code == 2

"""Configuration parsing, the batch runner, exit codes, determinism."""

from __future__ import annotations

import json

import pytest

from finmon.cli import (
    BUILTIN_SUITES,
    ConfigError,
    list_catalog,
    load_config,
    main,
    parse_config,
)

GOOD = {
    "seed": 0,
    "budget": 1000,
    "suites": [{"name": "m", "instance": "maybe", "laws": ["F1", "T1"]}],
}


def write_config(tmp_path, data, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


# ---------------------------------------------------------------------------
# parsing and validation


def test_parse_minimal_config():
    cfg = parse_config(GOOD)
    assert cfg.seed == 0 and cfg.budget == 1000
    assert cfg.suites[0].laws == ("F1", "T1")


def test_seed_and_budget_are_mandatory():
    with pytest.raises(ConfigError, match="config.seed"):
        parse_config({"budget": 10, "suites": GOOD["suites"]})
    with pytest.raises(ConfigError, match="config.budget"):
        parse_config({"seed": 0, "suites": GOOD["suites"]})


def test_empty_config_is_an_error():
    with pytest.raises(ConfigError, match="nothing to run"):
        parse_config({"seed": 0, "budget": 10})


def test_unknown_top_level_field():
    bad = dict(GOOD, extra=1)
    with pytest.raises(ConfigError, match="config.extra"):
        parse_config(bad)


def test_unknown_instance_names_the_field():
    bad = {"seed": 0, "budget": 10, "suites": [{"name": "x", "instance": "giry"}]}
    with pytest.raises(ConfigError, match=r"suites\[0\].instance"):
        parse_config(bad)


def test_unknown_law_id_rejected():
    bad = {"seed": 0, "budget": 10,
           "suites": [{"name": "x", "instance": "maybe", "laws": ["Q7"]}]}
    with pytest.raises(ConfigError, match="unknown law id"):
        parse_config(bad)


def test_bad_step_value_rejected():
    bad = {"seed": 0, "budget": 10,
           "systems": [{"name": "s", "instance": "nondet", "size": 2,
                        "step": ["[#0]", "[#1"], "checks": ["flowLR"]}]}
    with pytest.raises(ConfigError, match=r"systems\[0\].step\[1\]"):
        parse_config(bad)


def test_step_arity_must_match_size():
    bad = {"seed": 0, "budget": 10,
           "systems": [{"name": "s", "instance": "nondet", "size": 3,
                        "step": ["[#0]", "[#1]"]}]}
    with pytest.raises(ConfigError, match="expected 3 entries"):
        parse_config(bad)


def test_unknown_system_check_rejected():
    bad = {"seed": 0, "budget": 10,
           "systems": [{"name": "s", "instance": "nondet", "size": 2,
                        "step": ["[#0]", "[#1]"], "checks": ["flowQuux"]}]}
    with pytest.raises(ConfigError, match="unknown check"):
        parse_config(bad)


def test_unknown_measure_rejected():
    bad = {"seed": 0, "budget": 10,
           "sdps": [{"name": "d", "instance": "nondet", "measure": "entropy",
                     "horizon": 1, "states": 2, "controls": 1,
                     "next": [["[#0]", "[#1]"]]}]}
    with pytest.raises(ConfigError, match="unknown measure"):
        parse_config(bad)


def test_reward_table_shape_validated():
    bad = {"seed": 0, "budget": 10,
           "sdps": [{"name": "d", "instance": "nondet", "measure": "max",
                     "horizon": 1, "states": 2, "controls": 1,
                     "next": [["[#0]", "[#1]"]],
                     "reward": [[["1/2"]]]}]}
    with pytest.raises(ConfigError, match="reward"):
        parse_config(bad)


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "absent.json")


def test_load_config_bad_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError, match="invalid JSON"):
        load_config(p)


def test_builtin_suites_parse():
    assert set(BUILTIN_SUITES) == {"full", "mutants", "reader"}
    for name, data in BUILTIN_SUITES.items():
        cfg = parse_config(data)
        assert cfg.suites, name


# ---------------------------------------------------------------------------
# the front end


def test_list_catalog_contents():
    text = list_catalog()
    assert text.count("≐") >= 25
    for law_id in ("F1", "T3", "KJ", "W5", "L2"):
        assert f"\n  {law_id} " in text or text.startswith(f"  {law_id} ")
    for name in ("identity", "maybe", "nondet", "simpleprob", "mutant-a",
                 "mutant-b", "reader", "expected", "max", "point",
                 "default-zero", "flowTrjLemma", "reprLemma"):
        assert name in text


def test_main_list_exits_zero(capsys):
    assert main(["--list"]) == 0
    assert "laws:" in capsys.readouterr().out


def test_main_needs_some_input(capsys):
    assert main([]) == 2
    assert "configuration error" in capsys.readouterr().err


def test_main_green_config(tmp_path, capsys):
    path = write_config(tmp_path, GOOD)
    assert main(["--config", path]) == 0
    out = capsys.readouterr().out
    assert "aggregate: PASS" in out
    assert "--- timing (non-deterministic) ---" in out


def test_main_failing_law_exits_one(tmp_path, capsys):
    cfg = {"seed": 0, "budget": 1000,
           "suites": [{"name": "ma", "instance": "mutant-a", "laws": ["T1", "T2"]}]}
    path = write_config(tmp_path, cfg)
    assert main(["--config", path]) == 1
    out = capsys.readouterr().out
    assert "T2 on mutant-a: FAIL" in out
    assert "ma = [#0, #1]" in out


def test_main_unknown_instance_exits_two(tmp_path, capsys):
    path = write_config(tmp_path, {"seed": 0, "budget": 10,
                                   "suites": [{"name": "x", "instance": "giry"}]})
    assert main(["--config", path]) == 2
    assert "giry" in capsys.readouterr().err


def test_main_builtin_suite_flag(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--suite", "reader", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    laws = [r["law"] for r in doc["deterministic"]["results"]]
    assert laws == ["F1", "F2", "F3", "F3L2"]


def test_main_unknown_suite_flag(capsys):
    assert main(["--suite", "nope"]) == 2
    assert "unknown builtin suite" in capsys.readouterr().err


def test_suite_flag_selects_from_config(tmp_path):
    cfg = {"seed": 0, "budget": 1000,
           "suites": [
               {"name": "a", "instance": "maybe", "laws": ["F1"]},
               {"name": "b", "instance": "identity", "laws": ["T1"]},
           ]}
    path = write_config(tmp_path, cfg)
    out = tmp_path / "out.json"
    assert main(["--config", path, "--suite", "b", "--format", "json",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    results = doc["deterministic"]["results"]
    assert {r["instance"] for r in results} == {"identity"}


def test_flag_overrides_are_echoed(tmp_path):
    path = write_config(tmp_path, GOOD)
    out = tmp_path / "out.json"
    assert main(["--config", path, "--seed", "7", "--budget", "555",
                 "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    cfg = doc["deterministic"]["config"]
    assert cfg["seed"] == 7 and cfg["budget"] == 555


def test_reward_table_variant_runs(tmp_path):
    cfg = {"seed": 0, "budget": 1000,
           "sdps": [{"name": "d", "instance": "nondet", "measure": "max",
                     "horizon": 1, "states": 2, "controls": 1,
                     "next": [["[#0, #1]", "[#1]"]],
                     "reward": [[["0", "1/2"], ["1/3", "0"]]]}]}
    path = write_config(tmp_path, cfg)
    out = tmp_path / "out.json"
    assert main(["--config", path, "--format", "json", "--out", str(out)]) == 0


def test_refused_sdp_measure_fails_the_run(tmp_path, capsys):
    cfg = {"seed": 0, "budget": 1000,
           "sdps": [{"name": "d", "instance": "maybe", "measure": "default-zero",
                     "horizon": 1, "states": 2, "controls": 1,
                     "next": [["some #1", "none"]]}]}
    path = write_config(tmp_path, cfg)
    assert main(["--config", path]) == 1
    out = capsys.readouterr().out
    assert "not shift compatible" in out
    assert "mv = none" in out


def test_deterministic_section_stable_across_jobs(tmp_path):
    cfg = {"seed": 3, "budget": 1000,
           "suites": [{"name": "m", "instance": "maybe"}],
           "systems": [{"name": "b", "instance": "nondet", "size": 2,
                        "step": ["[#0, #1]", "[#1]"],
                        "checks": ["flowLR", "flowTrjLemma"], "n_max": 2}]}
    path = write_config(tmp_path, cfg)
    outs = []
    for jobs in ("1", "8", "1"):
        out = tmp_path / f"out-{jobs}-{len(outs)}.json"
        assert main(["--config", path, "--jobs", jobs, "--format", "json",
                     "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        outs.append(json.dumps(doc["deterministic"], sort_keys=True))
    assert outs[0] == outs[1] == outs[2]


def test_json_report_shape(tmp_path):
    path = write_config(tmp_path, GOOD)
    out = tmp_path / "out.json"
    main(["--config", path, "--format", "json", "--out", str(out)])
    doc = json.loads(out.read_text())
    assert set(doc) == {"deterministic", "timing"}
    det = doc["deterministic"]
    assert det["schema"] == "lawcheck-report/1"
    assert det["counts"] == {"checks": 2, "failures": 0}
    assert all(set(r) >= {"group", "law", "instance", "pass", "checked"}
               for r in det["results"])
    assert "jobs" in doc["timing"] and "total_ms" in doc["timing"]

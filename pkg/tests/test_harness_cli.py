"""Descriptors, configs, CLI exit codes, determinism contract."""

import json

import pytest

from dynoscale.cli import main
from dynoscale.errors import ConfigError
from dynoscale.harness import parse_config, run_sweep, load_config
from dynoscale.systems.descriptor import resolve_system
from dynoscale.systems.kolyada import KolyadaSnohaMap


GOOD = {
    "system": {"kind": "shift", "symbols": 2, "depth": 5, "metric": "exp"},
    "quantities": ["separated"],
    "grid": {"start": 0.5, "ratio": 0.6, "count": 3},
    "horizons": [1, 2],
    "seed": 1,
}


def test_descriptor_kinds_resolve():
    assert resolve_system({"kind": "doubling", "grid": 16}).space.size == 16
    assert resolve_system({"kind": "unit_lattice", "points": 11}).space.size == 11
    assert resolve_system({"kind": "null_sequence", "k_max": 5}).space.size == 6
    tmap = resolve_system({"kind": "kolyada", "family": "F2", "k_max": 3,
                           "beta": 0.5})
    assert isinstance(tmap, KolyadaSnohaMap)
    prod = resolve_system({"kind": "product",
                           "a": {"kind": "doubling", "grid": 4},
                           "b": {"kind": "doubling", "grid": 5}})
    assert prod.space.size == 20


def test_descriptor_rejects_unknown_keys_with_path():
    with pytest.raises(ConfigError) as err:
        resolve_system({"kind": "doubling", "grids": 16})
    assert "system.grids" in str(err.value)
    with pytest.raises(ConfigError) as err:
        resolve_system({"kind": "product", "a": {"kind": "nope"},
                        "b": {"kind": "doubling"}})
    assert "system.a.kind" in str(err.value)


def test_config_validation_paths():
    for mutation, path in [
        (lambda c: c.pop("grid"), "config.grid"),
        (lambda c: c.update(quantities=[]), "config.quantities"),
        (lambda c: c.update(quantities=["bogus"]), "config.quantities"),
        (lambda c: c.update(horizons=[0]), "config.horizons"),
        (lambda c: c.update(budget=-1), "config.budget"),
        (lambda c: c.update(extra=1), "config.extra"),
        (lambda c: c["grid"].update(ratio=2.0), "config.grid"),
    ]:
        cfg = json.loads(json.dumps(GOOD))
        mutation(cfg)
        with pytest.raises(ConfigError) as err:
            parse_config(cfg)
        assert path in str(err.value)


def test_json_syntax_error_reports_line(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "system": {,}\n}')
    with pytest.raises(ConfigError) as err:
        load_config(bad)
    assert "line 2" in str(err.value)


def test_sweep_rerun_is_byte_identical(tmp_path):
    cfg = parse_config(GOOD)
    a = run_sweep(cfg, tmp_path / "a")
    b = run_sweep(cfg, tmp_path / "b")
    for pa, pb in zip(a, b):
        assert pa.read_bytes() == pb.read_bytes()


def test_cli_exit_codes(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(GOOD))
    assert main(["sweep", "--config", str(cfg_path), "--out", str(tmp_path / "o")]) == 0
    assert main(["verify", "--suite", "power"]) == 0

    bad = dict(GOOD, quantities=[])
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(bad))
    assert main(["sweep", "--config", str(bad_path), "--out", str(tmp_path)]) == 2
    assert main(["sweep", "--config", str(tmp_path / "absent.json"),
                 "--out", str(tmp_path)]) == 2


def test_cli_quantize_and_estimate(tmp_path):
    qcfg = {
        "system": {"kind": "doubling", "grid": 16},
        "measure": {"atoms": [0, 5, 9], "weights": ["1/3", "1/3", "1/3"]},
        "grid": {"start": 0.4, "ratio": 0.5, "count": 3},
        "horizons": [1, 2],
    }
    qpath = tmp_path / "q.json"
    qpath.write_text(json.dumps(qcfg))
    assert main(["quantize", "--config", str(qpath), "--out", str(tmp_path)]) == 0
    out = (tmp_path / "quantization.csv").read_text().splitlines()
    assert out[0] == "eps,n,kind,Q,mode"
    assert len(out) == 7

    epath = tmp_path / "est.json"
    epath.write_text(json.dumps(GOOD))
    assert main(["estimate", "--config", str(epath), "--out", str(tmp_path)]) == 0
    assert (tmp_path / "estimates.csv").exists()


def test_cli_oracle_instances(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    # separation is strict, so the two distance-1 pairs drop out at eps = 1
    inst.write_text(json.dumps({
        "kind": "separated", "eps": 1.0,
        "matrix": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]}))
    assert main(["oracle", "--instance", str(inst)]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == 2

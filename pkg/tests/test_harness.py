import json
import math
import struct

import numpy as np
import pytest

from lsequiv.basis_cov import build_basis
from lsequiv.cli import main
from lsequiv.errors import ConfigurationError, PreconditionError, SingularMatrixError
from lsequiv.harness import (
    CHAIN_HEADER,
    DEFAULT_BUDGETS,
    RISK_HEADER,
    TV_HEADER,
    RunConfig,
    condition_checker,
    config_density,
    export_basis,
    gaussian_divergences,
    run_equivalence_chain,
    run_risk_study,
    run_tv_decay,
    run_verify,
    schedule,
    whitening_matrix,
)
from lsequiv.rng import make_rng
from lsequiv.spectral import default_grid

DIV_PAIRS = []
_rng = make_rng(17, stream=70)
for _ in range(30):
    dim = int(_rng.integers(2, 6))
    m1 = _rng.standard_normal(dim)
    m2 = _rng.standard_normal(dim)
    a = _rng.standard_normal((dim, dim))
    b = _rng.standard_normal((dim, dim))
    DIV_PAIRS.append((m1, a @ a.T + dim * np.eye(dim), m2, b @ b.T + dim * np.eye(dim)))


def test_divergences_identical_vanish():
    cov = np.array([[2.0, 0.3], [0.3, 1.0]])
    d = gaussian_divergences(np.zeros(2), cov, np.zeros(2), cov)
    assert d.kl == 0.0
    assert d.hellinger_sq == 0.0
    assert d.tv_upper == 0.0


def test_divergences_mean_shift_closed_form():
    m = np.array([1.0, -0.5])
    d = gaussian_divergences(np.zeros(2), np.eye(2), m, np.eye(2))
    msq = float(m @ m)
    assert d.kl == pytest.approx(msq / 2.0, rel=1e-12)
    assert d.hellinger_sq == pytest.approx(1.0 - math.exp(-msq / 8.0), rel=1e-12)
    assert d.tv_upper == pytest.approx(math.sqrt(1.0 - math.exp(-msq / 2.0)), rel=1e-12)


@pytest.mark.parametrize("m1,c1,m2,c2", DIV_PAIRS)
def test_hellinger_never_exceeds_kl(m1, c1, m2, c2):
    d = gaussian_divergences(m1, c1, m2, c2)
    assert 0.0 <= d.hellinger_sq <= d.kl + 1e-12
    assert 0.0 <= d.tv_upper <= 1.0


def test_tv_upper_dominates_quadrature_tv():
    # 1-D shifted pair whose exact total variation is 2 Phi(1/2) - 1
    d = gaussian_divergences(np.zeros(1), np.eye(1), np.ones(1), np.eye(1))
    assert d.tv_upper >= 0.3829249225480262


def test_divergences_guards():
    with pytest.raises(PreconditionError):
        gaussian_divergences(np.zeros(2), np.eye(2), np.zeros(3), np.eye(3))
    with pytest.raises(SingularMatrixError):
        gaussian_divergences(np.zeros(2), np.zeros((2, 2)), np.zeros(2), np.eye(2))


SCHEDULE_CASES = [
    (64, 6, 8.707075251653993, 9, 5.804716834435996),
    (256, 6, 10.30828169461056, 11, 7.289055888640282),
    (1024, 6, 11.622653565090967, 12, 8.443662057669044),
]


@pytest.mark.parametrize("n,K,gamma,q,r", SCHEDULE_CASES)
def test_schedule_frozen_values(n, K, gamma, q, r):
    s = schedule(n)
    assert (s.k1, s.k2) == (1, 1)
    assert s.K == K
    assert s.gamma == pytest.approx(gamma, rel=1e-12)
    assert s.beta_sq == pytest.approx(gamma, rel=1e-12)
    assert s.beta == pytest.approx(math.sqrt(gamma), rel=1e-12)
    assert s.Q == q
    assert s.R == pytest.approx(r, rel=1e-12)


def test_schedule_window_override():
    s = schedule(1024, 0, 1)
    assert s.K == 2
    assert s.gamma == pytest.approx(2.0 * math.log(math.log(1024.0 + math.e**2)), rel=1e-12)


def test_condition_checker_flags_large_window_budget():
    checks = condition_checker(1024, sched=schedule(1024, 0, 1))
    by_id = {c.check_id: c for c in checks}
    assert sorted(by_id) == sorted(
        ["condition-" + key for key in DEFAULT_BUDGETS] + ["condition-admissible-radius"]
    )
    flagged = by_id["condition-k10-log-over-n"]
    assert not flagged.passed
    assert flagged.lhs == pytest.approx(math.log(1024.0), rel=1e-9)
    assert by_id["condition-admissible-radius"].passed
    assert sum(not c.passed for c in checks) == 1


def test_run_config_defaults_and_roundtrip():
    cfg = RunConfig()
    assert cfg.n_grid == (64, 128, 256)
    assert cfg.density_mean == 0.6
    back = RunConfig.from_json(cfg.to_json())
    assert back == cfg
    assert cfg.window(64) == schedule(64)


def test_run_config_validation():
    with pytest.raises(ConfigurationError):
        RunConfig(n_grid=())
    with pytest.raises(ConfigurationError):
        RunConfig(n_grid=(64, 32))
    with pytest.raises(ConfigurationError):
        RunConfig(n_grid=(4, 64))
    with pytest.raises(ConfigurationError):
        RunConfig(replicates=0)
    with pytest.raises(ConfigurationError):
        RunConfig(rho_star=1.5)
    with pytest.raises(ConfigurationError):
        RunConfig.from_json('{"n_grid": [64], "bogus": 1}')


def test_config_density_deterministic_and_in_span():
    cfg = RunConfig(n_grid=(32, 64))
    f = config_density(cfg)
    g = config_density(cfg)
    assert f.to_json() == g.to_json()
    f.require_membership()
    sched = cfg.window(32)
    assert f.k1 <= sched.k1 and f.k2 <= sched.k2
    assert f.mean_level() == pytest.approx(cfg.density_mean, rel=1e-12)


def test_whitening_matrix_constant_density_is_identity():
    grid = default_grid()
    basis = build_basis(32, 1, 1)
    ones = np.ones(grid.mesh[0].shape)
    w = whitening_matrix(ones, basis, 0.5, grid=grid)
    np.testing.assert_allclose(w, np.eye(32), atol=1e-12)


def test_run_verify_passes_and_serializes_stably():
    rep = run_verify(n=32, seed=0)
    assert rep.all_passed
    assert len(rep.entries) == 56
    rep2 = run_verify(n=32, seed=0)
    assert rep.to_json() == rep2.to_json()
    assert rep.to_csv() == rep2.to_csv()
    payload = json.loads(rep.to_json())
    assert payload["schema"] == "lsp-equiv/1"
    assert payload["all_pass"] is True
    assert all(e["pass"] for e in payload["checks"])


def test_equivalence_chain_row_layout():
    cfg = RunConfig(n_grid=(32, 64), replicates=5)
    header, rows = run_equivalence_chain(cfg)
    assert header == CHAIN_HEADER
    assert len(rows) == 2
    for row, n in zip(rows, (32, 64)):
        assert row[0] == n
        assert row[3] == 6
        assert row[-1] == ""  # no stage errors at these sizes
    # decreasing presmoothing residual along the grid
    assert rows[0][5] > rows[1][5]


def test_equivalence_chain_records_stage_errors():
    header, rows = run_equivalence_chain(RunConfig(n_grid=(8,), k1=0, k2=1, replicates=5))
    row = rows[0]
    assert row[header.index("tv")] is None
    assert row[-1] == "tv:RangeError"


def test_tv_decay_defaults_to_scalar_window():
    header, rows = run_tv_decay(RunConfig(n_grid=(16, 32)))
    assert header == TV_HEADER
    assert [r[0] for r in rows] == [16, 32]
    for row in rows:
        assert row[1] == 1
        assert row[2] == pytest.approx(1.0 / math.sqrt(2.0 * row[0]), rel=1e-12)
        assert row[5] is None  # runtimes stay off without the timings flag
    assert rows[0][3] > rows[1][3]


def test_tv_decay_rejects_wide_window():
    with pytest.raises(ConfigurationError):
        run_tv_decay(RunConfig(n_grid=(64,), k1=1, k2=0))


def test_risk_study_row_layout():
    header, rows = run_risk_study(RunConfig(n_grid=(16,), replicates=5))
    assert header == RISK_HEADER
    assert rows[0][:4] == [16, 6, 4, 5]
    assert rows[0][6] == (rows[0][4] <= rows[0][5])


def test_export_basis_csv_and_binary(tmp_path):
    out = tmp_path / "csvdump"
    manifest = export_basis(16, 0, 1, str(out), fmt="csv")
    assert manifest["n"] == 16
    assert manifest["count"] == 2  # window size; each index ships both families
    assert len(manifest["files"]) == 4
    names = {f["file"] for f in manifest["files"]}
    assert (out / "manifest.json").exists()
    for name in names:
        assert (out / name).exists()
    kinds = {f["kind"] for f in manifest["files"]}
    assert kinds == {"m", "mcheck"}

    out2 = tmp_path / "bindump"
    manifest2 = export_basis(16, 0, 1, str(out2), fmt="binary")
    basis = build_basis(16, 0, 1)
    entry = next(f for f in manifest2["files"] if f["kind"] == "m" and f["k"] == 0)
    raw = (out2 / entry["file"]).read_bytes()
    (n,) = struct.unpack("<Q", raw[:8])
    assert n == 16
    mat = np.frombuffer(raw[8:], dtype="<f8").reshape(16, 16)
    np.testing.assert_allclose(mat, basis.mats[0], atol=0)


# CLI behavior, exercised in process through the argv entry point


def test_cli_verify_deterministic(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["verify", "--n", "32", "--out", str(out1)]) == 0
    assert main(["verify", "--n", "32", "--out", str(out2)]) == 0
    assert (out1 / "verify_report.csv").read_bytes() == (out2 / "verify_report.csv").read_bytes()
    assert main(["verify", "--n", "32", "--format", "json", "--out", str(out1)]) == 0
    assert json.loads((out1 / "verify_report.json").read_text())["all_pass"] is True


def test_cli_chain_with_config(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(RunConfig(n_grid=(32, 64), replicates=5).to_json())
    assert main(["chain", "--config", str(cfg_path), "--out", str(tmp_path)]) == 0
    text = (tmp_path / "chain_study.csv").read_text()
    assert text.splitlines()[0] == ",".join(CHAIN_HEADER)


def test_cli_chain_exit_on_stage_error(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(RunConfig(n_grid=(8,), k1=0, k2=1, replicates=5).to_json())
    assert main(["chain", "--config", str(cfg_path), "--out", str(tmp_path)]) == 1


def test_cli_tvdecay_and_riskstudy(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(RunConfig(n_grid=(16, 32), replicates=5).to_json())
    assert main(["tvdecay", "--config", str(cfg_path), "--out", str(tmp_path)]) == 0
    assert (tmp_path / "tv_decay.csv").exists()
    risk_cfg = tmp_path / "risk.json"
    risk_cfg.write_text(RunConfig(n_grid=(16,), replicates=5).to_json())
    assert main(["riskstudy", "--config", str(risk_cfg), "--out", str(tmp_path)]) == 0
    assert (tmp_path / "risk_study.csv").exists()


def test_cli_conditions_flags_at_desk_scale(capsys):
    assert main(["conditions", "--n", "64"]) == 1
    out = capsys.readouterr().out
    assert "condition-k10-log-over-n" in out
    assert "FLAG" in out


def test_cli_export_basis(tmp_path):
    assert main(["export-basis", "--n", "16", "--k1", "0", "--k2", "1", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "manifest.json").exists()


def test_cli_bad_config_returns_one(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text('{"bogus": true}')
    assert main(["chain", "--config", str(cfg_path), "--out", str(tmp_path)]) == 1


def test_cli_unknown_flag_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["chain", "--bogus"])
    assert exc.value.code == 2

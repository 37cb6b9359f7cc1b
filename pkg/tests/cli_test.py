import io
import json
import math
from unittest.mock import patch

import pandas as pd
import pytest

from qcvol import analytic
from qcvol.cli import EXIT_OK, EXIT_USAGE, build_parser, main
from qcvol.commands.invariance import verdict
from qcvol.models import KsResult


def read_rows(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text), comment="#")


def read_footer(text: str) -> dict[str, str]:
    footer = {}
    for line in text.splitlines():
        if line.startswith("# "):
            key, value = line[2:].split(",", 1)
            footer[key] = value
    return footer


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    monkeypatch.delenv("QCVOL_SEED", raising=False)
    monkeypatch.delenv("QCVOL_CONFIG", raising=False)


@pytest.mark.asyncio
@pytest.mark.parametrize(
    "argv",
    [
        ["volume", "--n", "0"],
        ["invariance", "--rotations", "0"],
        ["push", "--r0", "1.5"],
        ["volume", "--seed", "-1"],
        ["density", "--which", "nope"],
        ["teleport"],
    ],
)
async def test_usage_errors(argv):
    assert await main(argv) == EXIT_USAGE


@pytest.mark.asyncio
async def test_unital_push_from_mixed_state_is_a_usage_error():
    assert await main(["push", "--kind", "unital", "--r0", "0", "--n", "200"]) == EXIT_USAGE


@pytest.mark.asyncio
async def test_too_few_samples_for_ks_is_a_usage_error():
    assert await main(["push", "--r0", "0.5", "--n", "50"]) == EXIT_USAGE


@pytest.mark.asyncio
async def test_density_eta(capsys):
    assert await main(["density", "--which", "eta", "--grid", "101"]) == EXIT_OK
    out = capsys.readouterr().out

    rows = read_rows(out)
    assert list(rows.columns) == ["x", "value"]
    assert len(rows) == 101
    assert rows["value"][50] == pytest.approx(20.0 / 11.0)
    assert float(read_footer(out)["integral"]) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.asyncio
async def test_density_va(capsys):
    assert await main(["density", "--which", "va", "--grid", "101"]) == EXIT_OK
    rows = read_rows(capsys.readouterr().out)

    assert rows["value"][50] == pytest.approx(math.pi**4 / 48.0)


@pytest.mark.asyncio
async def test_density_vaf_is_symmetric(capsys):
    assert await main(["density", "--which", "vaf", "--grid", "11"]) == EXIT_OK
    out = capsys.readouterr().out

    rows = read_rows(out)
    table = rows.pivot(index="a", columns="f", values="value").to_numpy()
    assert table == pytest.approx(table.T)
    assert table == pytest.approx(table[::-1, ::-1], rel=1e-9, abs=1e-12)
    footer = read_footer(out)
    assert float(footer["integral"]) == pytest.approx(float(footer["analytic"]), rel=1e-8)


@pytest.mark.asyncio
async def test_volume_json(capsys):
    argv = ["volume", "--n", "100000", "--seed", "0x2a", "--format", "json"]
    assert await main(argv) == EXIT_OK

    document = json.loads(capsys.readouterr().out)
    assert document["meta"]["seed"] == 42
    assert document["meta"]["n"] == 100_000
    assert document["meta"]["command"] == ["qcvol", *argv]
    assert document["summary"] == {"kind": "general"}
    assert document["rows"][0]["analytic"] == pytest.approx(analytic.VOL_GENERAL)


@pytest.mark.asyncio
async def test_sample_is_reproducible(capsys):
    argv = ["sample", "--kind", "unital", "--n", "5", "--seed", "9"]
    assert await main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert await main(argv) == EXIT_OK
    second = capsys.readouterr().out

    assert first == second
    assert first.splitlines()[0] == "a,b_re,b_im,c_re,c_im,d_re,d_im,e_re,e_im"
    assert len(read_rows(first)) == 5


@pytest.mark.asyncio
async def test_seed_from_environment(capsys, monkeypatch):
    assert await main(["sample", "--n", "3", "--seed", "77"]) == EXIT_OK
    explicit = capsys.readouterr().out

    monkeypatch.setenv("QCVOL_SEED", "77")
    assert await main(["sample", "--n", "3"]) == EXIT_OK
    assert capsys.readouterr().out == explicit


@pytest.mark.asyncio
async def test_unital_push_stays_inside_input_radius(capsys):
    code = await main(["push", "--kind", "unital", "--r0", "0.8", "--n", "2000", "--bins", "50"])
    out = capsys.readouterr().out

    assert code in (0, 1)
    rows = read_rows(out)
    assert (rows.loc[rows["r"] > 0.81, "empirical_density"] == 0.0).all()
    assert (rows.loc[rows["r"] > 0.81, "analytic_density"] == 0.0).all()
    footer = read_footer(out)
    assert float(footer["analytic_mean"]) == pytest.approx(analytic.UNITAL_SHRINK * 0.8)


@pytest.mark.asyncio
async def test_output_file(tmp_path, capsys):
    target = tmp_path / "volume.csv"
    assert await main(["volume", "--kind", "unital", "--n", "1000", "--out", str(target)]) == 0

    assert capsys.readouterr().out == ""
    rows = read_rows(target.read_text(encoding="utf-8"))
    assert rows["n"][0] == 1000


@pytest.mark.asyncio
async def test_iterate_reports_fixed_point(capsys):
    assert await main(["iterate", "--r0", "1", "--steps", "3", "--n", "500"]) == EXIT_OK
    out = capsys.readouterr().out

    assert list(read_rows(out)["step"]) == [1, 2, 3]
    assert float(read_footer(out)["fixed_point_radius"]) == pytest.approx(
        analytic.fixed_point_radius()
    )


@pytest.mark.asyncio
async def test_config_file_errors_are_usage_errors(tmp_path):
    config = tmp_path / "config.toml"
    config.write_text("[validation]\np_threshold = 2.0\n", encoding="utf-8")

    assert await main(["volume", "--n", "10", "--config", str(config)]) == EXIT_USAGE
    assert await main(["volume", "--n", "10", "--config", str(tmp_path / "none.toml")]) == 2


def test_distortion_flag_is_hidden():
    parser = build_parser()
    subparsers = parser._subparsers._group_actions[0].choices

    help_text = subparsers["invariance"].format_help()
    assert "--distort" not in help_text
    assert "--rotations" in help_text
    assert parser.parse_args(["invariance", "--distort", "0.8"]).distortion == 0.8


@pytest.mark.asyncio
async def test_iterate_uses_configured_quadrature(tmp_path, capsys):
    config = tmp_path / "config.toml"
    config.write_text("[quadrature]\nepsabs = 3e-9\nepsrel = 3e-9\nlimit = 80\n", encoding="utf-8")

    with patch("qcvol.analytic.integrate_1d", wraps=analytic.integrate_1d) as spy:
        argv = ["iterate", "--r0", "1", "--steps", "2", "--n", "200", "--config", str(config)]
        assert await main(argv) == EXIT_OK

    assert spy.called
    assert {call.kwargs["epsabs"] for call in spy.call_args_list} == {3e-9}
    assert {call.kwargs["limit"] for call in spy.call_args_list} == {80}
    footer = read_footer(capsys.readouterr().out)
    assert float(footer["fixed_point_radius"]) == pytest.approx(
        analytic.fixed_point_radius(), abs=1e-6
    )


@pytest.mark.parametrize("failing, passed", [(2, True), (3, False)])
def test_invariance_verdict_counts_failures(validation_config, failing, passed):
    results = [
        KsResult(d_statistic=0.05, p_value=0.001 if k < failing else 0.5, n=10_000)
        for k in range(40)
    ]

    assert verdict(results, validation_config) == (failing, passed)

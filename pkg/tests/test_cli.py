import json

import pytest

from semibox import __version__
from semibox.cli import EXIT_CAP, EXIT_INPUT, EXIT_OK, main
from semibox.library import left_zero, named_semigroup
from semibox.serialize import (
    canonical_json,
    partial_bijection_from_json,
    partial_bijection_to_json,
    partition_from_json,
    partition_to_json,
    semigroup_from_json,
    semigroup_to_json,
    transformation_from_json,
    transformation_to_json,
)

from conftest import p1, t1


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out) if out.strip().startswith("{") else out


# -- serialization round trips ----------------------------------------------


def test_transformation_json_round_trip():
    t = t1(2, 1, 3)
    data = transformation_to_json(t)
    assert data == {"degree": 3, "images": [2, 1, 3]}
    assert transformation_from_json(data) == t


def test_partial_bijection_json_uses_null():
    p = p1(2, None, 1)
    data = partial_bijection_to_json(p)
    assert data == {"degree": 3, "images": [2, None, 1]}
    assert partial_bijection_from_json(data) == p


def test_semigroup_json_round_trip():
    s = named_semigroup("I2")
    data = semigroup_to_json(s)
    assert data["size"] == 7 and "inverse" in data
    again = semigroup_from_json(json.loads(json.dumps(data)))
    assert again.table == s.table


def test_semigroup_json_rejects_bad_tables():
    with pytest.raises(ValueError):
        semigroup_from_json({"size": 2, "table": [[0, 1], [0, 0]]})
    with pytest.raises(ValueError):
        semigroup_from_json({"size": 3, "table": [[0, 0], [1, 1]]})


def test_partition_json_round_trip():
    from semibox import Partition

    p = Partition(4, (0, 0, 1, 2))
    data = partition_to_json(p)
    assert data["blocks"] == [[1, 2], [3], [4]]
    assert partition_from_json(data) == p


# -- commands ------------------------------------------------------------------


def test_eggbox_t3_json(capsys):
    code, rep = run_json(capsys, "eggbox", "--family", "T", "--n", "3")
    assert code == EXIT_OK
    assert rep["version"] == __version__
    shapes = [(len(b["r_keys"]), len(b["l_keys"])) for b in rep["result"]["boxes"]]
    assert shapes == [(1, 1), (3, 3), (1, 3)]
    assert rep["verification"]["ok"]


def test_eggbox_i2_json(capsys):
    code, rep = run_json(capsys, "eggbox", "--family", "I", "--n", "2")
    assert code == EXIT_OK
    assert rep["result"]["size"] == 7
    assert rep["result"]["d_class_count"] == 3


def test_eggbox_custom_table(tmp_path, capsys):
    path = tmp_path / "l2.json"
    path.write_text(json.dumps(semigroup_to_json(left_zero(2))))
    code, rep = run_json(
        capsys, "eggbox", "--family", "custom", "--table-file", str(path)
    )
    assert code == EXIT_OK
    assert rep["result"]["d_class_count"] == 1


def test_eggbox_ascii(capsys):
    code, out = run_cli(capsys, "eggbox", "--family", "T", "--n", "2", "--format", "ascii")
    assert code == EXIT_OK
    assert "rank=2" in out and "[*" in out


def test_eggbox_cap_exceeded(capsys):
    code, _ = run_cli(capsys, "eggbox", "--family", "T", "--n", "9")
    assert code == EXIT_CAP


def test_eggbox_dot_and_figure(tmp_path, capsys):
    dot = tmp_path / "gh.dot"
    fig = tmp_path / "eggbox.png"
    code, _ = run_json(
        capsys,
        "eggbox",
        "--family",
        "T",
        "--n",
        "3",
        "--dot",
        str(dot),
        "--figure",
        str(fig),
    )
    assert code == EXIT_OK
    text = dot.read_text()
    assert "graph gh" in text and "shape=box" in text
    assert fig.exists() and fig.stat().st_size > 0


def test_flower_command(tmp_path, capsys):
    inst = {"m": 6, "t": 2, "A": [[1, 2]], "B": [[3, 4]]}
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(inst))
    fig = tmp_path / "flower.png"
    code, rep = run_json(
        capsys, "flower", "--instance-file", str(path), "--figure", str(fig)
    )
    assert code == EXIT_OK
    assert rep["verification"]["ok"]
    assert rep["result"]["partition"]["parts"] == 2
    assert fig.exists() and fig.stat().st_size > 0


def test_flower_rejects_big_head(tmp_path, capsys):
    inst = {"m": 3, "t": 2, "A": [[1, 2], [1, 3]], "B": [[2, 3]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(inst))
    code, _ = run_cli(capsys, "flower", "--instance-file", str(path))
    assert code == EXIT_INPUT


def test_witness_command(capsys):
    code, rep = run_json(
        capsys,
        "witness",
        "--n",
        "3",
        "--r",
        "2",
        "--group",
        "1,2;1,3",
        "--nongroup",
        "2,3",
    )
    assert code == EXIT_OK
    assert rep["result"]["route"] == "dilation"
    assert rep["result"]["m"] == 28
    assert rep["verification"]["ok"]


def test_witness_rejects_overlap(capsys):
    code, _ = run_cli(
        capsys, "witness", "--n", "3", "--r", "2", "--group", "1,2", "--nongroup", "1,2"
    )
    assert code == EXIT_INPUT


def test_classify_command_by_name(capsys):
    code, rep = run_json(capsys, "classify", "--mode", "B", "--name", "L2")
    assert code == EXIT_OK
    assert rep["result"]["status"] == "non-member"

    code, rep = run_json(capsys, "classify", "--mode", "A", "--name", "I2")
    assert code == EXIT_OK
    assert rep["result"]["status"] == "member"

    code, rep = run_json(capsys, "classify", "--mode", "B", "--name", "N2")
    assert code == EXIT_OK
    assert rep["result"]["status"] == "unknown"


def test_classify_by_table_file(tmp_path, capsys):
    path = tmp_path / "i2.json"
    path.write_text(json.dumps(semigroup_to_json(named_semigroup("I2"))))
    code, rep = run_json(capsys, "classify", "--mode", "B", "--table-file", str(path))
    assert code == EXIT_OK
    assert rep["result"]["status"] == "member"


def test_classify_mode_a_needs_inverse(capsys):
    code, _ = run_cli(capsys, "classify", "--mode", "A", "--name", "L2")
    assert code == EXIT_INPUT


def test_chain_command_with_tracking(capsys):
    code, rep = run_json(
        capsys, "chain", "--kind", "T", "--n", "2", "--depth", "2", "--track", "1,1"
    )
    assert code == EXIT_OK
    assert rep["result"]["sizes"][:2] == ["4", "256"]
    assert len(rep["result"]["sizes"][2]) == 617
    assert rep["result"]["track"]["fix_counts"] == ["1", "1", "1"]
    assert rep["verification"]["ok"]


def test_chain_command_ideal_report_and_figure(tmp_path, capsys):
    fig = tmp_path / "chain.png"
    code, rep = run_json(
        capsys,
        "chain",
        "--kind",
        "T",
        "--n",
        "2",
        "--depth",
        "1",
        "--ideal-report",
        "--figure",
        str(fig),
    )
    assert code == EXIT_OK
    assert rep["result"]["ideal_report"]["stages"][1]["ideal_chain_length"] == "4"
    assert fig.exists() and fig.stat().st_size > 0


def test_chain_partial_track_token(capsys):
    code, rep = run_json(
        capsys, "chain", "--kind", "I", "--n", "2", "--depth", "1", "--track", "1,-"
    )
    assert code == EXIT_OK
    assert rep["result"]["track"]["origin"]["images"] == [1, None]
    assert rep["result"]["track"]["fix_counts"] == ["1", "3"]


def test_chain_depth_cap(capsys):
    code, _ = run_cli(capsys, "chain", "--kind", "I", "--n", "2", "--depth", "2")
    assert code == EXIT_CAP


def test_dilation_command(capsys):
    code, rep = run_json(capsys, "dilation", "--n", "3", "--r", "2")
    assert code == EXIT_OK
    assert rep["result"]["Z_size"] == 25
    assert rep["result"]["h_class_size"] == 6
    assert rep["result"]["verification_report"]["mode"] == "exhaustive"


def test_dualsearch_command(tmp_path, capsys):
    inst = {
        "m": 4,
        "t": 2,
        "require": [[[1, 2], [3, 4]]],
        "avoid": [[[1, 3], [2, 4]]],
    }
    path = tmp_path / "dual.json"
    path.write_text(json.dumps(inst))
    code, rep = run_json(capsys, "dualsearch", "--instance-file", str(path))
    assert code == EXIT_OK
    assert rep["result"]["found"] is not None
    assert rep["verification"]["ok"]


def test_amalgam_command(tmp_path, capsys):
    from semibox.library import cyclic_group, klein_four_group

    payload = {
        "base": semigroup_to_json(cyclic_group(2)),
        "arm1": semigroup_to_json(cyclic_group(4)),
        "arm2": semigroup_to_json(klein_four_group()),
        "f1": [0, 2],
        "f2": [0, 1],
        "inverse_mode": False,
    }
    path = tmp_path / "am.json"
    path.write_text(json.dumps(payload))
    code, rep = run_json(capsys, "amalgam", "--amalgam-file", str(path))
    assert code == EXIT_OK
    assert rep["result"]["found"] is True
    assert rep["verification"]["ok"]


def test_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, printed = run_cli(
        capsys, "eggbox", "--family", "T", "--n", "2", "--out", str(out)
    )
    assert code == EXIT_OK
    assert printed == ""
    json.loads(out.read_text())


def test_missing_file_is_input_error(capsys):
    code, _ = run_cli(capsys, "flower", "--instance-file", "/nonexistent.json")
    assert code == EXIT_INPUT


def test_version_embedded_everywhere(capsys):
    for argv in (
        ["eggbox", "--family", "T", "--n", "2"],
        ["classify", "--mode", "B", "--name", "Z2"],
        ["chain", "--kind", "T", "--n", "2", "--depth", "1"],
    ):
        _, rep = run_json(capsys, *argv)
        assert rep["version"] == __version__


@pytest.mark.parametrize(
    "argv",
    [
        ["eggbox", "--family", "T", "--n", "3"],
        ["eggbox", "--family", "I", "--n", "2", "--format", "ascii"],
        ["witness", "--n", "3", "--r", "2", "--group", "1,2", "--nongroup", "2,3"],
        ["classify", "--mode", "B", "--name", "T3"],
        ["chain", "--kind", "T", "--n", "2", "--depth", "2", "--track", "2,1"],
        ["dilation", "--n", "3", "--r", "2", "--seed", "7"],
    ],
)
def test_byte_reproducibility(argv, capsys):
    code1, out1 = run_cli(capsys, *argv)
    code2, out2 = run_cli(capsys, *argv)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2


def test_canonical_json_is_sorted_and_newline_terminated():
    text = canonical_json({"b": 1, "a": [2, 1]})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')


def test_failed_self_verification_exits_nonzero(monkeypatch, capsys):
    import semibox.cli as cli

    def broken(args):
        report = {
            "tool": "semibox",
            "version": __version__,
            "command": "classify",
            "config": {},
            "result": {},
            "verification": {"ok": False},
        }
        return report, None

    monkeypatch.setattr(cli, "cmd_classify", broken)
    code = cli.main(["classify", "--mode", "B", "--name", "Z2"])
    capsys.readouterr()
    assert code == cli.EXIT_VERIFY

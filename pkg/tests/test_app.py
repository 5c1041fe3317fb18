import json

import pytest

from app import main
from tests.conftest import CATALOGS

RUNNING = ["8,7,7,7,3,2", "7,7,4,4,4,4,4"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_member(capsys):
    code, out, _ = run(capsys, "check", "-r", "3", "2,1", "1,1,1", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["in_cone"] and payload["kostka_count"] == 2


def test_check_non_member(capsys):
    code, _, _ = run(capsys, "check", "-r", "2", "2,2", "3,1")
    assert code == 1


def test_missing_rank_is_usage_error(capsys):
    code, _, err = run(capsys, "ryser", *RUNNING)
    assert code == 2
    assert "--rank" in err


def test_bad_partition_is_usage_error(capsys):
    code, _, _ = run(capsys, "check", "-r", "3", "1,2", "1,1,1")
    assert code == 2


def test_ryser_json(capsys):
    code, out, _ = run(capsys, "ryser", "-r", "7", *RUNNING, "--format", "json", "--history")
    payload = json.loads(out)
    assert code == 0
    assert payload["mu_star"] == [0, 3, 0, 0, 0, 0, 4]
    assert len(payload["history"]) == 9
    assert payload["steps"][1]["kind"] == "ShortenAndDelete"


def test_ryser_matrices_of_small_pair(capsys):
    code, out, _ = run(capsys, "ryser", "-r", "4", "3,2,1", "2,2,1,1", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["matrix"] == [[1, 1, 0], [1, 0, 1], [1, 0, 0], [0, 1, 0]]
    assert payload["star"] == [[0, 1, -1], [0, 0, 1], [1, -1, 0], [0, 1, 0]]


@pytest.mark.parametrize("argv", [
    ("ryser", "-r", "7", *RUNNING, "--history"),
    ("kgr", "-r", "7", *RUNNING),
    ("basis", "-r", "3", "--fixtures", str(CATALOGS)),
    ("catalan", "--fuzz", "20", "--seed", "7"),
])
def test_json_output_is_repeatable(capsys, argv):
    first = run(capsys, *argv, "--format", "json")
    second = run(capsys, *argv, "--format", "json")
    assert first[0] == second[0]
    assert first[1] == second[1]


def test_kgr_dot_marks_witness(capsys):
    code, out, _ = run(capsys, "kgr", "-r", "7", *RUNNING, "--format", "dot")
    assert code == 0
    assert out.startswith("digraph kgr {")
    assert 'v6_2 [label="-1"' in out
    assert 'color="red"' in out


def test_dot_only_for_kgr(capsys):
    code, _, _ = run(capsys, "check", "-r", "3", "2,1", "1,1,1", "--format", "dot")
    assert code == 2


def test_reduce_small_pair(capsys):
    code, out, _ = run(capsys, "reduce", "-r", "4", "3,2,1", "2,2,1,1", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["fast"] is None
    assert payload["common"]["columns"] == [2]
    assert payload["reducible"] is True


def test_reduce_basis_element(capsys):
    code, out, _ = run(capsys, "reduce", "-r", "4", "4,4,4", "3,3,3,3", "--format", "json")
    assert code == 1
    assert json.loads(out)["reducible"] is False


def test_reduce_zero_pair_is_usage_error(capsys):
    code, out, err = run(capsys, "reduce", "-r", "2", "0", "0")
    assert code == 2
    assert out == ""
    assert "zero pair" in err


def test_basis_from_fixture(capsys):
    code, out, _ = run(capsys, "basis", "-r", "4", "--fixtures", str(CATALOGS), "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["count"] == payload["published_count"] == 19


def test_basis_reports_persisted_ranks(capsys):
    code, out, _ = run(capsys, "basis", "-r", "2", "--fixtures", str(CATALOGS), "--format", "json")
    persisted = json.loads(out)["persisted"]
    assert code == 0
    assert persisted["total_catalogs"] == 6
    assert persisted["ranks"] == {"1": 1, "2": 3, "3": 8, "4": 19, "5": 50, "6": 111}


def test_basis_recompute_diffs_fixture(capsys):
    code, out, _ = run(capsys, "basis", "-r", "3", "--fixtures", str(CATALOGS), "--recompute", "--format",
                       "json")
    assert code == 0
    assert json.loads(out)["diff"]["matched"]


def test_rays(capsys):
    code, out, _ = run(capsys, "rays", "-r", "4", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["count"] == payload["published_count"] == 14


def test_audit(capsys, tmp_path):
    code, out, _ = run(capsys, "audit", "-r", "2", "--fixtures", str(tmp_path), "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"]


@pytest.mark.parametrize("sequence, expected", [("1,-1,1,-1", 0), ("2,-1,-1", 1)])
def test_catalan(capsys, sequence, expected):
    code, _, _ = run(capsys, "catalan", sequence)
    assert code == expected


def test_catalan_invalid_sequence(capsys):
    code, _, _ = run(capsys, "catalan", "1,1")
    assert code == 2


def test_catalan_fuzz(capsys):
    code, out, _ = run(capsys, "catalan", "--fuzz", "50", "--max-length", "10", "--format", "json")
    assert code == 0
    assert json.loads(out)["violations"] == 0


@pytest.mark.parametrize("instance, expected", [("3,2,1 : 4", 0), ("2,2 : 3", 1), ("1,2 : 9", 1)])
def test_subsetsum(capsys, instance, expected):
    code, _, _ = run(capsys, "subsetsum", instance)
    assert code == expected


def test_lr_family(capsys):
    code, out, _ = run(capsys, "lr-family", "--k", "2", "--upto", "5", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["coefficient"] >= 1
    assert payload["growth"][-1]["exceeds_rank"]

import io as pyio
import json
import os
import shutil

import pytest

from nacoh import cli, groups, io
from nacoh.errors import InvalidInput

HERE = os.path.dirname(__file__)
SAMPLES = os.path.join(HERE, os.pardir, "samples")


def sample(name):
    return os.path.join(SAMPLES, name)


def run(*argv):
    out, err = pyio.StringIO(), pyio.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    return code, (json.loads(out) if out else None), err


def test_group_spec_round_trip():
    for G in (groups.cyclic(5), groups.symmetric(3), groups.unitriangular(3, 2)):
        H = io.group_from_spec(io.group_to_spec(G))
        assert H.order == G.order and (H.cayley == G.cayley).all()


def test_group_builders_and_tables():
    assert io.group_from_spec({"builder": "dihedral", "args": [4]}).order == 8
    t = io.group_from_spec({"domain": "table", "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]})
    assert t.order == 3 and t.cayley.tolist() == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    with pytest.raises(InvalidInput):
        io.group_from_spec({"builder": "monster"})
    with pytest.raises(InvalidInput):
        io.group_from_spec({"domain": "table", "table": [[0, 1], [1, 1]]})


def test_load_json_reports_position():
    with pytest.raises(InvalidInput, match=r"broken\.json:2:"):
        io.load_json(sample("broken.json"))
    with pytest.raises(InvalidInput):
        io.load_json(sample("missing.json"))


def test_extension_round_trip():
    ext = io.extension_from_spec(sample("c4_inversion_ext.json"))
    again = io.extension_from_spec(io.extension_to_spec(ext))
    assert again.Q.coeff.order == 4 and again.R.coeff.order == 2
    assert (again.Q.table == ext.Q.table).all()


def test_cli_h0_h1():
    code, out, _ = run_json("h1", "--group", sample("c2.json"), "--action", sample("c3_inversion.json"))
    assert code == 0 and out["z1_size"] == 3 and out["h1_classes"] == 1
    code, out, _ = run_json("h0", "--group", sample("c2.json"), "--action", sample("c3_inversion.json"))
    assert code == 0 and out["order"] == 1


def test_cli_h2_and_twist():
    code, out, _ = run_json("h2", "--group", sample("c2.json"), "--action", sample("c3_inversion.json"))
    assert code == 0 and out["class_count"] == out["brute_force_classes"] == 1
    code, out, _ = run_json("twist", "--group", sample("c2.json"), "--action", sample("c3_inversion.json"),
                            "--cocycle", "[0, 1]")
    assert code == 0 and out["theta_bijective"]


def test_cli_extension_commands():
    ext = sample("c4_inversion_ext.json")
    code, out, _ = run_json("seven-term", "--extension", ext)
    assert code == 0 and out["sizes"] == [2] * 7 and out["ok"]
    code, out, _ = run_json("cuboid", "--extension", ext)
    assert code == 0 and out["checks"] > 0 and not out["failures"]
    code, out, _ = run_json("five-lemma", "--extension", ext, "--subgroup", "[0]")
    assert code == 0 and out["verdicts"]


def test_cli_filtration_and_text_output():
    code, out, _ = run_json("filtration", "--matrix-group", sample("ut3f2.json"))
    assert code == 0 and out["chain_orders"] == [8, 2, 1]
    code, text, _ = run("filtration", "--matrix-group", sample("ut3f2.json"), "--out", "text")
    assert code == 0 and "chain_orders: [8, 2, 1]" in text


def test_cli_complements_and_inf_res():
    code, out, _ = run_json("complements", "--group", sample("c2.json"), "--action", sample("c3_inversion.json"))
    assert code == 0 and out["complement_count"] == 3 and out["class_count"] == 1
    code, out, _ = run_json("inf-res", "--group", sample("c2.json"), "--action", sample("c3_inversion.json"))
    assert code == 0 and out["ok"]


def test_exit_codes():
    code, _, err = run("h1", "--group", sample("c2.json"), "--action", sample("broken.json"))
    assert code == 2 and "broken.json:2:" in err
    assert run("h1")[0] == 2
    assert run("nonsense")[0] == 2
    code, _, err = run("h1", "--group", sample("c2.json"), "--action", sample("c3_inversion.json"),
                       "--budget-z1-budget", "1")
    assert code == 3 and "budget" in err


def test_budget_flags_do_not_leak():
    from nacoh.config import settings
    before = settings.z1_budget
    run("h1", "--group", sample("c2.json"), "--action", sample("c3_inversion.json"), "--budget-z1-budget", "1")
    assert settings.z1_budget == before


def test_verify_corpus_negative_controls_fail():
    code, out, _ = run_json("verify-corpus", io.corpus_dir("negative"))
    assert code == 1 and not out["ok"]
    assert sorted(out["failed"]) == ["neg_cuboid_h3", "neg_seven_term_delta"]
    by = {r["name"]: r for r in out["reports"]}
    assert not by["neg_seven_term_delta"]["suites"]["seven_term"]["ok"]
    assert by["neg_seven_term_delta"]["suites"]["cuboid"]["ok"]
    assert not by["neg_cuboid_h3"]["suites"]["cuboid"]["ok"]
    assert by["neg_cuboid_h3"]["suites"]["seven_term"]["ok"]


def test_verify_corpus_empty_directory_warns(tmp_path):
    code, out, err = run_json("verify-corpus", str(tmp_path))
    assert code == 0 and out["instances"] == 0 and "empty corpus" in err


def test_verify_corpus_reports_bad_instances(tmp_path):
    shutil.copy(os.path.join(io.corpus_dir("corpus"), "c2_inv_c3_r_full.json"), tmp_path)
    # a transposition does not generate a central subgroup of S3
    bad = {"name": "bad", "kind": "extension", "acting": {"builder": "cyclic", "args": [2]},
           "coeff": {"builder": "symmetric", "args": [3]}, "action": {"type": "trivial"},
           "kernel": {"generators": [[1, 0, 2]]}}
    (tmp_path / "bad.json").write_text(json.dumps(bad))
    code, out, _ = run_json("verify-corpus", str(tmp_path))
    assert code == 1 and out["failed"] == ["bad"] and "error" in out["reports"][0]
    assert out["reports"][1]["ok"]


def test_output_is_deterministic():
    args = ("seven-term", "--extension", sample("c4_inversion_ext.json"))
    assert run(*args)[1] == run(*args)[1]
    assert run(*args, "--seed", "7")[1] == run(*args)[1]

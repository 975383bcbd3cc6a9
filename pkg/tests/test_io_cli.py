import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from divclust import load_instance, save_instance
from divclust.cli import Config, canonical_report, format_report, main, run
from divclust.errors import MetricViolation, ParseError, SchemaError
from divclust.generators import generate, planted_groups, vertex_cover_hard
from divclust.instance import check_div_r_sat
from divclust.io import dumps_instance, instance_from_dict

from conftest import make_e1

GOLDEN = Path(__file__).parent / "golden"
E1_DOC = {
    "k": 2,
    "objective": "median",
    "points": [[0], [1], [2], [3], [4]],
    "groups": [[0, 1], [3, 4]],
    "requirements": [1, 1],
}


@pytest.fixture
def e1_file(tmp_path):
    path = tmp_path / "e1.json"
    path.write_text(json.dumps(E1_DOC))
    return path


def test_json_roundtrip(tmp_path, e1_file):
    inst = load_instance(e1_file)
    assert inst.t == 2 and inst.k == 2
    out = tmp_path / "again.json"
    save_instance(inst, out)
    again = load_instance(out)
    assert np.array_equal(again.metric.entries, inst.metric.entries)
    assert again.groups == inst.groups and again.requirements == inst.requirements
    assert dumps_instance(again) == dumps_instance(inst)


def test_asymmetric_matrix_names_pair():
    doc = dict(E1_DOC)
    del doc["points"]
    d = np.abs(np.subtract.outer(np.arange(5.0), np.arange(5.0)))
    d[0, 1] = 2.0
    doc["distances"] = d.tolist()
    with pytest.raises(MetricViolation) as err:
        instance_from_dict(doc)
    assert set(err.value.witness) == {0, 1}


@pytest.mark.parametrize("field", ["k", "groups", "requirements"])
def test_missing_fields(field):
    doc = {k: v for k, v in E1_DOC.items() if k != field}
    with pytest.raises(SchemaError) as err:
        instance_from_dict(doc)
    assert err.value.field == field


def test_csv_points(tmp_path):
    path = tmp_path / "pts.csv"
    path.write_text(
        "id,x1,is_client,is_facility,groups\n"
        "a,0,1,1,0\nb,1,1,1,0\nc,2,1,1,\nd,3,1,1,1\ne,4,1,1,1\n"
    )
    inst = load_instance(path, "csv-points", k=2, requirements=(1, 1))
    assert inst.groups == make_e1().groups
    assert np.allclose(inst.metric.entries, make_e1().metric.entries)
    dup = tmp_path / "dup.csv"
    dup.write_text("id,x1,is_client,is_facility,groups\na,0,1,1,0\na,1,1,1,\n")
    with pytest.raises(SchemaError):
        load_instance(dup, "csv-points", k=1, requirements=(0,))


def test_parse_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        load_instance(bad)


def test_generators():
    tri = vertex_cover_hard(3, k=2, edges=[(0, 1), (1, 2), (0, 2)])
    assert len(tri.groups) == 3 and all(len(g) == 2 for g in tri.groups)
    assert check_div_r_sat(tri, {0, 1})
    assert tri.metric.entries[0, 1] == 1.0
    plain = planted_groups(20, k=3, t=1, seed=2)
    assert plain.t == 1 and plain.groups[0] == frozenset(range(20))
    a = dumps_instance(generate("euclidean-random", {"n_points": 8}, seed=5))
    b = dumps_instance(generate("euclidean-random", {"n_points": 8}, seed=5))
    assert a == b


def _run(path, **kw):
    report, code = run(Config(instance=str(path), **kw))
    return report, code


def test_run_e1_supplier_exact(e1_file):
    report, code = _run(e1_file, objective="supplier", exact=True, threads=1)
    assert code == 0
    assert report["ratio"] == 1.0 and report["cost"] == 1.0 and report["feasible"]
    assert report["solution"] == [0, 3]


def test_exit_codes(tmp_path, e1_file, monkeypatch):
    infeasible = dict(E1_DOC, requirements=[2, 2])
    p = tmp_path / "inf.json"
    p.write_text(json.dumps(infeasible))
    report, code = _run(p)
    assert code == 3 and report["status"] == "Infeasible"
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert _run(bad)[1] == 2
    assert _run(tmp_path / "missing.json")[1] == 2
    monkeypatch.setenv("DIVCLUST_CAP", "1")
    report, code = _run(e1_file, exact=True)
    assert code == 4 and report["status"] == "CapExceeded"


def test_algorithm_objective_mismatch(e1_file):
    assert _run(e1_file, objective="supplier", algorithm="fpt-submodular")[1] == 2


def test_threads_determinism(e1_file, tmp_path):
    inst_path = tmp_path / "r.json"
    save_instance(generate("euclidean-random", {"n_points": 10, "k": 3, "t": 2}, seed=3), inst_path)
    texts = {
        canonical_report(format_report(_run(inst_path, threads=t)[0])) for t in (1, 4, 8)
    }
    assert len(texts) == 1


def test_golden_report(e1_file, capsys):
    cfg_args = ["--instance", str(e1_file), "--objective", "supplier", "--exact", "--threads", "2"]
    assert main(cfg_args) == 0
    text = canonical_report(capsys.readouterr().out)
    text = text.replace(json.dumps(str(e1_file)), '"E1"')
    golden = GOLDEN / "e1_supplier.txt"
    assert text == golden.read_text()


def test_generate_subcommand(tmp_path):
    out = tmp_path / "vc.json"
    assert main(["generate", "--kind", "vertex-cover-hard", "--seed", "1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["validate"] is False
    inst = load_instance(out)
    assert all(len(g) == 2 for g in inst.groups)


def test_module_entry_point(e1_file):
    proc = subprocess.run(
        [sys.executable, "-m", "divclust", "--instance", str(e1_file), "--threads", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "status=\"ok\"" in proc.stdout

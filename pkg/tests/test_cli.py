from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ssclutter.cli import main
from ssclutter.core import Labeling
from ssclutter.graphs import edge_complex
from ssclutter.formats import parse
from ssclutter.shelling import order_from_facets, verify_strong_order


@pytest.fixture
def files(tmp_path):
    data = {
        "c4.edges": "1 2\n2 3\n3 4\n1 4\n",
        "2k2.edges": "1 3\n2 4\n",
        "l5.facets": "1 2\n2 3\n3 4\n4 5\n",
        "l4.facets": "1 2\n2 3\n3 4\n",
        "bad.facets": "1 2\n1 2 3\n",
        "t2.tree": "1 2\n2 3\n3 4\n",
        "k43.clutter": "1 2 3\n1 2 4\n1 3 4\n2 3 4\n",
        "p3.clutter": "1 2\n2 3\n",
        "c6.edges": "1 2\n2 3\n3 4\n4 5\n5 6\n1 6\n",
    }
    for name, text in data.items():
        (tmp_path / name).write_text(text)
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_ess_on_c4(files, capsys):
    code, v = run_json(capsys, "ess", "--input", str(files / "c4.edges"))
    assert code == 0 and v["holds"] is True and v["predicate"] == "ess"
    assert len(v["certificate"]) == 4
    g = parse(files / "c4.edges", "edges")
    order = order_from_facets(edge_complex(g), v["certificate"])
    assert verify_strong_order(order.complex, order)
    assert set(v) == {"predicate", "holds", "certificate", "witness", "ms"}


def test_ess_failure_reports_complement_cycle(files, capsys):
    code, v = run_json(capsys, "ess", "--input", str(files / "2k2.edges"))
    assert code == 1 and v["holds"] is False
    assert v["witness"]["complement_chordless_cycle"] == ["1", "2", "3", "4"]


def test_chordal_complement(files, capsys):
    code, v = run_json(capsys, "chordal", "--input", str(files / "c4.edges"), "--complement")
    assert code == 0 and v["holds"] is True
    code, v = run_json(capsys, "chordal", "--input", str(files / "c4.edges"))
    assert code == 1 and v["witness"]["chordless_cycle"] == ["1", "2", "3", "4"]


def test_ss_and_shellable(files, capsys):
    code, v = run_json(capsys, "ss", "--input", str(files / "l4.facets"))
    assert code == 0 and v["certificate"] == [["1", "2"], ["2", "3"], ["3", "4"]]
    code, v = run_json(capsys, "ss", "--input", str(files / "l5.facets"))
    assert code == 1 and v["witness"] == "facet set is not geodesic"
    code, v = run_json(capsys, "shellable", "--input", str(files / "l5.facets"))
    assert code == 0


def test_parse_error_exits_2(files, capsys):
    code, _, err = run(capsys, "ss", "--input", str(files / "bad.facets"))
    assert code == 2 and "line 2" in err


def test_missing_file_exits_2(files, capsys):
    code, _, err = run(capsys, "ss", "--input", str(files / "nope.facets"))
    assert code == 2 and err.startswith("error:")


def test_clutter_commands(files, capsys):
    assert run_json(capsys, "wchordal", "--input", str(files / "k43.clutter"))[0] == 0
    assert run_json(capsys, "echordal", "--input", str(files / "k43.clutter"))[0] == 0
    code, v = run_json(capsys, "dual", "--input", str(files / "p3.clutter"))
    assert code == 0 and v["certificate"] == "x2, x1*x3"
    code, v = run_json(capsys, "dual", "--input", str(files / "p3.clutter"), "--d", "2")
    assert code == 0 and v["certificate"]["d_nonedges"] == [["1", "3"]]
    code, v = run_json(capsys, "linquot", "--input", str(files / "p3.clutter"))
    assert code == 0 and v["certificate"] == ["x1*x2", "x2*x3"]


def test_tree_and_bipartite_commands(files, capsys):
    code, v = run_json(capsys, "generic-graph", "--input", str(files / "t2.tree"))
    assert code == 0 and v["certificate"]["matrix"][1] == ["0", "-x_{2,3}", "x_{3,2}", "0"]
    code, v = run_json(capsys, "generic-graph", "--input", str(files / "t2.tree"), "--report")
    assert code == 0 and v["certificate"]["ok"] is True
    code, v = run_json(capsys, "decompose", "--input", str(files / "c4.edges"))
    assert code == 0 and v["certificate"]["d"] == [1, 1]
    assert run_json(capsys, "ferrers", "--input", str(files / "c4.edges"))[0] == 0
    code, v = run_json(capsys, "ferrers", "--input", str(files / "c6.edges"))
    assert code == 1 and v["holds"] is False


def test_dot_and_text_formats(files, capsys):
    code, out, _ = run(capsys, "ess", "--input", str(files / "c4.edges"), "--format", "dot")
    assert code == 0 and out.startswith("graph G {") and 'label="4"' in out
    code, out, _ = run(capsys, "ess", "--input", str(files / "c4.edges"))
    assert out.startswith("ess: yes")
    code, _, err = run(capsys, "echordal", "--input", str(files / "k43.clutter"), "--format", "dot")
    assert code == 2 and "no DOT output" in err


def test_suite_command(capsys):
    code, v = run_json(capsys, "suite", "lpath")
    assert code == 0 and v["certificate"]["failures"] == 0


def test_usage_errors_exit_nonzero():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "ssclutter.cli", "ess", "--input", str(files / "c4.edges"), "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["holds"] is True


def test_labels_survive_in_certificates(tmp_path, capsys):
    p = tmp_path / "named.edges"
    p.write_text("alpha beta\nbeta gamma\ngamma delta\nalpha delta\n")
    code, v = run_json(capsys, "ess", "--input", str(p))
    assert code == 0
    used = {x for e in v["certificate"] for x in e}
    assert used == set(Labeling.of(["alpha", "beta", "gamma", "delta"]).labels)

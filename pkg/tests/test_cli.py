"""Command-line surface: formats, exit codes, determinism."""

import io
import json
import subprocess
import sys

import jsonschema

from graphck.cli import run

from util import CORPUS_DIR, DOCS_DIR, REPO


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


E4 = str(CORPUS_DIR / "e4.json")
E1 = str(CORPUS_DIR / "e1.json")


def schema(name):
    return json.loads((DOCS_DIR / f"{name}.schema.json").read_text())


def test_analyze_json(corpus):
    code, out, err = invoke("analyze", E1, "--format", "json")
    assert code == 0 and err == ""
    obj = json.loads(out)
    assert obj["residually_aperiodic"] is True
    jsonschema.validate(obj, schema("report"))


def test_analyze_rejects_dot():
    code, out, err = invoke("analyze", E1, "--format", "dot")
    assert code == 1 and "format" in err


def test_lattice_formats(corpus):
    code, out, _ = invoke("lattice", E4, "--format", "json")
    assert code == 0
    obj = json.loads(out)
    jsonschema.validate(obj, schema("lattice"))
    assert len(obj["pairs"]) == 4
    code, out, _ = invoke("lattice", E4, "--format", "dot")
    assert code == 0 and out.count("->") == 3
    code, out, _ = invoke("lattice", E4)
    assert code == 0 and "admissible pairs: 4" in out


def test_spectrum_formats(corpus):
    code, out, _ = invoke("spectrum", E4, "--format", "dot")
    assert code == 0
    assert out.count('"') % 2 == 0 and out.count("->") == 2  # 3-node chain
    code, out, _ = invoke("spectrum", E4, "--format", "json")
    obj = json.loads(out)
    jsonschema.validate(obj, schema("spectrum"))
    assert obj["status"] == "Primitive" and len(obj["points"]) == 3


def test_quotient_selector(tmp_path, corpus):
    code, out, _ = invoke("quotient", E4, "--pair", "H=w;B=v")
    assert code == 0
    obj = json.loads(out)
    assert obj["vertices"] == ["v"] and len(obj["edges"]) == 2
    # edgelist input produces edgelist output
    el = tmp_path / "e4.edges"
    el.write_text("vertex v\nvertex w\nv v 1\nv v 1\nw v omega\n")
    code, out, _ = invoke("quotient", str(el), "--pair", "H=w;B=v")
    assert code == 0 and out.splitlines() == ["vertex v", "v v 1", "v v 1"]
    # empty selector picks the bottom pair
    code, out, _ = invoke("quotient", E4, "--pair", "H=;B=")
    assert code == 0 and json.loads(out)["vertices"] == ["v", "w"]


def test_quotient_selector_errors():
    code, _, err = invoke("quotient", E4, "--pair", "H=w")
    assert code == 1 and "selector" in err
    code, _, err = invoke("quotient", E4, "--pair", "H=zz;B=")
    assert code == 1 and "unknown vertex" in err
    code, _, err = invoke("quotient", E4, "--pair", "H=;B=v")
    assert code == 1 and "inadmissible" in err


def test_parse_error_exit_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["v"], "edges": [{"src":"v","rng":"x","mult":1}]}')
    code, out, err = invoke("analyze", str(bad))
    assert code == 1 and out == "" and "dangling endpoint" in err
    code, _, err = invoke("analyze", str(tmp_path / "missing.json"))
    assert code == 1 and "cannot read" in err


def test_limit_exit_2(tmp_path):
    big = tmp_path / "big.json"
    big.write_text(json.dumps({"vertices": [f"v{i}" for i in range(17)], "edges": []}))
    code, _, err = invoke("lattice", str(big))
    assert code == 2 and "--limit" in err
    code, _, _ = invoke("spectrum", str(big), "--limit", "17")
    assert code == 0
    code, _, err = invoke("analyze", str(big), "--limit", "0")
    assert code == 1


def make_action(tmp_path):
    path = tmp_path / "action.json"
    path.write_text(
        json.dumps(
            {
                "points": ["1", "2", "3"],
                "specialization": [],
                "group": "F1",
                "generators": [{"name": "g", "map": [["1", "2"], ["2", "3"]]}],
            }
        )
    )
    return str(path)


def test_paction_queries(tmp_path):
    path = make_action(tmp_path)
    sch = schema("paction")

    code, out, _ = invoke("paction", path, "orbit", "--point", "1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    jsonschema.validate(obj, sch)
    assert obj["set"] == ["1", "2", "3"]

    code, out, _ = invoke("paction", path, "element_map", "--word", "g g", "--format", "json")
    obj = json.loads(out)
    jsonschema.validate(obj, sch)
    assert obj["map"] == [["1", "3"]]

    code, out, _ = invoke("paction", path, "is_topologically_free")
    assert code == 0 and out == "is_topologically_free: yes\n"

    code, out, _ = invoke("paction", path, "quasi_orbit_space", "--format", "json")
    obj = json.loads(out)
    jsonschema.validate(obj, sch)
    assert obj["classes"] == [["1", "2", "3"]]

    code, out, _ = invoke(
        "paction", path, "decide_G_infinite", "--set", "1,2", "--format", "json"
    )
    obj = json.loads(out)
    jsonschema.validate(obj, sch)
    assert obj["infinite"] is False and obj["proof"]["kind"] == "finite_counting"

    code, out, _ = invoke("paction", path, "invariant_subsets", "--format", "json")
    jsonschema.validate(json.loads(out), sch)


def test_paction_witness_check(tmp_path):
    path = make_action(tmp_path)
    wit = tmp_path / "w.json"
    wit.write_text(
        json.dumps(
            {
                "V": ["1", "2", "3"],
                "parts": [
                    {"set": ["1", "2", "3"], "word": ""},
                    {"set": ["1", "2", "3"], "word": ""},
                ],
                "split": 1,
            }
        )
    )
    code, out, _ = invoke(
        "paction", path, "check_paradoxical_witness", "--witness", str(wit), "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    jsonschema.validate(obj, schema("paction"))
    assert obj["valid"] is False and obj["violation"]["clause"] == "images_overlap"

    code, _, err = invoke("paction", path, "orbit")
    assert code == 1 and "--point" in err

    # a non-discrete space: {b} is not open in the two-point chain
    chain = tmp_path / "chain.json"
    chain.write_text(
        json.dumps(
            {
                "points": ["a", "b"],
                "specialization": [["a", "b"]],
                "group": "F0",
                "generators": [],
            }
        )
    )
    code, _, err = invoke("paction", str(chain), "decide_G_infinite", "--set", "b")
    assert code == 1 and "not open" in err


def test_input_schemas_accept_corpus_and_action(tmp_path):
    for name in ("e1", "e4", "e7"):
        obj = json.loads((CORPUS_DIR / f"{name}.json").read_text())
        jsonschema.validate(obj, schema("graph"))
    jsonschema.validate(json.loads(open(make_action(tmp_path)).read()), schema("action"))


# -- dot well-formedness -------------------------------------------------------------


def tokenize_dot(text):
    """Split the digraph body into statements, honoring quoted strings."""
    assert text.startswith("digraph ")
    body = text[text.index("{") + 1 : text.rindex("}")]
    statements, current, quoted = [], [], False
    for ch in body:
        if ch == '"':
            quoted = not quoted
            current.append(ch)
        elif ch == ";" and not quoted:
            stmt = "".join(current).strip()
            if stmt:
                statements.append(stmt)
            current = []
        else:
            current.append(ch)
    assert not quoted and not "".join(current).strip()
    return statements


def test_dot_outputs_parse(corpus):
    for target in ("lattice", "spectrum"):
        for name in ("e1", "e2", "e4", "e5"):
            code, out, _ = invoke(target, str(CORPUS_DIR / f"{name}.json"), "--format", "dot")
            assert code == 0
            for stmt in tokenize_dot(out):
                if stmt == "rankdir=BT":
                    continue
                chunks = stmt.split(" -> ")
                assert 1 <= len(chunks) <= 2
                for c in chunks:
                    assert c.startswith('"') and c.endswith('"')


# -- determinism (smoke; the full matrix runs in the acceptance suite) ------------------


def test_repeat_invocations_identical():
    a = invoke("analyze", E4, "--format", "json")
    b = invoke("analyze", E4, "--format", "json")
    assert a == b


def test_subprocess_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "graphck", "analyze", E1, "--format", "json"],
        capture_output=True,
        text=True,
        cwd=str(REPO),
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["aperiodic"] is True

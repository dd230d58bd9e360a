import io
import json

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from nonformal.cli import run

X_TEXT = """space X {
  sphere a1 : 2
  sphere a2 : 2
  sphere a3 : 2
  cell e5 = [a1,[a2,a3]]
}
"""

GEOM = """complex B
dim 2
v 0 0
v 1 0
v 0 1
s 0 1 2
complex A
s 0 1
s 0 2
complex Y
dim 1
v 1
v 2
s 0 1
map 0->0
map 1->1
map 2->1
"""


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def xfile(tmp_path):
    p = tmp_path / "x.space"
    p.write_text(X_TEXT)
    return str(p)


def test_massey(xfile):
    code, out, _ = call("massey", xfile, "a1", "a2", "a3", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["degree"] == 5 and d["indeterminacy_dim"] == 0 and not d["zero_coset"]
    assert d["canonical"] in (["1/1"], ["-1/1"])
    code, out, _ = call("massey", xfile, "g1", "g2", "g3")
    assert code == 0 and "contains zero: no" in out


def test_massey_undefined(tmp_path):
    p = tmp_path / "t.space"
    p.write_text("space T { sphere a : 2 sphere b : 2 cell e4 = [a,b] }")
    code, _, err = call("massey", str(p), "a", "b", "a")
    assert code == 1 and err


def test_betti_and_cup(xfile):
    code, out, _ = call("betti", xfile, "--json")
    assert json.loads(out)["betti"] == [1, 0, 3, 0, 0, 1]
    code, out, _ = call("cup", xfile, "a1", "a2", "--json")
    assert code == 0


def test_rank_and_scan(xfile):
    code, out, _ = call("rank", xfile, "a1,a2,a3", "--json")
    assert code == 0 and json.loads(out)["rank"] == 1
    code, out, _ = call("scan", xfile, "--json")
    assert code == 0 and json.loads(out)


def test_plan():
    code, _, err = call("plan", "--k", "2", "--dim", "5")
    assert code == 1 and "formal" in err
    code, out, _ = call("plan", "--k", "2", "--dim", "7", "--json")
    assert code == 0 and json.loads(out)["ambient"] == 8


def test_excluded():
    code, out, _ = call("excluded", "--k", "2", "--mode", "full", "--json")
    assert code == 0 and json.loads(out)["excluded"] == [8, 9, 10, 11]
    code, out, _ = call("excluded", "--k", "2", "--mode", "first")
    assert code == 0 and "9" in out and "10" in out


def test_boundary():
    code, out, _ = call("boundary", "--betti", "1,0,3,0,0,1", "--ambient", "8", "--k", "2", "--json")
    d = json.loads(out)
    assert d["betti"] == [1, 0, 4, 0, 0, 4, 0, 1]
    assert d["diagnostics"]["injective_top"]["holds"] is True
    assert call("boundary", "--betti", "1,x", "--ambient", "8")[0] == 2


def test_json_deterministic(xfile):
    a = call("massey", xfile, "a1", "a2", "a3", "--json")
    b = call("massey", xfile, "a1", "a2", "a3", "--json")
    assert a == b
    assert a[1] == json.dumps(json.loads(a[1]), sort_keys=True) + "\n"


def test_exit_code_partition(xfile, tmp_path):
    assert call("betti", xfile)[0] == 0
    assert call("plan", "--k", "2", "--dim", "6")[0] == 1
    bad = tmp_path / "bad.space"
    bad.write_text(X_TEXT.replace("e5", "e4"))
    code, _, err = call("betti", str(bad))
    assert code == 2 and "line 5" in err
    assert call("betti", str(tmp_path / "missing"))[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("massey", xfile, "a1", "a2", "zz")[0] == 2


def test_embed_build_and_check(tmp_path):
    g = tmp_path / "in.geom"
    g.write_text(GEOM)
    out = tmp_path / "out.geom"
    code, _, _ = call("embed-build", str(g), "--out", str(out))
    assert code == 0 and out.exists()
    code, stdout, _ = call("embed-check", str(out), "--json")
    assert code == 0 and json.loads(stdout)["embedded"] is True
    cross = tmp_path / "cross.geom"
    cross.write_text("dim 2\nv 0 0\nv 2 2\nv 0 2\nv 2 0\ns 0 1\ns 2 3\n")
    code, stdout, _ = call("embed-check", str(cross), "--json")
    assert code == 1 and json.loads(stdout)["embedded"] is False
    notradial = tmp_path / "nr.geom"
    notradial.write_text(GEOM.replace("v 0 0\n", "v 3 0\n", 1).replace("v 0 1\n", "v 4 0\n", 1)
                         .replace("s 0 1 2\n", "s 0 1\n").replace("s 0 2\n", "").replace("map 2->1\n", ""))
    assert call("embed-build", str(notradial), "--out", str(out))[0] == 1


@settings(max_examples=60, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.text(alphabet="space{}sphercl:=[],ab12 \n#", max_size=50))
def test_dsl_fuzz_never_crashes(tmp_path, text):
    p = tmp_path / "fuzz.space"
    p.write_text(text)
    code, _, _ = call("betti", str(p))
    assert code in (0, 2)

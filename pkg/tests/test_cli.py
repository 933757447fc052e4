import io
import subprocess
import sys

import pytest

from sepcodes.cli import main

THREE = "q=2 n=2\n0 0\n0 1\n1 0\n"
FOUR = THREE + "1 1\n"


def call(argv, tmp_path=None, text=None):
    if text is not None:
        path = tmp_path / "code.txt"
        path.write_text(text)
        argv = [a if a != "@" else str(path) for a in argv]
    out = io.StringIO()
    rc = main(argv, out=out)
    return rc, out.getvalue()


def test_verify(tmp_path):
    assert call(["verify", "--property", "sep2", "--input", "@"], tmp_path, THREE) == (0, "true\n")
    rc, out = call(["verify", "--property", "b2", "--input", "@"], tmp_path, FOUR)
    assert rc == 1
    assert out.splitlines() == ["false", "witness: 0 0 | 1 1", "witness: 0 1 | 1 0"]


def test_verify_bad_file(tmp_path, capsys):
    rc, _ = call(["verify", "--property", "sep2", "--input", "@"], tmp_path, "q=2 n=2\n0 3\n")
    assert rc == 1
    assert capsys.readouterr().err.startswith("error: ")
    rc, _ = call(["verify", "--property", "sep2", "--input", str(tmp_path / "missing")])
    assert rc == 1


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--property", "sep7x", "--input", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main([])


def test_search():
    rc, out = call(["search", "--q", "2", "--n", "2", "--property", "b2"])
    assert rc == 0
    assert out == "q=2 n=2\n0 0\n0 1\n1 0\nmax_size=3 nodes=12 complete=true\n"
    rc, out = call(["search", "--q", "2", "--n", "2", "--property", "b2", "--table"])
    assert out.splitlines() == [
        "n,max_size,rate,bound,exceeds_bound,complete",
        "1,2,1,0.6,true,true",
        "2,3,0.792481250361,0.6,true,true",
    ]


def test_search_guard():
    rc, _ = call(["search", "--q", "2", "--n", "30", "--property", "b2"])
    assert rc == 1


def test_bounds(tmp_path):
    rc, out = call(["bounds", "--q-min", "2", "--q-max", "3"])
    assert rc == 0 and out.splitlines()[:2] == ["q,rate_sep2,rate_b2,separable_general_t2,dyachkov_t2", "2,0.6,0.6,1,1"]
    dest = tmp_path / "b.csv"
    assert call(["bounds", "--q-min", "2", "--q-max", "3", "--out", str(dest), "--no-header"])[0] == 0
    assert dest.read_bytes().startswith(b"2,0.6,0.6,1,1\n")
    assert call(["bounds", "--q-min", "3", "--q-max", "2"])[0] == 1


def test_prove_chain(tmp_path):
    rc, out = call(["prove-chain", "--input", "@", "--e", "1"], tmp_path, THREE)
    assert rc == 0 and "result: all steps pass" in out and "pass=true" in out
    rc, _ = call(["prove-chain", "--input", "@"], tmp_path, FOUR)
    assert rc == 1
    rc, out = call(["prove-chain", "--input", "@", "--variant", "b2diff", "--e", "auto"], tmp_path, THREE)
    assert rc == 0 and "variant=b2diff" in out


def test_entropy():
    assert call(["entropy", "--q", "2"]) == (0, "1.5\n")
    rc, out = call(["entropy", "--q", "3", "--mode", "numeric", "--variant", "b2diff"])
    assert rc == 0 and abs(float(out) - 2.25162916739) < 1e-9


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sepcodes", "verify", "--property", "sep2", "--input", "-"],
        input=THREE, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "true\n"

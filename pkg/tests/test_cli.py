from __future__ import annotations

import subprocess
import sys

import pytest

from framix.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariant_jones(capsys):
    code, out, _ = run(capsys, "invariant", "--kind", "jones", "--braid", "B2 s1 s1 s1")
    assert code == 0 and out == "q^2 + q^6 - q^8\n"


def test_invariant_link_and_latex(capsys):
    code, out, _ = run(capsys, "invariant", "--kind", "jones", "--link", "figure8", "--output", "latex")
    assert code == 0 and out == "q^{-4} - q^{-2} + 1 - q^{2} + q^{4}\n"
    code, out, _ = run(capsys, "invariant", "--kind", "theta_d", "--d", "2", "--link", "hopf")
    assert code == 0 and "s" in out


def test_invariant_framed(capsys):
    code, out, _ = run(capsys, "invariant", "--kind", "phi_dD", "--d", "3", "--D", "1",
                       "--braid", "B2 d=3 t1 s1 s1")
    assert code == 0 and "zeta" in out
    code, out, _ = run(capsys, "invariant", "--kind", "phi_dD", "--d", "3", "--D", "1",
                       "--braid", "B2 d=3 t1 s1 s1", "--output", "latex")
    assert code == 0 and r"\zeta_{3}" in out


def test_esystem_listing(capsys):
    code, out, _ = run(capsys, "esystem", "--d", "4")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 15
    assert lines[0] == "D={0} x=(1, 1, 1, 1) E=1/1"
    assert lines[-1] == "D={0,1,2,3} x=(1, 0, 0, 0) E=1/4"
    assert "D={0,2} x=(1, 0, 1, 0) E=1/2" in lines


def test_verify_ftl(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "ftl", "--d", "2")
    lines = out.splitlines()
    assert code == 0 and lines
    assert all(line.startswith("CHECK ftl.") and " PASS" in line for line in lines)
    assert any(line.startswith("CHECK ftl.annihilation[d=2] PASS") for line in lines)


@pytest.mark.parametrize("suite", ["trace", "esystem", "tl", "ptl", "skein", "knots", "oracle", "catalog"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--d", "2", "--count", "2")
    assert code == 0
    assert out and all(line.startswith(f"CHECK {suite}.") and " PASS" in line for line in out.splitlines())


def test_verify_deterministic(capsys):
    args = ("verify", "--suite", "skein", "--d", "2", "--count", "3", "--seed", "7")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    other = run(capsys, "verify", "--suite", "skein", "--d", "2", "--count", "3", "--seed", "8")
    assert other[1] != first[1]


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--first", "L9n14{0}", "--second", "L10n42{1}")
    assert code == 0 and out == "Theta(L9n14{0}) - Theta(L10n42{1}) = 0\n"


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert "trefoil n=2 components=1 word=1 1 1 framings=-" in out.splitlines()


@pytest.mark.parametrize("argv", [
    ("invariant", "--kind", "jones", "--link", "no-such-link"),
    ("invariant", "--kind", "jones", "--braid", "B2 x1"),
    ("invariant", "--kind", "theta_d", "--d", "2", "--D", "7", "--braid", "B2 s1"),
    ("invariant", "--kind", "theta_d", "--d", "2", "--D", "a", "--braid", "B2 s1"),
    ("invariant", "--kind", "theta_d", "--d", "2", "--braid", "B2 d=2 t1 s1"),
    ("invariant", "--kind", "jones", "--braid", "B2 s1", "--link", "hopf"),
    ("invariant", "--kind", "bogus", "--braid", "B2 s1"),
    ("compare", "--first", "nope", "--second", "hopf"),
    ("catalog", "--catalog", "/nonexistent/catalog.txt"),
    ("verify", "--d", "0"),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err


def test_check_failure_exit_code(capsys, tmp_path, monkeypatch):
    path = tmp_path / "bad.txt"
    path.write_text("liar|2|1 1 1||jones=q\n")
    code, out, _ = run(capsys, "verify", "--suite", "catalog", "--catalog", str(path))
    assert code == 1 and out.startswith("CHECK catalog.record[liar] FAIL")


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "framix.cli", "esystem", "--d", "2"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines() == ["D={0} x=(1, 1) E=1/1", "D={1} x=(1, -1) E=1/1", "D={0,1} x=(1, 0) E=1/2"]

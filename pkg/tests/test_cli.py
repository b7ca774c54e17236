import pytest

from stoned_billiards import cli


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_verify_suite_passes(capsys):
    rc, out, _ = run(capsys, "verify", "cores")
    assert rc == 0
    assert out.splitlines()[-1] == "3/3 passed"
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_unknown_suite(capsys):
    rc, _, err = run(capsys, "verify", "nonsense")
    assert rc == 2 and "unknown suite" in err


def test_stationary_exact_fractions(capsys):
    rc, out, _ = run(capsys, "stationary", "--process", "stoned-asep", "--lam", "1,2,3",
                     "--rho", "1,2,3", "--chi", "1,2,3", "-t", "1/4")
    assert rc == 0
    assert "# claimed_law_matches: True" in out
    body = [l for l in out.splitlines() if not l.startswith("#")]
    assert body[0] == "state,exact,claimed,float"
    assert any("/" in l.split(",")[-3] for l in body[1:])


def test_rerun_is_byte_identical(capsys):
    args = ("--seed", "5", "simulate", "--process", "masep", "--lam", "0,1,2", "--steps", "2000", "--burn-in", "100")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and "# seed: 5" in a


def test_constraint_message(capsys):
    rc, _, err = run(capsys, "stationary", "--process", "stoned-asep", "--lam", "1,2,3",
                     "--rho", "1,2,2", "--chi", "2,1,1")
    assert rc == 2 and "is not in [0,1)" in err


def test_config_file_and_flag_override(tmp_path, capsys):
    ini = tmp_path / "exp.ini"
    ini.write_text("[experiment]\nprocess = masep\nlam = 0,1,1\nt = 1/3\nseed = 4\n")
    rc, out, _ = run(capsys, "--config", str(ini), "stationary", "-t", "1/2")
    assert rc == 0
    assert "# t: 1/2" in out and "# lam: 0,1,1" in out and "# seed: 4" in out


def test_out_directory(tmp_path, capsys):
    rc, out, _ = run(capsys, "stationary", "--process", "masep", "--lam", "0,1", "--out", str(tmp_path))
    assert rc == 0 and (tmp_path / "stationary.csv").exists()


def test_plot_requires_kind(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["plot"])
    assert e.value.code == 2


def test_plot_svg_deterministic(tmp_path, capsys):
    for d in ("a", "b"):
        assert cli.main(["--seed", "1", "--out", str(tmp_path / d), "plot", "trajectory", "--steps", "50"]) == 0
    a = sorted((tmp_path / "a").iterdir())
    b = sorted((tmp_path / "b").iterdir())
    assert [x.name for x in a] == [x.name for x in b]
    assert all(x.read_bytes() == y.read_bytes() for x, y in zip(a, b))
    assert a[0].read_text().lstrip().startswith("<?xml")


def test_scan_command(capsys):
    rc, out, _ = run(capsys, "--seed", "3", "scan", "--gs", "1,1", "-p", "1/2", "--trials", "300")
    assert rc == 0 and "# pvalue:" in out


def test_billiard_chambers(capsys):
    rc, out, _ = run(capsys, "billiard", "-n", "3", "-p", "1/4", "--steps", "10", "--chambers")
    assert rc == 0 and "5/44" in out

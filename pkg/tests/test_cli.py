import csv
import io

import pytest

from sworbounds.cli import main


@pytest.fixture
def pop(tmp_path):
    def write(name, text):
        f = tmp_path / name
        f.write_text(text)
        return str(f)
    return write


def test_eval_table(pop, capsys):
    assert main(["eval", pop("p.txt", "1\n0\n0\n-1\n"), "--k", "2", "--t", "0.5"]) == 0
    out = capsys.readouterr().out
    assert "abs_dev_upper  upper    0.666667" in out
    assert "exact P(X >= t) = 0.333333" in out
    for name in ("hoeffding", "pokrovskiy", "lower_at_zero", "upper_at_zero", "abs_dev_lower", "bm_serfling",
                 "bm_bernstein"):
        assert name in out


def test_eval_at_zero(pop, capsys):
    assert main(["eval", pop("p.txt", "1\n0\n0\n-1\n"), "--k", "2", "--t", "0"]) == 0
    lines = {ln.split()[0]: ln for ln in capsys.readouterr().out.splitlines() if ln}
    assert lines["lower_at_zero"].endswith("applicable") and lines["upper_at_zero"].endswith("applicable")


def test_eval_falls_back_to_monte_carlo(pop, capsys):
    f = pop("big.txt", "\n".join(["1"] * 20 + ["-1"] * 20))
    assert main(["eval", f, "--k", "20", "--t", "0", "--reps", "2000", "--seed", "5"]) == 0
    assert "seed=5" in capsys.readouterr().out


def test_eval_errors(pop, tmp_path):
    assert main(["eval", str(tmp_path / "missing.txt"), "--k", "2", "--t", "0"]) == 2
    assert main(["eval", pop("p.txt", "1\n1\n"), "--k", "1", "--t", "0"]) == 2
    assert main(["eval", pop("q.txt", "1\n-1\n"), "--k", "2", "--t", "0"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["eval", pop("r.txt", "1\n-1\n"), "--k", "1", "--t", "abc"])
    assert exc.value.code == 2


def test_eval_center(pop, capsys):
    assert main(["eval", pop("p.txt", "1\n2\n3\n"), "--k", "1", "--t", "1", "--center"]) == 0
    assert "exact P(X >= t) = 0.333333" in capsys.readouterr().out


def test_dist(pop, capsys):
    assert main(["dist", pop("p.txt", "1\n-1/3\n-1/3\n-1/3\n"), "--k", "2"]) == 0
    assert capsys.readouterr().out == "# denominator=C(4,2)=6\nvalue,count,probability\n-2/3,3,0.5\n2/3,3,0.5\n"
    assert main(["dist", pop("q.txt", "1\n-1\n"), "--k", "1"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out.split("\n", 1)[1])))
    assert [r[1] for r in rows[1:]] == ["1", "1"]


def test_dist_over_budget(pop, capsys):
    assert main(["dist", pop("big.txt", "\n".join(["1"] * 20 + ["-1"] * 20)), "--k", "20"]) == 3
    assert "sample" in capsys.readouterr().err


def test_dist_to_file(pop, tmp_path):
    out = tmp_path / "d.csv"
    assert main(["dist", pop("p.txt", "1\n-1\n"), "--k", "1", "--out", str(out)]) == 0
    assert out.read_text().startswith("# denominator=C(2,1)=2")


def test_sample_deterministic(pop, capsys):
    f = pop("p.txt", "1\n-1/3\n-1/3\n-1/3\n")
    args = ["sample", f, "--k", "2", "--t", "0", "--strict", "--seed", "7"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    fields = dict(tok.split("=", 1) for ln in first.splitlines() for tok in ln.split() if "=" in tok)
    assert abs(float(fields["estimate"]) - 0.5) <= 4 * float(fields["std_error"])
    assert fields["seed"] == "7"


def test_sample_bad_reps(pop):
    assert main(["sample", pop("p.txt", "1\n-1\n"), "--k", "1", "--t", "0", "--reps", "0"]) == 2


def test_compare(tmp_path, capsys):
    out, svg = tmp_path / "c.csv", tmp_path / "fig.svg"
    assert main(["compare", "--out", str(out), "--svg", str(svg)]) == 0
    text = out.read_text()
    assert text.splitlines()[1] == "k,eps,bm_serfling,bm_serfling_raw,bm_bernstein,bm_bernstein_raw,abs_dev_upper"
    assert len(text.splitlines()) == 2 + 297
    assert sorted(p.name for p in tmp_path.glob("fig_eps*.svg")) == [
        "fig_eps0.001.svg", "fig_eps0.005.svg", "fig_eps0.01.svg"]
    assert main(["compare", "--eps", "0.005", "--n", "10"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 2 + 9


def test_compare_bad_flags():
    assert main(["compare", "--n", "2"]) == 2
    assert main(["compare", "--delta", "0"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["compare", "--eps", "-1"])
    assert exc.value.code == 2


def test_verify_folklore(capsys):
    assert main(["verify", "--suite", "folklore", "--seed", "1"]) == 0
    assert "failures=0" in capsys.readouterr().out


def test_verify_hypergeom_reports_failures(capsys):
    # small caps keep this quick; hyp_table_n=60 already reaches a small-mean counterexample
    code = main(["verify", "--suite", "hypergeom", "--cap", "hyp_exact_n=20", "--cap", "hyp_table_n=60",
                 "--cap", "robbins_n=20"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL normalized_mad_small_mean(n=4, i=1, k=3)" in out
    assert "check normalized_mad_lower_bound" not in out


def test_verify_bad_flags():
    for argv in (["verify", "--suite", "bogus"], ["verify", "--cap", "nope=3"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2

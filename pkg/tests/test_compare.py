import csv
import io

import pytest

from sworbounds import compare


@pytest.fixture(scope="module")
def rows():
    return compare.compare_rows()


def test_shape_and_spot_values(rows):
    assert len(rows) == 3 * 99
    by = {(r.k, r.eps): r for r in rows}
    r = by[(50, 0.005)]
    assert r.bm_serfling == pytest.approx(0.998775, abs=1e-6)
    assert r.abs_dev_upper == pytest.approx(0.835017, abs=1e-6)
    r1 = by[(1, 0.005)]
    assert r1.abs_dev_upper == pytest.approx(0.995075, abs=1e-6)
    assert r1.bm_serfling == pytest.approx(0.9999937, abs=1e-7)
    assert by[(99, 0.01)].abs_dev_upper is not None


def test_blank_when_threshold_reaches_alpha():
    rows = compare.compare_rows(n=100, eps_list=[0.02], ks=[49, 50, 51])
    assert [r.abs_dev_upper is None for r in rows] == [False, True, True]


def test_csv_format(rows):
    text = compare.rows_to_csv(rows, 100, 1.0, 0.05)
    lines = text.splitlines()
    assert lines[0] == "# n=100 alpha=1.0 delta=0.05 b-a=2.0 sigma2=2.0"
    assert lines[1] == "k,eps,bm_serfling,bm_serfling_raw,bm_bernstein,bm_bernstein_raw,abs_dev_upper"
    recs = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert len(recs) == 297
    for rec in recs:
        for col in ("bm_serfling", "bm_bernstein", "abs_dev_upper"):
            assert 0.0 <= float(rec[col]) <= 1.0
    assert text == compare.rows_to_csv(compare.compare_rows(), 100, 1.0, 0.05)


def test_svg(rows, tmp_path):
    svg = compare.rows_to_svg(rows, 0.005, 100)
    assert svg.startswith("<svg") and svg.count("<polyline") == 3
    assert 'viewBox="0 0 640 400"' in svg
    assert compare.svg_path_for(tmp_path / "fig.svg", 0.005).name == "fig_eps0.005.svg"

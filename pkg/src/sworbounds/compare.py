"""Side-by-side comparison of the absolute-deviation bound with the two
Bardenet-Maillard bounds, in sample-average form, over a sweep of k.

When only the absolute sum ``2*alpha`` is known, the range and variance in
the Bardenet-Maillard bounds are replaced by their worst cases
``b - a = 2 alpha`` and ``sigma^2 = 2 alpha^2``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import bounds

CSV_HEADER = ("k", "eps", "bm_serfling", "bm_serfling_raw", "bm_bernstein", "bm_bernstein_raw",
              "abs_dev_upper")
DEFAULT_EPS = (0.001, 0.005, 0.01)


@dataclass(frozen=True)
class CompareRow:
    k: int
    eps: float
    bm_serfling: float
    bm_serfling_raw: float
    bm_bernstein: float
    bm_bernstein_raw: float
    abs_dev_upper: float | None  # None when eps * k >= alpha


def compare_rows(n: int = 100, alpha: float = 1.0, eps_list: Iterable[float] = DEFAULT_EPS,
                 delta: float = bounds.DEFAULT_DELTA, ks: Iterable[int] | None = None) -> list[CompareRow]:
    alpha = float(alpha)
    a, b, sigma2 = -alpha, alpha, 2.0 * alpha * alpha
    ks = list(range(1, n)) if ks is None else list(ks)
    rows = []
    for eps in eps_list:
        for k in ks:
            ser = bounds.bm_serfling_upper(n, k, a, b, eps)
            ber = bounds.bm_bernstein_upper(n, k, a, b, sigma2, eps, delta)
            ours = bounds.abs_dev_upper(n, k, alpha, eps * k)
            rows.append(CompareRow(k, eps, ser.value, ser.raw, ber.value, ber.raw,
                                   ours.value if ours.applicable else None))
    return rows


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def rows_to_csv(rows: Sequence[CompareRow], n: int, alpha: float, delta: float) -> str:
    buf = io.StringIO()
    buf.write(f"# n={n} alpha={alpha!r} delta={delta!r} b-a={2 * float(alpha)!r} "
              f"sigma2={2 * float(alpha) ** 2!r}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.k, repr(r.eps), _fmt(r.bm_serfling), _fmt(r.bm_serfling_raw), _fmt(r.bm_bernstein),
                    _fmt(r.bm_bernstein_raw), _fmt(r.abs_dev_upper)])
    return buf.getvalue()


_SERIES = (
    ("bm_serfling", "#1f77b4", "BM Serfling"),
    ("bm_bernstein", "#ff7f0e", "BM Bernstein"),
    ("abs_dev_upper", "#2ca02c", "absolute deviation"),
)


def rows_to_svg(rows: Sequence[CompareRow], eps: float, n: int) -> str:
    """Fixed-viewBox line chart of the three bounds against k, for one eps."""
    W, H, L, R, T, B = 640, 400, 60, 20, 30, 50
    pw, ph = W - L - R, H - T - B
    sel = [r for r in rows if r.eps == eps]

    def px(k):
        return L + (k - 1) / max(1, n - 2) * pw

    def py(v):
        return T + (1.0 - v) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {W} {H}" width="{W}" height="{H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<text x="{W / 2:.1f}" y="18" text-anchor="middle" font-size="14">eps = {eps!r}, n = {n}</text>',
        f'<line x1="{L}" y1="{T + ph}" x2="{L + pw}" y2="{T + ph}" stroke="black"/>',
        f'<line x1="{L}" y1="{T}" x2="{L}" y2="{T + ph}" stroke="black"/>',
    ]
    for j in range(6):
        v = j / 5
        parts.append(f'<text x="{L - 6}" y="{py(v) + 4:.1f}" text-anchor="end" font-size="11">{v:.1f}</text>')
        parts.append(f'<line x1="{L}" y1="{py(v):.1f}" x2="{L + pw}" y2="{py(v):.1f}" stroke="#ddd"/>')
    for k in sorted({1, n - 1} | set(range(10, n - 1, 10))):
        parts.append(f'<text x="{px(k):.1f}" y="{T + ph + 16}" text-anchor="middle" font-size="11">{k}</text>')
    parts.append(f'<text x="{L + pw / 2:.1f}" y="{H - 10}" text-anchor="middle" font-size="12">k</text>')
    for attr, color, label in _SERIES:
        pts = [(r.k, getattr(r, attr)) for r in sel if getattr(r, attr) is not None]
        if pts:
            coords = " ".join(f"{px(k):.2f},{py(v):.2f}" for k, v in pts)
            parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
    for j, (_, color, label) in enumerate(_SERIES):
        y = T + ph + 34
        x = L + j * 180
        parts.append(f'<line x1="{x}" y1="{y}" x2="{x + 24}" y2="{y}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{x + 30}" y="{y + 4}" font-size="11">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def svg_path_for(base: str | Path, eps: float) -> Path:
    base = Path(base)
    return base.with_name(f"{base.stem}_eps{eps!r}{base.suffix or '.svg'}")

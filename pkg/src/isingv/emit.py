"""Scan tables, deterministic CSV/SVG emission, and run configuration."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import DomainError

__all__ = ["ScanTable", "RunConfig", "fmt15", "ordered_map", "default_threads"]


def fmt15(x: float) -> str:
    """15-significant-digit decimal rendering (loss-free for doubles)."""
    return "%.15g" % x


@dataclass
class ScanTable:
    """Rectangular table of float rows; complex quantities are split into
    _re/_im columns by the producer."""

    headers: list
    rows: list = field(default_factory=list)

    def __post_init__(self):
        n = len(self.headers)
        for row in self.rows:
            if len(row) != n:
                raise DomainError("row width does not match header count")

    def column(self, name):
        idx = self.headers.index(name)
        return [row[idx] for row in self.rows]

    def to_csv_text(self) -> str:
        lines = [",".join(self.headers)]
        for row in self.rows:
            lines.append(",".join(fmt15(float(v)) for v in row))
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.to_csv_text())

    def to_svg_text(self, x_col=0, width=640, height=480) -> str:
        """Minimal polyline plot: first (or chosen) column on x, every other
        column as one polyline.  Fixed formatting keeps the bytes
        deterministic."""
        if not self.rows:
            raise DomainError("empty table")
        cols = list(range(len(self.headers)))
        y_cols = [c for c in cols if c != x_col]
        xs = [float(r[x_col]) for r in self.rows]
        x_lo, x_hi = min(xs), max(xs)
        ys_all = [float(r[c]) for r in self.rows for c in y_cols]
        y_lo, y_hi = min(ys_all), max(ys_all)
        if x_hi == x_lo:
            x_hi = x_lo + 1.0
        if y_hi == y_lo:
            y_hi = y_lo + 1.0
        pad = 40.0
        sx = (width - 2 * pad) / (x_hi - x_lo)
        sy = (height - 2 * pad) / (y_hi - y_lo)
        colors = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"]
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
            f'<rect x="{pad:.1f}" y="{pad:.1f}" width="{width - 2 * pad:.1f}" '
            f'height="{height - 2 * pad:.1f}" fill="none" stroke="#888"/>',
        ]
        for i, c in enumerate(y_cols):
            pts = []
            for r in self.rows:
                px = pad + (float(r[x_col]) - x_lo) * sx
                py = height - pad - (float(r[c]) - y_lo) * sy
                pts.append("%.2f,%.2f" % (px, py))
            parts.append(
                f'<polyline fill="none" stroke="{colors[i % len(colors)]}" '
                f'stroke-width="1" points="{" ".join(pts)}"/>'
            )
            parts.append(
                f'<text x="{pad + 4:.1f}" y="{pad + 14 + 14 * i:.1f}" font-size="12" '
                f'fill="{colors[i % len(colors)]}">{self.headers[c]}</text>'
            )
        parts.append(
            f'<text x="{pad:.1f}" y="{height - 8:.1f}" font-size="11" fill="#444">'
            f"{self.headers[x_col]}: {fmt15(x_lo)} .. {fmt15(x_hi)}</text>"
        )
        parts.append(
            f'<text x="{pad:.1f}" y="{pad - 8:.1f}" font-size="11" fill="#444">'
            f"range: {fmt15(y_lo)} .. {fmt15(y_hi)}</text>"
        )
        parts.append("</svg>")
        return "\n".join(parts) + "\n"

    def write_svg(self, path, x_col=0) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.to_svg_text(x_col=x_col))

    def write(self, path, fmt="csv") -> None:
        if fmt == "csv":
            self.write_csv(path)
        elif fmt == "svg":
            self.write_svg(path)
        else:
            raise DomainError(f"unknown output format {fmt!r}")


def default_threads() -> int:
    env = os.environ.get("BOUNDARY_SCOPE_THREADS", "")
    try:
        n = int(env)
    except ValueError:
        n = 1
    return max(1, n)


@dataclass
class RunConfig:
    tol: float = 1e-10
    max_terms: int = 100_000
    output_path: str | None = None
    fmt: str = "csv"
    threads: int = 1

    def __post_init__(self):
        if not (1e-14 <= self.tol <= 1e-2):
            raise DomainError("tol must lie in [1e-14, 1e-2]")
        if self.fmt not in ("csv", "svg"):
            raise DomainError("format must be csv or svg")
        if self.threads < 1:
            raise DomainError("threads must be >= 1")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")


def ordered_map(fn, items, threads=1):
    """Map with optional thread pool; result order always follows `items`
    (all package callables are pure, so the output is thread-count
    independent)."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))

"""Minimal dependency-free SVG rendering for traces and scaling plots.

CSV files are the contract; these plots are a convenience, so the markup
is hand-rolled (axes, ticks, a polyline or scatter, optional fit line)
and deterministic for identical inputs.
"""

from __future__ import annotations

from math import floor, log10

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 20, 50


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10.0 ** floor(log10(raw))
    for mult in (1, 2, 2.5, 5, 10):
        step = mult * mag
        if raw <= step:
            break
    first = step * floor(lo / step + 0.999999)
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(round(t / step) * step)
        t += step
    return ticks


class _Canvas:
    def __init__(self, x_label: str, y_label: str, xs, ys):
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        ]
        self.x_lo, self.x_hi = min(xs), max(xs)
        self.y_lo, self.y_hi = min(ys), max(ys)
        if self.x_hi == self.x_lo:
            self.x_hi = self.x_lo + 1.0
        if self.y_hi == self.y_lo:
            self.y_hi = self.y_lo + 1.0
        pad = 0.05 * (self.y_hi - self.y_lo)
        self.y_lo -= pad
        self.y_hi += pad
        self._axes(x_label, y_label)

    def px(self, x: float) -> float:
        w = WIDTH - MARGIN_L - MARGIN_R
        return MARGIN_L + w * (x - self.x_lo) / (self.x_hi - self.x_lo)

    def py(self, y: float) -> float:
        h = HEIGHT - MARGIN_T - MARGIN_B
        return MARGIN_T + h * (1 - (y - self.y_lo) / (self.y_hi - self.y_lo))

    def _axes(self, x_label: str, y_label: str):
        x0, y0 = MARGIN_L, HEIGHT - MARGIN_B
        x1, y1 = WIDTH - MARGIN_R, MARGIN_T
        self.parts.append(
            f'<path d="M {x0} {y1} L {x0} {y0} L {x1} {y0}" stroke="black" fill="none"/>'
        )
        for t in _nice_ticks(self.x_lo, self.x_hi):
            if t < self.x_lo - 1e-12 or t > self.x_hi + 1e-12:
                continue
            px = self.px(t)
            self.parts.append(f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 5}" stroke="black"/>')
            self.parts.append(
                f'<text x="{px:.2f}" y="{y0 + 18}" font-size="11" text-anchor="middle">{t:g}</text>'
            )
        for t in _nice_ticks(self.y_lo, self.y_hi):
            if t < self.y_lo - 1e-12 or t > self.y_hi + 1e-12:
                continue
            py = self.py(t)
            self.parts.append(f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" stroke="black"/>')
            self.parts.append(
                f'<text x="{x0 - 8}" y="{py + 4:.2f}" font-size="11" text-anchor="end">{t:g}</text>'
            )
        self.parts.append(
            f'<text x="{(x0 + x1) / 2:.2f}" y="{HEIGHT - 12}" font-size="13" text-anchor="middle">{x_label}</text>'
        )
        self.parts.append(
            f'<text x="16" y="{(y0 + y1) / 2:.2f}" font-size="13" text-anchor="middle" '
            f'transform="rotate(-90 16 {(y0 + y1) / 2:.2f})">{y_label}</text>'
        )

    def polyline(self, xs, ys, color: str = "#1f77b4"):
        pts = " ".join(f"{self.px(x):.2f},{self.py(y):.2f}" for x, y in zip(xs, ys))
        self.parts.append(f'<polyline points="{pts}" stroke="{color}" fill="none" stroke-width="1.5"/>')

    def scatter(self, xs, ys, color: str = "#d62728"):
        for x, y in zip(xs, ys):
            self.parts.append(
                f'<circle cx="{self.px(x):.2f}" cy="{self.py(y):.2f}" r="3.5" fill="{color}"/>'
            )

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def line_plot(xs, ys, x_label: str, y_label: str) -> str:
    canvas = _Canvas(x_label, y_label, xs, ys)
    canvas.polyline(xs, ys)
    return canvas.render()


def scatter_fit_plot(xs, ys, fit_xs, fit_ys, x_label: str, y_label: str) -> str:
    canvas = _Canvas(x_label, y_label, list(xs) + list(fit_xs), list(ys) + list(fit_ys))
    if len(fit_xs):
        canvas.polyline(fit_xs, fit_ys, color="#7f7f7f")
    canvas.scatter(xs, ys)
    return canvas.render()

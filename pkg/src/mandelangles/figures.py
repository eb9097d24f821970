"""Deterministic SVG (and grayscale PPM) figures.

All coordinates are written with a fixed number of decimals so that the
same inputs always give byte-identical files.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .ksigma import SigmaParam, iter_levels
from .raytrace import trace_ray
from .realslice import enumerate_openings


def _f(x) -> str:
    return f"{float(x):.4f}"


def _svg(width: int, height: int, body: list) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">')
    return "\n".join([head, f'<rect width="{width}" height="{height}" fill="white"/>', *body, "</svg>"]) + "\n"


def openings_circle(max_period: int = 6, size: int = 400) -> str:
    """The unit circle with each opening and its mirror image shaded as a
    sector, and the root rays drawn as chords from the centre."""
    r = size * 0.42
    cx = cy = size / 2

    def pt(a):
        th = 2 * math.pi * float(a)
        return cx + r * math.cos(th), cy - r * math.sin(th)

    body = [f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}" fill="none" stroke="black" stroke-width="1"/>']
    for o in enumerate_openings(max_period):
        for a, b in ((o.theta_minus, o.omega_minus), (o.omega_plus, o.theta_plus)):
            (x0, y0), (x1, y1) = pt(a), pt(b)
            large = 1 if float(b) - float(a) > 0.5 else 0
            body.append(
                f'<path class="opening" data-period="{o.period}" '
                f'd="M {_f(cx)} {_f(cy)} L {_f(x0)} {_f(y0)} A {_f(r)} {_f(r)} 0 {large} 0 {_f(x1)} {_f(y1)} Z" '
                f'fill="steelblue" fill-opacity="0.35" stroke="none"/>'
            )
        for a in (o.theta_minus, o.theta_plus):
            x, y = pt(a)
            body.append(f'<line class="root-ray" x1="{_f(cx)}" y1="{_f(cy)}" x2="{_f(x)}" y2="{_f(y)}" '
                        f'stroke="black" stroke-width="0.5"/>')
    return _svg(size, size, body)


def ksigma_hierarchy(p: int = 3, n_max: int = 8, width: int = 800, row: int = 18) -> str:
    """Levels ``K^2, ..., K^n_max`` stacked downwards on the lift ``[1/4, 5/4]``."""
    sp = SigmaParam.dyadic(p)
    body = []
    for i, level in enumerate(iter_levels(sp, n_max)):
        y = 10 + i * (row + 6)
        for a, b in level.set:
            x0 = (a - Fraction(1, 4)) * width
            body.append(f'<rect class="level-{level.n}" x="{_f(x0)}" y="{y}" '
                        f'width="{_f(max((b - a) * width, Fraction(1, 10)))}" height="{row}" fill="black"/>')
    height = 20 + (n_max - 1) * (row + 6)
    return _svg(width, height, body)


def ray_overlay(c=-1.75, angles: Sequence = (Fraction(3, 7), Fraction(4, 7), Fraction(1, 7), Fraction(6, 7)),
                depth: int = 24, size: int = 500, extent: float = 2.2) -> str:
    """Traced dynamic rays of ``Q_c`` inside the square ``[-extent, extent]^2``."""
    scale = size / (2 * extent)
    body = []
    for t in angles:
        ray = trace_ray(c, t, depth)
        pts = [(float(z.real), float(z.imag)) for z in ray.curve]
        pts = [(x, y) for x, y in pts if abs(x) <= extent and abs(y) <= extent]
        coords = " ".join(f"{_f((x + extent) * scale)},{_f((extent - y) * scale)}" for x, y in pts)
        body.append(f'<polyline class="ray" data-angle="{Fraction(t)}" points="{coords}" '
                    f'fill="none" stroke="crimson" stroke-width="1"/>')
    x0 = (float(c) + extent) * scale
    body.append(f'<circle class="critical-value" cx="{_f(x0)}" cy="{_f(size / 2)}" r="3" fill="black"/>')
    return _svg(size, size, body)


def escape_time_ppm(c: complex, size: int = 200, extent: float = 2.0, max_iter: int = 100) -> bytes:
    """Grayscale escape-time picture of the filled Julia set, as binary PPM."""
    xs = np.linspace(-extent, extent, size)
    z = xs[None, :] + 1j * xs[::-1, None]
    counts = np.zeros(z.shape, dtype=np.int32)
    alive = np.ones(z.shape, dtype=bool)
    for k in range(max_iter):
        z[alive] = z[alive] ** 2 + c
        out = alive & (np.abs(z) > 2)
        counts[out] = k
        alive &= ~out
    gray = np.where(alive, 0, 255 - (255 * counts // max_iter)).astype(np.uint8)
    rgb = np.repeat(gray[:, :, None], 3, axis=2)
    return f"P6 {size} {size} 255\n".encode() + rgb.tobytes()

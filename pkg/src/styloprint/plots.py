"""Deterministic SVG output: scatter-plot matrix and inner/outer ring charts."""
import math
from xml.sax.saxutils import escape

import numpy as np

PANEL = 120
PAD = 6
SVG_NS = "http://www.w3.org/2000/svg"
PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
           "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")


def _num(x):
    return f"{x:.2f}"


def _scale(col):
    lo, hi = float(np.min(col)), float(np.max(col))
    span = hi - lo
    if span == 0:
        return np.full(len(col), 0.5)
    return (col - lo) / span


def scatter_matrix(X, names, kept=None, labels=None):
    """SVG scatter-plot matrix over the ``kept`` attributes.

    Panel (i, j) plots attribute j (x) against attribute i (y); the diagonal
    carries the attribute name. ``labels`` (one per row) colours the points.
    """
    X = np.asarray(X, dtype=float)
    names = list(names)
    kept = list(kept) if kept is not None else names
    if not kept:
        raise ValueError("scatter matrix needs at least one attribute")
    cols = {n: _scale(X[:, names.index(n)]) for n in kept}
    colour = {}
    if labels is not None:
        for lab in sorted(set(labels)):
            colour[lab] = PALETTE[len(colour) % len(PALETTE)]
    k = len(kept)
    size = k * PANEL
    inner = PANEL - 2 * PAD
    out = [
        f'<svg xmlns="{SVG_NS}" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for i, row_name in enumerate(kept):
        for j, col_name in enumerate(kept):
            x0, y0 = j * PANEL, i * PANEL
            out.append(f'<g class="panel" data-row="{i}" data-col="{j}" transform="translate({x0},{y0})">')
            out.append(f'<rect x="{PAD}" y="{PAD}" width="{inner}" height="{inner}" fill="none" stroke="#999"/>')
            if i == j:
                out.append(
                    f'<text class="label" x="{PANEL // 2}" y="{PANEL // 2}" text-anchor="middle" '
                    f'dominant-baseline="middle" font-size="10">{escape(row_name)}</text>'
                )
            else:
                xs, ys = cols[col_name], cols[row_name]
                for r in range(len(xs)):
                    fill = colour.get(labels[r], "#333") if labels is not None else "#333"
                    cx = PAD + xs[r] * inner
                    cy = PAD + (1 - ys[r]) * inner
                    out.append(f'<circle class="pt" cx="{_num(cx)}" cy="{_num(cy)}" r="2" fill="{fill}"/>')
            out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _arc(cx, cy, r_in, r_out, a0, a1):
    if a1 - a0 >= 2 * math.pi - 1e-12:
        a1 = a0 + 2 * math.pi - 1e-6
    large = 1 if a1 - a0 > math.pi else 0
    p = lambda r, a: (cx + r * math.sin(a), cy - r * math.cos(a))
    x0, y0 = p(r_out, a0)
    x1, y1 = p(r_out, a1)
    x2, y2 = p(r_in, a1)
    x3, y3 = p(r_in, a0)
    return (
        f"M{_num(x0)},{_num(y0)} A{_num(r_out)},{_num(r_out)} 0 {large} 1 {_num(x1)},{_num(y1)} "
        f"L{_num(x2)},{_num(y2)} A{_num(r_in)},{_num(r_in)} 0 {large} 0 {_num(x3)},{_num(y3)} Z"
    )


def ring_chart(title, inner_counts, outer_counts, bin_labels=None):
    """Two concentric rings: inner = within-genre bin shares, outer = population shares."""
    size, c = 220, 110
    out = [
        f'<svg xmlns="{SVG_NS}" width="{size}" height="{size + 20}" viewBox="0 0 {size} {size + 20}">',
        f'<title>{escape(title)}</title>',
    ]
    for ring, counts, (r_in, r_out) in (("inner", inner_counts, (40, 70)), ("outer", outer_counts, (75, 105))):
        total = float(sum(counts))
        a = 0.0
        for b, cnt in enumerate(counts):
            if total == 0 or cnt == 0:
                continue
            span = 2 * math.pi * cnt / total
            label = bin_labels[b] if bin_labels is not None else f"bin {b}"
            out.append(
                f'<path class="{ring}" data-bin="{b}" d="{_arc(c, c, r_in, r_out, a, a + span)}" '
                f'fill="{PALETTE[b % len(PALETTE)]}" stroke="white"><title>{escape(label)}: {cnt}</title></path>'
            )
            a += span
    out.append(f'<text x="{c}" y="{size + 14}" text-anchor="middle" font-size="11">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


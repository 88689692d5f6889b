"""CSV, JSON and SVG writers.  All output is deterministic for a given input."""
from __future__ import annotations

import csv
import io
import json

from .antimorphism import format_word, psi_system
from .orbit import BetaContext, fmt_index
from .pointset import GapMorphism, PointSetWindow


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def orbit_csv(ctx: BetaContext, n: int, places: int = 6) -> str:
    rows = []
    for k in range(n + 1):
        t, a = ctx.orbit_extend(k)
        rows.append([k, a, t.exact_str(), t.decimal(places)])
    return _csv(rows, ["n", "a_n", "t_n", "t_n_decimal"])


def alphabet_csv(ctx: BetaContext, letters=None, places: int = 6) -> str:
    system = psi_system(ctx)
    letters = system.alphabet if letters is None else letters
    rows = []
    for u in letters:
        lo, hi = system.key(u)
        rows.append([fmt_index(u.i), fmt_index(u.j), lo.decimal(places), hi.decimal(places),
                     system.length(u).decimal(places)])
    return _csv(rows, ["i", "j", "t_2i", "t_2j-1", "length"])


def points_csv(window: PointSetWindow, places: int = 6, z_only: bool = False) -> str:
    rows = [[p.k, p.y.exact_str(), p.y.decimal(places), int(p.is_z), str(p.letter)]
            for p in window.points if p.is_z or not z_only]
    return _csv(rows, ["k", "y_k", "y_k_decimal", "is_z", "letter"])


def gaps_csv(morphism: GapMorphism, places: int = 6) -> str:
    rows = [[name, morphism.lengths[name].exact_str(), morphism.lengths[name].decimal(places),
             format_word(word)] for name, word in morphism.words.items()]
    return _csv(rows, ["letter_id", "length_exact", "length_decimal", "word"])


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def window_svg(window: PointSetWindow, labels: str | None = None, width: int = 960,
               places: int = 6) -> str:
    """Schematic ruler: long ticks at Z points, short ticks at the other y_k, gap letters between Z ticks."""
    lo, hi = (float(v) for v in window.interval)
    span = (hi - lo) or 1.0
    margin = 20

    def X(v: float) -> str:
        return f"{margin + (v - lo) / span * (width - 2 * margin):.{places}f}"

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="90" '
             f'viewBox="0 0 {width} 90">',
             f'<line x1="{X(lo)}" y1="40" x2="{X(hi)}" y2="40" stroke="black" stroke-width="1"/>']
    zs = []
    for p in window.points:
        x = float(p.y)
        if p.is_z:
            zs.append(x)
            parts.append(f'<line x1="{X(x)}" y1="28" x2="{X(x)}" y2="52" stroke="black" stroke-width="1.5"/>')
            parts.append(f'<text x="{X(x)}" y="68" font-size="9" text-anchor="middle">{x:.{places}f}</text>')
        else:
            parts.append(f'<line x1="{X(x)}" y1="36" x2="{X(x)}" y2="44" stroke="gray" stroke-width="1"/>')
    if labels:
        names = labels.split() if " " in labels else list(labels)
        for name, (a, b) in zip(names, zip(zs, zs[1:])):
            parts.append(f'<text x="{X((a + b) / 2)}" y="22" font-size="11" text-anchor="middle">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

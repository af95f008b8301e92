"""Report rendering: DOT text, matplotlib figures, delimited tables.

Figures use the Agg backend and are written next to the JSON reports;
DOT exports cover Hasse diagrams, digraphs, BFS balls and the
free-group neighborhood tree.  Node ordering is deterministic
throughout so text outputs are reproducible byte for byte.
"""

from __future__ import annotations

import csv
import io
from typing import Sequence

from . import words as W
from .cayley import BfsBall
from .posets import FinitePoset, LabeledDigraph, bits


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def poset_to_dot(P: FinitePoset, name: str = "poset") -> str:
    """Hasse diagram, ranked by chain height."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    by_level: dict[int, list[int]] = {}
    for i in range(P.n):
        by_level.setdefault(P.levels[i], []).append(i)
    for lv in sorted(by_level):
        members = " ".join(str(i) for i in by_level[lv])
        lines.append(f"  {{ rank=same; {members} }}")
    for i in range(P.n):
        lines.append(f"  {i} [label={_quote(P.labels[i])}];")
    for (i, j) in P.cover_pairs():
        lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def digraph_to_dot(D: LabeledDigraph, name: str = "digraph") -> str:
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for i in range(D.n):
        lines.append(f"  {i} [label={_quote(D.vertex_labels[i])}];")
    for (u, v) in sorted(D.edges):
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def ball_to_dot(ball: BfsBall, name: str = "ball") -> str:
    verts = sorted(ball.dist, key=lambda v: (ball.dist[v], str(v)))
    idx = {v: i for i, v in enumerate(verts)}
    lines = [f"graph {name} {{", "  node [shape=point];"]
    for v in verts:
        label = ball.group.label(v)
        lines.append(f"  {idx[v]} [label={_quote(label)} xlabel={ball.dist[v]}];")
    seen = set()
    for (v, _, w) in ball.induced_edges():
        key = (min(idx[v], idx[w]), max(idx[v], idx[w]))
        if key not in seen and v != w:
            seen.add(key)
            lines.append(f"  {key[0]} -- {key[1]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def neighborhood_tree_to_dot(tree, name: str = "neighborhood") -> str:
    """The spanning subtree of the free ball around the identity; members
    of S S^-1 are drawn big with their affinity, connector words small."""
    idx = {w: i for i, w in enumerate(tree.nodes)}
    lines = [f"graph {name} {{"]
    for w in tree.nodes:
        label = W.format_word(w)
        if tree.member[w]:
            aff = tree.affinity.get(w)
            text = f"{label}\\n{aff}" if aff is not None else label
            lines.append(f"  {idx[w]} [shape=circle label={_quote(text)}];")
        else:
            lines.append(f"  {idx[w]} [shape=point label={_quote(label)}];")
    for (a, b) in tree.edges:
        lines.append(f"  {idx[a]} -- {idx[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# delimited output
# ---------------------------------------------------------------------------

def rows_to_csv(rows: Sequence[dict]) -> str:
    if not rows:
        return ""
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return out.getvalue()


# ---------------------------------------------------------------------------
# matplotlib figures
# ---------------------------------------------------------------------------

def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_hasse_png(P: FinitePoset, path: str, title: str = "") -> None:
    plt = _plt()
    by_level: dict[int, list[int]] = {}
    for i in range(P.n):
        by_level.setdefault(P.levels[i], []).append(i)
    pos = {}
    for lv, members in by_level.items():
        for k, i in enumerate(members):
            pos[i] = (k - (len(members) - 1) / 2, lv)
    fig, ax = plt.subplots(figsize=(max(6, P.n / 4), 2 + 1.2 * (P.height + 1)))
    for (i, j) in P.cover_pairs():
        ax.plot([pos[i][0], pos[j][0]], [pos[i][1], pos[j][1]],
                color="0.6", lw=0.8, zorder=1)
    xs = [pos[i][0] for i in range(P.n)]
    ys = [pos[i][1] for i in range(P.n)]
    ax.scatter(xs, ys, s=160, color="#1f77b4", zorder=2)
    for i in range(P.n):
        ax.annotate(P.labels[i], pos[i], ha="center", va="center",
                    fontsize=7, color="white", zorder=3)
    ax.set_title(title or f"Hasse diagram ({P.n} points)")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_tree_png(tree, path: str, title: str = "") -> None:
    """Layered drawing of the neighborhood tree with affinity labels."""
    plt = _plt()
    children: dict[W.Word, list[W.Word]] = {w: [] for w in tree.nodes}
    for (a, b) in tree.edges:
        children[a].append(b)
    xs: dict[W.Word, float] = {}
    cursor = [0.0]

    def place(w) -> float:
        kids = children[w]
        if not kids:
            xs[w] = cursor[0]
            cursor[0] += 1.0
        else:
            xs[w] = sum(place(k) for k in kids) / len(kids)
        return xs[w]

    place(())
    fig, ax = plt.subplots(figsize=(11, 6))
    for (a, b) in tree.edges:
        ax.plot([xs[a], xs[b]], [len(a), len(b)], color="0.6", lw=0.9, zorder=1)
    for w in tree.nodes:
        big = tree.member[w]
        ax.scatter([xs[w]], [len(w)], s=130 if big else 25,
                   color="#1f77b4" if big else "0.4", zorder=2)
        if big:
            aff = tree.affinity.get(w)
            note = W.format_word(w).replace(" ", "") + (f"\n{aff}" if aff is not None else "")
            ax.annotate(note, (xs[w], len(w)), textcoords="offset points",
                        xytext=(0, 9), ha="center", fontsize=6)
    ax.set_ylabel("word length")
    ax.set_title(title or "Spanning tree of the identity neighborhood")
    ax.invert_yaxis()
    ax.set_xticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_scan_png(girths: Sequence[tuple[int, int | None]], threshold: int,
                  bound, path: str) -> None:
    """Girth per prime with the published lower bound curve."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(9, 5))
    ps = [p for (p, _) in girths]
    ys = [(g if g is not None else threshold + 1) for (_, g) in girths]
    exact = [g is not None for (_, g) in girths]
    ax.scatter([p for p, e in zip(ps, exact) if e],
               [y for y, e in zip(ys, exact) if e],
               s=22, color="#1f77b4", label="BFS girth")
    ax.scatter([p for p, e in zip(ps, exact) if not e],
               [y for y, e in zip(ys, exact) if not e],
               s=40, marker="^", color="#d62728", label=f"> {threshold}")
    grid = sorted(set(ps))
    ax.plot(grid, [bound(p) for p in grid], color="0.4", lw=1,
            label="lower bound")
    ax.axhline(threshold, color="0.7", ls="--", lw=0.8)
    ax.set_xlabel("prime modulus")
    ax.set_ylabel("girth")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bar_png(pairs: Sequence[tuple[str, float]], path: str, title: str = "",
                 ylabel: str = "") -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(max(6, len(pairs) * 0.7), 4))
    names = [a for a, _ in pairs]
    vals = [b for _, b in pairs]
    ax.bar(range(len(pairs)), vals, color="#1f77b4")
    ax.set_xticks(range(len(pairs)), names, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

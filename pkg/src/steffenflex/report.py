"""Scan report rendering: delimited per-sample output and a summary figure."""

from __future__ import annotations

import csv

from .checker import EMBEDDED, INCONCLUSIVE, NOT_EMBEDDED


def _pairs_text(pairs) -> str:
    return ";".join("edge{%s}xface{%s}" % (",".join(map(str, e)), ",".join(map(str, f)))
                    for e, f in pairs)


def write_scan_csv(samples, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "verdict", "needs_study", "intersections",
                         "intersecting_pairs", "max_edge_residual", "error"])
        for s in samples:
            writer.writerow([
                f"{s.t:.9f}",
                s.verdict or "",
                len(s.needs_study),
                len(s.out2),
                _pairs_text(s.out2),
                "" if s.max_edge_residual is None else f"{s.max_edge_residual:.3e}",
                s.error or "",
            ])


_VERDICT_LEVEL = {EMBEDDED: 1.0, INCONCLUSIVE: 0.0, NOT_EMBEDDED: -1.0}
_VERDICT_COLOR = {EMBEDDED: "tab:green", INCONCLUSIVE: "tab:orange",
                  NOT_EMBEDDED: "tab:red"}


def render_scan_figure(samples, path, bracket=None) -> None:
    """Verdict-vs-parameter chart with the edge-length residuals alongside."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax, ax_res) = plt.subplots(
        2, 1, sharex=True, figsize=(8, 5),
        gridspec_kw={"height_ratios": [2, 1]})

    for verdict in (EMBEDDED, INCONCLUSIVE, NOT_EMBEDDED):
        ts = [s.t for s in samples if s.verdict == verdict]
        if not ts:
            continue
        ax.scatter(ts, [_VERDICT_LEVEL[verdict]] * len(ts), s=12,
                   color=_VERDICT_COLOR[verdict], label=verdict)
    failed = [s.t for s in samples if s.error]
    if failed:
        ax.scatter(failed, [0.0] * len(failed), s=12, marker="x",
                   color="black", label="unrealizable")
    if bracket is not None:
        for b in bracket:
            ax.axvline(b, color="gray", linestyle="--", linewidth=0.8)
        ax.axvspan(bracket[0], bracket[1], color="gray", alpha=0.2,
                   label="verdict flip")
    ax.set_yticks([-1.0, 0.0, 1.0])
    ax.set_yticklabels([NOT_EMBEDDED, INCONCLUSIVE, EMBEDDED])
    ax.set_ylim(-1.5, 1.5)
    ax.legend(loc="center left", fontsize=8)
    ax.set_title("Embeddedness along the flex")

    ts = [s.t for s in samples if s.max_edge_residual is not None]
    rs = [s.max_edge_residual for s in samples if s.max_edge_residual is not None]
    if ts:
        ax_res.semilogy(ts, [max(r, 1e-17) for r in rs], color="tab:blue", lw=0.8)
    ax_res.set_ylabel("max edge residual")
    ax_res.set_xlabel("flex parameter t (radians)")

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

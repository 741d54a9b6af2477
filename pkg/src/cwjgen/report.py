"""Simulator report output: TSV trace rows, JSON summary, and a call-count
bar chart rendered with matplotlib."""

from __future__ import annotations

import json
from pathlib import Path

from .cachesim import CallTrace, TraceDiff


def write_trace_tsv(trace: CallTrace, path) -> None:
    """Rows of iteration<TAB>function<TAB>count; prologue is iteration 0."""
    lines = ["iteration\tfunction\tcount"]
    sections = [("0", trace.prologue)]
    sections += [(str(i + 1), calls) for i, calls in enumerate(trace.iterations)]
    for label, calls in sections:
        counts = {}
        for fn in calls:
            counts[fn] = counts.get(fn, 0) + 1
        for fn in sorted(counts):
            lines.append("%s\t%s\t%d" % (label, fn, counts[fn]))
    Path(path).write_text("\n".join(lines) + "\n")


def summary_dict(trace: CallTrace, mode: str, iterations: int,
                 diff: TraceDiff | None = None) -> dict:
    out = {
        "mode": mode,
        "iterations": iterations,
        "prologue_calls": len(trace.prologue),
        "first_iteration": dict(sorted(trace.first().items())),
        "first_iteration_total": sum(trace.first().values()),
        "steady_state": dict(sorted(trace.steady().items())),
        "steady_state_total": sum(trace.steady().values()),
    }
    if diff is not None:
        out["baseline"] = {
            "per_function": {fn: {"baseline": a, "run": b}
                             for fn, (a, b) in sorted(diff.per_function.items())},
            "baseline_total": diff.total_a,
            "run_total": diff.total_b,
            "reduction": diff.reduction,
        }
    return out


def write_summary_json(trace: CallTrace, mode: str, iterations: int, path,
                       diff: TraceDiff | None = None) -> None:
    Path(path).write_text(
        json.dumps(summary_dict(trace, mode, iterations, diff), indent=2) + "\n")


def render_call_figure(trace: CallTrace, path, title: str = "") -> None:
    """Grouped bars of first-iteration vs steady-state call counts per function."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    first = trace.first()
    steady = trace.steady()
    functions = sorted(set(first) | set(steady))
    if not functions:
        functions = ["(none)"]
    xs = range(len(functions))
    width = 0.4

    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(functions) + 2), 4.5))
    ax.bar([x - width / 2 for x in xs],
           [first.get(fn, 0) for fn in functions],
           width, label="first iteration")
    ax.bar([x + width / 2 for x in xs],
           [steady.get(fn, 0) for fn in functions],
           width, label="steady state")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(functions, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("JNI calls per iteration")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)

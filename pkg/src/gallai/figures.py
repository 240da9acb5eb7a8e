"""Matplotlib figures written next to the JSON reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .verify import VerificationReport  # noqa: E402

_VERDICT_COLORS = {"pass": "#2b8a3e", "fail": "#c92a2a", "budget-exceeded": "#e67700"}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    with open(path, "xb") as fh:
        fig.savefig(fh, format="png", dpi=120)
    plt.close(fig)
    return path


def plot_even_cycle_margins(reports: list[VerificationReport], path: Path) -> Path:
    """Qualifying instances by how far the order sits above the threshold."""
    fig, ax = plt.subplots(figsize=(6, 3.6))
    width = 0.8 / max(1, len(reports))
    for idx, rep in enumerate(reports):
        hist = rep.details.get("margin_histogram", {})
        xs = [int(m) + idx * width for m in hist]
        ax.bar(xs, list(hist.values()), width=width, label=f"n={rep.parameters['n']}")
    ax.set_xlabel("N - ((n-1)q + 2n + 2)")
    ax.set_ylabel("instances (all with mono C_2n)")
    ax.set_title("Monochromatic C_2n above (n-1)q + 2n + 2")
    ax.legend(frameon=False)
    return _save(fig, path)


def plot_lower_bounds(reports: list[VerificationReport], path: Path) -> Path:
    """Construction orders against k, one line per (family, n), markers colored by verdict."""
    fig, ax = plt.subplots(figsize=(6, 3.6))
    series: dict[tuple[str, int], list[VerificationReport]] = {}
    for rep in reports:
        series.setdefault((rep.parameters["family"], rep.parameters["n"]), []).append(rep)
    for (family, n), reps in sorted(series.items()):
        reps.sort(key=lambda r: r.parameters["k"])
        ks = [r.parameters["k"] for r in reps]
        orders = [r.details["order"] for r in reps]
        ax.plot(ks, orders, lw=1, ls="-" if family == "odd" else "--", label=f"{family}, n={n}")
        ax.scatter(ks, orders, c=[_VERDICT_COLORS[r.verdict] for r in reps], s=18, zorder=3)
    ax.set_yscale("log")
    ax.set_xlabel("k")
    ax.set_ylabel("order of certified coloring")
    ax.set_title("Lower-bound witnesses")
    ax.legend(frameon=False, fontsize=7, ncol=2)
    return _save(fig, path)


def plot_summary(reports: list[VerificationReport], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 0.3 * len(reports) + 1.2))
    labels = [f"{r.claim_id} {'-'.join(f'{k}{r.parameters[k]}' for k in ('n', 'k', 'N') if k in r.parameters)}" for r in reports]
    ax.barh(range(len(reports)), [max(r.instances_run, 1) for r in reports], color=[_VERDICT_COLORS[r.verdict] for r in reports])
    ax.set_yticks(range(len(reports)))
    ax.set_yticklabels(labels, fontsize=6)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("instances run")
    return _save(fig, path)


def _unique(path: Path) -> Path:
    i = 1
    candidate = path
    while candidate.exists():
        candidate = path.with_name(f"{path.stem}.{i}{path.suffix}")
        i += 1
    return candidate


def render_figures(
    reports: list[VerificationReport], out: Path, stamp: str, written: list[Path] | None = None
) -> list[Path]:
    """Render all applicable figures; each path is appended to ``written`` as soon as it exists."""
    paths = written if written is not None else []
    t6 = [r for r in reports if r.claim_id == "theorem6"]
    if t6:
        paths.append(_unique(out / f"theorem6-{stamp}.png"))
        plot_even_cycle_margins(t6, paths[-1])
    lower = [r for r in reports if r.claim_id in ("gr-odd-lower", "gr-even-lower")]
    if lower:
        paths.append(_unique(out / f"lower-bounds-{stamp}.png"))
        plot_lower_bounds(lower, paths[-1])
    if reports:
        paths.append(_unique(out / f"summary-{stamp}.png"))
        plot_summary(reports, paths[-1])
    return paths

"""Suite configuration, execution, and report persistence."""

from __future__ import annotations

import copy
import json
import os
import tempfile
import time
from pathlib import Path
from typing import Any

from .errors import GallaiError
from .verify import (
    CLAIMS,
    VerificationReport,
    check_decomp_roundtrip,
    check_gr_exact_small,
    check_gr_lower,
    check_lemma_mc_complete,
    check_theorem6,
    worst_verdict,
)

DEFAULT_CONFIG: dict[str, Any] = {
    "claims": ["theorem6", "gr-odd-lower", "gr-even-lower", "decomp-roundtrip"],
    "out": "reports",
    "seed": 1,
    "workers": 1,
    "budget": 10**8,
    "plot": False,
    "theorem6": {"n": [3, 4], "samples": 1000, "slack": 4, "max_order": 40, "max_colors": 5},
    "gr-odd-lower": {"n": [3, 4, 5], "k": [1, 2, 3, 4, 5]},
    "gr-even-lower": {"n": [3, 4, 5], "k": [1, 2, 3, 4, 5]},
    "gr-exact-small": {"n": [3], "k": [1], "N": [6, 7]},
    "lemma-mc-complete": {"n": [3], "samples": 200, "max_order": 24},
    "decomp-roundtrip": {"samples": 1000, "max_order": 40, "max_colors": 5},
}


class ConfigError(GallaiError, ValueError):
    """Invalid suite configuration."""


def _parse_value(text: str) -> Any:
    text = text.strip()
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    if "," in text:
        return [_parse_value(x) for x in text.split(",") if x.strip()]
    try:
        return int(text)
    except ValueError:
        return text


def parse_config(text: str) -> dict[str, Any]:
    """Read a JSON object or ``key = value`` lines into a config merged over the defaults.

    Dotted keys address claim sections (``theorem6.samples = 500``); values
    with commas become lists. ``#`` starts a comment line.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON config: {exc}") from None
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            target = raw
            *heads, last = key.split(".")
            for h in heads:
                target = target.setdefault(h, {})
            target[last] = _parse_value(value)
        if isinstance(raw.get("claims"), str):
            raw["claims"] = [raw["claims"]]
    return merge_config(raw)


def merge_config(raw: dict[str, Any]) -> dict[str, Any]:
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    for key, value in raw.items():
        if isinstance(value, dict) and isinstance(cfg.get(key), dict):
            cfg[key].update(value)
        else:
            cfg[key] = value
    claims = cfg["claims"]
    if not isinstance(claims, list) or any(c not in CLAIMS for c in claims):
        raise ConfigError(f"claims must be a list drawn from {', '.join(CLAIMS)}")
    return cfg


def _as_list(value: Any) -> list:
    return value if isinstance(value, list) else [value]


def run_claim(claim: str, cfg: dict[str, Any]) -> list[VerificationReport]:
    sec = cfg.get(claim, {})
    seed, workers, budget = cfg["seed"], cfg["workers"], cfg["budget"]
    if claim == "theorem6":
        return [
            check_theorem6(
                n,
                sec["samples"],
                seed,
                size_slack=sec.get("slack", 4),
                max_order=sec.get("max_order", 40),
                max_colors=sec.get("max_colors", 5),
                workers=workers,
                budget=budget,
            )
            for n in _as_list(sec["n"])
        ]
    if claim in ("gr-odd-lower", "gr-even-lower"):
        family = claim.split("-")[1]
        return [check_gr_lower(family, n, k, budget) for n in _as_list(sec["n"]) for k in _as_list(sec["k"])]
    if claim == "gr-exact-small":
        return [
            check_gr_exact_small(n, k, order, budget=budget)
            for n in _as_list(sec["n"])
            for k in _as_list(sec["k"])
            for order in _as_list(sec["N"])
        ]
    if claim == "lemma-mc-complete":
        return [
            check_lemma_mc_complete(n, sec["samples"], seed, max_order=sec.get("max_order", 24))
            for n in _as_list(sec["n"])
        ]
    if claim == "decomp-roundtrip":
        return [
            check_decomp_roundtrip(
                sec["samples"], seed, sec.get("max_order", 40), sec.get("max_colors", 5), workers
            )
        ]
    raise ConfigError(f"unknown claim {claim!r}")


def ensure_writable(out: Path) -> None:
    """Create ``out`` if needed and prove a file can be written there."""
    out.mkdir(parents=True, exist_ok=True)
    fd, probe = tempfile.mkstemp(dir=out, prefix=".probe-")
    os.close(fd)
    os.unlink(probe)


def _tag(report: VerificationReport) -> str:
    keys = ("family", "n", "k", "N")
    parts = [f"{k}{report.parameters[k]}" for k in keys if k in report.parameters and k != "family"]
    return "-".join(parts) or "all"


def write_reports(reports: list[VerificationReport], out: Path, plot: bool = False) -> list[Path]:
    """Write one JSON file per report, failing instances, a TSV and JSON summary, and optional figures.

    Files are never overwritten. If any write fails, files written by this
    call are removed before the error propagates.
    """
    stamp = time.strftime("%Y%m%dT%H%M%S")
    written: list[Path] = []

    def fresh(name: str, suffix: str) -> Path:
        path = out / f"{name}{suffix}"
        i = 1
        while path.exists() or path in written:
            path = out / f"{name}.{i}{suffix}"
            i += 1
        return path

    def put(path: Path, text: str) -> None:
        with open(path, "x", encoding="utf-8") as fh:
            written.append(path)
            fh.write(text)

    try:
        report_files = []
        for rep in reports:
            base = f"{rep.claim_id}-{_tag(rep)}-{stamp}"
            instance_files = []
            for i, f in enumerate(rep.failures):
                path = fresh(f"{base}-failure{i}", ".txt")
                put(path, f["instance"])
                instance_files.append(path.name)
            path = fresh(base, ".json")
            put(path, json.dumps(rep.to_json(instance_files), indent=2, sort_keys=True) + "\n")
            report_files.append(path.name)
        summary = summary_dict(reports, report_files)
        put(fresh(f"summary-{stamp}", ".json"), json.dumps(summary, indent=2, sort_keys=True) + "\n")
        put(fresh(f"summary-{stamp}", ".tsv"), summary_tsv(reports))
        if plot:
            from .figures import render_figures

            render_figures(reports, out, stamp, written)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written


def summary_dict(reports: list[VerificationReport], report_files: list[str] | None = None) -> dict[str, Any]:
    return {
        "verdict": worst_verdict(reports),
        "instances_run": sum(r.instances_run for r in reports),
        "reports": [
            {
                "claim_id": r.claim_id,
                "tag": _tag(r),
                "verdict": r.verdict,
                "instances_run": r.instances_run,
                **({"file": report_files[i]} if report_files else {}),
            }
            for i, r in enumerate(reports)
        ],
    }


def summary_tsv(reports: list[VerificationReport]) -> str:
    rows = ["claim_id\ttag\tinstances_run\tfailures\tbudget_events\tverdict\twall_time_ms"]
    for r in reports:
        rows.append(
            f"{r.claim_id}\t{_tag(r)}\t{r.instances_run}\t{len(r.failures)}\t{r.budget_events}\t{r.verdict}\t{r.wall_time_ms:.1f}"
        )
    return "\n".join(rows) + "\n"


def run_suite(config: dict[str, Any]) -> list[VerificationReport]:
    """Run every configured claim and persist the reports under ``config["out"]``.

    The output directory is checked for writability before any work starts.
    """
    cfg = merge_config(config)
    out = Path(cfg["out"])
    if cfg["claims"]:
        ensure_writable(out)
    reports: list[VerificationReport] = []
    for claim in cfg["claims"]:
        reports.extend(run_claim(claim, cfg))
    if reports:
        write_reports(reports, out, plot=bool(cfg.get("plot")))
    return reports

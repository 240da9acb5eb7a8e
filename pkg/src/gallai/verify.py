"""Claim checks over generated instance families, producing reproducible reports."""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any

import numpy as np

from .coloring import ColoredKn, color_class, find_rainbow_triangle, q_value
from .constructions import (
    build_extremal,
    build_odd_extremal,
    certify_class,
    certify_no_mono_cycle,
    extremal_order,
)
from .cycles import DEFAULT_BUDGET, find_mono_cycle
from .decomposition import (
    Node,
    compose,
    decompose_full,
    enumerate_gallai,
    gallai_partition,
    random_gallai,
    reduced_graph,
    refine_connected,
    spans_connected,
    tree_to_coloring,
)
from .errors import BudgetExceeded, CycleFound, GallaiError

CLAIMS = (
    "theorem6",
    "gr-odd-lower",
    "gr-even-lower",
    "gr-exact-small",
    "lemma-mc-complete",
    "decomp-roundtrip",
)

PASS, FAIL, BUDGET = "pass", "fail", "budget-exceeded"
_SEVERITY = {PASS: 0, FAIL: 1, BUDGET: 2}


@dataclass
class VerificationReport:
    claim_id: str
    parameters: dict[str, Any]
    instances_run: int = 0
    failures: list[dict[str, str]] = field(default_factory=list)
    wall_time_ms: float = 0.0
    budget_events: int = 0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.failures:
            return FAIL
        if self.budget_events:
            return BUDGET
        return PASS

    def add_failure(self, instance: ColoredKn | None, explanation: str) -> None:
        self.failures.append({"instance": instance.to_text() if instance is not None else "", "explanation": explanation})

    def to_json(self, instance_files: list[str] | None = None) -> dict[str, Any]:
        failures = []
        for i, f in enumerate(self.failures):
            entry = {"explanation": f["explanation"]}
            if instance_files is not None:
                entry["instance_file"] = instance_files[i]
            else:
                entry["instance"] = f["instance"]
            failures.append(entry)
        return {
            "claim_id": self.claim_id,
            "parameters": self.parameters,
            "instances_run": self.instances_run,
            "failures": failures,
            "wall_time_ms": round(self.wall_time_ms, 3),
            "verdict": self.verdict,
            "budget_events": self.budget_events,
            "details": self.details,
        }

    def fingerprint(self) -> str:
        """Canonical JSON of everything except wall time, for reproducibility checks."""
        data = self.to_json()
        del data["wall_time_ms"]
        return json.dumps(data, sort_keys=True)


def worst_verdict(reports: Iterable[VerificationReport]) -> str:
    return max((r.verdict for r in reports), key=_SEVERITY.__getitem__, default=PASS)


def _sub_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(63) for _ in range(count)]


def _parallel_map(fn: Callable, args: list, workers: int) -> list:
    if workers <= 1 or len(args) < 2:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args, chunksize=max(1, len(args) // (8 * workers))))


def _brute_force_is_gallai(c: ColoredKn) -> bool:
    m = c.matrix
    n = c.order
    for a in range(n):
        for b in range(a + 1, n):
            for d in range(b + 1, n):
                if len({m[a, b], m[a, d], m[b, d]}) == 3:
                    return False
    return True


# -- q(G)-based sufficient condition for a monochromatic even cycle ---------------------------


def even_cycle_threshold(n: int, q: int) -> int:
    return (n - 1) * q + 2 * n + 2


def _even_cycle_instance(args: tuple) -> dict[str, Any]:
    n, inst_seed, slack, max_order, max_colors, budget = args
    rng = random.Random(inst_seed)
    k = rng.randint(1, max_colors)
    guess = even_cycle_threshold(n, rng.randint(1, k))
    top = guess + slack if rng.random() < 0.75 else max_order
    hi = min(max_order, max(top, guess))
    lo = min(hi, max(n, guess - slack))
    order = rng.randint(lo, hi)
    c = random_gallai(order, k, rng.getrandbits(63))
    q = q_value(c, n)
    thr = even_cycle_threshold(n, q)
    rec: dict[str, Any] = {"N": order, "k": k, "q": q, "threshold": thr, "qualified": order >= thr}
    if not rec["qualified"]:
        return rec
    try:
        w = find_mono_cycle(c, 2 * n, budget=budget)
    except BudgetExceeded:
        rec["budget"] = True
        return rec
    if w is not None and w.is_valid_in_coloring(c, 2 * n):
        rec["found"] = True
        return rec
    rec["found"] = False
    rec["instance"] = c.to_text()
    # Re-validate the inputs with independent checks before calling it a counterexample.
    gallai_ok = _brute_force_is_gallai(c)
    q_check = sum(
        1 for i in range(1, c.color_count + 1) if max(len(x) for x in color_class(c, i).components()) >= n
    )
    if w is not None:
        rec["explanation"] = "cycle search returned an invalid witness (implementation bug)"
    elif not gallai_ok:
        rec["explanation"] = "generator produced a non-Gallai coloring (implementation bug)"
    elif q_check != q:
        rec["explanation"] = f"q mismatch: {q} vs independent {q_check} (implementation bug)"
    else:
        rec["explanation"] = (
            f"suspected counterexample: N={order} >= {thr} = (n-1)q+2n+2 with q={q}, "
            f"but no monochromatic C_{2 * n} found"
        )
    return rec


def check_theorem6(
    n: int,
    samples: int,
    seed: int,
    size_slack: int = 4,
    max_order: int = 40,
    max_colors: int = 5,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """Sample Gallai colorings near ``(n-1)q + 2n + 2`` and demand a monochromatic C_2n above it.

    Each instance draws ``k`` and a guess for ``q``, then an order in the band
    ``[threshold - slack, threshold + slack]`` (a quarter of the time the band
    extends up to ``max_order``). The true ``q`` is computed afterwards and
    only instances meeting the hypothesis are searched.
    """
    if n < 3 or samples < 1:
        raise ValueError("need n >= 3 and samples >= 1")
    start = time.perf_counter()
    report = VerificationReport(
        "theorem6",
        {
            "n": n,
            "samples": samples,
            "seed": seed,
            "size_slack": size_slack,
            "max_order": max_order,
            "max_colors": max_colors,
            "budget": budget,
        },
    )
    args = [(n, s, size_slack, max_order, max_colors, budget) for s in _sub_seeds(seed, samples)]
    records = _parallel_map(_even_cycle_instance, args, workers)
    margins: Counter[int] = Counter()
    for rec in records:
        report.instances_run += 1
        if rec.get("budget"):
            report.budget_events += 1
        elif rec["qualified"]:
            margins[rec["N"] - rec["threshold"]] += 1
            if not rec["found"]:
                report.failures.append({"instance": rec["instance"], "explanation": rec["explanation"]})
    report.details = {
        "qualified": sum(margins.values()) + report.budget_events,
        "skipped": sum(1 for r in records if not r["qualified"]),
        "cycles_found": sum(1 for r in records if r.get("found")),
        "margin_histogram": {str(m): margins[m] for m in sorted(margins)},
        "q_histogram": {str(q): v for q, v in sorted(Counter(r["q"] for r in records).items())},
        "max_order_seen": max((r["N"] for r in records), default=0),
    }
    report.wall_time_ms = (time.perf_counter() - start) * 1000
    return report


# -- lower-bound constructions --------------------------------------------------------------


def check_gr_lower(
    family: str, n: int, k: int, budget: int = DEFAULT_BUDGET, exhaustive_max_order: int = 12
) -> VerificationReport:
    """Build the extremal coloring and certify it avoids the target monochromatic cycle.

    Checks the order, Gallai-ness, and a certificate per color re-validated by
    an independent checker. Instances of order at most
    ``exhaustive_max_order`` are also confirmed by exhaustive cycle search.
    """
    start = time.perf_counter()
    claim = f"gr-{family}-lower"
    length = 2 * n + 1 if family == "odd" else 2 * n
    report = VerificationReport(
        claim, {"family": family, "n": n, "k": k, "budget": budget, "exhaustive_max_order": exhaustive_max_order}
    )
    c = build_extremal(family, n, k)
    report.instances_run = 1
    expected = extremal_order(family, n, k)
    report.details = {"order": c.order, "expected_order": expected, "cycle_length": length}
    if c.order != expected:
        report.add_failure(c, f"order {c.order} != {expected}")
    w = find_rainbow_triangle(c)
    if w is not None:
        report.add_failure(c, f"rainbow triangle {w.vertices}")
    try:
        certs = certify_no_mono_cycle(c, length, budget)
    except CycleFound as exc:
        report.add_failure(c, f"monochromatic C_{length} in color {exc.witness.color}: {list(exc.witness.vertices)}")
        certs = {}
    except BudgetExceeded:
        report.budget_events += 1
        certs = {}
    report.details["certificates"] = {str(i): cert.variant for i, cert in sorted(certs.items())}
    for i, cert in certs.items():
        if not cert.check(color_class(c, i), budget):
            report.add_failure(c, f"certificate for color {i} ({cert.variant}) failed re-validation")
    if c.order <= exhaustive_max_order:
        try:
            found = find_mono_cycle(c, length, budget=budget)
        except BudgetExceeded:
            report.budget_events += 1
        else:
            report.details["exhaustive"] = found is None
            if found is not None:
                report.add_failure(c, f"exhaustive search found {list(found.vertices)} in color {found.color}")
    report.wall_time_ms = (time.perf_counter() - start) * 1000
    return report


# -- exhaustive small cases -------------------------------------------------------------------


def check_gr_exact_small(
    n: int,
    k: int,
    order: int,
    max_order: int = 7,
    max_colors: int = 3,
    stop_at_first: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """Does every Gallai k-coloring of K_order contain a monochromatic C_{2n+1}?

    Colorings are enumerated up to color permutation. Verdict ``pass`` means
    yes; ``fail`` lists an avoiding coloring, which is the expected outcome
    when ``order <= n 2^k``. ``parameters["expected"]`` records which outcome
    the exact value predicts.
    """
    start = time.perf_counter()
    report = VerificationReport(
        "gr-exact-small",
        {
            "n": n,
            "k": k,
            "N": order,
            "max_order": max_order,
            "max_colors": max_colors,
            "stop_at_first": stop_at_first,
            "budget": budget,
            "expected": PASS if order >= n * 2**k + 1 else FAIL,
        },
    )
    length = 2 * n + 1
    for c in enumerate_gallai(order, k, reduced=True, max_order=max_order, max_colors=max_colors):
        report.instances_run += 1
        try:
            found = find_mono_cycle(c, length, budget=budget)
        except BudgetExceeded:
            report.budget_events += 1
            continue
        if found is None:
            tight = " (bound tight at this scale)" if order <= n * 2**k else ""
            report.add_failure(c, f"Gallai {k}-coloring of K_{order} without monochromatic C_{length}{tight}")
            if stop_at_first:
                break
    report.wall_time_ms = (time.perf_counter() - start) * 1000
    return report


# -- mc-complete pairs ---------------------------------------------------------------------------


def _avoiding_sample(n: int, rng: random.Random, max_order: int, budget: int) -> ColoredKn | None:
    """A Gallai coloring certified to have no monochromatic C_{2n+1}, or None if this draw failed."""
    length = 2 * n + 1
    if rng.random() < 0.5:
        k = rng.randint(1, 3)
        base = build_odd_extremal(n, k)
        size = rng.randint(min(2 * n, base.order), min(base.order, max_order))
        verts = rng.sample(range(base.order), size)
        return base.restrict(verts)
    order = rng.randint(2 * n, min(4 * n, max_order))
    c = random_gallai(order, rng.randint(2, 5), rng.getrandbits(63))
    try:
        for i in range(1, c.color_count + 1):
            certify_class(color_class(c, i), length, i, budget)
    except (CycleFound, BudgetExceeded):
        return None
    return c


def mc_complete_violations(c: ColoredKn, n: int, max_blocks: int = 8) -> list[str]:
    """Check the mc-complete pair properties on pairs built from Gallai-tree blocks.

    At every internal node of the decomposition tree, pairs (Y, Z) of
    disjoint unions of child blocks that are joined in a single color ``b``
    with ``|Y|, |Z| >= n`` are tested: no outside vertex may be b-complete to
    ``Y u Z``, and a side with at least ``n + 1`` vertices must span no
    b-edge. Nodes with more than ``max_blocks`` children only use single
    blocks for Y and Z.
    """
    m = c.matrix
    problems = []
    stack = [decompose_full(c)]
    while stack:
        node = stack.pop()
        if not isinstance(node, Node):
            continue
        stack.extend(node.children)
        groups = [ch.leaves() for ch in node.children]
        p = len(groups)
        red = node.reduced
        if p <= max_blocks:
            assignments = product((0, 1, 2), repeat=p)
        else:
            assignments = (
                tuple(1 if t == i else 2 if t == j else 0 for t in range(p)) for i in range(p) for j in range(p) if i != j
            )
        for assign in assignments:
            ys = [i for i in range(p) if assign[i] == 1]
            zs = [i for i in range(p) if assign[i] == 2]
            if not ys or not zs or min(ys) > min(zs):
                continue
            cols = {red.color(i, j) for i in ys for j in zs}
            if len(cols) != 1:
                continue
            b = cols.pop()
            y = [v for i in ys for v in groups[i]]
            z = [v for i in zs for v in groups[i]]
            if len(y) < n or len(z) < n:
                continue
            yz = np.array(y + z)
            outside = np.ones(c.order, dtype=bool)
            outside[yz] = False
            complete = (m[:, yz] == b).all(axis=1) & outside
            if complete.any():
                problems.append(f"vertex {int(np.flatnonzero(complete)[0])} is {b}-complete to Y u Z (Y={y}, Z={z})")
            for side in (y, z):
                if len(side) >= n + 1 and (m[np.ix_(side, side)] == b).any():
                    problems.append(f"side {side} of a {b}-complete pair spans a color-{b} edge")
    return problems


def check_lemma_mc_complete(
    n: int, samples: int, seed: int, max_order: int = 24, budget: int = 10**6
) -> VerificationReport:
    """Test mc-complete pair properties on ``samples`` colorings without a monochromatic C_{2n+1}.

    Half the draws are random induced sub-colorings of the odd extremal
    construction; the rest are random Gallai colorings kept only when every
    color class gets an absence certificate. Draws whose absence cannot be
    settled within ``budget`` are discarded and tallied in ``details``.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    start = time.perf_counter()
    report = VerificationReport(
        "lemma-mc-complete", {"n": n, "samples": samples, "seed": seed, "max_order": max_order, "budget": budget}
    )
    rng = random.Random(seed)
    draws = 0
    pairs_nonvacuous = 0
    while report.instances_run < samples and draws < 100 * samples:
        draws += 1
        c = _avoiding_sample(n, random.Random(rng.getrandbits(63)), max_order, budget)
        if c is None:
            continue
        report.instances_run += 1
        perm = list(range(c.order))
        rng.shuffle(perm)
        c = c.relabel(perm)
        problems = mc_complete_violations(c, n)
        if problems:
            report.add_failure(c, "; ".join(problems[:3]))
        if c.order >= 2 * n:
            pairs_nonvacuous += 1
    report.details = {"draws": draws, "discarded": draws - report.instances_run, "orders_at_least_2n": pairs_nonvacuous}
    report.wall_time_ms = (time.perf_counter() - start) * 1000
    return report


# -- decomposition round trip -------------------------------------------------------------------


def decomposition_problems(c: ColoredKn) -> list[str]:
    problems = []
    if c.order < 2:
        return problems
    try:
        part = gallai_partition(c)
        part.validate(c)
    except GallaiError as exc:
        return [f"partition invalid: {exc}"]
    concat = [v for b in part.blocks for v in b]
    rebuilt = compose(reduced_graph(part), [c.restrict(b) for b in part.blocks]).with_color_count(c.color_count)
    if rebuilt.relabel(concat) != c:
        problems.append("compose(reduced_graph, blocks) does not reproduce the coloring")
    try:
        refined = refine_connected(c, part)
        refined.validate(c)
    except GallaiError as exc:
        problems.append(f"refined partition invalid: {exc}")
    else:
        if not spans_connected(refined):
            problems.append("refined partition has a disconnected between-color")
    if tree_to_coloring(decompose_full(c), c.color_count) != c:
        problems.append("Gallai tree does not rebuild the coloring")
    return problems


def _roundtrip_instance(args: tuple) -> tuple[str, list[str]] | None:
    inst_seed, max_order, max_colors = args
    rng = random.Random(inst_seed)
    c = random_gallai(rng.randint(1, max_order), rng.randint(1, max_colors), rng.getrandbits(63))
    problems = decomposition_problems(c)
    return (c.to_text(), problems) if problems else None


def check_decomp_roundtrip(
    samples: int, seed: int, max_order: int = 40, max_colors: int = 5, workers: int = 1
) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport(
        "decomp-roundtrip", {"samples": samples, "seed": seed, "max_order": max_order, "max_colors": max_colors}
    )
    args = [(s, max_order, max_colors) for s in _sub_seeds(seed, samples)]
    for res in _parallel_map(_roundtrip_instance, args, workers):
        report.instances_run += 1
        if res is not None:
            report.failures.append({"instance": res[0], "explanation": "; ".join(res[1])})
    report.wall_time_ms = (time.perf_counter() - start) * 1000
    return report

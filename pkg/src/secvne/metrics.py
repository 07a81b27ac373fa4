"""Windowed evaluation metrics: acceptance rate, revenue, cost, and their ratio.

Revenue weights node and link demand with alpha/beta (alpha + beta = 1).
Cost comes in two modes:

    literal  node demand + link demand, counting each mapped item once
    hop      node demand + link demand multiplied by its path's hop count

``hop`` is the default: under the literal mode every embedding of the same
request costs the same no matter where it lands, which makes cost useless for
comparing placement strategies.  Both modes are reported by the CLI.

Windows are half-open [t_start, t_end) slices of the simulated horizon.
Revenue and cost are counted once, at acceptance time, inside the window of
the request's arrival.  A window with no arrivals yields ``None`` (no-sample)
for its ratio metrics rather than a fake zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidWeights

COST_LITERAL = "literal"
COST_HOP = "hop"

DEFAULT_ALPHA = 0.5
DEFAULT_BETA = 0.5


@dataclass(slots=True)
class MetricWindow:
    t_start: float
    t_end: float
    arrived: int = 0
    accepted: int = 0
    revenue_sum: float = 0.0
    cost_sum: float = 0.0


@dataclass(slots=True)
class WindowRow:
    window: MetricWindow
    acceptance: float | None
    avg_revenue: float
    avg_cost: float
    rc_ratio: float | None


@dataclass(slots=True)
class CumulativeRow:
    t_end: float
    arrived: int
    accepted: int
    acceptance: float | None
    revenue: float
    cost: float
    rc_ratio: float | None


def acceptance_rate(window: MetricWindow) -> float | None:
    """Accepted / arrived; None when the window saw no arrivals."""
    if window.arrived == 0:
        return None
    return window.accepted / window.arrived


def revenue(vnr, alpha: float = DEFAULT_ALPHA, beta: float = DEFAULT_BETA) -> float:
    """Weighted demand served by one request: alpha * cpu + beta * bandwidth."""
    if alpha < 0 or beta < 0 or not math.isclose(alpha + beta, 1.0, abs_tol=1e-9):
        raise InvalidWeights(f"alpha={alpha}, beta={beta} must be >= 0 and sum to 1")
    cpu = sum(n.cpu_demand for n in vnr.nodes.values())
    bw = sum(l.bw_demand for l in vnr.links.values())
    return alpha * cpu + beta * bw


def cost(emb, mode: str = COST_HOP) -> float:
    """Substrate resources consumed by one embedding."""
    if mode not in (COST_LITERAL, COST_HOP):
        raise ValueError(f"unknown cost mode {mode!r}")
    cpu = sum(n.cpu_demand for n in emb.vnr.nodes.values())
    if mode == COST_LITERAL:
        bw = sum(l.bw_demand for l in emb.vnr.links.values())
    else:
        bw = 0
        for vkey, path in emb.link_map.items():
            bw += emb.vnr.links[vkey].bw_demand * (len(path) - 1)
    return float(cpu + bw)


def _windows(horizon: float, width: float) -> list[MetricWindow]:
    if width <= 0:
        raise ValueError("window width must be positive")
    out = []
    t = 0.0
    while t < horizon:
        out.append(MetricWindow(t, min(t + width, horizon)))
        t += width
    return out


def _fill_windows(trace, windows: list[MetricWindow], width: float,
                  alpha: float, beta: float, mode: str) -> None:
    last = len(windows) - 1
    for rec in trace.records:
        if rec.kind != "arrival" or rec.time >= trace.horizon:
            continue
        idx = min(int(rec.time // width), last)
        w = windows[idx]
        w.arrived += 1
        if rec.outcome == "accepted":
            w.accepted += 1
            w.revenue_sum += revenue(rec.embedding.vnr, alpha, beta)
            w.cost_sum += cost(rec.embedding, mode)


def windowed_series(trace, window_width: float,
                    alpha: float = DEFAULT_ALPHA, beta: float = DEFAULT_BETA,
                    mode: str = COST_HOP) -> list[WindowRow]:
    """Per-window acceptance, unit revenue, unit cost, and revenue/cost ratio.

    ``trace`` must expose ``horizon`` and chronological ``records``; accepted
    arrival records must carry their embedding so revenue and cost can be
    re-derived under any weights or cost mode without rerunning the simulation.
    """
    windows = _windows(trace.horizon, window_width)
    _fill_windows(trace, windows, window_width, alpha, beta, mode)
    rows = []
    for w in windows:
        span = w.t_end - w.t_start
        avg_rev = w.revenue_sum / span
        avg_cost = w.cost_sum / span
        rc = avg_rev / avg_cost if avg_cost > 0 else None
        rows.append(WindowRow(w, acceptance_rate(w), avg_rev, avg_cost, rc))
    return rows


def cumulative_series(trace, window_width: float,
                      alpha: float = DEFAULT_ALPHA, beta: float = DEFAULT_BETA,
                      mode: str = COST_HOP) -> list[CumulativeRow]:
    """Running totals sampled at each window boundary."""
    windows = _windows(trace.horizon, window_width)
    _fill_windows(trace, windows, window_width, alpha, beta, mode)
    rows = []
    arrived = accepted = 0
    rev = cst = 0.0
    for w in windows:
        arrived += w.arrived
        accepted += w.accepted
        rev += w.revenue_sum
        cst += w.cost_sum
        acc = accepted / arrived if arrived else None
        rc = rev / cst if cst > 0 else None
        rows.append(CumulativeRow(w.t_end, arrived, accepted, acc, rev, cst, rc))
    return rows


def steady_state_means(rows: list[WindowRow], warmup_t: float) -> dict[str, float | None]:
    """Mean of each per-window metric over windows starting at or after warmup_t.

    No-sample windows are skipped per metric; a metric with no sampled window
    at all comes back as None.
    """
    def mean_of(values):
        values = [v for v in values if v is not None]
        return sum(values) / len(values) if values else None

    tail = [r for r in rows if r.window.t_start >= warmup_t]
    return {
        "acceptance": mean_of(r.acceptance for r in tail),
        "avg_revenue": mean_of(r.avg_revenue for r in tail),
        "avg_cost": mean_of(r.avg_cost for r in tail),
        "rc_ratio": mean_of(r.rc_ratio for r in tail),
    }

"""Deterministic verification sweeps over generated instances.

Trial ``t`` of a sweep draws everything from ``SplitMix64(derive_seed(seed, t))``,
so any single trial can be replayed in isolation and a repeated sweep
produces a byte-identical report.

Three kinds of instance are supported:

* a graph family from :class:`graphenergy.graph.Family`: the graph is
  checked against the mean-deviation upper bound, the Ky Fan split
  ``(D_w - mean I) + (-A)``, and, when bipartite, the lower bound, the
  two-sided bound and the L / signless-L spectral agreement;
* ``union``: 2..k connected components from ``base_family``, checked
  against the disjoint-union bound;
* ``matrix_pair``: random symmetric pairs (a ``psd_fraction`` of them
  Gram matrices) checked against Ky Fan.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from graphenergy.energy import ROUTE_RTOL, laplacian_energy_routes, mean_weight, route_discrepancy
from graphenergy.errors import TrialError
from graphenergy.graph import (
    Family,
    RANDOM_FAMILIES,
    WeightScheme,
    WeightedGraph,
    adjacency_matrix,
    disjoint_union,
    generate,
    graph_to_dict,
    is_bipartite,
    is_connected,
    weight_diag,
)
from graphenergy.linalg import SymMatrix
from graphenergy.rng import SplitMix64, derive_seed
from graphenergy.theorems import (
    BIPARTITE_LOWER,
    BIPARTITE_SIMILARITY,
    KY_FAN,
    MD_UPPER,
    SANDWICH_LOWER,
    UNION_UPPER,
    BoundReport,
    Tolerances,
    check_bipartite_lower,
    check_bipartite_similarity,
    check_ky_fan,
    check_md_bound,
    check_sandwich,
    check_union_bound,
)

UNION = "union"
MATRIX_PAIR = "matrix_pair"
GRAPH_FAMILIES = tuple(f.value for f in Family)
SWEEP_FAMILIES = GRAPH_FAMILIES + (UNION, MATRIX_PAIR)
MEAN_MODES = ("free", "equal", "perturbed", "mixed")

_CHECKS = {
    "graph": (MD_UPPER, KY_FAN, BIPARTITE_LOWER, SANDWICH_LOWER, BIPARTITE_SIMILARITY),
    UNION: (UNION_UPPER, MD_UPPER),
    MATRIX_PAIR: (KY_FAN,),
}


@dataclass(frozen=True)
class SweepConfig:
    family: str
    n: int
    n_max: Optional[int] = None
    parity: Optional[str] = None
    p: Optional[float] = None
    n2: Optional[int] = None
    weight: str = "degree"
    trials: int = 1
    seed: int = 0
    abs_tol: float = 1e-8
    eq_tol: float = 1e-7
    connected: bool = False
    allow_isolated: bool = False
    base_family: str = "gnp"
    min_components: int = 2
    max_components: int = 4
    mean_mode: str = "mixed"
    psd_fraction: float = 0.25
    entry_range: float = 5.0

    def __post_init__(self) -> None:
        if self.family not in SWEEP_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(SWEEP_FAMILIES)}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.n < 1 or (self.n_max is not None and self.n_max < self.n):
            raise ValueError(f"bad order range n={self.n}, n_max={self.n_max}")
        if self.parity not in (None, "even", "odd"):
            raise ValueError(f"parity must be even or odd, got {self.parity!r}")
        if not self.orders():
            raise ValueError("no order in range matches the parity")
        if self.family == UNION:
            if self.base_family not in GRAPH_FAMILIES:
                raise ValueError(f"unknown base family {self.base_family!r}")
            if self.n < 2:
                raise ValueError("union components need n >= 2 so that each has an edge")
            if not 1 <= self.min_components <= self.max_components:
                raise ValueError("bad component count range")
            if self.mean_mode not in MEAN_MODES:
                raise ValueError(f"mean_mode must be one of {MEAN_MODES}")
        if self.family == MATRIX_PAIR:
            if not 0.0 <= self.psd_fraction <= 1.0:
                raise ValueError("psd_fraction must lie in [0, 1]")
        else:
            WeightScheme.parse(self.weight)
        if self.abs_tol < 0 or self.eq_tol < 0:
            raise ValueError("tolerances must be non-negative")

    @property
    def tolerances(self) -> Tolerances:
        return Tolerances(abs_tol=self.abs_tol, eq_tol=self.eq_tol)

    @property
    def kind(self) -> str:
        return self.family if self.family in (UNION, MATRIX_PAIR) else "graph"

    def orders(self) -> list[int]:
        hi = self.n if self.n_max is None else self.n_max
        out = list(range(self.n, hi + 1))
        if self.parity == "even":
            out = [k for k in out if k % 2 == 0]
        elif self.parity == "odd":
            out = [k for k in out if k % 2 == 1]
        return out

    def weight_regime(self) -> str:
        if self.kind == MATRIX_PAIR:
            return "n/a"
        if self.kind == UNION and self.mean_mode != "free":
            return "positive"
        return "degree" if WeightScheme.parse(self.weight).kind == "degree" else "positive"

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Tally:
    checked: int = 0
    held: int = 0
    violated: int = 0
    equality_cases: int = 0
    characterization_mismatches: int = 0
    unasserted_mismatches: int = 0
    skipped: int = 0
    worst_gap: Optional[float] = None

    def add(self, r: BoundReport, asserted: bool = True) -> Optional[str]:
        """Record ``r``; returns ``"violation"`` / ``"mismatch"`` when it is an offender."""
        self.checked += 1
        if self.worst_gap is None or r.gap < self.worst_gap:
            self.worst_gap = r.gap
        if r.is_equal:
            self.equality_cases += 1
        if not r.holds:
            self.violated += 1
            return "violation"
        self.held += 1
        if r.consistent is False:
            if asserted:
                self.characterization_mismatches += 1
                return "mismatch"
            self.unasserted_mismatches += 1
        return None


@dataclass
class SweepReport:
    config: dict
    regime: str
    tallies: dict[str, Tally]
    max_route_discrepancy: float = 0.0
    route_failures: int = 0
    offending: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(t.violated for t in self.tallies.values())

    @property
    def mismatches(self) -> int:
        return sum(t.characterization_mismatches for t in self.tallies.values())

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.mismatches == 0 and self.route_failures == 0

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "weight_regime": self.regime,
            "theorems": {k: asdict(t) for k, t in self.tallies.items()},
            "max_route_discrepancy": self.max_route_discrepancy,
            "route_failures": self.route_failures,
            "offending": self.offending,
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theorem", "checked", "held", "violated", "equality_cases", "mismatches", "worst_gap"])
        for name, t in self.tallies.items():
            gap = "" if t.worst_gap is None else repr(t.worst_gap)
            w.writerow([name, t.checked, t.held, t.violated, t.equality_cases,
                        t.characterization_mismatches, gap])
        return buf.getvalue()


class _Collector:
    def __init__(self, checks: Sequence[str]) -> None:
        self.tallies = {name: Tally() for name in checks}
        self.max_route = 0.0
        self.route_failures = 0
        self.offending: list[dict] = []

    def record(self, trial: int, r: BoundReport, instance: dict, asserted: bool = True) -> None:
        verdict = self.tallies[r.theorem].add(r, asserted)
        if verdict is not None:
            self.offending.append({"trial": trial, "theorem": r.theorem, "kind": verdict,
                                   "report": r.to_dict(), "instance": instance})

    def skip(self, name: str) -> None:
        self.tallies[name].skipped += 1

    def routes(self, trial: int, g: WeightedGraph) -> None:
        a, b = laplacian_energy_routes(g)
        d = route_discrepancy(a, b)
        self.max_route = max(self.max_route, d)
        if d > ROUTE_RTOL:
            self.route_failures += 1
            self.offending.append({"trial": trial, "theorem": "laplacian_energy_routes",
                                   "kind": "route_disagreement",
                                   "report": {"by_spectrum": a, "by_matrix": b},
                                   "instance": graph_to_dict(g)})


def check_graph(trial: int, g: WeightedGraph, tol: Tolerances, out: _Collector) -> None:
    """Apply every graph-level check to ``g``."""
    inst = graph_to_dict(g)
    out.routes(trial, g)
    out.record(trial, check_md_bound(g, tol), inst)
    shift = weight_diag(g) - SymMatrix.identity(g.n) * mean_weight(g)
    out.record(trial, check_ky_fan(shift, -adjacency_matrix(g), tol), inst)
    if is_bipartite(g) is None:
        for name in (BIPARTITE_LOWER, SANDWICH_LOWER, BIPARTITE_SIMILARITY):
            out.skip(name)
        return
    out.record(trial, check_bipartite_lower(g, tol), inst, asserted=is_connected(g))
    out.record(trial, check_sandwich(g, tol), inst)
    out.record(trial, check_bipartite_similarity(g, tol), inst)


def _pick_order(cfg: SweepConfig, rng: SplitMix64) -> int:
    orders = cfg.orders()
    return orders[0] if len(orders) == 1 else orders[rng.below(len(orders))]


def _graph_instance(cfg: SweepConfig, family: str, rng: SplitMix64, connected: bool) -> WeightedGraph:
    n = _pick_order(cfg, rng)
    fam = Family(family)
    no_isolated = (fam in RANDOM_FAMILIES and not cfg.allow_isolated
                   and WeightScheme.parse(cfg.weight).kind == "degree")
    return generate(fam, n, n2=cfg.n2, p=cfg.p, weight=cfg.weight, seed=rng.next_u64(),
                    connected=connected, no_isolated=no_isolated)


def _union_instance(cfg: SweepConfig, rng: SplitMix64) -> tuple[list[WeightedGraph], str]:
    k = cfg.min_components + rng.below(cfg.max_components - cfg.min_components + 1)
    parts = [_graph_instance(cfg, cfg.base_family, rng, connected=True) for _ in range(k)]
    mode = cfg.mean_mode
    if mode == "mixed":
        mode = ("free", "equal", "perturbed")[rng.below(3)]
    if mode == "free":
        return parts, mode
    target = mean_weight(parts[0])
    parts = [g.reweighted([w * target / mean_weight(g) for w in g.weights]) for g in parts]
    if mode == "perturbed":
        j = rng.below(k)
        delta = 0.1 + rng.random()
        parts[j] = parts[j].reweighted([w + delta for w in parts[j].weights])
    return parts, mode


def _matrix_pair(cfg: SweepConfig, rng: SplitMix64) -> tuple[SymMatrix, SymMatrix, bool]:
    n = _pick_order(cfg, rng)
    psd = rng.random() < cfg.psd_fraction
    r = cfg.entry_range

    def draw() -> SymMatrix:
        x = np.array([[rng.uniform(-r, r) for _ in range(n)] for _ in range(n)])
        if psd:
            return SymMatrix(x.T @ x, symmetric=True)
        return SymMatrix(np.triu(x) + np.triu(x, 1).T, symmetric=True)

    a = draw()
    return a, draw(), psd


def run_sweep(cfg: SweepConfig) -> SweepReport:
    """Generate ``cfg.trials`` instances and check every applicable bound."""
    tol = cfg.tolerances
    out = _Collector(_CHECKS[cfg.kind])
    for t in range(cfg.trials):
        rng = SplitMix64(derive_seed(cfg.seed, t))
        try:
            if cfg.kind == MATRIX_PAIR:
                a, b, psd = _matrix_pair(cfg, rng)
            elif cfg.kind == UNION:
                parts, mode = _union_instance(cfg, rng)
            else:
                g = _graph_instance(cfg, cfg.family, rng, cfg.connected)
        except ValueError as exc:
            raise TrialError(t, exc) from exc
        if cfg.kind == MATRIX_PAIR:
            inst = {"a": a.to_list(), "b": b.to_list(), "psd": psd}
            out.record(t, check_ky_fan(a, b, tol), inst)
        elif cfg.kind == UNION:
            inst = {"mean_mode": mode, "parts": [graph_to_dict(g) for g in parts]}
            out.record(t, check_union_bound(parts, tol), inst)
            union = disjoint_union(parts)
            out.routes(t, union)
            out.record(t, check_md_bound(union, tol), graph_to_dict(union))
        else:
            check_graph(t, g, tol, out)
    return SweepReport(cfg.to_dict(), cfg.weight_regime(), out.tallies,
                       out.max_route, out.route_failures, out.offending)


def verify_graphs(graphs: Iterable[WeightedGraph],
                  tol: Tolerances = Tolerances(), source: str = "files") -> SweepReport:
    """Run the graph-level checks on a fixed list of graphs, in order."""
    out = _Collector(_CHECKS["graph"])
    regimes = set()
    count = 0
    for t, g in enumerate(graphs):
        regimes.add("degree" if g.regime == "degree" else "positive")
        check_graph(t, g, tol, out)
        count += 1
    regime = regimes.pop() if len(regimes) == 1 else "mixed"
    config = {"source": source, "trials": count, "abs_tol": tol.abs_tol, "eq_tol": tol.eq_tol}
    return SweepReport(config, regime, out.tallies, out.max_route, out.route_failures,
                       out.offending)


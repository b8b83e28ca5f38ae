"""Simple undirected graphs carrying a vertex weight.

Vertices are ``0..n-1``. A graph stores its weight regime next to the
weights: ``"degree"`` graphs use vertex degrees (zero allowed for isolated
vertices), ``"inherited"`` marks a disjoint union of mixed regimes (zero
allowed, as it may contain degree-weighted parts), and every other regime
requires strictly positive weights.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from graphenergy.errors import (
    DuplicateEdgeError,
    EdgeRangeError,
    MalformedDocumentError,
    SelfLoopError,
    WeightError,
)
from graphenergy.linalg import SymMatrix, direct_sum
from graphenergy.rng import SplitMix64

Edge = tuple[int, int]


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple[Edge, ...]
    weights: tuple[float, ...]
    regime: str = "custom"
    _degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        canon = canonical_edges(self.n, self.edges)
        deg = [0] * self.n
        for i, j in canon:
            deg[i] += 1
            deg[j] += 1
        if len(self.weights) != self.n:
            raise ValueError(f"expected {self.n} weights, got {len(self.weights)}")
        weights = tuple(float(w) for w in self.weights)
        for w in weights:
            if not math.isfinite(w):
                raise ValueError(f"weights must be finite, got {w}")
        if self.regime == "degree":
            if weights != tuple(float(d) for d in deg):
                raise ValueError("degree regime requires weights equal to vertex degrees")
        elif self.regime == "inherited":
            if min(weights) < 0.0:
                raise ValueError(f"vertex weights must be non-negative, got {min(weights)}")
        elif min(weights) <= 0.0:
            raise ValueError(f"vertex weights must be positive, got {min(weights)}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", canon)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_degrees", tuple(deg))

    @classmethod
    def with_degree_weight(cls, n: int, edges: Iterable[Sequence[int]]) -> "WeightedGraph":
        canon = canonical_edges(n, edges)
        deg = [0] * n
        for i, j in canon:
            deg[i] += 1
            deg[j] += 1
        return cls(n, canon, tuple(float(d) for d in deg), regime="degree")

    @classmethod
    def with_constant_weight(cls, n: int, edges: Iterable[Sequence[int]], c: float) -> "WeightedGraph":
        return cls(n, tuple(map(tuple, edges)), (float(c),) * n, regime="const")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def reweighted(self, weights: Sequence[float], regime: str = "custom") -> "WeightedGraph":
        return WeightedGraph(self.n, self.edges, tuple(weights), regime=regime)


def canonical_edges(n: int, edges: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    """Sorted ``(i, j)`` pairs with ``i < j``; rejects loops, duplicates, bad indices."""
    seen: set[Edge] = set()
    for e in edges:
        i, j = (int(v) for v in e)
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        pair = (i, j) if i < j else (j, i)
        if pair in seen:
            raise ValueError(f"duplicate edge {pair}")
        seen.add(pair)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class Bipartition:
    side: tuple[int, ...]

    def is_valid_for(self, g: WeightedGraph) -> bool:
        return len(self.side) == g.n and all(self.side[i] != self.side[j] for i, j in g.edges)


# --- matrices -------------------------------------------------------------

def adjacency_matrix(g: WeightedGraph) -> SymMatrix:
    a = np.zeros((g.n, g.n))
    for i, j in g.edges:
        a[i, j] = a[j, i] = 1.0
    return SymMatrix(a, symmetric=True)


def weight_diag(g: WeightedGraph) -> SymMatrix:
    return SymMatrix.diag(g.weights)


def laplacian(g: WeightedGraph) -> SymMatrix:
    """Weighted Laplacian ``D_w - A``."""
    a = -adjacency_matrix(g).data
    a[np.diag_indices(g.n)] = g.weights
    return SymMatrix(a, symmetric=True)


def signless_laplacian(g: WeightedGraph) -> SymMatrix:
    """Weighted signless Laplacian ``D_w + A``."""
    a = np.array(adjacency_matrix(g).data)
    a[np.diag_indices(g.n)] = g.weights
    return SymMatrix(a, symmetric=True)


# --- structure ------------------------------------------------------------

def is_bipartite(g: WeightedGraph) -> Optional[Bipartition]:
    """Breadth-first 2-colouring of each component; ``None`` on an odd cycle."""
    adj = g.neighbours()
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    return Bipartition(tuple(side))


def is_omega_regular(g: WeightedGraph, tol: float = 1e-12) -> bool:
    return max(g.weights) - min(g.weights) <= tol


def connected_components(g: WeightedGraph) -> list[list[int]]:
    adj = g.neighbours()
    label = [-1] * g.n
    comps: list[list[int]] = []
    for root in range(g.n):
        if label[root] >= 0:
            continue
        label[root] = len(comps)
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if label[w] < 0:
                    label[w] = label[root]
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: WeightedGraph) -> bool:
    return len(connected_components(g)) == 1


def disjoint_union(parts: Sequence[WeightedGraph]) -> WeightedGraph:
    """Vertices of ``parts[k]`` follow those of ``parts[k-1]``; weights are inherited."""
    if not parts:
        raise ValueError("disjoint_union needs at least one graph")
    edges: list[Edge] = []
    weights: list[float] = []
    offset = 0
    for g in parts:
        edges.extend((i + offset, j + offset) for i, j in g.edges)
        weights.extend(g.weights)
        offset += g.n
    regimes = {g.regime for g in parts}
    regime = regimes.pop() if len(regimes) == 1 else "inherited"
    if regime == "const" and len(set(weights)) > 1:
        regime = "custom"
    if regime == "inherited" and min(weights) > 0.0:
        regime = "custom"
    return WeightedGraph(offset, tuple(edges), tuple(weights), regime=regime)


def union_adjacency(parts: Sequence[WeightedGraph]) -> SymMatrix:
    return direct_sum([adjacency_matrix(g) for g in parts])


# --- weights --------------------------------------------------------------

@dataclass(frozen=True)
class WeightScheme:
    """How weights are attached to a generated graph.

    Textual forms: ``degree``, ``const:C``, ``uniform:LO:HI``.
    """

    kind: str
    value: float = 1.0
    lo: float = 1.0
    hi: float = 1.0

    @classmethod
    def parse(cls, text: Union[str, "WeightScheme"]) -> "WeightScheme":
        if isinstance(text, WeightScheme):
            return text
        kind, _, rest = text.partition(":")
        try:
            if kind == "degree" and not rest:
                return cls("degree")
            if kind == "const":
                c = float(rest)
                if not c > 0:
                    raise ValueError
                return cls("const", value=c)
            if kind == "uniform":
                lo_s, hi_s = rest.split(":")
                lo, hi = float(lo_s), float(hi_s)
                if not 0 < lo <= hi:
                    raise ValueError
                return cls("uniform", lo=lo, hi=hi)
        except ValueError:
            pass
        raise ValueError(f"bad weight scheme {text!r}; use degree, const:C or uniform:LO:HI")

    def __str__(self) -> str:
        if self.kind == "const":
            return f"const:{self.value!r}"
        if self.kind == "uniform":
            return f"uniform:{self.lo!r}:{self.hi!r}"
        return self.kind

    def apply(self, n: int, edges: Sequence[Edge], rng: Optional[SplitMix64] = None) -> WeightedGraph:
        if self.kind == "degree":
            return WeightedGraph.with_degree_weight(n, edges)
        if self.kind == "const":
            return WeightedGraph.with_constant_weight(n, edges, self.value)
        if rng is None:
            raise ValueError("uniform weights need a random generator")
        ws = tuple(rng.uniform(self.lo, self.hi) for _ in range(n))
        return WeightedGraph(n, tuple(edges), ws, regime="uniform")


# --- generators -----------------------------------------------------------

class Family(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete_bipartite"
    STAR = "star"
    GNP = "gnp"
    RANDOM_BIPARTITE = "random_bipartite"


RANDOM_FAMILIES = {Family.GNP, Family.RANDOM_BIPARTITE}
MAX_ATTEMPTS = 10_000


def _family_edges(family: Family, n: int, n2: Optional[int], p: Optional[float],
                  rng: SplitMix64) -> tuple[int, list[Edge]]:
    if family is Family.PATH:
        return n, [(i, i + 1) for i in range(n - 1)]
    if family is Family.CYCLE:
        if n < 3:
            raise ValueError(f"cycle needs n >= 3, got {n}")
        return n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    if family is Family.COMPLETE:
        return n, [(i, j) for i in range(n) for j in range(i + 1, n)]
    if family is Family.STAR:
        return n, [(0, j) for j in range(1, n)]
    if family is Family.COMPLETE_BIPARTITE:
        if n2 is None or n2 < 1:
            raise ValueError("complete_bipartite needs a second part size n2 >= 1")
        return n + n2, [(i, n + j) for i in range(n) for j in range(n2)]
    if p is None or not 0.0 <= p <= 1.0:
        raise ValueError(f"{family.value} needs an edge probability 0 <= p <= 1, got {p}")
    if family is Family.GNP:
        return n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    side = [rng.below(2) for _ in range(n)]
    return n, [(i, j) for i in range(n) for j in range(i + 1, n)
               if side[i] != side[j] and rng.random() < p]


def generate(family: Union[str, Family], n: int, *, n2: Optional[int] = None,
             p: Optional[float] = None, weight: Union[str, WeightScheme] = "degree",
             seed: int = 0, connected: bool = False,
             no_isolated: bool = False) -> WeightedGraph:
    """Deterministic graph for ``(family, params, seed)``.

    For the random families, ``connected`` / ``no_isolated`` resample from
    the same stream until the requirement holds.
    """
    family = Family(family)
    scheme = WeightScheme.parse(weight)
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    rng = SplitMix64(seed)
    for _ in range(MAX_ATTEMPTS):
        order, edges = _family_edges(family, int(n), n2, p, rng)
        g = scheme.apply(order, edges, rng)
        if connected and not is_connected(g):
            pass
        elif no_isolated and order > 1 and min(g.degrees) == 0:
            pass
        else:
            return g
        if family not in RANDOM_FAMILIES:
            break
    raise ValueError(f"could not generate a {family.value} graph meeting the requirements "
                     f"(n={n}, p={p}, connected={connected}, no_isolated={no_isolated})")


# --- JSON -----------------------------------------------------------------

def graph_to_dict(g: WeightedGraph) -> dict:
    weights = "degree" if g.regime == "degree" else list(g.weights)
    return {"n": g.n, "edges": [list(e) for e in g.edges], "weights": weights}


def serialize_graph(g: WeightedGraph) -> str:
    return json.dumps(graph_to_dict(g))


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def graph_from_dict(doc) -> WeightedGraph:
    if not isinstance(doc, dict):
        raise MalformedDocumentError("<document>", "expected a JSON object")
    n = doc.get("n")
    if not _is_int(n) or n < 1:
        raise MalformedDocumentError("n", f"expected a positive integer, got {n!r}")
    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise MalformedDocumentError("edges", "expected an array of vertex pairs")
    seen: set[Edge] = set()
    for k, e in enumerate(raw_edges):
        where = f"edges[{k}]"
        if not isinstance(e, list) or len(e) != 2 or not all(_is_int(v) for v in e):
            raise MalformedDocumentError(where, f"expected two integers, got {e!r}")
        i, j = e
        if not (0 <= i < n and 0 <= j < n):
            raise EdgeRangeError(where, f"vertex index out of range [0, {n})")
        if i == j:
            raise SelfLoopError(where, f"self-loop at vertex {i}")
        pair = (min(i, j), max(i, j))
        if pair in seen:
            raise DuplicateEdgeError(where, f"duplicate edge {list(pair)}")
        seen.add(pair)
    raw_w = doc.get("weights")
    if raw_w == "degree":
        return WeightedGraph.with_degree_weight(n, seen)
    if not isinstance(raw_w, list):
        raise WeightError("weights", 'expected an array of numbers or "degree"')
    if len(raw_w) != n:
        raise WeightError("weights", f"expected {n} weights, got {len(raw_w)}")
    for k, w in enumerate(raw_w):
        if isinstance(w, bool) or not isinstance(w, (int, float)) or not math.isfinite(w):
            raise WeightError(f"weights[{k}]", f"expected a finite number, got {w!r}")
        if w <= 0:
            raise WeightError(f"weights[{k}]", f"weight must be positive, got {w!r}")
    return WeightedGraph(n, tuple(seen), tuple(float(w) for w in raw_w))


def parse_graph(text: Union[str, bytes]) -> WeightedGraph:
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedDocumentError("<document>", f"invalid JSON: {exc}") from None
    return graph_from_dict(doc)

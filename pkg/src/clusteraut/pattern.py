"""Labeled seeds, seed mutation, exchange graphs and the bipartite belt."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .dynkin import DynkinLabel, catalan_number, classify_cartan
from .laurent import LaurentPoly, denominator_vector, lp_exchange
from .matrix import (
    ExchangeMatrix,
    SignFunction,
    bipartite_sign,
    cartan_counterpart,
    mutate_matrix,
)
from .roots import RootSystem

__all__ = [
    "CapExceeded",
    "NotBipartite",
    "LabeledSeed",
    "SeedKey",
    "ExchangeGraph",
    "BipartiteBelt",
    "initial_seed",
    "mutate_seed",
    "composite_mutation",
    "exchange_graph",
    "is_finite_type",
    "bipartite_belt",
    "enumerate_bipartite_seeds",
    "root_variable_bijection",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 100_000


class CapExceeded(RuntimeError):
    """Raised when a breadth-first search grows past its cap."""


class NotBipartite(ValueError):
    pass


@dataclass(frozen=True)
class LabeledSeed:
    exchangeables: tuple[LaurentPoly, ...]
    frozens: tuple[LaurentPoly, ...]
    matrix: ExchangeMatrix

    def __post_init__(self) -> None:
        if len(self.exchangeables) != self.matrix.n or len(self.frozens) != self.matrix.m - self.matrix.n:
            raise ValueError("variable count does not match the matrix shape")

    @property
    def variables(self) -> tuple[LaurentPoly, ...]:
        return self.exchangeables + self.frozens

    @property
    def ambient(self) -> tuple[str, ...]:
        return self.exchangeables[0].ambient

    def to_json(self) -> dict:
        return {
            "variables": [str(v) for v in self.exchangeables],
            "frozen": [str(v) for v in self.frozens],
            "matrix": self.matrix.to_json(),
        }


SeedKey = tuple[frozenset[int], tuple[int, ...]]


def initial_seed(b: ExchangeMatrix) -> LabeledSeed:
    """The seed with cluster x1..xn and frozen variables named by the row labels."""
    gens = LaurentPoly.gens(b.row_labels)
    return LabeledSeed(tuple(gens[: b.n]), tuple(gens[b.n :]), b)


def _exchange(variables: Sequence[LaurentPoly], b: ExchangeMatrix, k: int) -> LaurentPoly:
    amb = variables[0].ambient
    plus = LaurentPoly.const(amb, 1)
    minus = LaurentPoly.const(amb, 1)
    for j, row in enumerate(b.entries):
        e = row[k]
        if e > 0:
            plus = plus * variables[j] ** e
        elif e < 0:
            minus = minus * variables[j] ** (-e)
    return lp_exchange(plus, minus, variables[k])


def mutate_seed(s: LabeledSeed, k: int) -> LabeledSeed:
    """Mutation in direction k (0-based).  Frozen variables take part in the
    exchange relation but are not changed."""
    if not 0 <= k < s.matrix.n:
        raise IndexError(f"direction {k} is not exchangeable")
    new = _exchange(s.variables, s.matrix, k)
    ex = list(s.exchangeables)
    ex[k] = new
    return LabeledSeed(tuple(ex), s.frozens, mutate_matrix(s.matrix, k))


def composite_mutation(s: LabeledSeed, indices: Sequence[int]) -> LabeledSeed:
    for k in indices:
        s = mutate_seed(s, k)
    return s


@dataclass
class ExchangeGraph:
    """Seeds up to simultaneous relabeling, with single-mutation edges.

    ``variables`` lists every cluster variable met, in discovery order; a
    seed's ``clusters[s]`` gives the variable ids of its exchangeable part in
    the order of ``seeds[s]``.  ``neighbors[s][k]`` is the seed reached from
    ``seeds[s]`` by mutating at position k.
    """

    seeds: list[LabeledSeed]
    clusters: list[tuple[int, ...]]
    variables: list[LaurentPoly]
    neighbors: list[list[int]]
    initial: int = 0
    var_index: dict[LaurentPoly, int] = field(default_factory=dict, repr=False)
    key_index: dict[frozenset[int], int] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.seeds[0].matrix.n

    @property
    def size(self) -> int:
        return len(self.seeds)

    def __len__(self) -> int:
        return len(self.seeds)

    @property
    def edges(self) -> list[tuple[int, int]]:
        out = set()
        for s, nb in enumerate(self.neighbors):
            for t in nb:
                out.add((min(s, t), max(s, t)))
        return sorted(out)

    @property
    def initial_seed(self) -> LabeledSeed:
        return self.seeds[self.initial]

    def variable_id(self, p: LaurentPoly) -> int | None:
        return self.var_index.get(p)

    def seed_of_cluster(self, ids: Sequence[int]) -> int | None:
        return self.key_index.get(frozenset(ids))

    def cluster_sets(self) -> list[frozenset[int]]:
        return [frozenset(c) for c in self.clusters]

    def is_regular(self) -> bool:
        n = self.n
        return all(len(set(nb)) == n for nb in self.neighbors)

    def is_connected(self) -> bool:
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            s = stack.pop()
            for t in self.neighbors[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return len(seen) == len(self.seeds)

    def to_json(self) -> dict:
        return {
            "seeds": [
                {"id": s, "variables": list(self.clusters[s]), "matrix": self.seeds[s].matrix.to_json()}
                for s in range(len(self.seeds))
            ],
            "edges": [list(e) for e in self.edges],
            "variables": [str(v) for v in self.variables],
            "initial": self.initial,
        }

    def to_dot(self, highlight: Sequence[int] = (), name: str = "E") -> str:
        hl = set(highlight)
        lines = [f"graph {name} {{"]
        for s in range(len(self.seeds)):
            attrs = ' style=filled fillcolor="lightblue"' if s in hl else ""
            label = ",".join(str(i) for i in sorted(self.clusters[s]))
            lines.append(f'  s{s} [label="{s}: {{{label}}}"{attrs}];')
        for a, b in self.edges:
            lines.append(f"  s{a} -- s{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _same_seed_check(stored: LabeledSeed, stored_ids: Sequence[int], new: LabeledSeed, new_ids: Sequence[int]) -> None:
    # clusters determine seeds: the matrices must agree after relabeling
    pos = {v: k for k, v in enumerate(new_ids)}
    perm = [pos[v] for v in stored_ids]
    if stored.matrix.relabel(perm).entries != new.matrix.entries:
        raise AssertionError("two seeds share a cluster but have different matrices")


def exchange_graph(initial: LabeledSeed | ExchangeMatrix, cap: int | None = None, check: bool = True) -> ExchangeGraph:
    """Breadth-first closure under mutation, deduplicating seeds by cluster.

    Directions are tried in increasing order so seed numbering is
    deterministic.  Raises :class:`CapExceeded` once more than ``cap``
    seeds have been found.
    """
    if isinstance(initial, ExchangeMatrix):
        initial = initial_seed(initial)
    if cap is None:
        cap = DEFAULT_CAP
        found = classify_cartan(cartan_counterpart(initial.matrix).entries)
        if found is not None:
            cap = 10 * catalan_number(found[0])
    n = initial.matrix.n
    g = ExchangeGraph([], [], [], [])

    def intern(p: LaurentPoly) -> int:
        i = g.var_index.get(p)
        if i is None:
            i = len(g.variables)
            g.variables.append(p)
            g.var_index[p] = i
        return i

    def add(seed: LabeledSeed, ids: tuple[int, ...]) -> int:
        s = len(g.seeds)
        g.seeds.append(seed)
        g.clusters.append(ids)
        g.neighbors.append([-1] * n)
        g.key_index[frozenset(ids)] = s
        return s

    add(initial, tuple(intern(p) for p in initial.exchangeables))
    queue = deque([0])
    while queue:
        s = queue.popleft()
        seed, ids = g.seeds[s], g.clusters[s]
        for k in range(n):
            if g.neighbors[s][k] >= 0:
                continue
            new = mutate_seed(seed, k)
            vid = intern(new.exchangeables[k])
            new_ids = ids[:k] + (vid,) + ids[k + 1 :]
            t = g.key_index.get(frozenset(new_ids))
            if t is None:
                if len(g.seeds) >= cap:
                    raise CapExceeded(f"more than {cap} seeds")
                t = add(new, new_ids)
                queue.append(t)
            elif check:
                _same_seed_check(g.seeds[t], g.clusters[t], new, new_ids)
            g.neighbors[s][k] = t
            # mutation is an involution: mutating the new variable in t leads back to s
            back = g.clusters[t].index(vid)
            if g.neighbors[t][back] < 0:
                g.neighbors[t][back] = s
    return g


def is_finite_type(b: ExchangeMatrix, cap: int = DEFAULT_CAP) -> DynkinLabel | None:
    """Search the mutation class of ``b`` for a finite-type Cartan counterpart.

    Returns the Dynkin label found, or None when the class contains a pair
    with ``|b_ij b_ji| > 3`` (never finite) or the search exhausts the class
    or the cap without success.
    """
    start = b.principal_part()
    seen = {start.entries}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        rows = cur.entries
        n = cur.n
        if any(abs(rows[i][j] * rows[j][i]) > 3 for i in range(n) for j in range(i)):
            return None
        found = classify_cartan(cartan_counterpart(cur).entries)
        if found is not None:
            return found[0]
        for k in range(n):
            nxt = mutate_matrix(cur, k)
            if nxt.entries not in seen:
                if len(seen) >= cap:
                    return None
                seen.add(nxt.entries)
                queue.append(nxt)
    return None


@dataclass(frozen=True)
class BipartiteBelt:
    """The seeds Sigma_r obtained from a bipartite seed by alternating mu_- and mu_+.

    ``seeds[r]`` is Sigma_r for ``0 <= r < period``; Sigma_1 = mu_-(Sigma)
    and Sigma_-1 = mu_+(Sigma).  The labeled sequence is periodic with
    ``period``; ``distinct`` counts the seeds it meets up to relabeling.
    """

    seeds: tuple[LabeledSeed, ...]
    sign: SignFunction
    distinct: int

    @property
    def period(self) -> int:
        return len(self.seeds)

    def seed(self, r: int) -> LabeledSeed:
        return self.seeds[r % self.period]

    def variable(self, i: int, r: int) -> LaurentPoly:
        """x_{i;r}, the i-th cluster variable of Sigma_r."""
        return self.seed(r).exchangeables[i]

    def mu(self, sign: int, s: LabeledSeed) -> LabeledSeed:
        return composite_mutation(s, self.sign.indices(sign))

    def __iter__(self) -> Iterator[LabeledSeed]:
        return iter(self.seeds)

    def cluster_keys(self) -> list[frozenset[LaurentPoly]]:
        return [frozenset(s.exchangeables) for s in self.seeds[: self.distinct]]


def bipartite_belt(initial: LabeledSeed | ExchangeMatrix, sign: SignFunction | None = None, limit: int = 1000) -> BipartiteBelt:
    if isinstance(initial, ExchangeMatrix):
        initial = initial_seed(initial)
    eps = sign or bipartite_sign(initial.matrix)
    if eps is None or not eps.is_valid_for(initial.matrix):
        raise NotBipartite("initial seed is not bipartite")
    seeds = [initial]
    first_key = frozenset(initial.exchangeables)
    distinct = None
    cur, s = initial, -1
    for r in range(1, limit):
        cur = composite_mutation(cur, eps.indices(s))
        s = -s
        if distinct is None and frozenset(cur.exchangeables) == first_key:
            distinct = r
        if cur.exchangeables == initial.exchangeables:
            if cur.matrix.entries != initial.matrix.entries:
                raise AssertionError("belt returned to the initial cluster with another matrix")
            return BipartiteBelt(tuple(seeds), eps, distinct)
        seeds.append(cur)
    raise CapExceeded(f"belt did not close within {limit} steps")


def enumerate_bipartite_seeds(g: ExchangeGraph) -> list[int]:
    """Indices of seeds whose matrix admits a bipartite sign function."""
    return [s for s, seed in enumerate(g.seeds) if bipartite_sign(seed.matrix) is not None]


def root_variable_bijection(g: ExchangeGraph, rs: RootSystem) -> dict[tuple[int, ...], int]:
    """Map each almost positive root to a variable id.

    Initial variable i goes to -alpha_i and every other variable to its
    denominator vector.  Raises AssertionError if this is not a bijection.
    """
    b = g.initial_seed.matrix
    if cartan_counterpart(b).entries != rs.cartan.entries:
        raise ValueError("root system does not match the initial exchange matrix")
    n = b.n
    out: dict[tuple[int, ...], int] = {}
    init_ids = g.clusters[g.initial]
    for vid, p in enumerate(g.variables):
        if vid in init_ids:
            i = init_ids.index(vid)
            alpha = tuple(-1 if j == i else 0 for j in range(n))
        else:
            alpha = denominator_vector(p, n)
        if not rs.is_almost_positive(alpha):
            raise AssertionError(f"denominator {alpha} of {p} is not an almost positive root")
        if alpha in out:
            raise AssertionError(f"two variables share denominator {alpha}")
        out[alpha] = vid
    if len(out) != len(rs.almost_positive):
        raise AssertionError("some almost positive roots have no variable")
    return out


def graph_json(g: ExchangeGraph) -> str:
    return json.dumps(g.to_json(), sort_keys=True)

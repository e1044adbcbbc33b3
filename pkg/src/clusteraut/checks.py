"""Self-checks run by ``clusteraut check``: counts and laws at desk scale."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .automorphism import aut_group, check_tau_law
from .dynkin import catalan_number
from .folding import check_projection, fold_matrix, invariant_seeds, quiver_aut_group, quotient_aut_check
from .matrix import ExchangeMatrix, find_symmetrizer, is_gluing_free, mutate_matrix
from .pattern import bipartite_belt, enumerate_bipartite_seeds, exchange_graph, root_variable_bijection
from .roots import build_root_system, standard_exchange_matrix, standard_sign, tau, tau_group, window_cover
from .universal import aut_univ, frozen_tau_symmetry, universal_matrix

FAST = ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"]
SLOW = ["E6", "F4"]

ROTATION = {"A2": 5, "A3": 6, "A4": 7, "B2": 3, "B3": 4, "C3": 4, "D4": 4, "G2": 4, "E6": 14, "F4": 7}
AUT_ORDER = {"A2": 10, "A3": 12, "A4": 14, "D4": 48, "B2": 6, "B3": 8, "C3": 8, "G2": 8, "E6": 28, "F4": 14}
SEEDS = {"A2": 5, "A3": 14, "A4": 42, "B2": 6, "B3": 20, "C3": 20, "D4": 50, "G2": 8, "F4": 105, "E6": 833}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _run(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported, not raised
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, ok, detail, time.perf_counter() - t0)


def _tau_groups(types):
    out = []
    for t in types:
        rs = build_root_system(t)
        tg = tau_group(rs, standard_sign(rs))
        out.append(f"{t}:{tg.order}/D{tg.rotation_order}")
        if tg.rotation_order != ROTATION[t] or tg.order != 2 * ROTATION[t]:
            return False, ", ".join(out)
    return True, ", ".join(out)


def _aut_orders(types):
    out = []
    for t in types:
        b, _ = standard_exchange_matrix(t)
        order = aut_group(exchange_graph(b)).order
        out.append(f"{t}:{order}")
        if order != AUT_ORDER[t]:
            return False, ", ".join(out)
    return True, ", ".join(out)


def _tau_law():
    for t in ("A3", "B3"):
        b, eps = standard_exchange_matrix(t)
        g = exchange_graph(b)
        rs = build_root_system(t)
        if not check_tau_law(g, rs, eps, root_variable_bijection(g, rs)):
            return False, f"law fails for {t}"
    return True, "A3 (9 variables), B3 (12 variables)"


def _seed_counts(types):
    out = []
    for t in types:
        b, _ = standard_exchange_matrix(t)
        size = len(exchange_graph(b))
        out.append(f"{t}:{size}")
        if size != SEEDS[t] or size != catalan_number(t):
            return False, ", ".join(out)
    return True, ", ".join(out)


def _belts():
    out = []
    for t in ("A3", "B3", "D4"):
        b, _ = standard_exchange_matrix(t)
        g = exchange_graph(b)
        belt = bipartite_belt(b)
        on_belt = {g.seed_of_cluster([g.variable_id(p) for p in key]) for key in belt.cluster_keys()}
        bip = set(enumerate_bipartite_seeds(g))
        out.append(f"{t}:{len(bip)}")
        if bip != on_belt:
            return False, ", ".join(out)
    return True, ", ".join(out)


def _folding():
    out = []
    for big, small, inv_count, group_order in (("A3", "B2", 6, 2), ("D4", "G2", 8, 6)):
        b, _ = standard_exchange_matrix(big)
        grp = quiver_aut_group(b)
        f = fold_matrix(b, grp)
        g_big, g_small = exchange_graph(b), exchange_graph(f)
        proj = check_projection(invariant_seeds(g_big, grp), g_small)
        quot = quotient_aut_check(aut_group(g_big), g_big, grp, aut_group(g_small), g_small)
        ok = (
            grp.order == group_order
            and proj["invariant_seeds"] == inv_count
            and proj["bijective"]
            and proj["all_project_to_seeds"]
            and all(quot[k] for k in ("order_law", "normal", "homomorphism", "surjective", "kernel_is_group"))
            and len(g_small) == SEEDS[small]
        )
        out.append(f"{big}/{grp.order}:{proj['invariant_seeds']} -> {small}:{len(g_small)}, {quot['aut_big']}/{quot['group']}={quot['aut_small']}")
        if not ok:
            return False, "; ".join(out)
    return True, "; ".join(out)


def _universal():
    out = []
    for t in ("A2", "A3", "B2"):
        b, _ = standard_exchange_matrix(t)
        u = universal_matrix(b)
        frozen_tau_symmetry(u, 1)
        frozen_tau_symmetry(u, -1)
        group, rep = aut_univ(u)
        out.append(f"{t}:{group.order}")
        if group.order != AUT_ORDER[t] or not rep["restriction_bijective"] or not rep["gluing_free_everywhere"]:
            return False, ", ".join(out)
    return True, ", ".join(out)


def _random_matrix(rng: random.Random) -> ExchangeMatrix:
    while True:
        n = rng.randint(2, 5)
        d = [rng.choice((1, 1, 2, 3)) for _ in range(n)]
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                c = rng.randint(-2, 2)
                rows[i][j] = c * d[j]
                rows[j][i] = -c * d[i]
        try:
            return ExchangeMatrix.from_rows(rows)
        except ValueError:
            continue


def _with_frozen(b: ExchangeMatrix, rng: random.Random) -> ExchangeMatrix:
    rows = []
    for _ in range(rng.randint(1, 3)):
        r = [rng.randint(-2, 2) for _ in range(b.n)]
        if any(r):
            rows.append(r)
    # a repeated row now and then so both outcomes are exercised
    if rows and rng.random() < 0.3:
        rows.append(list(rows[0]))
    return ExchangeMatrix.from_rows(b.principal, rows)


def _properties():
    rng = random.Random(20240601)
    for _ in range(200):
        b = _random_matrix(rng)
        for k in range(b.n):
            once = mutate_matrix(b, k)
            if mutate_matrix(once, k).entries != b.entries:
                return False, "mutation is not an involution"
            if find_symmetrizer(once) != find_symmetrizer(b):
                return False, "symmetrizer changed under mutation"
        framed = _with_frozen(b, rng)
        for k in range(b.n):
            if is_gluing_free(mutate_matrix(framed, k)) != is_gluing_free(framed):
                return False, "gluing-free changed under mutation"
    for t in FAST:
        rs = build_root_system(t)
        for eps in (standard_sign(rs), -standard_sign(rs)):
            for sign in (1, -1):
                for a in rs.almost_positive:
                    im = tau(rs, eps, sign, a)
                    if not rs.is_almost_positive(im) or tau(rs, eps, sign, im) != a:
                        return False, f"tau fails on {t}"
            roots = [d for _, _, d in window_cover(rs, eps)]
            if sorted(roots) != sorted(rs.almost_positive):
                return False, f"window cover fails on {t}"
        b, _ = standard_exchange_matrix(t)
        if any(c < 0 for p in exchange_graph(b).variables for c in p.coefficients()):
            return False, f"negative coefficient in {t}"
    return True, "involution, symmetrizer, gluing-free, tau, cover, positivity"


def run_checks(slow: bool = False) -> list[CheckResult]:
    types = FAST + (SLOW if slow else [])
    results = [
        _run("1 tau groups", lambda: _tau_groups(types)),
        _run("2 simply-laced automorphism groups", lambda: _aut_orders([t for t in ("A2", "A3", "A4", "D4") + (("E6",) if slow else ())])),
        _run("3 non-simply-laced automorphism groups", lambda: _aut_orders(["B2", "B3", "C3", "G2"] + (["F4"] if slow else []))),
        _run("4 tau law on variables", _tau_law),
        _run("5 exchange graph sizes", lambda: _seed_counts(types)),
        _run("6 bipartite seeds on the belt", _belts),
        _run("7 folding", _folding),
        _run("8 universal coefficients", _universal),
        _run("9 property suites", _properties),
    ]
    return results

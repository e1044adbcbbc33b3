"""Universal coefficients: frozen rows indexed by almost positive coroots."""

from __future__ import annotations

from dataclasses import dataclass

from .automorphism import AutGroup, ClusterAutomorphism, aut_group
from .laurent import LaurentPoly
from .matrix import (
    ExchangeMatrix,
    SignFunction,
    bipartite_sign,
    cartan_counterpart,
    is_gluing_free,
    matrix_isomorphisms,
    mutate_matrix,
)
from .pattern import DEFAULT_CAP, ExchangeGraph, LabeledSeed, NotBipartite, exchange_graph, initial_seed
from .roots import RootSystem, root_system_from_cartan, tau

__all__ = [
    "UniversalMatrix",
    "universal_matrix",
    "frozen_tau_symmetry",
    "specialize",
    "aut_univ",
    "restriction_map",
    "sign_dependence",
]


@dataclass(frozen=True)
class UniversalMatrix:
    """B with one frozen row per almost positive coroot (``coroots[f]`` labels row n + f)."""

    base: ExchangeMatrix
    sign: SignFunction
    coroots: tuple[tuple[int, ...], ...]
    dual: RootSystem

    @property
    def n(self) -> int:
        return self.base.n

    def to_text(self) -> str:
        return self.base.to_text(with_labels=True)


def _coroot_label(c) -> str:
    return "coroot:(" + ",".join(str(v) for v in c) + ")"


def universal_matrix(b: ExchangeMatrix, eps: SignFunction | None = None) -> UniversalMatrix:
    """Append the row eps(i) * [c : c_i] for every almost positive coroot c.

    Coroot coordinates come from the root system of the transposed Cartan
    matrix; rows are ordered negative simples first, then by height.
    """
    b = b.principal_part()
    eps = eps or bipartite_sign(b)
    if eps is None or not eps.is_valid_for(b):
        raise NotBipartite("universal coefficients need a bipartite matrix")
    rs = root_system_from_cartan(cartan_counterpart(b).entries)
    dual = rs.dual
    coroots = [rs.coroot(a) for a in rs.almost_positive]
    if set(coroots) != set(dual.almost_positive):
        raise AssertionError("coroots of the roots are not the roots of the dual system")
    coroots = list(dual.almost_positive)
    n = b.n
    frozen = [tuple(eps[i] * c[i] for i in range(n)) for c in coroots]
    labels = b.col_labels + tuple(_coroot_label(c) for c in coroots)
    u = ExchangeMatrix.from_rows(b.principal, frozen, labels)
    if not is_gluing_free(u):
        raise AssertionError("universal matrix has repeated frozen rows")
    return UniversalMatrix(u, eps, tuple(coroots), dual)


def frozen_tau_symmetry(u: UniversalMatrix, sign: int) -> tuple[int, ...]:
    """Frozen permutation rho with mu_sign(U), rows moved by rho, equal to -U.

    rho sends the row of c to the row of tau_{-sign}(c) on the dual system.
    Raises AssertionError if the identity fails.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    pos = {c: f for f, c in enumerate(u.coroots)}
    rho = tuple(pos[tau(u.dual, u.sign, -sign, c)] for c in u.coroots)
    mutated = u.base
    for k in u.sign.indices(sign):
        mutated = mutate_matrix(mutated, k)
    # row f of mu_sign(U) equals -(row rho(f) of U)
    for f, r in enumerate(rho):
        if mutated.entries[u.n + f] != tuple(-v for v in u.base.entries[u.n + r]):
            raise AssertionError("frozen rows are not permuted by tau")
    if mutated.principal != tuple(tuple(-v for v in row) for row in u.base.principal):
        raise AssertionError("principal part did not change sign")
    return rho


def specialize(seed: LabeledSeed) -> LabeledSeed:
    """Set every frozen variable to 1 and drop the frozen rows."""
    n = seed.matrix.n
    amb = seed.ambient[:n]
    gens = LaurentPoly.gens(amb)
    images = gens + [LaurentPoly.const(amb, 1)] * (len(seed.ambient) - n)
    ex = tuple(p.substitute(images, amb) for p in seed.exchangeables)
    return LabeledSeed(ex, (), seed.matrix.principal_part())


def restriction_map(g_univ: ExchangeGraph, g_plain: ExchangeGraph) -> tuple[int, ...]:
    """Variable ids of g_plain obtained by specializing each variable of g_univ."""
    n = g_univ.n
    amb = g_plain.initial_seed.ambient
    images = LaurentPoly.gens(amb) + [LaurentPoly.const(amb, 1)] * (len(g_univ.initial_seed.ambient) - n)
    out = []
    for p in g_univ.variables:
        v = g_plain.variable_id(p.substitute(images, amb))
        if v is None:
            raise AssertionError("specialized variable is not a cluster variable")
        out.append(v)
    return tuple(out)


def aut_univ(u: UniversalMatrix, cap: int | None = None, exhaustive: bool = False) -> tuple[AutGroup, dict]:
    """Automorphisms of the algebra with universal coefficients.

    Returns the group and a report comparing it with the coefficient-free
    group through specialization.
    """
    g = exchange_graph(initial_seed(u.base), cap=cap if cap is not None else DEFAULT_CAP)
    group = aut_group(g, identify=False, exhaustive=exhaustive)
    plain = exchange_graph(u.base.principal_part())
    plain_group = aut_group(plain, identify=False)
    spec = restriction_map(g, plain)
    bijective = sorted(spec) == list(range(len(plain.variables)))
    images = set()
    well_defined = True
    for a in group.elements:
        perm = [-1] * len(plain.variables)
        for v, w in enumerate(a.perm):
            perm[spec[v]] = spec[w]
        if -1 in perm:
            well_defined = False
            continue
        images.add(ClusterAutomorphism(tuple(perm), a.direct))
    report = {
        "order": group.order,
        "coefficient_free_order": plain_group.order,
        "specialization_bijective_on_variables": bijective,
        "restriction_well_defined": well_defined,
        "restriction_bijective": images == set(plain_group.elements) and len(images) == group.order,
        "gluing_free_everywhere": all(is_gluing_free(s.matrix) for s in g.seeds),
        "seeds": len(g),
    }
    return group, report


def sign_dependence(b: ExchangeMatrix) -> dict:
    """Compare the universal matrices built from B (with its sign) and from -B.

    -B has the opposite sign function, so the two constructions are the only
    choices for a given underlying diagram.
    """
    u1 = universal_matrix(b)
    u2 = universal_matrix(-b.principal_part())
    neg = u2.base.entries == tuple(tuple(-v for v in r) for r in u1.base.entries)
    direct = bool(matrix_isomorphisms(u1.base, u2.base, 1))
    mutated = u1.base
    for k in u1.sign.indices(-1):
        mutated = mutate_matrix(mutated, k)
    via_mutation = bool(matrix_isomorphisms(mutated, u2.base, 1))
    return {"negatives": neg, "isomorphic": direct, "related_by_mutation": via_mutation}

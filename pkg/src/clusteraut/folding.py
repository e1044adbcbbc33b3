"""Folding simply-laced bipartite exchange matrices by quiver automorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automorphism import AutGroup, ClusterAutomorphism, extend_seed_map, transport_seed_map
from .laurent import LaurentPoly
from .matrix import ExchangeMatrix, SignFunction, bipartite_sign, matrix_isomorphisms
from .pattern import ExchangeGraph
from .roots import RootSystem, tau

__all__ = [
    "QuiverAutGroup",
    "FoldedSeed",
    "quiver_aut_group",
    "fold_matrix",
    "project_variable",
    "project_root",
    "invariant_seeds",
    "check_projection",
    "quotient_aut_check",
    "check_tau_commutes",
]


@dataclass(frozen=True)
class QuiverAutGroup:
    """Vertex permutations preserving B, and the orbit map onto the folded indices."""

    elements: tuple[tuple[int, ...], ...]
    orbits: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def orbit_map(self) -> tuple[int, ...]:
        n = sum(len(o) for o in self.orbits)
        out = [0] * n
        for k, orb in enumerate(self.orbits):
            for i in orb:
                out[i] = k
        return tuple(out)


def _orbits(n: int, elements: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    seen: set[int] = set()
    out = []
    for i in range(n):
        if i in seen:
            continue
        orb = tuple(sorted({p[i] for p in elements}))
        seen.update(orb)
        out.append(orb)
    return tuple(out)


def subgroup(elements: Sequence[Sequence[int]]) -> QuiverAutGroup:
    """Wrap a set of vertex permutations closed under composition."""
    elements = tuple(sorted(tuple(p) for p in elements))
    return QuiverAutGroup(elements, _orbits(len(elements[0]), elements))


def quiver_aut_group(b: ExchangeMatrix) -> QuiverAutGroup:
    """All permutations s with b[s(j)][s(i)] = b[j][i] of a bipartite simply-laced B."""
    if b.m != b.n:
        raise ValueError("folding needs a coefficient-free matrix")
    if any(abs(v) > 1 for r in b.entries for v in r):
        raise ValueError("matrix is not simply laced")
    if bipartite_sign(b) is None:
        raise ValueError("matrix is not bipartite")
    return subgroup(rel.exchangeable for rel in matrix_isomorphisms(b, b, 1))


def fold_matrix(b: ExchangeMatrix, group: QuiverAutGroup) -> ExchangeMatrix:
    """b_IJ = sum over k in I of b[k][j] for any j in J (checked for every j)."""
    orbits = group.orbits
    rows = []
    for big_i in orbits:
        row = []
        for big_j in orbits:
            vals = {sum(b.entries[k][j] for k in big_i) for j in big_j}
            if len(vals) != 1:
                raise ValueError("folded entry depends on the representative")
            row.append(vals.pop())
        rows.append(row)
    return ExchangeMatrix.from_rows(rows)


def project_variable(p: LaurentPoly, group: QuiverAutGroup, ambient: Sequence[str]) -> LaurentPoly:
    """Substitute x_i -> x_{orbit(i)}."""
    gens = LaurentPoly.gens(ambient)
    return p.substitute([gens[k] for k in group.orbit_map], ambient)


def project_root(alpha: Sequence[int], group: QuiverAutGroup) -> tuple[int, ...]:
    return tuple(sum(alpha[i] for i in orb) for orb in group.orbits)


def _vertex_automorphisms(g: ExchangeGraph, group: QuiverAutGroup) -> list[ClusterAutomorphism]:
    init = g.clusters[g.initial]
    out = []
    for p in group.elements:
        a = extend_seed_map(g, [init[p[i]] for i in range(len(p))], 1)
        if a is None:
            raise AssertionError("a quiver automorphism did not extend")
        out.append(a)
    return out


@dataclass(frozen=True)
class FoldedSeed:
    """A G-invariant seed, labeled so that g(x_i) = x_{g(i)}, with its projection."""

    seed: int
    labeling: tuple[int, ...]
    matrix: ExchangeMatrix
    projection: tuple[LaurentPoly, ...]
    folded_matrix: ExchangeMatrix


def _equivariant_labeling(cluster: Sequence[int], group: QuiverAutGroup, autos: Sequence[ClusterAutomorphism]) -> tuple[int, ...] | None:
    n = len(cluster)
    members = set(cluster)
    if any(a.perm[v] not in members for a in autos for v in cluster):
        return None
    lab: list[int] = [-1] * n
    used: set[int] = set()
    order = sorted(range(n))

    def consistent() -> bool:
        for p, a in zip(group.elements, autos):
            for i in range(n):
                if lab[i] >= 0 and lab[p[i]] >= 0 and a.perm[lab[i]] != lab[p[i]]:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for v in sorted(cluster):
            if v in used:
                continue
            lab[i] = v
            used.add(v)
            if consistent() and extend(k + 1):
                return True
            used.discard(v)
            lab[i] = -1
        return False

    return tuple(lab) if extend(0) else None


def invariant_seeds(g: ExchangeGraph, group: QuiverAutGroup, ambient: Sequence[str] | None = None) -> list[FoldedSeed]:
    """Seeds fixed by G with an equivariant labeling, and their projections."""
    autos = _vertex_automorphisms(g, group)
    k = len(group.orbits)
    ambient = tuple(ambient or (f"x{i + 1}" for i in range(k)))
    out = []
    for s, c in enumerate(g.clusters):
        lab = _equivariant_labeling(c, group, autos)
        if lab is None:
            continue
        pos = {v: i for i, v in enumerate(c)}
        # seeds[s] has variable c[j] at position j; move it to label position
        where = [0] * len(c)
        for i, v in enumerate(lab):
            where[pos[v]] = i
        mat = g.seeds[s].matrix.relabel(where)
        for p in group.elements:
            if mat.relabel(p).entries != mat.entries:
                raise AssertionError("invariant seed with a non-invariant matrix")
        proj = []
        for orb in group.orbits:
            imgs = {project_variable(g.variables[lab[i]], group, ambient) for i in orb}
            if len(imgs) != 1:
                raise AssertionError("projection depends on the orbit representative")
            proj.append(imgs.pop())
        out.append(FoldedSeed(s, lab, mat, tuple(proj), fold_matrix(mat, group)))
    return out


def check_projection(folded: Sequence[FoldedSeed], g_small: ExchangeGraph) -> dict:
    """Compare projected invariant seeds with the seeds of the folded algebra."""
    projected = {}
    for fs in folded:
        ids = [g_small.variable_id(p) for p in fs.projection]
        key = frozenset(ids) if None not in ids else None
        ok = key is not None and g_small.seed_of_cluster(ids) is not None
        if ok:
            t = g_small.seed_of_cluster(ids)
            pos = [g_small.clusters[t].index(v) for v in ids]
            inv = [0] * len(pos)
            for i, p in enumerate(pos):
                inv[p] = i
            ok = g_small.seeds[t].matrix.relabel(inv).entries == fs.folded_matrix.entries
        projected[fs.seed] = (key, ok)
    keys = [k for k, _ in projected.values()]
    targets = set(g_small.cluster_sets())
    return {
        "invariant_seeds": len(folded),
        "folded_seeds": len(g_small),
        "all_project_to_seeds": all(ok for _, ok in projected.values()),
        "bijective": len(set(keys)) == len(keys) and set(keys) == targets,
    }


def check_tau_commutes(rs_big: RootSystem, eps_big: SignFunction, rs_small: RootSystem, group: QuiverAutGroup) -> bool:
    """pi(tau_+-(alpha)) = tau_+-(pi(alpha)) on every almost positive root, and
    pi maps the almost positive roots onto those of the folded system."""
    eps_small = SignFunction(tuple(eps_big[orb[0]] for orb in group.orbits))
    for sign in (1, -1):
        for alpha in rs_big.almost_positive:
            lhs = project_root(tau(rs_big, eps_big, sign, alpha), group)
            if lhs != tau(rs_small, eps_small, sign, project_root(alpha, group)):
                return False
    return {project_root(a, group) for a in rs_big.almost_positive} == set(rs_small.almost_positive)


def quotient_aut_check(
    aut_big: AutGroup,
    g_big: ExchangeGraph,
    group: QuiverAutGroup,
    aut_small: AutGroup,
    g_small: ExchangeGraph,
) -> dict:
    """Check that G is normal in Aut(big) and Aut(big) -> Aut(small) is onto with kernel G."""
    autos = _vertex_automorphisms(g_big, group)
    gset = frozenset(autos)
    elements = set(aut_big.elements)
    contained = gset <= elements
    normal = contained and all(a * x * a.inverse() in gset for a in aut_big.elements for x in autos)
    ambient = g_small.initial_seed.ambient
    init = g_big.clusters[g_big.initial]
    small = set(aut_small.elements)
    image = {}
    for a in aut_big.elements:
        ims = []
        for orb in group.orbits:
            cands = {project_variable(g_big.variables[a.perm[init[i]]], group, ambient) for i in orb}
            if len(cands) != 1:
                raise AssertionError("projected automorphism depends on the representative")
            ims.append(cands.pop())
        ids = [g_small.variable_id(p) for p in ims]
        if None in ids:
            raise AssertionError("projected image is not a cluster variable")
        # an automorphism is fixed by the image of the initial cluster
        b = ClusterAutomorphism(transport_seed_map(g_small, ids), a.direct)
        if b not in small:
            raise AssertionError("projected map is not an automorphism of the folded algebra")
        image[a] = b
    homomorphism = all(image[a * b] == image[a] * image[b] for a in aut_big.elements for b in aut_big.elements)
    kernel = {a for a in aut_big.elements if image[a].is_identity()}
    onto = set(image.values()) == set(aut_small.elements)
    return {
        "aut_big": aut_big.order,
        "group": group.order,
        "aut_small": aut_small.order,
        "order_law": aut_big.order == group.order * aut_small.order,
        "normal": normal,
        "homomorphism": homomorphism,
        "surjective": onto,
        "kernel_is_group": kernel == set(gset),
    }

"""Cluster automorphisms as permutations of the cluster-variable set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .dynkin import classify_cartan
from .laurent import LaurentPoly, NonExactDivision
from .matrix import SignFunction, bipartite_sign, cartan_counterpart, matrix_isomorphisms
from .pattern import ExchangeGraph, NotBipartite, composite_mutation
from .roots import RootSystem, tau

__all__ = [
    "ClusterAutomorphism",
    "AutGroup",
    "extend_seed_map",
    "transport_seed_map",
    "aut_group",
    "tau_automorphisms",
    "f0_automorphism",
    "exceptional_automorphism",
    "fork_swaps",
    "identify_structure",
    "is_graph_automorphism",
    "check_tau_law",
    "generate",
    "identity",
]

Perm = tuple[int, ...]


@dataclass(frozen=True, order=True)
class ClusterAutomorphism:
    """An automorphism given by where it sends each variable id.

    ``perm[v]`` is the image of variable ``v`` of the exchange graph;
    ``frozen[f]`` the image of frozen variable ``f``.  ``direct`` is True
    when the image of the initial matrix is B and False when it is -B.
    """

    perm: Perm
    direct: bool
    frozen: Perm = ()

    def __mul__(self, other: ClusterAutomorphism) -> ClusterAutomorphism:
        """(self * other)(x) = self(other(x))."""
        return ClusterAutomorphism(
            tuple(self.perm[v] for v in other.perm),
            self.direct == other.direct,
            tuple(self.frozen[f] for f in other.frozen),
        )

    def inverse(self) -> ClusterAutomorphism:
        inv = [0] * len(self.perm)
        for v, w in enumerate(self.perm):
            inv[w] = v
        finv = [0] * len(self.frozen)
        for f, r in enumerate(self.frozen):
            finv[r] = f
        return ClusterAutomorphism(tuple(inv), self.direct, tuple(finv))

    def __call__(self, v: int) -> int:
        return self.perm[v]

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.perm)) and all(f == r for f, r in enumerate(self.frozen))

    def order(self) -> int:
        k, cur = 1, self
        while not cur.is_identity():
            cur = cur * self
            k += 1
        return k

    def power(self, e: int) -> ClusterAutomorphism:
        out = identity(len(self.perm), len(self.frozen))
        for _ in range(e):
            out = self * out
        return out

    def to_json(self) -> dict:
        out = {"perm": list(self.perm), "direct": self.direct}
        if self.frozen:
            out["frozen"] = list(self.frozen)
        return out


def identity(n_vars: int, n_frozen: int = 0) -> ClusterAutomorphism:
    return ClusterAutomorphism(tuple(range(n_vars)), True, tuple(range(n_frozen)))


def generate(gens: Iterable[ClusterAutomorphism]) -> frozenset[ClusterAutomorphism]:
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    e = identity(len(gens[0].perm), len(gens[0].frozen))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = s * a
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def _as_polys(g: ExchangeGraph, images: Sequence[LaurentPoly | int]) -> list[LaurentPoly]:
    return [g.variables[v] if isinstance(v, int) else v for v in images]


def extend_seed_map(
    g: ExchangeGraph,
    images: Sequence[LaurentPoly | int],
    sign: int,
    frozen_images: Sequence[int] | None = None,
) -> ClusterAutomorphism | None:
    """Extend x_i -> images[i] to all of the variable set by substitution.

    ``images`` (polynomials or variable ids) must be the cluster of some seed
    whose matrix, reordered accordingly, is ``sign * B``.  ``frozen_images``
    permutes frozen variables (identity by default).  Returns None if some
    substituted variable is not a cluster variable.
    """
    init = g.initial_seed
    b0 = init.matrix
    n, nf = b0.n, b0.m - b0.n
    ims = _as_polys(g, images)
    if len(ims) != n:
        raise ValueError(f"need {n} images")
    ids = [g.variable_id(p) for p in ims]
    if None in ids or g.seed_of_cluster(ids) is None:
        raise ValueError("images are not a cluster")
    t = g.seed_of_cluster(ids)
    target = g.seeds[t]
    fperm = tuple(frozen_images) if frozen_images is not None else tuple(range(nf))
    pos = [g.clusters[t].index(v) for v in ids]
    inv = [0] * n
    for i, p in enumerate(pos):
        inv[p] = i
    want = target.matrix.relabel(inv, _inverse(fperm)) if nf else target.matrix.relabel(inv)
    if want.entries != tuple(tuple(sign * v for v in r) for r in b0.entries):
        raise ValueError("images do not carry the matrix sign * B")
    full = ims + [init.frozens[r] for r in fperm]
    perm = []
    for p in g.variables:
        try:
            q = p.substitute(full, init.ambient)
        except NonExactDivision:
            return None
        vid = g.variable_id(q)
        if vid is None:
            return None
        perm.append(vid)
    if len(set(perm)) != len(perm):
        return None
    return ClusterAutomorphism(tuple(perm), sign == 1, fperm)


def _inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def transport_seed_map(g: ExchangeGraph, images: Sequence[int]) -> Perm:
    """Extend initial variable i -> images[i] along mutation paths.

    A purely combinatorial cross-check for :func:`extend_seed_map`: if seed
    u maps to seed u', mutating u at a variable maps to mutating u' at the
    image variable.
    """
    f: dict[int, int] = dict(zip(g.clusters[g.initial], images))
    start = g.seed_of_cluster(images)
    if start is None:
        raise ValueError("images are not a cluster")
    seat = {g.initial: start}
    stack = [g.initial]
    while stack:
        u = stack.pop()
        t = seat[u]
        for k, u2 in enumerate(g.neighbors[u]):
            old = g.clusters[u][k]
            new = next(v for v in g.clusters[u2] if v not in g.clusters[u])
            tk = g.clusters[t].index(f[old])
            t2 = g.neighbors[t][tk]
            img = next(v for v in g.clusters[t2] if v not in g.clusters[t])
            if f.setdefault(new, img) != img:
                raise AssertionError("inconsistent transport")
            if u2 not in seat:
                seat[u2] = t2
                stack.append(u2)
            elif seat[u2] != t2:
                raise AssertionError("inconsistent transport")
    return tuple(f[v] for v in range(len(g.variables)))


def is_graph_automorphism(g: ExchangeGraph, f: ClusterAutomorphism) -> bool:
    """Does f send clusters to clusters and mutation edges to mutation edges?"""
    image = []
    for c in g.clusters:
        t = g.seed_of_cluster([f.perm[v] for v in c])
        if t is None:
            return False
        image.append(t)
    edges = set(g.edges)
    return all((min(image[a], image[b]), max(image[a], image[b])) in edges for a, b in edges)


@dataclass(frozen=True)
class AutGroup:
    elements: tuple[ClusterAutomorphism, ...]
    generators: tuple[ClusterAutomorphism, ...] = ()
    structure: str = ""

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def direct(self) -> tuple[ClusterAutomorphism, ...]:
        return tuple(a for a in self.elements if a.direct)

    def __contains__(self, a: object) -> bool:
        return a in set(self.elements)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "structure": self.structure,
            "generators": [a.to_json() for a in self.generators],
        }


def _check_group(elements: Sequence[ClusterAutomorphism]) -> None:
    s = set(elements)
    for a in elements:
        if a.inverse() not in s:
            raise AssertionError("not closed under inverses")
        for b in elements:
            if a * b not in s:
                raise AssertionError("not closed under composition")
    nd = sum(1 for a in elements if a.direct)
    if nd not in (len(s), len(s) // 2):
        raise AssertionError("direct subgroup index is not 1 or 2")


def aut_group(g: ExchangeGraph, check: bool = True, identify: bool = True, exhaustive: bool = False) -> AutGroup:
    """Every cluster automorphism, from the relabeled seeds with matrix +-B.

    Each candidate seed map is extended along mutation paths.  Candidates
    are then taken cheapest first and extended by exact substitution unless
    the candidate already lies in the group generated by maps verified so
    far; a ring map is fixed by its values on the initial cluster, so such a
    candidate is a product of verified maps.  ``exhaustive`` substitutes
    every candidate.
    """
    b0 = g.initial_seed.matrix
    cands = []
    for s, seed in enumerate(g.seeds):
        for sign in (1, -1):
            for rel in matrix_isomorphisms(b0, seed.matrix, sign):
                ims = tuple(g.clusters[s][rel.exchangeable[i]] for i in range(b0.n))
                cost = sum(len(g.variables[v]) for v in ims)
                cands.append((cost, ims, sign, rel.frozen))
    cands.sort()
    verified: list[ClusterAutomorphism] = []
    closure: frozenset[ClusterAutomorphism] = frozenset()
    found = set()
    for _, ims, sign, fperm in cands:
        moved = ClusterAutomorphism(transport_seed_map(g, ims), sign == 1, tuple(fperm))
        if exhaustive or moved not in closure:
            a = extend_seed_map(g, ims, sign, fperm)
            if a is None:
                raise AssertionError("a seed map with matrix +-B did not extend")
            if a != moved:
                raise AssertionError("substitution and path transport disagree")
            if a not in closure:
                verified.append(a)
                closure = generate(verified)
        found.add(moved)
    if found != closure:
        raise AssertionError("verified automorphisms generate more than the candidates")
    elements = tuple(sorted(found))
    if check:
        _check_group(elements)
    group = AutGroup(elements)
    if identify:
        name, gens = _identify(group, g)
        group = AutGroup(elements, gens, name)
    return group


def _initial_sign(g: ExchangeGraph, eps: SignFunction | None) -> SignFunction:
    eps = eps or bipartite_sign(g.initial_seed.matrix)
    if eps is None or not eps.is_valid_for(g.initial_seed.matrix):
        raise NotBipartite("initial seed is not bipartite")
    return eps


def tau_automorphisms(g: ExchangeGraph, eps: SignFunction | None = None) -> tuple[ClusterAutomorphism, ClusterAutomorphism]:
    """(f_+, f_-): f_sign keeps x_i with eps(i) = -sign and mutates the others."""
    eps = _initial_sign(g, eps)
    init = g.initial_seed
    out = []
    for sign in (1, -1):
        seed = composite_mutation(init, eps.indices(sign))
        a = extend_seed_map(g, [g.variable_id(p) for p in seed.exchangeables], -1)
        if a is None:
            raise AssertionError("f_sign did not extend")
        out.append(a)
    return out[0], out[1]


def check_tau_law(g: ExchangeGraph, rs: RootSystem, eps: SignFunction, bijection: dict) -> bool:
    """f_+-(x_alpha) = x_{tau_+-(alpha)} on every almost positive root."""
    fp, fm = tau_automorphisms(g, eps)
    for f, sign in ((fp, 1), (fm, -1)):
        for alpha, v in bijection.items():
            if f.perm[v] != bijection[tau(rs, eps, sign, alpha)]:
                return False
    return True


def f0_automorphism(g: ExchangeGraph, rs: RootSystem, eps: SignFunction | None = None) -> ClusterAutomorphism:
    """(f_- f_+)^((h+2)/2) for even h, f_+ (f_- f_+)^((h+1)/2) for odd h."""
    h = rs.coxeter_number
    fp, fm = tau_automorphisms(g, eps)
    rot = fm * fp
    if h % 2 == 0:
        return rot.power((h + 2) // 2)
    return fp * rot.power((h + 1) // 2)


def _fork_positions(g: ExchangeGraph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    found = classify_cartan(cartan_counterpart(g.initial_seed.matrix).entries)
    if found is None or found[0].family != "D" or found[0].rank % 2:
        return None
    lab, p = found
    inv = _inverse(p)
    n = lab.rank
    return (inv[n - 2], inv[n - 1]), (inv[0], inv[n - 2])


def _swap_images(g: ExchangeGraph, i: int, j: int) -> ClusterAutomorphism:
    ids = list(g.clusters[g.initial])
    ids[i], ids[j] = ids[j], ids[i]
    a = extend_seed_map(g, ids, 1)
    if a is None:
        raise AssertionError("fork swap did not extend")
    return a


def exceptional_automorphism(g: ExchangeGraph) -> ClusterAutomorphism | None:
    """For type D_2n: the direct automorphism swapping the two fork leaves."""
    pos = _fork_positions(g)
    if pos is None:
        return None
    return _swap_images(g, *pos[0])


def fork_swaps(g: ExchangeGraph) -> tuple[ClusterAutomorphism, ClusterAutomorphism] | None:
    """For type D_4: two leaf transpositions, which generate S_3."""
    pos = _fork_positions(g)
    if pos is None or len(g.initial_seed.exchangeables) != 4:
        return None
    return _swap_images(g, *pos[0]), _swap_images(g, *pos[1])


def _is_dihedral_pair(a: ClusterAutomorphism, b: ClusterAutomorphism) -> int | None:
    if not (a * a).is_identity() or not (b * b).is_identity():
        return None
    return (a * b).order()


def identify_structure(group: AutGroup, g: ExchangeGraph) -> str:
    return _identify(group, g)[0]


def _identify(group: AutGroup, g: ExchangeGraph) -> tuple[str, tuple[ClusterAutomorphism, ...]]:
    order = group.order
    try:
        fp, fm = tau_automorphisms(g)
    except NotBipartite:
        return f"order {order}", ()
    m = _is_dihedral_pair(fm, fp)
    d_tau = generate([fm, fp])
    if m is None or len(d_tau) != 2 * m:
        return f"order {order}", ()
    elements = set(group.elements)
    if not d_tau <= elements:
        return f"order {order}", ()
    if len(d_tau) == order:
        return f"D{m}", (fm, fp)
    swaps = fork_swaps(g)
    if swaps is not None:
        s3 = generate(swaps)
        if len(s3) == 6 and _is_direct_product(d_tau, s3, elements):
            return f"D{m} x S3", (fm, fp) + swaps
    ex = exceptional_automorphism(g)
    if ex is not None:
        z2 = generate([ex])
        if len(z2) == 2 and _is_direct_product(d_tau, z2, elements):
            return f"D{m} x Z2", (fm, fp, ex)
    return f"order {order}", ()


def _is_direct_product(h: frozenset, k: frozenset, whole: set) -> bool:
    if len(h & k) != 1:
        return False
    if any(a * b != b * a for a in h for b in k):
        return False
    return len(h) * len(k) == len(whole) and {a * b for a in h for b in k} == whole

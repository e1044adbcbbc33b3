"""Finite root systems, the piecewise-linear maps sigma_i and tau_+-, and d-vectors.

Roots are integer coefficient tuples in the basis of simple roots.  The
almost positive roots are the positive roots together with the negated
simple roots.  Nothing here uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .dynkin import DynkinLabel, classify_cartan, exponents, parse_label, standard_cartan
from .matrix import CartanMatrix, SignFunction, find_symmetrizer, principal_from_cartan

__all__ = [
    "RootSystem",
    "TauGroup",
    "NotAlmostPositive",
    "build_root_system",
    "root_system_from_cartan",
    "simple_reflection",
    "sigma",
    "tau",
    "tau_group",
    "tau_as_sigma_product",
    "tau_permutation",
    "longest_involution",
    "d_vector_walk",
    "window_cover",
    "format_root",
    "standard_sign",
    "standard_exchange_matrix",
]

Root = tuple[int, ...]


class NotAlmostPositive(ValueError):
    pass


def format_root(alpha: Sequence[int], name: str = "alpha") -> str:
    nz = [(j, c) for j, c in enumerate(alpha) if c]
    if len(nz) == 1 and nz[0][1] == -1:
        return f"-{name}{nz[0][0] + 1}"
    parts = []
    for j, c in nz:
        term = f"{name}{j + 1}" if abs(c) == 1 else f"{abs(c)}*{name}{j + 1}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) or "0"


@dataclass(frozen=True)
class RootSystem:
    """Root data of a finite-type Cartan matrix.

    ``cartan.entries[i][j]`` is ``a_ij``; the reflection is
    ``s_i(alpha_j) = alpha_j - a_ij alpha_i``.
    """

    cartan: CartanMatrix
    positives: tuple[Root, ...]
    exponents: tuple[int, ...]
    label: DynkinLabel
    standard_map: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.cartan.n

    @property
    def coxeter_number(self) -> int:
        return max(self.exponents) + 1

    @property
    def simples(self) -> tuple[Root, ...]:
        n = self.n
        return tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))

    @property
    def negative_simples(self) -> tuple[Root, ...]:
        return tuple(tuple(-v for v in s) for s in self.simples)

    @cached_property
    def almost_positive(self) -> tuple[Root, ...]:
        """Negative simples in index order, then positives by height."""
        return self.negative_simples + self.positives

    @cached_property
    def _ap_set(self) -> frozenset[Root]:
        return frozenset(self.almost_positive)

    def is_almost_positive(self, alpha: Sequence[int]) -> bool:
        return tuple(alpha) in self._ap_set

    def index(self, alpha: Sequence[int]) -> int:
        return self.almost_positive.index(tuple(alpha))

    @cached_property
    def symmetrizer(self) -> tuple[int, ...]:
        """d with d_i a_ij = d_j a_ji; proportional to squared root lengths."""
        a = self.cartan.entries
        # D*A symmetric is D*(-A offdiag) skew on the antisymmetrized sign pattern
        skew = [[0 if i == j else (a[i][j] if i < j else -a[i][j]) for j in range(self.n)] for i in range(self.n)]
        d = find_symmetrizer(skew)
        assert d is not None
        return d

    def norm(self, alpha: Sequence[int]) -> Fraction:
        """(alpha, alpha) normalised so that (alpha_i, alpha_i) = 2 d_i."""
        a, d = self.cartan.entries, self.symmetrizer
        n = self.n
        return Fraction(sum(alpha[i] * alpha[j] * d[i] * a[i][j] for i in range(n) for j in range(n)))

    def coroot(self, alpha: Sequence[int]) -> Root:
        """Coordinates of alpha-check in the simple coroot basis."""
        d = self.symmetrizer
        nrm = self.norm(alpha)
        out = []
        for j, c in enumerate(alpha):
            v = Fraction(2 * c * d[j]) / nrm
            assert v.denominator == 1
            out.append(int(v))
        return tuple(out)

    @cached_property
    def dual(self) -> RootSystem:
        return root_system_from_cartan(tuple(zip(*self.cartan.entries)))

    def to_json(self) -> dict:
        return {
            "type": str(self.label),
            "cartan": [list(r) for r in self.cartan.entries],
            "coxeter_number": self.coxeter_number,
            "exponents": list(self.exponents),
            "positive_roots": [list(r) for r in self.positives],
            "almost_positive_count": len(self.almost_positive),
        }


def _positive_closure(a: Sequence[Sequence[int]]) -> tuple[Root, ...]:
    n = len(a)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                gamma = _reflect(a, i, beta)
                if gamma != beta and all(c >= 0 for c in gamma) and gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return tuple(sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r))))


def _reflect(a: Sequence[Sequence[int]], i: int, alpha: Sequence[int]) -> Root:
    # s_i(alpha) = alpha - <alpha_i^vee, alpha> alpha_i with <alpha_i^vee, alpha_j> = a_ij
    pairing = sum(a[i][j] * alpha[j] for j in range(len(alpha)))
    out = list(alpha)
    out[i] -= pairing
    return tuple(out)


def root_system_from_cartan(a: Sequence[Sequence[int]]) -> RootSystem:
    a = tuple(tuple(int(v) for v in r) for r in a)
    found = classify_cartan(a)
    if found is None:
        raise ValueError("Cartan matrix is not of finite type")
    label, smap = found
    positives = _positive_closure(a)
    rs = RootSystem(CartanMatrix(a, label), positives, exponents(label), label, smap)
    if len(positives) * 2 != rs.n * rs.coxeter_number:
        raise AssertionError(f"{label}: {len(positives)} positive roots, expected n*h/2")
    return rs


def build_root_system(label: str | DynkinLabel) -> RootSystem:
    """Root system for a Dynkin label in the standard vertex numbering."""
    return root_system_from_cartan(standard_cartan(parse_label(label)))


def standard_sign(rs: RootSystem) -> SignFunction:
    """The bipartition with vertex 1 a source."""
    a = rs.cartan.entries
    n = rs.n
    signs = [0] * n
    signs[0] = 1
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and a[i][j] and not signs[j]:
                signs[j] = -signs[i]
                stack.append(j)
    return SignFunction(tuple(signs))


def simple_reflection(rs: RootSystem, i: int, alpha: Sequence[int]) -> Root:
    return _reflect(rs.cartan.entries, i, alpha)


def _check(rs: RootSystem, alpha: Sequence[int]) -> Root:
    alpha = tuple(alpha)
    if not rs.is_almost_positive(alpha):
        raise NotAlmostPositive(f"{alpha} is not an almost positive root")
    return alpha


def sigma(rs: RootSystem, i: int, alpha: Sequence[int]) -> Root:
    """alpha if alpha is a negative simple other than -alpha_i, else s_i(alpha)."""
    alpha = _check(rs, alpha)
    if sum(alpha) == -1 and alpha[i] == 0:
        return alpha
    return simple_reflection(rs, i, alpha)


def _tau_raw(a: Sequence[Sequence[int]], eps: SignFunction, sign: int, alpha: Root) -> Root:
    out = list(alpha)
    for i, s in enumerate(eps.signs):
        if s != sign:
            continue
        out[i] = -alpha[i] - sum(a[i][j] * max(alpha[j], 0) for j in range(len(alpha)) if j != i)
    return tuple(out)


def tau(rs: RootSystem, eps: SignFunction, sign: int, alpha: Sequence[int]) -> Root:
    """tau_+ (sign=+1) or tau_- (sign=-1) by the coordinate formula."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return _tau_raw(rs.cartan.entries, eps, sign, _check(rs, alpha))


def tau_as_sigma_product(rs: RootSystem, eps: SignFunction, sign: int, alpha: Sequence[int]) -> Root:
    """The same map computed as the product of sigma_i over eps(i) = sign."""
    out = _check(rs, alpha)
    for i in eps.indices(sign):
        out = sigma(rs, i, out)
    return out


def tau_permutation(rs: RootSystem, eps: SignFunction, sign: int) -> tuple[int, ...]:
    """tau_sign as a permutation of indices into ``rs.almost_positive``."""
    ap = rs.almost_positive
    pos = {r: k for k, r in enumerate(ap)}
    return tuple(pos[tau(rs, eps, sign, r)] for r in ap)


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p o q)(x) = p[q[x]]."""
    return tuple(p[x] for x in q)


def _perm_order(p: Sequence[int]) -> int:
    ident = tuple(range(len(p)))
    k, cur = 1, tuple(p)
    while cur != ident:
        cur = _compose(p, cur)
        k += 1
    return k


@dataclass(frozen=True)
class TauGroup:
    tau_plus: tuple[int, ...]
    tau_minus: tuple[int, ...]
    order: int
    rotation_order: int
    elements: frozenset[tuple[int, ...]] = field(repr=False)

    @property
    def dihedral_name(self) -> str:
        return f"D{self.rotation_order}"


def _generate(gens: Sequence[Sequence[int]]) -> frozenset[tuple[int, ...]]:
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _compose(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(seen)


def tau_group(rs: RootSystem, eps: SignFunction) -> TauGroup:
    """The group generated by tau_+ and tau_- acting on the almost positive roots."""
    tp = tau_permutation(rs, eps, 1)
    tm = tau_permutation(rs, eps, -1)
    rot = _perm_order(_compose(tm, tp))
    elements = _generate([tp, tm])
    return TauGroup(tp, tm, len(elements), rot, elements)


def d_vector_walk(rs: RootSystem, eps: SignFunction, i: int, r: int) -> Root:
    """d(i; r): alternating tau-products applied to -alpha_i.

    Requires eps(i) = (-1)^r.  For r >= 0 the product has r factors,
    leftmost tau_-; for r <= -1 it has -r-1 factors, leftmost tau_+.
    """
    if eps[i] != (-1) ** (r % 2):
        raise ValueError(f"parity mismatch: eps({i}) = {eps[i]} but r = {r}")
    a = rs.cartan.entries
    if r >= 0:
        count, first = r, eps[i]
    else:
        count, first = -r - 1, eps[i]
    alpha: Root = tuple(-1 if j == i else 0 for j in range(rs.n))
    # the rightmost factor is tau_{eps(i)}; factors alternate leftwards
    s = first
    for _ in range(count):
        alpha = _tau_raw(a, eps, s, alpha)
        s = -s
    return alpha


def longest_involution(rs: RootSystem, eps: SignFunction) -> tuple[int, ...]:
    """The map i -> i* with w0(alpha_i) = -alpha_{i*}, read off the d-vector walk."""
    h = rs.coxeter_number
    n = rs.n
    star = [-1] * n
    for i in range(n):
        r = h + 1 if eps[i] == (-1) ** ((h + 1) % 2) else -h - 2
        d = d_vector_walk(rs, eps, i, r)
        if sum(d) != -1 or min(d) != -1:
            raise AssertionError(f"d({i};{r}) = {d} is not a negative simple root")
        star[i] = d.index(-1)
    if sorted(star) != list(range(n)) or any(star[star[i]] != i for i in range(n)):
        raise AssertionError(f"computed i -> i* = {star} is not an involution")
    return tuple(star)


def window_cover(rs: RootSystem, eps: SignFunction, lo: int = -1, hi: int | None = None) -> list[tuple[int, int, Root]]:
    """All (i, r, d(i; r)) with lo <= r <= hi and matching parity.

    The default window ``-1 <= r <= h`` lists every almost positive root once.
    """
    hi = rs.coxeter_number if hi is None else hi
    out = []
    for i in range(rs.n):
        for r in range(lo, hi + 1):
            if eps[i] == (-1) ** (r % 2):
                out.append((i, r, d_vector_walk(rs, eps, i, r)))
    return out


def standard_exchange_matrix(label: str | DynkinLabel):
    """The bipartite exchange matrix of a type with vertex 1 a source, and its sign."""
    rs = build_root_system(label)
    eps = standard_sign(rs)
    return principal_from_cartan(rs.cartan.entries, eps.signs), eps

"""Extended exchange matrices and their combinatorics.

An :class:`ExchangeMatrix` is an m x n integer matrix ``B = (b_ji)``; the
first n rows form the square principal part, the remaining m - n rows are
frozen.  Indices are 0-based throughout the Python API (the CLI and the
default labels ``x1, x2, ...`` are 1-based).

Valued-quiver convention: ``b_ji > 0`` draws an arrow j -> i, annotated with
``(|b_ji|, |b_ij|)`` when that pair differs from (1, 1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import gcd, lcm
from typing import Iterable, NamedTuple, Sequence

from .dynkin import DynkinLabel, classify_cartan

__all__ = [
    "ExchangeMatrix",
    "CartanMatrix",
    "SignFunction",
    "Relabeling",
    "InvalidMatrix",
    "find_symmetrizer",
    "mutate_matrix",
    "cartan_counterpart",
    "bipartite_sign",
    "is_gluing_free",
    "matrix_isomorphisms",
    "quiver_dot",
    "parse_matrix_text",
    "principal_from_cartan",
]

Rows = tuple[tuple[int, ...], ...]


class InvalidMatrix(ValueError):
    """The data does not describe a valid extended exchange matrix."""


def _square(rows: Sequence[Sequence[int]]) -> Rows:
    rows = tuple(tuple(int(v) for v in r) for r in rows)
    if any(len(r) != len(rows) for r in rows):
        raise InvalidMatrix("expected a square matrix")
    return rows


def _components(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(adj)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if not seen[w] and (adj[v][w] or adj[w][v]):
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def find_symmetrizer(b: ExchangeMatrix | Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Minimal positive integer diagonal D with D * B^ex skew-symmetric, or None."""
    rows = b.principal if isinstance(b, ExchangeMatrix) else _square(b)
    n = len(rows)
    for i in range(n):
        if rows[i][i] != 0:
            return None
        for j in range(n):
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                return None
            if rows[i][j] and (rows[i][j] > 0) == (rows[j][i] > 0):
                return None
    d: list[Fraction | None] = [None] * n
    for comp in _components(rows):
        d[comp[0]] = Fraction(1)
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in range(n):
                if rows[i][j] and d[j] is None:
                    # d_i b_ij = -d_j b_ji
                    d[j] = d[i] * rows[i][j] / -rows[j][i]
                    stack.append(j)
        scale = lcm(*(d[i].denominator for i in comp))
        ints = [int(d[i] * scale) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            d[i] = Fraction(v // g)
    out = tuple(int(x) for x in d)
    for i in range(n):
        for j in range(n):
            if out[i] * rows[i][j] != -out[j] * rows[j][i]:
                return None
    return out


@dataclass(frozen=True)
class ExchangeMatrix:
    """Extended skew-symmetrizable matrix with labeled rows.

    ``entries`` has m rows of length n; rows ``0..n-1`` are exchangeable.
    Construction checks skew-symmetrizability of the principal part,
    ``m >= n >= 2`` and indecomposability of both B and B^ex.
    """

    entries: Rows
    n_exchangeable: int
    row_labels: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        entries = tuple(tuple(int(v) for v in r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        n = self.n_exchangeable
        if not self.row_labels:
            labels = tuple(f"x{i + 1}" for i in range(n)) + tuple(f"y{i + 1}" for i in range(len(entries) - n))
            object.__setattr__(self, "row_labels", labels)
        else:
            object.__setattr__(self, "row_labels", tuple(str(s) for s in self.row_labels))
        self._validate()

    @classmethod
    def _raw(cls, entries: Rows, n: int, labels: tuple[str, ...]) -> ExchangeMatrix:
        obj = object.__new__(cls)
        object.__setattr__(obj, "entries", entries)
        object.__setattr__(obj, "n_exchangeable", n)
        object.__setattr__(obj, "row_labels", labels)
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], frozen: Sequence[Sequence[int]] = (), labels: Sequence[str] | None = None) -> ExchangeMatrix:
        rows = [list(r) for r in rows]
        return cls(tuple(map(tuple, rows + [list(r) for r in frozen])), len(rows), tuple(labels or ()))

    def _validate(self) -> None:
        m, n = self.m, self.n_exchangeable
        if n < 2:
            raise InvalidMatrix("need at least two exchangeable rows")
        if m < n:
            raise InvalidMatrix("fewer rows than exchangeable indices")
        if any(len(r) != n for r in self.entries):
            raise InvalidMatrix(f"every row must have {n} entries")
        if len(self.row_labels) != m or len(set(self.row_labels)) != m:
            raise InvalidMatrix("row labels must be distinct, one per row")
        if find_symmetrizer(self.principal) is None:
            raise InvalidMatrix("principal part is not skew-symmetrizable")
        if len(_components(self.principal)) != 1:
            raise InvalidMatrix("principal part is decomposable")
        for r in self.frozen_rows:
            if not any(r):
                raise InvalidMatrix("zero frozen row makes the matrix decomposable")

    # -- views --------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return self.n_exchangeable

    @property
    def col_labels(self) -> tuple[str, ...]:
        return self.row_labels[: self.n]

    @property
    def principal(self) -> Rows:
        return self.entries[: self.n]

    @property
    def frozen_rows(self) -> Rows:
        return self.entries[self.n :]

    def __getitem__(self, ji: tuple[int, int]) -> int:
        j, i = ji
        return self.entries[j][i]

    def principal_part(self) -> ExchangeMatrix:
        return ExchangeMatrix._raw(self.principal, self.n, self.row_labels[: self.n])

    def __neg__(self) -> ExchangeMatrix:
        return ExchangeMatrix._raw(tuple(tuple(-v for v in r) for r in self.entries), self.n, self.row_labels)

    def relabel(self, ex_perm: Sequence[int], frozen_perm: Sequence[int] | None = None) -> ExchangeMatrix:
        """Move row/column i to position ex_perm[i] (and frozen row f to frozen_perm[f])."""
        n, m = self.n, self.m
        frozen_perm = tuple(frozen_perm) if frozen_perm is not None else tuple(range(m - n))
        full = list(ex_perm) + [n + f for f in frozen_perm]
        out = [[0] * n for _ in range(m)]
        labels = [""] * m
        for j in range(m):
            labels[full[j]] = self.row_labels[j]
            for i in range(n):
                out[full[j]][ex_perm[i]] = self.entries[j][i]
        return ExchangeMatrix._raw(tuple(map(tuple, out)), n, tuple(labels))

    # -- serialization ------------------------------------------------------

    def to_text(self, with_labels: bool = False) -> str:
        lines = []
        for j, r in enumerate(self.entries):
            if j == self.n and self.m > self.n:
                lines.append("---")
            row = " ".join(str(v) for v in r)
            lines.append(f"{row}  # {self.row_labels[j]}" if with_labels else row)
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "exchangeable": [list(r) for r in self.principal],
            "frozen": [list(r) for r in self.frozen_rows],
            "labels": list(self.row_labels),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> ExchangeMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_rows(data["exchangeable"], data.get("frozen", ()), data.get("labels"))

    def __str__(self) -> str:
        return self.to_text().rstrip("\n")


def parse_matrix_text(text: str) -> ExchangeMatrix:
    """Parse rows of space-separated integers; a line ``---`` starts frozen rows.

    A trailing ``# label`` comment on a row sets that row's label.
    """
    ex: list[list[int]] = []
    fr: list[list[int]] = []
    labels: list[str] = []
    target = ex
    for raw in text.splitlines():
        line, _, comment = raw.partition("#")
        line = line.strip()
        if not line:
            continue
        if line == "---":
            target = fr
            continue
        try:
            target.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise InvalidMatrix(f"bad matrix row {raw!r}") from exc
        labels.append(comment.strip())
    if all(labels):
        return ExchangeMatrix.from_rows(ex, fr, labels)
    return ExchangeMatrix.from_rows(ex, fr)


def mutate_matrix(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation in direction k (frozen rows included)."""
    n = b.n
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range for {n} exchangeable rows")
    e = b.entries
    col_k = [r[k] for r in e]
    row_k = e[k]
    out = []
    for j, r in enumerate(e):
        bjk = col_k[j]
        if j == k:
            out.append(tuple(-v for v in r))
            continue
        new = list(r)
        for i in range(n):
            if i == k:
                new[i] = -r[i]
                continue
            bki = row_k[i]
            if bjk > 0 and bki > 0:
                new[i] = r[i] + bjk * bki
            elif bjk < 0 and bki < 0:
                new[i] = r[i] - bjk * bki
        out.append(tuple(new))
    return ExchangeMatrix._raw(tuple(out), n, b.row_labels)


@dataclass(frozen=True)
class CartanMatrix:
    entries: Rows
    dynkin_type: DynkinLabel | None = None

    @property
    def n(self) -> int:
        return len(self.entries)

    def transpose(self) -> CartanMatrix:
        t = tuple(zip(*self.entries))
        found = classify_cartan(t)
        return CartanMatrix(t, found[0] if found else None)


def cartan_counterpart(b: ExchangeMatrix | Sequence[Sequence[int]]) -> CartanMatrix:
    """``a_ii = 2`` and ``a_ij = -|b_ij|``; the Dynkin type is filled in when finite."""
    rows = b.principal if isinstance(b, ExchangeMatrix) else _square(b)
    n = len(rows)
    a = tuple(tuple(2 if i == j else -abs(rows[i][j]) for j in range(n)) for i in range(n))
    found = classify_cartan(a)
    return CartanMatrix(a, found[0] if found else None)


@dataclass(frozen=True)
class SignFunction:
    """A bipartition of the exchangeable indices into +1 (sources) and -1 (sinks)."""

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    def __getitem__(self, i: int) -> int:
        return self.signs[i]

    def __len__(self) -> int:
        return len(self.signs)

    def __neg__(self) -> SignFunction:
        return SignFunction(tuple(-s for s in self.signs))

    def indices(self, sign: int) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.signs) if s == sign)

    def is_valid_for(self, b: ExchangeMatrix) -> bool:
        p = b.principal
        return all(
            self.signs[j] == 1 and self.signs[i] == -1
            for j in range(b.n)
            for i in range(b.n)
            if p[j][i] > 0
        )


def bipartite_sign(b: ExchangeMatrix) -> SignFunction | None:
    """The sign function making every vertex a source (+1) or sink (-1), if any."""
    p = b.principal
    n = b.n
    signs = [0] * n
    for comp in _components(p):
        start = comp[0]
        out_deg = any(v > 0 for v in p[start])
        signs[start] = 1 if out_deg or not any(p[start]) else -1
        stack = [start]
        while stack:
            j = stack.pop()
            for i in range(n):
                if p[j][i] == 0:
                    continue
                want = -signs[j]
                if signs[i] == 0:
                    signs[i] = want
                    stack.append(i)
                elif signs[i] != want:
                    return None
    eps = SignFunction(tuple(signs))
    return eps if eps.is_valid_for(b) else None


def is_gluing_free(b: ExchangeMatrix) -> bool:
    rows = b.frozen_rows
    return len(set(rows)) == len(rows)


class Relabeling(NamedTuple):
    """Index maps: exchangeable i -> exchangeable[i], frozen f -> frozen[f]."""

    exchangeable: tuple[int, ...]
    frozen: tuple[int, ...]


def matrix_isomorphisms(b: ExchangeMatrix, b2: ExchangeMatrix, sign: int = 1) -> list[Relabeling]:
    """All relabelings carrying B onto ``sign * B2``.

    A relabeling (s, r) satisfies ``B2[s(j)][s(i)] == sign * B[j][i]`` on the
    principal part and ``B2[n + r(f)][s(i)] == sign * B[n + f][i]`` on frozen rows.
    """
    if (b.m, b.n) != (b2.m, b2.n):
        raise ValueError(f"shape mismatch: {b.m}x{b.n} vs {b2.m}x{b2.n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = b.n
    src = b.principal
    tgt = tuple(tuple(sign * v for v in r) for r in b2.principal)
    sig_a = [sorted(src[i]) + sorted(r[i] for r in src) for i in range(n)]
    sig_b = [sorted(tgt[i]) + sorted(r[i] for r in tgt) for i in range(n)]
    ex_perms: list[tuple[int, ...]] = []
    perm: list[int] = []
    used = [False] * n

    def extend() -> None:
        i = len(perm)
        if i == n:
            ex_perms.append(tuple(perm))
            return
        for t in range(n):
            if used[t] or sig_a[i] != sig_b[t]:
                continue
            if all(src[i][j] == tgt[t][perm[j]] and src[j][i] == tgt[perm[j]][t] for j in range(i)):
                perm.append(t)
                used[t] = True
                extend()
                perm.pop()
                used[t] = False

    extend()
    fa = b.frozen_rows
    fb = [tuple(sign * v for v in r) for r in b2.frozen_rows]
    out: list[Relabeling] = []
    for s in ex_perms:
        moved = [tuple(row[s.index(t)] for t in range(n)) for row in fa]
        # group target frozen rows by content, then biject within groups
        slots: dict[tuple[int, ...], list[int]] = {}
        for idx, row in enumerate(fb):
            slots.setdefault(row, []).append(idx)
        need: dict[tuple[int, ...], list[int]] = {}
        for f, row in enumerate(moved):
            need.setdefault(row, []).append(f)
        if any(len(slots.get(row, ())) != len(fs) for row, fs in need.items()):
            continue
        groups = list(need.items())
        for choice in product(*(permutations(slots[row]) for row, _ in groups)):
            r = [0] * len(fa)
            for (row, fs), targets in zip(groups, choice):
                for f, t in zip(fs, targets):
                    r[f] = t
            out.append(Relabeling(s, tuple(r)))
    return out


def _dot_id(label: str) -> str:
    return '"' + label.replace('"', r"\"") + '"'


def quiver_dot(b: ExchangeMatrix, name: str = "Q") -> str:
    """The ice valued quiver of B as a DOT digraph; frozen vertices are boxed."""
    n, m = b.n, b.m
    e = b.entries
    lines = [f"digraph {name} {{"]
    for j in range(m):
        shape = "circle" if j < n else "box"
        lines.append(f"  {_dot_id(b.row_labels[j])} [shape={shape}];")
    for j in range(n):
        for i in range(n):
            if e[j][i] > 0:
                val = (abs(e[j][i]), abs(e[i][j]))
                attr = "" if val == (1, 1) else f' [label="({val[0]},{val[1]})"]'
                lines.append(f"  {_dot_id(b.row_labels[j])} -> {_dot_id(b.row_labels[i])}{attr};")
    for f in range(n, m):
        for i in range(n):
            v = e[f][i]
            if not v:
                continue
            src, dst = (f, i) if v > 0 else (i, f)
            attr = "" if abs(v) == 1 else f' [label="({abs(v)},{abs(v)})"]'
            lines.append(f"  {_dot_id(b.row_labels[src])} -> {_dot_id(b.row_labels[dst])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def principal_from_cartan(a: Iterable[Sequence[int]], eps: Sequence[int]) -> ExchangeMatrix:
    """Bipartite exchange matrix with Cartan counterpart ``a`` and sign ``eps``.

    ``b_ij = -a_ij`` when eps(i) = +1 and ``+a_ij`` when eps(i) = -1 (i != j),
    so +1 vertices are sources.
    """
    a = _square(list(a))
    n = len(a)
    rows = tuple(
        tuple(0 if i == j else (-a[i][j] if eps[i] == 1 else a[i][j]) for j in range(n)) for i in range(n)
    )
    return ExchangeMatrix.from_rows(rows)

"""Finite-type Cartan data: labels, standard Cartan matrices, exponents.

Cartan matrices follow the convention ``s_i(alpha_j) = alpha_j - a_ij alpha_i``
so the entry of absolute value 2 (or 3) sits in the row of the *short*
simple root.  Vertex numbering is 1-based in labels and 0-based in matrices.

* A_n, B_n, C_n: the path 1 - 2 - ... - n; for B_n the root n is short,
  for C_n the roots 1..n-1 are short.
* D_n: the path 1 - ... - (n-2) with n-1 and n both attached to n-2.
* E_n: the path 1 - ... - (n-1) with n attached to 3.
* F_4: 1 - 2 => 3 - 4 with 3, 4 short.  G_2: 1 short, 2 long.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import prod
from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]

__all__ = [
    "DynkinLabel",
    "UnknownDynkinLabel",
    "parse_label",
    "standard_cartan",
    "exponents",
    "coxeter_number",
    "catalan_number",
    "classify_cartan",
    "cartan_isomorphisms",
]


class UnknownDynkinLabel(ValueError):
    pass


@dataclass(frozen=True, order=True)
class DynkinLabel:
    family: str
    rank: int

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def parse_label(label: str | DynkinLabel) -> DynkinLabel:
    if isinstance(label, DynkinLabel):
        lab = label
    else:
        m = re.fullmatch(r"\s*([A-Ga-g])_?\s*(\d+)\s*", str(label))
        if not m:
            raise UnknownDynkinLabel(f"unparseable Dynkin label {label!r}")
        lab = DynkinLabel(m.group(1).upper(), int(m.group(2)))
    f, n = lab.family, lab.rank
    ok = (
        (f == "A" and n >= 1)
        or (f in "BC" and n >= 2)
        or (f == "D" and n >= 4)
        or (f == "E" and n in (6, 7, 8))
        or (f == "F" and n == 4)
        or (f == "G" and n == 2)
    )
    if not ok:
        raise UnknownDynkinLabel(f"no finite root system of type {lab}")
    return lab


def _edges(lab: DynkinLabel) -> list[tuple[int, int]]:
    f, n = lab.family, lab.rank
    if f in "ABCFG":
        return [(i, i + 1) for i in range(n - 1)]
    if f == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    # E_n: chain 0..n-2, vertex n-1 attached to 2
    return [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]


def standard_cartan(label: str | DynkinLabel) -> Matrix:
    lab = parse_label(label)
    n = lab.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _edges(lab):
        a[i][j] = a[j][i] = -1
    f = lab.family
    if f == "B":
        a[n - 1][n - 2] = -2
    elif f == "C":
        a[n - 2][n - 1] = -2
    elif f == "F":
        a[2][1] = -2
    elif f == "G":
        a[0][1] = -3
    return tuple(tuple(r) for r in a)


_EXPONENTS = {
    ("E", 6): (1, 4, 5, 7, 8, 11),
    ("E", 7): (1, 5, 7, 9, 11, 13, 17),
    ("E", 8): (1, 7, 11, 13, 17, 19, 23, 29),
    ("F", 4): (1, 5, 7, 11),
    ("G", 2): (1, 5),
}


def exponents(label: str | DynkinLabel) -> tuple[int, ...]:
    lab = parse_label(label)
    f, n = lab.family, lab.rank
    if f == "A":
        return tuple(range(1, n + 1))
    if f in "BC":
        return tuple(range(1, 2 * n, 2))
    if f == "D":
        return tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]))
    return _EXPONENTS[(f, n)]


def coxeter_number(label: str | DynkinLabel) -> int:
    return max(exponents(label)) + 1


def catalan_number(label: str | DynkinLabel) -> int:
    """prod_i (e_i + h + 1) / (e_i + 1): the number of clusters."""
    es = exponents(label)
    h = max(es) + 1
    val = Fraction(prod(e + h + 1 for e in es), prod(e + 1 for e in es))
    assert val.denominator == 1
    return int(val)


def _candidate_labels(n: int) -> list[DynkinLabel]:
    cands = [DynkinLabel("A", n)]
    if n >= 2:
        cands.append(DynkinLabel("B", n))
    if n >= 3:
        cands.append(DynkinLabel("C", n))
    if n >= 4:
        cands.append(DynkinLabel("D", n))
    if n in (6, 7, 8):
        cands.append(DynkinLabel("E", n))
    if n == 4:
        cands.append(DynkinLabel("F", 4))
    if n == 2:
        cands.append(DynkinLabel("G", 2))
    return cands


def cartan_isomorphisms(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], first_only: bool = False) -> list[tuple[int, ...]]:
    """All permutations p with ``b[p[i]][p[j]] == a[i][j]`` for all i, j."""
    n = len(a)
    if len(b) != n:
        return []
    deg_a = [sorted(a[i][j] for j in range(n) if j != i) for i in range(n)]
    deg_b = [sorted(b[i][j] for j in range(n) if j != i) for i in range(n)]
    found: list[tuple[int, ...]] = []
    perm: list[int] = []
    used = [False] * n

    def extend() -> bool:
        i = len(perm)
        if i == n:
            found.append(tuple(perm))
            return first_only
        for t in range(n):
            if used[t] or deg_a[i] != deg_b[t] or a[i][i] != b[t][t]:
                continue
            if all(a[i][j] == b[t][perm[j]] and a[j][i] == b[perm[j]][t] for j in range(i)):
                perm.append(t)
                used[t] = True
                if extend():
                    return True
                perm.pop()
                used[t] = False
        return False

    extend()
    return found


def classify_cartan(a: Sequence[Sequence[int]]) -> tuple[DynkinLabel, tuple[int, ...]] | None:
    """Identify a finite-type Cartan matrix.

    Returns ``(label, p)`` where ``p[i]`` is the standard vertex matching
    vertex ``i`` of ``a``, or None if ``a`` is not of finite type.
    """
    n = len(a)
    if n == 0:
        return None
    for lab in _candidate_labels(n):
        isos = cartan_isomorphisms(a, standard_cartan(lab), first_only=True)
        if isos:
            return lab, isos[0]
    return None

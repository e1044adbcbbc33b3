"""Exact multivariate Laurent polynomials over the integers.

A :class:`LaurentPoly` is an immutable map from integer exponent vectors to
nonzero integer coefficients over a fixed, ordered tuple of variable names
(the *ambient*).  Exponent vectors are packed into single Python ints so that
monomial multiplication is integer addition; the packing is order preserving,
so integer order of packed keys is a lex order on monomials (last variable
most significant).  Coefficients are Python ints and never overflow.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Mapping, Sequence

__all__ = ["LaurentPoly", "NonExactDivision", "lp_exchange", "denominator_vector"]

_BITS = 20
_BASE = 1 << _BITS
_OFF = 1 << (_BITS - 1)
_MASK = _BASE - 1


class NonExactDivision(ArithmeticError):
    """Raised when a Laurent division leaves a remainder."""


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for e in reversed(exps):
        if not -_OFF < e < _OFF:
            raise OverflowError(f"exponent {e} outside packable range")
        key = (key << _BITS) | (e + _OFF)
    return key


def _unpack(key: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append((key & _MASK) - _OFF)
        key >>= _BITS
    return tuple(out)


def _zero_key(n: int) -> int:
    return _pack((0,) * n)


class LaurentPoly:
    """An element of Z[x_1^(+-1), ..., x_m^(+-1)].

    Build values with :meth:`var`, :meth:`const`, :meth:`monomial` or
    :meth:`from_terms`; combine them with ``+``, ``-``, ``*``, ``**`` and
    exact division ``/``.  Operands must share the same ambient.
    """

    __slots__ = ("ambient", "_terms", "_zk", "_hash", "_canon")

    def __init__(self, ambient: Sequence[str], packed: Mapping[int, int] | None = None):
        self.ambient = tuple(ambient)
        self._terms = {k: c for k, c in (packed or {}).items() if c}
        self._zk = _zero_key(len(self.ambient))
        self._hash: int | None = None
        self._canon: tuple | None = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_terms(cls, ambient: Sequence[str], terms: Mapping[Sequence[int], int] | Iterable[tuple[Sequence[int], int]]) -> LaurentPoly:
        n = len(ambient)
        items = terms.items() if isinstance(terms, Mapping) else terms
        packed: dict[int, int] = {}
        for exps, c in items:
            if len(exps) != n:
                raise ValueError(f"exponent vector {tuple(exps)} does not match ambient of size {n}")
            k = _pack(exps)
            packed[k] = packed.get(k, 0) + int(c)
        return cls(ambient, packed)

    @classmethod
    def const(cls, ambient: Sequence[str], c: int) -> LaurentPoly:
        return cls(ambient, {_zero_key(len(ambient)): int(c)})

    @classmethod
    def monomial(cls, ambient: Sequence[str], exps: Sequence[int], c: int = 1) -> LaurentPoly:
        return cls.from_terms(ambient, {tuple(exps): c})

    @classmethod
    def var(cls, ambient: Sequence[str], name: str | int) -> LaurentPoly:
        i = name if isinstance(name, int) else list(ambient).index(name)
        exps = [0] * len(ambient)
        exps[i] = 1
        return cls.monomial(ambient, exps)

    @classmethod
    def gens(cls, ambient: Sequence[str]) -> list[LaurentPoly]:
        return [cls.var(ambient, i) for i in range(len(ambient))]

    # -- inspection ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.ambient)

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        n = self.nvars
        return {_unpack(k, n): c for k, c in self._terms.items()}

    def canonical(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Terms sorted by lexicographic exponent vector."""
        if self._canon is None:
            self._canon = tuple(sorted(self.terms.items()))
        return self._canon

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def coefficients(self) -> list[int]:
        return [c for _, c in self.canonical()]

    def min_exponents(self) -> tuple[int, ...]:
        if self.is_zero():
            raise ValueError("zero polynomial has no exponents")
        exps = list(self.terms)
        return tuple(min(col) for col in zip(*exps))

    def max_exponents(self) -> tuple[int, ...]:
        if self.is_zero():
            raise ValueError("zero polynomial has no exponents")
        exps = list(self.terms)
        return tuple(max(col) for col in zip(*exps))

    def constant_term(self) -> int:
        return self._terms.get(self._zk, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- equality / hashing -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == LaurentPoly.const(self.ambient, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ambient == other.ambient and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: object) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.ambient != self.ambient:
                raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.ambient, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other: object) -> LaurentPoly:
        o = self._coerce(other)
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(self.ambient, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.ambient, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: object) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> LaurentPoly:
        return self._coerce(other) - self

    def __mul__(self, other: object) -> LaurentPoly:
        o = self._coerce(other)
        a, b = self._terms, o._terms
        if len(a) < len(b):
            a, b = b, a
        zk = self._zk
        out: dict[int, int] = {}
        get = out.get
        for kb, cb in b.items():
            shift = kb - zk
            for ka, ca in a.items():
                k = ka + shift
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly(self.ambient, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentPoly:
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only of monomials")
            return LaurentPoly.const(self.ambient, 1) / self ** (-e)
        result = LaurentPoly.const(self.ambient, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other: object) -> LaurentPoly:
        return self.exact_div(self._coerce(other))

    def exact_div(self, d: LaurentPoly) -> LaurentPoly:
        """Quotient ``self / d`` in the Laurent ring; raise if not exact.

        Long division with respect to the packed-key monomial order.  Every
        quotient term must lie between trail(self)/trail(d) and
        lead(self)/lead(d), which bounds the loop when division is inexact.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return self
        dterms = d._terms
        zk = self._zk
        dlead = max(dterms)
        dc = dterms[dlead]
        if len(dterms) == 1:
            out = {}
            for k, c in self._terms.items():
                q, r = divmod(c, dc)
                if r:
                    raise NonExactDivision(f"coefficient {c} not divisible by {dc}")
                out[k - dlead + zk] = q
            return LaurentPoly(self.ambient, out)
        floor = min(self._terms) - min(dterms) + zk
        rem = dict(self._terms)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quot: dict[int, int] = {}
        dlist = [(k - dlead, c) for k, c in dterms.items() if k != dlead]
        while heap:
            lead = -heapq.heappop(heap)
            c = rem.get(lead, 0)
            if c == 0:
                rem.pop(lead, None)
                continue
            qk = lead - dlead + zk
            if qk < floor:
                raise NonExactDivision("nonzero remainder in Laurent division")
            qc, r = divmod(c, dc)
            if r:
                raise NonExactDivision(f"coefficient {c} not divisible by {dc}")
            quot[qk] = qc
            del rem[lead]
            for dk, dcoef in dlist:
                k = lead + dk
                if k in rem:
                    rem[k] -= qc * dcoef
                else:
                    rem[k] = -qc * dcoef
                    heapq.heappush(heap, -k)
        return LaurentPoly(self.ambient, quot)

    def divides(self, other: LaurentPoly) -> bool:
        try:
            other.exact_div(self)
        except NonExactDivision:
            return False
        return True

    # -- substitution / evaluation -----------------------------------------

    def substitute(self, images: Sequence[LaurentPoly | int], ambient: Sequence[str] | None = None) -> LaurentPoly:
        """Apply the ring map x_i -> images[i].

        Negative powers are handled by clearing the denominator monomial and
        dividing exactly by the corresponding product of images, so the
        result is exact whenever it is a Laurent polynomial.
        """
        if len(images) != self.nvars:
            raise ValueError("need one image per ambient variable")
        if ambient is None:
            ambs = {im.ambient for im in images if isinstance(im, LaurentPoly)}
            if len(ambs) != 1:
                raise ValueError("cannot infer target ambient")
            ambient = ambs.pop()
        ims = [im if isinstance(im, LaurentPoly) else LaurentPoly.const(ambient, im) for im in images]
        if self.is_zero():
            return LaurentPoly(ambient)
        lo = self.min_exponents()
        shift = [-e if e < 0 else 0 for e in lo]
        powers: list[dict[int, LaurentPoly]] = [{} for _ in ims]

        def pw(i: int, e: int) -> LaurentPoly:
            cache = powers[i]
            if e not in cache:
                cache[e] = ims[i] ** e
            return cache[e]

        num = LaurentPoly(ambient)
        for exps, c in self.terms.items():
            term = LaurentPoly.const(ambient, c)
            for i, e in enumerate(exps):
                e += shift[i]
                if e:
                    term = term * pw(i, e)
            num = num + term
        den = LaurentPoly.const(ambient, 1)
        for i, s in enumerate(shift):
            if s:
                den = den * pw(i, s)
        return num.exact_div(den)

    def rename(self, ambient: Sequence[str]) -> LaurentPoly:
        if len(ambient) != self.nvars:
            raise ValueError("renaming must preserve the number of variables")
        return LaurentPoly(ambient, self._terms)

    def evaluate_mod(self, values: Sequence[int], p: int) -> int:
        """Value at an integer point modulo a prime ``p`` (values must be units)."""
        inv = [pow(v, -1, p) for v in values]
        total = 0
        for exps, c in self.terms.items():
            t = c % p
            for v, iv, e in zip(values, inv, exps):
                if e > 0:
                    t = t * pow(v, e, p) % p
                elif e < 0:
                    t = t * pow(iv, -e, p) % p
            total = (total + t) % p
        return total

    # -- rendering ----------------------------------------------------------

    def _render_poly(self, terms: Mapping[tuple[int, ...], int]) -> str:
        if not terms:
            return "0"

        def order(item):
            exps, _ = item
            return (sum(exps), tuple(-e for e in exps))

        parts: list[str] = []
        for exps, c in sorted(terms.items(), key=order):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.ambient, exps) if e
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        lo = self.min_exponents()
        den = [-e if e < 0 else 0 for e in lo]
        num = {tuple(e + s for e, s in zip(exps, den)): c for exps, c in self.terms.items()}
        num_s = self._render_poly(num)
        if not any(den):
            return num_s
        den_s = "*".join(name if e == 1 else f"{name}^{e}" for name, e in zip(self.ambient, den) if e)
        if len(num) > 1:
            num_s = f"({num_s})"
        if sum(1 for e in den if e) > 1 or any(e > 1 for e in den):
            den_s = f"({den_s})"
        return f"{num_s} / {den_s}"

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> list:
        return [[c, list(exps)] for exps, c in self.canonical()]

    @classmethod
    def from_json(cls, ambient: Sequence[str], data: Iterable) -> LaurentPoly:
        return cls.from_terms(ambient, [(tuple(e), c) for c, e in data])


def lp_exchange(product_plus: LaurentPoly, product_minus: LaurentPoly, old_var: LaurentPoly) -> LaurentPoly:
    """The new variable of an exchange relation: ``(plus + minus) / old``."""
    return (product_plus + product_minus).exact_div(old_var)


def denominator_vector(p: LaurentPoly, n: int | None = None) -> tuple[int, ...]:
    """Exponents ``d`` with ``p * x^d`` a polynomial with nonzero constant term.

    Only the first ``n`` ambient variables are reported (the initial
    exchangeable ones); defaults to all of them.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no denominator vector")
    d = tuple(-e for e in p.min_exponents())
    if n is None:
        if (p * LaurentPoly.monomial(p.ambient, d)).constant_term() == 0:
            raise ValueError(f"{p} is not of the form P/x^d with P(0) != 0")
        return d
    return d[:n]

"""Kazhdan-Lusztig polynomials, parabolic sums and Ext generating series.

The classical recursion is run in ``q``; the Laurent variable ``t`` of the
public API is tied to it by ``q = t^2``, so ``P(t) = P_classical(t^2)`` and
``P(-1)`` is the coefficient sum of the classical polynomial.

:class:`KLTable` works over any Coxeter group object exposing ``identity``,
``times(x, s)``, ``lower_interval(y)`` (a set of keys), ``element(key)`` and
``check_bound(*xs)``, with elements carrying ``key``, ``word`` and ``length``.
"""

from __future__ import annotations

import json
import threading
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import BoundError

VARIABLE_CONVENTION = "P(t) = P_classical(q = t^2)"
CACHE_VERSION = 1


class LaurentPolynomial:
    """Finite integer Laurent polynomial in t."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = defaultdict(int)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for e, c in items:
            acc[int(e)] += int(c)
        self._c = {e: c for e, c in acc.items() if c}

    @classmethod
    def one(cls) -> LaurentPolynomial:
        return cls({0: 1})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPolynomial:
        return cls({exp: coeff})

    @classmethod
    def from_q_poly(cls, qcoeffs: Sequence[int]) -> LaurentPolynomial:
        """Substitute q = t^2 into a classical polynomial given by its coefficient list."""
        return cls({2 * i: c for i, c in enumerate(qcoeffs)})

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def items(self):
        return sorted(self._c.items())

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return LaurentPolynomial(list(self._c.items()) + list(other._c.items()))

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial({e: -c for e, c in self._c.items()})

    def __sub__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return self + (-other)

    def __mul__(self, other) -> LaurentPolynomial:
        if isinstance(other, int):
            return LaurentPolynomial({e: other * c for e, c in self._c.items()})
        acc: dict[int, int] = defaultdict(int)
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                acc[e1 + e2] += c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by t^k."""
        return LaurentPolynomial({e + k: c for e, c in self._c.items()})

    def invert(self) -> LaurentPolynomial:
        """Substitute t -> t^-1."""
        return LaurentPolynomial({-e: c for e, c in self._c.items()})

    def __call__(self, t):
        return sum(c * t ** e for e, c in self._c.items())

    def degree(self) -> int | None:
        return max(self._c) if self._c else None

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(f"{c}*t^{e}" for e, c in self.items())

    def to_json(self) -> dict:
        return {"poly": [{"exp": e, "coeff": c} for e, c in self.items()]}


class KLTable:
    """Memoized Kazhdan-Lusztig polynomials of one Coxeter group.

    Polynomials are stored classically as tuples of q-coefficients.  Insertion
    is guarded by a lock; any interleaving yields the single-threaded values.
    """

    def __init__(self, group):
        self.group = group
        self._memo: dict[tuple, tuple[int, ...]] = {}
        self._lock = threading.RLock()

    # classical polynomials in q as coefficient tuples
    def classical(self, x, y) -> tuple[int, ...]:
        self.group.check_bound(x, y)
        return self._p(x, y)

    def _p(self, x, y) -> tuple[int, ...]:
        key = (x.key, y.key)
        got = self._memo.get(key)
        if got is not None:
            return got
        if x.key not in self.group.lower_interval(y):
            res: tuple[int, ...] = ()
        elif x.key == y.key:
            res = (1,)
        else:
            res = self._recurse(x, y)
        with self._lock:
            self._memo.setdefault(key, res)
        return res

    def _recurse(self, x, y) -> tuple[int, ...]:
        grp = self.group
        s = y.word[-1]
        v = grp.times(y, s)
        xs = grp.times(x, s)
        c = 1 if xs.length < x.length else 0
        acc: dict[int, int] = defaultdict(int)
        for i, a in enumerate(self._p(xs, v)):
            acc[i + 1 - c] += a
        for i, a in enumerate(self._p(x, v)):
            acc[i + c] += a
        for zkey in grp.lower_interval(v):
            if zkey == v.key:
                continue
            z = grp.element(zkey)
            if (v.length - z.length) % 2 == 0 or grp.times(z, s).length > z.length:
                continue
            if x.key not in grp.lower_interval(z):
                continue
            m = self.mu(z, v)
            if not m:
                continue
            shift = (y.length - z.length) // 2
            for i, a in enumerate(self._p(x, z)):
                acc[i + shift] -= m * a
        top = max((e for e, a in acc.items() if a), default=-1)
        return tuple(acc.get(e, 0) for e in range(top + 1))

    def mu(self, z, v) -> int:
        """Coefficient of q^((l(v)-l(z)-1)/2) in P_{z,v}; zero for even length difference."""
        d = v.length - z.length
        if d <= 0 or d % 2 == 0:
            return 0
        p = self._p(z, v)
        k = (d - 1) // 2
        return p[k] if k < len(p) else 0

    def poly(self, x, y) -> LaurentPolynomial:
        """P_{x,y}(t) = P_classical(t^2)."""
        return LaurentPolynomial.from_q_poly(self.classical(x, y))

    # parabolic data
    def parabolic_kl(self, J: Iterable[int], y, w) -> LaurentPolynomial:
        """P^J_{y,w} = sum_{x in W_J} (-1)^l(x) P_{yx,w}."""
        grp = self.group
        J = frozenset(J)
        for el, name in ((y, "y"), (w, "w")):
            if not grp.is_minimal(el, J):
                raise ValueError(f"{name} is not a minimal coset representative for J={sorted(J)}")
        grp.check_bound(y, w)
        out = LaurentPolynomial()
        for x in grp.parabolic(J):
            yx = grp.multiply(y, x)
            if yx.length > grp.max_length:
                continue  # yx > w then, so P_{yx,w} = 0
            out = out + self.poly(yx, w) * (-1) ** x.length
        return out

    def ext_series_delta_L(self, y, w, J: Iterable[int]) -> LaurentPolynomial:
        """sum_n dim Ext^n(Delta(y.mu), L(w.mu)) t^n = t^(l(w)-l(y)) P^J_{y,w}(t^-1)."""
        return self.parabolic_kl(J, y, w).invert().shift(w.length - y.length)

    def ext_series_LL(self, y, w, J: Iterable[int], lam: Sequence[int]) -> LaurentPolynomial:
        """sum_z t^(l(y)+l(w)-2l(z)) P^J_{z,y}(t^-1) P^J_{z,w}(t^-1) over z in W^+(lam).

        Only z below both y and w contribute; the dominance test uses the
        rho-shifted action of the group on ``lam``.
        """
        grp = self.group
        J = frozenset(J)
        common = grp.lower_interval(y) & grp.lower_interval(w)
        out = LaurentPolynomial()
        for zkey in common:
            z = grp.element(zkey)
            if not grp.is_minimal(z, J) or not all(c >= 0 for c in grp.dot(z, lam)):
                continue
            term = (self.parabolic_kl(J, z, y).invert() * self.parabolic_kl(J, z, w).invert())
            out = out + term.shift(y.length + w.length - 2 * z.length)
        return out

    # on-disk memo
    def _cache_header(self) -> dict:
        grp = self.group
        return {"version": CACHE_VERSION, "type": grp.sys.type_label,
                "cartan": [list(r) for r in grp.sys.cartan], "l": grp.l,
                "L": grp.max_length}

    def save(self, path: str | Path) -> None:
        grp = self.group
        rows = []
        with self._lock:
            for (xk, yk), p in self._memo.items():
                rows.append([list(grp.element(xk).word), list(grp.element(yk).word), list(p)])
        rows.sort()
        Path(path).write_text(json.dumps({"header": self._cache_header(), "entries": rows}))

    def load(self, path: str | Path) -> bool:
        """Merge a saved memo; returns False (and loads nothing) on a header mismatch."""
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, ValueError):
            return False
        if data.get("header") != self._cache_header():
            return False
        grp = self.group
        with self._lock:
            for xw, yw, p in data["entries"]:
                x, y = grp.from_word(xw), grp.from_word(yw)
                self._memo.setdefault((x.key, y.key), tuple(p))
        return True


_TABLES: dict[int, KLTable] = {}
_TABLES_LOCK = threading.Lock()


def kl_table(group) -> KLTable:
    """Shared memo table per group instance."""
    with _TABLES_LOCK:
        table = _TABLES.get(id(group))
        if table is None or table.group is not group:
            table = _TABLES[id(group)] = KLTable(group)
        return table


def kl_poly(x, y, group) -> LaurentPolynomial:
    return kl_table(group).poly(x, y)


def parabolic_kl(J, y, w, group) -> LaurentPolynomial:
    return kl_table(group).parabolic_kl(J, y, w)


def ext_series_delta_L(y, w, J, group) -> LaurentPolynomial:
    return kl_table(group).ext_series_delta_L(y, w, J)


def ext_series_LL(y, w, J, lam, group) -> LaurentPolynomial:
    return kl_table(group).ext_series_LL(y, w, J, lam)


__all__ = ["LaurentPolynomial", "KLTable", "kl_table", "kl_poly", "parabolic_kl",
           "ext_series_delta_L", "ext_series_LL", "VARIABLE_CONVENTION", "BoundError"]

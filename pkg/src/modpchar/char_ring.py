"""Formal characters: the group ring Z[X] with Weyl characters.

A :class:`Character` is a sparse map from weights to nonzero integers.  Weyl
characters are obtained by exact long division of the alternating sum
``sum_w det(w) e(w(gamma + rho))`` by the Weyl denominator, using a graded
lexicographic term order in which ``e(rho)`` leads the denominator.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import root_system as rs
from .root_system import RootSystem, Weight


class Character:
    """An element of Z[X]; immutable once built."""

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Weight, int] | Iterable[tuple[Weight, int]] = ()):
        acc: dict[Weight, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for wt, m in items:
            wt = tuple(int(x) for x in wt)
            if len(wt) != rank:
                raise ValueError(f"weight {wt} does not have rank {rank}")
            acc[wt] += int(m)
        self.rank = rank
        self._terms = {wt: m for wt, m in acc.items() if m}
        self._hash = None

    @classmethod
    def monomial(cls, wt: Sequence[int], mult: int = 1) -> Character:
        return cls(len(wt), {tuple(wt): mult})

    @classmethod
    def zero(cls, rank: int) -> Character:
        return cls(rank)

    # mapping-ish access
    def __getitem__(self, wt: Sequence[int]) -> int:
        return self._terms.get(tuple(wt), 0)

    def items(self):
        return self._terms.items()

    def support(self) -> set[Weight]:
        return set(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        body = " + ".join(f"{m}e{wt}" for wt, m in sorted(self._terms.items(), reverse=True))
        return f"Character({body or '0'})"

    # ring operations
    def _check(self, other: Character) -> None:
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: Character) -> Character:
        if not isinstance(other, Character):
            return NotImplemented
        self._check(other)
        return Character(self.rank, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> Character:
        return Character(self.rank, {wt: -m for wt, m in self._terms.items()})

    def __sub__(self, other: Character) -> Character:
        if not isinstance(other, Character):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> Character:
        if isinstance(other, int):
            return Character(self.rank, {wt: other * m for wt, m in self._terms.items()})
        if not isinstance(other, Character):
            return NotImplemented
        self._check(other)
        acc: dict[Weight, int] = defaultdict(int)
        for a, ma in self._terms.items():
            for b, mb in other._terms.items():
                acc[tuple(x + y for x, y in zip(a, b))] += ma * mb
        return Character(self.rank, acc)

    __rmul__ = __mul__

    def to_json(self, sys: RootSystem | None = None) -> dict:
        """``{"rank": n, "terms": [{"wt": [...], "mult": m}, ...]}``, descending term order."""
        key = term_order(sys) if sys is not None else (lambda wt: (sum(wt), wt))
        terms = sorted(self._terms.items(), key=lambda kv: key(kv[0]), reverse=True)
        return {"rank": self.rank,
                "terms": [{"wt": list(wt), "mult": m} for wt, m in terms]}

    @classmethod
    def from_json(cls, data: Mapping) -> Character:
        return cls(int(data["rank"]), [(tuple(t["wt"]), t["mult"]) for t in data["terms"]])


def term_order(sys: RootSystem):
    """Sort key of the graded-lex order: grade ``sum_{beta>0} <wt, beta^vee>``, then lex."""
    grade = tuple(sum(r.coroot[i] for r in sys.positive_roots) for i in range(sys.rank))

    def key(wt):
        return (sum(g * x for g, x in zip(grade, wt)), tuple(wt))

    return key


def weyl_denominator(sys: RootSystem) -> dict[Weight, int]:
    r = rs.rho(sys)
    return {rs.mat_vec(m, r): det for m, det in rs.weyl_group(sys)}


def weyl_char(gamma: Sequence[int], sys: RootSystem) -> Character:
    """chi(gamma) for any gamma in X by exact division of alternants.

    For gamma + rho on a wall the numerator vanishes and the result is zero; for
    other non-dominant gamma the division directly yields det(w) chi(w.gamma).
    """
    gamma = tuple(gamma)
    if len(gamma) != sys.rank:
        raise ValueError("weight rank does not match root system")
    r = rs.rho(sys)
    shifted = rs.add(gamma, r)
    rem: dict[Weight, int] = defaultdict(int)
    for m, det in rs.weyl_group(sys):
        rem[rs.mat_vec(m, shifted)] += det
    rem = {k: v for k, v in rem.items() if v}
    den = weyl_denominator(sys)
    key = term_order(sys)
    # max-heap over the remainder support; stale entries are skipped lazily
    heap = [(_neg(key(wt)), wt) for wt in rem]
    heapq.heapify(heap)
    quotient: dict[Weight, int] = {}
    while heap:
        _, lead = heapq.heappop(heap)
        c = rem.get(lead, 0)
        if not c:
            continue
        q = rs.sub(lead, r)
        quotient[q] = quotient.get(q, 0) + c
        for mu, d in den.items():
            wt = rs.add(q, mu)
            v = rem.get(wt, 0) - c * d
            if v:
                if wt not in rem:
                    heapq.heappush(heap, (_neg(key(wt)), wt))
                rem[wt] = v
            else:
                rem.pop(wt, None)
    return Character(sys.rank, quotient)


def _neg(k):
    grade, wt = k
    return (-grade, tuple(-x for x in wt))


def weyl_reduce(gamma: Sequence[int], sys: RootSystem) -> tuple[int, Weight] | None:
    """Write chi(gamma) = sign * chi(mu) with mu dominant, or None if chi(gamma) = 0."""
    x = list(rs.add(gamma, rs.rho(sys)))
    simple = sys.simple_roots
    sign = 1
    while True:
        i = next((i for i, c in enumerate(x) if c < 0), None)
        if i is None:
            break
        c = x[i]
        x = [a - c * b for a, b in zip(x, simple[i])]
        sign = -sign
    if any(c == 0 for c in x):
        return None
    return sign, tuple(c - 1 for c in x)


def weyl_dimension(gamma: Sequence[int], sys: RootSystem) -> int:
    """Weyl's product formula, computed independently of :func:`weyl_char`."""
    shifted = rs.add(gamma, rs.rho(sys))
    r = rs.rho(sys)
    out = Fraction(1)
    for root in sys.positive_roots:
        out *= Fraction(sum(a * b for a, b in zip(root.coroot, shifted)),
                        sum(a * b for a, b in zip(root.coroot, r)))
    assert out.denominator == 1
    return int(out)


def is_w_symmetric(ch: Character, sys: RootSystem) -> bool:
    """Invariance under the linear (unshifted) action of the simple reflections."""
    mats = rs.simple_reflection_matrices(sys)
    return all(ch[rs.mat_vec(m, wt)] == mult for wt, mult in ch.items() for m in mats)


def decompose_weyl_basis(ch: Character, sys: RootSystem) -> dict[Weight, int]:
    """Coefficients c_mu (mu dominant) with ch = sum c_mu chi(mu)."""
    if not is_w_symmetric(ch, sys):
        raise ValueError("character is not W-symmetric")
    key = term_order(sys)
    rem = ch
    out: dict[Weight, int] = {}
    last = None
    while rem:
        lead = max(rem, key=key)
        if not rs.is_dominant(lead) or (last is not None and key(lead) >= key(last)):
            raise RuntimeError(f"Weyl-basis decomposition failed to make progress at {lead}")
        c = rem[lead]
        out[lead] = c
        rem = rem - weyl_char(lead, sys) * c
        last = lead
    return out


def from_weyl_basis(coeffs: Mapping[Weight, int], sys: RootSystem) -> Character:
    """Expand ``sum c_mu chi(mu)``; non-dominant mu are allowed."""
    out = Character.zero(sys.rank)
    for mu, c in coeffs.items():
        if c:
            out = out + weyl_char(mu, sys) * c
    return out


def weyl_combination(terms: Iterable[tuple[Sequence[int], int]], sys: RootSystem) -> dict[Weight, int]:
    """Reduce a formal sum ``sum c chi(gamma)`` (any gamma) to the dominant Weyl basis."""
    acc: dict[Weight, int] = defaultdict(int)
    for gamma, c in terms:
        red = weyl_reduce(gamma, sys)
        if red is not None:
            sign, mu = red
            acc[mu] += sign * c
    return {mu: c for mu, c in acc.items() if c}


def frobenius_twist(ch: Character, q: int) -> Character:
    """e(lam) -> e(q lam)."""
    if q < 1:
        raise ValueError("twist factor must be >= 1")
    return Character(ch.rank, {tuple(q * x for x in wt): m for wt, m in ch.items()})


def dominates(a: Character, b: Character) -> bool:
    """a >= b, i.e. a - b has nonnegative multiplicities."""
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    return all(m >= 0 for _, m in (a - b).items())


def dim_eval(ch: Character) -> int:
    return sum(m for _, m in ch.items())

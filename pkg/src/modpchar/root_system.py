"""Finite root data, the weight lattice and the finite Weyl group.

Weights are integer tuples in the fundamental-weight basis, so entry ``i`` of a
weight is its pairing with the simple coroot ``alpha_i^vee``.  Every root
carries both its expansion in that basis and its coroot as an integer linear
form, which is all the affine and character machinery ever needs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .errors import BoundError, ConfigError

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

#: Default cap on the order of the finite Weyl group we are willing to list.
MAX_WEYL_ORDER = 50_000

# cartan[i][j] = <alpha_j, alpha_i^vee>; d_i = (alpha_i, alpha_i) / 2
_BUILTIN = {
    "A1": (((2,),), (1,)),
    "A2": (((2, -1), (-1, 2)), (1, 1)),
    "B2": (((2, -1), (-2, 2)), (2, 1)),
    "G2": (((2, -3), (-1, 2)), (1, 3)),
}

_EXPECTED_POSITIVE = {"A1": 1, "A2": 3, "B2": 4, "G2": 6}


@dataclass(frozen=True)
class Root:
    """A positive root.

    ``simple`` is the expansion in simple roots, ``weight`` the expansion in
    fundamental weights and ``coroot`` the integer form ``lam -> <lam, beta^vee>``
    written in fundamental-weight coordinates.
    """

    simple: tuple[int, ...]
    weight: Weight
    coroot: tuple[int, ...]
    d: int

    @property
    def height(self) -> int:
        return sum(self.simple)


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    cartan: Matrix
    symmetrizers: tuple[int, ...]
    positive_roots: tuple[Root, ...] = field(init=False, compare=False)
    highest_short_root: int = field(init=False, compare=False)
    coxeter_number: int = field(init=False, compare=False)

    def __post_init__(self):
        n = len(self.cartan)
        if n == 0 or any(len(row) != n for row in self.cartan):
            raise ConfigError("Cartan matrix must be square and nonempty")
        if len(self.symmetrizers) != n:
            raise ConfigError("need one symmetrizer per simple root")
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise ConfigError("Cartan diagonal entries must equal 2")
            for j in range(n):
                if i != j and self.cartan[i][j] > 0:
                    raise ConfigError("off-diagonal Cartan entries must be <= 0")
                if (self.symmetrizers[i] * self.cartan[i][j]
                        != self.symmetrizers[j] * self.cartan[j][i]):
                    raise ConfigError("diag(d) * cartan is not symmetric")
        roots = _positive_roots(self.cartan, self.symmetrizers)
        object.__setattr__(self, "positive_roots", roots)
        dmin = min(r.d for r in roots)
        short = [k for k, r in enumerate(roots) if r.d == dmin]
        object.__setattr__(self, "highest_short_root",
                           max(short, key=lambda k: roots[k].height))
        object.__setattr__(self, "coxeter_number", 2 * len(roots) // n)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        """Simple roots in fundamental-weight coordinates (columns of the Cartan matrix)."""
        n = self.rank
        return tuple(tuple(self.cartan[i][j] for i in range(n)) for j in range(n))

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label!r})"


def _positive_roots(cartan: Matrix, d: Sequence[int]) -> tuple[Root, ...]:
    n = len(cartan)

    def pair(c, i):
        # <beta, alpha_i^vee> for beta = sum_j c_j alpha_j
        return sum(c[j] * cartan[i][j] for j in range(n))

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(n):
                k = pair(c, i)
                img = tuple(c[j] - (k if j == i else 0) for j in range(n))
                if all(x >= 0 for x in img) and any(img) and img not in found:
                    found.add(img)
                    nxt.append(img)
        frontier = nxt
        if len(found) > 10_000:
            raise ConfigError("Cartan matrix does not define a finite root system")

    roots = []
    for c in sorted(found, key=lambda c: (sum(c), tuple(-x for x in c))):
        norm2 = sum(c[i] * c[j] * d[i] * cartan[i][j] for i in range(n) for j in range(n))
        if norm2 % 2:
            raise ConfigError("inconsistent symmetrizers")
        droot = norm2 // 2
        weight = tuple(sum(c[j] * cartan[i][j] for j in range(n)) for i in range(n))
        co = []
        for j in range(n):
            v = Fraction(c[j] * d[j], droot)
            if v.denominator != 1:
                raise ConfigError("coroot is not integral")
            co.append(int(v))
        roots.append(Root(c, weight, tuple(co), droot))
    return tuple(roots)


def builtin(type_label: str) -> RootSystem:
    """Return one of the tabulated rank <= 2 root systems."""
    key = type_label.upper()
    if key not in _BUILTIN:
        raise ConfigError(f"unknown root system type {type_label!r}; "
                          f"builtin types are {sorted(_BUILTIN)}")
    cartan, d = _BUILTIN[key]
    sys_ = RootSystem(key, cartan, d)
    assert len(sys_.positive_roots) == _EXPECTED_POSITIVE[key]
    return sys_


def from_cartan(cartan: Sequence[Sequence[int]], d: Sequence[int] | None = None,
                label: str = "custom") -> RootSystem:
    """Build a root system from a Cartan matrix ``a_ij = <alpha_j, alpha_i^vee>``."""
    cartan = tuple(tuple(int(x) for x in row) for row in cartan)
    if d is None:
        if any(cartan[i][j] != cartan[j][i] for i in range(len(cartan)) for j in range(len(cartan))):
            raise ConfigError("non-symmetric Cartan matrix needs explicit symmetrizers 'd'")
        d = (1,) * len(cartan)
    return RootSystem(label, cartan, tuple(int(x) for x in d))


def load_cartan_file(path: str | Path) -> RootSystem:
    data = json.loads(Path(path).read_text())
    return from_cartan(data["cartan"], data.get("d"), data.get("label", "custom"))


def pairing(gamma: Sequence[int], root: int, sys: RootSystem) -> int:
    """``<gamma, alpha^vee>`` for the positive root with the given index."""
    if not 0 <= root < len(sys.positive_roots):
        raise IndexError(f"root index {root} out of range")
    co = sys.positive_roots[root].coroot
    if len(gamma) != len(co):
        raise ValueError("weight rank does not match root system")
    return sum(a * b for a, b in zip(co, gamma))


def rho(sys: RootSystem) -> Weight:
    return (1,) * sys.rank


def is_dominant(gamma: Sequence[int]) -> bool:
    return all(c >= 0 for c in gamma)


def add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(k, a: Sequence[int]) -> tuple:
    return tuple(k * x for x in a)


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def reflection_matrix(root: Root) -> Matrix:
    """Linear reflection ``lam -> lam - <lam, beta^vee> beta`` on weight coordinates."""
    n = len(root.weight)
    return tuple(tuple(int(a == b) - root.weight[a] * root.coroot[b] for b in range(n))
                 for a in range(n))


def simple_reflection_matrices(sys: RootSystem) -> list[Matrix]:
    return [reflection_matrix(sys.positive_roots[i]) for i in range(sys.rank)]


def finite_weyl_elements(sys: RootSystem, max_order: int = MAX_WEYL_ORDER
                         ) -> list[tuple[Matrix, int]]:
    """All elements of W as (matrix on weight coordinates, det) in BFS order."""
    gens = simple_reflection_matrices(sys)
    ident = identity_matrix(sys.rank)
    seen = {ident: 1}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                h = mat_mul(m, g)
                if h not in seen:
                    seen[h] = -seen[m]
                    order.append(h)
                    nxt.append(h)
                    if len(order) > max_order:
                        raise BoundError(f"finite Weyl group order exceeds {max_order}")
        frontier = nxt
    return [(m, seen[m]) for m in order]


def weyl_group(sys: RootSystem) -> list[tuple[Matrix, int]]:
    """Cached :func:`finite_weyl_elements` with the default bound."""
    cache = _WEYL_CACHE.get(sys)
    if cache is None:
        cache = _WEYL_CACHE[sys] = finite_weyl_elements(sys)
    return cache


_WEYL_CACHE: dict[RootSystem, list[tuple[Matrix, int]]] = {}

"""Alcove geometry and the affine Weyl group W_l under the rho-shifted action.

All geometry is done in the shifted coordinates ``x = gamma + rho``, where the
dot action becomes linear-plus-translation and the hyperplanes are simply
``<x, beta^vee> = m l``.  An element of W_l is stored as its exact affine map
``x -> M x + t`` (M in the finite Weyl group, t in l Z R); its reduced word is
recovered by walking the image of an interior reference point back into the
antidominant alcove across separating walls.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import root_system as rs
from .errors import BoundError, ConfigError
from .root_system import Matrix, RootSystem, Weight

DEFAULT_MAX_LENGTH = 16

Key = tuple[Matrix, tuple[int, ...]]
Hyperplane = tuple[int, int]  # (positive root index, value m*l of <x, beta^vee>)


# ---------------------------------------------------------------------------
# exact linear algebra helpers


def _solve(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Solve a square system exactly; None when singular."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def _rank(vectors: list[list[Fraction]]) -> int:
    m = [list(v) for v in vectors]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def affine_dim(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine span; -1 for the empty set."""
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    return _rank(diffs) if diffs else 0


def _pair(co: Sequence[int], x: Sequence) -> Fraction | int:
    return sum(a * b for a, b in zip(co, x))


# ---------------------------------------------------------------------------
# facets


@dataclass(frozen=True)
class Facet:
    """An l-facet given by one window per positive root.

    ``windows[a] = ("open", n)`` means ``l(n-1) < <x, beta_a^vee> < l n`` and
    ``("wall", n)`` means ``<x, beta_a^vee> = l n``, with ``x = gamma + rho``.
    """

    l: int
    windows: tuple[tuple[str, int], ...]

    @property
    def is_alcove(self) -> bool:
        return all(kind == "open" for kind, _ in self.windows)

    def contains(self, gamma: Sequence, sys: RootSystem) -> bool:
        x = rs.add(gamma, rs.rho(sys))
        for root, (kind, n) in zip(sys.positive_roots, self.windows):
            v = _pair(root.coroot, x)
            if kind == "wall" and v != self.l * n:
                return False
            if kind == "open" and not self.l * (n - 1) < v < self.l * n:
                return False
        return True

    def in_upper_closure(self, gamma: Sequence, sys: RootSystem) -> bool:
        x = rs.add(gamma, rs.rho(sys))
        for root, (kind, n) in zip(sys.positive_roots, self.windows):
            v = _pair(root.coroot, x)
            if kind == "wall" and v != self.l * n:
                return False
            if kind == "open" and not self.l * (n - 1) < v <= self.l * n:
                return False
        return True

    def to_json(self) -> dict:
        return {"l": self.l,
                "windows": [{"root": i, "kind": kind, "n": n}
                            for i, (kind, n) in enumerate(self.windows)]}


def facet_of(gamma: Sequence[int], l: int, sys: RootSystem) -> Facet:
    """The unique facet containing gamma."""
    x = rs.add(gamma, rs.rho(sys))
    windows = []
    for root in sys.positive_roots:
        v = _pair(root.coroot, x)
        windows.append(("wall", v // l) if v % l == 0 else ("open", v // l + 1))
    return Facet(l, tuple(windows))


def upper_closure_facet_of(gamma: Sequence[int], l: int, sys: RootSystem) -> Facet:
    """The facet whose upper closure contains gamma; a value ``l n`` attaches to window n."""
    x = rs.add(gamma, rs.rho(sys))
    windows = []
    for root in sys.positive_roots:
        v = _pair(root.coroot, x)
        windows.append(("open", -(-v // l)))
    return Facet(l, tuple(windows))


def _facet_constraints(facet: Facet) -> tuple[list[Hyperplane], list[tuple[int, int, int]]]:
    """Candidate bounding hyperplanes and closed constraints lo <= v_a <= hi."""
    planes: list[Hyperplane] = []
    bounds = []
    for a, (kind, n) in enumerate(facet.windows):
        if kind == "wall":
            planes.append((a, facet.l * n))
            bounds.append((a, facet.l * n, facet.l * n))
        else:
            planes += [(a, facet.l * (n - 1)), (a, facet.l * n)]
            bounds.append((a, facet.l * (n - 1), facet.l * n))
    return planes, bounds


def facet_vertices(facet: Facet, sys: RootSystem) -> list[tuple[Fraction, ...]]:
    """Vertices (in x = gamma + rho coordinates) of the closure of a facet."""
    planes, bounds = _facet_constraints(facet)
    roots = sys.positive_roots
    found = set()
    for combo in itertools.combinations(planes, sys.rank):
        if len({a for a, _ in combo}) < sys.rank:
            continue
        x = _solve([roots[a].coroot for a, _ in combo], [v for _, v in combo])
        if x is None:
            continue
        if all(lo <= _pair(roots[a].coroot, x) <= hi for a, lo, hi in bounds):
            found.add(x)
    if not found:
        raise ValueError("facet is empty")
    return sorted(found)


def facet_interior_point(facet: Facet, sys: RootSystem) -> tuple[Fraction, ...]:
    """A rational point of the facet itself (vertex centroid), as a weight gamma."""
    verts = facet_vertices(facet, sys)
    k = len(verts)
    x = tuple(sum(v[i] for v in verts) / k for i in range(sys.rank))
    return tuple(c - 1 for c in x)


def facet_walls(facet: Facet, sys: RootSystem) -> list[Hyperplane]:
    """Hyperplanes meeting the closure of the facet in codimension one (inside the facet)."""
    planes, _ = _facet_constraints(facet)
    verts = facet_vertices(facet, sys)
    dim = affine_dim(verts)
    roots = sys.positive_roots
    walls = []
    for a, val in planes:
        if facet.windows[a][0] == "wall":
            continue
        on = [v for v in verts if _pair(roots[a].coroot, v) == val]
        if on and affine_dim(on) == dim - 1:
            walls.append((a, val))
    return walls


def dot_reflect(root: int, m: int, gamma: Sequence, sys: RootSystem) -> tuple:
    """s_{alpha,m}.gamma = gamma - (<gamma + rho, alpha^vee> - m) alpha."""
    if not 0 <= root < len(sys.positive_roots):
        raise IndexError(f"root index {root} out of range")
    beta = sys.positive_roots[root]
    k = _pair(beta.coroot, rs.add(gamma, rs.rho(sys))) - m
    return tuple(g - k * b for g, b in zip(gamma, beta.weight))


def in_closed_antidominant(gamma: Sequence[int], l: int, sys: RootSystem) -> bool:
    x = rs.add(gamma, rs.rho(sys))
    return all(-l <= _pair(r.coroot, x) <= 0 for r in sys.positive_roots)


def canonical_length(gamma: Sequence[int], l: int, sys: RootSystem) -> int:
    """Number of l-hyperplanes strictly separating gamma from the antidominant alcove.

    This is the length of the minimal w with gamma = w.lambda.
    """
    x = rs.add(gamma, rs.rho(sys))
    total = 0
    for r in sys.positive_roots:
        v = _pair(r.coroot, x)
        if v > 0:
            total += (v - 1) // l + 1
        elif v < -l:
            total += (-l - v - 1) // l + 1
    return total


# ---------------------------------------------------------------------------
# the affine Weyl group


@dataclass(frozen=True, eq=False)
class AffineElement:
    """An element of W_l: the affine map x -> matrix.x + translation on x = gamma + rho."""

    matrix: Matrix
    translation: tuple[int, ...]
    word: tuple[int, ...] = field(repr=True)

    @property
    def key(self) -> Key:
        return (self.matrix, self.translation)

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        return isinstance(other, AffineElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)


class AffineWeylGroup:
    """W_l with Coxeter generators S_l = reflections in the walls of the antidominant alcove."""

    def __init__(self, sys: RootSystem, l: int, max_length: int = DEFAULT_MAX_LENGTH):
        if l < 1:
            raise ConfigError("l must be a positive integer")
        if max_length < 1:
            raise ConfigError("length bound must be >= 1")
        if sys.type_label == "G2" and l % 3 == 0:
            raise ConfigError("G2 with l divisible by 3 is unsupported "
                              "(W_l differs from the quantum affine Weyl group there)")
        self.sys = sys
        self.l = l
        self.max_length = max_length
        self.n = sys.rank
        self.fundamental = Facet(l, tuple(("open", 0) for _ in sys.positive_roots))
        verts = facet_vertices(self.fundamental, sys)
        self.reference = tuple(sum(v[i] for v in verts) / len(verts) for i in range(self.n))
        walls = facet_walls(self.fundamental, sys)
        self.generators: list[Hyperplane] = sorted(walls, key=lambda h: (h[1] != 0, h[0]))
        self._gen_keys: list[Key] = []
        self._inside: list[int] = []
        for a, m in self.generators:
            root = sys.positive_roots[a]
            self._gen_keys.append((rs.reflection_matrix(root),
                                   tuple(m * c for c in root.weight)))
            side = _pair(root.coroot, self.reference) - m
            self._inside.append(1 if side > 0 else -1)
        ident = rs.identity_matrix(self.n)
        self._ident_key: Key = (ident, (0,) * self.n)
        self._elements: dict[Key, AffineElement] = {}
        self._intervals: dict[Key, frozenset[Key]] = {}
        self._table: list[AffineElement] | None = None
        self.identity = self.element(self._ident_key)

    def __repr__(self) -> str:
        return f"AffineWeylGroup({self.sys.type_label}, l={self.l}, L={self.max_length})"

    # -- raw affine maps
    @staticmethod
    def compose(k1: Key, k2: Key) -> Key:
        m1, t1 = k1
        m2, t2 = k2
        return (rs.mat_mul(m1, m2), tuple(a + b for a, b in zip(rs.mat_vec(m1, t2), t1)))

    @staticmethod
    def apply(k: Key, x: Sequence) -> tuple:
        m, t = k
        return tuple(a + b for a, b in zip(rs.mat_vec(m, x), t))

    def _walk_to_fundamental(self, x: Sequence) -> tuple[tuple, tuple[int, ...]]:
        """Reflect x across violated walls until it lies in the closed alcove."""
        x = tuple(x)
        word = []
        roots = self.sys.positive_roots
        guard = 0
        while True:
            for i, (a, m) in enumerate(self.generators):
                side = _pair(roots[a].coroot, x) - m
                if side * self._inside[i] < 0:
                    x = self.apply(self._gen_keys[i], x)
                    word.append(i)
                    break
            else:
                return x, tuple(word)
            guard += 1
            if guard > 100_000:
                raise RuntimeError("wall-crossing walk did not terminate")

    def element(self, key: Key) -> AffineElement:
        el = self._elements.get(key)
        if el is None:
            _, word = self._walk_to_fundamental(self.apply(key, self.reference))
            el = AffineElement(key[0], key[1], word)
            self._elements[key] = el
        return el

    def from_word(self, word: Iterable[int]) -> AffineElement:
        key = self._ident_key
        for s in word:
            if not 0 <= s < len(self.generators):
                raise IndexError(f"generator index {s} out of range")
            key = self.compose(key, self._gen_keys[s])
        return self.element(key)

    def gen(self, s: int) -> AffineElement:
        return self.element(self._gen_keys[s])

    def times(self, x: AffineElement, s: int) -> AffineElement:
        """Right multiplication x * s."""
        return self.element(self.compose(x.key, self._gen_keys[s]))

    def left_times(self, s: int, x: AffineElement) -> AffineElement:
        return self.element(self.compose(self._gen_keys[s], x.key))

    def multiply(self, x: AffineElement, y: AffineElement) -> AffineElement:
        return self.element(self.compose(x.key, y.key))

    def length(self, x: AffineElement) -> int:
        return x.length

    def separation_length(self, key: Key) -> int:
        """Length via counting hyperplanes between the reference point and its image."""
        y = self.apply(key, self.reference)
        total = 0
        for r in self.sys.positive_roots:
            a = _pair(r.coroot, self.reference)
            b = _pair(r.coroot, y)
            total += abs((a // self.l) - (b // self.l))
        return total

    def finite_part(self, x: AffineElement) -> int:
        """Index of the linear part in :func:`root_system.weyl_group`."""
        for i, (m, _) in enumerate(rs.weyl_group(self.sys)):
            if m == x.matrix:
                return i
        raise RuntimeError("linear part not in the finite Weyl group")

    # -- dot action
    def dot(self, w: AffineElement, gamma: Sequence) -> tuple:
        x = self.apply(w.key, rs.add(gamma, rs.rho(self.sys)))
        return tuple(c - 1 for c in x)

    def canonical_form(self, gamma: Sequence[int]) -> tuple[Weight, AffineElement, frozenset[int]]:
        """gamma = w.lam with lam in the closed antidominant alcove and w minimal in w W_J."""
        x = rs.add(gamma, rs.rho(self.sys))
        y, word = self._walk_to_fundamental(x)
        lam = tuple(int(c) - 1 for c in y)
        w = self.from_word(word)
        return lam, w, self.stabilizer(lam)

    def stabilizer(self, lam: Sequence[int]) -> frozenset[int]:
        """Generators fixing lam under the dot action."""
        x = rs.add(lam, rs.rho(self.sys))
        roots = self.sys.positive_roots
        return frozenset(i for i, (a, m) in enumerate(self.generators)
                         if _pair(roots[a].coroot, x) == m)

    def is_minimal(self, w: AffineElement, J: Iterable[int]) -> bool:
        return all(self.times(w, s).length > w.length for s in J)

    # -- Bruhat order
    def check_bound(self, *elements: AffineElement) -> None:
        for x in elements:
            if x.length > self.max_length:
                raise BoundError(f"element of length {x.length} exceeds the "
                                 f"configured length bound {self.max_length}")

    def lower_interval(self, y: AffineElement) -> frozenset[Key]:
        """Keys of all x <= y, by the subword property on the reduced word of y."""
        got = self._intervals.get(y.key)
        if got is None:
            self.check_bound(y)
            reach = {self._ident_key}
            for s in y.word:
                g = self._gen_keys[s]
                reach |= {self.compose(u, g) for u in reach}
            got = self._intervals[y.key] = frozenset(reach)
        return got

    def bruhat_leq(self, x: AffineElement, y: AffineElement) -> bool:
        self.check_bound(x, y)
        if x.length > y.length:
            return False
        return x.key in self.lower_interval(y)

    def below(self, y: AffineElement) -> list[AffineElement]:
        """All x <= y as elements, sorted by length."""
        return sorted((self.element(k) for k in self.lower_interval(y)),
                      key=lambda e: (e.length, e.word))

    def elements(self) -> list[AffineElement]:
        """BFS table of all elements of length <= max_length."""
        if self._table is None:
            table = [self.identity]
            seen = {self.identity.key}
            frontier = [self.identity]
            for _ in range(self.max_length):
                nxt = []
                for x in frontier:
                    for s in range(len(self.generators)):
                        y = self.times(x, s)
                        if y.key not in seen and y.length == x.length + 1:
                            seen.add(y.key)
                            nxt.append(y)
                table += nxt
                frontier = nxt
            self._table = table
        return self._table

    def parabolic(self, J: Iterable[int], max_order: int = 10_000) -> list[AffineElement]:
        """Elements of the parabolic subgroup W_J; raises if it is (effectively) infinite."""
        J = sorted(J)
        if len(J) == len(self.generators):
            raise BoundError("parabolic subgroup on all generators is infinite")
        out = [self.identity]
        seen = {self.identity.key}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in J:
                    y = self.times(x, s)
                    if y.key not in seen:
                        seen.add(y.key)
                        out.append(y)
                        nxt.append(y)
                        if len(out) > max_order:
                            raise BoundError("parabolic subgroup too large")
            frontier = nxt
        return out


@lru_cache(maxsize=None)
def affine_weyl_group(sys: RootSystem, l: int, max_length: int = DEFAULT_MAX_LENGTH) -> AffineWeylGroup:
    """Shared group instance per (root system, l, length bound)."""
    return AffineWeylGroup(sys, l, max_length)


def generators(sys: RootSystem, l: int) -> list[Hyperplane]:
    return affine_weyl_group(sys, l).generators


def canonical_form(gamma: Sequence[int], l: int, sys: RootSystem,
                   max_length: int = DEFAULT_MAX_LENGTH):
    return affine_weyl_group(sys, l, max_length).canonical_form(gamma)


def orbit_dominant(lam: Sequence[int], l: int, bound: int, sys: RootSystem) -> list[tuple[Weight, int]]:
    """Dominant weights w.lam (max coordinate <= bound) with minimal-coset lengths.

    Sorted by length, then by weight, which is a linear extension of the
    uparrow order on the orbit.
    """
    lam = tuple(lam)
    if not in_closed_antidominant(lam, l, sys):
        raise ValueError(f"{lam} is not in the closed antidominant {l}-alcove")
    grp = affine_weyl_group(sys, l)
    out = []
    for gamma in itertools.product(range(bound + 1), repeat=sys.rank):
        x = rs.add(gamma, rs.rho(sys))
        y, _ = grp._walk_to_fundamental(x)
        if tuple(c - 1 for c in y) == lam:
            out.append((gamma, canonical_length(gamma, l, sys)))
    out.sort(key=lambda t: (t[1], t[0]))
    return out


def bruhat_leq(x: AffineElement, y: AffineElement, group: AffineWeylGroup) -> bool:
    return group.bruhat_leq(x, y)


def wall_mirrors_below(gamma: Sequence[int], l: int, sys: RootSystem) -> list[Weight]:
    """Dominant reflections of gamma through walls of its facet that lie below gamma."""
    gamma = tuple(gamma)
    if not rs.is_dominant(gamma):
        raise ValueError("gamma must be dominant")
    facet = facet_of(gamma, l, sys)
    here = canonical_length(gamma, l, sys)
    out = set()
    for a, val in facet_walls(facet, sys):
        img = dot_reflect(a, val, gamma, sys)
        if rs.is_dominant(img) and img != gamma and canonical_length(img, l, sys) < here:
            out.add(img)
    return sorted(out)

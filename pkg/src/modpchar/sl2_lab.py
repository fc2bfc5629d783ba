"""Closed-form SL2 machinery and the worked example built on the weight 10, p = 3, r = 2.

Restricted base cases are taken as axioms here: ch L(c) = chi(c) for
0 <= c < p and ch L_zeta(c) = chi(c) for 0 <= c < p^r (the latter is the
closed bottom p^r-alcove, where Delta_zeta is simple).  Everything else follows
from the Steinberg tensor product theorems.

Resolutions are formal multisets of (dominant weight, shift) standing for
shifted standard objects; Ext against costandard objects is read off from
them by the orthogonality Ext^n(Delta(a), nabla(b)) = k iff a = b and n = 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .alcove import affine_weyl_group, canonical_length
from .char_ring import Character, frobenius_twist, weyl_char
from .root_system import builtin

A1 = builtin("A1")

SimpleChars = Callable[[int], Character]


def _n(gamma) -> int:
    if isinstance(gamma, int):
        n = gamma
    else:
        (n,) = gamma
    if n < 0:
        raise ValueError("A1 dominant weights are nonnegative integers")
    return n


def chi(n: int) -> Character:
    return weyl_char((n,), A1)


def a1_simple_char(n, p: int) -> Character:
    """ch L(n) for SL2 in characteristic p: product of twisted chi(digit) over base-p digits."""
    n = _n(n)
    out = Character.monomial((0,))
    q = 1
    while n:
        n, d = divmod(n, p)
        out = out * frobenius_twist(chi(d), q)
        q *= p
    return out


def a1_quantum_simple_char(n, p: int, r: int) -> Character:
    """ch L_zeta(n) at a primitive p^r-th root of unity: chi(n0) * chi(n1) twisted by p^r."""
    if r < 1:
        raise ValueError("r must be >= 1")
    n = _n(n)
    l = p ** r
    n1, n0 = divmod(n, l)
    return chi(n0) * frobenius_twist(chi(n1), l)


def simple_basis(ch: Character, simple: SimpleChars) -> dict[int, int]:
    """Coefficients of ch in a unitriangular basis of simple characters (highest weight first)."""
    rem = ch
    out: dict[int, int] = {}
    while rem:
        (top,) = max(rem)
        if top < 0:
            raise RuntimeError(f"leftover non-dominant support at {top}")
        c = rem[(top,)]
        out[top] = c
        rem = rem - simple(top) * c
    return out


def _nonneg(coeffs: dict[int, int]) -> dict[tuple[int], int]:
    if any(c < 0 for c in coeffs.values()):
        raise RuntimeError(f"negative decomposition number in {coeffs}")
    return {(n,): c for n, c in sorted(coeffs.items(), reverse=True)}


def a1_decomposition_numbers(gamma, p: int) -> dict[tuple[int], int]:
    """[Delta(gamma) : L(gamma')] for all gamma'."""
    return _nonneg(simple_basis(chi(_n(gamma)), lambda n: a1_simple_char(n, p)))


def a1_quantum_decomposition_numbers(gamma, p: int, r: int) -> dict[tuple[int], int]:
    """[Delta_zeta(gamma) : L_zeta(gamma')] at a primitive p^r-th root of unity."""
    return _nonneg(simple_basis(chi(_n(gamma)), lambda n: a1_quantum_simple_char(n, p, r)))


# ---------------------------------------------------------------------------
# resolutions by shifted standard objects


@dataclass(frozen=True)
class DeltaResolution:
    """A formal alternating resolution of ``target`` by shifted Weyl modules."""

    target: Character
    entries: tuple[tuple[tuple[int, ...], int], ...]

    def alternating_sum(self) -> Character:
        out = Character.zero(self.target.rank)
        for wt, shift in self.entries:
            out = out + weyl_char(wt, A1) * (-1) ** shift
        return out

    def to_json(self) -> dict:
        return {"target": self.target.to_json(A1),
                "entries": [{"wt": list(wt), "shift": k} for wt, k in sorted(self.entries)]}


def validate_resolution(res: DeltaResolution) -> bool:
    if any(k < 0 for _, k in res.entries):
        return False
    return res.alternating_sum() == res.target


def ext_dims(res: DeltaResolution, lam) -> dict[int, int]:
    """dim Ext^i(target, nabla(lam)) per shift i."""
    if not validate_resolution(res):
        raise ValueError("invalid resolution: alternating sum does not match the target")
    lam = (_n(lam),)
    counts = Counter(k for wt, k in res.entries if tuple(wt) == lam)
    return dict(sorted(counts.items()))


def head_weight(res: DeltaResolution) -> tuple[int, ...]:
    return max(res.target)


def parity_report(res: DeltaResolution, p: int) -> list[tuple[tuple[int, ...], int]]:
    """(lam', n) with Ext^n(target, nabla(lam')) != 0 although l(w) - l(y) and n differ in parity."""
    grp = affine_weyl_group(A1, p)
    head = head_weight(res)
    weights = {head} | {tuple(wt) for wt, _ in res.entries}
    lams = set()
    for wt in weights:
        lam, _, J = grp.canonical_form(wt)
        if J:
            raise ValueError(f"{wt} is singular for l={p}")
        lams.add(lam)
    if len(lams) != 1:
        raise ValueError(f"weights lie in different W_{p}-orbits: {sorted(lams)}")
    lw = canonical_length(head, p, A1)
    out = []
    for wt in sorted({tuple(wt) for wt, _ in res.entries}):
        ly = canonical_length(wt, p, A1)
        for n in ext_dims(res, wt):
            if (lw - ly - n) % 2:
                out.append((wt, n))
    return out


# ---------------------------------------------------------------------------
# Loewy data and the mechanical peeling of triangles


@dataclass(frozen=True)
class LoewyData:
    """Radical layers (top first), each a multiset of highest weights of simples."""

    layers: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def of(cls, *layers: Sequence[int]) -> LoewyData:
        return cls(tuple(tuple((n,) for n in layer) for layer in layers))

    def __post_init__(self):
        if not self.layers or any(not layer for layer in self.layers):
            raise ValueError("Loewy data needs nonempty layers")

    def weights(self) -> list[tuple[int, ...]]:
        return [wt for layer in self.layers for wt in layer]

    def character(self, simple: SimpleChars) -> Character:
        out = Character.zero(1)
        for wt in self.weights():
            out = out + simple(_n(wt))
        return out

    def to_json(self) -> dict:
        return {"layers": [[list(wt) for wt in layer] for layer in self.layers]}

    def __str__(self) -> str:
        return " / ".join("+".join(f"L({wt[0]})" for wt in layer) for layer in self.layers)


State = list[tuple[LoewyData, int]]


@dataclass
class Triangle:
    """One distinguished triangle: the sum of Delta(mu)[k] over ``cones`` maps to ``before``."""

    mu: tuple[int, ...]
    cones: list[tuple[tuple[int, ...], int]]
    before: State
    after: State = field(default_factory=list)


def _alt_char(state: State, simple: SimpleChars) -> Character:
    out = Character.zero(1)
    for m, k in state:
        out = out + m.character(simple) * (-1) ** k
    return out


def peel_step(state: State, weyl_structures: Mapping[tuple[int, ...], LoewyData],
              simple: SimpleChars) -> tuple[Triangle, State]:
    """Map Delta(mu)[k] onto each component containing the highest weight mu.

    The image is the longest run of top layers of Delta(mu) found layer by
    layer in the component, starting at the top-most layer holding mu; the
    cone contributes the kernel shifted by one and the cokernel in place.
    The step is rejected when the supplied data are not character-consistent.
    """
    if not state:
        raise ValueError("nothing left to peel")
    mu = max(wt for m, _ in state for wt in m.weights())
    if mu not in weyl_structures:
        raise ValueError(f"no Weyl-module structure supplied for {mu}")
    delta = weyl_structures[mu]
    if delta.layers[0] != (mu,):
        raise ValueError(f"supplied Delta{mu} does not have head L{mu}")
    if delta.character(simple) != weyl_char(mu, A1):
        raise ValueError(f"character imbalance: supplied layers of Delta{mu} do not sum to chi{mu}")
    nxt: State = []
    cones = []
    for m, k in state:
        if mu not in m.weights():
            nxt.append((m, k))
            continue
        pos = next(i for i, layer in enumerate(m.layers) if mu in layer)
        layers = [Counter(layer) for layer in m.layers]
        depth = 0
        for j, dl in enumerate(delta.layers):
            i = pos + j
            if i >= len(layers) or Counter(dl) - layers[i]:
                break
            layers[i] = layers[i] - Counter(dl)
            depth += 1
        cones.append((mu, k))
        coker = [tuple(sorted(c.elements(), reverse=True)) for c in layers]
        coker = [layer for layer in coker if layer]
        if coker:
            nxt.append((LoewyData(tuple(coker)), k))
        if depth < len(delta.layers):
            nxt.append((LoewyData(delta.layers[depth:]), k + 1))
    tri = Triangle(mu, cones, list(state), nxt)
    balance = _alt_char(nxt, simple)
    for wt, k in cones:
        balance = balance + weyl_char(wt, A1) * (-1) ** k
    if balance != _alt_char(state, simple):
        raise ValueError(f"character imbalance in the triangle peeling Delta{mu}")
    return tri, nxt


def peel(state: State, weyl_structures: Mapping[tuple[int, ...], LoewyData],
         simple: SimpleChars, max_steps: int = 1000) -> tuple[list[Triangle], DeltaResolution]:
    """Iterate :func:`peel_step` to exhaustion and collect the resolution."""
    target = _alt_char(state, simple)
    triangles = []
    entries = []
    for _ in range(max_steps):
        if not state:
            break
        tri, state = peel_step(state, weyl_structures, simple)
        triangles.append(tri)
        entries += tri.cones
    else:
        raise RuntimeError("peeling did not terminate")
    return triangles, DeltaResolution(target, tuple(sorted(entries, key=lambda e: (e[1], -e[0][0]))))


@dataclass(frozen=True)
class WorkedExample:
    p: int
    r: int
    resolution: DeltaResolution
    loewy: dict
    start: tuple
    loewy_10_alt: LoewyData

    def simple(self, n: int) -> Character:
        """Simple characters in which the Loewy layers are written (characteristic p)."""
        return a1_simple_char(n, self.p)

    def run(self) -> tuple[list[Triangle], DeltaResolution]:
        return peel(list(self.start), self.loewy, self.simple)


def builtin_paper_example() -> WorkedExample:
    """SL2, p = 3, r = 2: Delta^red_2(10) = L(10) resolved by Weyl modules.

    Delta(10) is taken with radical layers L(10) / L(4) / L(6).  The other
    shape allowed by characters, L(10) / L(4)+L(6), is kept as ``loewy_10_alt``;
    peeling cannot tell the two apart at the level of characters.
    """
    p, r = 3, 2
    loewy = {
        (0,): LoewyData.of([0]),
        (4,): LoewyData.of([4], [0]),
        (6,): LoewyData.of([6], [4]),
        (10,): LoewyData.of([10], [4], [6]),
    }
    entries = (((10,), 0), ((6,), 1), ((4,), 1), ((4,), 2), ((0,), 2), ((0,), 3))
    target = a1_quantum_simple_char(10, p, r)
    start = ((LoewyData.of([10]), 0),)
    return WorkedExample(p, r, DeltaResolution(target, entries), loewy, start,
                        LoewyData.of([10], [4, 6]))

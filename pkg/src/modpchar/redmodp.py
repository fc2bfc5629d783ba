"""Characters of reductions mod p of quantum simples, Steinberg digits and Hom/Ext predictions.

Duals share characters, so ch nabla_red^r = ch Delta_red^r and ch nabla_{p^r} =
ch Delta^{p^r}; only the Delta-side is computed.  Anything built on the
Kazhdan-Lusztig character formula assumes that p^r is KL-good and is tagged
with :data:`ASSUMES_KL_GOOD`.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from . import root_system as rs
from .alcove import affine_weyl_group, canonical_length
from .char_ring import Character, dominates, frobenius_twist, weyl_char, weyl_combination
from .errors import ConfigError
from .kl import LaurentPolynomial, kl_table
from .root_system import RootSystem, Weight

ASSUMES_KL_GOOD = "KL-good p^r"
# affine A1 at l = 3 reaches length ~67 for weights up to 200
DEFAULT_MAX_LENGTH = 96

HOM_ZERO = "Hom = 0 certified"
NO_OBSTRUCTION = "no obstruction"
PREDICTION_TAGS = ("Hom≠0", "Ext1≠0")

SimpleTable = Mapping[Weight, Character]


def _dominant(gamma: Sequence[int], sys: RootSystem) -> Weight:
    gamma = tuple(int(c) for c in gamma)
    if len(gamma) != sys.rank:
        raise ValueError("weight rank does not match root system")
    if not rs.is_dominant(gamma):
        raise ValueError(f"{gamma} is not dominant")
    return gamma


def steinberg_factor(gamma: Sequence[int], p: int, r: int) -> tuple[Weight, Weight]:
    """gamma = gamma0 + p^r gamma1 with 0 <= gamma0_i < p^r."""
    if r < 0:
        raise ValueError("r must be >= 0")
    q = p ** r
    if any(c < 0 for c in gamma):
        raise ValueError(f"{tuple(gamma)} is not dominant")
    return tuple(c % q for c in gamma), tuple(c // q for c in gamma)


@lru_cache(maxsize=None)
def _red_weyl(gamma: Weight, p: int, r: int, sys: RootSystem, max_length: int) -> tuple:
    grp = affine_weyl_group(sys, p ** r, max_length)
    lam, w, J = grp.canonical_form(gamma)
    grp.check_bound(w)
    table = kl_table(grp)
    terms = []
    for key in grp.lower_interval(w):
        y = grp.element(key)
        if not grp.is_minimal(y, J):
            continue
        wt = grp.dot(y, lam)
        if not rs.is_dominant(wt):
            continue
        c = table.parabolic_kl(J, y, w)(-1)
        if c:
            terms.append((wt, (-1) ** (w.length - y.length) * c))
    return tuple(sorted(weyl_combination(terms, sys).items()))


def red_delta_weyl(gamma: Sequence[int], p: int, r: int, sys: RootSystem,
                   max_length: int = DEFAULT_MAX_LENGTH) -> dict[Weight, int]:
    """ch Delta_red^r(gamma) in the Weyl basis (KL character formula at l = p^r)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return dict(_red_weyl(_dominant(gamma, sys), p, r, sys, max_length))


def red_delta_char(gamma: Sequence[int], p: int, r: int, sys: RootSystem,
                   max_length: int = DEFAULT_MAX_LENGTH) -> Character:
    """ch Delta_red^r(gamma) = sum_y (-1)^(l(w)-l(y)) P^J_{y,w}(-1) chi(y.lam)."""
    out = Character.zero(sys.rank)
    for mu, c in red_delta_weyl(gamma, p, r, sys, max_length).items():
        out = out + weyl_char(mu, sys) * c
    return out


# ---------------------------------------------------------------------------
# Delta^{p^r}


def load_simple_table(path: str | Path) -> dict[Weight, Character]:
    """Read ``{"table": [{"wt": [...], "character": <Character JSON>}, ...]}``."""
    try:
        data = json.loads(Path(path).read_text())
        return {tuple(e["wt"]): Character.from_json(e["character"]) for e in data["table"]}
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"cannot read simple-character table {path}: {exc}") from exc


def restricted_simple_char(gamma0: Weight, p: int, sys: RootSystem,
                           simple_table: SimpleTable | None = None) -> Character:
    """ch L(gamma0): from the table when given, built in for A1, otherwise an error."""
    if simple_table is not None:
        try:
            return simple_table[tuple(gamma0)]
        except KeyError:
            raise ConfigError(f"simple-character table has no entry for {tuple(gamma0)}") from None
    if sys.type_label == "A1":
        from .sl2_lab import a1_simple_char
        return a1_simple_char(gamma0, p)
    raise ConfigError(f"no restricted simple characters known for {sys.type_label}; "
                      "supply a simple-character table")


def delta_pr_char(gamma: Sequence[int], p: int, r: int, sys: RootSystem,
                  simple_table: SimpleTable | None = None) -> Character:
    """ch L(gamma0) * chi(gamma1) twisted by p^r; r = 0 gives chi(gamma)."""
    gamma = _dominant(gamma, sys)
    g0, g1 = steinberg_factor(gamma, p, r)
    if r == 0:
        return weyl_char(gamma, sys)
    head = restricted_simple_char(g0, p, sys, simple_table) if any(g0) else \
        Character.monomial((0,) * sys.rank)
    return head * frobenius_twist(weyl_char(g1, sys), p ** r)


# ---------------------------------------------------------------------------
# checks and verdicts


def lin_identity_check(gamma: Sequence[int], p: int, r: int, sys: RootSystem,
                       max_length: int = DEFAULT_MAX_LENGTH) -> bool:
    """Delta_red^r(gamma0 + p^r gamma1) vs Delta_red^r(gamma0) (x) Delta(gamma1)^[r], on characters."""
    gamma = _dominant(gamma, sys)
    g0, g1 = steinberg_factor(gamma, p, r)
    rhs = red_delta_char(g0, p, r, sys, max_length) * frobenius_twist(weyl_char(g1, sys), p ** r)
    return red_delta_char(gamma, p, r, sys, max_length) == rhs


def chain_domination_check(gamma: Sequence[int], p: int, r: int, sys: RootSystem,
                           simple_table: SimpleTable | None = None) -> bool:
    """ch Delta^{p^(r-1)}(gamma) >= ch Delta^{p^r}(gamma), with Delta^{p^0} = Delta."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return dominates(delta_pr_char(gamma, p, r - 1, sys, simple_table),
                     delta_pr_char(gamma, p, r, sys, simple_table))


def hom_obstruction(gamma: Sequence[int], p: int, r: int, r2: int, sys: RootSystem,
                    max_length: int = DEFAULT_MAX_LENGTH) -> str:
    """Nonzero maps Delta_red^r -> Delta_red^{r2} are onto, so non-domination kills Hom."""
    a = red_delta_char(gamma, p, r, sys, max_length)
    b = red_delta_char(gamma, p, r2, sys, max_length)
    return NO_OBSTRUCTION if dominates(a, b) else HOM_ZERO


def nondomination_scan(p: int, r1: int, r2: int, max_weight: int, sys: RootSystem,
                       max_length: int = DEFAULT_MAX_LENGTH) -> Iterator[dict]:
    """For each dominant gamma (coordinates <= max_weight) whether ch Delta_red^r1 >= ch Delta_red^r2."""
    for gamma in itertools.product(range(max_weight + 1), repeat=sys.rank):
        a = red_delta_char(gamma, p, r1, sys, max_length)
        b = red_delta_char(gamma, p, r2, sys, max_length)
        yield {"gamma": gamma, "dominates": dominates(a, b), "char_r1": a, "char_r2": b}


def first_nondomination_witness(p: int, r1: int, r2: int, max_weight: int, sys: RootSystem,
                                max_length: int = DEFAULT_MAX_LENGTH) -> dict | None:
    for row in nondomination_scan(p, r1, r2, max_weight, sys, max_length):
        if not row["dominates"]:
            return row
    return None


# ---------------------------------------------------------------------------
# predictions


def predicted_nonzero_hom_ext(gamma: Sequence[int], p: int, r: int, sys: RootSystem,
                              max_length: int = DEFAULT_MAX_LENGTH) -> list[tuple[Weight, tuple[str, str]]]:
    """gamma' = ws.lam above gamma = w.lam, for s a wall of the facet of gamma.

    Each gamma' is predicted to carry a nonzero map Delta(gamma) -> Delta(gamma')
    and a nonzero Ext^1 between the two Weyl modules.
    """
    gamma = _dominant(gamma, sys)
    l = p ** r
    if l < sys.coxeter_number:
        raise ConfigError(f"p^r = {l} is below the Coxeter number {sys.coxeter_number}")
    grp = affine_weyl_group(sys, l, max_length)
    lam, w, J = grp.canonical_form(gamma)
    out = set()
    for s in range(len(grp.generators)):
        if s in J:
            continue
        ws = grp.times(w, s)
        if ws.length < w.length or not grp.is_minimal(ws, J):
            continue
        img = grp.dot(ws, lam)
        if rs.is_dominant(img):
            out.add(tuple(img))
    return [(g, PREDICTION_TAGS) for g in sorted(out)]


def predicted_homs_parabolic(lam: Sequence[int], s: int, w: Iterable[int] | object, p: int, r: int,
                             sys: RootSystem, max_length: int = DEFAULT_MAX_LENGTH
                             ) -> list[tuple[Weight, Weight]]:
    """Pairs (wx.lam, wy.lam), x < y in the finite parabolic W_{S minus s}, with Hom != 0.

    ``w`` is an element of the group or a word in its generators.
    """
    grp = affine_weyl_group(sys, p ** r, max_length)
    if not 0 <= s < len(grp.generators):
        raise IndexError(f"generator index {s} out of range")
    lam = tuple(lam)
    if hasattr(w, "key"):
        w_el = w
    else:
        w_el = grp.from_word(w)
    K = [t for t in range(len(grp.generators)) if t != s]
    if not grp.is_minimal(w_el, K):
        raise ValueError("w is not a minimal coset representative for S minus {s}")
    par = grp.parabolic(K)
    out = []
    for x in par:
        wx = grp.multiply(w_el, x)
        gx = grp.dot(wx, lam)
        if not rs.is_dominant(gx):
            continue
        for y in par:
            if y.length <= x.length or not grp.bruhat_leq(x, y):
                continue
            gy = grp.dot(grp.multiply(w_el, y), lam)
            if rs.is_dominant(gy) and gy != gx:
                out.append((tuple(gx), tuple(gy)))
    return sorted(set(out))


def quantum_ext_lower_bounds(gamma: Sequence[int], gamma2: Sequence[int], p: int, r: int,
                             sys: RootSystem, kind: str = "delta-L",
                             max_length: int = DEFAULT_MAX_LENGTH) -> LaurentPolynomial:
    """Quantum Ext series at l = p^r, a lower bound for the matching G-side Ext dimensions.

    ``kind`` is ``"delta-L"`` for Ext(Delta_zeta(gamma), L_zeta(gamma2)) or ``"L-L"``.
    """
    if kind not in ("delta-L", "L-L"):
        raise ConfigError(f"unknown Ext kind {kind!r}")
    gamma, gamma2 = _dominant(gamma, sys), _dominant(gamma2, sys)
    grp = affine_weyl_group(sys, p ** r, max_length)
    lam, y, J = grp.canonical_form(gamma)
    lam2, w, _ = grp.canonical_form(gamma2)
    if lam != lam2:
        return LaurentPolynomial()
    table = kl_table(grp)
    if kind == "delta-L":
        return table.ext_series_delta_L(y, w, J)
    return table.ext_series_LL(y, w, J, lam)


def chain_lengths(weights: Iterable[Sequence[int]], l: int, sys: RootSystem) -> dict[Weight, int]:
    """Minimal-coset lengths of a list of weights at level l."""
    return {tuple(g): canonical_length(g, l, sys) for g in weights}

"""Jantzen sum-formula characters and their splitting by p-power level."""

from __future__ import annotations

from typing import Iterator, Sequence

from . import root_system as rs
from .alcove import dot_reflect, wall_mirrors_below
from .char_ring import Character, from_weyl_basis, weyl_combination
from .root_system import RootSystem, Weight


def nu_p(n: int, p: int) -> int:
    """p-adic valuation of a positive integer."""
    if n <= 0:
        raise ValueError("nu_p needs a positive integer")
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    return r


def _reflections(gamma: Sequence[int], step: int, sys: RootSystem) -> Iterator[tuple[int, Weight]]:
    """(m*step, s_{alpha, m*step}.gamma) for 0 < m*step < <gamma+rho, alpha^vee>, all alpha > 0."""
    x = rs.add(gamma, rs.rho(sys))
    for a, root in enumerate(sys.positive_roots):
        top = sum(c * v for c, v in zip(root.coroot, x))
        for mp in range(step, top, step):
            yield mp, dot_reflect(a, mp, gamma, sys)


def _check(gamma: Sequence[int], sys: RootSystem) -> Weight:
    gamma = tuple(gamma)
    if len(gamma) != sys.rank:
        raise ValueError("weight rank does not match root system")
    if not rs.is_dominant(gamma):
        raise ValueError("gamma must be dominant")
    return gamma


def chi_J_weyl(gamma: Sequence[int], p: int, sys: RootSystem) -> dict[Weight, int]:
    """The Jantzen sum character in the dominant Weyl basis."""
    gamma = _check(gamma, sys)
    return weyl_combination(((img, nu_p(mp, p)) for mp, img in _reflections(gamma, p, sys)), sys)


def chi_J_level_weyl(gamma: Sequence[int], p: int, r: int, sys: RootSystem) -> dict[Weight, int]:
    """chi_J(gamma, p^r) in the dominant Weyl basis."""
    if r < 1:
        raise ValueError("r must be >= 1")
    gamma = _check(gamma, sys)
    return weyl_combination(((img, 1) for _, img in _reflections(gamma, p ** r, sys)), sys)


def chi_J(gamma: Sequence[int], p: int, sys: RootSystem) -> Character:
    return from_weyl_basis(chi_J_weyl(gamma, p, sys), sys)


def chi_J_level(gamma: Sequence[int], p: int, r: int, sys: RootSystem) -> Character:
    return from_weyl_basis(chi_J_level_weyl(gamma, p, r, sys), sys)


def max_level(gamma: Sequence[int], p: int, sys: RootSystem) -> int:
    """Largest r with p^r < max_alpha <gamma+rho, alpha^vee>; higher levels are empty."""
    x = rs.add(gamma, rs.rho(sys))
    top = max(sum(c * v for c, v in zip(root.coroot, x)) for root in sys.positive_roots)
    r = 0
    while p ** (r + 1) < top:
        r += 1
    return r


def check_sum_decomposition(gamma: Sequence[int], p: int, sys: RootSystem) -> tuple[bool, dict]:
    """Compare chi_J(gamma) with sum_r chi_J(gamma, p^r), exactly, in the Weyl basis."""
    lhs = chi_J_weyl(gamma, p, sys)
    rhs: dict[Weight, int] = {}
    levels = max_level(gamma, p, sys)
    for r in range(1, levels + 1):
        for mu, c in chi_J_level_weyl(gamma, p, r, sys).items():
            rhs[mu] = rhs.get(mu, 0) + c
    rhs = {mu: c for mu, c in rhs.items() if c}
    report = {
        "gamma": list(gamma),
        "levels": levels,
        "lhs": {str(list(mu)): c for mu, c in sorted(lhs.items())},
        "rhs": {str(list(mu)): c for mu, c in sorted(rhs.items())},
        "max_abs_coeff": max((abs(c) for c in lhs.values()), default=0),
    }
    return lhs == rhs, report


def predicted_factors_jscor(gamma: Sequence[int], p: int, r: int, sys: RootSystem) -> list[Weight]:
    """gamma' < gamma mirrored through a wall of the p^r-facet of gamma: [Delta(gamma):L(gamma')] != 0."""
    return wall_mirrors_below(gamma, p ** r, sys)

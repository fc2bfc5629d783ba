from __future__ import annotations

import json

import pytest

from modpchar import root_system as rs
from modpchar.char_ring import Character, dominates, weyl_char
from modpchar.errors import BoundError, ConfigError
from modpchar.kl import LaurentPolynomial
from modpchar.redmodp import (HOM_ZERO, NO_OBSTRUCTION, chain_domination_check, delta_pr_char,
                              first_nondomination_witness, hom_obstruction, lin_identity_check,
                              load_simple_table, predicted_homs_parabolic, predicted_nonzero_hom_ext,
                              quantum_ext_lower_bounds, red_delta_char, red_delta_weyl,
                              steinberg_factor)
from modpchar.sl2_lab import a1_decomposition_numbers, a1_quantum_simple_char

A1, A2, B2, G2 = (rs.builtin(t) for t in ("A1", "A2", "B2", "G2"))


def chi(n):
    return weyl_char((n,), A1)


def e(*ns):
    return Character(1, [((n,), 1) for n in ns])


def test_steinberg_factor():
    assert steinberg_factor((10,), 3, 1) == ((1,), (3,))
    assert steinberg_factor((10,), 3, 2) == ((1,), (1,))
    assert steinberg_factor((8,), 3, 2) == ((8,), (0,))


def test_red_delta_examples():
    assert red_delta_char((10,), 3, 2, A1) == e(10, 8, -8, -10)
    assert red_delta_char((6,), 3, 2, A1) == chi(6)
    assert red_delta_weyl((10,), 3, 1, A1) == {(10,): 1, (6,): -1, (4,): 1, (0,): -1}
    # closed bottom alcove: the full Weyl character
    for g in range(0, 8):
        assert red_delta_char((g,), 3, 2, A1) == chi(g)


def test_red_delta_equals_quantum_simple_sweep():
    for r in (1, 2):
        for g in range(0, 81):
            assert red_delta_char((g,), 3, r, A1) == a1_quantum_simple_char(g, 3, r), (g, r)


def test_red_delta_bounded_by_weyl_character():
    for sys, p in ((A1, 3), (A2, 3), (B2, 5)):
        for gamma in [(0,) * sys.rank, (2,) * sys.rank, (4, 1)[: sys.rank], (1, 5)[: sys.rank]]:
            red = red_delta_char(gamma, p, 1, sys, max_length=24)
            full = weyl_char(gamma, sys)
            assert dominates(full, red)
            assert red[gamma] == 1


def test_delta_pr():
    assert delta_pr_char((10,), 3, 1, A1) == e(1, -1) * e(9, 3, -3, -9)
    assert delta_pr_char((10,), 3, 2, A1) == e(10, 8, -8, -10)
    assert delta_pr_char((5,), 3, 2, A1) == chi(5)
    assert delta_pr_char((10,), 3, 0, A1) == chi(10)
    with pytest.raises(ConfigError):
        delta_pr_char((1, 0), 3, 1, A2)


def test_simple_table_import(tmp_path):
    table = {"table": [{"wt": [1, 0], "character": weyl_char((1, 0), A2).to_json(A2)}]}
    f = tmp_path / "t.json"
    f.write_text(json.dumps(table))
    tab = load_simple_table(f)
    got = delta_pr_char((4, 0), 3, 1, A2, tab)
    assert got[(4, 0)] == 1
    with pytest.raises(ConfigError):
        delta_pr_char((2, 0), 3, 1, A2, tab)
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ConfigError):
        load_simple_table(bad)


def test_steinberg_lin_chain_sweep():
    for r in (1, 2):
        for g in range(0, 81):
            assert lin_identity_check((g,), 3, r, A1)
            assert chain_domination_check((g,), 3, r, A1)
            assert dominates(red_delta_char((g,), 3, r, A1), delta_pr_char((g,), 3, r, A1))


def test_chain_examples():
    assert chain_domination_check((10,), 3, 2, A1)
    assert delta_pr_char((2,), 3, 1, A1) == delta_pr_char((2,), 3, 2, A1)


def test_hom_obstruction():
    assert hom_obstruction((10,), 3, 2, 1, A1) == HOM_ZERO
    assert hom_obstruction((10,), 3, 1, 2, A1) == NO_OBSTRUCTION
    assert hom_obstruction((10,), 3, 2, 2, A1) == NO_OBSTRUCTION


def test_nondomination_witnesses_both_directions():
    w = first_nondomination_witness(3, 2, 1, 200, A1)
    assert w is not None and not dominates(w["char_r1"], w["char_r2"])
    w = first_nondomination_witness(3, 1, 2, 200, A1)
    assert w is not None and not dominates(w["char_r1"], w["char_r2"])


def test_hom_ext_predictions():
    assert predicted_nonzero_hom_ext((6,), 3, 1, A1) == [((10,), ("Hom≠0", "Ext1≠0"))]
    assert predicted_nonzero_hom_ext((10,), 3, 2, A1) == [((24,), ("Hom≠0", "Ext1≠0"))]
    assert predicted_nonzero_hom_ext((8,), 3, 1, A1) == []
    with pytest.raises(ConfigError):
        predicted_nonzero_hom_ext((1, 1), 1, 1, A2)


def test_hom_ext_necessary_condition():
    for r in (1, 2):
        for g in range(0, 61):
            for (g2,), _ in predicted_nonzero_hom_ext((g,), 3, r, A1):
                if g2 <= 60:
                    assert (g,) in a1_decomposition_numbers(g2, 3)


def test_parabolic_homs_a1():
    pairs = predicted_homs_parabolic((-2,), 0, (0,), 3, 1, A1)
    assert pairs == [((0,), (4,))]
    # the pair (w, ws) recovers a wall-crossing Hom prediction
    assert predicted_nonzero_hom_ext((0,), 3, 1, A1)[0][0] == (4,)
    with pytest.raises(ValueError):
        predicted_homs_parabolic((-2,), 0, (0, 1), 3, 1, A1)


def test_parabolic_homs_a2_bruhat():
    from modpchar.alcove import affine_weyl_group
    grp = affine_weyl_group(A2, 3, 96)
    w = grp.from_word((1, 0))
    pairs = predicted_homs_parabolic((-2, -2), 0, w, 3, 1, A2)
    assert pairs == [((0, 0), (0, 3)), ((0, 0), (1, 1)), ((1, 1), (0, 3))]
    # x < y in the finite parabolic on generators {1, 2}: check each pair against lengths
    for a, b in pairs:
        assert grp.canonical_form(a)[1].length < grp.canonical_form(b)[1].length


def test_quantum_ext_lower_bounds():
    assert quantum_ext_lower_bounds((4,), (4,), 3, 1, A1) == 1
    assert quantum_ext_lower_bounds((4,), (10,), 3, 1, A1) == LaurentPolynomial.monomial(2)
    assert quantum_ext_lower_bounds((4,), (5,), 3, 1, A1) == 0
    assert quantum_ext_lower_bounds((10,), (10,), 3, 1, A1, "L-L") == \
        LaurentPolynomial({0: 1, 2: 1, 4: 1, 6: 1})
    with pytest.raises(ConfigError):
        quantum_ext_lower_bounds((4,), (4,), 3, 1, A1, "bogus")


def test_errors():
    with pytest.raises(BoundError):
        red_delta_char((60,), 3, 1, A1, max_length=8)
    with pytest.raises(ConfigError):
        red_delta_char((1, 1), 3, 1, G2)
    with pytest.raises(ValueError):
        red_delta_char((-1,), 3, 1, A1)

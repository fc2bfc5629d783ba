from __future__ import annotations

import pytest

from modpchar import root_system as rs
from modpchar.char_ring import Character, decompose_weyl_basis, weyl_char
from modpchar.sl2_lab import (DeltaResolution, LoewyData, a1_decomposition_numbers,
                              a1_quantum_decomposition_numbers, a1_quantum_simple_char,
                              a1_simple_char, builtin_paper_example, chi, ext_dims, parity_report,
                              peel, peel_step, validate_resolution)
from oracles import a1_quantum_simple_weights, a1_simple_weights

A1 = rs.builtin("A1")


def e(*ns):
    return Character(1, [((n,), 1) for n in ns])


def test_simple_characters():
    assert a1_simple_char(2, 3) == chi(2)
    assert a1_simple_char(4, 3) == e(4, 2, -2, -4)
    assert a1_simple_char(10, 3) == e(10, 8, -8, -10)
    assert a1_quantum_simple_char(10, 3, 2) == e(10, 8, -8, -10)
    assert a1_quantum_simple_char(10, 3, 1) == chi(10) - chi(6) + chi(4) - chi(0)
    assert a1_quantum_simple_char(6, 3, 2) == chi(6)
    with pytest.raises(ValueError):
        a1_quantum_simple_char(3, 3, 0)


@pytest.mark.parametrize("p", [3, 5])
def test_simple_characters_against_binomials(p):
    for n in range(0, 120):
        assert dict(a1_simple_char(n, p).items()) == a1_simple_weights(n, p)
        for r in (1, 2):
            assert dict(a1_quantum_simple_char(n, p, r).items()) == a1_quantum_simple_weights(n, p, r)


def test_decomposition_numbers():
    assert a1_decomposition_numbers(10, 3) == {(10,): 1, (6,): 1, (4,): 1}
    assert a1_decomposition_numbers(6, 3) == {(6,): 1, (4,): 1}
    assert a1_decomposition_numbers(2, 3) == {(2,): 1}
    # the quantum value at l = 9 is forced by chi(10) - ch L_zeta(10) = chi(6) = ch L_zeta(6)
    assert a1_quantum_decomposition_numbers(10, 3, 2) == {(10,): 1, (6,): 1}
    assert a1_quantum_decomposition_numbers(6, 3, 2) == {(6,): 1}
    assert a1_quantum_decomposition_numbers(2, 3, 1) == {(2,): 1}


@pytest.mark.parametrize("p", [3, 5])
def test_basis_conversion_soundness(p):
    for g in range(0, 201):
        total = Character.zero(1)
        for (m,), c in a1_decomposition_numbers(g, p).items():
            total = total + a1_simple_char(m, p) * c
        assert total == chi(g)


def test_builtin_resolution_and_ext():
    ex = builtin_paper_example()
    res = ex.resolution
    assert (ex.p, ex.r) == (3, 2)
    assert sorted(res.entries) == sorted([((10,), 0), ((6,), 1), ((4,), 1), ((4,), 2),
                                          ((0,), 2), ((0,), 3)])
    assert validate_resolution(res)
    assert res.target == chi(10) - chi(6)
    assert ext_dims(res, 4) == {1: 1, 2: 1}
    assert ext_dims(res, (0,)) == {2: 1, 3: 1}
    assert ext_dims(res, 10) == {0: 1}
    assert ext_dims(res, 12) == {}
    assert ex.loewy[(4,)].layers == (((4,),), ((0,),))
    assert ex.loewy[(0,)].layers == (((0,),),)


def test_resolution_validation_failures():
    ex = builtin_paper_example()
    dropped = DeltaResolution(ex.resolution.target, ex.resolution.entries[1:])
    assert not validate_resolution(dropped)
    with pytest.raises(ValueError):
        ext_dims(dropped, 4)
    assert validate_resolution(DeltaResolution(chi(7), (((7,), 0),)))


def test_parity_report():
    ex = builtin_paper_example()
    assert parity_report(ex.resolution, 3) == [((0,), 2), ((4,), 1)]
    assert parity_report(DeltaResolution(chi(10), (((10,), 0),)), 3) == []
    with pytest.raises(ValueError):
        parity_report(DeltaResolution(chi(10) + chi(5), (((10,), 0), ((5,), 0))), 3)


def test_hom_degree_sanity():
    ex = builtin_paper_example()
    head = max(ex.resolution.target)
    for wt, _ in ex.resolution.entries:
        assert (ext_dims(ex.resolution, wt).get(0, 0) != 0) == (wt == head)


def test_peeling_reproduces_builtin():
    ex = builtin_paper_example()
    tri, nxt = peel_step(list(ex.start), ex.loewy, ex.simple)
    assert tri.cones == [((10,), 0)]
    assert nxt == [(LoewyData.of([4], [6]), 1)]
    triangles, res = ex.run()
    assert [t.mu for t in triangles] == [(10,), (6,), (4,), (0,)]
    assert sorted(res.entries) == sorted(ex.resolution.entries)
    assert res.target == ex.resolution.target


def test_peeling_simple_weyl_module_one_step():
    simple = lambda n: a1_simple_char(n, 3)
    triangles, res = peel([(LoewyData.of([2]), 0)], {(2,): LoewyData.of([2])}, simple)
    assert len(triangles) == 1 and res.entries == (((2,), 0),)


def test_peeling_rejects_bad_data():
    simple = lambda n: a1_simple_char(n, 3)
    ex = builtin_paper_example()
    bad = dict(ex.loewy)
    bad[(10,)] = LoewyData.of([10], [4])
    with pytest.raises(ValueError, match="imbalance"):
        peel(list(ex.start), bad, simple)
    missing = {k: v for k, v in ex.loewy.items() if k != (6,)}
    with pytest.raises(ValueError, match="no Weyl-module"):
        peel(list(ex.start), missing, simple)


def test_alternative_delta10_structure_has_the_same_character():
    ex = builtin_paper_example()
    assert ex.loewy_10_alt.character(ex.simple) == ex.loewy[(10,)].character(ex.simple)


def test_euler_consistency_builtin():
    ex = builtin_paper_example()
    coeffs = decompose_weyl_basis(ex.resolution.target, A1)
    for wt in {w for w, _ in ex.resolution.entries} | set(coeffs):
        euler = sum((-1) ** n * d for n, d in ext_dims(ex.resolution, wt).items())
        assert euler == coeffs.get(wt, 0)

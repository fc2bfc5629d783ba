from __future__ import annotations

import threading

import pytest

from modpchar import root_system as rs
from modpchar.alcove import AffineWeylGroup, affine_weyl_group
from modpchar.kl import (KLTable, LaurentPolynomial, ext_series_LL, ext_series_delta_L, kl_poly,
                         kl_table, parabolic_kl)
from oracles import KLOracle, SymmetricGroup, perm_leq

A1, A2, B2 = (rs.builtin(t) for t in ("A1", "A2", "B2"))
T = LaurentPolynomial.monomial


def oracle_for(grp):
    els = grp.elements()
    return els, KLOracle(els, grp.bruhat_leq, lambda x: x.length, grp.times, lambda y: y.word[-1])


def test_laurent_basics():
    p = LaurentPolynomial({0: 1, 2: 3})
    assert p(-1) == 4 and p(1) == 4
    assert p.invert().shift(2) == LaurentPolynomial({2: 1, 0: 3})
    assert p * T(1) == LaurentPolynomial({1: 1, 3: 3})
    assert LaurentPolynomial.from_q_poly([1, 1]) == LaurentPolynomial({0: 1, 2: 1})
    assert p - p == 0 and LaurentPolynomial.one() == 1
    assert p.to_json() == {"poly": [{"exp": 0, "coeff": 1}, {"exp": 2, "coeff": 3}]}


def test_symmetric_group_s4_against_oracle():
    s4 = SymmetricGroup(4)
    table = KLTable(s4)
    oracle = KLOracle(s4.all(), lambda x, y: perm_leq(x.key, y.key), lambda x: x.length,
                      s4.times, lambda y: y.word[-1])
    e = s4.identity
    assert table.classical(e, s4.element((2, 3, 0, 1))) == (1, 1)
    assert table.classical(e, s4.element((3, 1, 2, 0))) == (1, 1)
    for x in s4.all():
        for y in s4.all():
            assert table.classical(x, y) == oracle.P(x, y)


def test_affine_a1_all_ones_to_length_12():
    grp = AffineWeylGroup(A1, 3, max_length=12)
    els, oracle = oracle_for(grp)
    for x in els:
        for y in els:
            p = kl_poly(x, y, grp)
            assert p == (1 if grp.bruhat_leq(x, y) else 0)
            assert oracle.P(x, y) == ((1,) if grp.bruhat_leq(x, y) else ())


@pytest.mark.parametrize("sys,l,L", [(A2, 3, 7), (B2, 5, 6)])
def test_affine_rank2_against_oracle(sys, l, L):
    grp = AffineWeylGroup(sys, l, max_length=L)
    els, oracle = oracle_for(grp)
    table = KLTable(grp)
    top = [y for y in els if y.length >= L - 1]
    nontrivial = 0
    for y in top:
        for x in grp.below(y):
            got = table.classical(x, y)
            assert got == oracle.P(x, y)
            nontrivial += len(got) > 1
    assert nontrivial > 0


def test_parabolic_two_term():
    grp = affine_weyl_group(A1, 3, 16)
    w = grp.from_word((1, 0, 1, 0))
    y = grp.from_word((1, 0))
    assert parabolic_kl((), y, w, grp) == kl_poly(y, w, grp)
    # J = {1}: y, w must end in 0
    assert parabolic_kl((1,), y, w, grp) == kl_poly(y, w, grp) - kl_poly(grp.times(y, 1), w, grp)
    for a in grp.elements()[:12]:
        for b in grp.elements()[:12]:
            if grp.is_minimal(a, (1,)) and grp.is_minimal(b, (1,)):
                assert parabolic_kl((1,), a, b, grp)(-1) in (0, 1)
    with pytest.raises(ValueError):
        parabolic_kl((1,), grp.from_word((0, 1)), w, grp)


def test_ext_series_a1():
    grp = affine_weyl_group(A1, 3, 16)
    lam = (-2,)
    w = grp.canonical_form((10,))[1]
    y = grp.canonical_form((4,))[1]
    assert ext_series_delta_L(w, w, (), grp) == 1
    assert ext_series_delta_L(y, w, (), grp) == T(2)
    assert ext_series_delta_L(w, y, (), grp) == 0
    series = ext_series_LL(w, w, (), lam, grp)
    assert series == LaurentPolynomial({0: 1, 2: 1, 4: 1, 6: 1})
    base = grp.canonical_form((0,))[1]
    assert ext_series_LL(base, base, (), lam, grp) == 1
    assert ext_series_LL(y, w, (), lam, grp).coeff(0) == 0


def test_memo_threads_agree():
    grp = AffineWeylGroup(A2, 3, max_length=8)
    ys = [y for y in grp.elements() if y.length == 8][:6]
    ref = KLTable(grp)
    expect = {(x.key, y.key): ref.classical(x, y) for y in ys for x in grp.below(y)}
    shared = KLTable(grp)

    def work(chunk):
        for y in chunk:
            for x in grp.below(y):
                shared.classical(x, y)

    threads = [threading.Thread(target=work, args=(ys[i::3],)) for i in range(3)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for (xk, yk), val in expect.items():
        assert shared.classical(grp.element(xk), grp.element(yk)) == val


def test_cache_roundtrip(tmp_path):
    grp = AffineWeylGroup(A2, 3, max_length=6)
    t1 = KLTable(grp)
    ys = [y for y in grp.elements() if y.length == 6]
    vals = {(x.key, y.key): t1.classical(x, y) for y in ys[:3] for x in grp.below(y)}
    path = tmp_path / "memo.json"
    t1.save(path)
    t2 = KLTable(grp)
    assert t2.load(path)
    assert all(t2._memo[k] == v for k, v in vals.items())
    other = KLTable(AffineWeylGroup(A2, 3, max_length=7))
    assert not other.load(path)
    assert kl_table(grp) is kl_table(grp)

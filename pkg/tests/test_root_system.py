from __future__ import annotations

import json

import pytest

from modpchar import root_system as rs
from modpchar.errors import BoundError, ConfigError


@pytest.mark.parametrize("label,npos,order,h", [("A1", 1, 2, 2), ("A2", 3, 6, 3),
                                                ("B2", 4, 8, 4), ("G2", 6, 12, 6)])
def test_builtin_counts(label, npos, order, h):
    sys = rs.builtin(label)
    assert len(sys.positive_roots) == npos
    assert len(rs.weyl_group(sys)) == order
    assert sys.coxeter_number == h


def test_unknown_type_rejected():
    with pytest.raises(ConfigError):
        rs.builtin("C7")


def test_simple_roots_are_cartan_columns():
    b2 = rs.builtin("B2")
    assert b2.simple_roots == ((2, -2), (-1, 2))


def test_coroot_pairing_with_own_root_is_two():
    for label in ("A1", "A2", "B2", "G2"):
        sys = rs.builtin(label)
        for i, root in enumerate(sys.positive_roots):
            assert rs.pairing(root.weight, i, sys) == 2


def test_determinants_and_reflections_square_to_one():
    sys = rs.builtin("G2")
    ident = rs.identity_matrix(2)
    for root in sys.positive_roots:
        m = rs.reflection_matrix(root)
        assert rs.mat_mul(m, m) == ident
    assert sum(det for _, det in rs.weyl_group(sys)) == 0


def test_rho_and_dominance():
    sys = rs.builtin("A2")
    assert rs.rho(sys) == (1, 1)
    assert rs.is_dominant((0, 3)) and not rs.is_dominant((-1, 3))


def test_cartan_validation():
    with pytest.raises(ConfigError):
        rs.from_cartan([[2, -1], [0, 2]])
    with pytest.raises(ConfigError):
        rs.from_cartan([[3]])


def test_load_cartan_file(tmp_path):
    f = tmp_path / "b2.json"
    f.write_text(json.dumps({"cartan": [[2, -1], [-2, 2]], "d": [2, 1]}))
    sys = rs.load_cartan_file(f)
    assert len(sys.positive_roots) == 4


def test_group_order_bound():
    with pytest.raises(BoundError):
        rs.finite_weyl_elements(rs.builtin("G2"), max_order=5)

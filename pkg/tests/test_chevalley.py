from __future__ import annotations

import numpy as np
import pytest

from parind.chevalley import build_chevalley, integer_structure_constants
from parind.errors import BadPrime
from parind.gfield import make_field
from parind.linalg import matpow
from parind.rootsys import build_root_system


def cb_of(name, p, **kw):
    return build_chevalley(build_root_system(name), make_field(p), **kw)


def test_a2_examples():
    cb = cb_of("A2", 3)
    a1, a2, a12 = 0, 1, 2
    assert abs(cb.structure_constant((1, 0), (0, 1))) == 1
    assert cb.bracket_basis(cb.e(a1), cb.f(a1)) == {cb.h(0): 1}
    F = cb.F
    assert cb.bracket_basis(cb.h(0), cb.e(a2)) == {cb.e(a2): F.neg(1)}
    assert cb.bracket_basis(cb.e(a1), cb.e(a12)) == {}
    assert cb.names[cb.e(a12)] == "e[a1+a2]"
    assert cb.index("h2") == cb.h(1)


def test_b2_string_and_bad_prime():
    rs = build_root_system("B2")
    cb = cb_of("B2", 3)
    a2, a12 = rs.roots[1], rs.roots[2]
    assert (a2, a12) == ((0, 1), (1, 1))
    assert abs(cb.structure_constant(a2, a12)) == 2
    with pytest.raises(BadPrime):
        cb_of("B2", 2)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D3", "D4", "G2", "F4"])
def test_integer_constants(name):
    rs = build_root_system(name)
    N = integer_structure_constants(rs)
    for (x, y), n in N.items():
        assert abs(n) == rs.string_down(x, y) + 1
        assert N[(y, x)] == -n
        assert N[(tuple(-a for a in x), tuple(-a for a in y))] == -n


@pytest.mark.parametrize("name,p", [("A1", 3), ("A2", 5), ("B2", 3), ("C3", 5), ("D4", 3), ("G2", 5)])
def test_jacobi(name, p):
    assert cb_of(name, p).jacobi_defect() == []


@pytest.mark.parametrize("name,p", [("A2", 3), ("B2", 5), ("C3", 3)])
def test_negative_side_constants(name, p):
    cb = cb_of(name, p)
    rs, F = cb.rs, cb.F
    for a, ra in enumerate(rs.roots):
        for b, rb in enumerate(rs.roots):
            s = rs.root_index(tuple(x + y for x, y in zip(ra, rb)))
            if s is None:
                continue
            n = cb.structure_constant(ra, rb)
            assert cb.bracket_basis(cb.e(a), cb.e(b)) == {cb.e(s): F.from_int(n)}
            assert cb.bracket_basis(cb.f(a), cb.f(b)) == {cb.f(s): F.from_int(-n)}


@pytest.mark.parametrize("name,p", [("A2", 3), ("A2", 5), ("B2", 7), ("A3", 3)])
def test_restrictedness(name, p):
    cb = cb_of(name, p)
    for x in range(cb.dim):
        adp = matpow(cb.F, cb.ad(x), p)
        px = cb.p_power(x)
        want = np.zeros_like(adp) if px is None else cb.ad(px)
        assert np.array_equal(adp, want), cb.names[x]
    a12 = cb.rs.root_index((1, 1) + (0,) * (cb.rank - 2))
    assert cb.p_power(cb.e(a12)) is None
    assert cb.p_power(cb.h(0)) == cb.h(0)
    assert cb.p_power(cb.f(0)) is None


def test_conventions_and_rescaling():
    F = make_field(5)
    rs = build_root_system("B2")
    neg = build_chevalley(rs, F, convention="negated")
    for b in range(rs.n_pos):
        got = neg.bracket_basis(neg.e(b), neg.f(b))
        assert all(v == F.neg(c) for (k, v), c in zip(sorted(got.items()), [c for c in rs.coroots[b] if c]))
    assert neg.jacobi_defect() == []
    scaled = build_chevalley(rs, F, f_scale=[2, 3, 4, 1])
    assert scaled.jacobi_defect() == []
    with pytest.raises(ValueError):
        build_chevalley(rs, F, f_scale=[0, 1, 1, 1])


def test_extraspecial_pairs_positive_and_csv():
    cb = cb_of("B2", 3)
    for xi, (a, b) in cb.extraspecial_pairs().items():
        rs = cb.rs
        assert cb.structure_constant(rs.roots[a], rs.roots[b]) > 0
        assert rs.heights[a] + rs.heights[b] == rs.heights[xi]
    lines = cb.dump_csv().splitlines()
    assert lines[0] == "alpha,beta,N" and len(lines) == 1 + len(cb.N)

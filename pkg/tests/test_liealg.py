from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
import sympy

from conftest import FORMS, form, sym_matrix, to_sympy, weyl
from liegcs import linalg as la
from liegcs.liealg import (
    CartanPartTooSmall,
    LieAlgebra,
    NotClosed,
    TowerTooSmall,
    VoganDiagram,
    build_real_form,
    build_weyl_algebra,
    jacobi_violations,
    regular_subalgebra,
)
from liegcs.rootsys import ThetaNotAutomorphism
from liegcs.scalars import FieldSpec, Scalar

# dual Coxeter numbers: under the Killing form a long root has squared length 1/h
DUAL_COXETER = {"A1": 2, "A2": 3, "A3": 4, "B2": 3, "B3": 5, "C3": 4, "G2": 4, "D4": 6}


def jacobi_oracle(alg: LieAlgebra) -> bool:
    """Jacobi on basis triples through sympy matrices of ad (ad[x,y] = [ad x, ad y])."""
    ads = [sym_matrix(alg.ad(alg.basis_vector(k))) for k in range(alg.dim)]
    for x in range(alg.dim):
        for y in range(x + 1, alg.dim):
            v = alg.bracket(alg.basis_vector(x), alg.basis_vector(y))
            lhs = sympy.zeros(alg.dim)
            for z, c in enumerate(v):
                if c:
                    lhs += to_sympy(c) * ads[z]
            if (lhs - (ads[x] * ads[y] - ads[y] * ads[x])).applyfunc(sympy.expand) != sympy.zeros(alg.dim):
                return False
    return True


@pytest.mark.parametrize("t", ["A1", "A2", "B2", "G2", "A1+A1"])
def test_weyl_jacobi(t):
    W = weyl(t)
    assert jacobi_violations(W.algebra) == []
    assert jacobi_oracle(W.algebra)


@pytest.mark.parametrize("t", sorted(DUAL_COXETER))
def test_killing_root_lengths(t):
    W = build_weyl_algebra(t)
    R = W.root_system
    lengths = {R.inner(r, r) for r in R.roots}
    assert max(lengths) == Fraction(1, DUAL_COXETER[t])


def test_a1_pairing_is_one_half():
    # sl2 by hand: B(X, Y) = 4 tr(XY), E = e/2, E_- = f/2, H = [E, E_-] = h/4, alpha(H) = 2/4
    W = weyl("A1")
    assert W.killing[0][0] == Scalar(Fraction(1, 2))
    assert W.root_system.inner((1,), (1,)) == Fraction(1, 2)


@pytest.mark.parametrize("t", ["A1", "A2", "B2", "G2"])
def test_killing_against_trace_oracle(t):
    W = weyl(t)
    alg = W.algebra
    ads = [sym_matrix(alg.ad(alg.basis_vector(k))) for k in range(alg.dim)]
    for x in range(alg.dim):
        for y in range(x, alg.dim):
            want = sympy.nsimplify(sympy.expand((ads[x] * ads[y]).trace()))
            assert sympy.simplify(to_sympy(W.killing[x][y]) - want) == 0
    R = W.root_system
    r = R.rank
    for k in range(R.n_roots):
        assert W.killing[r + k][r + R.neg(k)] == 1
        assert W.bracket(W.E(k), W.E(R.neg(k))) == W.H_root(k)


@pytest.mark.parametrize("t", ["A2", "B2", "G2", "A3"])
def test_structure_constants_squared(t):
    # N_{a,b}^2 = q (p + 1) <a, a> / 2 for the a-string b - p a, ..., b + q a
    W = weyl(t)
    R = W.root_system
    for (i, j), v in W.N.items():
        p = 0
        while R.find(tuple(y - (p + 1) * x for x, y in zip(R.roots[i], R.roots[j]))) is not None:
            p += 1
        q = 0
        while R.find(tuple(y + (q + 1) * x for x, y in zip(R.roots[i], R.roots[j]))) is not None:
            q += 1
        assert v * v == Scalar(Fraction(q * (p + 1), 2) * R.inner(R.roots[i], R.roots[i]))
        assert W.N[(j, i)] == -v


def test_field_too_small():
    with pytest.raises(TowerTooSmall):
        build_weyl_algebra("A2", field=FieldSpec(()))
    assert build_weyl_algebra("A2", field=FieldSpec((2, 3))).N


def inertia(M) -> tuple[int, int]:
    vals = mpmath.eigsy(mpmath.matrix([[float(to_sympy(x)) for x in row] for row in M]))[0]
    return sum(1 for v in vals if v > 1e-9), sum(1 for v in vals if v < -1e-9)


# (positive, negative) index of the Killing form: negative part is the maximal compact
SIGNATURES = {"su2": (0, 3), "sl2R": (2, 1), "su3": (0, 8), "su12": (4, 4), "sl3R": (5, 3),
              "sl2C": (3, 3), "so4": (0, 6), "so5": (0, 10), "g2": (8, 6), "su4p": (8, 7)}


@pytest.mark.parametrize("name", sorted(FORMS))
def test_real_form_is_real_and_has_right_signature(name):
    F = form(name)
    assert F.real_algebra.is_real()
    assert jacobi_violations(F.real_algebra) == []
    assert inertia(F.real_algebra.killing()) == SIGNATURES[name]


@pytest.mark.parametrize("name", ["su2", "sl2R", "su3", "sl3R", "sl2C", "su12"])
def test_conjugation_is_an_antilinear_involutive_automorphism(name):
    F = form(name)
    W = F.algebra
    n = W.dim
    basis = [W.algebra.basis_vector(k) for k in range(n)]
    for x in range(n):
        assert F.apply_sigma(F.apply_sigma(basis[x])) == basis[x]
        ix = la.scale(Scalar.i(), basis[x])
        assert F.apply_sigma(ix) == la.scale(-Scalar.i(), F.apply_sigma(basis[x]))
        for y in range(n):
            lhs = F.apply_sigma(W.bracket(basis[x], basis[y]))
            assert lhs == W.bracket(F.apply_sigma(basis[x]), F.apply_sigma(basis[y]))
    # the real basis is fixed by the conjugation
    for v in F.real_basis:
        assert F.apply_sigma(v) == v


def test_real_brackets_match_complex_ones():
    F = form("sl3R")
    W = F.algebra
    for x, u in enumerate(F.real_basis):
        for y, v in enumerate(F.real_basis):
            lhs = F.from_real_coords(F.real_algebra.bracket(F.real_algebra.basis_vector(x), F.real_algebra.basis_vector(y)))
            assert lhs == W.bracket(u, v)


def test_sl3R_data():
    F = form("sl3R")
    assert not F.is_inner
    assert [F.sigma(k) for k in range(6)] == [4, 3, 5, 1, 0, 2]
    assert F.a == (1, 1, -1, 1, 1, -1)
    assert form("su3").is_inner and form("su3").a == (1,) * 6


def test_painted_node_must_be_fixed():
    with pytest.raises(ThetaNotAutomorphism):
        build_real_form(weyl("A2"), VoganDiagram.make("A2", theta=(1, 0), painted=(0,)))


def test_regular_subalgebra_checks():
    F = form("su3")
    with pytest.raises(NotClosed):
        regular_subalgebra(F, [[1, 0], [0, 1]], [0, 1])
    with pytest.raises(CartanPartTooSmall):
        regular_subalgebra(F, [[0, 1]], [0, 3])
    S = regular_subalgebra(F, [[1, 0], [0, 1]], [0, 1, 2])
    assert S.dim == 5 and S.spans_all and len(S.intersection) == 2

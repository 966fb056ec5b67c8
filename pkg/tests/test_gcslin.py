from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import sym_matrix
from liegcs import linalg as la
from liegcs.gcslin import (
    SKEW,
    SYMMETRIC,
    AlphaIllDefined,
    Degenerate,
    DegenerateImAlpha,
    GCStructure,
    HoloData,
    NotComplexStructure,
    NotEigenSplit,
    NotSkew,
    NotTauHermitian,
    SumDeficient,
    bfield_act,
    bfield_decompose,
    direct_sum,
    from_complex_structure,
    from_metric,
    from_symplectic,
    holo_space_of,
    random_skew,
    random_structure,
    reconstruct_gcs,
    standard_complex,
)
from liegcs.scalars import Scalar

I = Scalar.i()


def eigen_oracle(J: GCStructure) -> sympy.Matrix:
    """Columns spanning the +i eigenspace of J, computed by sympy."""
    M = sym_matrix(J.J)
    return sympy.Matrix.hstack(*(M - sympy.I * sympy.eye(M.rows)).nullspace())


def same_span(A: sympy.Matrix, B: sympy.Matrix) -> bool:
    r = A.rank()
    return r == B.rank() and sympy.Matrix.hstack(A, B).rank() == r


def holo_columns(H: HoloData) -> sympy.Matrix:
    return sym_matrix(H.L_basis()).T


def test_canonical_pairing():
    from liegcs.gcslin import DoubleSpace

    V = DoubleSpace(2)
    u = [Scalar(x) for x in (1, 2, 3, 4)]
    v = [Scalar(x) for x in (5, 6, 7, 8)]
    assert V.pair(u, v) == Scalar(3 * 5 + 4 * 6 + 7 * 1 + 8 * 2) / 2
    G = sym_matrix(V.gcan)
    eig = G.eigenvals()
    assert sum(m for e, m in eig.items() if e > 0) == 2 and sum(m for e, m in eig.items() if e < 0) == 2


def test_complex_structure_example():
    J = from_complex_structure(standard_complex(1))
    H = holo_space_of(J)
    assert H.n == 2 and len(H.E) == 1
    e = H.E[0]
    # J e1 = e2 gives V^{1,0} = span(e1 - i e2)
    assert la.rank([e, [Scalar(1), -I]]) == 1
    assert H.alpha == [[Scalar(0)]]
    assert reconstruct_gcs(H) == J
    assert same_span(eigen_oracle(J), holo_columns(H))
    with pytest.raises(NotComplexStructure):
        from_complex_structure([[Scalar(1)]])


def test_metric_example():
    J = from_metric([[1]])
    assert J.J == la.mat([[0, 1], [-1, 0]])
    H = holo_space_of(J)
    assert H.alpha == [[I]] and len(H.E) == 1
    assert reconstruct_gcs(H) == J
    g = la.mat([[1, 0], [0, -1]])
    H2 = holo_space_of(from_metric(g))
    assert len(H2.delta()) == 2
    assert la.rank(H2.g_delta()) == 2
    assert H2 == HoloData(la.identity(2), la.scale(I, g), SYMMETRIC, 2)
    with pytest.raises(Degenerate):
        from_metric([[1, 1], [1, 1]])


def test_symplectic_example():
    w = la.mat([[0, 1], [-1, 0]])
    J = from_symplectic(w)
    assert J.is_valid() and J.kind == SKEW
    H = holo_space_of(J)
    assert H == HoloData(la.identity(2), la.scale(I, w), SKEW, 2)
    with pytest.raises(NotSkew):
        from_symplectic([[1, 0], [0, 1]])


def test_bfield_action():
    rng = random.Random(3)
    J = random_structure(rng, 4, SYMMETRIC)
    assert bfield_act(la.zeros(4), J) == J
    B = random_skew(rng, 4)
    assert bfield_act(la.scale(-1, B), bfield_act(B, J)) == J
    with pytest.raises(NotSkew):
        bfield_act([[1, 0], [0, 0]], from_metric([[1]]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([SYMMETRIC, SKEW]), st.integers(1, 4))
def test_bfield_shifts_alpha(seed, kind, n):
    rng = random.Random(seed)
    if kind == SKEW and n % 2:
        n += 1
    J = random_structure(rng, n, kind)
    B = random_skew(rng, n)
    H = holo_space_of(J)
    assert holo_space_of(bfield_act(B, J)) == H.shifted(B)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([SYMMETRIC, SKEW]), st.integers(1, 4))
def test_roundtrip_and_eigen_oracle(seed, kind, n):
    rng = random.Random(seed)
    if kind == SKEW and n % 2:
        n += 1
    J = random_structure(rng, n, kind)
    assert J.is_valid()
    H = holo_space_of(J)
    assert reconstruct_gcs(H) == J
    assert same_span(eigen_oracle(J), holo_columns(H))
    for v in H.L_basis():
        assert H.contains(v)


def test_not_eigen_split_and_wrong_kind():
    with pytest.raises(NotEigenSplit):
        holo_space_of(GCStructure(la.identity(2), SYMMETRIC))
    # symmetric structures declared skew: covectors in L annihilate conj(E), not E
    J = from_complex_structure(standard_complex(1))
    with pytest.raises(AlphaIllDefined):
        holo_space_of(GCStructure(J.J, SKEW))
    # with L cap V* = 0 the mismatch shows up as a non-skew alpha instead
    J = from_metric([[1, 0], [0, 1]])
    with pytest.raises(NotTauHermitian):
        holo_space_of(GCStructure(J.J, SKEW))


def test_invalid_holo_data_witnesses():
    # E + conj E too small
    with pytest.raises(SumDeficient):
        HoloData([[Scalar(1), Scalar(0)]], [[I]], SYMMETRIC, 2).validate()
    # alpha not skew-Hermitian
    with pytest.raises(NotTauHermitian) as exc:
        HoloData(la.identity(1), [[Scalar(1)]], SYMMETRIC, 1).validate()
    assert exc.value.witness == (0, 0)
    # skew kind needs a skew-symmetric alpha
    with pytest.raises(NotTauHermitian):
        HoloData(la.identity(2), [[0, 1], [1, 0]], SKEW, 2).validate()
    # degenerate Im(alpha|Delta): the witness lies in L cap conj(L)
    H = HoloData(la.identity(2), la.mat([[I, 0], [0, 0]]), SYMMETRIC, 2)
    with pytest.raises(DegenerateImAlpha) as exc:
        reconstruct_gcs(H)
    X, xi = exc.value.X, exc.value.xi
    w = list(X) + list(xi)
    assert not la.is_zero(X)
    assert H.contains(w) and H.contains(la.conj(w))


def test_decompose_trivial_cases():
    nf = bfield_decompose(from_metric([[1, 0], [0, -1]]))
    assert la.is_zero(nf.B) and len(nf.Delta) == 2 and nf.N == []
    nf = bfield_decompose(from_complex_structure(standard_complex(1)))
    assert la.is_zero(nf.B) and nf.Delta == [] and len(nf.N) == 2


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5))
def test_decompose_random(seed, n):
    rng = random.Random(seed)
    J = random_structure(rng, n, SYMMETRIC)
    nf = bfield_decompose(J)
    assert nf.B == la.scale(-1, la.transpose(nf.B))
    assert all(x.is_real() for r in nf.B for x in r)
    out = nf.normal_form
    assert out == bfield_act(nf.B, J)
    assert len(nf.Delta) + len(nf.N) == n
    if nf.Delta:
        assert la.rank(nf.g_Delta) == len(nf.Delta)
    # block form: Delta goes to covectors killing N, N goes into N
    zero = [Scalar(0)] * n
    for d in nf.Delta:
        img = la.matvec(out.J, list(d) + zero)
        assert la.is_zero(img[:n])
        assert all(not la.dot(img[n:], w) for w in nf.N)
    for w in nf.N:
        img = la.matvec(out.J, list(w) + zero)
        assert la.is_zero(img[n:]) and la.in_span(img[:n], nf.N)


def test_direct_sum():
    J = direct_sum(from_metric([[1]]), from_complex_structure(standard_complex(1)))
    assert J.is_valid() and J.n == 3
    H = holo_space_of(J)
    assert len(H.delta()) == 1

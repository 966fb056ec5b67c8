from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liegcs.rootsys import (
    NotInSubsystem,
    RootSubset,
    SearchBudgetExceeded,
    UnknownType,
    build_root_system,
    classify_subset,
    closure_violations,
    enumerate_sigma_parabolic,
    height,
    minus_identity,
    sigma_from_theta,
    simple_system,
)

# classification table, written out independently of the library
ROOT_COUNTS = {"A1": 2, "A2": 6, "A3": 12, "A4": 20, "B2": 8, "B3": 18, "C3": 18,
               "D4": 24, "G2": 12, "F4": 48, "A1+A1": 4, "A2+B2": 14}


def weyl_orbit_roots(C):
    """Roots in simple-root coordinates as the orbit of the simple roots under
    simple reflections s_i(v) = v - <v, alpha_i^vee> alpha_i (Cartan-matrix oracle)."""
    n = len(C)
    simple = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    seen = set(simple)
    todo = list(simple)
    while todo:
        v = todo.pop()
        for i in range(n):
            c = sum(v[j] * C[j][i] for j in range(n))
            w = tuple(v[k] - (c if k == i else 0) for k in range(n))
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


@pytest.mark.parametrize("t", sorted(ROOT_COUNTS))
def test_root_counts_and_orbit_oracle(t):
    R = build_root_system(t)
    assert R.n_roots == ROOT_COUNTS[t]
    assert set(R.roots) == weyl_orbit_roots(R.cartan_matrix)
    assert all(R.find(tuple(-x for x in r)) is not None for r in R.roots)


@pytest.mark.parametrize("t", ["A2", "B2", "G2", "B3", "C3", "A1+A1"])
def test_pairing_reproduces_cartan_integers(t):
    R = build_root_system(t)
    r = R.rank
    unit = [[int(i == k) for i in range(r)] for k in range(r)]
    for i in range(r):
        for j in range(r):
            v = 2 * R.inner(unit[i], unit[j]) / R.inner(unit[j], unit[j])
            assert v == R.cartan_matrix[i][j]
    for root in R.roots:
        assert R.inner(root, root) > 0


def test_small_examples():
    A1 = build_root_system("A1")
    assert sorted(A1.roots) == [(-1,), (1,)]
    A2 = build_root_system("A2")
    assert len({A2.inner(r, r) for r in A2.roots}) == 1
    G2 = build_root_system("G2")
    lengths = sorted({G2.inner(r, r) for r in G2.roots})
    assert len(lengths) == 2 and lengths[1] / lengths[0] == 3
    with pytest.raises(UnknownType):
        build_root_system("H9")


def test_heights():
    R = build_root_system("A2")
    assert height(R, (1, 0)) == 1
    assert height(R, (1, 1)) == 2
    assert height(R, (-1, -1)) == -2
    with pytest.raises(NotInSubsystem):
        height(R, (1, -1))
    # with respect to a non-standard simple system {alpha_1 + alpha_2, -alpha_1}
    s = [R.index((1, 1)), R.index((-1, 0))]
    assert height(R, R.index((0, 1)), s) == 2


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "G2", "A2+B2"]), st.data())
def test_height_is_additive(t, data):
    R = build_root_system(t)
    a = data.draw(st.integers(0, R.n_roots - 1))
    b = data.draw(st.integers(0, R.n_roots - 1))
    s = R.add(a, b)
    if s is not None:
        assert height(R, s) == height(R, a) + height(R, b)


def test_classify_examples():
    A1 = build_root_system("A1")
    sig = minus_identity(A1)
    full = classify_subset(RootSubset.of(A1, range(2)), sig)
    assert full.closed and full.sigma_parabolic and not full.sigma_positive
    assert full.symmetric_part == frozenset(range(2))
    pos = classify_subset(RootSubset.of(A1, [A1.index((1,))]), sig)
    assert pos.sigma_positive and pos.symmetric_part == frozenset()

    A2 = build_root_system("A2")
    m = [A2.index(v) for v in [(1, 0), (0, 1), (-1, -1)]]
    c = classify_subset(RootSubset.of(A2, m), minus_identity(A2))
    assert not c.closed
    # brute-force scan over pairs, independent of the library routine
    expected = set()
    for a in m:
        for b in m:
            v = tuple(x + y for x, y in zip(A2.roots[a], A2.roots[b]))
            if v in A2.roots and A2.index(v) not in m:
                expected.add(A2.index(v))
    assert {s for _, _, s in c.closure_violations} == expected
    assert expected == {A2.index(v) for v in [(1, 1), (-1, 0), (0, -1)]}
    # adding -alpha_1 to a closed set can keep it closed
    ok = [A2.index(v) for v in [(1, 0), (0, 1), (1, 1), (-1, 0)]]
    assert classify_subset(RootSubset.of(A2, ok), minus_identity(A2)).closed


def brute_force_parabolic(R, sig, positive_only=False):
    n = R.n_roots
    out = []
    for k in range(n + 1):
        for m in combinations(range(n), k):
            ms = set(m)
            if closure_violations(R, ms):
                continue
            img = {sig(x) for x in ms}
            if ms | img != set(range(n)):
                continue
            if positive_only and ms & img:
                continue
            out.append(sum(1 << x for x in ms))
    return sorted(out)


@pytest.mark.parametrize("t,theta", [("A1", None), ("A2", None), ("A2", (1, 0)), ("B2", None), ("A1+A1", (1, 0))])
@pytest.mark.parametrize("positive_only", [False, True])
def test_enumeration_matches_brute_force(t, theta, positive_only):
    R = build_root_system(t)
    sig = minus_identity(R) if theta is None else sigma_from_theta(R, theta)
    got = [S.bitmask for S in enumerate_sigma_parabolic(R, sig, positive_only=positive_only)]
    assert got == brute_force_parabolic(R, sig, positive_only)
    assert 0 not in got


def test_enumeration_examples_and_budget():
    A1 = build_root_system("A1")
    assert len(enumerate_sigma_parabolic(A1, minus_identity(A1))) == 3
    A2 = build_root_system("A2")
    assert len(enumerate_sigma_parabolic(A2, minus_identity(A2), positive_only=True)) == 6
    with pytest.raises(SearchBudgetExceeded):
        enumerate_sigma_parabolic(build_root_system("A3"), minus_identity(build_root_system("A3")), budget=10)


def test_sigma_is_minus_theta():
    R = build_root_system("A2")
    sig = sigma_from_theta(R, (1, 0))
    assert sig(R.index((1, 0))) == R.index((0, -1))
    for k in range(R.n_roots):
        assert sig(sig(k)) == k
        assert sig(R.neg(k)) == R.neg(sig(k))


def test_simple_system_of_subsystem():
    R = build_root_system("B2")
    long_roots = [k for k, r in enumerate(R.roots) if R.inner(r, r) == max(R.inner(x, x) for x in R.roots)]
    simple = simple_system(R, long_roots)
    assert len(simple) == 2
    for k in long_roots:
        h = height(R, k, simple)
        assert h != 0 and Fraction(h).denominator == 1

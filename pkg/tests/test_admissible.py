from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import builders as b
from conftest import form
from liegcs import admissible as adm
from liegcs import linalg as la
from liegcs.certificate import INCONCLUSIVE
from liegcs.leftinv import dc_connection, involutivity_oracle, mainthm_check
from liegcs.liealg import VoganDiagram, build_real_form, build_weyl_algebra, regular_subalgebra
from liegcs.rootsys import closure_violations, enumerate_sigma_parabolic
from liegcs.scalars import Scalar

I = Scalar.i()
I2 = [[1, 0], [0, 1]]


def mainapplic(F, h, R0, e0, mu, nu=None):
    return adm.check_mainapplic(F, h, R0, adm.EpsilonParams(e0, mu, nu or {}))


# -- check_admissible --------------------------------------------------------------


def test_su2_borel_triple():
    F = form("su2")
    T = adm.inner_admissible(F, [[1]], [0], [[-I]])
    cert = adm.check_admissible(T)
    assert cert.passed
    assert involutivity_oracle(T.holo(), T.D).passed
    T0 = adm.regular_triple(F, [[1]], [0], adm.EpsilonParams([[0]]), "D0")
    cert = adm.check_admissible(T0)
    assert cert.failed() == ["g_Delta_nondegenerate"]
    assert "dim Delta = 1" in cert.clause("g_Delta_nondegenerate").detail
    assert not involutivity_oracle(T0.holo(), T0.D).passed


def test_full_algebra_with_bracket_connection():
    # k = g^C, eps = i g for g = -Killing, D = ad: eps([X,Y], tZ) is counted twice
    F = form("su2")
    g = la.scale(-1, F.real_algebra.killing())
    T = adm.AdmissibleTriple(F.real_algebra, la.identity(3), dc_connection(F), la.scale(I, g))
    cert = adm.check_admissible(T)
    for cid in ("k_subalgebra", "k_plus_kbar", "invers", "curv_alg", "epsilon_tau_hermitian",
                "g_Delta_nondegenerate"):
        assert cert.clause(cid).status == "pass", cid
    assert cert.failed() == ["epsilon_eqn"]
    assert cert.clause("mainthm_agreement").status == "pass"


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["su2", "sl2R", "su2", "sl2R", "su3"]))
def test_triangle(seed, name):
    T = b.random_regular_triple(random.Random(seed), name)
    a = adm.check_admissible(T, cross_check=False).passed
    H = T.holo()
    assert a == mainthm_check(H, T.D).passed == involutivity_oracle(H, T.D).passed


# -- build_epsilon ---------------------------------------------------------------------


def test_zero_params_give_zero_epsilon():
    F = form("su3")
    T = adm.regular_triple(F, I2, [0, 1, 2], adm.EpsilonParams(la.zeros(2)), "D0")
    assert la.is_zero(T.epsilon)
    assert not adm.check_admissible(T, cross_check=False).passed


@pytest.mark.parametrize("name", ["su2", "sl2R"])
def test_rank_one_epsilon_formula(name):
    # basis k = (H_a, E_a), tau k = (-H_a, -a E_-a); <a, a> = 1/2
    F = form(name)
    a = F.a[0]
    mu = Scalar(3)
    e0 = -I * 2
    T = adm.regular_triple(F, [[1]], [0], adm.EpsilonParams([[e0]], {0: mu}), "D0")
    half = Scalar(1) / 2
    assert T.epsilon == [[e0, -a * mu * half], [a * mu * half, Scalar(0)]]
    assert adm.check_admissible(T).passed


def test_a2_cross_term():
    F = form("su3")
    W = F.algebra
    R = W.root_system
    mu = {0: Scalar(1), 1: Scalar(-2), 2: Scalar(5)}
    T = adm.regular_triple(F, I2, [0, 1, 2], adm.EpsilonParams([[-I, 0], [0, -I]], mu), "D0")
    sub = T.sub
    tK = [F.apply_sigma(v) for v in sub.basis]

    def eps(x, Y):
        return la.dot(T.epsilon[x], la.coords(Y, tK))

    pos = {al: 2 + t for t, al in enumerate(sorted(sub.R0.members))}
    nonzero = {}
    for al in pos:
        for be in pos:
            v = eps(pos[al], W.E(F.sigma(be)))
            if v:
                nonzero[(al, be)] = v
    s = R.add(0, 1)
    assert set(nonzero) == {(0, 1), (1, 0)}
    assert nonzero[(0, 1)] == -F.a[0] * mu[s] * W.N[(F.sigma(0), F.sigma(1))]
    assert nonzero[(1, 0)] == -F.a[1] * mu[s] * W.N[(F.sigma(1), F.sigma(0))]


def test_params_validation():
    with pytest.raises(adm.ParamConstraintViolated) as exc:
        adm.EpsilonParams.make([[-I]], {0: I})
    assert exc.value.eq == "mu-real"
    with pytest.raises(adm.ParamConstraintViolated) as exc:
        adm.EpsilonParams.make([[Scalar(1)]])
    assert exc.value.eq == "skew-hermitian"
    conv = adm.epsilon0_conventions([[0, I], [I, 0]])
    assert conv == {"skew_hermitian": True, "complex_skew": False}
    assert adm.epsilon0_conventions([[0, 1], [-1, 0]]) == {"skew_hermitian": True, "complex_skew": True}


# -- nu ---------------------------------------------------------------------------------


def nu_oracle_ok(F, members, nu) -> bool:
    """Exhaustive scan of pairs and triples, independent of the library's scan."""
    R = F.algebra.root_system
    a = F.a
    ms = sorted(members)
    for k in ms:
        if nu[k] + nu[R.neg(k)]:
            return False
    for x, y, z in combinations(ms, 3):
        if all(sum(t) == 0 for t in zip(R.roots[x], R.roots[y], R.roots[z])):
            if a[x] * nu[x] + a[y] * nu[y] + a[z] * nu[z]:
                return False
    return True


def test_nu_examples():
    F = form("su2")
    assert adm.nu_from_heights([], F) == {}
    assert adm.nu_from_heights([0, 1], F) == {0: 1, 1: -1}
    G = form("su3")
    nu = adm.nu_from_heights(range(6), G)
    assert sorted(int(v.to_rational()) for v in nu.values()) == [-2, -1, -1, 1, 1, 2]
    assert nu_oracle_ok(G, range(6), nu)
    R = G.algebra.root_system
    triples = [t for t in combinations(range(6), 3)
               if all(sum(c) == 0 for c in zip(*(R.roots[k] for k in t)))]
    assert len(triples) == 2  # {a1, a2, -a1-a2} and its negative
    with pytest.raises(adm.NotSymmetricClosed):
        adm.nu_from_heights([0], F)


def symmetric_closed_subsets(R):
    pos = [k for k in range(R.n_roots) if R.is_positive(k)]
    for n in range(len(pos) + 1):
        for c in combinations(pos, n):
            ms = set(c) | {R.neg(k) for k in c}
            if not closure_violations(R, ms):
                yield ms


@pytest.mark.parametrize("t,painted", [("A2", (0,)), ("B2", (1,)), ("G2", (1,)), ("A3", (1,))])
def test_nu_lemma_with_signs(t, painted):
    F = build_real_form(build_weyl_algebra(t), VoganDiagram.make(t, painted=painted))
    for ms in symmetric_closed_subsets(F.algebra.root_system):
        nu = adm.nu_from_heights(ms, F)
        assert nu_oracle_ok(F, ms, nu)
        assert adm.nu_defects(F, ms, nu) == []


def test_nu_defects_detects_mutations():
    F = form("sl3R")
    assert {k for k, _ in adm.nu_defects(F, range(6), {0: 1, 3: -1})} == {"suplimentara"}
    assert {k for k, _ in adm.nu_defects(F, [0, 3], {0: 1, 3: 1})} == {"ad-nu"}


# -- characterization theorem -------------------------------------------------------------


def test_mainapplic_su2_and_su3():
    assert mainapplic(form("su2"), [[1]], [0], [[-I]], {0: 2}).passed
    cert = mainapplic(form("su3"), I2, [0, 1, 2], [[-I, 0], [0, -2 * I]], {0: 1})
    assert cert.passed
    assert cert.clause("theorem_agreement").status == "pass"


@pytest.mark.parametrize("name,h,R0,e0,mu,nu,clause", [
    ("su3", I2, [0, 1, 2], [[-I, 0], [0, -2 * I]], {0: I}, {}, "ii_mu_real"),
    ("su3", I2, [0], [[-I, 0], [0, -2 * I]], {0: 1}, {}, "i_sigma_parabolic"),
    ("su3", I2, [0, 1, 2], [[0, 0], [0, 0]], {0: 1}, {}, "iii_g_delta_nondegenerate"),
    ("su3", [[1, 3]], [0, 1, 2], [[-I]], {0: 1}, {}, "i_cartan_sum"),
    ("su2", [[1]], [0], [[-I]], {0: I}, {}, "ii_mu_real"),
])
def test_single_condition_mutations(name, h, R0, e0, mu, nu, clause):
    cert = mainapplic(form(name), h, R0, e0, mu, nu)
    assert cert.failed() == [clause]
    assert cert.clause("theorem_agreement").status == "pass"


def test_suplimentara_mutation():
    F = form("sl3R")
    base = mainapplic(F, I2, list(range(6)), la.zeros(2), {0: 1, 2: 2})
    mutated = mainapplic(F, I2, list(range(6)), la.zeros(2), {0: 1, 2: 2}, {0: 1, 3: -1})
    assert set(mutated.failed()) - set(base.failed()) == {"ii_suplimentara"}


def test_assumption_not_is_inconclusive():
    cert = mainapplic(form("su3"), [[1, 2]], [0, 1, 2], [[-I]], {0: 1})
    assert cert.status == INCONCLUSIVE
    assert cert.clause("assumption_not").status == INCONCLUSIVE


@settings(max_examples=8, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_inner_su3_random_mu(mus):
    F = form("su3")
    T = adm.inner_admissible(F, I2, [0, 1, 2], [[-I, 0], [0, -I]], {k: m for k, m in enumerate(mus)})
    assert adm.check_admissible(T).passed


def test_inner_recipe_errors():
    with pytest.raises(adm.NotInner):
        adm.inner_admissible(form("sl3R"), I2, [0, 1, 2], [[-I, 0], [0, -I]])
    with pytest.raises(adm.NotPositiveSystem):
        adm.inner_admissible(form("su3"), I2, [0, 1], [[-I, 0], [0, -I]])
    with pytest.raises(adm.CartanSumDeficient):
        adm.inner_admissible(form("su3"), [[1, 0]], [0, 1, 2], [[-I]])
    with pytest.raises(adm.DegenerateRestriction):
        adm.inner_admissible(form("su3"), I2, [0, 1, 2], la.zeros(2))
    assert adm.check_admissible(adm.inner_admissible(form("sl2R"), [[1]], [0], [[-I]])).passed


# -- g_Delta lemma and the outer recipe ------------------------------------------------------


def e3_epsilon0(rng, R, sym) -> list:
    """Random skew-Hermitian K^T M K with K killing every H_alpha, alpha in R0^sym (h_k = h)."""
    r = R.rank
    rows = [list(R.roots[k]) for k in sym]
    K = la.nullspace(la.mat(rows), r) if rows else la.identity(r)
    if not K:
        return la.zeros(r)
    M = b.random_skew_hermitian(rng, len(K))
    return la.matmul(la.matmul(la.transpose(K), M), K)


def _lemma_cases():
    rng = random.Random(8)
    out = []
    for name in ("sl3R", "sl2C", "su3", "su12"):
        F = form(name)
        R = F.algebra.root_system
        for S in enumerate_sigma_parabolic(R, F.sigma):
            inter = {k for k in S.members if F.sigma(k) in S.members}
            if not inter or any(R.neg(k) not in inter for k in inter):
                continue
            sym = S.symmetric_part()
            mu = {k: Scalar(rng.randint(-2, 2)) for k in S.members}
            P = adm.EpsilonParams(e3_epsilon0(rng, R, sym), mu,
                                  adm.nu_from_heights(sym, F) if sym else {})
            out.append((name, sorted(S.members), P))
    return out


@pytest.mark.parametrize("name,R0,P", _lemma_cases())
def test_gdelta_formula_matches_direct(name, R0, P):
    F = form(name)
    r = F.algebra.root_system.rank
    sub = regular_subalgebra(F, la.identity(r), R0)
    basis, G, Dmat, nondeg, span_ok = adm.gdelta_lemma(F, sub, P)
    assert G == Dmat
    assert len(basis.labels()) == len(basis.vectors)
    if nondeg:
        assert span_ok and basis.p == basis.q


def test_gdelta_sigma_positive_reduces_to_cartan_block():
    F = form("sl3R")
    S = next(S for S in enumerate_sigma_parabolic(F.algebra.root_system, F.sigma, positive_only=True))
    sub = regular_subalgebra(F, I2, sorted(S.members))
    P = adm.EpsilonParams([[-I, 0], [0, -I]])
    basis, G, Dmat, _, _ = adm.gdelta_lemma(F, sub, P)
    assert basis.A == [] and basis.B == [] and basis.f_plus == [] and basis.f_minus == []
    assert G == Dmat


def test_outer_epsilon0():
    F = form("sl3R")
    for S in enumerate_sigma_parabolic(F.algebra.root_system, F.sigma, positive_only=True):
        if S.symmetric_part():
            continue
        sub = regular_subalgebra(F, I2, sorted(S.members))
        e0 = adm.outer_epsilon0(F, sub)
        assert adm.epsilon0_conventions(e0)["skew_hermitian"]
        T = adm.regular_triple(F, I2, sorted(S.members), adm.EpsilonParams(e0), "D0")
        assert adm.check_admissible(T).passed
    # sl(2,C) with factors swapped: R0 = {alpha_1, -alpha_2}
    G = form("sl2C")
    sub = regular_subalgebra(G, [[1, 0]], [0, 2])
    e0 = adm.outer_epsilon0(G, sub)
    assert e0 == [[Scalar(0)]]
    assert adm.check_admissible(adm.regular_triple(G, [[1, 0]], [0, 2], adm.EpsilonParams(e0))).passed
    # not sigma-positive
    with pytest.raises(adm.PreconditionFailed):
        adm.outer_epsilon0(F, regular_subalgebra(F, I2, list(range(6))))


def test_outer_not_transverse():
    # a symmetric pair in R0 puts H_alpha inside h_k cap conj(h_k)
    F = form("sl3R")
    R = F.algebra.root_system
    for S in enumerate_sigma_parabolic(R, F.sigma, positive_only=True):
        if S.symmetric_part():
            with pytest.raises(adm.NotTransverse):
                adm.outer_epsilon0(F, regular_subalgebra(F, I2, sorted(S.members)))
            break


def test_search():
    res = adm.search_triples(form("su2"))
    assert sum(r.status == "verified" for r in res) == 2
    for r in res:
        if r.status == "verified":
            assert involutivity_oracle(r.triple.holo(), r.triple.D).passed
    res = adm.search_triples(form("su3"))
    assert sum(r.status == "verified" for r in res) == 6

"""Admissible triples (k, D, epsilon) on real forms of semisimple Lie algebras.

Regular subalgebras are described in Weyl coordinates (``liealg``); the
conjugation of g^C with respect to the real form is ``sigma``.  To talk to
``leftinv`` everything is moved to the real basis of the form, where the
conjugation is entrywise.

epsilon is stored as the matrix ``eps[j][l] = epsilon(k_j, sigma(k_l))`` on the
basis ``k = [h_1, ..., h_m, E_alpha (alpha in R0, increasing index)]``.
Roots act as covectors on the Cartan part and vanish on root spaces; the
covector omega_alpha reads off the E_alpha coefficient and vanishes on h.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import linalg as la
from .certificate import INCONCLUSIVE, INFO, PASS, SKIPPED, Certificate
from .gcslin import SYMMETRIC, HoloData, holo_space_of, reconstruct_gcs
from .leftinv import Connection, d0_connection, dc_connection, involutivity_oracle, mainthm_check
from .liealg import LieAlgebra, RealForm, Subalgebra, regular_subalgebra
from .rootsys import RootSubset, classify_subset, closure_violations, height, simple_system
from .scalars import Scalar

__all__ = [
    "ParamConstraintViolated",
    "HypothesisViolated",
    "NotSymmetricClosed",
    "PreconditionFailed",
    "NotTransverse",
    "NotInner",
    "NotPositiveSystem",
    "CartanSumDeficient",
    "DegenerateRestriction",
    "EpsilonParams",
    "AdmissibleTriple",
    "GDeltaBasis",
    "check_admissible",
    "build_epsilon",
    "epsilon_formula",
    "nu_from_heights",
    "nu_defects",
    "check_mainapplic",
    "gdelta_lemma",
    "outer_epsilon0",
    "inner_admissible",
    "regular_triple",
    "real_h_part",
    "epsilon0_conventions",
    "SearchResult",
    "search_triples",
]


class ParamConstraintViolated(ValueError):
    def __init__(self, message, eq=None):
        super().__init__(message)
        self.eq = eq


class HypothesisViolated(ValueError):
    pass


class NotSymmetricClosed(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


class NotTransverse(ValueError):
    pass


class NotInner(ValueError):
    pass


class NotPositiveSystem(ValueError):
    pass


class CartanSumDeficient(ValueError):
    pass


class DegenerateRestriction(ValueError):
    pass


def _S(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


# -- parameters --------------------------------------------------------------------


@dataclass
class EpsilonParams:
    """Cartan block ``epsilon0[j][l] = eps0(h_j, sigma(h_l))`` plus mu and nu."""

    epsilon0: list
    mu: dict = field(default_factory=dict)
    nu: dict = field(default_factory=dict)

    def __post_init__(self):
        self.epsilon0 = la.mat(self.epsilon0) if self.epsilon0 else []
        self.mu = {int(k): _S(v) for k, v in self.mu.items()}
        self.nu = {int(k): _S(v) for k, v in self.nu.items()}

    @classmethod
    def make(cls, epsilon0, mu=None, nu=None) -> "EpsilonParams":
        """Validated constructor: real mu and nu, skew-Hermitian epsilon0."""
        P = cls(epsilon0, dict(mu or {}), dict(nu or {}))
        for k, v in P.mu.items():
            if not v.is_real():
                raise ParamConstraintViolated(f"mu for root {k} is not real: {v}", eq="mu-real")
        for k, v in P.nu.items():
            if not v.is_real():
                raise ParamConstraintViolated(f"nu for root {k} is not real: {v}", eq="nu-real")
        bad = _skew_hermitian_defect(P.epsilon0)
        if bad is not None:
            raise ParamConstraintViolated(
                f"epsilon0 is not skew-Hermitian at {bad}", eq="skew-hermitian"
            )
        return P

    def to_json(self) -> dict:
        return {
            "epsilon0": [[str(x) for x in row] for row in self.epsilon0],
            "mu": {str(k): str(v) for k, v in sorted(self.mu.items())},
            "nu": {str(k): str(v) for k, v in sorted(self.nu.items())},
        }


def _skew_hermitian_defect(M):
    for j in range(len(M)):
        for l in range(len(M)):
            if M[j][l] + M[l][j].conjugate():
                return (j, l)
    return None


# -- triples ------------------------------------------------------------------------


@dataclass
class AdmissibleTriple:
    """(k, D, epsilon) with k given by complex vectors in the real basis of g."""

    algebra: LieAlgebra
    k_basis: list
    D: Connection
    epsilon: list
    kind: str = SYMMETRIC
    form: RealForm | None = field(default=None, repr=False)
    sub: Subalgebra | None = field(default=None, repr=False)
    params: EpsilonParams | None = None

    def __post_init__(self):
        self.k_basis = [la.vec(v) for v in self.k_basis]
        self.epsilon = la.mat(self.epsilon) if self.epsilon else []

    @property
    def n(self) -> int:
        return self.algebra.dim

    def tau(self, v):
        return la.conj(v) if self.kind == SYMMETRIC else list(v)

    def holo(self) -> HoloData:
        return HoloData(self.k_basis, self.epsilon, self.kind, self.n)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "k_basis": [[str(x) for x in v] for v in self.k_basis],
            "epsilon": [[str(x) for x in row] for row in self.epsilon],
        }
        if self.sub is not None:
            out["h_k"] = [[str(x) for x in v] for v in self.sub.h_k]
            out["R0"] = sorted(self.sub.R0.members)
        if self.params is not None:
            out["params"] = self.params.to_json()
        return out


def check_admissible(T: AdmissibleTriple, cross_check: bool = True) -> Certificate:
    """Def. of an admissible triple, clause by clause, straight on the triple."""
    n = T.n
    g = T.algebra
    K = T.k_basis
    k = len(K)
    tK = [T.tau(v) for v in K]
    cert = Certificate("admissible")

    def in_span(v, rows):
        return la.in_span(v, rows)

    wit = None
    for j in range(k):
        for l in range(j + 1, k):
            if not in_span(g.bracket(K[j], K[l]), K):
                wit = wit or (j, l)
    cert.add("k_subalgebra", wit is None, witness=wit)

    if T.kind == SYMMETRIC:
        deficit = n - la.rank(K + tK)
        cert.add("k_plus_kbar", deficit == 0,
                 detail=f"k + conj(k) misses {deficit} dimensions" if deficit else "")
    else:
        cert.add("k_plus_kbar", SKIPPED, detail="skew kind")

    cert.add("D_real", T.D.is_real())

    wit = None
    images = {}
    for j in range(k):
        DX = T.D.matrix(K[j])
        for m in range(k):
            v = la.matvec(DX, tK[m])
            images[(j, m)] = v
            if wit is None and not in_span(v, tK):
                wit = (j, m)
    cert.add("invers", wit is None, witness=wit)
    preserves = wit is None

    wit = None
    for j in range(k):
        for l in range(j + 1, k):
            for m in range(k):
                if not la.is_zero(T.D.curvature(K[j], K[l], tK[m])):
                    wit = wit or (j, l, m)
    cert.add("curv_alg", wit is None, witness=wit)

    E = T.epsilon
    wit = None
    for j in range(k):
        for l in range(k):
            t = E[l][j].conjugate() if T.kind == SYMMETRIC else E[l][j]
            if E[j][l] + t:
                wit = wit or (j, l)
    cert.add("epsilon_tau_hermitian", wit is None, witness=wit)

    def eps(x, y):
        cx = la.coords(x, K)
        cy = la.coords(y, tK)
        return la.bilinear(cx, E, cy)

    if preserves and cert.clause("k_subalgebra").status == PASS:
        wit, val = None, None
        for j in range(k):
            for l in range(k):
                br = g.bracket(K[j], K[l])
                for m in range(k):
                    d = eps(K[j], images[(l, m)]) - eps(K[l], images[(j, m)]) - eps(br, tK[m])
                    if d and wit is None:
                        wit, val = (j, l, m), d
        cert.add("epsilon_eqn", wit is None, witness=wit, scalar=val)
    else:
        cert.add("epsilon_eqn", SKIPPED, detail="needs k_subalgebra and invers")

    if T.kind == SYMMETRIC:
        inter = la.intersect(K, tK)
        real = []
        for v in inter:
            re = [x.real_imag()[0] for x in v]
            im = [x.real_imag()[1] for x in v]
            real += [re, im]
        real = [v for v in real if not la.is_zero(v)]
        Dl = [real[i] for i in la.independent_subset(real)]
        gD = [[eps(x, y).real_imag()[1] for y in Dl] for x in Dl]
        ok = not Dl or la.rank(gD) == len(Dl)
        cert.add("g_Delta_nondegenerate", ok, detail=f"dim Delta = {len(Dl)}")
    else:
        # skew: Delta is the real part of k cap k-bar = k; alpha must be non-degenerate
        ok = la.rank(E) == k if k else True
        cert.add("g_Delta_nondegenerate", ok)

    if cross_check:
        H = T.holo()
        if H.is_valid():
            # round trip through the structure so the lift is exercised as well
            H = holo_space_of(reconstruct_gcs(H))
        other = mainthm_check(H, T.D)
        mine = all(c.status in (PASS, SKIPPED) for c in cert.clauses)
        cert.add("mainthm_agreement", mine == other.passed,
                 detail=f"mainthm on the lifted structure: {other.status}")
    return cert


# -- building epsilon ----------------------------------------------------------------


def _k_basis_weyl(sub: Subalgebra) -> list:
    return list(sub.basis)


def _root_on(R, k: int, X: Sequence, r: int) -> Scalar:
    """alpha_k(X) for X in Weyl coordinates (Cartan part only)."""
    root = R.roots[k]
    acc = Scalar(0)
    for i in range(r):
        if X[i]:
            acc = acc + X[i] * Scalar(R.inner(root, R.roots[i]))
    return acc


def _h_coords(sub: Subalgebra, v: Sequence, conj: bool) -> list:
    """Coordinates of the Cartan part of v in h_k (or sigma(h_k))."""
    F = sub.form
    W = F.algebra
    r = W.rank
    basis = [W.h_vector(h) for h in sub.h_k]
    if conj:
        basis = [F.apply_sigma(b) for b in basis]
    if not basis:
        return []
    hv = list(v[:r]) + [Scalar(0)] * (W.dim - r)
    c = la.coords(hv, basis)
    if c is None:
        raise ValueError("vector has a Cartan part outside the Cartan part of k")
    return c


def epsilon_formula(F: RealForm, sub: Subalgebra, P: EpsilonParams, X, Y) -> Scalar:
    """The displayed expression for epsilon(X, Y), X in k, Y in conj(k), literally."""
    W = F.algebra
    R = W.root_system
    r = R.rank
    sig = F.sigma
    a = F.a
    R0 = sorted(sub.R0.members)
    R0set = set(R0)
    out = Scalar(0)
    if P.epsilon0:
        cx, cy = _h_coords(sub, X, False), _h_coords(sub, Y, True)
        out = out + la.bilinear(cx, P.epsilon0, cy)

    def om(k, V):
        return V[r + k]

    for al in R0:
        mu = P.mu.get(al)
        if not mu:
            continue
        t = _root_on(R, al, X, r) * om(sig(al), Y) + a[al] * om(al, X) * _root_on(R, sig(al), Y, r)
        out = out + mu * t
    for al in R0:
        if not om(al, X):
            continue
        for be in R0:
            s = R.add(al, be)
            if s is None or s not in R0set:
                continue
            mu = P.mu.get(s)
            if not mu or not om(sig(be), Y):
                continue
            N = W.N.get((sig(al), sig(be)), Scalar(0))
            out = out - a[al] * mu * N * om(al, X) * om(sig(be), Y)
    for ga in sub.R0.symmetric_part():
        nu = P.nu.get(ga)
        if nu:
            out = out + nu * om(ga, X) * om(R.neg(sig(ga)), Y)
    return out


def build_epsilon(F: RealForm, sub: Subalgebra, P: EpsilonParams, strict: bool = True) -> list:
    """epsilon(k_j, sigma(k_l)) from the parameter record.

    The displayed formula is used on pairs j <= l (this includes all
    Cartan/root pairs, the side where mu is defined); the remaining entries
    follow from skew-Hermitian symmetry, so the output is always
    skew-Hermitian.  With ``strict`` the parameter constraints are enforced.
    """
    m = len(sub.h_k)
    if P.epsilon0 and len(P.epsilon0) != m:
        raise ValueError(f"epsilon0 must be {m} x {m}")
    if strict:
        _check_params(F, sub, P)
    K = _k_basis_weyl(sub)
    tK = [F.apply_sigma(v) for v in K]
    k = len(K)
    E = la.zeros(k)
    half = Scalar(1) / 2
    for j in range(k):
        for l in range(j, k):
            v = epsilon_formula(F, sub, P, K[j], tK[l])
            if j == l:
                E[j][j] = (v - v.conjugate()) * half
            else:
                E[j][l] = v
                E[l][j] = -v.conjugate()
    return E


def _check_params(F: RealForm, sub: Subalgebra, P: EpsilonParams) -> None:
    for k, v in P.mu.items():
        if k not in sub.R0:
            raise ParamConstraintViolated(f"mu given for root {k} outside R0", eq="exp")
        if not v.is_real():
            raise ParamConstraintViolated(f"mu for root {k} is not real", eq="mu-real")
    sym = sub.R0.symmetric_part()
    for k, v in P.nu.items():
        if k not in sym:
            raise ParamConstraintViolated(f"nu given for root {k} outside R0^sym", eq="exp")
        if not v.is_real():
            raise ParamConstraintViolated(f"nu for root {k} is not real", eq="nu-real")
    bad = _skew_hermitian_defect(P.epsilon0) if P.epsilon0 else None
    if bad is not None:
        raise ParamConstraintViolated(f"epsilon0 is not skew-Hermitian at {bad}", eq="skew-hermitian")
    for eq, wit in nu_defects(F, sym, P.nu):
        raise ParamConstraintViolated(f"nu violates {eq} at roots {wit}", eq=eq)
    bad = _e3_defect(F, sub, P)
    if bad is not None:
        raise ParamConstraintViolated(f"epsilon0 violates e3 at {bad}", eq="e3")


def _e3_defect(F: RealForm, sub: Subalgebra, P: EpsilonParams):
    """First (j, alpha) with eps0(h_j, H_{sigma(alpha)}) != 0, alpha in R0^sym."""
    if not P.epsilon0:
        return None
    W = F.algebra
    for al in sorted(sub.R0.symmetric_part()):
        Hs = W.H_root(F.sigma(al))
        cy = _h_coords(sub, Hs, True)
        for j in range(len(sub.h_k)):
            if la.dot(P.epsilon0[j], cy):
                return (j, al)
    return None


# -- nu from heights -----------------------------------------------------------------


def nu_from_heights(R0sym, F: RealForm) -> dict[int, Scalar]:
    """nu_alpha = a_alpha * height(alpha) on a closed symmetric subsystem."""
    R = F.algebra.root_system
    members = set(R0sym.members if isinstance(R0sym, RootSubset) else R0sym)
    if any(R.neg(k) not in members for k in members) or closure_violations(R, members):
        raise NotSymmetricClosed("the subsystem must be closed and symmetric")
    if not members:
        return {}
    simple = simple_system(R, members)
    nu = {k: Scalar(F.a[k] * height(R, k, simple)) for k in sorted(members)}
    bad = nu_defects(F, members, nu)
    if bad:  # pragma: no cover - this is the content of the lemma
        raise AssertionError(f"height-based nu violates {bad[0]}")
    return nu


def nu_defects(F: RealForm, members, nu: Mapping[int, Scalar]) -> list:
    """Violations of nu_a + nu_-a = 0 and a_a nu_a + a_b nu_b + a_c nu_c = 0."""
    R = F.algebra.root_system
    a = F.a
    ms = sorted(members)
    out = []

    def v(k):
        return _S(nu.get(k, 0))

    for k in ms:
        if v(k) + v(R.neg(k)):
            out.append(("ad-nu", (k, R.neg(k))))
    mset = set(ms)
    for x, al in enumerate(ms):
        for be in ms[x:]:
            s = R.add(al, be)
            if s is None:
                continue
            ga = R.neg(s)
            if ga not in mset:
                continue
            if a[al] * v(al) + a[be] * v(be) + a[ga] * v(ga):
                out.append(("suplimentara", (al, be, ga)))
    return out


# -- regular triples -----------------------------------------------------------------


def regular_triple(F: RealForm, h_k, R0, params: EpsilonParams, connection: str | Connection = "D0",
                   strict: bool = False) -> AdmissibleTriple:
    """Assemble (k, D, epsilon) for a regular subalgebra and a parameter record."""
    sub = regular_subalgebra(F, h_k, R0)
    eps = build_epsilon(F, sub, params, strict=strict)
    if isinstance(connection, Connection):
        D = connection
    elif connection == "D0":
        D = d0_connection(F)
    elif connection == "Dc":
        D = dc_connection(F)
    else:
        raise ValueError(f"unknown connection {connection!r}")
    K = [F.to_real_coords(v) for v in sub.basis]
    return AdmissibleTriple(F.real_algebra, K, D, eps, SYMMETRIC, F, sub, params)


def real_h_part(F: RealForm, sub: Subalgebra) -> list:
    """Real basis (Weyl coordinates) of h_k cap conj(h_k) cap g."""
    W = F.algebra
    hk = [W.h_vector(h) for h in sub.h_k]
    if not hk:
        return []
    inter = la.intersect(hk, [F.apply_sigma(v) for v in hk])
    cand = []
    iu = Scalar.i()
    for v in inter:
        s = F.apply_sigma(v)
        cand.append(la.add(v, s))
        cand.append(la.scale(iu, la.sub(v, s)))
    cand = [c for c in cand if not la.is_zero(c)]
    return [cand[k] for k in la.real_independent_subset(cand)]


def _mainapplic_derived(F: RealForm, sub: Subalgebra, eps) -> tuple[dict, dict, list]:
    """mu, nu and (e2) violations read back from an epsilon matrix."""
    W = F.algebra
    R = W.root_system
    r = R.rank
    sig = F.sigma
    a = F.a
    K = sub.basis
    tK = [F.apply_sigma(v) for v in K]
    m = len(sub.h_k)
    roots = sorted(sub.R0.members)
    pos = {al: m + t for t, al in enumerate(roots)}

    def e(X_idx, Y_weyl):
        c = la.coords(Y_weyl, tK)
        if c is None:
            raise ValueError("argument is not in conj(k)")
        return la.dot(eps[X_idx], c)

    mu: dict = {}
    e1_bad = []
    for al in roots:
        Y = W.E(sig(al))
        vals = [(e(j, Y), _root_on(R, al, W.h_vector(sub.h_k[j]), r)) for j in range(m)]
        ref = next(((v, c) for v, c in vals if c), None)
        if ref is None:
            mu[al] = None
            continue
        mu_al = ref[0] / ref[1]
        mu[al] = mu_al
        if any(v != mu_al * c for v, c in vals):
            e1_bad.append(al)
    nu: dict = {}
    e2_bad = []
    for al in roots:
        for be in roots:
            if R.add(al, be) is None and be == R.neg(al):
                continue
            val = e(pos[al], W.E(sig(be)))
            s = R.add(al, be)
            if s is None:
                want = Scalar(0)
            else:
                mus = mu.get(s) if s in pos else None
                want = -a[al] * (mus or Scalar(0)) * W.N.get((sig(al), sig(be)), Scalar(0))
            if val != want:
                e2_bad.append((al, be))
    for ga in sorted(sub.R0.symmetric_part()):
        nu[ga] = e(pos[ga], W.E(R.neg(sig(ga))))
    return mu, nu, e1_bad + [("e2", x) for x in e2_bad]


def check_mainapplic(F: RealForm, sub_or_h, R0=None, params: EpsilonParams | None = None,
                     eps=None, oracle: bool = False) -> Certificate:
    """The conditions of the characterization theorem for regular triples with D0."""
    sub = sub_or_h if isinstance(sub_or_h, Subalgebra) else regular_subalgebra(F, sub_or_h, R0)
    if eps is None:
        if params is None:
            raise ValueError("either params or eps is needed")
        eps = build_epsilon(F, sub, params, strict=False)
    W = F.algebra
    R = W.root_system
    r = R.rank
    cert = Certificate("mainapplic")
    roots = sorted(sub.R0.members)
    hk = [W.h_vector(h) for h in sub.h_k]

    # hypothesis
    bad = None
    for x, al in enumerate([None] + roots):
        for be in ([None] + roots)[x:]:
            vec = [0] * r
            for t in (al, be):
                if t is not None:
                    vec = [u + w for u, w in zip(vec, R.roots[t])]
            if not any(vec):
                continue
            if all(
                not sum((Scalar(R.inner(vec, R.roots[i])) * h[i] for i in range(r) if h[i]), Scalar(0))
                for h in hk
            ):
                bad = bad or (al, be)
    triple = AdmissibleTriple(F.real_algebra, [F.to_real_coords(v) for v in sub.basis],
                              d0_connection(F), eps, SYMMETRIC, F, sub, params)
    if bad is not None:
        cert.add("assumption_not", INCONCLUSIVE, witness=[-1 if t is None else t for t in bad],
                 detail="a sum of roots from R0 + {0} vanishes on h_k; the theorem does not apply")
        adm = check_admissible(triple)
        cert.add("admissible", INFO, detail=f"admissibility check: {adm.status}")
        return cert
    cert.add("assumption_not", PASS)

    cls = classify_subset(sub.R0, F.sigma)
    cert.add("i_sigma_parabolic", cls.closed and cls.sigma_parabolic,
             detail="" if cls.sigma_parabolic else "R0 + sigma(R0) != R")
    cs = la.rank(hk + [F.apply_sigma(v) for v in hk]) if hk else 0
    cert.add("i_cartan_sum", cs == r, detail=f"h_k + conj(h_k) has dimension {cs} of {r}")

    mu, nu, form_bad = _mainapplic_derived(F, sub, eps)
    cert.add("ii_e1_form", not [b for b in form_bad if not isinstance(b, tuple)],
             witness=[b for b in form_bad if not isinstance(b, tuple)][:1] or None)
    non_real = [al for al, v in mu.items() if v is not None and not v.is_real()]
    cert.add("ii_mu_real", not non_real, witness=non_real[:1] or None,
             scalar=mu[non_real[0]] if non_real else None)
    e2 = [b[1] for b in form_bad if isinstance(b, tuple)]
    cert.add("ii_e2", not e2, witness=e2[0] if e2 else None)
    non_real = [g for g, v in nu.items() if not v.is_real()]
    cert.add("ii_nu_real", not non_real, witness=non_real[:1] or None)
    defects = nu_defects(F, sub.R0.symmetric_part(), nu)
    adnu = [w for eq, w in defects if eq == "ad-nu"]
    sup = [w for eq, w in defects if eq == "suplimentara"]
    cert.add("ii_ad_nu", not adnu, witness=adnu[0] if adnu else None)
    cert.add("ii_suplimentara", not sup, witness=sup[0] if sup else None)

    # e3 on the Cartan block of epsilon itself
    m = len(sub.h_k)
    e0 = [row[:m] for row in eps[:m]]
    e3 = _e3_defect(F, sub, EpsilonParams(e0)) if m else None
    cert.add("iii_e3", e3 is None, witness=e3)
    adm = check_admissible(triple)
    gd = adm.clause("g_Delta_nondegenerate")
    cert.add("iii_g_delta_nondegenerate", gd.status, detail=gd.detail)

    predicted = all(c.status == PASS for c in cert.clauses)
    cert.add("admissible", INFO, detail=f"admissibility check: {adm.status}")
    cert.add("theorem_agreement", predicted == adm.passed,
             detail=f"conditions {'hold' if predicted else 'fail'}, triple {adm.status}")
    if oracle:
        orc = involutivity_oracle(triple.holo(), triple.D)
        cert.add("oracle_agreement", orc.passed == adm.passed)
    return cert


# -- g_Delta via the lemma -----------------------------------------------------------


@dataclass
class GDeltaBasis:
    c: list
    f_plus: list
    f_minus: list
    A: list
    B: list
    reps: list  # root index of each A/B pair
    f_plus_roots: list
    f_minus_roots: list

    @property
    def p(self) -> int:
        return len(self.f_plus)

    @property
    def q(self) -> int:
        return len(self.f_minus)

    @property
    def s(self) -> int:
        return len(self.c)

    @property
    def vectors(self) -> list:
        return self.c + self.f_plus + self.f_minus + self.A + self.B

    def labels(self) -> list[str]:
        return (
            [f"c{k + 1}" for k in range(self.s)]
            + [f"F+({k})" for k in self.f_plus_roots]
            + [f"F-({k})" for k in self.f_minus_roots]
            + [f"A({k})" for k in self.reps]
            + [f"B({k})" for k in self.reps]
        )


def gdelta_lemma(F: RealForm, sub: Subalgebra, params: EpsilonParams, eps=None):
    """Basis of Delta, g_Delta from the closed formulas, and the direct check.

    Returns ``(basis, formula_matrix, direct_matrix, nondegenerate, span_ok)``.
    """
    W = F.algebra
    R = W.root_system
    r = R.rank
    sig = F.sigma
    a = F.a
    R0 = sub.R0.members
    inter = sorted(k for k in R0 if sig(k) in R0)
    if any(R.neg(k) not in inter for k in inter):
        raise PreconditionFailed("R0 cap sigma(R0) is not symmetric")
    if eps is None:
        eps = build_epsilon(F, sub, params, strict=False)
    iu = Scalar.i()
    hreal = real_h_part(F, sub)
    # C: elements of the real Cartan part killed by every root of the intersection
    if inter and hreal:
        rows = [[_root_on(R, al, h, r) for h in hreal] for al in inter]
        rows = [la.real_split(rw) for rw in rows]
        # real coefficient vectors x with sum x_i alpha(h_i) = 0
        ker = la.nullspace(_realify(rows), len(hreal))
        C = [_comb(x, hreal) for x in ker]
    else:
        C = list(hreal)
    fp_all = [(al, la.add(W.H_root(al), W.H_root(sig(al)))) for al in inter]
    fm_all = [(al, la.scale(iu, la.sub(W.H_root(al), W.H_root(sig(al))))) for al in inter]
    fp_all = [(al, v) for al, v in fp_all if not la.is_zero(v)]
    fm_all = [(al, v) for al, v in fm_all if not la.is_zero(v)]
    pick_p = la.real_independent_subset([v for _, v in fp_all])
    pick_m = la.real_independent_subset([v for _, v in fm_all])
    fp = [fp_all[t] for t in pick_p]
    fm = [fm_all[t] for t in pick_m]
    reps = [k for k in inter if k <= sig(k)]
    A = [F.A(k) for k in reps]
    B = [F.B(k) for k in reps]
    keepA = [t for t, v in enumerate(A) if not la.is_zero(v)]
    keepB = [t for t, v in enumerate(B) if not la.is_zero(v)]
    basis = GDeltaBasis(
        C, [v for _, v in fp], [v for _, v in fm], A, B, reps,
        [al for al, _ in fp], [al for al, _ in fm],
    )
    vecs = C + basis.f_plus + basis.f_minus + [A[t] for t in keepA] + [B[t] for t in keepB]
    if la.real_rank(vecs) != len(vecs):
        raise PreconditionFailed("the lemma's vectors are dependent")

    K = sub.basis
    tK = [F.apply_sigma(v) for v in K]

    def direct(x, y):
        cx = la.coords(x, K)
        cy = la.coords(F.apply_sigma(y), tK)
        return la.bilinear(cx, eps, cy).real_imag()[1]

    D = [[direct(x, y) for y in vecs] for x in vecs]

    # the closed formulas
    mu = {k: params.mu.get(k, Scalar(0)) for k in R0}
    nu = params.nu

    def M(k):
        return mu.get(k, Scalar(0)) if k is not None else Scalar(0)

    def N(x, y):
        return W.N.get((x, y), Scalar(0))

    def add(x, y):
        return R.add(x, y)

    def gAB(al, be):
        s1 = add(sig(al), be)  # sigma(alpha) + beta
        s2 = add(al, sig(be))  # alpha + sigma(beta)
        s3 = add(al, be)
        v = -a[al] * N(sig(al), be) * (M(s2) + (a[s1] * M(s1) if s1 is not None else Scalar(0)))
        if s3 is not None:
            v = v + N(al, be) * (M(sig(s3)) + a[s3] * M(s3))
        return v

    nA, nB = len(keepA), len(keepB)
    s, p, q = len(C), basis.p, basis.q
    size = s + p + q + nA + nB
    G = la.zeros(size)
    oA = s + p + q
    oB = oA + nA
    for x in range(s):
        for y in range(s):
            G[x][y] = direct(C[x], C[y])  # Cartan block: Im eps0
    for t, al in enumerate([reps[u] for u in keepA]):
        for u, be in enumerate([reps[w] for w in keepB]):
            v = gAB(al, be)
            G[oA + t][oB + u] = G[oB + u][oA + t] = v
    for x, (al_r, Fv) in enumerate(fp):
        for u, al in enumerate([reps[w] for w in keepB]):
            v = (M(sig(al)) + a[al] * M(al)) * _root_on(R, al, Fv, r)
            G[s + x][oB + u] = G[oB + u][s + x] = v
    for x, (al_r, Fv) in enumerate(fm):
        for t, al in enumerate([reps[w] for w in keepA]):
            v = iu * (M(sig(al)) + a[al] * M(al)) * _root_on(R, al, Fv, r)
            G[s + p + x][oA + t] = G[oA + t][s + p + x] = v
    # nu contributions on A/B pairs (absent from the printed list)
    for t, al in enumerate([reps[u] for u in keepA]):
        for u, be in enumerate([reps[w] for w in keepB]):
            extra = _nu_part(F, sub, nu, A[keepA[t]], B[keepB[u]])
            if extra:
                G[oA + t][oB + u] = G[oA + t][oB + u] + extra
                G[oB + u][oA + t] = G[oB + u][oA + t] + extra
    for t in range(nA):
        for u in range(nA):
            extra = _nu_part(F, sub, nu, A[keepA[t]], A[keepA[u]])
            G[oA + t][oA + u] = G[oA + t][oA + u] + extra
    for t in range(nB):
        for u in range(nB):
            extra = _nu_part(F, sub, nu, B[keepB[t]], B[keepB[u]])
            G[oB + t][oB + u] = G[oB + t][oB + u] + extra
    nondeg = la.rank(D) == size
    span_ok = p == q
    basis.A = [A[t] for t in keepA]
    basis.B = [B[t] for t in keepB]
    basis.reps = reps
    return basis, G, D, nondeg, span_ok


def _nu_part(F: RealForm, sub: Subalgebra, nu, X, Y) -> Scalar:
    """Im of sum nu_g omega_g(X) omega_{-sigma g}(Y) for real X, Y."""
    W = F.algebra
    R = W.root_system
    r = R.rank
    acc = Scalar(0)
    for ga in sub.R0.symmetric_part():
        v = nu.get(ga)
        if v:
            acc = acc + v * X[r + ga] * Y[r + R.neg(F.sigma(ga))]
    return acc.real_imag()[1]


def _realify(rows):
    """Stack real and imaginary parts: rows are already real-split pairs."""
    out = []
    for rw in rows:
        half = len(rw) // 2
        out.append(rw[:half])
        out.append(rw[half:])
    return out


def _comb(x, vecs):
    out = [Scalar(0)] * len(vecs[0])
    for c, v in zip(x, vecs):
        if c:
            out = la.add(out, la.scale(c, v))
    return out


# -- outer and inner recipes --------------------------------------------------------


def outer_epsilon0(F: RealForm, sub: Subalgebra) -> list:
    """A Cartan block epsilon0 killing S and conj(S), non-degenerate on Delta."""
    W = F.algebra
    cls = classify_subset(sub.R0, F.sigma)
    if not cls.sigma_positive:
        raise PreconditionFailed("R0 must be a sigma-positive system")
    S = [W.H_root(k) for k in sorted(sub.R0.symmetric_part())]
    S = la.row_basis(S) if S else []
    Sbar = [F.apply_sigma(v) for v in S]
    if S and la.intersect(S, Sbar):
        raise NotTransverse("S and its conjugate intersect")
    hk = [W.h_vector(h) for h in sub.h_k]
    if not hk:
        return []
    Dc = real_h_part(F, sub)
    if la.rank(Dc + S) != len(Dc) + len(S):
        raise NotTransverse("S meets h_k cap conj(h_k)")
    extra = la.independent_subset(hk, Dc + S)
    Wc = [hk[t] for t in extra]
    B = Dc + S + Wc
    # eps0(B_j, sigma(B_l)) = i delta_jl on the Dc block
    iu = Scalar.i()
    EB = la.zeros(len(B))
    for t in range(len(Dc)):
        EB[t][t] = iu
    # h_j = sum T[j][t] B_t
    T = [la.coords(h, B) for h in hk]
    Tc = [la.conj(row) for row in T]
    return la.matmul(la.matmul(T, EB), la.transpose(Tc))


def _is_positive_system(R, members) -> bool:
    ms = set(members)
    if closure_violations(R, ms):
        return False
    return all((k in ms) != (R.neg(k) in ms) for k in range(R.n_roots))


def inner_admissible(F: RealForm, h_k, Rplus, epsilon0, mu=None) -> AdmissibleTriple:
    """The triple of the inner-type description: D0 and the displayed epsilon."""
    if not F.is_inner:
        raise NotInner("the real form is not of inner type")
    W = F.algebra
    R = W.root_system
    members = sorted(Rplus.members if isinstance(Rplus, RootSubset) else Rplus)
    if not _is_positive_system(R, members):
        raise NotPositiveSystem("R0 is not a positive root system")
    hk = [W.h_vector(h) for h in h_k]
    if la.rank(hk + [F.apply_sigma(v) for v in hk]) != R.rank:
        raise CartanSumDeficient("h_k + conj(h_k) != h")
    P = EpsilonParams.make(epsilon0, mu or {}, {})
    T = regular_triple(F, h_k, members, P, "D0", strict=True)
    sub = T.sub
    Dl = real_h_part(F, sub)
    K, tK = sub.basis, [F.apply_sigma(v) for v in sub.basis]
    g = [[la.bilinear(la.coords(x, K), T.epsilon, la.coords(F.apply_sigma(y), tK)).real_imag()[1]
          for y in Dl] for x in Dl]
    if Dl and la.rank(g) < len(Dl):
        raise DegenerateRestriction("Im(epsilon) is degenerate on h_k cap i h_R")
    return T


def random_mu(rng: random.Random, roots: Sequence[int], lo: int = -3, hi: int = 3) -> dict:
    return {k: Scalar(rng.randint(lo, hi)) for k in roots}


def epsilon0_conventions(epsilon0) -> dict[str, bool]:
    """Which reading of the Cartan block a matrix satisfies.

    ``skew_hermitian``: as a form on h_k x conj(h_k) (what admissibility needs);
    ``complex_skew``: as an element of Lambda^2(h_k), i.e. M^T = -M.
    """
    M = la.mat(epsilon0) if epsilon0 else []
    herm = _skew_hermitian_defect(M) is None
    skew = all(M[j][l] + M[l][j] == 0 for j in range(len(M)) for l in range(len(M)))
    return {"skew_hermitian": herm, "complex_skew": skew}


# -- search ---------------------------------------------------------------------------


@dataclass
class SearchResult:
    R0: list
    status: str  # "verified" | "failed" | "no_certificate"
    detail: str = ""
    triple: AdmissibleTriple | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {"R0": self.R0, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.triple is not None:
            out["triple"] = self.triple.to_json()
        return out


def search_triples(F: RealForm, budget: int = 2_000_000, h_k=None,
                   sigma_positive_only: bool = False) -> list[SearchResult]:
    """Try one parameter template per sigma-parabolic R0 and verify it.

    Template: h_k = h (unless given), mu = 0, nu from heights, epsilon0 from
    the outer recipe.  Only sigma-positive R0 admit that recipe; the rest are
    reported as ``no_certificate``.
    """
    from .rootsys import enumerate_sigma_parabolic

    W = F.algebra
    R = W.root_system
    r = R.rank
    hk = h_k if h_k is not None else [[int(a == b) for b in range(r)] for a in range(r)]
    out = []
    for S in enumerate_sigma_parabolic(R, F.sigma, positive_only=sigma_positive_only, budget=budget):
        members = sorted(S.members)
        try:
            sub = regular_subalgebra(F, hk, members)
            e0 = outer_epsilon0(F, sub)
            sym = S.symmetric_part()
            P = EpsilonParams.make(e0, {}, nu_from_heights(sym, F) if sym else {})
            T = regular_triple(F, hk, members, P, "D0", strict=True)
        except (PreconditionFailed, NotTransverse, ParamConstraintViolated, ValueError) as exc:
            out.append(SearchResult(members, "no_certificate", f"{type(exc).__name__}: {exc}"))
            continue
        cert = check_admissible(T, cross_check=False)
        if cert.passed:
            out.append(SearchResult(members, "verified", "", T))
        else:
            out.append(SearchResult(members, "failed", ", ".join(cert.failed())))
    return out

"""Linear symmetric and skew-symmetric generalized complex structures.

Coordinates on V + V*: the first n entries are the vector part in the
standard basis of V, the last n entries the covector part in the dual basis.
A covector xi acts on X by ``xi(X) = sum xi_j X_j``.  The map X -> i_X w of
a bilinear form w (matrix ``w[a][b] = w(e_a, e_b)``) has matrix ``w^T``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg as la
from .scalars import Scalar

__all__ = [
    "SYMMETRIC",
    "SKEW",
    "NotComplexStructure",
    "Degenerate",
    "NotSkew",
    "NotEigenSplit",
    "AlphaIllDefined",
    "SumDeficient",
    "DegenerateImAlpha",
    "NotTauHermitian",
    "WrongKind",
    "DoubleSpace",
    "GCStructure",
    "HoloData",
    "BFieldNormalForm",
    "from_complex_structure",
    "from_metric",
    "from_symplectic",
    "bfield_act",
    "bfield_matrix",
    "holo_space_of",
    "reconstruct_gcs",
    "bfield_decompose",
    "direct_sum",
    "conjugate_by",
    "lift_linear",
    "random_structure",
    "random_invertible",
    "random_skew",
    "standard_complex",
]

SYMMETRIC = "symmetric"
SKEW = "skew"


class NotComplexStructure(ValueError):
    pass


class Degenerate(ValueError):
    pass


class NotSkew(ValueError):
    pass


class NotEigenSplit(ValueError):
    pass


class AlphaIllDefined(ValueError):
    pass


class SumDeficient(ValueError):
    pass


class NotTauHermitian(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DegenerateImAlpha(ValueError):
    def __init__(self, message, X=None, xi=None):
        super().__init__(message)
        self.X = X
        self.xi = xi


class WrongKind(ValueError):
    pass


def _tau(kind: str):
    if kind == SYMMETRIC:
        return lambda v: la.conj(v) if isinstance(v, list) else v.conjugate()
    if kind == SKEW:
        return lambda v: v
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class DoubleSpace:
    n: int

    @property
    def gcan(self) -> list:
        """Gram matrix of g_can(X + xi, Y + eta) = (xi(Y) + eta(X)) / 2."""
        half = Scalar(1) / 2
        Z = la.zeros(self.n)
        I = la.scale(half, la.identity(self.n))
        return la.block([[Z, I], [I, Z]])

    def labels(self) -> list[str]:
        return [f"e{k + 1}" for k in range(self.n)] + [f"e{k + 1}*" for k in range(self.n)]

    def pair(self, u, v) -> Scalar:
        n = self.n
        return (la.dot(u[n:], v[:n]) + la.dot(v[n:], u[:n])) / 2


@dataclass
class GCStructure:
    J: list
    kind: str

    def __post_init__(self):
        self.J = la.mat(self.J)

    @property
    def n(self) -> int:
        return len(self.J) // 2

    @property
    def space(self) -> DoubleSpace:
        return DoubleSpace(self.n)

    def defects(self) -> list[str]:
        out = []
        m = 2 * self.n
        if any(not x.is_real() for row in self.J for x in row):
            out.append("not real")
        if la.matmul(self.J, self.J) != la.scale(-1, la.identity(m)):
            out.append("J^2 != -Id")
        G = self.space.gcan
        lhs = la.matmul(la.transpose(self.J), G)
        rhs = la.matmul(G, self.J)
        if self.kind == SYMMETRIC and lhs != rhs:
            out.append("not g_can-symmetric")
        if self.kind == SKEW and lhs != la.scale(-1, rhs):
            out.append("not g_can-skew")
        return out

    def is_valid(self) -> bool:
        return not self.defects()

    def __eq__(self, other):
        return isinstance(other, GCStructure) and self.kind == other.kind and self.J == other.J

    def to_json(self) -> dict:
        return {"kind": self.kind, "J": [[str(x) for x in row] for row in self.J]}


# -- constructors ---------------------------------------------------------------------


def from_complex_structure(JV, kind: str = SYMMETRIC) -> GCStructure:
    """[[J, 0], [0, J*]] with J* xi = xi o J; holomorphic space (V^{1,0}, 0).

    For the skew kind the dual block is -J*, the complex-type structure of
    skew-symmetric generalized geometry.
    """
    JV = la.mat(JV)
    n = len(JV)
    if n % 2 or la.matmul(JV, JV) != la.scale(-1, la.identity(n)):
        raise NotComplexStructure("J_V does not square to -Id")
    dual = la.transpose(JV) if kind == SYMMETRIC else la.scale(-1, la.transpose(JV))
    Z = la.zeros(n)
    return GCStructure(la.block([[JV, Z], [Z, dual]]), kind)


def _from_form(w, kind: str) -> GCStructure:
    w = la.mat(w)
    n = len(w)
    M = la.transpose(w)  # X -> i_X w
    try:
        Minv = la.inverse(M)
    except ZeroDivisionError:
        raise Degenerate("bilinear form is degenerate") from None
    return GCStructure(la.block([[la.zeros(n), Minv], [la.scale(-1, M), la.zeros(n)]]), kind)


def from_metric(g) -> GCStructure:
    """[[0, g^-1], [-g, 0]]; holomorphic space (V^C, i g)."""
    g = la.mat(g)
    if g != la.transpose(g):
        raise ValueError("metric must be symmetric")
    return _from_form(g, SYMMETRIC)


def from_symplectic(w) -> GCStructure:
    """Skew structure with holomorphic space (V^C, i w)."""
    w = la.mat(w)
    if w != la.scale(-1, la.transpose(w)):
        raise NotSkew("form must be skew-symmetric")
    return _from_form(w, SKEW)


def bfield_matrix(B) -> list:
    """exp(B): X + xi -> X + i_X B + xi."""
    B = la.mat(B)
    n = len(B)
    return la.block([[la.identity(n), la.zeros(n)], [la.transpose(B), la.identity(n)]])


def bfield_act(B, J: GCStructure) -> GCStructure:
    B = la.mat(B)
    if B != la.scale(-1, la.transpose(B)):
        raise NotSkew("B must be skew-symmetric")
    if any(not x.is_real() for row in B for x in row):
        raise NotSkew("B must be real")
    E = bfield_matrix(B)
    Einv = bfield_matrix(la.scale(-1, B))
    return GCStructure(la.matmul(la.matmul(E, J.J), Einv), J.kind)


def direct_sum(J1: GCStructure, J2: GCStructure) -> GCStructure:
    """Structure on V1 + V2 with coordinates (V1, V2, V1*, V2*)."""
    if J1.kind != J2.kind:
        raise WrongKind("direct sum of structures of different kinds")
    n1, n2 = J1.n, J2.n
    n = n1 + n2
    # position of each coordinate of (V1+V1*) and (V2+V2*) in the sum
    pos1 = list(range(n1)) + [n + k for k in range(n1)]
    pos2 = [n1 + k for k in range(n2)] + [n + n1 + k for k in range(n2)]
    M = la.zeros(2 * n)
    for a in range(2 * n1):
        for b in range(2 * n1):
            M[pos1[a]][pos1[b]] = J1.J[a][b]
    for a in range(2 * n2):
        for b in range(2 * n2):
            M[pos2[a]][pos2[b]] = J2.J[a][b]
    return GCStructure(M, J1.kind)


def lift_linear(A) -> list:
    """diag(A, A^{-T}): the action of a linear isomorphism of V on V + V*."""
    A = la.mat(A)
    n = len(A)
    return la.block([[A, la.zeros(n)], [la.zeros(n), la.transpose(la.inverse(A))]])


def conjugate_by(A, J: GCStructure) -> GCStructure:
    """Push a structure forward along the isomorphism A of V."""
    T = lift_linear(A)
    Tinv = lift_linear(la.inverse(la.mat(A)))
    return GCStructure(la.matmul(la.matmul(T, J.J), Tinv), J.kind)


# -- holomorphic data -------------------------------------------------------------


@dataclass
class HoloData:
    """L^tau(E, alpha): E by basis rows, alpha[j][l] = alpha(e_j, tau(e_l))."""

    E: list
    alpha: list
    kind: str
    n: int = field(default=0)

    def __post_init__(self):
        self.E = [la.vec(v) for v in self.E]
        self.alpha = la.mat(self.alpha) if self.alpha else []
        if not self.n:
            if not self.E:
                raise ValueError("dimension of V must be given when E = 0")
            self.n = len(self.E[0])
        if len(self.alpha) != len(self.E) or any(len(r) != len(self.E) for r in self.alpha):
            raise ValueError("alpha must be a dim(E) x dim(E) matrix")
        if la.rank(self.E) != len(self.E):
            raise ValueError("E basis vectors are dependent")

    @property
    def tau(self):
        return _tau(self.kind)

    @property
    def tauE(self) -> list:
        return [self.tau(v) for v in self.E]

    @property
    def conjE(self) -> list:
        return [la.conj(v) for v in self.E]

    def coords_E(self, X) -> list:
        c = la.coords(X, self.E)
        if c is None:
            raise ValueError("vector is not in E")
        return c

    def coords_tauE(self, Y) -> list:
        c = la.coords(Y, self.tauE)
        if c is None:
            raise ValueError("vector is not in tau(E)")
        return c

    def eval(self, X, Y) -> Scalar:
        """alpha(X, Y) for X in E and Y in tau(E)."""
        return la.bilinear(self.coords_E(X), self.alpha, self.coords_tauE(Y))

    def delta(self) -> list:
        """Real basis of Delta, with Delta^C = E cap conj(E)."""
        inter = la.intersect(self.E, self.conjE) if self.E else []
        cand = []
        for v in inter:
            cand.append([x.real_imag()[0] for x in v])
            cand.append([x.real_imag()[1] for x in v])
        cand = [v for v in cand if not la.is_zero(v)]
        return [cand[k] for k in la.independent_subset(cand)]

    def g_delta(self, basis: list | None = None) -> list:
        """Im(alpha|Delta) on the given (default: computed) real basis."""
        D = self.delta() if basis is None else basis
        return [[self.eval(x, y).real_imag()[1] for y in D] for x in D]

    def tau_hermitian_defect(self):
        """First (j, l) where alpha(X, tau Y) + tau(alpha(Y, tau X)) != 0."""
        t = self.tau
        A = self.alpha
        for j in range(len(A)):
            for l in range(len(A)):
                if A[j][l] + t(A[l][j]):
                    return (j, l)
        return None

    def sum_defect(self) -> int:
        """dim V - dim(E + conj E)."""
        if not self.E:
            return self.n
        return self.n - la.rank(self.E + self.conjE)

    def validate(self) -> None:
        if self.sum_defect():
            raise SumDeficient(f"E + conj(E) misses {self.sum_defect()} dimensions")
        bad = self.tau_hermitian_defect()
        if bad is not None:
            raise NotTauHermitian(
                f"alpha fails the tau-Hermitian condition at basis pair {bad}", witness=bad
            )
        D = self.delta()
        g = self.g_delta(D)
        if D and la.rank(g) < len(D):
            X, xi = self._degeneracy_witness(D, g)
            raise DegenerateImAlpha("Im(alpha|Delta) is degenerate", X=X, xi=xi)

    def is_valid(self) -> bool:
        try:
            self.validate()
        except (SumDeficient, NotTauHermitian, DegenerateImAlpha):
            return False
        return True

    def _degeneracy_witness(self, D, g):
        """Kernel vector X of Im(alpha|Delta) and xi with X + xi in L cap conj(L).

        xi is alpha(X, .) on tau(E) and its conjugate on conj(tau(E)).
        """
        ker = la.nullspace(g)
        X = [Scalar(0)] * self.n
        for c, d in zip(ker[0], D):
            X = la.add(X, la.scale(c, d))
        x = self.coords_E(X)
        vals = la.vecmat(x, self.alpha)  # alpha(X, tau(e_l))
        rows, rhs = [], []
        for v, a in zip(self.tauE, vals):
            rows.append(v)
            rhs.append(a)
            rows.append(la.conj(v))
            rhs.append(a.conjugate())
        xi = la.solve(rows, rhs)
        return X, xi

    def L_basis(self) -> list:
        """Basis of L^tau(E, alpha) in V + V* coordinates."""
        T = self.tauE
        out = []
        for j, e in enumerate(self.E):
            xi = la.solve(T, self.alpha[j]) if T else [Scalar(0)] * self.n
            if xi is None:  # pragma: no cover - tau(E) rows are independent
                raise ValueError("cannot solve for the covector part")
            out.append(list(e) + xi)
        ann = la.nullspace(T, self.n) if T else la.identity(self.n)
        for eta in ann:
            out.append([Scalar(0)] * self.n + list(eta))
        return out

    def contains(self, u) -> bool:
        """Membership of X + xi in L^tau(E, alpha)."""
        n = self.n
        X, xi = list(u[:n]), list(u[n:])
        if la.is_zero(X):
            c = [Scalar(0)] * len(self.E)
        else:
            c = la.coords(X, self.E) if self.E else None
            if c is None:
                return False
        target = la.vecmat(c, self.alpha) if self.E else []
        return all(la.dot(xi, t) == a for t, a in zip(self.tauE, target))

    def canonical(self) -> "HoloData":
        """Same data with E in reduced echelon form."""
        if not self.E:
            return HoloData([], [], self.kind, self.n)
        R, piv = la.rref(self.E)
        newE = R[: len(piv)]
        # newE = T E
        T = [la.coords(v, self.E) for v in newE]
        T = [list(r) for r in T]
        tT = [self.tau(r) for r in T]
        A = la.matmul(la.matmul(T, self.alpha), la.transpose(tT))
        return HoloData(newE, A, self.kind, self.n)

    def __eq__(self, other):
        if not isinstance(other, HoloData):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.kind == b.kind and a.n == b.n and a.E == b.E and a.alpha == b.alpha

    def shifted(self, B) -> "HoloData":
        """(E, alpha + B^C restricted to E x tau(E))."""
        B = la.mat(B)
        extra = [[la.bilinear(x, B, y) for y in self.tauE] for x in self.E]
        return HoloData(self.E, la.add(self.alpha, extra) if self.E else [], self.kind, self.n)

    def to_json(self) -> dict:
        return {
            "tau_kind": self.kind,
            "n": self.n,
            "E": [[str(x) for x in v] for v in self.E],
            "alpha": [[str(x) for x in r] for r in self.alpha],
        }


def holo_space_of(J: GCStructure) -> HoloData:
    n = J.n
    m = 2 * n
    if la.matmul(J.J, J.J) != la.scale(-1, la.identity(m)):
        raise NotEigenSplit("J^2 != -Id")
    iu = Scalar.i()
    L = la.nullspace(la.sub(J.J, la.scale(iu, la.identity(m))))
    if len(L) != n:
        raise NotEigenSplit(f"i-eigenspace has dimension {len(L)}, expected {n}")
    E = la.row_basis([v[:n] for v in L])
    tau = _tau(J.kind)
    tauE = [tau(v) for v in E]
    # L cap V*: combinations of L with vanishing vector part
    comb = la.nullspace(la.transpose([v[:n] for v in L]))
    for c in comb:
        xi = [Scalar(0)] * n
        for ck, v in zip(c, L):
            xi = la.add(xi, la.scale(ck, v[n:]))
        for t in tauE:
            if la.dot(xi, t):
                raise AlphaIllDefined(
                    "covectors in L do not annihilate tau(E): the structure is "
                    f"neither {SYMMETRIC} nor {SKEW} as declared"
                )
    A = []
    LV = la.transpose([v[:n] for v in L])
    for e in E:
        c = la.solve(LV, e)
        xi = [Scalar(0)] * n
        for ck, v in zip(c, L):
            if ck:
                xi = la.add(xi, la.scale(ck, v[n:]))
        A.append([la.dot(xi, t) for t in tauE])
    H = HoloData(E, A, J.kind, n)
    H.validate()
    return H


def reconstruct_gcs(H: HoloData) -> GCStructure:
    n = H.n
    H.validate()
    L = H.L_basis()
    Lbar = [la.conj(v) for v in L]
    if la.rank(L + Lbar) < 2 * n:
        inter = la.intersect(L, Lbar)
        w = inter[0]
        raise DegenerateImAlpha("L cap conj(L) is nonzero", X=w[:n], xi=w[n:])
    iu = Scalar.i()
    M = la.transpose(L + Lbar)
    D = la.transpose([la.scale(iu, v) for v in L] + [la.scale(-iu, v) for v in Lbar])
    J = la.matmul(D, la.inverse(M))
    out = GCStructure(J, H.kind)
    bad = out.defects()
    if bad:  # pragma: no cover - guarded by the validation above
        raise AssertionError(f"reconstructed structure is invalid: {bad}")
    return out


# -- B-field normal form ----------------------------------------------------------


@dataclass
class BFieldNormalForm:
    B: list
    Delta: list
    g_Delta: list
    N: list
    J_N: list
    holo: HoloData
    normal_form: GCStructure  # exp(B) . J, in the standard coordinates

    def to_json(self) -> dict:
        s = lambda M: [[str(x) for x in r] for r in M]
        return {
            "B": s(self.B),
            "Delta": s(self.Delta),
            "g_Delta": s(self.g_Delta),
            "N": s(self.N),
            "J_N": s(self.J_N),
        }


def _split_z(H: HoloData, EN: list, Z) -> list:
    """z in E cap N^C with Z = z + conj(z)."""
    if not EN:
        return [Scalar(0)] * H.n
    c = la.coords(Z, EN + [la.conj(v) for v in EN])
    z = [Scalar(0)] * H.n
    for ck, v in zip(c[: len(EN)], EN):
        z = la.add(z, la.scale(ck, v))
    return z


def bfield_decompose(J: GCStructure) -> BFieldNormalForm:
    if J.kind != SYMMETRIC:
        raise WrongKind("the B-field normal form is implemented for symmetric structures")
    H = holo_space_of(J)
    n = H.n
    D = H.delta()
    std = la.identity(n)
    extra = la.independent_subset(std, D)
    Nb = [std[k] for k in extra]
    EN = la.intersect(H.E, Nb) if (H.E and Nb) else []
    Q = D + Nb  # adapted basis
    p = len(D)
    Zs = [_split_z(H, EN, Z) for Z in Nb]
    Ba = la.zeros(n)
    for a in range(p):
        for b in range(p):
            Ba[a][b] = -H.eval(D[a], D[b]).real
    for a, z in enumerate(Zs):
        for b, w in enumerate(Zs):
            Ba[p + a][p + b] = -2 * H.eval(z, la.conj(w)).real
        for b in range(p):
            v = 2 * H.eval(z, D[b]).real
            Ba[b][p + a] = v
            Ba[p + a][b] = -v
    Qm = la.transpose(Q)  # columns adapted basis
    Qinv = la.inverse(Qm)
    B = la.matmul(la.matmul(la.transpose(Qinv), Ba), Qinv)
    _check_cerinta(H, B, D, EN)
    out = bfield_act(B, J)
    # target: metric on Delta (+) complex structure on N, in adapted coordinates
    gD = H.g_delta(D)
    if EN:
        JN = _complex_structure_from_holo(EN, Nb)
    else:
        JN = []
    parts = []
    if p:
        parts.append(from_metric(gD))
    if Nb:
        parts.append(from_complex_structure(JN))
    target = parts[0]
    for extra_part in parts[1:]:
        target = direct_sum(target, extra_part)
    target = conjugate_by(Qm, target)
    if target != out:
        raise AssertionError("exp(B) . J does not match the direct-sum normal form")
    return BFieldNormalForm(B, D, gD, Nb, JN, H, out)


def _complex_structure_from_holo(EN, Nb) -> list:
    """Matrix, in the basis Nb, of the complex structure with holomorphic space EN."""
    iu = Scalar.i()
    cols = EN + [la.conj(v) for v in EN]
    coords = [la.coords(v, Nb) for v in cols]
    M = la.transpose(coords)
    Dg = la.transpose([la.scale(iu, c) for c in coords[: len(EN)]] + [la.scale(-iu, c) for c in coords[len(EN):]])
    return la.matmul(Dg, la.inverse(M))


def _check_cerinta(H: HoloData, B, D, EN) -> None:
    Bc = la.mat(B)
    for x in D:
        for y in D:
            if H.eval(x, y).real + la.bilinear(x, Bc, y):
                raise AssertionError("(Re alpha + B) does not vanish on Delta x Delta")
    for z in EN:
        for y in D:
            if H.eval(z, y) + la.bilinear(z, Bc, y):
                raise AssertionError("(alpha + B) does not vanish on (E cap N^C) x Delta^C")
    ENbar = [la.conj(v) for v in EN]
    for x in H.E:
        for w in ENbar:
            if H.eval(x, w) + la.bilinear(x, Bc, w):
                raise AssertionError("(alpha + B) does not vanish on E x (conj(E) cap N^C)")


# -- random generation ----------------------------------------------------------------


def random_invertible(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> list:
    while True:
        A = [[Scalar(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
        if la.det(A):
            return A


def random_skew(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> list:
    B = la.zeros(n)
    for a in range(n):
        for b in range(a + 1, n):
            v = Scalar(rng.randint(lo, hi))
            B[a][b] = v
            B[b][a] = -v
    return B


def standard_complex(m: int) -> list:
    """Complex structure on R^{2m}: e_{2k} -> e_{2k+1} -> -e_{2k}."""
    J = la.zeros(2 * m)
    for k in range(m):
        J[2 * k + 1][2 * k] = Scalar(1)
        J[2 * k][2 * k + 1] = Scalar(-1)
    return J


def _random_metric(rng: random.Random, p: int) -> list:
    while True:
        A = [[Scalar(rng.randint(-2, 2)) for _ in range(p)] for _ in range(p)]
        g = la.add(A, la.transpose(A))
        if la.det(g):
            return g


def _random_symplectic(rng: random.Random, p: int) -> list:
    while True:
        w = random_skew(rng, p)
        if la.det(w):
            return w


def random_structure(
    rng: random.Random,
    n: int,
    kind: str,
    delta_dim: int | None = None,
    with_bfield: bool = True,
) -> GCStructure:
    """Random valid structure: block models, a random frame change and a B-field.

    ``delta_dim`` is the dimension of the metric (symmetric) or symplectic
    (skew) block; the rest carries a complex structure.
    """
    if delta_dim is None:
        choices = [p for p in range(n + 1) if (n - p) % 2 == 0 and (kind == SYMMETRIC or p % 2 == 0)]
        delta_dim = rng.choice(choices)
    m2 = n - delta_dim
    if m2 % 2 or (kind == SKEW and delta_dim % 2):
        raise ValueError("incompatible block sizes")
    parts = []
    if delta_dim:
        if kind == SYMMETRIC:
            parts.append(from_metric(_random_metric(rng, delta_dim)))
        else:
            parts.append(from_symplectic(_random_symplectic(rng, delta_dim)))
    if m2:
        parts.append(from_complex_structure(standard_complex(m2 // 2), kind))
    J = parts[0]
    for p in parts[1:]:
        J = direct_sum(J, p)
    J = conjugate_by(random_invertible(rng, n), J)
    if with_bfield:
        J = bfield_act(random_skew(rng, n), J)
    return J

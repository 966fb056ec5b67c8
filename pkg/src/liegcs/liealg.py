"""Complex semisimple Lie algebras in a Weyl basis and their real forms.

Basis order of the complexified algebra ("Weyl coordinates"): the Killing
duals ``H_i`` of the simple roots, then ``E_k`` for every root index ``k``.
Structure constants are exact Scalars.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg as la
from .rootsys import (
    RootSubset,
    RootSystem,
    SigmaAction,
    ThetaNotAutomorphism,
    build_root_system,
    closure_violations,
    parse_type,
    sigma_from_theta,
)
from .scalars import FieldSpec, RadicandMissing, Scalar, squarefree_part

__all__ = [
    "TowerTooSmall",
    "InconsistentExtension",
    "ThetaNotAutomorphism",
    "NotClosed",
    "CartanPartTooSmall",
    "LieAlgebra",
    "WeylAlgebra",
    "VoganDiagram",
    "RealForm",
    "Subalgebra",
    "chevalley_constants",
    "build_weyl_algebra",
    "build_real_form",
    "regular_subalgebra",
    "jacobi_violations",
]


class TowerTooSmall(RadicandMissing):
    pass


class InconsistentExtension(ValueError):
    pass


class NotClosed(ValueError):
    pass


class CartanPartTooSmall(ValueError):
    pass


# -- generic structure-constant algebra -------------------------------------------


class LieAlgebra:
    """Finite-dimensional Lie algebra given by sparse structure constants.

    ``table[x][y]`` is a list of ``(z, c)`` with ``[e_x, e_y] = sum c e_z``.
    """

    def __init__(self, dim: int, table, names: Sequence[str] | None = None):
        self.dim = dim
        self.table = table
        self.names = list(names) if names else [f"e{k}" for k in range(dim)]

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, names=None) -> "LieAlgebra":
        """``brackets[(x, y)] = {z: c}`` for x < y; antisymmetry is filled in."""
        table = [[[] for _ in range(dim)] for _ in range(dim)]
        for (x, y), out in brackets.items():
            items = [(z, Scalar(c) if not isinstance(c, Scalar) else c) for z, c in sorted(out.items())]
            items = [(z, c) for z, c in items if c]
            table[x][y] = items
            table[y][x] = [(z, -c) for z, c in items]
        return cls(dim, table, names)

    def bracket(self, u: Sequence, v: Sequence) -> list:
        out = [Scalar(0)] * self.dim
        for x, ux in enumerate(u):
            if not ux:
                continue
            row = self.table[x]
            for y, vy in enumerate(v):
                if not vy:
                    continue
                for z, c in row[y]:
                    out[z] = out[z] + ux * vy * c
        return out

    def basis_vector(self, k: int) -> list:
        v = [Scalar(0)] * self.dim
        v[k] = Scalar(1)
        return v

    def ad(self, u: Sequence) -> list:
        """Matrix of ad_u (columns are images of basis vectors)."""
        cols = [self.bracket(u, self.basis_vector(k)) for k in range(self.dim)]
        return la.transpose(cols)

    def killing(self) -> list:
        ads = [self.ad(self.basis_vector(k)) for k in range(self.dim)]
        K = la.zeros(self.dim)
        for x in range(self.dim):
            for y in range(x, self.dim):
                t = Scalar(0)
                A, B = ads[x], ads[y]
                for a in range(self.dim):
                    for b in range(self.dim):
                        if A[a][b] and B[b][a]:
                            t = t + A[a][b] * B[b][a]
                K[x][y] = K[y][x] = t
        return K

    def constant(self, x: int, y: int, z: int) -> Scalar:
        for w, c in self.table[x][y]:
            if w == z:
                return c
        return Scalar(0)

    def is_real(self) -> bool:
        return all(c.is_real() for row in self.table for cell in row for _, c in cell)


def jacobi_violations(alg: LieAlgebra, limit: int | None = None) -> list[tuple[int, int, int]]:
    """Basis triples (x, y, z), x < y < z, where the Jacobi identity fails."""
    out = []
    n = alg.dim
    T = alg.table

    def br(cell_a, y):
        acc: dict = {}
        for w, c in cell_a:
            for z, d in T[w][y]:
                acc[z] = acc.get(z, 0) + c * d
        return acc

    for x in range(n):
        for y in range(x + 1, n):
            for z in range(y + 1, n):
                tot: dict = {}
                for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                    for k, v in br(T[a][b], c).items():
                        tot[k] = tot.get(k, 0) + v
                if any(v for v in tot.values()):
                    out.append((x, y, z))
                    if limit and len(out) >= limit:
                        return out
    return out


# -- Chevalley constants ------------------------------------------------------------


def _string_p(R: RootSystem, i: int, j: int) -> int:
    """Largest p with root_j - p root_i a root."""
    a, b = R.roots[i], R.roots[j]
    p = 0
    while R.find(tuple(y - (p + 1) * x for x, y in zip(a, b))) is not None:
        p += 1
    return p


def chevalley_constants(R: RootSystem) -> dict[tuple[int, int], int]:
    """Integer constants c(a, b) = +-(p + 1) of a Chevalley basis.

    Signs are fixed by setting c = +(p + 1) on extraspecial pairs (first
    simple root that can be peeled off each positive root) and propagating
    through antisymmetry, c(-a,-b) = -c(a,b), the triangle relations and the
    Jacobi identity, in order of increasing height.
    """
    n = R.n_roots
    pairs = [(i, j) for i in range(n) for j in range(n) if R.add(i, j) is not None]
    mag = {(i, j): _string_p(R, i, j) + 1 for (i, j) in pairs}
    # union-find with parity over ordered pairs
    parent = {p: p for p in pairs}
    par = {p: 1 for p in pairs}

    def find(p):
        if parent[p] == p:
            return p, 1
        r, s = find(parent[p])
        parent[p] = r
        par[p] = par[p] * s
        return r, par[p]

    def union(p, q, s):
        # sign(p) = s * sign(q)
        rp, sp = find(p)
        rq, sq = find(q)
        if rp == rq:
            if sp != s * sq:
                raise AssertionError("inconsistent Chevalley sign relations")
            return
        parent[rp] = rq
        par[rp] = s * sq * sp

    for i, j in pairs:
        union((j, i), (i, j), -1)
        union((R.neg(i), R.neg(j)), (i, j), -1)
        k = R.neg(R.add(i, j))
        union((j, k), (i, j), 1)
    sign: dict = {}

    def value(p):
        r, s = find(p)
        if r not in sign:
            return None
        return sign[r] * s * mag[p]

    def fix(p, v):
        r, s = find(p)
        sg = 1 if v > 0 else -1
        sign[r] = sg * s

    npos = R.n_positive
    by_height = sorted(range(npos), key=lambda k: (R.height(k), k))
    for xi in by_height:
        if R.height(xi) < 2:
            continue
        ex = None
        for i in range(R.rank):
            j = R.find(tuple(a - (1 if t == i else 0) for t, a in enumerate(R.roots[xi])))
            if j is not None:
                ex = (i, j)
                break
        fix(ex, mag[ex])
        a1, b1 = ex
        for a in range(npos):
            b = R.find(tuple(x - y for x, y in zip(R.roots[xi], R.roots[a])))
            if b is None or b >= npos or a in ex:
                continue
            if value((a, b)) is not None:
                continue
            na = R.neg(a)
            # Jacobi on (e_a1, e_b1, e_-a), coefficient of e_b
            t_known = 0
            t_unknown = None
            for u, v, w in ((a1, b1, na), (b1, na, a1), (na, a1, b1)):
                s = R.add(u, v)
                if s is None or R.add(s, w) is None:
                    continue
                if (u, v) == (a1, b1):
                    t_unknown = value((u, v)) * mag[(s, w)] * _rel(find, (s, w), (a, b))
                    continue
                c1, c2 = value((u, v)), value((s, w))
                if c1 is None or c2 is None:
                    raise AssertionError("Chevalley sign solver reached an unknown constant")
                t_known += c1 * c2
            x = Fraction(-t_known, t_unknown)
            if x not in (1, -1):
                raise AssertionError("Chevalley sign solver found a non-unit sign")
            fix((a, b), mag[(a, b)] * int(x) * 1)
    out = {}
    for p in pairs:
        v = value(p)
        if v is None:  # pragma: no cover
            raise AssertionError(f"undetermined Chevalley constant for {p}")
        out[p] = v
    return out


def _rel(find, p, q) -> int:
    """Relative parity sign(p) / sign(q) of two pairs in the same class."""
    rp, sp = find(p)
    rq, sq = find(q)
    assert rp == rq
    return sp * sq


def _chevalley_algebra(R: RootSystem, c: dict) -> LieAlgebra:
    """Chevalley basis h_i (simple coroots), e_k with rational constants."""
    r = R.rank
    n = R.n_roots
    dim = r + n
    br: dict = {}
    for i in range(r):
        for k in range(n):
            v = sum(R.roots[k][j] * R.cartan_matrix[j][i] for j in range(r))
            if v:
                br[(i, r + k)] = {r + k: v}
    for k in range(n):
        for m in range(k + 1, n):
            s = R.add(k, m)
            if s is not None:
                br[(r + k, r + m)] = {r + s: c[(k, m)]}
            elif m == R.neg(k):
                # coroot of root k in simple coroots
                ak = R.inner(R.roots[k], R.roots[k])
                out = {}
                for i in range(r):
                    if R.roots[k][i]:
                        out[i] = Fraction(R.roots[k][i]) * R.pair(i, i) / ak
                br[(r + k, r + m)] = {z: Scalar(v) for z, v in out.items()}
    return LieAlgebra.from_brackets(dim, br)


# -- Weyl basis ---------------------------------------------------------------------


def _independent_radicands(values: Iterable[int]) -> list[int]:
    """Greedy F2-basis (mod squares) of the given squarefree integers."""
    from .scalars import _factor

    def vec(s):
        return frozenset(p for p in _factor(s))

    span = {frozenset()}
    chosen = []
    for s in sorted(set(values)):
        if s == 1:
            continue
        v = vec(s)
        if v in span:
            continue
        chosen.append(s)
        span = span | {x ^ v for x in span}
    return chosen


@dataclass
class WeylAlgebra:
    root_system: RootSystem
    field: FieldSpec
    N: dict
    algebra: LieAlgebra
    killing: list
    chevalley: dict

    @property
    def rank(self) -> int:
        return self.root_system.rank

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def e(self, k: int) -> int:
        """Basis position of the root vector E_k."""
        return self.rank + k

    def h_vector(self, coords: Sequence) -> list:
        """Full Weyl coordinates of sum coords[i] H_i."""
        v = [Scalar(0)] * self.dim
        for i, c in enumerate(coords):
            v[i] = Scalar(c) if not isinstance(c, Scalar) else c
        return v

    def H_root(self, k: int) -> list:
        """H_alpha for root index k, in Weyl coordinates."""
        return self.h_vector(self.root_system.roots[k])

    def E(self, k: int) -> list:
        return self.algebra.basis_vector(self.rank + k)

    def bracket(self, u, v):
        return self.algebra.bracket(u, v)

    def names(self) -> list[str]:
        R = self.root_system
        out = [f"H{i + 1}" for i in range(R.rank)]
        out += ["E(" + ",".join(str(x) for x in r) + ")" for r in R.roots]
        return out

    def to_json(self) -> dict:
        R = self.root_system
        return {
            "type": [[f, n] for f, n in R.cartan_type],
            "roots": [list(r) for r in R.roots],
            "radicands": list(self.field.radicands),
            "pairing": [[str(x) for x in row] for row in R.pairing],
            "N": [
                [i, j, str(self.N[(i, j)])] for (i, j) in sorted(self.N)
            ],
            "killing": [[str(x) for x in row] for row in self.killing],
        }


def build_weyl_algebra(R, field: FieldSpec | None = None, verify: bool = True) -> WeylAlgebra:
    """Weyl basis with [E_a, E_-a] = H_a and B(E_a, E_-a) = 1.

    ``R`` may be a RootSystem or a Cartan type.  When ``field`` is omitted the
    smallest tower holding the structure constants is used; a given field
    that is too small raises TowerTooSmall naming the missing radicand.
    """
    if not isinstance(R, RootSystem):
        R = build_root_system(R)
    c = chevalley_constants(R)
    if verify and R.rank + R.n_roots <= 60:
        bad = jacobi_violations(_chevalley_algebra(R, c), limit=1)
        if bad:  # pragma: no cover
            raise AssertionError(f"Chevalley table violates Jacobi at {bad[0]}")
    q = [R.pair(k, k) / 2 for k in range(R.n_roots)]  # lambda_k ** 2
    ratio = {}
    need = set()
    for (i, j) in c:
        s = R.add(i, j)
        x = q[i] * q[j] / q[s]
        ratio[(i, j)] = x
        need.add(squarefree_part(x.numerator * x.denominator)[0])
    if field is None:
        field = FieldSpec(_independent_radicands(need))
    else:
        for s in sorted(need):
            if s != 1 and s not in field.allowed:
                raise TowerTooSmall(
                    f"the Weyl basis of {R.type_label()} needs sqrt({s})", radicand=s
                )
    N = {p: Scalar(c[p], field) * field.sqrt(ratio[p]) for p in c}
    r = R.rank
    n = R.n_roots
    br: dict = {}
    for i in range(r):
        for k in range(n):
            v = R.pair(k, i)
            if v:
                br[(i, r + k)] = {r + k: Scalar(v, field)}
    for k in range(n):
        for m in range(k + 1, n):
            s = R.add(k, m)
            if s is not None:
                br[(k + r, m + r)] = {s + r: N[(k, m)]}
            elif m == R.neg(k):
                br[(k + r, m + r)] = {
                    i: Scalar(R.roots[k][i], field) for i in range(r) if R.roots[k][i]
                }
    alg = LieAlgebra.from_brackets(r + n, br)
    W = WeylAlgebra(R, field, N, alg, [], c)
    alg.names = W.names()
    K = alg.killing()
    W.killing = K
    if verify:
        _verify_weyl(W)
    return W


def _verify_weyl(W: WeylAlgebra) -> None:
    R = W.root_system
    K = W.killing
    r = R.rank
    for i in range(r):
        for j in range(r):
            if K[i][j] != Scalar(R.pair(i, j)):
                raise AssertionError("Killing form disagrees with the root pairing")
    for k in range(R.n_roots):
        for m in range(R.n_roots):
            want = 1 if m == R.neg(k) else 0
            if K[r + k][r + m] != want:
                raise AssertionError(f"B(E_{k}, E_{m}) != {want}")
        for i in range(r):
            if K[i][r + k]:
                raise AssertionError("Killing form pairs H with E")
    for (i, j), v in W.N.items():
        if not v.is_real() or W.N[(R.neg(i), R.neg(j))] != -v:
            raise AssertionError("N_{-a,-b} != -N_{ab}")
        k = R.neg(R.add(i, j))
        if W.N[(j, k)] != v or W.N[(k, i)] != v:
            raise AssertionError("triangle relation fails")


# -- real forms -----------------------------------------------------------------


@dataclass(frozen=True)
class VoganDiagram:
    cartan_type: tuple
    theta: tuple[int, ...]
    painted: frozenset[int]

    @classmethod
    def make(cls, cartan_type, theta=None, painted=()) -> "VoganDiagram":
        comps = tuple(parse_type(cartan_type))
        rank = sum(n for _, n in comps)
        theta = tuple(range(rank)) if theta is None else tuple(int(t) for t in theta)
        return cls(comps, theta, frozenset(int(p) for p in painted))

    @classmethod
    def from_json(cls, data: dict) -> "VoganDiagram":
        return cls.make(data["type"], data.get("theta"), data.get("painted", ()))

    def to_json(self) -> dict:
        return {
            "type": [[f, n] for f, n in self.cartan_type],
            "theta": list(self.theta),
            "painted": sorted(self.painted),
        }


@dataclass
class RealForm:
    algebra: WeylAlgebra
    vogan: VoganDiagram
    a: tuple[int, ...]
    sigma: SigmaAction
    sigma_matrix: list  # sigma(v) = sigma_matrix * conj(v)
    h_plus: list
    h_minus: list
    real_basis: list  # Weyl-coordinate vectors
    real_labels: list[str]
    P: list  # columns = real basis vectors
    P_inv: list
    real_algebra: LieAlgebra = field(repr=False)

    @property
    def is_inner(self) -> bool:
        return self.sigma.is_inner

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def apply_sigma(self, v: Sequence) -> list:
        return la.matvec(self.sigma_matrix, la.conj(list(v)))

    def to_real_coords(self, v: Sequence) -> list:
        return la.matvec(self.P_inv, v)

    def from_real_coords(self, v: Sequence) -> list:
        return la.matvec(self.P, v)

    def A(self, k: int) -> list:
        """A_alpha = E_alpha - a_alpha E_sigma(alpha) in Weyl coordinates."""
        W = self.algebra
        return la.sub(W.E(k), la.scale(self.a[k], W.E(self.sigma(k))))

    def B(self, k: int) -> list:
        W = self.algebra
        return la.scale(Scalar.i(), la.add(W.E(k), la.scale(self.a[k], W.E(self.sigma(k)))))


def build_real_form(W: WeylAlgebra, V: VoganDiagram) -> RealForm:
    R = W.root_system
    if tuple(V.cartan_type) != tuple(R.cartan_type):
        raise ValueError("Vogan diagram type does not match the algebra")
    sigma = sigma_from_theta(R, V.theta)
    for p in V.painted:
        if not 0 <= p < R.rank or V.theta[p] != p:
            raise ThetaNotAutomorphism(f"painted node {p} is not fixed by theta")
    n = R.n_roots
    npos = R.n_positive
    a: list[int | None] = [None] * n
    for i in range(R.rank):
        a[i] = -1 if i in V.painted else 1
    N = W.N

    def sim2(i, j):
        v = -a[i] * a[j] * N[(sigma(i), sigma(j))] / N[(i, j)]
        return v

    for xi in sorted(range(npos), key=lambda k: (R.height(k), k)):
        if R.height(xi) < 2:
            continue
        for i in range(R.rank):
            j = R.find(tuple(x - (1 if t == i else 0) for t, x in enumerate(R.roots[xi])))
            if j is not None:
                v = sim2(i, j)
                if v not in (1, -1):
                    raise InconsistentExtension(f"a for root {R.roots[xi]} is {v}")
                a[xi] = int(v.to_rational())
                break
    for k in range(npos):
        a[R.neg(k)] = a[k]
    for k in range(n):
        if a[sigma(k)] != a[k]:
            raise InconsistentExtension(
                f"a differs on root {R.roots[k]} and its sigma-image {R.roots[sigma(k)]}"
            )
    for (i, j) in N:
        s = R.add(i, j)
        if sim2(i, j) != a[s]:
            raise InconsistentExtension(
                f"decomposition {R.roots[i]} + {R.roots[j]} forces a different sign on {R.roots[s]}"
            )
    a_t = tuple(a)
    r = R.rank
    dim = W.dim
    # sigma(H_i) = H_{sigma(alpha_i)}, sigma(E_k) = -a_k E_{sigma k}
    Smat = la.zeros(dim)
    for i in range(r):
        img = R.roots[sigma(i)]
        for t in range(r):
            Smat[t][i] = Scalar(img[t])
    for k in range(n):
        Smat[r + sigma(k)][r + k] = Scalar(-a_t[k])
    F_partial = dict(algebra=W, vogan=V, a=a_t, sigma=sigma, sigma_matrix=Smat)
    _verify_sigma(W, Smat)
    # real basis
    iu = Scalar.i()
    h_plus_c, h_minus_c = [], []
    for i in range(r):
        Ha = W.H_root(i)
        Hs = W.H_root(sigma(i))
        h_plus_c.append(la.scale(iu, la.sub(Ha, Hs)))
        h_minus_c.append(la.add(Ha, Hs))
    cand = h_plus_c + h_minus_c
    pick = la.real_independent_subset(cand)
    h_plus = [cand[k] for k in pick if k < r]
    h_minus = [cand[k] for k in pick if k >= r]
    labels = [f"h+{k + 1}" for k in pick if k < r] + [f"h-{k - r + 1}" for k in pick if k >= r]
    basis = h_plus + h_minus
    reps = [k for k in range(n) if k <= sigma(k)]
    F = RealForm(**F_partial, h_plus=h_plus, h_minus=h_minus, real_basis=[], real_labels=[],
                 P=[], P_inv=[], real_algebra=None)
    names = W.names()
    for k in reps:
        basis.append(F.A(k))
        labels.append(f"A{names[r + k][1:]}")
        basis.append(F.B(k))
        labels.append(f"B{names[r + k][1:]}")
    if len(basis) != dim:
        raise AssertionError("real basis has the wrong size")
    P = la.transpose(basis)
    P_inv = la.inverse(P)
    F.real_basis = basis
    F.real_labels = labels
    F.P = P
    F.P_inv = P_inv
    # real structure constants
    br: dict = {}
    for x in range(dim):
        for y in range(x + 1, dim):
            out = la.matvec(P_inv, W.bracket(basis[x], basis[y]))
            for c in out:
                if not c.is_real():
                    raise AssertionError("real basis does not close under the bracket")
            nz = {z: c for z, c in enumerate(out) if c}
            if nz:
                br[(x, y)] = nz
    F.real_algebra = LieAlgebra.from_brackets(dim, br, labels)
    return F


def _verify_sigma(W: WeylAlgebra, Smat) -> None:
    dim = W.dim

    def sig(v):
        return la.matvec(Smat, la.conj(v))

    basis = [W.algebra.basis_vector(k) for k in range(dim)]
    for x in range(dim):
        if sig(sig(basis[x])) != basis[x]:
            raise InconsistentExtension("sigma is not an involution")
        for y in range(x + 1, dim):
            lhs = sig(W.bracket(basis[x], basis[y]))
            rhs = W.bracket(sig(basis[x]), sig(basis[y]))
            if lhs != rhs:
                raise InconsistentExtension(
                    f"sigma is not an automorphism on basis pair ({x}, {y})"
                )


# -- regular subalgebras -------------------------------------------------------------


@dataclass
class Subalgebra:
    form: RealForm
    h_k: list  # Cartan part, vectors in H-coordinates (length rank)
    R0: RootSubset
    basis: list  # Weyl coordinates
    conj_basis: list
    intersection: list
    spans_all: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


def regular_subalgebra(F: RealForm, h_k: Sequence[Sequence], R0) -> Subalgebra:
    W = F.algebra
    R = W.root_system
    if not isinstance(R0, RootSubset):
        R0 = RootSubset.of(R, R0)
    viol = closure_violations(R, R0.members)
    if viol:
        a, b, s = viol[0]
        raise NotClosed(
            f"R0 is not closed: {R.roots[a]} + {R.roots[b]} = {R.roots[s]} is missing"
        )
    hk = la.row_basis([[Scalar(x) if not isinstance(x, Scalar) else x for x in v] for v in h_k])
    for k in R0.symmetric_part():
        if not la.in_span(list(R.roots[k]), hk):
            raise CartanPartTooSmall(
                f"H for root {R.roots[k]} is not in the Cartan part of k"
            )
    basis = [W.h_vector(v) for v in hk] + [W.E(k) for k in sorted(R0.members)]
    conj_basis = [F.apply_sigma(v) for v in basis]
    inter = la.intersect(basis, conj_basis)
    spans = la.rank(basis + conj_basis) == W.dim
    return Subalgebra(F, hk, R0, basis, conj_basis, inter, spans)

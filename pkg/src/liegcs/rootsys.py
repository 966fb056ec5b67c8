"""Root systems in simple-root coordinates, closed subsets and the sigma action."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "RootSystem",
    "RootSubset",
    "SigmaAction",
    "SubsetClass",
    "UnknownType",
    "NotInSubsystem",
    "SearchBudgetExceeded",
    "ThetaNotAutomorphism",
    "build_root_system",
    "parse_type",
    "height",
    "classify_subset",
    "enumerate_sigma_parabolic",
    "sigma_from_theta",
    "minus_identity",
    "simple_system",
    "closure_violations",
]


class UnknownType(ValueError):
    pass


class NotInSubsystem(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


class ThetaNotAutomorphism(ValueError):
    pass


_ROOT_COUNTS = {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}


def expected_root_count(family: str, n: int) -> int:
    if family == "A":
        return n * (n + 1)
    if family in "BC":
        return 2 * n * n
    if family == "D":
        return 2 * n * (n - 1)
    return _ROOT_COUNTS[f"{family}{n}"]


def parse_type(spec) -> list[tuple[str, int]]:
    """Accept ``"A2"``, ``"A1+A1"``, ``[["A", 2]]`` or ``[("A", 2), ...]``."""
    if isinstance(spec, str):
        parts = [p for p in re.split(r"[+x×, ]+", spec.strip()) if p]
        out = []
        for p in parts:
            m = re.fullmatch(r"([A-Ga-g])_?(\d+)", p)
            if not m:
                raise UnknownType(f"cannot parse Cartan type {p!r}")
            out.append((m.group(1).upper(), int(m.group(2))))
    else:
        out = []
        for item in spec:
            if isinstance(item, str):
                out.extend(parse_type(item))
            else:
                fam, n = item
                out.append((str(fam).upper(), int(n)))
    if not out:
        raise UnknownType("empty Cartan type")
    for fam, n in out:
        ok = (
            (fam == "A" and n >= 1)
            or (fam == "B" and n >= 2)
            or (fam == "C" and n >= 3)
            or (fam == "D" and n >= 4)
            or (fam == "E" and n in (6, 7, 8))
            or (fam == "F" and n == 4)
            or (fam == "G" and n == 2)
        )
        if not ok:
            raise UnknownType(f"unknown Cartan type {fam}{n}")
    return out


def _gram(fam: str, n: int) -> list[list[Fraction]]:
    """Symmetric form on simple roots, short roots of squared length 1 or 2."""
    G = [[Fraction(0)] * n for _ in range(n)]
    edges: list[tuple[int, int]] = []
    lengths = [Fraction(2)] * n
    if fam in "ABC":
        edges = [(k, k + 1) for k in range(n - 1)]
        if fam == "B":
            lengths[n - 1] = Fraction(1)
        elif fam == "C":
            lengths = [Fraction(1)] * (n - 1) + [Fraction(2)]
    elif fam == "D":
        edges = [(k, k + 1) for k in range(n - 2)] + [(n - 3, n - 1)]
    elif fam == "E":
        edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    elif fam == "F":
        edges = [(0, 1), (1, 2), (2, 3)]
        lengths = [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
    elif fam == "G":
        edges = [(0, 1)]
        lengths = [Fraction(2, 3), Fraction(2)]
    for k in range(n):
        G[k][k] = lengths[k]
    for a, b in edges:
        # angle with product of Cartan integers = 1, 2 or 3
        v = -max(lengths[a], lengths[b]) / 2
        G[a][b] = G[b][a] = v
    return G


@dataclass(frozen=True)
class RootSystem:
    cartan_type: tuple[tuple[str, int], ...]
    roots: tuple[tuple[int, ...], ...]
    cartan_matrix: tuple[tuple[int, ...], ...]
    pairing: tuple[tuple[Fraction, ...], ...]
    component_of: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @property
    def n_roots(self) -> int:
        return len(self.roots)

    @property
    def n_positive(self) -> int:
        return len(self.roots) // 2

    def index(self, root: Sequence[int]) -> int:
        return self._index[tuple(root)]

    def find(self, root: Sequence[int]) -> int | None:
        return self._index.get(tuple(root))

    def neg(self, k: int) -> int:
        return self._neg[k]

    def add(self, i: int, j: int) -> int | None:
        """Index of root_i + root_j, or None."""
        return self._add[i][j]

    def is_positive(self, k: int) -> bool:
        return k < self.n_positive

    def height(self, k: int) -> int:
        return sum(self.roots[k])

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        """Killing-induced pairing on simple-root coordinates."""
        P = self.pairing
        return sum(
            (Fraction(u[a]) * P[a][b] * v[b] for a in range(self.rank) for b in range(self.rank) if u[a] and v[b]),
            Fraction(0),
        )

    def pair(self, i: int, j: int) -> Fraction:
        return self._pair[i][j]

    def to_json(self) -> dict:
        return {
            "type": [[f, n] for f, n in self.cartan_type],
            "roots": [list(r) for r in self.roots],
        }

    def type_label(self) -> str:
        return "+".join(f"{f}{n}" for f, n in self.cartan_type)


def build_root_system(cartan_type) -> RootSystem:
    comps = parse_type(cartan_type)
    rank = sum(n for _, n in comps)
    gram0 = [[Fraction(0)] * rank for _ in range(rank)]
    component_of: list[int] = []
    off = 0
    for c, (fam, n) in enumerate(comps):
        G = _gram(fam, n)
        for a in range(n):
            for b in range(n):
                gram0[off + a][off + b] = G[a][b]
        component_of.extend([c] * n)
        off += n
    cartan = tuple(
        tuple(int(2 * gram0[i][j] / gram0[j][j]) for j in range(rank)) for i in range(rank)
    )
    # positive roots by the string algorithm
    simple = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
    positives = list(simple)
    seen = set(positives)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(rank):
                # <beta, alpha_i^vee>
                c = sum(beta[j] * cartan[j][i] for j in range(rank))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in seen:
                        p += 1
                    else:
                        break
                q = p - c
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in seen:
                        seen.add(up)
                        nxt.append(up)
        positives.extend(nxt)
        layer = nxt
    positives.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
    roots = tuple(positives) + tuple(tuple(-x for x in r) for r in positives)
    expect = sum(expected_root_count(f, n) for f, n in comps)
    if len(roots) != expect:  # pragma: no cover - construction guard
        raise AssertionError(f"built {len(roots)} roots, expected {expect}")
    # Killing normalization, one factor per simple component
    scale = [Fraction(0)] * len(comps)
    for c in range(len(comps)):
        a1 = component_of.index(c)
        s = Fraction(0)
        for r in roots:
            v = sum(r[j] * gram0[j][a1] for j in range(rank))
            s += v * v
        scale[c] = gram0[a1][a1] / s
    pairing = tuple(
        tuple(gram0[i][j] * scale[component_of[i]] for j in range(rank)) for i in range(rank)
    )
    R = RootSystem(tuple(comps), roots, cartan, pairing, tuple(component_of))
    idx = {r: k for k, r in enumerate(roots)}
    object.__setattr__(R, "_index", idx)
    object.__setattr__(R, "_neg", tuple(idx[tuple(-x for x in r)] for r in roots))
    add = []
    for r in roots:
        row = []
        for s in roots:
            row.append(idx.get(tuple(a + b for a, b in zip(r, s))))
        add.append(tuple(row))
    object.__setattr__(R, "_add", tuple(add))
    object.__setattr__(
        R, "_pair", tuple(tuple(R.inner(r, s) for s in roots) for r in roots)
    )
    return R


# -- sigma action ----------------------------------------------------------------


@dataclass(frozen=True)
class SigmaAction:
    perm: tuple[int, ...]
    theta: tuple[int, ...]

    def __call__(self, k: int) -> int:
        return self.perm[k]

    @property
    def is_inner(self) -> bool:
        return all(t == k for k, t in enumerate(self.theta))


def check_theta(R: RootSystem, theta: Sequence[int]) -> None:
    r = R.rank
    if sorted(theta) != list(range(r)):
        raise ThetaNotAutomorphism(f"theta {list(theta)} is not a permutation of the simple nodes")
    if any(theta[theta[k]] != k for k in range(r)):
        raise ThetaNotAutomorphism("theta is not an involution")
    for i in range(r):
        for j in range(r):
            if R.cartan_matrix[theta[i]][theta[j]] != R.cartan_matrix[i][j]:
                raise ThetaNotAutomorphism(
                    f"theta does not preserve the Dynkin diagram at nodes {i},{j}"
                )


def sigma_from_theta(R: RootSystem, theta: Sequence[int]) -> SigmaAction:
    """sigma|_R = -theta|_R with theta a diagram automorphism."""
    theta = tuple(int(t) for t in theta)
    check_theta(R, theta)
    perm = []
    for r in R.roots:
        img = [0] * R.rank
        for k, c in enumerate(r):
            img[theta[k]] -= c
        perm.append(R.index(img))
    return SigmaAction(tuple(perm), theta)


def minus_identity(R: RootSystem) -> SigmaAction:
    return sigma_from_theta(R, range(R.rank))


# -- subsets ---------------------------------------------------------------------


@dataclass(frozen=True)
class RootSubset:
    parent: RootSystem
    members: frozenset[int]

    @classmethod
    def of(cls, R: RootSystem, members: Iterable[int]) -> "RootSubset":
        m = frozenset(int(k) for k in members)
        bad = [k for k in m if not 0 <= k < R.n_roots]
        if bad:
            raise ValueError(f"root indices out of range: {sorted(bad)}")
        return cls(R, m)

    @property
    def closed(self) -> bool:
        return not closure_violations(self.parent, self.members)

    @property
    def bitmask(self) -> int:
        return sum(1 << k for k in self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def symmetric_part(self) -> frozenset[int]:
        R = self.parent
        return frozenset(k for k in self.members if R.neg(k) in self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, k):
        return k in self.members

    def __iter__(self):
        return iter(sorted(self.members))


def closure_violations(R: RootSystem, members) -> list[tuple[int, int, int]]:
    """Triples (a, b, a+b) with a, b in the subset but a+b a root outside it."""
    out = []
    ms = sorted(members)
    mset = set(ms)
    for x, a in enumerate(ms):
        for b in ms[x:]:
            s = R.add(a, b)
            if s is not None and s not in mset:
                out.append((a, b, s))
    return out


@dataclass(frozen=True)
class SubsetClass:
    closed: bool
    sigma_parabolic: bool
    sigma_positive: bool
    symmetric_part: frozenset[int]
    closure_violations: tuple[tuple[int, int, int], ...] = field(default=())


def classify_subset(R0: RootSubset, sigma: SigmaAction) -> SubsetClass:
    R = R0.parent
    m = R0.members
    viol = tuple(closure_violations(R, m))
    sig = {sigma(k) for k in m}
    parabolic = (m | sig) == set(range(R.n_roots))
    positive = parabolic and not (m & sig)
    return SubsetClass(not viol, parabolic, positive, R0.symmetric_part(), viol)


def height(R: RootSystem, root, simple: Sequence[int] | None = None) -> int:
    """Height of a root (index or coordinate vector) with respect to a simple system.

    ``simple`` lists root indices forming a simple system of the subsystem;
    by default the simple roots of ``R``.
    """
    vec = R.roots[root] if isinstance(root, int) else tuple(root)
    if simple is None:
        if R.find(vec) is None:
            raise NotInSubsystem(f"{vec} is not a root")
        return sum(vec)
    coeffs = _solve_in(R, [R.roots[k] for k in simple], vec)
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        raise NotInSubsystem(f"{vec} is not an integer combination of the simple system")
    if any(c > 0 for c in coeffs) and any(c < 0 for c in coeffs):
        raise NotInSubsystem(f"{vec} has mixed-sign coordinates in the simple system")
    return int(sum(coeffs))


def _solve_in(R: RootSystem, basis, vec) -> list[Fraction] | None:
    n = len(basis)
    rows = [[Fraction(b[i]) for b in basis] + [Fraction(vec[i])] for i in range(R.rank)]
    piv = []
    r = 0
    for c in range(n):
        p = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        piv.append(c)
        r += 1
    for k in range(r, len(rows)):
        if rows[k][n]:
            return None
    if len(piv) != n:
        return None
    out = [Fraction(0)] * n
    for k, c in enumerate(piv):
        out[c] = rows[k][n]
    return out


def simple_system(R: RootSystem, members) -> list[int]:
    """Simple roots of the symmetric subsystem ``members`` (positive cone of R).

    Positive elements that are not the sum of two positive elements of the
    subsystem, in increasing root index.
    """
    ms = set(members)
    pos = sorted(k for k in ms if R.is_positive(k))
    decomposable = set()
    for x, a in enumerate(pos):
        for b in pos[x:]:
            s = R.add(a, b)
            if s is not None and s in ms:
                decomposable.add(s)
    return [k for k in pos if k not in decomposable]


def enumerate_sigma_parabolic(
    R: RootSystem,
    sigma: SigmaAction,
    max_results: int | None = None,
    positive_only: bool = False,
    budget: int = 2_000_000,
) -> list[RootSubset]:
    """Closed sigma-parabolic subsets, sorted by membership bitmask.

    Backtracking over roots ordered by absolute height, so closure and
    parabolicity constraints are checked as soon as all roots they involve
    are decided.  ``budget`` bounds the number of search nodes; the first
    ``max_results`` subsets in bitmask order are returned.
    """
    n = R.n_roots
    order = sorted(range(n), key=lambda k: (abs(R.height(k)), k))
    position = {k: p for p, k in enumerate(order)}
    checks: list[list[tuple]] = [[] for _ in range(n)]
    for a in range(n):
        b = sigma(a)
        if a <= b:
            checks[max(position[a], position[b])].append(("s", a, b))
        for c in range(a, n):
            t = R.add(a, c)
            if t is not None:
                checks[max(position[a], position[c], position[t])].append(("c", a, c, t))
    state = [False] * n
    found: list[int] = []
    nodes = 0

    def ok(p: int) -> bool:
        for chk in checks[p]:
            if chk[0] == "s":
                x, y = state[chk[1]], state[chk[2]]
                if not (x or y) or (positive_only and x and y):
                    return False
            elif state[chk[1]] and state[chk[2]] and not state[chk[3]]:
                return False
        return True

    def rec(p: int) -> None:
        nonlocal nodes
        if p == n:
            found.append(sum(1 << k for k in range(n) if state[k]))
            return
        k = order[p]
        for choice in (False, True):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(
                    f"search exceeded {budget} nodes after {len(found)} results"
                )
            state[k] = choice
            if ok(p):
                rec(p + 1)
        state[k] = False

    rec(0)
    found.sort()
    if max_results is not None:
        found = found[:max_results]
    return [RootSubset(R, frozenset(k for k in range(n) if m >> k & 1)) for m in found]

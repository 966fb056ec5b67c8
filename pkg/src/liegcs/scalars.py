"""Exact arithmetic in Q(i)(sqrt(r_1), ..., sqrt(r_m)).

A :class:`Scalar` is stored as a map ``(e, s) -> q`` meaning
``sum q * i**e * sqrt(s)`` with ``e`` in {0, 1}, ``s`` a squarefree
positive integer and ``q`` rational.  Products of square roots are reduced
on the fly (``sqrt(6) * sqrt(10) = 2 * sqrt(15)``), so the representation is
canonical independently of which radicands were declared.

The declared tower is a :class:`FieldSpec`.  Every scalar carries one; mixing
two scalars whose fields are not nested is an error, so a product can never
leave the tower that both operands live in.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd
from numbers import Rational

from gmpy2 import mpq

__all__ = [
    "FieldSpec",
    "QI",
    "Scalar",
    "RadicandMissing",
    "DivisionByZero",
    "as_scalar",
    "ZERO",
    "ONE",
    "I",
]


class RadicandMissing(ArithmeticError):
    """A square root is needed that the declared field does not contain."""

    def __init__(self, message, radicand=None):
        super().__init__(message)
        self.radicand = radicand


class DivisionByZero(ZeroDivisionError):
    pass


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(s, t)`` with ``n = s * t**2`` and ``s`` squarefree."""
    if n <= 0:
        raise ValueError("squarefree_part needs a positive integer")
    s, t = 1, 1
    counts: dict[int, int] = {}
    for p in _factor(n):
        counts[p] = counts.get(p, 0) + 1
    for p, k in counts.items():
        t *= p ** (k // 2)
        if k % 2:
            s *= p
    return s, t


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_part(n)[1] == 1


class FieldSpec:
    """The multi-quadratic tower Q(i)(sqrt(r) for r in radicands).

    Radicands must be squarefree, at least 2, pairwise distinct and
    multiplicatively independent modulo squares, so the tower has degree
    ``2 ** (len(radicands) + 1)`` over Q.
    """

    _cache: dict[tuple[int, ...], "FieldSpec"] = {}

    def __new__(cls, radicands=()):
        key = tuple(sorted(int(r) for r in radicands))
        hit = cls._cache.get(key)
        if hit is not None:
            return hit
        if len(set(key)) != len(key):
            raise ValueError(f"radicands must be distinct: {key}")
        for r in key:
            if r < 2 or not is_squarefree(r):
                raise ValueError(f"radicand {r} is not a squarefree integer >= 2")
        decomp: dict[int, tuple[tuple[int, ...], int]] = {}
        for k in range(len(key) + 1):
            for subset in combinations(key, k):
                prod = 1
                for r in subset:
                    prod *= r
                s, t = squarefree_part(prod)
                if s in decomp:
                    raise ValueError(
                        f"radicands {key} are not multiplicatively independent"
                    )
                decomp[s] = (subset, t)
        self = super().__new__(cls)
        self.radicands = key
        self.allowed = frozenset(decomp)
        self._decomp = decomp
        cls._cache[key] = self
        return self

    @classmethod
    def from_primes_of(cls, values) -> "FieldSpec":
        """Smallest prime-generated tower containing sqrt(v) for each rational v."""
        primes: set[int] = set()
        for v in values:
            q = mpq(v)
            if q == 0:
                continue
            n = abs(int(q.numerator) * int(q.denominator))
            s, _ = squarefree_part(n)
            primes.update(_factor(s))
        return cls(sorted(primes))

    @property
    def degree(self) -> int:
        return 2 ** (len(self.radicands) + 1)

    def contains(self, other: "FieldSpec") -> bool:
        return other.allowed <= self.allowed

    def decompose(self, s: int) -> tuple[tuple[int, ...], int]:
        """``sqrt(s) = prod(sqrt(r) for r in subset) / t``."""
        return self._decomp[s]

    def sqrt(self, value) -> "Scalar":
        """Exact square root of a rational number inside this field."""
        q = mpq(value)
        if q == 0:
            return Scalar(0, self)
        e = 1 if q < 0 else 0
        q = abs(q)
        n = int(q.numerator) * int(q.denominator)
        s, t = squarefree_part(n)
        if s not in self.allowed:
            raise RadicandMissing(
                f"sqrt({s}) is not in the field with radicands {self.radicands}",
                radicand=s,
            )
        # sqrt(a/b) = sqrt(a*b)/b = t*sqrt(s)/b
        return Scalar._raw({(e, s): mpq(t, int(q.denominator))}, self)

    def __repr__(self):
        return f"FieldSpec({list(self.radicands)})"

    def __reduce__(self):
        return (FieldSpec, (self.radicands,))


QI = FieldSpec(())


def _join(a: FieldSpec, b: FieldSpec) -> FieldSpec:
    if a is b:
        return a
    if a.contains(b):
        return a
    if b.contains(a):
        return b
    missing = sorted(set(b.radicands) - set(a.radicands)) or sorted(b.radicands)
    raise RadicandMissing(
        f"fields {a.radicands} and {b.radicands} are not nested; declare a tower "
        "containing both",
        radicand=missing[0] if missing else None,
    )


def _coerce_number(x):
    if isinstance(x, (int, Rational)) or type(x) is type(mpq(0)):
        return mpq(x)
    return None


class Scalar:
    __slots__ = ("_t", "field")

    def __init__(self, value=0, field: FieldSpec = QI):
        if isinstance(value, Scalar):
            self._t = dict(value._t)
            self.field = _join(field, value.field)
            return
        if isinstance(value, str):
            parsed = Scalar.parse(value, field)
            self._t = parsed._t
            self.field = parsed.field
            return
        if isinstance(value, complex):
            raise TypeError("floating point complex values are not exact")
        q = _coerce_number(value)
        if q is None:
            raise TypeError(f"cannot make a Scalar from {type(value).__name__}")
        self._t = {(0, 1): q} if q else {}
        self.field = field

    @classmethod
    def _raw(cls, terms, field):
        obj = cls.__new__(cls)
        obj._t = terms
        obj.field = field
        return obj

    @classmethod
    def i(cls, field: FieldSpec = QI) -> "Scalar":
        return cls._raw({(1, 1): mpq(1)}, field)

    @classmethod
    def gaussian(cls, re, im=0, field: FieldSpec = QI) -> "Scalar":
        t = {}
        if mpq(re):
            t[(0, 1)] = mpq(re)
        if mpq(im):
            t[(1, 1)] = mpq(im)
        return cls._raw(t, field)

    # -- arithmetic ---------------------------------------------------------

    def _other(self, other):
        if isinstance(other, Scalar):
            return other
        q = _coerce_number(other)
        if q is None:
            return None
        return Scalar._raw({(0, 1): q} if q else {}, QI)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        field = _join(self.field, o.field)
        t = dict(self._t)
        for k, v in o._t.items():
            w = t.get(k)
            if w is None:
                t[k] = v
            else:
                w = w + v
                if w:
                    t[k] = w
                else:
                    del t[k]
        return Scalar._raw(t, field)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({k: -v for k, v in self._t.items()}, self.field)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        field = _join(self.field, o.field)
        a, b = self._t, o._t
        if not a or not b:
            return Scalar._raw({}, field)
        if len(b) == 1 and (0, 1) in b:
            c = b[(0, 1)]
            return Scalar._raw({k: v * c for k, v in a.items()}, field)
        if len(a) == 1 and (0, 1) in a:
            c = a[(0, 1)]
            return Scalar._raw({k: v * c for k, v in b.items()}, field)
        t: dict = {}
        for (e1, s1), c1 in a.items():
            for (e2, s2), c2 in b.items():
                c = c1 * c2
                if e1 & e2:
                    c = -c
                if s1 == 1:
                    s = s2
                elif s2 == 1:
                    s = s1
                else:
                    g = gcd(s1, s2)
                    s = (s1 // g) * (s2 // g)
                    c = c * g
                k = (e1 ^ e2, s)
                w = t.get(k)
                t[k] = c if w is None else w + c
        return Scalar._raw({k: v for k, v in t.items() if v}, field)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self._t:
            raise DivisionByZero("division by zero Scalar")
        return Scalar._raw(_inv_terms(self._t), self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o._t:
            raise DivisionByZero("division by zero Scalar")
        if len(o._t) == 1 and (0, 1) in o._t:
            c = o._t[(0, 1)]
            return Scalar._raw({k: v / c for k, v in self._t.items()}, _join(self.field, o.field))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar._raw({(0, 1): mpq(1)}, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ----------------------------------------------------------

    def conjugate(self) -> "Scalar":
        """Complex conjugation: i -> -i, square roots of positive rationals fixed."""
        return Scalar._raw(
            {k: (-v if k[0] else v) for k, v in self._t.items()}, self.field
        )

    def real_imag(self) -> tuple["Scalar", "Scalar"]:
        re_t = {(0, s): v for (e, s), v in self._t.items() if e == 0}
        im_t = {(0, s): v for (e, s), v in self._t.items() if e == 1}
        return Scalar._raw(re_t, self.field), Scalar._raw(im_t, self.field)

    @property
    def real(self) -> "Scalar":
        return self.real_imag()[0]

    @property
    def imag(self) -> "Scalar":
        return self.real_imag()[1]

    def is_real(self) -> bool:
        return all(e == 0 for e, _ in self._t)

    def is_rational(self) -> bool:
        return not self._t or (len(self._t) == 1 and (0, 1) in self._t)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        q = self._t.get((0, 1), mpq(0))
        return Fraction(int(q.numerator), int(q.denominator))

    def in_field(self, field: FieldSpec) -> "Scalar":
        """Re-home the scalar in a (larger) declared field."""
        for _, s in self._t:
            if s not in field.allowed:
                raise RadicandMissing(
                    f"sqrt({s}) is not in the field with radicands {field.radicands}",
                    radicand=s,
                )
        return Scalar._raw(dict(self._t), field)

    def to_complex(self) -> complex:
        """Display-only floating point value."""
        out = 0j
        for (e, s), v in self._t.items():
            out += float(v) * (s ** 0.5) * (1j if e else 1)
        return out

    def terms(self):
        return sorted(self._t.items())

    # -- comparison / hashing -----------------------------------------------

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.is_rational():
            return hash(self._t.get((0, 1), mpq(0)))
        return hash(frozenset(self._t.items()))

    # -- text ---------------------------------------------------------------

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for (e, s), v in sorted(self._t.items()):
            factors = []
            coef = v
            roots: tuple[int, ...] = ()
            if s != 1:
                roots, t = self.field.decompose(s) if s in self.field.allowed else ((s,), 1)
                coef = coef / t
            factors.append(str(coef))
            if e:
                factors.append("i")
            factors.extend(f"sqrt({r})" for r in roots)
            parts.append(" * ".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Scalar('{self}')"

    def __format__(self, spec):
        return format(str(self), spec)

    @classmethod
    def parse(cls, text: str, field: FieldSpec | None = None) -> "Scalar":
        """Parse the ``q * i^e0 * sqrt(r1)^e1 ...`` term syntax.

        When ``field`` is None the field is generated by the radicands that
        appear in the text.
        """
        src = text.strip()
        if not src:
            raise ValueError("empty scalar literal")
        terms = _split_terms(src)
        radicands: set[int] = set()
        parsed = []
        for sign, body in terms:
            coef = mpq(sign)
            e = 0
            roots: list[int] = []
            for fac in body.split("*"):
                fac = fac.strip()
                if not fac:
                    raise ValueError(f"bad scalar literal {text!r}")
                m = _SQRT.fullmatch(fac)
                if m:
                    r = int(m.group(1))
                    exp = int(m.group(2) or 1)
                    if exp % 2:
                        roots.append(r)
                    else:
                        coef *= r ** (exp // 2)
                    continue
                m = _IPOW.fullmatch(fac)
                if m:
                    e += int(m.group(1) or 1)
                    continue
                m = _RAT.fullmatch(fac)
                if m:
                    coef *= mpq(fac)
                    continue
                raise ValueError(f"bad factor {fac!r} in scalar literal {text!r}")
            radicands.update(r for r in roots if r != 1)
            parsed.append((coef, e, roots))
        if field is None:
            primes = set()
            for r in radicands:
                primes.update(_factor(squarefree_part(r)[0]))
            field = FieldSpec(sorted(primes))
        out = Scalar(0, field)
        for coef, e, roots in parsed:
            term = Scalar._raw({(0, 1): coef} if coef else {}, field)
            if e % 4 == 1:
                term = term * Scalar.i(field)
            elif e % 4 == 2:
                term = -term
            elif e % 4 == 3:
                term = -term * Scalar.i(field)
            for r in roots:
                term = term * field.sqrt(r)
            out = out + term
        out.field = field
        return out


_SQRT = re.compile(r"sqrt\(\s*(\d+)\s*\)(?:\^(\d+))?")
_IPOW = re.compile(r"i(?:\^(\d+))?")
_RAT = re.compile(r"\d+(?:/\d+)?")


def _split_terms(src: str):
    out = []
    sign = 1
    cur = ""
    depth = 0
    for ch in src:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur.strip():
                out.append((sign, cur.strip()))
                sign = 1
            cur = ""
            if ch == "-":
                sign = -sign
            continue
        cur += ch
    if cur.strip():
        out.append((sign, cur.strip()))
    return out


def _inv_terms(t: dict) -> dict:
    if len(t) == 1:
        ((e, s), c), = t.items()
        # (c i^e sqrt(s))^-1 = (-1)^e i^e sqrt(s) / (c s)
        v = mpq(1) / (c * s)
        return {(e, s): (-v if e else v)}
    if any(e for e, _ in t):
        # a = b + c i ; a^-1 = (b - c i) / (b^2 + c^2)
        conj = {k: (-v if k[0] else v) for k, v in t.items()}
    else:
        p = next(_factor(s)[0] for _, s in t if s != 1)
        conj = {k: (-v if k[1] % p == 0 else v) for k, v in t.items()}
    norm = Scalar._raw(t, QI) * Scalar._raw(conj, QI)
    return (Scalar._raw(conj, QI) * Scalar._raw(_inv_terms(norm._t), QI))._t


def as_scalar(x, field: FieldSpec = QI) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return Scalar.parse(x, None if field is QI else field)
    return Scalar(x, field)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar.i()

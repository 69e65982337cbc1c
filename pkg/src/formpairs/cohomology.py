"""Cohomology of B(Z/p x Z/p).

Integral: F_p[a, b] (x) Lambda(c) with |a| = |b| = 2, |c| = 3, plus Z in degree 0.
Mod p:    F_p[x, y] (x) Lambda(u, v) with |x| = |y| = 2, |u| = |v| = 1.

Bocksteins: beta(u) = x, beta(v) = y; the integral one sends u -> a, v -> b,
uv -> c, both extended linearly over polynomials in x, y.  Reduction sends
a -> x, b -> y, c -> xv - yu, and the triangle rho . beta~ = beta commutes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .errors import ContextMismatch, InvalidParameter
from .forms import _SUPERSCRIPT
from .fp_core import FieldContext

Poly = tuple[tuple[tuple[int, int], int], ...]  # sorted ((i, j), coeff) with coeff != 0

EXTERIOR = ("1", "u", "v", "uv")
_EXT_DEGREE = {"1": 0, "u": 1, "v": 1, "uv": 2}
# (left, right) -> (sign, product)
_EXT_PRODUCT = {
    ("1", "1"): (1, "1"), ("1", "u"): (1, "u"), ("1", "v"): (1, "v"), ("1", "uv"): (1, "uv"),
    ("u", "1"): (1, "u"), ("v", "1"): (1, "v"), ("uv", "1"): (1, "uv"),
    ("u", "v"): (1, "uv"), ("v", "u"): (-1, "uv"),
}


def _poly(p: int, terms: Mapping[tuple[int, int], int]) -> Poly:
    return tuple(sorted((e, c % p) for e, c in terms.items() if c % p))


def _padd(p: int, *polys: Poly, signs=None) -> Poly:
    acc: dict[tuple[int, int], int] = {}
    for k, poly in enumerate(polys):
        sg = 1 if signs is None else signs[k]
        for e, c in poly:
            acc[e] = acc.get(e, 0) + sg * c
    return _poly(p, acc)


def _pmul(p: int, f: Poly, g: Poly) -> Poly:
    acc: dict[tuple[int, int], int] = {}
    for (i1, j1), c1 in f:
        for (i2, j2), c2 in g:
            e = (i1 + i2, j1 + j2)
            acc[e] = acc.get(e, 0) + c1 * c2
    return _poly(p, acc)


def _shift(poly: Poly, di: int, dj: int) -> Poly:
    return tuple(((i + di, j + dj), c) for (i, j), c in poly)


@dataclass(frozen=True)
class IntegralClass:
    """free + poly(a, b) + c * cpart(a, b); ``free`` is the integer H^0 part."""

    context: FieldContext
    poly: Poly = ()
    cpart: Poly = ()
    free: int = 0

    def __post_init__(self):
        p = self.context.p
        poly = _poly(p, dict(self.poly))
        if any(e == (0, 0) for e, _ in poly):
            raise InvalidParameter("constants belong in the free part")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "cpart", _poly(p, dict(self.cpart)))

    @classmethod
    def one(cls, ctx):
        return cls(ctx, free=1)

    @classmethod
    def a(cls, ctx):
        return cls(ctx, (((1, 0), 1),))

    @classmethod
    def b(cls, ctx):
        return cls(ctx, (((0, 1), 1),))

    @classmethod
    def c(cls, ctx):
        return cls(ctx, (), (((0, 0), 1),))

    def _same(self, other: IntegralClass):
        if other.context != self.context:
            raise ContextMismatch("classes over different primes")

    def __add__(self, other: IntegralClass) -> IntegralClass:
        self._same(other)
        p = self.context.p
        return IntegralClass(self.context, _padd(p, self.poly, other.poly),
                             _padd(p, self.cpart, other.cpart), self.free + other.free)

    def __neg__(self):
        p = self.context.p
        return IntegralClass(self.context, _padd(p, self.poly, signs=[-1]),
                             _padd(p, self.cpart, signs=[-1]), -self.free)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> IntegralClass:
        if isinstance(other, int):
            p = self.context.p
            scal = _poly(p, {(0, 0): other})
            return IntegralClass(self.context, _pmul(p, self.poly, scal), _pmul(p, self.cpart, scal), self.free * other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = IntegralClass.one(self.context)
        for _ in range(e):
            out = out * self
        return out

    @property
    def is_zero(self) -> bool:
        return not self.poly and not self.cpart and self.free == 0

    def degrees(self) -> set[int]:
        out = {2 * (i + j) for (i, j), _ in self.poly}
        out |= {3 + 2 * (i + j) for (i, j), _ in self.cpart}
        if self.free:
            out.add(0)
        return out

    def __str__(self):
        terms = [str(self.free)] if self.free else []
        terms += [_term(c, f"{_mono('a', 'b', i, j)}") for (i, j), c in self.poly]
        terms += [_term(c, f"{_mono('a', 'b', i, j)}c") for (i, j), c in self.cpart]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class ModPClass:
    """Sum over the exterior basis {1, u, v, uv} of polynomials in x, y."""

    context: FieldContext
    parts: tuple[tuple[str, Poly], ...] = ()

    def __post_init__(self):
        p = self.context.p
        acc = {}
        for eps, poly in self.parts:
            if eps not in _EXT_DEGREE:
                raise InvalidParameter(f"unknown exterior basis element {eps!r}")
            acc[eps] = _padd(p, acc.get(eps, ()), _poly(p, dict(poly)))
        object.__setattr__(self, "parts", tuple((e, acc[e]) for e in EXTERIOR if acc.get(e)))

    @classmethod
    def monomial(cls, ctx, i: int, j: int, eps: str = "1", coeff: int = 1) -> ModPClass:
        return cls(ctx, ((eps, (((i, j), coeff),)),))

    @classmethod
    def one(cls, ctx):
        return cls.monomial(ctx, 0, 0)

    @classmethod
    def x(cls, ctx):
        return cls.monomial(ctx, 1, 0)

    @classmethod
    def y(cls, ctx):
        return cls.monomial(ctx, 0, 1)

    @classmethod
    def u(cls, ctx):
        return cls.monomial(ctx, 0, 0, "u")

    @classmethod
    def v(cls, ctx):
        return cls.monomial(ctx, 0, 0, "v")

    def part(self, eps: str) -> Poly:
        return dict(self.parts).get(eps, ())

    def __add__(self, other: ModPClass) -> ModPClass:
        if other.context != self.context:
            raise ContextMismatch("classes over different primes")
        return ModPClass(self.context, self.parts + other.parts)

    def __neg__(self):
        p = self.context.p
        return ModPClass(self.context, tuple((e, _padd(p, q, signs=[-1])) for e, q in self.parts))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: ModPClass) -> ModPClass:
        if other.context != self.context:
            raise ContextMismatch("classes over different primes")
        p = self.context.p
        out = []
        for e1, f in self.parts:
            for e2, g in other.parts:
                if (e1, e2) not in _EXT_PRODUCT:
                    continue
                sign, e = _EXT_PRODUCT[(e1, e2)]
                prod = _pmul(p, f, g)
                out.append((e, prod if sign == 1 else _padd(p, prod, signs=[-1])))
        return ModPClass(self.context, tuple(out))

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def degrees(self) -> set[int]:
        return {2 * (i + j) + _EXT_DEGREE[e] for e, poly in self.parts for (i, j), _ in poly}

    def __str__(self):
        terms = []
        for e, poly in self.parts:
            suffix = "" if e == "1" else e
            terms += [_term(c, _mono("x", "y", i, j) + suffix) for (i, j), c in poly]
        return " + ".join(terms) if terms else "0"


def _mono(s: str, t: str, i: int, j: int) -> str:
    out = ""
    for var, e in ((s, i), (t, j)):
        if e == 1:
            out += var
        elif e > 1:
            out += var + str(e).translate(_SUPERSCRIPT)
    return out


def _term(c: int, mono: str) -> str:
    if not mono:
        return str(c)
    return mono if c == 1 else f"{c}{mono}"


# -- group structure --------------------------------------------------------


def dim_cohomology(k: int) -> tuple[int, int]:
    """(free rank, p-rank) of H^k(Z/p x Z/p; Z)."""
    if k < 0:
        raise InvalidParameter("degree must be nonnegative")
    if k == 0:
        return (1, 0)
    if k == 1:
        return (0, 0)
    return (0, (k - 1) // 2) if k % 2 else (0, (k + 2) // 2)


def dim_homology(k: int) -> tuple[int, int]:
    """(free rank, p-rank) of H_k(Z/p x Z/p; Z)."""
    if k < 0:
        raise InvalidParameter("degree must be nonnegative")
    if k == 0:
        return (1, 0)
    return (0, (k + 3) // 2) if k % 2 else (0, k // 2)


class Monomial(NamedTuple):
    i: int  # power of a
    j: int  # power of b
    eps: int  # power of c, 0 or 1

    def __str__(self):
        s = _mono("a", "b", self.i, self.j) + ("c" if self.eps else "")
        return s or "1"

    def as_class(self, ctx: FieldContext) -> IntegralClass:
        if self.eps:
            return IntegralClass(ctx, (), (((self.i, self.j), 1),))
        if self.i == self.j == 0:
            return IntegralClass.one(ctx)
        return IntegralClass(ctx, (((self.i, self.j), 1),))


def basis_of_degree(k: int) -> list[Monomial]:
    """Monomials a^i b^j c^eps with 2i + 2j + 3 eps = k, a-powers descending."""
    if k < 0:
        raise InvalidParameter("degree must be nonnegative")
    eps = k % 2
    rest = k - 3 * eps
    if rest < 0:
        return []
    m = rest // 2
    return [Monomial(m - j, j, eps) for j in range(m + 1)]


def modp_basis_of_degree(ctx: FieldContext, k: int) -> list[ModPClass]:
    """Monomials x^i y^j e of H^k(Z/p x Z/p; Z/p), e in the exterior basis."""
    out = []
    for e in EXTERIOR:
        rest = k - _EXT_DEGREE[e]
        if rest >= 0 and rest % 2 == 0:
            m = rest // 2
            out += [ModPClass.monomial(ctx, m - j, j, e) for j in range(m + 1)]
    return out


# -- operations -------------------------------------------------------------


def multiply(s: IntegralClass, t: IntegralClass) -> IntegralClass:
    s._same(t)
    p = s.context.p
    fs = _poly(p, {(0, 0): s.free})
    ft = _poly(p, {(0, 0): t.free})
    poly = _padd(p, _pmul(p, s.poly, t.poly), _pmul(p, fs, t.poly), _pmul(p, s.poly, ft))
    # c * c = 0, so only one c factor survives
    cpart = _padd(
        p,
        _pmul(p, s.poly, t.cpart), _pmul(p, s.cpart, t.poly),
        _pmul(p, fs, t.cpart), _pmul(p, s.cpart, ft),
    )
    return IntegralClass(s.context, poly, cpart, s.free * t.free)


def bockstein_modp(s: ModPClass) -> ModPClass:
    p = s.context.p
    out = [
        ("1", _shift(s.part("u"), 1, 0)),
        ("1", _shift(s.part("v"), 0, 1)),
        ("v", _shift(s.part("uv"), 1, 0)),
        ("u", _padd(p, _shift(s.part("uv"), 0, 1), signs=[-1])),
    ]
    return ModPClass(s.context, tuple(out))


def bockstein_integral(s: ModPClass) -> IntegralClass:
    p = s.context.p
    poly = _padd(p, _shift(s.part("u"), 1, 0), _shift(s.part("v"), 0, 1))
    return IntegralClass(s.context, poly, s.part("uv"))


def reduce_mod_p(t: IntegralClass) -> ModPClass:
    p = t.context.p
    parts = [("1", _padd(p, t.poly, _poly(p, {(0, 0): t.free})))]
    parts.append(("v", _shift(t.cpart, 1, 0)))
    parts.append(("u", _padd(p, _shift(t.cpart, 0, 1), signs=[-1])))
    return ModPClass(t.context, tuple(parts))

"""Homogeneous binary forms over F_p and the 2x2 matrices acting on them.

A form of degree m is stored as ``coeffs[i]`` multiplying ``a**(m-i) * b**i``
(descending powers of ``a``).  ``substitute(f, M)`` is the form
``f(m11*a + m12*b, m21*a + m22*b)``, which is a right action:
``substitute(substitute(f, M), N) == substitute(f, M @ N)`` and
``evaluate(substitute(f, M), v) == evaluate(f, M @ v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import ContextMismatch, DegreeMismatch, InvalidParameter, SingularMatrix
from .fp_core import FieldContext, FieldElement

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _poly_mul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def format_monomial_terms(coeffs: Sequence[int], names=("a", "b")) -> str:
    m = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = ""
        for var, e in ((names[0], m - i), (names[1], i)):
            if e == 1:
                mono += var
            elif e > 1:
                mono += var + str(e).translate(_SUPERSCRIPT)
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{mono}")
    return " + ".join(terms) if terms else "0"


class ProjectivePoint(NamedTuple):
    """A point (s : t) of P^1(F_p), first nonzero coordinate equal to 1."""

    s: int
    t: int


@lru_cache(maxsize=None)
def projective_points(p: int) -> tuple[ProjectivePoint, ...]:
    """All p+1 points in lexicographic order: (0,1), (1,0), (1,1), ..."""
    return (ProjectivePoint(0, 1),) + tuple(ProjectivePoint(1, t) for t in range(p))


def normalize_point(ctx: FieldContext, s, t) -> ProjectivePoint:
    s, t = ctx.residue(s), ctx.residue(t)
    if s:
        return ProjectivePoint(1, t * ctx._inv(s) % ctx.p)
    if t:
        return ProjectivePoint(0, 1)
    raise InvalidParameter("(0, 0) is not a projective point")


@dataclass(frozen=True)
class Matrix2:
    """A 2x2 matrix over F_p, entries stored as canonical residues."""

    context: FieldContext
    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        p = self.context.p
        for name in ("m11", "m12", "m21", "m22"):
            v = getattr(self, name)
            v = self.context.residue(v)
            object.__setattr__(self, name, v % p)

    @classmethod
    def of(cls, ctx: FieldContext, rows) -> Matrix2:
        """From ``[[m11, m12], [m21, m22]]`` or a row-major 4-list."""
        flat = list(rows)
        if len(flat) == 2:
            flat = [*flat[0], *flat[1]]
        if len(flat) != 4:
            raise InvalidParameter(f"expected 4 matrix entries, got {len(flat)}")
        return cls(ctx, *flat)

    @classmethod
    def identity(cls, ctx: FieldContext) -> Matrix2:
        return cls(ctx, 1, 0, 0, 1)

    @classmethod
    def diag(cls, ctx: FieldContext, x, y) -> Matrix2:
        return cls(ctx, x, 0, 0, y)

    @property
    def det(self) -> int:
        return (self.m11 * self.m22 - self.m12 * self.m21) % self.context.p

    def is_invertible(self) -> bool:
        return self.det != 0

    def entries(self) -> tuple[int, int, int, int]:
        return (self.m11, self.m12, self.m21, self.m22)

    def to_list(self) -> list[int]:
        return list(self.entries())

    def __matmul__(self, other: Matrix2) -> Matrix2:
        if other.context != self.context:
            raise ContextMismatch("matrices over different fields")
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return Matrix2(self.context, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        p = self.context.p
        s, t = v
        return ((self.m11 * s + self.m12 * t) % p, (self.m21 * s + self.m22 * t) % p)

    def inverse(self) -> Matrix2:
        det = self.det
        if det == 0:
            raise SingularMatrix(f"matrix {self.to_list()} is singular mod {self.context.p}")
        k = self.context._inv(det)
        return Matrix2(self.context, self.m22 * k, -self.m12 * k, -self.m21 * k, self.m11 * k)

    def __repr__(self):
        return f"Matrix2({self.to_list()} mod {self.context.p})"


@dataclass(frozen=True)
class BinaryForm:
    context: FieldContext
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise InvalidParameter("a form needs at least one coefficient")
        object.__setattr__(
            self, "coeffs", tuple(self.context.residue(c) for c in self.coeffs)
        )

    @classmethod
    def of(cls, ctx: FieldContext, coeffs: Iterable) -> BinaryForm:
        return cls(ctx, tuple(coeffs))

    @classmethod
    def zero(cls, ctx: FieldContext, degree: int) -> BinaryForm:
        return cls(ctx, (0,) * (degree + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def coefficients(self) -> list[FieldElement]:
        return [FieldElement(c, self.context) for c in self.coeffs]

    def _check(self, other: BinaryForm):
        if other.context != self.context:
            raise ContextMismatch("forms over different fields")
        if other.degree != self.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other: BinaryForm) -> BinaryForm:
        self._check(other)
        return BinaryForm(self.context, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: BinaryForm) -> BinaryForm:
        self._check(other)
        return BinaryForm(self.context, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> BinaryForm:
        return BinaryForm(self.context, tuple(-x for x in self.coeffs))

    def scale(self, k) -> BinaryForm:
        k = self.context.residue(k)
        return BinaryForm(self.context, tuple(k * x for x in self.coeffs))

    def __rmul__(self, k) -> BinaryForm:
        return self.scale(k)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            if other.context != self.context:
                raise ContextMismatch("forms over different fields")
            return BinaryForm(self.context, tuple(_poly_mul(self.coeffs, other.coeffs, self.context.p)))
        return self.scale(other)

    def __pow__(self, e: int) -> BinaryForm:
        out = BinaryForm(self.context, (1,))
        for _ in range(e):
            out = out * self
        return out

    def evaluate(self, s, t=None) -> FieldElement:
        return FieldElement(self._eval(s, t), self.context)

    def _eval(self, s, t=None) -> int:
        if t is None:
            s, t = s
        p, m = self.context.p, self.degree
        s, t = int(s) % p, int(t) % p
        return sum(c * pow(s, m - i, p) * pow(t, i, p) for i, c in enumerate(self.coeffs)) % p

    def substitute(self, M: Matrix2) -> BinaryForm:
        if M.context != self.context:
            raise ContextMismatch("matrix and form over different fields")
        if M.det == 0:
            raise SingularMatrix(f"cannot substitute singular matrix {M.to_list()}")
        return self._substitute(M)

    def _substitute(self, M: Matrix2) -> BinaryForm:
        p = self.context.p
        table = substitution_table(p, self.degree, M.entries())
        m = self.degree
        out = [0] * (m + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[i]
                for j in range(m + 1):
                    out[j] += c * row[j]
        return BinaryForm(self.context, tuple(x % p for x in out))

    def rational_roots(self) -> list[ProjectivePoint]:
        return [v for v in projective_points(self.context.p) if self._eval(v) == 0]

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self):
        return format_monomial_terms(self.coeffs)

    def __repr__(self):
        return f"BinaryForm({self} mod {self.context.p})"


@lru_cache(maxsize=65536)
def substitution_table(p: int, m: int, entries: tuple[int, int, int, int]) -> tuple[tuple[int, ...], ...]:
    """Row i = coefficients of (m11 a + m12 b)^(m-i) * (m21 a + m22 b)^i."""
    m11, m12, m21, m22 = entries
    la, lb = [m11 % p, m12 % p], [m21 % p, m22 % p]
    pa = [[1]]
    pb = [[1]]
    for _ in range(m):
        pa.append(_poly_mul(pa[-1], la, p))
        pb.append(_poly_mul(pb[-1], lb, p))
    return tuple(tuple(_poly_mul(pa[m - i], pb[i], p)) for i in range(m + 1))


def evaluate(f: BinaryForm, pt) -> FieldElement:
    return f.evaluate(pt)


def substitute(f: BinaryForm, M: Matrix2) -> BinaryForm:
    return f.substitute(M)


def product_of_linear_forms(ctx: FieldContext, pairs: Sequence[tuple]) -> BinaryForm:
    """Expanded prod(r*a + q*b) over the given (r, q) pairs."""
    if not pairs:
        raise InvalidParameter("need at least one linear factor")
    out = [1]
    for r, q in pairs:
        out = _poly_mul(out, [ctx.residue(r), ctx.residue(q)], ctx.p)
    return BinaryForm(ctx, tuple(out))


def rational_roots(f: BinaryForm) -> list[ProjectivePoint]:
    return f.rational_roots()


def common_rational_root(f: BinaryForm, g: BinaryForm) -> ProjectivePoint | None:
    f._check(g)
    for v in projective_points(f.context.p):
        if f._eval(v) == 0 and g._eval(v) == 0:
            return v
    return None

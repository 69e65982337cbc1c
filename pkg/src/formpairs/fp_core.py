"""Exact arithmetic in the prime field Z/p.

Residues are plain ints in ``[0, p-1]`` wherever speed matters; ``FieldElement``
wraps one together with its ``FieldContext`` for the public scalar API.  Every
choice that could go two ways (square roots, nonresidues, class
representatives, conic solutions) picks the smallest value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, isqrt
from typing import Union

from .errors import (
    ContextMismatch,
    DivisionByZero,
    InvalidParameter,
    NotAUnit,
)

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldContext:
    """The prime field F_p for an odd prime ``p < 2**31``."""

    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or isinstance(p, bool):
            raise InvalidParameter(f"modulus must be an int, got {p!r}")
        if p < 3 or p % 2 == 0 or p >= MAX_PRIME or not is_prime(p):
            raise InvalidParameter(f"{p} is not an odd prime below 2**31")

    def __repr__(self):
        return f"FieldContext({self.p})"

    # -- coercion ---------------------------------------------------------

    def __call__(self, value) -> FieldElement:
        return FieldElement(self.residue(value), self)

    def residue(self, value) -> int:
        """Canonical residue of an int or a FieldElement of this field."""
        if isinstance(value, FieldElement):
            if value.context != self:
                raise ContextMismatch(f"element of F_{value.context.p} used in F_{self.p}")
            return value.value
        return int(value) % self.p

    # -- scalar operations on residues -------------------------------------

    def inv(self, x) -> FieldElement:
        return FieldElement(self._inv(self.residue(x)), self)

    def _inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise DivisionByZero(f"0 has no inverse mod {self.p}")
        return pow(x, -1, self.p)

    def legendre(self, x) -> int:
        """Legendre symbol by Euler's criterion: 0, +1 or -1."""
        x = self.residue(x)
        if x == 0:
            return 0
        return 1 if pow(x, (self.p - 1) // 2, self.p) == 1 else -1

    def find_nonresidue(self) -> FieldElement:
        return FieldElement(self._nonresidue, self)

    @cached_property
    def _nonresidue(self) -> int:
        z = 2
        while self.legendre(z) != -1:
            z += 1
        return z

    def sqrt(self, x) -> FieldElement | None:
        """The smaller square root of ``x``, or None for a nonresidue."""
        r = self._sqrt(self.residue(x))
        return None if r is None else FieldElement(r, self)

    def _sqrt(self, a: int) -> int | None:
        p = self.p
        a %= p
        if a == 0:
            return 0
        if self.legendre(a) != 1:
            return None
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = self._nonresidue
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return min(r, p - r)

    @cached_property
    def primitive_root(self) -> int:
        factors = _prime_factors(self.p - 1)
        g = 2
        while any(pow(g, (self.p - 1) // q, self.p) == 1 for q in factors):
            g += 1
        return g

    # -- fourth-power classes ---------------------------------------------

    @property
    def num_fourth_power_classes(self) -> int:
        return gcd(4, self.p - 1)

    def _class_character(self, x: int) -> int:
        return pow(x, (self.p - 1) // self.num_fourth_power_classes, self.p)

    @cached_property
    def _class_table(self) -> tuple[tuple[int, ...], dict[int, int]]:
        reps: list[int] = []
        index: dict[int, int] = {}
        x = 1
        while len(reps) < self.num_fourth_power_classes:
            ch = self._class_character(x)
            if ch not in index:
                index[ch] = len(reps)
                reps.append(x)
            x += 1
        return tuple(reps), index

    def class_representatives(self) -> list[FieldElement]:
        """Smallest element of each coset of the fourth powers, increasing."""
        return [FieldElement(r, self) for r in self._class_table[0]]

    def fourth_power_class(self, x) -> int:
        """Index into ``class_representatives()`` of the class of ``x``."""
        x = self.residue(x)
        if x == 0:
            raise NotAUnit("0 has no fourth-power class")
        return self._class_table[1][self._class_character(x)]

    def class_representative(self, x) -> int:
        """Smallest residue in the fourth-power class of ``x``."""
        return self._class_table[0][self.fourth_power_class(x)]

    def fourth_root(self, x) -> int | None:
        """Smallest t with t**4 == x, or None."""
        x = self.residue(x)
        for t in range(self.p):
            if pow(t, 4, self.p) == x:
                return t
        return None

    # -- the conic delta*r1^2 - r2^2 = w^-3 -------------------------------

    def solve_conic(self, delta, w) -> tuple[FieldElement, FieldElement]:
        """Lexicographically smallest (r1, r2) with delta*r1^2 - r2^2 == 1/w^3."""
        p = self.p
        d, w = self.residue(delta), self.residue(w)
        if d == 0 or w == 0:
            raise InvalidParameter("delta and w must be nonzero")
        target = self._inv(pow(w, 3, p))
        for r1 in range(p):
            r2 = self._sqrt((d * r1 * r1 - target) % p)
            if r2 is not None:
                return FieldElement(r1, self), FieldElement(r2, self)
        raise AssertionError("conic has no point")  # unreachable: p - (d|p) > 0

    def count_conic_solutions(self, delta) -> int:
        """Number of points on delta*r1^2 - r2^2 = c for any nonzero c."""
        d = self.residue(delta)
        if d == 0:
            raise InvalidParameter("delta must be nonzero")
        # for fixed r1 the number of r2 is 1 + legendre(d r1^2 - 1)
        return sum(1 + self.legendre(d * r1 * r1 - 1) for r1 in range(self.p))


Scalar = Union[int, "FieldElement"]


@dataclass(frozen=True)
class FieldElement:
    value: int
    context: FieldContext

    def __post_init__(self):
        if not 0 <= self.value < self.context.p:
            object.__setattr__(self, "value", self.value % self.context.p)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.context != self.context:
                raise ContextMismatch(
                    f"cannot combine F_{self.context.p} and F_{other.context.p}"
                )
            return other.value
        if isinstance(other, int):
            return other % self.context.p
        return NotImplemented

    def _new(self, v: int) -> FieldElement:
        return FieldElement(v % self.context.p, self.context)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(self.value * self.context._inv(o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._new(o * self.context._inv(self.value))

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self._new(pow(self.context._inv(self.value), -e, self.context.p))
        return self._new(pow(self.value, e, self.context.p))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.context == other.context and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.context.p
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.context.p})"

    def inverse(self) -> FieldElement:
        return self.context.inv(self)

    def legendre(self) -> int:
        return self.context.legendre(self)

    def sqrt(self) -> FieldElement | None:
        return self.context.sqrt(self)

    def fourth_power_class(self) -> int:
        return self.context.fourth_power_class(self)

"""Pairs of binary forms under the two-sided action of SL±2 x GL2.

The left factor recombines the two forms, ``M.(Q1, Q2) = (m11 Q1 + m12 Q2,
m21 Q1 + m22 Q2)`` with ``det M = ±1`` (or ``+1`` in oriented mode).  The right
factor substitutes variables in both forms at once.  For degree-2 pairs that
pass the transgression restrictions every orbit contains exactly one
``(a^2 + w b^2, 2ab)`` with ``w`` the smallest member of its fourth-power
class, and ``canonical_form`` finds it together with an explicit witness.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import (
    ContextMismatch,
    DegreeMismatch,
    InvalidLeftMatrix,
    InvalidParameter,
    NonRealizable,
    ResourceLimit,
    SingularMatrix,
    UnsupportedDegree,
    UnsupportedPrime,
)
from .forms import BinaryForm, Matrix2, common_rational_root, projective_points, substitution_table
from .fp_core import FieldContext

log = logging.getLogger(__name__)

SL2 = "SL2"
SLPM2 = "SLpm2"
TRIVIAL = "Trivial"
GL2 = "GL2"


@dataclass(frozen=True)
class EquivalenceMode:
    left: str = SLPM2
    right: str = GL2

    def __post_init__(self):
        if self.left not in (SL2, SLPM2) or self.right not in (TRIVIAL, GL2):
            raise InvalidParameter(f"unknown mode ({self.left}, {self.right})")

    @classmethod
    def from_name(cls, name: str) -> EquivalenceMode:
        try:
            return MODES[name]
        except KeyError:
            raise InvalidParameter(f"unknown mode {name!r}; expected one of {sorted(MODES)}") from None

    @property
    def name(self) -> str:
        for k, v in MODES.items():
            if v == self:
                return k
        return f"{self.left}x{self.right}"

    def allows_left(self, det: int, p: int) -> bool:
        return det == 1 or (self.left == SLPM2 and det == p - 1)


FULL = EquivalenceMode(SLPM2, GL2)
FIXED_PI1 = EquivalenceMode(SLPM2, TRIVIAL)
ORIENTED = EquivalenceMode(SL2, GL2)
MODES = {"full": FULL, "fixed-pi1": FIXED_PI1, "oriented": ORIENTED}


@dataclass(frozen=True)
class FormPair:
    q1: BinaryForm
    q2: BinaryForm

    def __post_init__(self):
        if self.q1.context != self.q2.context:
            raise ContextMismatch("components over different fields")
        if self.q1.degree != self.q2.degree:
            raise DegreeMismatch(f"component degrees {self.q1.degree} and {self.q2.degree} differ")

    @classmethod
    def of(cls, ctx: FieldContext, q1: Sequence, q2: Sequence) -> FormPair:
        return cls(BinaryForm.of(ctx, q1), BinaryForm.of(ctx, q2))

    @classmethod
    def from_list(cls, ctx: FieldContext, data) -> FormPair:
        if len(data) != 2:
            raise InvalidParameter("a pair is a two-element list of forms")
        return cls.of(ctx, data[0], data[1])

    @classmethod
    def standard(cls, ctx: FieldContext, w) -> FormPair:
        """The pair (a^2 + w b^2, 2ab)."""
        return cls.of(ctx, (1, 0, w), (0, 2, 0))

    @property
    def context(self) -> FieldContext:
        return self.q1.context

    @property
    def degree(self) -> int:
        return self.q1.degree

    def digits(self) -> tuple[int, ...]:
        return self.q1.coeffs + self.q2.coeffs

    def index(self) -> int:
        """Position in the lexicographic enumeration of all pairs."""
        p, out = self.context.p, 0
        for c in self.digits():
            out = out * p + c
        return out

    @classmethod
    def from_index(cls, ctx: FieldContext, degree: int, idx: int) -> FormPair:
        n = 2 * (degree + 1)
        digits = [0] * n
        for k in range(n - 1, -1, -1):
            idx, digits[k] = divmod(idx, ctx.p)
        return cls.of(ctx, digits[: degree + 1], digits[degree + 1 :])

    def to_list(self) -> list[list[int]]:
        return [self.q1.to_list(), self.q2.to_list()]

    def is_independent(self) -> bool:
        """True when Q1 and Q2 span a 2-dimensional space of forms."""
        p = self.context.p
        f, g = self.q1.coeffs, self.q2.coeffs
        return any(
            (f[i] * g[j] - f[j] * g[i]) % p
            for i in range(len(f))
            for j in range(i + 1, len(f))
        )

    def __str__(self):
        return f"({self.q1}, {self.q2})"


@dataclass(frozen=True)
class TransformWitness:
    """``apply(P) = S . (P . R)``: left matrix S (det ±1), right matrix R."""

    S: Matrix2
    R: Matrix2

    @classmethod
    def identity(cls, ctx: FieldContext) -> TransformWitness:
        return cls(Matrix2.identity(ctx), Matrix2.identity(ctx))

    def apply(self, pair: FormPair) -> FormPair:
        return left_act(self.S, right_act(pair, self.R))

    def then(self, other: TransformWitness) -> TransformWitness:
        """First self, then other."""
        return TransformWitness(other.S @ self.S, self.R @ other.R)

    def inverse(self) -> TransformWitness:
        return TransformWitness(self.S.inverse(), self.R.inverse())

    def to_dict(self) -> dict:
        return {"S": self.S.to_list(), "R": self.R.to_list()}


@dataclass(frozen=True)
class NormalForm:
    """Either NonRealizable (``w is None``) or StandardClass(w)."""

    w: Optional[int] = None

    @property
    def realizable(self) -> bool:
        return self.w is not None

    def representative(self, ctx: FieldContext) -> FormPair | None:
        return None if self.w is None else FormPair.standard(ctx, self.w)

    def __str__(self):
        return "NonRealizable" if self.w is None else f"StandardClass({self.w})"


NON_REALIZABLE = NormalForm(None)


# -- the two actions -------------------------------------------------------


def left_act(M: Matrix2, pair: FormPair, left: str = SLPM2) -> FormPair:
    ctx = pair.context
    if M.context != ctx:
        raise ContextMismatch("matrix and pair over different fields")
    if not EquivalenceMode(left, GL2).allows_left(M.det, ctx.p):
        raise InvalidLeftMatrix(f"det {M.det} not allowed for {left}")
    q1, q2 = pair.q1, pair.q2
    return FormPair(M.m11 * q1 + M.m12 * q2, M.m21 * q1 + M.m22 * q2)


def right_act(pair: FormPair, N: Matrix2) -> FormPair:
    return FormPair(pair.q1.substitute(N), pair.q2.substitute(N))


def is_realizable(pair: FormPair) -> bool:
    """Both forms independent and without a common rational projective root.

    Independence is what makes the coefficient restrictions hold for every
    pair in the left orbit (no combination of the forms may vanish); for
    degree 2 the whole predicate says the forms share no root even over the
    algebraic closure.
    """
    return pair.is_independent() and common_rational_root(pair.q1, pair.q2) is None


# -- canonical reduction for degree 2 ---------------------------------------


class _Reduction:
    """A pair together with the witness that produced it from the input."""

    def __init__(self, pair: FormPair):
        self.ctx = pair.context
        self.start = pair
        self.pair = pair
        self.S = Matrix2.identity(self.ctx)
        self.R = Matrix2.identity(self.ctx)

    def left(self, M: Matrix2, step: str):
        self.pair = left_act(M, self.pair)
        self.S = M @ self.S
        log.debug("left  %-28s %s -> %s", step, M.to_list(), self.pair)

    def right(self, N: Matrix2, step: str):
        self.pair = right_act(self.pair, N)
        self.R = self.R @ N
        log.debug("right %-28s %s -> %s", step, N.to_list(), self.pair)

    @property
    def witness(self) -> TransformWitness:
        return TransformWitness(self.S, self.R)

    def m(self, *entries) -> Matrix2:
        return Matrix2(self.ctx, *entries)

    def inv(self, x: int) -> int:
        return self.ctx._inv(x)


def _check_degree2(pair: FormPair):
    if pair.degree != 2:
        raise UnsupportedDegree(f"canonical forms exist only for degree 2, got {pair.degree}")
    if pair.context.p <= 3:
        raise UnsupportedPrime("canonical forms need p > 3")


def canonical_form(pair: FormPair) -> tuple[NormalForm, TransformWitness | None]:
    _check_degree2(pair)
    if not is_realizable(pair):
        return NON_REALIZABLE, None
    red = _Reduction(pair)
    p = red.ctx.p
    if red.pair.q1.is_zero:
        red.left(red.m(0, 1, 1, 0), "swap components")

    _diagonalize_first(red)
    x = red.pair.q1.coeffs[0]
    if red.pair.q2.coeffs[0]:
        red.left(red.m(1, 0, -red.pair.q2.coeffs[0] * red.inv(x), 1), "clear a^2 of Q2")

    e = red.pair.q1.coeffs[2]
    _, u, y = red.pair.q2.coeffs
    if y == 0:
        _hyperbolic_to_standard(red)
    elif e == 0:
        # Q1 = x a^2: shear b -> b - u/(2y) a keeps Q1 and diagonalizes Q2
        red.right(red.m(1, 0, -u * red.inv(2 * y), 1), "shear b")
        c = red.pair.q2.coeffs[0]
        red.left(red.m(1, 0, -c * red.inv(x), 1), "clear a^2 of Q2")
        _diagonal_to_standard(red)
    elif _split_pencil(red):
        _diagonal_to_standard(red)
    else:
        _factor_second(red)
        _hyperbolic_to_standard(red)

    w = red.pair.q1.coeffs[2]
    w0 = red.ctx.class_representative(w)
    if w0 != w:
        s = red.ctx.fourth_root(w0 * red.inv(w))
        R, S = fourth_power_witness(red.ctx, w, s)
        red.left(S, "fourth-power normalization")
        red.right(R.inverse(), "fourth-power normalization")

    target = FormPair.standard(red.ctx, w0)
    if red.pair != target or red.witness.apply(pair) != target:
        raise AssertionError(f"reduction of {pair} ended at {red.pair}, mod {p}")
    return NormalForm(w0), red.witness


def _diagonalize_first(red: _Reduction):
    """Right-act until Q1 = x a^2 + e b^2 with x != 0."""
    c0, c1, c2 = red.pair.q1.coeffs
    if c0 == 0:
        if c2:
            red.right(red.m(0, 1, 1, 0), "swap a, b")
        else:
            red.right(red.m(1, 0, 1, 1), "b -> a + b")
    c0, c1, _ = red.pair.q1.coeffs
    if c1:
        red.right(red.m(1, -c1 * red.inv(2 * c0), 0, 1), "complete the square")


def _hyperbolic_to_standard(red: _Reduction):
    """(x a^2 + e b^2, u ab) -> (a^2 + w b^2, 2ab)."""
    x = red.pair.q1.coeffs[0]
    u = red.pair.q2.coeffs[1]
    red.left(red.m(red.inv(x), 0, 0, x), "normalize Q1")
    red.right(red.m(1, 0, 0, 2 * red.inv(x * u)), "b -> 2b/(xu)")


def _diagonal_to_standard(red: _Reduction):
    """(x a^2, y b^2) -> (a^2 + 4(xy)^2 b^2, 2ab)."""
    x = red.pair.q1.coeffs[0]
    red.left(red.m(red.inv(x), 0, 0, x), "normalize Q1")
    w = red.pair.q2.coeffs[2]
    i2w = red.inv(2 * w)
    T = red.m(i2w * i2w, -i2w, w, 2 * w * w)
    red.right(red.m(i2w, -1, 1, 2 * w), "a -> a/(2w) - b, b -> a + 2wb")
    red.left(T.inverse(), "recombine")


def _pencil_discriminant(pair: FormPair) -> BinaryForm:
    """disc(s Q1 + t Q2) as a binary quadratic form in (s, t)."""
    p0, p1, p2 = pair.q1.coeffs
    q0, q1, q2 = pair.q2.coeffs
    return BinaryForm(
        pair.context,
        (p1 * p1 - 4 * p0 * p2, 2 * p1 * q1 - 4 * p0 * q2 - 4 * q0 * p2, q1 * q1 - 4 * q0 * q2),
    )


def _square_root_form(f: BinaryForm) -> tuple[int, tuple[int, int]]:
    """Write a degenerate nonzero quadratic form as k * l^2."""
    ctx = f.context
    c0, c1, c2 = f.coeffs
    if c0:
        return c0, (1, c1 * ctx._inv(2 * c0) % ctx.p)
    return c2, (0, 1)


def _split_pencil(red: _Reduction) -> bool:
    """If the pencil holds two degenerate members, move them to (x a^2, y b^2)."""
    roots = _pencil_discriminant(red.pair).rational_roots()
    if len(roots) != 2:
        return False
    (s1, t1), (s2, t2) = roots
    delta = (s1 * t2 - t1 * s2) % red.ctx.p
    k = red.inv(delta)
    red.left(red.m(s1, t1, s2 * k, t2 * k), "degenerate members")
    _, l1 = _square_root_form(red.pair.q1)
    _, l2 = _square_root_form(red.pair.q2)
    red.right(red.m(*l1, *l2).inverse(), "square roots to a, b")
    return True


def _factor_second(red: _Reduction):
    """Q2 = b (u a + y b) with u != 0: send its two roots to a = 0, b = 0."""
    _, u, y = red.pair.q2.coeffs
    if u == 0:
        raise AssertionError("degenerate second form in a non-split pencil")
    red.right(red.m(0, 1, u, y).inverse(), "factors of Q2 to a, b")
    f1 = red.pair.q1.coeffs[1]
    red.left(red.m(1, -f1, 0, 1), "clear ab of Q1")


def fourth_power_witness(ctx: FieldContext, delta, w) -> tuple[Matrix2, Matrix2]:
    """(R, S) with (a^2 + delta w^4 b^2, 2ab) . R == S . (a^2 + delta b^2, 2ab).

    det R = -1/w and det S = 1; built from a point (r1, r2) on the conic
    delta r1^2 - r2^2 = 1/w^3.
    """
    r1, r2 = (int(v) for v in ctx.solve_conic(delta, w))
    d, w = ctx.residue(delta), ctx.residue(w)
    w2 = w * w
    w4 = w2 * w2
    R = Matrix2(ctx, w2 * r2, d * w2 * r1, r1, r2)
    S = Matrix2(
        ctx,
        d * w4 * r1 * r1 + w4 * r2 * r2,
        2 * d * w4 * r1 * r2,
        2 * w2 * r1 * r2,
        d * w2 * r1 * r1 + w2 * r2 * r2,
    )
    return R, S


def fourth_power_invariant(pair: FormPair) -> int:
    nf, _ = canonical_form(pair)
    if not nf.realizable:
        raise NonRealizable(f"{pair} violates the transgression restrictions")
    return pair.context.fourth_power_class(nf.w)


# -- deciding equivalence ---------------------------------------------------


def decide_equivalent(
    p1: FormPair, p2: FormPair, mode: EquivalenceMode = FULL, max_prime: int = 7
) -> TransformWitness | None:
    """A witness carrying p1 to p2, or None when they are inequivalent.

    Realizable degree-2 pairs in the full mode go through canonical forms;
    everything else is settled by a breadth-first orbit search, allowed up
    to ``max_prime``.
    """
    if p1.context != p2.context:
        raise ContextMismatch("pairs over different fields")
    if p1.degree != p2.degree:
        raise DegreeMismatch(f"degrees {p1.degree} and {p2.degree} differ")
    if p1 == p2:
        return TransformWitness.identity(p1.context)
    r1, r2 = is_realizable(p1), is_realizable(p2)
    if r1 != r2:
        return None
    if mode == FULL and p1.degree == 2 and p1.context.p > 3 and r1:
        nf1, w1 = canonical_form(p1)
        nf2, w2 = canonical_form(p2)
        if nf1 != nf2:
            return None
        return w1.then(w2.inverse())
    return orbit_search(p1, p2, mode, max_prime=max_prime)


def generators(ctx: FieldContext, mode: EquivalenceMode) -> tuple[list[Matrix2], list[Matrix2]]:
    """Left and right generating sets used by orbit search and enumeration."""
    up, low, swap = (Matrix2(ctx, 1, 1, 0, 1), Matrix2(ctx, 1, 0, 1, 1), Matrix2(ctx, 0, 1, 1, 0))
    left = [up, low] + ([swap] if mode.left == SLPM2 else [])
    right = []
    if mode.right == GL2:
        right = [up, low, swap, Matrix2.diag(ctx, ctx.primitive_root, 1)]
    return left, right


def _left_raw(m: tuple, digits: tuple, n: int, p: int) -> tuple:
    m11, m12, m21, m22 = m
    f, g = digits[:n], digits[n:]
    return tuple((m11 * x + m12 * y) % p for x, y in zip(f, g)) + tuple(
        (m21 * x + m22 * y) % p for x, y in zip(f, g)
    )


def _right_raw(table, digits: tuple, n: int, p: int) -> tuple:
    out = []
    for form in (digits[:n], digits[n:]):
        acc = [0] * n
        for i, c in enumerate(form):
            if c:
                row = table[i]
                for j in range(n):
                    acc[j] += c * row[j]
        out.extend(x % p for x in acc)
    return tuple(out)


def _mul_raw(a: tuple, b: tuple, p: int) -> tuple:
    return (
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    )


def iter_orbit(pair: FormPair, mode: EquivalenceMode = FULL, max_prime: int = 7) -> Iterator[tuple[tuple, tuple, tuple]]:
    """Breadth-first walk over the orbit: yields (digits, S, R) per new pair."""
    ctx = pair.context
    p = ctx.p
    if p > max_prime:
        raise ResourceLimit(f"orbit search limited to p <= {max_prime}")
    n = pair.degree + 1
    left, right = generators(ctx, mode)
    left_e = [g.entries() for g in left]
    right_e = [(g.entries(), substitution_table(p, pair.degree, g.entries())) for g in right]
    ident = (1, 0, 0, 1)
    start = pair.digits()
    seen = {start}
    queue = deque([(start, ident, ident)])
    while queue:
        node = queue.popleft()
        yield node
        d, S, R = node
        for g in left_e:
            nd = _left_raw(g, d, n, p)
            if nd not in seen:
                seen.add(nd)
                queue.append((nd, _mul_raw(g, S, p), R))
        for g, table in right_e:
            nd = _right_raw(table, d, n, p)
            if nd not in seen:
                seen.add(nd)
                queue.append((nd, S, _mul_raw(R, g, p)))


def orbit_search(
    p1: FormPair, p2: FormPair, mode: EquivalenceMode = FULL, max_prime: int = 7
) -> TransformWitness | None:
    target = p2.digits()
    ctx = p1.context
    for d, S, R in iter_orbit(p1, mode, max_prime):
        if d == target:
            return TransformWitness(Matrix2(ctx, *S), Matrix2(ctx, *R))
    return None

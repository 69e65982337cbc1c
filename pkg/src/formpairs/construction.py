"""Linear (Z/p)^2 actions on S^(2n-1) x S^(2n-1) given by rotation numbers.

Generator R rotates coordinate z_i by r_i on the first sphere and z'_i by r'_i
on the second; Q likewise.  The element s R + t Q fixes a point exactly when
some coordinate of each sphere has rotation number zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .equivalence import FormPair, canonical_form, fourth_power_invariant
from .errors import HypothesisViolation, InvalidParameter, NotFree
from .forms import product_of_linear_forms
from .fp_core import FieldContext


@dataclass(frozen=True)
class RotationData:
    context: FieldContext
    n: int
    first: tuple[int, ...]  # r_1..r_n, r'_1..r'_n
    second: tuple[int, ...]  # q_1..q_n, q'_1..q'_n

    def __post_init__(self):
        ctx = self.context
        if self.n < 1:
            raise InvalidParameter("n must be positive")
        if len(self.first) != 2 * self.n or len(self.second) != 2 * self.n:
            raise InvalidParameter(f"need 2n = {2 * self.n} rotation numbers per generator")
        object.__setattr__(self, "first", tuple(ctx.residue(x) for x in self.first))
        object.__setattr__(self, "second", tuple(ctx.residue(x) for x in self.second))
        R, Q, p = self.first, self.second, ctx.p
        if not any((R[i] * Q[j] - R[j] * Q[i]) % p for i in range(len(R)) for j in range(i + 1, len(R))):
            raise InvalidParameter("R and Q do not generate a copy of (Z/p)^2")

    @classmethod
    def from_dict(cls, ctx: FieldContext, data: dict) -> RotationData:
        try:
            return cls(ctx, int(data["n"]), tuple(data["R"]), tuple(data["Q"]))
        except KeyError as exc:
            raise InvalidParameter(f"rotation data missing key {exc}") from None

    def to_dict(self) -> dict:
        return {"n": self.n, "R": list(self.first), "Q": list(self.second)}

    def sphere_rotations(self, s: int, t: int) -> tuple[list[int], list[int]]:
        """Rotation numbers of s R + t Q on the two sphere factors."""
        p, n = self.context.p, self.n
        rot = [(s * r + t * q) % p for r, q in zip(self.first, self.second)]
        return rot[:n], rot[n:]


def k_invariant(rot: RotationData) -> FormPair:
    ctx, n = rot.context, rot.n
    if ctx.p <= n:
        raise HypothesisViolation(f"the product formula needs p > n (p = {ctx.p}, n = {n})")
    R, Q = rot.first, rot.second
    return FormPair(
        product_of_linear_forms(ctx, list(zip(R[:n], Q[:n]))),
        product_of_linear_forms(ctx, list(zip(R[n:], Q[n:]))),
    )


def is_free(rot: RotationData) -> bool:
    p = rot.context.p
    for s in range(p):
        for t in range(p):
            if s == 0 and t == 0:
                continue
            first, second = rot.sphere_rotations(s, t)
            if 0 in first and 0 in second:
                return False
    return True


def standard_example(ctx: FieldContext, w) -> RotationData:
    """R = (1, 1, 2, 0), Q = (1, w, 0, 1); k-invariant ((a+b)(a+wb), 2ab)."""
    return RotationData(ctx, 2, (1, 1, 2, 0), (1, ctx.residue(w), 0, 1))


def lens_product(ctx: FieldContext, x, y) -> RotationData:
    """L(p; 1, x) x L(p; 1, y) as a quotient of S^3 x S^3."""
    x, y = ctx.residue(x), ctx.residue(y)
    if x == 0 or y == 0:
        raise NotFree("lens space rotation numbers must be nonzero")
    return RotationData(ctx, 2, (1, x, 0, 0), (0, 0, 1, y))


def lens_product_class(ctx: FieldContext, x, y) -> int:
    """Fourth-power class of the lens product, read off from legendre(2y/x)."""
    x, y = ctx.residue(x), ctx.residue(y)
    if x == 0 or y == 0:
        raise NotFree("lens space rotation numbers must be nonzero")
    if ctx.p <= 3:
        raise InvalidParameter("classification needs p > 3")
    # the k-invariant is equivalent to (a^2 + (2y/x)^2 b^2, 2ab); a square of a
    # square is a fourth power, a square of a nonresidue is in the class of z^2
    r = 2 * y * ctx._inv(x)
    if ctx.p % 4 == 3 or ctx.legendre(r) == 1:
        return ctx.fourth_power_class(1)
    z = int(ctx.find_nonresidue())
    return ctx.fourth_power_class(z * z)


def lens_product_invariant(ctx: FieldContext, x, y) -> int:
    """Same class computed through the k-invariant and canonical forms."""
    return fourth_power_invariant(k_invariant(lens_product(ctx, x, y)))


def realized_classes(ctx: FieldContext) -> dict[int, int]:
    """Map w -> canonical w0 for every free standard example (w != 0)."""
    out = {}
    for w in range(1, ctx.p):
        nf, _ = canonical_form(k_invariant(standard_example(ctx, w)))
        out[w] = nf.w
    return out


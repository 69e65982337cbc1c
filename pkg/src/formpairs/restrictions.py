"""Restrictions on the transgression pair (d(alpha), d(gamma)) for odd n,
and the coefficient-level obstruction for Qd(p)."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .equivalence import FormPair
from .errors import InvalidParameter, ResourceLimit
from .forms import BinaryForm, format_monomial_terms, product_of_linear_forms, projective_points
from .fp_core import FieldContext

DEFAULT_MAX_ZETA_DEGREE = 60


@dataclass(frozen=True)
class TransgressionPair:
    pair: FormPair
    n: int

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise InvalidParameter(f"n must be odd and at least 3, got {self.n}")
        if 2 * self.pair.degree != self.n + 1:
            raise InvalidParameter(f"forms of degree {self.pair.degree} do not match n = {self.n}")

    @classmethod
    def of(cls, pair: FormPair) -> TransgressionPair:
        return cls(pair, 2 * pair.degree - 1)


def satisfies_top_bottom(tp: TransgressionPair) -> bool:
    """Neither both a^d coefficients nor both b^d coefficients vanish."""
    f, g = tp.pair.q1.coeffs, tp.pair.q2.coeffs
    return (f[0], g[0]) != (0, 0) and (f[-1], g[-1]) != (0, 0)


def satisfies_all_twists(tp: TransgressionPair, reading: str = "twisted") -> bool:
    """The top/bottom condition after every automorphism of (Z/p)^2.

    ``reading="twisted"``: neither form is zero and they share no rational
    projective root.  ``reading="literal"``: for no nonzero linear form l are
    both forms scalar multiples of l^d, which is strictly weaker.
    """
    q1, q2 = tp.pair.q1, tp.pair.q2
    if reading == "twisted":
        if q1.is_zero or q2.is_zero:
            return False
        return not any(q1._eval(v) == 0 and q2._eval(v) == 0 for v in projective_points(q1.context.p))
    if reading == "literal":
        ctx, d = q1.context, q1.degree
        for lam in projective_points(ctx.p):
            power = product_of_linear_forms(ctx, [lam] * d)
            if _is_multiple(q1, power) and _is_multiple(q2, power):
                return False
        return True
    raise InvalidParameter(f"unknown reading {reading!r}")


def _is_multiple(f: BinaryForm, g: BinaryForm) -> bool:
    """f in F_p * g, for nonzero g."""
    p = f.context.p
    return not any((f.coeffs[i] * g.coeffs[j] - f.coeffs[j] * g.coeffs[i]) % p
                   for i in range(len(f.coeffs)) for j in range(len(f.coeffs)))


@dataclass(frozen=True)
class ZetaForm:
    """zeta^k for zeta = x y^p - y x^p, as a form in x, y of degree k(p+1)."""

    k: int
    form: BinaryForm

    @property
    def degree(self) -> int:
        return self.form.degree

    def coefficient(self, x_exp: int, y_exp: int) -> int:
        if x_exp + y_exp != self.degree:
            return 0
        return self.form.coeffs[y_exp]

    def pure_power_coefficients(self) -> tuple[int, int]:
        return self.form.coeffs[0], self.form.coeffs[-1]

    def divisible_by_xy(self) -> bool:
        return self.pure_power_coefficients() == (0, 0)

    def terms(self) -> dict[str, int]:
        m = self.degree
        return {f"x^{m - i} y^{i}": c for i, c in enumerate(self.form.coeffs) if c}

    def __str__(self):
        return format_monomial_terms(self.form.coeffs, names=("x", "y"))


def zeta_power(ctx: FieldContext, k: int, max_degree: int = DEFAULT_MAX_ZETA_DEGREE) -> ZetaForm:
    p = ctx.p
    if k < 1:
        raise InvalidParameter("k must be positive")
    m = k * (p + 1)
    if m > max_degree:
        raise ResourceLimit(f"zeta^{k} has degree {m} > {max_degree}")
    coeffs = [0] * (m + 1)
    # (x y^p)^j (-y x^p)^(k-j) = (-1)^(k-j) x^(j + p(k-j)) y^(pj + k-j)
    for j in range(k + 1):
        y_exp = p * j + (k - j)
        coeffs[y_exp] = (coeffs[y_exp] + (-1) ** (k - j) * comb(k, j)) % p
    return ZetaForm(k, BinaryForm(ctx, tuple(coeffs)))


@dataclass(frozen=True)
class Verdict:
    status: str  # "obstructed" or "not_applicable"
    k: int | None
    evidence: dict = field(default_factory=dict)

    @property
    def obstructed(self) -> bool:
        return self.status == "obstructed"

    def to_dict(self) -> dict:
        return {"status": self.status, "k": self.k, "evidence": self.evidence}


def qd_obstruction(ctx: FieldContext, n: int, max_degree: int = DEFAULT_MAX_ZETA_DEGREE) -> Verdict:
    """Check that the restricted transgression ideal violates top/bottom.

    Applies when 2(p+1) divides n+1; the ideal in degree (n+1)/2 is then
    spanned by zeta^k with k = (n+1)/(2(p+1)).
    """
    p = ctx.p
    if n < 3 or n % 2 == 0:
        raise InvalidParameter(f"n must be odd and at least 3, got {n}")
    if (n + 1) % (2 * (p + 1)):
        return Verdict("not_applicable", None, {"reason": f"2(p+1) = {2 * (p + 1)} does not divide n+1 = {n + 1}"})
    k = (n + 1) // (2 * (p + 1))
    z = zeta_power(ctx, k, max_degree)
    top, bottom = z.pure_power_coefficients()
    tp = TransgressionPair(FormPair(z.form, z.form), n)
    passes = satisfies_top_bottom(tp)
    evidence = {
        "generator": str(z),
        "degree": z.degree,
        "coefficient_x_pure": top,
        "coefficient_y_pure": bottom,
        "satisfies_top_bottom": passes,
    }
    return Verdict("obstructed" if not passes else "not_applicable", k, evidence)

"""Exhaustive machinery over the whole pair space: enumeration, orbit
counting by union-find, and the brute-force equivalence oracle.

A pair of degree-d forms is identified with its index in the lexicographic
order of its ``2(d+1)`` coefficients (see ``FormPair.index``).  Every group
element acts on that coefficient vector by a ``2(d+1)``-square matrix over F_p,
so the kernels only ever see integer matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numba
import numpy as np

from .equivalence import (
    FULL,
    GL2,
    SL2,
    SLPM2,
    EquivalenceMode,
    FormPair,
    TransformWitness,
    generators,
)
from .errors import DegreeMismatch, ResourceLimit
from .forms import Matrix2, substitution_table
from .fp_core import FieldContext

DEFAULT_MAX_PRIME = 13
ORACLE_MAX_PRIME = 7


def _pair_space_size(p: int, degree: int) -> int:
    return p ** (2 * (degree + 1))


def _check_bound(p: int, max_prime: int):
    if p > max_prime:
        raise ResourceLimit(f"p = {p} exceeds the enumeration bound {max_prime}")


@numba.njit(cache=True)
def _decode(idx, p, digits):
    for k in range(digits.shape[0] - 1, -1, -1):
        digits[k] = idx % p
        idx //= p


@numba.njit(cache=True)
def _realizable_kernel(p, degree, lo, hi, out):
    n = degree + 1
    digits = np.empty(2 * n, np.int64)
    for idx in range(lo, hi):
        _decode(idx, p, digits)
        indep = False
        for i in range(n):
            for j in range(i + 1, n):
                if (digits[i] * digits[n + j] - digits[j] * digits[n + i]) % p != 0:
                    indep = True
                    break
            if indep:
                break
        if not indep:
            out[idx - lo] = False
            continue
        # the point (0 : 1) is a root iff the b^d coefficient vanishes
        common = digits[n - 1] == 0 and digits[2 * n - 1] == 0
        t = 0
        while not common and t < p:
            f = 0
            g = 0
            for i in range(n - 1, -1, -1):
                f = (f * t + digits[i]) % p
                g = (g * t + digits[n + i]) % p
            common = f == 0 and g == 0
            t += 1
        out[idx - lo] = not common


def realizable_mask(ctx: FieldContext, degree: int = 2) -> np.ndarray:
    """Boolean array over all pair indices, true where ``is_realizable``."""
    size = _pair_space_size(ctx.p, degree)
    out = np.empty(size, dtype=np.bool_)
    _realizable_kernel(ctx.p, degree, 0, size, out)
    return out


def enumerate_realizable_pairs(
    ctx: FieldContext, degree: int = 2, max_prime: int = DEFAULT_MAX_PRIME
) -> Iterator[FormPair]:
    _check_bound(ctx.p, max_prime)
    for idx in np.flatnonzero(realizable_mask(ctx, degree)):
        yield FormPair.from_index(ctx, degree, int(idx))


def action_matrix(ctx: FieldContext, degree: int, S: Matrix2 | None = None, R: Matrix2 | None = None) -> np.ndarray:
    """Matrix of P -> S.(P.R) on the coefficient vector (Q1 coeffs, Q2 coeffs)."""
    n = degree + 1
    if R is None:
        A = np.eye(n, dtype=np.int64)
    else:
        A = np.array(substitution_table(ctx.p, degree, R.entries()), dtype=np.int64)
    s11, s12, s21, s22 = S.entries() if S is not None else (1, 0, 0, 1)
    block = A.T
    out = np.zeros((2 * n, 2 * n), dtype=np.int64)
    out[:n, :n] = s11 * block
    out[:n, n:] = s12 * block
    out[n:, :n] = s21 * block
    out[n:, n:] = s22 * block
    return out % ctx.p


@numba.njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@numba.njit(cache=True)
def _union_kernel(p, mask, gens, parent):
    dim = gens.shape[1]
    digits = np.empty(dim, np.int64)
    for idx in range(mask.shape[0]):
        if not mask[idx]:
            continue
        _decode(idx, p, digits)
        for g in range(gens.shape[0]):
            j = 0
            for r in range(dim):
                acc = 0
                for c in range(dim):
                    acc += gens[g, r, c] * digits[c]
                j = j * p + acc % p
            ra = _find(parent, idx)
            rb = _find(parent, j)
            if ra < rb:
                parent[rb] = ra
            elif rb < ra:
                parent[ra] = rb
    for idx in range(mask.shape[0]):
        if mask[idx]:
            parent[idx] = _find(parent, idx)


@dataclass(frozen=True)
class OrbitSummary:
    context: FieldContext
    mode: EquivalenceMode
    degree: int
    realizable_count: int
    representatives: tuple[int, ...]  # smallest pair index in each orbit, increasing
    sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.representatives)

    def representative_pairs(self) -> list[FormPair]:
        return [FormPair.from_index(self.context, self.degree, i) for i in self.representatives]


@lru_cache(maxsize=16)
def orbit_summary(
    ctx: FieldContext,
    mode: EquivalenceMode = FULL,
    degree: int = 2,
    max_prime: int = DEFAULT_MAX_PRIME,
) -> OrbitSummary:
    """Orbits of realizable pairs, by union-find over the generator graph."""
    _check_bound(ctx.p, max_prime)
    size = _pair_space_size(ctx.p, degree)
    if size >= 2**31:
        raise ResourceLimit("pair space does not fit 32-bit indices")
    mask = realizable_mask(ctx, degree)
    left, right = generators(ctx, mode)
    gens = np.stack(
        [action_matrix(ctx, degree, S=g) for g in left] + [action_matrix(ctx, degree, R=g) for g in right]
    )
    parent = np.arange(size, dtype=np.int32)
    _union_kernel(ctx.p, mask, gens, parent)
    roots = parent[mask]
    del parent
    reps, sizes = np.unique(roots, return_counts=True)
    return OrbitSummary(
        ctx, mode, degree, int(mask.sum()), tuple(int(r) for r in reps), tuple(int(s) for s in sizes)
    )


def orbit_count(ctx: FieldContext, mode: EquivalenceMode = FULL, degree: int = 2, max_prime: int = DEFAULT_MAX_PRIME) -> int:
    return orbit_summary(ctx, mode, degree, max_prime).count


def orbit_representatives(
    ctx: FieldContext, mode: EquivalenceMode = FULL, degree: int = 2, max_prime: int = DEFAULT_MAX_PRIME
) -> list[FormPair]:
    return orbit_summary(ctx, mode, degree, max_prime).representative_pairs()


# -- brute-force oracle ---------------------------------------------------


@lru_cache(maxsize=None)
def group_elements(p: int, kind: str) -> np.ndarray:
    """All matrices of SL2, SLpm2, GL2 or Trivial as an (n, 2, 2) array."""
    if kind not in (SL2, SLPM2, GL2, "Trivial"):
        raise ValueError(kind)
    if kind == "Trivial":
        return np.eye(2, dtype=np.int64)[None]
    e = np.indices((p, p, p, p)).reshape(4, -1).T.astype(np.int64)
    det = (e[:, 0] * e[:, 3] - e[:, 1] * e[:, 2]) % p
    keep = {SL2: det == 1, SLPM2: (det == 1) | (det == p - 1), GL2: det != 0}[kind]
    return e[keep].reshape(-1, 2, 2)


@lru_cache(maxsize=None)
def _substitution_tensor(p: int, degree: int, kind: str) -> np.ndarray:
    mats = group_elements(p, kind)
    return np.array(
        [substitution_table(p, degree, tuple(int(x) for x in m.ravel())) for m in mats], dtype=np.int64
    )


def _encode(arr: np.ndarray, p: int) -> np.ndarray:
    flat = arr.reshape(arr.shape[0], -1)
    out = np.zeros(flat.shape[0], dtype=np.int64)
    for k in range(flat.shape[1]):
        out = out * p + flat[:, k]
    return out


def brute_force_witness(
    p1: FormPair, p2: FormPair, mode: EquivalenceMode = FULL, max_prime: int = ORACLE_MAX_PRIME
) -> TransformWitness | None:
    """Scan every (S, R) of the mode's groups for S.(p1.R) == p2.

    The right orbit of p1 and the left orbit of p2 are listed in full and
    intersected: p1.R == S'.p2 exactly when (S'^-1, R) carries p1 to p2.
    """
    ctx = p1.context
    p = ctx.p
    if p1.degree != p2.degree:
        raise DegreeMismatch("pairs of different degree")
    _check_bound(p, max_prime)
    P1 = np.array(p1.to_list(), dtype=np.int64)
    P2 = np.array(p2.to_list(), dtype=np.int64)
    rights = group_elements(p, mode.right)
    tensors = _substitution_tensor(p, p1.degree, mode.right)
    lefts = group_elements(p, mode.left)
    right_orbit = _encode(np.einsum("ij,rjk->rik", P1, tensors) % p, p)
    left_orbit = _encode(np.einsum("sij,jk->sik", lefts, P2) % p, p)
    common, ir, il = np.intersect1d(right_orbit, left_orbit, assume_unique=False, return_indices=True)
    if common.size == 0:
        return None
    R = Matrix2(ctx, *(int(x) for x in rights[ir[0]].ravel()))
    S = Matrix2(ctx, *(int(x) for x in lefts[il[0]].ravel())).inverse()
    return TransformWitness(S, R)


def brute_force_equivalent(
    p1: FormPair, p2: FormPair, mode: EquivalenceMode = FULL, max_prime: int = ORACLE_MAX_PRIME
) -> bool:
    return brute_force_witness(p1, p2, mode, max_prime) is not None

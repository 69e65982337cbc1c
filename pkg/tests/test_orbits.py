import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from formpairs.equivalence import FIXED_PI1, FULL, ORIENTED, FormPair, TransformWitness, is_realizable
from formpairs.errors import DegreeMismatch, ResourceLimit
from formpairs.fp_core import FieldContext
from formpairs.orbits import (
    action_matrix,
    brute_force_equivalent,
    brute_force_witness,
    enumerate_realizable_pairs,
    group_elements,
    orbit_count,
    orbit_representatives,
    orbit_summary,
    realizable_mask,
)

from conftest import contexts, invertible_matrices, pairs

F5, F7 = FieldContext(5), FieldContext(7)


def test_mask_matches_predicate_exhaustively():
    mask = realizable_mask(F5)
    for idx in range(mask.size):
        assert mask[idx] == is_realizable(FormPair.from_index(F5, 2, idx))
    assert int(mask.sum()) == 12000


def test_enumeration_order_and_bound():
    listed = list(enumerate_realizable_pairs(F5))
    assert len(listed) == 12000
    assert [p.index() for p in listed] == sorted(p.index() for p in listed)
    with pytest.raises(ResourceLimit):
        next(enumerate_realizable_pairs(FieldContext(17)))


def test_index_roundtrip():
    for idx in (0, 1, 4, 5, 12345, 5**6 - 1):
        assert FormPair.from_index(F5, 2, idx).index() == idx


@given(st.data())
def test_action_matrix_matches_witness(data):
    ctx = data.draw(contexts)
    pair = data.draw(pairs(ctx))
    S = data.draw(invertible_matrices(ctx, det=(1, ctx.p - 1)))
    R = data.draw(invertible_matrices(ctx))
    vec = np.array(pair.digits(), dtype=np.int64)
    image = action_matrix(ctx, 2, S, R) @ vec % ctx.p
    assert tuple(int(x) for x in image) == TransformWitness(S, R).apply(pair).digits()


@pytest.mark.parametrize(
    "p, mode, count, sizes",
    [
        (5, FULL, 4, {2400, 3600}),
        (7, FULL, 2, {42336, 56448}),
        (5, ORIENTED, 4, {2400, 3600}),
        (7, ORIENTED, 2, {42336, 56448}),
        # computed, not asserted by the theory: free left action of SL±2
        (5, FIXED_PI1, 50, {240}),
        (7, FIXED_PI1, 147, {672}),
    ],
)
def test_orbit_counts(p, mode, count, sizes):
    summary = orbit_summary(FieldContext(p), mode)
    assert summary.count == count
    assert set(summary.sizes) == sizes
    assert sum(summary.sizes) == summary.realizable_count


def test_representatives_are_orbit_minima():
    reps = orbit_representatives(F5)
    assert [r.index() for r in reps] == sorted(r.index() for r in reps)
    assert reps[0] == FormPair.of(F5, (0, 0, 1), (1, 0, 0))
    assert orbit_count(F5) == len(reps)


def test_orbit_bound():
    with pytest.raises(ResourceLimit):
        orbit_summary(FieldContext(17))


def test_group_orders():
    p = 5
    assert len(group_elements(p, "GL2")) == (p * p - 1) * (p * p - p)
    assert len(group_elements(p, "SL2")) == p * (p * p - 1)
    assert len(group_elements(p, "SLpm2")) == 2 * p * (p * p - 1)


class TestBruteForce:
    def test_examples(self):
        assert not brute_force_equivalent(FormPair.standard(F5, 1), FormPair.standard(F5, 2))
        pair = FormPair.of(F5, (1, 0, 3), (0, 1, 1))
        assert brute_force_equivalent(pair, pair)
        assert brute_force_equivalent(FormPair.of(F5, (1, 0, 0), (0, 0, 1)), FormPair.standard(F5, 4))

    def test_limits(self):
        with pytest.raises(ResourceLimit):
            brute_force_witness(FormPair.standard(FieldContext(11), 1), FormPair.standard(FieldContext(11), 1))
        with pytest.raises(DegreeMismatch):
            brute_force_witness(FormPair.standard(F5, 1), FormPair.of(F5, (1, 0), (0, 1)))

    @settings(max_examples=50)
    @given(st.data())
    def test_witness_sound(self, data):
        ctx = data.draw(st.sampled_from([F5, F7]))
        mode = data.draw(st.sampled_from([FULL, FIXED_PI1, ORIENTED]))
        p1, p2 = data.draw(pairs(ctx)), data.draw(pairs(ctx))
        w = brute_force_witness(p1, p2, mode)
        if w is not None:
            assert w.apply(p1) == p2
            assert mode.allows_left(w.S.det, ctx.p)

    def test_agrees_with_union_find_on_p5(self):
        summary = orbit_summary(F5)
        reps = summary.representative_pairs()
        for i, a in enumerate(reps):
            for j, b in enumerate(reps):
                assert brute_force_equivalent(a, b) == (i == j)

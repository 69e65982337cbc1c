import pytest
from hypothesis import given, settings, strategies as st

from formpairs.construction import (
    RotationData,
    is_free,
    k_invariant,
    lens_product,
    lens_product_class,
    lens_product_invariant,
    realized_classes,
    standard_example,
)
from formpairs.equivalence import FormPair, canonical_form
from formpairs.errors import HypothesisViolation, InvalidParameter, NotFree
from formpairs.fp_core import FieldContext
from formpairs.orbits import brute_force_equivalent
from formpairs.restrictions import TransgressionPair, satisfies_all_twists

F5, F7 = FieldContext(5), FieldContext(7)


@st.composite
def rotations(draw, ctx, n):
    R = [draw(st.integers(0, ctx.p - 1)) for _ in range(2 * n)]
    Q = [draw(st.integers(0, ctx.p - 1)) for _ in range(2 * n)]
    try:
        return RotationData(ctx, n, tuple(R), tuple(Q))
    except InvalidParameter:
        # dependent generators: force the first two coordinates apart
        R[0], Q[0], Q[1] = 1, 0, 1
        return RotationData(ctx, n, tuple(R), tuple(Q))


class TestKInvariant:
    def test_standard_example(self):
        for w in range(5):
            pair = k_invariant(standard_example(F5, w))
            assert pair == FormPair.of(F5, (1, 1 + w, w), (0, 2, 0))

    def test_lens_product(self):
        assert k_invariant(lens_product(F7, 3, 5)) == FormPair.of(F7, (3, 0, 0), (0, 0, 5))
        assert k_invariant(lens_product(F7, 1, 1)) == FormPair.of(F7, (1, 0, 0), (0, 0, 1))

    def test_all_ones(self):
        pair = k_invariant(RotationData(F7, 3, (1,) * 6, (1, 1, 1, 1, 1, 2)))
        assert pair.q1.coeffs == (1, 3, 3, 1)

    def test_needs_large_prime(self):
        with pytest.raises(HypothesisViolation):
            k_invariant(RotationData(F5, 5, (1,) * 10, (0,) * 9 + (1,)))

    def test_serialization(self):
        rot = RotationData.from_dict(F5, {"n": 2, "R": [1, 1, 2, 0], "Q": [1, 6, 0, 1]})
        assert rot.to_dict() == {"n": 2, "R": [1, 1, 2, 0], "Q": [1, 1, 0, 1]}
        with pytest.raises(InvalidParameter):
            RotationData.from_dict(F5, {"n": 2, "R": [1, 1, 2, 0]})
        with pytest.raises(InvalidParameter):
            RotationData(F5, 2, (1, 1, 1), (0, 1, 0, 1))
        with pytest.raises(InvalidParameter):
            RotationData(F5, 2, (1, 2, 3, 4), (2, 4, 1, 3))


class TestFreeness:
    def test_examples(self):
        assert not is_free(standard_example(F5, 0))
        assert is_free(standard_example(F5, 1))
        for x in range(1, 7):
            for y in range(1, 7):
                assert is_free(lens_product(F7, x, y))

    def test_lens_rejects_zero(self):
        with pytest.raises(NotFree):
            lens_product(F5, 0, 1)

    @settings(max_examples=200)
    @given(st.data())
    def test_free_iff_twisted_restrictions(self, data):
        ctx = data.draw(st.sampled_from([F5, F7, FieldContext(11)]))
        n = data.draw(st.integers(2, 4))
        rot = data.draw(rotations(ctx, n))
        tp = TransgressionPair.of(k_invariant(rot))
        assert is_free(rot) == satisfies_all_twists(tp)


class TestClasses:
    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_realized_classes_cover_all(self, p):
        ctx = FieldContext(p)
        got = realized_classes(ctx)
        assert set(got.values()) == {int(r) for r in ctx.class_representatives()}

    @pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
    def test_lens_closed_form_matches_canonical(self, p):
        ctx = FieldContext(p)
        for x in range(1, p):
            for y in range(1, p):
                assert lens_product_class(ctx, x, y) == lens_product_invariant(ctx, x, y)

    def test_p5_brute_force(self):
        a = k_invariant(lens_product(F5, 1, 1))
        b = k_invariant(lens_product(F5, 1, 2))
        assert F5.legendre(2) != F5.legendre(4)
        assert lens_product_class(F5, 1, 1) != lens_product_class(F5, 1, 2)
        assert not brute_force_equivalent(a, b)

    @pytest.mark.parametrize("p", [5, 7, 13])
    def test_diagonal_lens_products_agree(self, p):
        ctx = FieldContext(p)
        assert len({lens_product_class(ctx, r, r) for r in range(1, p)}) == 1

    def test_canonical_class_of_standard_example(self):
        nf, w = canonical_form(k_invariant(standard_example(F5, 1)))
        assert nf.w in (1, 2, 3, 4)
        assert w.apply(k_invariant(standard_example(F5, 1))) == nf.representative(F5)

"""Continuous characters, trianguline parameter classification, and the
filtered Frobenius module."""

from fractions import Fraction

import pytest

from rigidpadic.errors import ParameterError
from rigidpadic.galois import (
    ContinuousCharacter,
    FilteredPhiModule,
    TriangulineParam,
    abs_x_character,
    ext1_dimension,
    in_S_cris,
    in_S_star,
    nearest_integer,
    validate_crystalline,
    weight,
    x_character,
)
from rigidpadic.verdict import Verdict


class TestCharacterConstruction:
    def test_zero_value_rejected(self, ctx):
        with pytest.raises(ParameterError):
            ContinuousCharacter(ctx.zero(), 0, ctx.one())

    def test_non_unit_wild_rejected(self, ctx):
        with pytest.raises(ParameterError):
            ContinuousCharacter(ctx.one(), 0, ctx.from_int(5))

    def test_wild_not_principal_rejected(self, ctx):
        with pytest.raises(ParameterError):
            ContinuousCharacter(ctx.one(), 0, ctx.from_int(2))

    def test_distinguished_characters(self, ctx):
        x = x_character(ctx)
        assert x.value_at_p == ctx.from_int(5)
        assert x.tame_exponent == 1
        assert x.wild_value == ctx.from_int(6)
        absx = abs_x_character(ctx)
        assert absx.value_at_p.val == -1
        assert absx.tame_exponent == 0
        assert absx.wild_value == ctx.one()


class TestCharacterAlgebra:
    def test_product_is_unitary(self, ctx):
        prod = x_character(ctx) * abs_x_character(ctx)
        assert prod.value_at_p.agrees_with(ctx.one())

    def test_inverse_roundtrip(self, ctx):
        x = x_character(ctx)
        assert (x * x.inverse()).agrees_with(ContinuousCharacter.trivial(ctx))

    def test_division_matches_inverse(self, ctx):
        x = x_character(ctx)
        absx = abs_x_character(ctx)
        assert (x / absx).agrees_with(x * absx.inverse())

    def test_power_zero_is_trivial(self, ctx):
        assert (x_character(ctx) ** 0).agrees_with(ContinuousCharacter.trivial(ctx))

    def test_negative_power(self, ctx):
        x = x_character(ctx)
        assert (x ** -2).value_at_p.agrees_with(ctx.from_fraction(Fraction(1, 25)))


class TestWeight:
    def test_trivial_character(self, ctx):
        assert weight(ContinuousCharacter.trivial(ctx)).is_zero

    def test_inclusion_character(self, ctx):
        assert weight(x_character(ctx)) == ctx.one()

    def test_absolute_value(self, ctx):
        assert weight(abs_x_character(ctx)).is_zero

    def test_cubed_wild_value(self, ctx):
        chi = ContinuousCharacter(ctx.one(), 0, ctx.from_int(6) ** 3)
        assert weight(chi).agrees_with(ctx.from_int(3))

    def test_additivity(self, ctx):
        a = ContinuousCharacter(ctx.from_int(25), 2, ctx.from_int(6) ** 2)
        b = ContinuousCharacter(ctx.from_int(3), 1, ctx.from_int(36))
        lhs = weight(a * b)
        assert lhs.agrees_with(weight(a) + weight(b))


class TestNearestInteger:
    def test_exact_hit(self, ctx):
        v, n = nearest_integer(ctx.from_int(7), 10)
        assert v is Verdict.YES and n == 7

    def test_deep_agreement(self, ctx):
        v, n = nearest_integer(ctx.from_int(7 + 5 ** 38), 10)
        assert v is Verdict.YES and n == 7

    def test_fractional_rejected(self, ctx):
        v, n = nearest_integer(ctx.from_fraction(Fraction(1, 5)), 10)
        assert v is Verdict.NO and n is None

    def test_out_of_range_indeterminate(self, ctx):
        v, n = nearest_integer(ctx.from_int(100), 10)
        assert v is Verdict.INDETERMINATE and n is None

    def test_shallow_agreement_indeterminate(self, ctx):
        # 7 + 5^10 is an integer, just not one the bound can see
        v, n = nearest_integer(ctx.from_int(7 + 5 ** 10), 10)
        assert v is Verdict.INDETERMINATE and n is None


def _weighted_delta1(ctx, w: int):
    """val_p(value at p) = 1 and weight w."""
    return ContinuousCharacter(ctx.from_int(5), 1, ctx.from_int(6) ** w)


class TestStarLocus:
    def test_member(self, ctx):
        s = TriangulineParam(_weighted_delta1(ctx, 1), abs_x_character(ctx))
        res = in_S_star(s)
        assert res.is_member and res.u == 1
        assert res.w == ctx.one()

    def test_flat_first_valuation_rejected(self, ctx):
        s = TriangulineParam(
            ContinuousCharacter.trivial(ctx), ContinuousCharacter.trivial(ctx)
        )
        assert not in_S_star(s).is_member

    def test_unbalanced_sum_rejected(self, ctx):
        s = TriangulineParam(x_character(ctx), x_character(ctx))
        assert not in_S_star(s).is_member


class TestCrystallineLocus:
    def test_member(self, ctx):
        s = TriangulineParam(_weighted_delta1(ctx, 2), abs_x_character(ctx))
        res = in_S_cris(s)
        assert res.status is Verdict.YES
        assert res.in_star and res.u == 1 and res.w_integer == 2

    def test_equal_slope_and_gap_rejected(self, ctx):
        s = TriangulineParam(_weighted_delta1(ctx, 1), abs_x_character(ctx))
        res = in_S_cris(s)
        assert res.status is Verdict.NO
        assert res.u == 1 and res.w_integer == 1
        assert "u < w" in res.reason

    def test_finite_extension_coordinate_rejected(self, ctx):
        s = TriangulineParam(
            _weighted_delta1(ctx, 2), abs_x_character(ctx), scriptL="0"
        )
        res = in_S_cris(s)
        assert res.status is Verdict.NO and res.in_star
        assert "finite" in res.reason

    def test_base_failure_reported(self, ctx):
        s = TriangulineParam(x_character(ctx), x_character(ctx))
        res = in_S_cris(s)
        assert res.status is Verdict.NO and not res.in_star

    def test_negative_gap_rejected(self, ctx):
        chi1 = ContinuousCharacter(ctx.from_int(5), 1, ctx.one())
        chi2 = ContinuousCharacter(
            ctx.from_fraction(Fraction(1, 5)), 0, ctx.from_int(6)
        )
        res = in_S_cris(TriangulineParam(chi1, chi2))
        assert res.status is Verdict.NO
        assert res.w_integer == -1


class TestExt1Dimension:
    def test_table(self, ctx):
        x = x_character(ctx)
        absx = abs_x_character(ctx)
        rows = [
            (x ** 0, 2, "x^-0"),
            (x ** -1, 2, "x^-1"),
            (x ** -2, 2, "x^-2"),
            (x ** -7, 2, "x^-7"),
            (absx * x, 2, "|x|x^1"),
            (absx * x ** 3, 2, "|x|x^3"),
            (absx * x ** 6, 2, "|x|x^6"),
            (absx, 1, None),
            (x, 1, None),
            (x ** 2, 1, None),
            (ContinuousCharacter.unramified(ctx, 2), 1, None),
            (ContinuousCharacter(ctx.from_int(5), 3, ctx.one()), 1, None),
        ]
        trivial = ContinuousCharacter.trivial(ctx)
        for q, dim, form in rows:
            res = ext1_dimension(q, trivial)
            assert res.status is Verdict.YES
            assert res.dimension == dim
            assert res.matched_form == form

    def test_quotient_invariance(self, ctx):
        x = x_character(ctx)
        c = ContinuousCharacter(ctx.from_int(15), 2, ctx.from_int(31))
        res = ext1_dimension(x ** -3 * c, c)
        assert res.dimension == 2 and res.matched_form == "x^-3"

    def test_swap_inverts_quotient(self, ctx):
        # x^-2 against trivial matches; the swapped pair tests x^2,
        # which neither family contains
        x = x_character(ctx)
        trivial = ContinuousCharacter.trivial(ctx)
        assert ext1_dimension(x ** -2, trivial).dimension == 2
        assert ext1_dimension(trivial, x ** -2).dimension == 1

    def test_beyond_bound_indeterminate(self, ctx):
        x = x_character(ctx)
        trivial = ContinuousCharacter.trivial(ctx)
        res = ext1_dimension(x ** -25, trivial, bound=20)
        assert res.status is Verdict.INDETERMINATE
        assert res.dimension is None
        wide = ext1_dimension(x ** -25, trivial, bound=30)
        assert wide.dimension == 2 and wide.matched_form == "x^-25"


class TestValidateCrystalline:
    def test_valid_small_slope(self, ctx):
        chi = validate_crystalline(ctx.from_int(5), ctx.from_int(10), 3)
        assert chi.small_slope
        assert not chi.violations()

    def test_equal_eigenvalues_rejected(self, ctx):
        with pytest.raises(ParameterError):
            validate_crystalline(ctx.from_int(5), ctx.from_int(5), 3)

    def test_unit_beta_rejected(self, ctx):
        with pytest.raises(ParameterError):
            validate_crystalline(ctx.from_int(25), ctx.from_int(2), 3)


class TestFilteredPhiModule:
    def _module(self, ctx, k):
        va = max(k - 2, 1)
        vb = max(k - 1 - va, 1)
        return FilteredPhiModule(
            ctx.from_int(5 ** va * 2), ctx.from_int(5 ** vb * 3), k
        )

    def test_three_step_filtration(self, ctx):
        mod = self._module(ctx, 4)
        assert mod.fil_dimension(-5) == (2, ("e_alpha", "e_beta"))
        assert mod.fil_dimension(-3) == (2, ("e_alpha", "e_beta"))
        assert mod.fil_dimension(-2) == (1, ("e_alpha + e_beta",))
        assert mod.fil_dimension(0) == (1, ("e_alpha + e_beta",))
        assert mod.fil_dimension(1) == (0, ())

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_hodge_tate_weights(self, ctx, k):
        assert self._module(ctx, k).hodge_tate_weights() == {0, k - 1}

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_filtration_non_increasing(self, ctx, k):
        mod = self._module(ctx, k)
        dims = [mod.fil_dimension(i)[0] for i in range(-(k + 1), 3)]
        assert all(a >= b for a, b in zip(dims, dims[1:]))

    def test_phi_eigenvalues(self, ctx):
        alpha, beta = ctx.from_int(5), ctx.from_int(10)
        mod = FilteredPhiModule(alpha, beta, 3)
        ca, cb = mod.phi_action((ctx.one(), ctx.zero()))
        assert ca.agrees_with(alpha.invert()) and cb.is_zero
        ca, cb = mod.phi_action((ctx.one(), ctx.one()))
        assert ca.agrees_with(ctx.from_fraction(Fraction(1, 5)))
        assert cb.agrees_with(ctx.from_fraction(Fraction(1, 10)))

    def test_phi_zero_vector(self, ctx):
        mod = self._module(ctx, 3)
        ca, cb = mod.phi_action((ctx.zero(), ctx.zero()))
        assert ca.is_zero and cb.is_zero

    def test_phi_commutes_with_scaling(self, ctx):
        mod = self._module(ctx, 3)
        v = (ctx.from_int(7), ctx.from_int(11))
        c = ctx.from_int(9)
        scaled = mod.phi_action((v[0] * c, v[1] * c))
        plain = mod.phi_action(v)
        assert scaled[0].agrees_with(plain[0] * c)
        assert scaled[1].agrees_with(plain[1] * c)

    def test_weight_guard(self, ctx):
        with pytest.raises(ParameterError):
            FilteredPhiModule(ctx.from_int(5), ctx.from_int(10), 1)

    def test_zero_eigenvalue_guard(self, ctx):
        with pytest.raises(ParameterError):
            FilteredPhiModule(ctx.zero(), ctx.from_int(10), 3)

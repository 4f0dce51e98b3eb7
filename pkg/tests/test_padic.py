"""Exact-valuation arithmetic: frozen oracles plus algebraic properties."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidpadic.errors import DivisionError, DomainError, ParameterError
from rigidpadic.padic import INF, PadicContext, binom, invert, padic_log, valp


class TestValuation:
    def test_valp_of_p_is_one(self, ctx):
        assert valp(ctx.from_int(5)) == 1

    def test_valp_of_unit(self, ctx):
        assert valp(ctx.one()) == 0

    def test_valp_50_is_2(self, ctx):
        # 50 = 2 * 5**2
        assert valp(ctx.from_int(50)) == 2

    def test_zero_valuation_is_infinite(self, ctx):
        assert valp(ctx.zero()) is INF

    def test_negative_valuation_from_fraction(self, ctx):
        assert valp(ctx.from_fraction(Fraction(1, 5))) == -1


class TestInvert:
    def test_invert_one(self, ctx):
        assert invert(ctx.one()) == ctx.one()

    def test_invert_6_mod_25(self):
        # extended Euclid: 6 * 21 = 126 = 1 + 5 * 25
        ctx = PadicContext(p=5, N=2, kappa=1)
        x = invert(ctx.from_int(6))
        assert x.val == 0
        assert x.unit == 21

    def test_invert_p_negates_valuation(self, ctx):
        x = invert(ctx.from_int(5))
        assert x.val == -1
        assert (x * ctx.from_int(5)) == ctx.one()

    def test_invert_zero_raises(self, ctx):
        with pytest.raises(DivisionError):
            invert(ctx.zero())

    def test_invert_involution(self, ctx):
        for n in (3, 7, 12, 5 * 9, 126):
            x = ctx.from_int(n)
            assert invert(invert(x)) == x


class TestBinom:
    def test_small_value(self, ctx):
        assert binom(ctx, 4, 2) == ctx.from_int(6)

    def test_vanishes_above_row(self, ctx):
        assert binom(ctx, 3, 5).is_zero

    def test_kummer_carry_count(self, ctx):
        # C(25,5) = 53130 = 5 * 10626; one carry when adding 5 + 20 in base 5
        assert valp(binom(ctx, 25, 5)) == 1

    def test_row_symmetry(self, ctx):
        for n in range(12):
            for k in range(n + 1):
                assert binom(ctx, n, k) == binom(ctx, n, n - k)


class TestLog:
    def test_log_of_one_is_zero(self, ctx):
        assert padic_log(ctx.one()).is_zero

    def test_log_one_plus_p_partial_sums(self):
        # independent oracle: exact rational partial sums of the
        # alternating series, kept while the term valuation n - valp(n)
        # stays within the window
        ctx = PadicContext(p=5, N=6)
        total = Fraction(0)
        n = 1
        while True:
            term_val = n - _valp_int(n, 5)
            if term_val > ctx.N + 1:
                break
            total += Fraction((-1) ** (n + 1) * 5 ** n, n)
            n += 1
        got = padic_log(ctx.from_int(6))
        assert got.agrees_with(ctx.from_fraction(total))

    def test_log_rejects_non_principal_units(self, ctx):
        with pytest.raises(DomainError):
            padic_log(ctx.from_int(2))
        with pytest.raises(DomainError):
            padic_log(ctx.from_int(5))

    def test_log_square_doubles(self, ctx):
        u = ctx.from_int(1 + 5 * 13)
        assert padic_log(u * u).agrees_with(padic_log(u) + padic_log(u))

    def test_log_homomorphism_budget(self, ctx):
        u = ctx.from_int(1 + 5 * 2)
        v = ctx.from_int(1 + 25 * 3)
        gap = padic_log(u * v) - padic_log(u) - padic_log(v)
        assert gap.is_zero or gap.val >= ctx.N - ctx.kappa


def _valp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


nonzero_ints = st.integers(min_value=-(10 ** 9), max_value=10 ** 9).filter(bool)


class TestArithmeticProperties:
    @given(a=nonzero_ints, b=nonzero_ints)
    def test_product_valuation_adds(self, ctx, a, b):
        x, y = ctx.from_int(a), ctx.from_int(b)
        assert valp(x * y) == valp(x) + valp(y)

    @given(a=nonzero_ints, b=nonzero_ints)
    def test_sum_valuation_ultrametric(self, ctx, a, b):
        x, y = ctx.from_int(a), ctx.from_int(b)
        s = x + y
        lo = min(valp(x), valp(y))
        assert s.is_zero or valp(s) >= lo
        if valp(x) != valp(y):
            assert valp(s) == lo

    @given(a=nonzero_ints, b=nonzero_ints)
    def test_subtraction_recovers_addend(self, ctx, a, b):
        # the round trip is only visible inside the absolute window of
        # the intermediate sum, so compare there rather than relatively
        x, y = ctx.from_int(a), ctx.from_int(b)
        d = ((x + y) - y) - x
        window = min(valp(x), valp(y)) + ctx.N - ctx.kappa
        assert d.is_zero or valp(d) >= window

    @given(a=nonzero_ints)
    def test_division_round_trip(self, ctx, a):
        x = ctx.from_int(a)
        assert (x / x) == ctx.one()

    @given(
        num=nonzero_ints,
        den=nonzero_ints,
    )
    @settings(max_examples=60)
    def test_fraction_embedding_is_multiplicative(self, ctx, num, den):
        q = Fraction(num, den)
        lhs = ctx.from_fraction(q)
        rhs = ctx.from_int(num) / ctx.from_int(den)
        assert lhs.agrees_with(rhs)

    @given(a=nonzero_ints, e=st.integers(min_value=-4, max_value=6))
    def test_integer_powers(self, ctx, a, e):
        x = ctx.from_int(a)
        direct = x ** e
        expect = ctx.one()
        for _ in range(abs(e)):
            expect = expect * x
        if e < 0:
            expect = expect.invert()
        assert direct.agrees_with(expect)


class TestComparison:
    def test_zero_agrees_with_zero(self, ctx):
        assert ctx.zero().agrees_with(ctx.zero())

    def test_deep_residual_counts_as_zero(self, ctx):
        # a residual at depth N - kappa past the joint valuation is
        # invisible at working precision
        x = ctx.from_int(7)
        y = x + ctx.from_int(5 ** (ctx.N - 1))
        assert x.agrees_with(y)
        z = x + ctx.from_int(5 ** (ctx.N - ctx.kappa - 1))
        assert not x.agrees_with(z)

    def test_context_guards(self):
        with pytest.raises(ParameterError):
            PadicContext(p=4)
        with pytest.raises(ParameterError):
            PadicContext(p=2)
        with pytest.raises(ParameterError):
            PadicContext(N=0)

"""Canonical JSON envelopes: byte-stable round trips and strict
envelope validation."""

from fractions import Fraction

import pytest

from rigidpadic import io
from rigidpadic.actions import (
    I1,
    InductionCharacter,
    IwahoriElement,
    WeylCellVector,
)
from rigidpadic.analytic import CokernelElement, GAElement
from rigidpadic.errors import ParameterError, ParameterMismatch
from rigidpadic.functions import PiecewiseFunction, StepFunction
from rigidpadic.galois import (
    ContinuousCharacter,
    TriangulineParam,
    abs_x_character,
    x_character,
)
from rigidpadic.padic import PadicContext
from rigidpadic.series import TateSeries


def _roundtrip(ctx, kind, value):
    text = io.wrap(kind, ctx, value)
    got_kind, got_ctx, back = io.load(text, kind)
    assert got_kind == kind
    assert got_ctx.same(ctx)
    return text, back


class TestRoundTrips:
    def test_series_exact(self, ctx):
        f = TateSeries(ctx, 1, [1, -2, Fraction(3, 7), 0, 625])
        _, back = _roundtrip(ctx, "series", f)
        assert back == f

    def test_series_finite_tail(self, ctx):
        f = TateSeries(ctx, 2, [5, 25], tail_bound=3)
        _, back = _roundtrip(ctx, "series", f)
        assert back == f
        assert back.tail_bound == 3

    def test_function(self, ctx):
        f = PiecewiseFunction.from_global_series(
            TateSeries(ctx, 0, [2, 0, 1])
        ).refine(1)
        _, back = _roundtrip(ctx, "function", f)
        assert back == f

    def test_step_function(self, ctx):
        f = StepFunction.indicator_ball(ctx, 1)
        _, back = _roundtrip(ctx, "function", f)
        assert back == f

    def test_matrix_pro_p_level(self, ctx):
        g = IwahoriElement(ctx, 6, 5, 3, 1, I1)
        _, back = _roundtrip(ctx, "matrix", g)
        assert back == g
        assert back.level == I1

    def test_matrix_integer_level(self, ctx):
        g = IwahoriElement(ctx, 26, 25, 25, 1, 2)
        _, back = _roundtrip(ctx, "matrix", g)
        assert back == g
        assert back.level == 2

    def test_character(self, ctx):
        chi = ContinuousCharacter(ctx.from_int(15), 2, ctx.from_int(31))
        _, back = _roundtrip(ctx, "character", chi)
        assert back == chi

    def test_induction(self, ctx):
        chi = InductionCharacter(
            ctx.from_int(5), ctx.from_int(10), 3, which="beta"
        )
        _, back = _roundtrip(ctx, "induction", chi)
        assert back == chi

    def test_param_infinite_coordinate(self, ctx):
        s = TriangulineParam(x_character(ctx), abs_x_character(ctx))
        _, back = _roundtrip(ctx, "param", s)
        assert back.script_l_is_inf
        assert back.delta1 == s.delta1 and back.delta2 == s.delta2

    def test_param_finite_coordinate(self, ctx):
        s = TriangulineParam(x_character(ctx), abs_x_character(ctx), scriptL="3/7")
        _, back = _roundtrip(ctx, "param", s)
        assert not back.script_l_is_inf
        assert back.scriptL == "3/7"

    def test_weyl_vector(self, ctx):
        v = WeylCellVector(
            PiecewiseFunction.constant(ctx, 3),
            PiecewiseFunction.from_global_series(TateSeries(ctx, 0, [0, 1])),
        )
        _, back = _roundtrip(ctx, "weyl", v)
        assert back.identity == v.identity and back.w0 == v.w0

    def test_cokernel(self, ctx):
        chi = InductionCharacter(ctx.from_int(5), ctx.from_int(10), 3)
        c = CokernelElement(
            chi, 1, 2,
            GAElement(
                WeylCellVector(
                    PiecewiseFunction.constant(ctx, 1),
                    PiecewiseFunction.constant(ctx, 0),
                ),
                1, 2,
            ),
            GAElement.zero(ctx, 1, 2),
        )
        _, back = _roundtrip(ctx, "cokernel", c)
        assert back.chi == chi
        assert (back.n, back.m) == (1, 2)
        assert back.F_alpha.agrees_with(c.F_alpha)
        assert back.F_beta.agrees_with(c.F_beta)


class TestCanonicalForm:
    def test_bytes_stable_under_reload(self, ctx):
        f = TateSeries(ctx, 1, [Fraction(1, 5), 7])
        text = io.wrap("series", ctx, f)
        _, _, back = io.load(text)
        assert io.wrap("series", ctx, back) == text

    def test_layout(self, ctx):
        text = io.wrap("series", ctx, TateSeries.zero(ctx, 0))
        assert text.endswith("\n") and not text.endswith("\n\n")
        assert '  "context"' in text
        lines = text.splitlines()
        assert lines[0] == "{" and lines[-1] == "}"

    def test_keys_sorted(self, ctx):
        text = io.wrap("series", ctx, TateSeries.zero(ctx, 0))
        keys = [
            ln.strip().split(":")[0]
            for ln in text.splitlines()
            if ln.startswith('  "')
        ]
        assert keys == sorted(keys)


class TestEnvelopeValidation:
    def test_kind_mismatch(self, ctx):
        text = io.wrap("series", ctx, TateSeries.zero(ctx, 0))
        with pytest.raises(ParameterMismatch):
            io.load(text, "matrix")

    def test_context_mismatch(self, ctx):
        text = io.wrap("series", ctx, TateSeries.zero(ctx, 0))
        other = PadicContext(p=5, N=20, D=32)
        with pytest.raises(ParameterMismatch):
            io.load(text, "series", other)

    def test_malformed_json(self):
        with pytest.raises(ParameterError):
            io.load("{not json")

    def test_missing_envelope_fields(self):
        with pytest.raises(ParameterError):
            io.load('{"context": {"p": 5}}')

    def test_unknown_kind_wrap(self, ctx):
        with pytest.raises(ParameterError):
            io.wrap("polynomial", ctx, TateSeries.zero(ctx, 0))

    def test_unknown_kind_load(self, ctx):
        text = io.wrap("series", ctx, TateSeries.zero(ctx, 0)).replace(
            '"kind": "series"', '"kind": "mystery"'
        )
        with pytest.raises(ParameterError):
            io.load(text)

    def test_bad_payload(self, ctx):
        text = io.wrap("series", ctx, TateSeries.zero(ctx, 0)).replace(
            '"m": 0', '"m": "deep"'
        )
        with pytest.raises(ParameterError):
            io.load(text)

    def test_zero_denominator_coefficient(self, ctx):
        text = io.wrap("series", ctx, TateSeries(ctx, 0, [1])).replace(
            '"1"', '"1/0"'
        )
        with pytest.raises(ParameterError):
            io.load(text)

    def test_bad_context_header(self):
        with pytest.raises(ParameterError):
            io.load('{"context": {"p": 5}, "kind": "series", "payload": {}}')

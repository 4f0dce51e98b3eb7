"""Truncated rigid analytic series on the balls p**m Z_p.

A TateSeries holds coefficients a_0 .. a_deg (deg <= D) of a function

    f(z) = sum_l a_l z^l,   z in p**m Z_p,

together with a tail certificate: every omitted coefficient with index
l > D satisfies valp(a_l) + m*l >= tail_bound.  A finite tail_bound
records honest ignorance about truncated data; +inf asserts that the
series is exactly the stored polynomial.

The Banach valuation on the ball is

    val_C(f) = inf_l { valp(a_l) + m*l },

computed over the stored part and capped by the tail certificate.  It
equals the sup-norm valuation of f on the ball.

Substitution operators implement the generator actions used elsewhere:
translate f(z - y), dilate f(s z), mobius f(z/(1 - x z)) (1 - x z)^(k-2)
and the inverse-torus twist f(z/t) t^(k-2).  Each records a new tail
certificate derived from the input's certificate; every one of them
preserves val_C exactly (they are invertible isometries of the ball).
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

from .errors import DomainError, ParameterError
from .padic import INF, Coercible, PadicContext, PadicNumber, sum_tracked


class TateSeries:
    __slots__ = ("ctx", "m", "coeffs", "tail_bound")

    def __init__(
        self,
        ctx: PadicContext,
        m: int,
        coeffs: Sequence[Coercible] = (),
        tail_bound=INF,
    ):
        if m < 0:
            raise ParameterError(f"ball level m must be >= 0, got {m}")
        cs = [ctx.num(c) for c in coeffs]
        if len(cs) > ctx.D + 1:
            raise ParameterError(
                f"series of degree {len(cs) - 1} exceeds truncation degree D={ctx.D}"
            )
        while cs and cs[-1].is_zero:
            cs.pop()
        self.ctx = ctx
        self.m = m
        self.coeffs = tuple(cs)
        self.tail_bound = tail_bound

    # -- basics ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx: PadicContext, m: int) -> "TateSeries":
        return cls(ctx, m, ())

    @classmethod
    def constant(cls, ctx: PadicContext, m: int, c: Coercible) -> "TateSeries":
        return cls(ctx, m, (c,))

    @classmethod
    def monomial(cls, ctx: PadicContext, m: int, degree: int, c: Coercible = 1) -> "TateSeries":
        if degree < 0 or degree > ctx.D:
            raise ParameterError(f"monomial degree {degree} outside [0, {ctx.D}]")
        return cls(ctx, m, (0,) * degree + (c,))

    @property
    def degree(self) -> int:
        """Index of the last nonzero stored coefficient; -1 for zero."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs and self.tail_bound is INF

    def coeff(self, l: int) -> PadicNumber:
        if 0 <= l < len(self.coeffs):
            return self.coeffs[l]
        return self.ctx.zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TateSeries)
            and self.ctx.same(other.ctx)
            and self.m == other.m
            and self.coeffs == other.coeffs
            and self.tail_bound == other.tail_bound
        )

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs, self.tail_bound))

    def agrees_with(self, other: "TateSeries", slack: int | None = None) -> bool:
        """Coefficientwise equality at precision on a common ball level."""
        if self.m != other.m:
            return False
        top = max(len(self.coeffs), len(other.coeffs))
        return all(
            self.coeff(l).agrees_with(other.coeff(l), slack) for l in range(top)
        )

    def agrees_mod(self, other: "TateSeries", exponent: int) -> bool:
        """Coefficientwise congruence mod p**exponent (absolute cutoff).

        Composite substitutions truncated at degree D leave residue of
        bounded absolute size, independent of how small the individual
        coefficients are; comparing composite routes therefore needs an
        absolute threshold rather than a relative one.
        """
        if self.m != other.m:
            return False
        top = max(len(self.coeffs), len(other.coeffs))
        return all(
            (self.coeff(l) - other.coeff(l)).val >= exponent for l in range(top)
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for l, c in enumerate(self.coeffs):
                if c.is_zero:
                    continue
                s = c.to_string()
                parts.append(s if l == 0 else (f"({s})*z^{l}" if l > 1 else f"({s})*z"))
            body = " + ".join(parts) or "0"
        tb = "inf" if self.tail_bound is INF else str(self.tail_bound)
        return f"TateSeries(m={self.m}, {body}, tail>={tb})"

    # -- valuations -------------------------------------------------------

    def stored_val_c(self):
        """min over stored coefficients of valp(a_l) + m*l; +inf if none."""
        best = INF
        for l, c in enumerate(self.coeffs):
            if not c.is_zero:
                v = c.val + self.m * l
                if v < best:
                    best = v
        return best

    def val_c(self):
        """Banach valuation: stored minimum capped by the tail certificate."""
        return min(self.stored_val_c(), self.tail_bound)

    def suffix_levels(self):
        """suffix_levels()[v] = min over stored l >= v of valp(a_l) + m*l.

        Length degree + 2; the last entry is +inf (empty suffix).
        """
        out = [INF] * (len(self.coeffs) + 1)
        for l in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[l]
            here = INF if c.is_zero else c.val + self.m * l
            out[l] = min(here, out[l + 1])
        return out

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "TateSeries") -> "TateSeries":
        self._match(other)
        n = max(len(self.coeffs), len(other.coeffs))
        cs = [self.coeff(l) + other.coeff(l) for l in range(n)]
        return TateSeries(self.ctx, self.m, cs, min(self.tail_bound, other.tail_bound))

    def __neg__(self) -> "TateSeries":
        return TateSeries(self.ctx, self.m, [-c for c in self.coeffs], self.tail_bound)

    def __sub__(self, other: "TateSeries") -> "TateSeries":
        return self + (-other)

    def scale(self, c: Coercible) -> "TateSeries":
        c = self.ctx.num(c)
        if c.is_zero:
            return TateSeries.zero(self.ctx, self.m)
        tb = INF if self.tail_bound is INF else self.tail_bound + c.val
        return TateSeries(self.ctx, self.m, [a * c for a in self.coeffs], tb)

    def __mul__(self, other: "TateSeries") -> "TateSeries":
        self._match(other)
        ctx = self.ctx
        if not self.coeffs or not other.coeffs:
            prod_tail = INF if (self.is_zero or other.is_zero) else self.val_c() + other.val_c()
            return TateSeries(ctx, self.m, (), prod_tail)
        top = min(ctx.D, self.degree + other.degree)
        cs = [ctx.zero() for _ in range(top + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > top:
                    break
                if not b.is_zero:
                    cs[i + j] = cs[i + j] + a * b
        exact = (
            self.tail_bound is INF
            and other.tail_bound is INF
            and self.degree + other.degree <= ctx.D
        )
        tb = INF if exact else self.val_c() + other.val_c()
        return TateSeries(ctx, self.m, cs, tb)

    def _match(self, other: "TateSeries") -> None:
        if not self.ctx.same(other.ctx):
            raise ParameterError("series belong to different contexts")
        if self.m != other.m:
            raise DomainError(f"ball levels differ: {self.m} vs {other.m}")

    # -- substitutions ------------------------------------------------------

    def translate(self, y: Coercible) -> "TateSeries":
        """f(z) -> f(z - y) for y in p**m Z_p; coefficients
        b_v = sum_{l >= v} a_l binom(l, v) (-y)^(l-v)."""
        ctx = self.ctx
        y = ctx.num(y)
        if y.is_zero:
            return self
        if y.val < self.m:
            raise DomainError(f"translation step needs valp(y) >= {self.m}, got {y.val}")
        deg = self.degree
        neg_y_pow = [ctx.one()]
        for _ in range(deg):
            neg_y_pow.append(neg_y_pow[-1] * (-y))
        cs = []
        for v in range(deg + 1):
            acc = ctx.zero()
            for l in range(v, deg + 1):
                a = self.coeffs[l]
                if not a.is_zero:
                    acc = acc + a * ctx.binom(l, v) * neg_y_pow[l - v]
            cs.append(acc)
        # omitted b_v, v > D, draw only on omitted a_l, so the input
        # certificate carries over unchanged
        return TateSeries(ctx, self.m, cs, self.tail_bound)

    def raw_scale(self, s: Coercible) -> "TateSeries":
        """f(z) -> f(s z) for any unit s; coefficientwise a_l s^l."""
        ctx = self.ctx
        s = ctx.num(s)
        if not s.is_unit:
            raise DomainError("variable scaling needs a unit factor")
        cs = []
        pw = ctx.one()
        for l, a in enumerate(self.coeffs):
            if l:
                pw = pw * s
            cs.append(a * pw)
        return TateSeries(ctx, self.m, cs, self.tail_bound)

    def dilate(self, s: Coercible) -> "TateSeries":
        """f(z) -> f(s z) in the torus range s = 1 mod p**m."""
        s = self.ctx.num(s)
        if (s - self.ctx.one()).val < self.m:
            raise DomainError(f"dilation needs valp(s - 1) >= {self.m}")
        return self.raw_scale(s)

    def raw_mobius(self, x: Coercible) -> "TateSeries":
        """Untwisted substitution f(z) -> f(z / (1 - x z)), valp(x) >= 1.

        Expanding (1 - x z)^(-l) by the negative binomial series gives

            c_j = sum_q a_(j-q) binom(j - 1, q) x^q.
        """
        ctx = self.ctx
        x = ctx.num(x)
        if x.is_zero:
            return self
        if x.val < 1:
            raise DomainError(f"mobius parameter needs valp(x) >= 1, got {x.val}")
        deg = self.degree
        if deg < 0:
            return self
        x_pow = [ctx.one()]
        for _ in range(ctx.D):
            x_pow.append(x_pow[-1] * x)
        cs = []
        for j in range(ctx.D + 1):
            acc = ctx.zero()
            for q in range(max(0, j - deg), j + 1):
                a = self.coeffs[j - q]
                if not a.is_zero:
                    b = ctx.binom(j - 1, q)
                    if not b.is_zero:
                        acc = acc + a * b * x_pow[q]
            cs.append(acc)
        return TateSeries(ctx, self.m, cs, self.val_c())

    def mobius_twist(self, x: Coercible, k: int) -> "TateSeries":
        """Unipotent action f(z) -> f(z / (1 - x z)) * (1 - x z)^(k - 2).

        Needs valp(x) >= max(1, m) and weight k >= 2.
        """
        ctx = self.ctx
        x = ctx.num(x)
        _check_weight(ctx, k)
        if x.is_zero:
            return self
        if x.val < max(1, self.m):
            raise DomainError(
                f"mobius parameter needs valp(x) >= {max(1, self.m)}, got {x.val}"
            )
        return self.raw_mobius(x) * one_minus_cz_pow(ctx, self.m, x, k - 2)

    def inv_torus(self, t: Coercible, k: int) -> "TateSeries":
        """Torus action f(z) -> f(z / t) * t^(k - 2), t = 1 mod p**m."""
        ctx = self.ctx
        t = ctx.num(t)
        _check_weight(ctx, k)
        if (t - ctx.one()).val < self.m:
            raise DomainError(f"inverse torus needs valp(t - 1) >= {self.m}")
        cs = []
        for l, a in enumerate(self.coeffs):
            cs.append(a * t ** (k - 2 - l))
        return TateSeries(ctx, self.m, cs, self.tail_bound)

    def recenter(self, a: Coercible, new_m: int) -> "TateSeries":
        """Re-expansion around a: g(z') = f(a + z') on the ball p**new_m Z_p.

        Needs a in p**m Z_p and new_m >= m; coefficients
        b_v = sum_{l >= v} a_l binom(l, v) a^(l-v).
        """
        ctx = self.ctx
        a = ctx.num(a)
        if new_m < self.m:
            raise DomainError(f"recenter target level {new_m} below source level {self.m}")
        if not a.is_zero and a.val < self.m:
            raise DomainError(f"recenter offset needs valp(a) >= {self.m}, got {a.val}")
        if a.is_zero:
            return TateSeries(ctx, new_m, self.coeffs, self.tail_bound)
        deg = self.degree
        a_pow = [ctx.one()]
        for _ in range(max(deg, 0)):
            a_pow.append(a_pow[-1] * a)
        cs = []
        for v in range(deg + 1):
            acc = ctx.zero()
            for l in range(v, deg + 1):
                c = self.coeffs[l]
                if not c.is_zero:
                    acc = acc + c * ctx.binom(l, v) * a_pow[l - v]
            cs.append(acc)
        return TateSeries(ctx, new_m, cs, self.tail_bound)

    def evaluate(self, z: Coercible) -> PadicNumber:
        """Horner evaluation at z in p**m Z_p.

        For a finite tail certificate the omitted terms contribute an
        error of valuation >= tail_bound.
        """
        z = self.ctx.num(z)
        if not z.is_zero and z.val < self.m:
            raise DomainError(f"evaluation point needs valp(z) >= {self.m}")
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def evaluate_tracked(self, z: Coercible) -> Tuple[PadicNumber, float]:
        """Evaluation plus the absolute reliability ceiling of the sum."""
        ctx = self.ctx
        z = ctx.num(z)
        if not z.is_zero and z.val < self.m:
            raise DomainError(f"evaluation point needs valp(z) >= {self.m}")
        terms = []
        pw = ctx.one()
        for l, c in enumerate(self.coeffs):
            if l:
                pw = pw * z
            if not c.is_zero:
                terms.append(c * pw)
        return sum_tracked(ctx, terms)


def one_minus_cz_pow(ctx: PadicContext, m: int, c: PadicNumber, e: int) -> TateSeries:
    """The exact polynomial (1 - c z)^e, e >= 0."""
    if e < 0:
        raise ParameterError(f"twist exponent must be >= 0, got {e}")
    if e > ctx.D:
        raise ParameterError(f"twist exponent {e} exceeds truncation degree D={ctx.D}")
    cs = []
    pw = ctx.one()
    for i in range(e + 1):
        if i:
            pw = pw * (-c)
        cs.append(ctx.binom(e, i) * pw)
    return TateSeries(ctx, m, cs)


def _check_weight(ctx: PadicContext, k: int) -> None:
    if k < 2:
        raise ParameterError(f"weight k must be >= 2, got {k}")
    if k - 2 > ctx.D:
        raise ParameterError(f"weight k={k} needs twist degree k-2 <= D={ctx.D}")

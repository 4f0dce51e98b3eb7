"""Iwahori-level group actions on the function models.

Matrices live in the pro-p Iwahori I(1) of GL2(Z_p):

    a - 1, d - 1, b in p Z_p,   c in Z_p,

or in the principal congruence subgroups G(m), m >= 1, where all four
of a - 1, b, c, d - 1 lie in p**m Z_p.  Any such matrix factors as
lower * diagonal * upper,

    g = [[1, 0], [y, 1]] [[s, 0], [0, t]] [[1, x], [0, 1]],
    y = c / a,  s = a,  t = d - c b / a,  x = b / a,

and the left action on a function model applies the upper factor
first (mobius substitution with the k - 2 twist), then the torus
(dilation by s, inverse torus by t carrying t^(k-2)), then the lower
factor (translation by y).

Piecewise inputs are handled leafwise: each generator is an isometry of
Z_p sending cosets onto cosets, so a leaf at center c maps to a leaf at
the image center with an explicitly composed local series; no partition
refinement is ever needed.  For the mobius generator the image of the
leaf at c is centered at b = c / (1 + x c) and the local substitution
collapses to a scaled mobius map,

    z' -> (1 + x c)^2 z' / (1 - mu z'),   mu = x (1 + x c),

with twist factor (1 + x c)^(-(k-2)) (1 - mu z')^(k-2).

The w0 Weyl cell carries the action of the w0-conjugate matrix (swap
a <-> d and b <-> c); when the conjugate leaves the actionable range
(lower-left corner a unit) the cell reports a domain error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import DomainError, FactorizationError, InvariantViolation, ParameterError
from .functions import (
    Leaf,
    LocallyAlgebraicFunction,
    PiecewiseFunction,
    StepFunction,
)
from .padic import INF, Coercible, PadicContext, PadicNumber
from .series import TateSeries, one_minus_cz_pow

I1 = "I1"


class InductionCharacter:
    """Weight and Frobenius data labelling one side of the induction.

    alpha and beta are the crystalline Frobenius eigenvalues, k >= 2 the
    weight; `which` records the side ("alpha" or "beta") the character
    belongs to.  Only k enters the I(1)-action formulas; alpha and beta
    matter for classification and bookkeeping.

    The strict eigenvalue constraints

        alpha != beta,  0 < valp(beta) <= valp(alpha),
        valp(alpha) + valp(beta) = k - 1

    are satisfiable over Q_p only for k >= 3 (valuations are integers),
    so construction takes `strict=False` to admit the k = 2 degenerate
    case; violations are always listable via `violations()`.
    """

    __slots__ = ("alpha", "beta", "k", "which")

    def __init__(
        self,
        alpha: PadicNumber,
        beta: PadicNumber,
        k: int,
        which: str = "alpha",
        strict: bool = True,
    ):
        if k < 2:
            raise ParameterError(f"weight k must be >= 2, got {k}")
        if which not in ("alpha", "beta"):
            raise ParameterError(f"which must be 'alpha' or 'beta', got {which!r}")
        if alpha.is_zero or beta.is_zero:
            raise ParameterError("eigenvalues must be nonzero")
        self.alpha = alpha
        self.beta = beta
        self.k = k
        self.which = which
        if strict:
            bad = self.violations()
            if bad:
                raise ParameterError("; ".join(bad))

    def violations(self) -> list:
        """Every violated eigenvalue constraint, individually."""
        out = []
        if self.alpha == self.beta:
            out.append("alpha and beta coincide")
        va, vb = self.alpha.val, self.beta.val
        if not vb > 0:
            out.append(f"valp(beta) = {vb} is not > 0")
        if not vb <= va:
            out.append(f"valp(beta) = {vb} exceeds valp(alpha) = {va}")
        if va + vb != self.k - 1:
            out.append(
                f"valp(alpha) + valp(beta) = {va + vb} differs from k - 1 = {self.k - 1}"
            )
        return out

    @property
    def small_slope(self) -> bool:
        """valp(alpha) < k - 1: the non-critical range."""
        return self.alpha.val < self.k - 1

    def swapped(self) -> "InductionCharacter":
        other = "beta" if self.which == "alpha" else "alpha"
        return InductionCharacter(self.alpha, self.beta, self.k, other, strict=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, InductionCharacter)
            and self.alpha == other.alpha
            and self.beta == other.beta
            and self.k == other.k
            and self.which == other.which
        )

    def __hash__(self) -> int:
        return hash((self.alpha, self.beta, self.k, self.which))

    def __repr__(self) -> str:
        return (
            f"InductionCharacter(alpha={self.alpha.to_string()}, "
            f"beta={self.beta.to_string()}, k={self.k}, which={self.which})"
        )


class IwahoriElement:
    """2x2 matrix with a declared congruence level ("I1" or m >= 1)."""

    __slots__ = ("ctx", "a", "b", "c", "d", "level")

    def __init__(
        self,
        ctx: PadicContext,
        a: Coercible,
        b: Coercible,
        c: Coercible,
        d: Coercible,
        level: Union[str, int] = I1,
    ):
        self.ctx = ctx
        self.a = ctx.num(a)
        self.b = ctx.num(b)
        self.c = ctx.num(c)
        self.d = ctx.num(d)
        if level != I1 and (not isinstance(level, int) or level < 1):
            raise ParameterError(f"level must be 'I1' or an integer >= 1, got {level!r}")
        self.level = level
        one = ctx.one()
        if level == I1:
            ok = (
                (self.a - one).val >= 1
                and (self.d - one).val >= 1
                and self.b.val >= 1
                and self.c.val >= 0
            )
        else:
            ok = self.satisfies_level(level)
        if not ok:
            raise DomainError(f"matrix entries violate the declared level {level!r}")
        if self.det().is_zero:
            raise DomainError("matrix is singular at working precision")

    def satisfies_level(self, m: int) -> bool:
        """Entrywise test for membership in G(m)."""
        one = self.ctx.one()
        return (
            (self.a - one).val >= m
            and self.b.val >= m
            and self.c.val >= m
            and (self.d - one).val >= m
        )

    def det(self) -> PadicNumber:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "IwahoriElement") -> "IwahoriElement":
        if not self.ctx.same(other.ctx):
            raise ParameterError("matrices belong to different contexts")
        if self.level == I1 or other.level == I1:
            lvl: Union[str, int] = I1
        else:
            lvl = min(self.level, other.level)
        return IwahoriElement(
            self.ctx,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            lvl,
        )

    def conjugate_by_w0(self) -> "IwahoriElement":
        """w0 g w0 for the Weyl involution w0 = antidiag(1, 1): swaps
        a <-> d and b <-> c.  Raises when the conjugate leaves I(1)."""
        lvl = self.level
        if lvl == I1 and self.c.val < 1:
            raise DomainError(
                "w0-conjugate leaves I(1): lower-left entry is a unit"
            )
        return IwahoriElement(self.ctx, self.d, self.c, self.b, self.a, lvl)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IwahoriElement)
            and (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self) -> str:
        e = [x.to_string() for x in (self.a, self.b, self.c, self.d)]
        return f"IwahoriElement([[{e[0]}, {e[1]}], [{e[2]}, {e[3]}]], level={self.level!r})"


class Factorization(NamedTuple):
    y: PadicNumber
    s: PadicNumber
    t: PadicNumber
    x: PadicNumber


def iwahori_factorize(g: IwahoriElement) -> Factorization:
    """Unique lower/diagonal/upper factorization; needs a to be a unit."""
    if g.a.is_zero or g.a.val != 0:
        raise FactorizationError(
            f"upper-left entry must be a unit, valp(a) = {g.a.val}"
        )
    y = g.c / g.a
    s = g.a
    t = g.d - g.c * g.b / g.a
    x = g.b / g.a
    if t.is_zero or t.val != 0:
        raise FactorizationError("diagonal entry t = d - cb/a is not a unit")
    return Factorization(y, s, t, x)


@dataclass(frozen=True)
class WeylCellVector:
    """A pair of function models, one per Weyl cell of the induction."""

    identity: PiecewiseFunction
    w0: PiecewiseFunction

    def __post_init__(self):
        if not self.identity.ctx.same(self.w0.ctx):
            raise ParameterError("cells belong to different contexts")

    @property
    def ctx(self) -> PadicContext:
        return self.identity.ctx


# -- leafwise generator transforms -------------------------------------------


def _shift_to_residue(series: TateSeries, center: PadicNumber, level: int) -> Leaf:
    """Move a local series at an exact center onto the canonical residue."""
    r = center.residue(level)
    delta = series.ctx.from_int(r) - center
    return Leaf(r, level, series.recenter(delta, level))


def _translate_pw(f: PiecewiseFunction, y: PadicNumber) -> PiecewiseFunction:
    if y.is_zero:
        return f
    ctx = f.ctx
    leaves = []
    for lf in f.leaves:
        b = ctx.from_int(lf.center) + y
        leaves.append(_shift_to_residue(lf.series, b, lf.level))
    return PiecewiseFunction(ctx, leaves)


def _dilate_pw(f: PiecewiseFunction, s: PadicNumber) -> PiecewiseFunction:
    ctx = f.ctx
    one = ctx.one()
    if (s - one).is_zero:
        return f
    leaves = []
    for lf in f.leaves:
        b = ctx.from_int(lf.center) / s
        leaves.append(_shift_to_residue(lf.series.raw_scale(s), b, lf.level))
    return PiecewiseFunction(ctx, leaves)


def _inv_torus_pw(f: PiecewiseFunction, t: PadicNumber, e: int) -> PiecewiseFunction:
    ctx = f.ctx
    one = ctx.one()
    factor = t ** e
    if (t - one).is_zero and factor == one:
        return f
    leaves = []
    for lf in f.leaves:
        b = ctx.from_int(lf.center) * t
        g = lf.series.raw_scale(t.invert()).scale(factor)
        leaves.append(_shift_to_residue(g, b, lf.level))
    return PiecewiseFunction(ctx, leaves)


def _mobius_poly(
    ctx: PadicContext,
    m: int,
    coeffs,
    lam: PadicNumber,
    mu: PadicNumber,
    e: int,
) -> TateSeries:
    """Exact S(lam z / (1 - mu z)) (1 - mu z)^e for polynomial S, deg S <= e.

    Expands sum_j b_j lam^j z^j (1 - mu z)^(e-j) term by term; the result
    is a polynomial of degree <= e by construction, so the cancellation
    of the infinite substitution series never has to happen numerically.
    """
    cs = [ctx.zero() for _ in range(e + 1)]
    neg_mu_pow = [ctx.one()]
    for _ in range(e):
        neg_mu_pow.append(neg_mu_pow[-1] * (-mu))
    lam_pow = ctx.one()
    for j, b in enumerate(coeffs):
        if j:
            lam_pow = lam_pow * lam
        if b.is_zero:
            continue
        w = b * lam_pow
        for i in range(e - j + 1):
            cs[j + i] = cs[j + i] + w * ctx.binom(e - j, i) * neg_mu_pow[i]
    return TateSeries(ctx, m, cs)


def _mobius_pw(f: PiecewiseFunction, x: PadicNumber, e: int) -> PiecewiseFunction:
    if x.is_zero:
        return f
    if x.val < 1:
        raise DomainError(f"mobius parameter needs valp(x) >= 1, got {x.val}")
    ctx = f.ctx
    one = ctx.one()
    leaves = []
    for lf in f.leaves:
        c = ctx.from_int(lf.center)
        one_plus = one + x * c  # a unit: valp(x c) >= 1
        b = c / one_plus
        lam = one_plus * one_plus
        mu = x * one_plus
        if lf.series.tail_bound is INF and lf.series.degree <= e:
            g = _mobius_poly(ctx, lf.level, lf.series.coeffs, lam, mu, e)
        else:
            g = lf.series.raw_scale(lam).raw_mobius(mu)
            if e:
                g = g * one_minus_cz_pow(ctx, lf.level, mu, e)
        if e:
            g = g.scale(one_plus ** (-e))
        leaves.append(_shift_to_residue(g, b, lf.level))
    return PiecewiseFunction(ctx, leaves)


def _act_piecewise(
    f: PiecewiseFunction, fac: Factorization, e: int
) -> PiecewiseFunction:
    g = _mobius_pw(f, fac.x, e)
    g = _dilate_pw(g, fac.s)
    g = _inv_torus_pw(g, fac.t, e)
    return _translate_pw(g, fac.y)


# -- public actions -----------------------------------------------------------


def act(g: IwahoriElement, f, chi: InductionCharacter):
    """Left action of g on a TateSeries or a PiecewiseFunction.

    For a level-m series (m >= 1) the matrix must lie in G(m) so that
    every factorization parameter stays in the series' convergence
    range; level-0 series and piecewise functions accept all of I(1).
    """
    k = chi.k
    if isinstance(f, TateSeries):
        if f.m >= 1 and not g.satisfies_level(f.m):
            raise DomainError(
                f"acting on a level-{f.m} series needs a matrix in G({f.m})"
            )
        y, s, t, x = iwahori_factorize(g)
        h = f.mobius_twist(x, k)
        h = h.dilate(s)
        h = h.inv_torus(t, k)
        return h.translate(y)
    if isinstance(f, PiecewiseFunction):
        fac = iwahori_factorize(g)
        return _act_piecewise(f, fac, k - 2)
    raise ParameterError(f"cannot act on {type(f).__name__}")


def act_cell(g: IwahoriElement, vec: WeylCellVector, chi: InductionCharacter) -> WeylCellVector:
    """Cellwise action: identity cell directly, w0 cell by conjugation."""
    ident = act(g, vec.identity, chi)
    try:
        conj = g.conjugate_by_w0()
    except (DomainError, ParameterError) as exc:
        raise DomainError(f"w0 cell: {exc}") from exc
    try:
        other = act(conj, vec.w0, chi)
    except DomainError as exc:
        raise DomainError(f"w0 cell: {exc}") from exc
    return WeylCellVector(ident, other)


def act_smooth(g: IwahoriElement, f: StepFunction) -> StepFunction:
    """Smooth-vector action: the same formulas with twist exponent 0."""
    if not isinstance(f, StepFunction):
        raise ParameterError("act_smooth expects a StepFunction")
    fac = iwahori_factorize(g)
    out = _act_piecewise(f, fac, 0)
    return StepFunction(out.ctx, out.leaves)


def act_locally_algebraic(
    g: IwahoriElement, f: LocallyAlgebraicFunction, chi: InductionCharacter
) -> LocallyAlgebraicFunction:
    """Action on leafwise polynomials of degree <= k - 2.

    The mobius substitution and the (1 - x z)^(k-2) twist cancel to a
    polynomial of the same bounded degree; the result is repackaged with
    exact polynomial tails, and any residual high coefficient trips an
    internal invariant error.
    """
    if chi.k != f.k:
        raise ParameterError(f"character weight {chi.k} differs from function weight {f.k}")
    out = act(g, f, chi)
    leaves = []
    for lf in out.leaves:
        if lf.series.degree > f.k - 2:
            raise InvariantViolation(
                f"degree {lf.series.degree} > k-2 after locally algebraic action"
            )
        exact = TateSeries(out.ctx, lf.level, lf.series.coeffs, INF)
        leaves.append(Leaf(lf.center, lf.level, exact))
    return LocallyAlgebraicFunction(out.ctx, leaves, f.k)

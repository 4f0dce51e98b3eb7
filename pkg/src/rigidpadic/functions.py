"""Locally analytic functions on Z_p as finite coset partitions.

A PiecewiseFunction is a partition of Z_p into cosets center + p**h Z_p,
each carrying a TateSeries in the recentered coordinate z' = z - center
on the ball p**h Z_p.  Leaves are kept in canonical sorted order by
(level, center) with centers reduced to [0, p**h).

Membership tests answer whether the restriction of f to p**m Z_p glues
to a single rigid analytic series (is_member_Can), to a constant
(is_member_C_m), or to a polynomial of bounded degree (is_member_pi_an).
Gluing is decided by re-expanding every leaf inside the ball around the
common center 0 and comparing coefficients at precision N - kappa.  The
comparisons are starvation-aware: each re-expanded coefficient carries
an absolute reliability ceiling (its summands are only known modulo
p**(val + N)), and a comparison that cannot be settled inside the
reliable window returns INDETERMINATE rather than a verdict.

Mahler coefficients (iterated finite differences at 0, 1, 2, ...) give
an evaluation-only oracle used to cross-check the coefficient algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import DomainError, InvariantViolation, ParameterError
from .padic import INF, Coercible, PadicContext, PadicNumber, sum_tracked
from .series import TateSeries
from .verdict import Verdict

#: hard cap on leaf levels; partitions beyond this depth are pathological
MAX_LEVEL = 12


class Leaf(NamedTuple):
    center: int
    level: int
    series: TateSeries


class PiecewiseFunction:
    """Finite coset partition of Z_p with one local series per coset."""

    __slots__ = ("ctx", "leaves")

    def __init__(self, ctx: PadicContext, leaves: Iterable[Leaf]):
        lvs = sorted(leaves, key=lambda lf: (lf.level, lf.center))
        for lf in lvs:
            if not (0 <= lf.level <= MAX_LEVEL):
                raise ParameterError(f"leaf level {lf.level} outside [0, {MAX_LEVEL}]")
            if not (0 <= lf.center < ctx.p ** lf.level):
                raise ParameterError(
                    f"leaf center {lf.center} not reduced mod p^{lf.level}"
                )
            if lf.series.m != lf.level:
                raise ParameterError(
                    f"leaf series level {lf.series.m} differs from coset level {lf.level}"
                )
            if not lf.series.ctx.same(ctx):
                raise ParameterError("leaf series belongs to a different context")
        _check_partition(ctx, lvs)
        self.ctx = ctx
        self.leaves = tuple(lvs)

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, ctx: PadicContext, c: Coercible) -> "PiecewiseFunction":
        return cls(ctx, [Leaf(0, 0, TateSeries.constant(ctx, 0, c))])

    @classmethod
    def from_global_series(cls, f: TateSeries) -> "PiecewiseFunction":
        """Wrap a level-0 series as the one-leaf function on Z_p."""
        if f.m != 0:
            raise DomainError("a global function needs a level-0 series")
        return cls(f.ctx, [Leaf(0, 0, f)])

    @classmethod
    def indicator_ball(cls, ctx: PadicContext, h: int) -> "StepFunction":
        """1 on p**h Z_p, 0 elsewhere, partitioned along the coset tree."""
        if h < 0 or h > MAX_LEVEL:
            raise ParameterError(f"ball level {h} outside [0, {MAX_LEVEL}]")
        leaves = [Leaf(0, h, TateSeries.constant(ctx, h, 1))]
        for j in range(1, h + 1):
            for r in range(1, ctx.p):
                leaves.append(Leaf(r * ctx.p ** (j - 1), j, TateSeries.zero(ctx, j)))
        return StepFunction(ctx, leaves)

    # -- structure ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PiecewiseFunction)
            and self.ctx.same(other.ctx)
            and self.leaves == other.leaves
        )

    def __hash__(self) -> int:
        return hash(self.leaves)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self.leaves)} leaves, max level {self.max_level()})"

    def max_level(self) -> int:
        return max(lf.level for lf in self.leaves)

    def leaf_at(self, z: PadicNumber) -> Leaf:
        """The unique leaf whose coset contains z."""
        for lf in self.leaves:
            if z.residue(lf.level) == lf.center:
                return lf
        raise InvariantViolation("partition does not cover the requested point")

    def evaluate(self, z: Coercible) -> PadicNumber:
        z = self.ctx.num(z)
        lf = self.leaf_at(z)
        return lf.series.evaluate(z - self.ctx.from_int(lf.center))

    # -- refinement and algebra ------------------------------------------

    def refine(self, level: int) -> "PiecewiseFunction":
        """Split every leaf into cosets at the given common level.

        The local data is recentered exactly, so evaluation is unchanged.
        """
        if level < self.max_level():
            raise DomainError(
                f"refinement level {level} below max leaf level {self.max_level()}"
            )
        ctx = self.ctx
        leaves = []
        for lf in self.leaves:
            step = ctx.p ** lf.level
            for r in range(ctx.p ** (level - lf.level)):
                delta = r * step
                leaves.append(
                    Leaf(
                        lf.center + delta,
                        level,
                        lf.series.recenter(ctx.from_int(delta), level),
                    )
                )
        return PiecewiseFunction(ctx, leaves)

    def common_refinement(self, other: "PiecewiseFunction") -> Tuple["PiecewiseFunction", "PiecewiseFunction"]:
        if not self.ctx.same(other.ctx):
            raise ParameterError("functions belong to different contexts")
        h = max(self.max_level(), other.max_level())
        return self.refine(h), other.refine(h)

    def __add__(self, other: "PiecewiseFunction") -> "PiecewiseFunction":
        a, b = self.common_refinement(other)
        leaves = [
            Leaf(la.center, la.level, la.series + lb.series)
            for la, lb in zip(a.leaves, b.leaves)
        ]
        return PiecewiseFunction(self.ctx, leaves)

    def __neg__(self) -> "PiecewiseFunction":
        return PiecewiseFunction(
            self.ctx, [Leaf(lf.center, lf.level, -lf.series) for lf in self.leaves]
        )

    def __sub__(self, other: "PiecewiseFunction") -> "PiecewiseFunction":
        return self + (-other)

    def scale(self, c: Coercible) -> "PiecewiseFunction":
        return PiecewiseFunction(
            self.ctx, [Leaf(lf.center, lf.level, lf.series.scale(c)) for lf in self.leaves]
        )

    def agrees_with(self, other: "PiecewiseFunction", slack: int | None = None) -> bool:
        a, b = self.common_refinement(other)
        return all(
            la.series.agrees_with(lb.series, slack) for la, lb in zip(a.leaves, b.leaves)
        )

    def agrees_mod(self, other: "PiecewiseFunction", exponent: int) -> bool:
        """Leafwise congruence mod p**exponent on the common refinement."""
        a, b = self.common_refinement(other)
        return all(
            la.series.agrees_mod(lb.series, exponent) for la, lb in zip(a.leaves, b.leaves)
        )

    # -- ball bookkeeping --------------------------------------------------

    def covering_leaf(self, m: int) -> Optional[Leaf]:
        """The leaf strictly containing p**m Z_p, if the partition has one."""
        for lf in self.leaves:
            if lf.level <= m and lf.center == 0:
                return lf
        return None

    def leaves_in_ball(self, m: int) -> List[Leaf]:
        pm = self.ctx.p ** m
        return [lf for lf in self.leaves if lf.level >= m and lf.center % pm == 0]


class StepFunction(PiecewiseFunction):
    """Locally constant function: every leaf series has degree <= 0."""

    __slots__ = ()

    def __init__(self, ctx: PadicContext, leaves: Iterable[Leaf]):
        super().__init__(ctx, leaves)
        for lf in self.leaves:
            if lf.series.degree > 0:
                raise ParameterError(
                    f"step function leaf at {lf.center} has degree {lf.series.degree}"
                )


class LocallyAlgebraicFunction(PiecewiseFunction):
    """Leafwise polynomial of degree <= k - 2 for a fixed weight k >= 2."""

    __slots__ = ("k",)

    def __init__(self, ctx: PadicContext, leaves: Iterable[Leaf], k: int):
        if k < 2:
            raise ParameterError(f"weight k must be >= 2, got {k}")
        super().__init__(ctx, leaves)
        self.k = k
        for lf in self.leaves:
            if lf.series.degree > k - 2:
                raise ParameterError(
                    f"leaf at {lf.center} has degree {lf.series.degree} > k-2 = {k - 2}"
                )
            if lf.series.tail_bound is not INF:
                raise ParameterError(
                    "locally algebraic leaves must be exact polynomials"
                )


# -- membership tests ------------------------------------------------------


@dataclass(frozen=True)
class CanMembership:
    """Outcome of the gluing test, with the merged witness when it exists."""

    status: Verdict
    witness: Optional[TateSeries]
    detail: str

    def __bool__(self) -> bool:
        return self.status is Verdict.YES


def is_member_Can(f: PiecewiseFunction, m: int) -> CanMembership:
    """Does f restricted to p**m Z_p glue to one rigid analytic series?

    Every leaf inside the ball is re-expanded around 0 at level m and the
    expansions are compared coefficientwise at precision N - kappa.  A
    comparison whose reliable window is too shallow to certify or refute
    agreement yields INDETERMINATE.
    """
    if m < 0:
        raise ParameterError(f"ball level m must be >= 0, got {m}")
    ctx = f.ctx
    cover = f.covering_leaf(m)
    if cover is not None:
        w = cover.series.recenter(ctx.zero(), m)
        return CanMembership(Verdict.YES, w, "single leaf covers the ball")
    inball = f.leaves_in_ball(m)
    if not inball:
        raise InvariantViolation("partition leaves no cover of the ball")
    expansions = [_re_expand(ctx, lf, m) for lf in inball]
    ref_series, ref_ceil = expansions[0]
    status = Verdict.YES
    culprit = ""
    for (cand, ceil), lf in zip(expansions[1:], inball[1:]):
        v = _series_verdict(ctx, ref_series, ref_ceil, cand, ceil)
        if v is not Verdict.YES and not culprit:
            culprit = f"leaf at center {lf.center} (level {lf.level})"
        status = status & v
    if status is Verdict.NO:
        return CanMembership(Verdict.NO, None, f"re-expansions disagree: {culprit}")
    if status is Verdict.INDETERMINATE:
        return CanMembership(
            Verdict.INDETERMINATE, None, f"comparison starved: {culprit}"
        )
    tail = min(s.tail_bound for s, _ in expansions)
    witness = TateSeries(ctx, m, ref_series.coeffs, tail)
    return CanMembership(Verdict.YES, witness, f"{len(inball)} leaves glue")


def is_member_C_m(f: StepFunction, m: int) -> bool:
    """Is the restriction of the step function to p**m Z_p one constant?"""
    if not isinstance(f, StepFunction):
        raise ParameterError("is_member_C_m expects a StepFunction")
    ctx = f.ctx
    cover = f.covering_leaf(m)
    if cover is not None:
        return True
    consts = [lf.series.coeff(0) for lf in f.leaves_in_ball(m)]
    return all(c.agrees_with(consts[0]) for c in consts[1:])


def is_member_pi_an(f: PiecewiseFunction, m: int, k: int) -> CanMembership:
    """Locally algebraic model test: leafwise degree <= k - 2 everywhere
    and the restriction to p**m Z_p glues to one such polynomial."""
    if k < 2:
        raise ParameterError(f"weight k must be >= 2, got {k}")
    for lf in f.leaves:
        if lf.series.degree > k - 2:
            return CanMembership(
                Verdict.NO, None, f"leaf at {lf.center} has degree > k-2"
            )
    res = is_member_Can(f, m)
    if res.status is Verdict.YES and res.witness.degree > k - 2:
        return CanMembership(Verdict.NO, None, "glued series has degree > k-2")
    return res


def mahler_coefficients(f: PiecewiseFunction, count: int) -> List[PadicNumber]:
    """First `count` Mahler coefficients c_n = (forward difference)^n f (0).

    Uses nothing but point evaluation, so it is independent of the
    coefficient algebra; f(j) = sum_n c_n binom(j, n) reconstructs the
    sampled values exactly.
    """
    if count < 1 or count > f.ctx.D + 1:
        raise ParameterError(f"count must lie in [1, D+1], got {count}")
    row = [f.evaluate(f.ctx.from_int(j)) for j in range(count)]
    out = [row[0]]
    for _ in range(count - 1):
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
        out.append(row[0])
    return out


# -- internals ---------------------------------------------------------------


def _check_partition(ctx: PadicContext, leaves: Sequence[Leaf]) -> None:
    """Exact cover check: pairwise disjoint cosets of total measure 1."""
    if not leaves:
        raise ParameterError("a partition needs at least one leaf")
    total = Fraction(0)
    for lf in leaves:
        total += Fraction(1, ctx.p ** lf.level)
    if total != 1:
        raise ParameterError(f"leaf measures sum to {total}, expected 1")
    for i, a in enumerate(leaves):
        for b in leaves[i + 1 :]:
            h = min(a.level, b.level)
            if (a.center - b.center) % ctx.p ** h == 0:
                raise ParameterError(
                    f"cosets overlap: centers {a.center}@{a.level} and {b.center}@{b.level}"
                )


def _re_expand(ctx: PadicContext, lf: Leaf, m: int) -> Tuple[TateSeries, List[float]]:
    """Re-expand the leaf series around 0 at level m, with ceilings.

    For the leaf at center c the glued candidate is g(z) = s(z - c), so

        b_v = sum_{l >= v} s_l binom(l, v) (-c)^(l-v).

    The ceiling of b_v is the reliability limit of the defining sum.  A
    polynomial leaf re-expands exactly (tail certificate +inf); for a
    truncated leaf the certificate of the source level does not transfer
    to the coarser ball, so the candidate claims only its stored minimum.
    """
    s = lf.series
    c = ctx.from_int(lf.center)
    deg = s.degree
    if c.is_zero:
        coeffs = list(s.coeffs)
        ceilings = [INF if a.is_zero else a.val + ctx.N for a in coeffs]
        tail = s.tail_bound
        return TateSeries(ctx, m, coeffs, tail), ceilings
    neg_c_pow = [ctx.one()]
    for _ in range(max(deg, 0)):
        neg_c_pow.append(neg_c_pow[-1] * (-c))
    coeffs: List[PadicNumber] = []
    ceilings: List[float] = []
    for v in range(deg + 1):
        terms = []
        for l in range(v, deg + 1):
            a = s.coeffs[l]
            if not a.is_zero:
                terms.append(a * ctx.binom(l, v) * neg_c_pow[l - v])
        b, ceiling = sum_tracked(ctx, terms)
        coeffs.append(b)
        ceilings.append(ceiling)
    cand = TateSeries(ctx, m, coeffs)
    if s.tail_bound is not INF:
        cand = TateSeries(ctx, m, coeffs, cand.stored_val_c())
    return cand, ceilings


def compare_tracked(
    ctx: PadicContext,
    x: PadicNumber,
    x_ceiling: float,
    y: PadicNumber,
    y_ceiling: float,
) -> Verdict:
    """Starvation-aware comparison of two tracked values.

    YES when the difference is certified to N - kappa relative digits,
    NO when a difference is visible inside the mutual reliable window,
    INDETERMINATE when the window is too shallow to decide.
    """
    if x.is_zero and y.is_zero:
        return Verdict.YES
    scale = 0 if (x.is_zero or y.is_zero) else min(x.val, y.val)
    threshold = scale + ctx.N - ctx.kappa
    window = min(x_ceiling, y_ceiling)
    d = x - y
    dv = INF if d.is_zero else d.val
    if dv < min(window, threshold):
        return Verdict.NO
    if window < threshold:
        return Verdict.INDETERMINATE
    return Verdict.YES


def _series_verdict(
    ctx: PadicContext,
    a: TateSeries,
    a_ceil: Sequence[float],
    b: TateSeries,
    b_ceil: Sequence[float],
) -> Verdict:
    top = max(len(a.coeffs), len(b.coeffs))
    out = Verdict.YES
    for v in range(top):
        ca = a_ceil[v] if v < len(a_ceil) else INF
        cb = b_ceil[v] if v < len(b_ceil) else INF
        out = out & compare_tracked(ctx, a.coeff(v), ca, b.coeff(v), cb)
        if out is Verdict.NO:
            return out
    return out

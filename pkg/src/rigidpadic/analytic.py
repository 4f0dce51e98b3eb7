"""Orbit expansions, valuation certificates and the cokernel model.

For a certified series f(z) = sum_l a_l z^l on p**m Z_p the four
generator orbits expand into series families indexed by the group
coordinate, and each family satisfies an exact valuation inequality on
stored coefficients:

  translation  f(z - y) = sum_v y^v f_v,
               f_v = sum_{l>=v} a_l binom(l, v) (-1)^v z^(l-v),
               val_C(f_v) + m v >= inf_{l>=v} { valp(a_l) + m l }

  mobius       f(z/(1 - x z)) = sum_q x^q f_q   (untwisted part),
               f_q = sum_l a_l binom(l+q-1, q) z^(l+q),
               val_C(f_q) >= val_C(f) + m q

  dilation     f((1 + s') z) = sum_q s'^q f_q,
               f_q = sum_{l>=q} a_l binom(l, q) z^l,
               val_C(f_q) >= inf_{l>=q} { valp(a_l) + m l }

  inv_torus    f(z/(1 + t')) = sum_q t'^q f_q,
               f_q = sum_l a_l binom(l+q-1, q) (-1)^q z^l,
               val_C(f_q) >= val_C(f)

verify_bounds materialises all four families and asserts every
inequality with its margin; a violation is a hard failure carrying the
index, because these bounds are theorems about the construction.

The cokernel model represents classes of pairs (F_alpha, F_beta) of
G(n)-analytic vectors modulo the embedded beta-side locally algebraic
model: two classes coincide when the alpha components agree and the
beta components differ by a cellwise member of the locally algebraic
space at the test level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .actions import InductionCharacter, WeylCellVector
from .errors import (
    BoundViolation,
    DomainError,
    InvariantViolation,
    ParameterError,
    ParameterMismatch,
)
from .functions import (
    CanMembership,
    PiecewiseFunction,
    compare_tracked,
    is_member_Can,
    is_member_pi_an,
    _re_expand,
)
from .padic import INF, PadicContext, PadicNumber
from .series import TateSeries
from .verdict import Verdict

FAMILIES = ("translation", "mobius", "dilation", "inv_torus")


@dataclass(frozen=True)
class OrbitExpansion:
    family: str
    m: int
    source: TateSeries
    components: Tuple[TateSeries, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown orbit family {self.family!r}")


def _check_level(f: TateSeries, m: int) -> None:
    if f.m != m:
        raise DomainError(f"series lives at level {f.m}, expansion requested at {m}")


def orbit_translation(f: TateSeries, m: int) -> OrbitExpansion:
    _check_level(f, m)
    ctx = f.ctx
    deg = f.degree
    comps = []
    for v in range(ctx.D + 1):
        sign = 1 if v % 2 == 0 else -1
        cs = []
        for l in range(v, deg + 1):
            a = f.coeffs[l]
            b = ctx.binom(l, v)
            term = a * b
            cs.append(term if sign > 0 else -term)
        tail = INF if f.tail_bound is INF else f.tail_bound - m * v
        comps.append(TateSeries(ctx, m, cs, tail))
    return OrbitExpansion("translation", m, f, tuple(comps))


def orbit_mobius(f: TateSeries, m: int, k: int) -> OrbitExpansion:
    """Untwisted mobius orbit; the (1 - x z)^(k-2) factor is polynomial
    and tracked separately, so k only gets validated here."""
    if k < 2:
        raise ParameterError(f"weight k must be >= 2, got {k}")
    _check_level(f, m)
    ctx = f.ctx
    deg = f.degree
    vc = f.val_c()
    comps = []
    for q in range(ctx.D + 1):
        cs = [ctx.zero() for _ in range(min(ctx.D, deg + q) + 1)] if deg >= 0 else []
        dropped = False
        for l in range(0, deg + 1):
            a = f.coeffs[l]
            if a.is_zero:
                continue
            j = l + q
            if j > ctx.D:
                dropped = True
                continue
            b = ctx.binom(l + q - 1, q)
            if not b.is_zero:
                cs[j] = a * b
        exact = f.tail_bound is INF and not dropped
        tail = INF if exact else (vc + m * q if vc is not INF else INF)
        comps.append(TateSeries(ctx, m, cs, tail))
    return OrbitExpansion("mobius", m, f, tuple(comps))


def orbit_dilation(f: TateSeries, m: int) -> OrbitExpansion:
    _check_level(f, m)
    ctx = f.ctx
    deg = f.degree
    comps = []
    for q in range(ctx.D + 1):
        cs = [ctx.zero() for _ in range(deg + 1)] if deg >= q else []
        for l in range(q, deg + 1):
            a = f.coeffs[l]
            if not a.is_zero:
                cs[l] = a * ctx.binom(l, q)
        comps.append(TateSeries(ctx, m, cs, f.tail_bound))
    return OrbitExpansion("dilation", m, f, tuple(comps))


def orbit_inv_torus(f: TateSeries, m: int) -> OrbitExpansion:
    _check_level(f, m)
    ctx = f.ctx
    deg = f.degree
    comps = []
    for q in range(ctx.D + 1):
        sign = 1 if q % 2 == 0 else -1
        cs = []
        for l in range(0, deg + 1):
            a = f.coeffs[l]
            b = ctx.binom(l + q - 1, q)
            term = a * b
            cs.append(term if sign > 0 else -term)
        comps.append(TateSeries(ctx, m, cs, f.tail_bound))
    return OrbitExpansion("inv_torus", m, f, tuple(comps))


def expand_all(f: TateSeries, m: int, k: int = 2) -> Dict[str, OrbitExpansion]:
    return {
        "translation": orbit_translation(f, m),
        "mobius": orbit_mobius(f, m, k),
        "dilation": orbit_dilation(f, m),
        "inv_torus": orbit_inv_torus(f, m),
    }


# -- bound verification -------------------------------------------------------


@dataclass(frozen=True)
class BoundEntry:
    family: str
    index: int
    val_c: float
    bound: float
    margin: float

    @property
    def ok(self) -> bool:
        return self.margin >= 0

    def to_dict(self) -> dict:
        def enc(x):
            return "inf" if x is INF else ("-inf" if x == -INF else int(x))

        return {
            "family": self.family,
            "index": self.index,
            "val_C": enc(self.val_c),
            "bound": enc(self.bound),
            "margin": enc(self.margin),
        }


@dataclass(frozen=True)
class BoundReport:
    m: int
    entries: Tuple[BoundEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def first_violation(self) -> Optional[BoundEntry]:
        for e in self.entries:
            if not e.ok:
                return e
        return None

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "ok": self.ok,
            "entries": [e.to_dict() for e in self.entries],
        }


def _margin(lhs: float, rhs: float) -> float:
    if rhs is INF:
        return INF
    if lhs is INF:
        return INF
    return lhs - rhs


def bound_report(f: TateSeries, m: int, tamper: Optional[Tuple[str, int]] = None) -> BoundReport:
    """Per-index margins of all four orbit inequalities on stored data.

    `tamper` deliberately corrupts one component (test hook for the
    failure path): the named component is scaled down past its margin.
    """
    ctx = f.ctx
    expansions = expand_all(f, m)
    if tamper is not None:
        fam, idx = tamper
        exp = expansions[fam]
        entry_lhs, entry_rhs = _family_bounds(exp, f, m)
        margin = _margin(entry_lhs[idx], entry_rhs[idx])
        if margin is INF:
            raise ParameterError(f"component {fam}[{idx}] has no finite margin to break")
        bad = exp.components[idx].scale(Fraction(1, ctx.p ** (int(margin) + 1)))
        comps = list(exp.components)
        comps[idx] = bad
        expansions[fam] = OrbitExpansion(fam, m, f, tuple(comps))
    entries: List[BoundEntry] = []
    for fam in FAMILIES:
        exp = expansions[fam]
        lhs, rhs = _family_bounds(exp, f, m)
        for idx in range(len(exp.components)):
            entries.append(
                BoundEntry(fam, idx, lhs[idx], rhs[idx], _margin(lhs[idx], rhs[idx]))
            )
    return BoundReport(m, tuple(entries))


def _family_bounds(exp: OrbitExpansion, f: TateSeries, m: int):
    """(lhs, rhs) arrays: the certified quantity and its lower bound."""
    suffix = f.suffix_levels()

    def suf(v: int) -> float:
        return suffix[v] if v < len(suffix) else INF

    stored = f.stored_val_c()
    lhs = []
    rhs = []
    for idx, comp in enumerate(exp.components):
        c = comp.stored_val_c()
        if exp.family == "translation":
            lhs.append(c + m * idx if c is not INF else INF)
            rhs.append(suf(idx))
        elif exp.family == "mobius":
            lhs.append(c)
            rhs.append(stored + m * idx if stored is not INF else INF)
        elif exp.family == "dilation":
            lhs.append(c)
            rhs.append(suf(idx))
        else:  # inv_torus
            lhs.append(c)
            rhs.append(stored)
    return lhs, rhs


def verify_bounds(f: TateSeries, m: int, tamper: Optional[Tuple[str, int]] = None) -> BoundReport:
    """bound_report plus a hard failure on any negative margin."""
    report = bound_report(f, m, tamper)
    bad = report.first_violation()
    if bad is not None:
        raise BoundViolation(
            f"orbit bound violated at {bad.family}[{bad.index}]: "
            f"val_C = {bad.val_c}, bound = {bad.bound}",
            report,
        )
    return report


# -- membership, two routes ---------------------------------------------------


def is_analytic_vector(f: PiecewiseFunction, m: int) -> Verdict:
    """Re-expansion membership, cross-checked on the merged witness.

    When the gluing succeeds the witness' own orbit expansions must obey
    the uniform tail bound val_C(f_v) + m v >= val_C(witness); a failure
    there is an internal error, never a verdict.
    """
    res = is_member_Can(f, m)
    if res.status is not Verdict.YES:
        return res.status
    w = res.witness
    base = w.val_c()
    for fam, exp in expand_all(w, m).items():
        for v, comp in enumerate(exp.components):
            c = comp.stored_val_c()
            lhs = INF if c is INF else c + m * v
            if lhs < base:
                raise InvariantViolation(
                    f"witness orbit tail bound failed at {fam}[{v}]"
                )
    return Verdict.YES


def orbit_membership(f: PiecewiseFunction, m: int) -> Verdict:
    """Independent membership route built on evaluation.

    A candidate continuation is re-expanded from one leaf (the in-ball
    leaf with the largest center), its orbit expansions are required to
    satisfy the uniform tail bound, and the candidate is then compared
    against every other in-ball leaf at three sample points per leaf
    with starvation-aware comparisons.
    """
    if m < 0:
        raise ParameterError(f"ball level m must be >= 0, got {m}")
    ctx = f.ctx
    cover = f.covering_leaf(m)
    if cover is not None:
        candidate = cover.series.recenter(ctx.zero(), m)
        _orbit_tail_guard(candidate, m)
        return Verdict.YES
    inball = f.leaves_in_ball(m)
    if not inball:
        raise InvariantViolation("partition leaves no cover of the ball")
    source = max(inball, key=lambda lf: (lf.center, lf.level))
    candidate, _ = _re_expand(ctx, source, m)
    _orbit_tail_guard(candidate, m)
    verdict = Verdict.YES
    for lf in inball:
        if lf is source:
            continue
        step = ctx.p ** lf.level
        for j in range(3):
            z = ctx.from_int(lf.center + j * step)
            got, got_ceil = candidate.evaluate_tracked(z)
            want, want_ceil = lf.series.evaluate_tracked(z - ctx.from_int(lf.center))
            verdict = verdict & compare_tracked(ctx, got, got_ceil, want, want_ceil)
            if verdict is Verdict.NO:
                return verdict
    return verdict


def _orbit_tail_guard(w: TateSeries, m: int) -> None:
    base = w.val_c()
    for fam, exp in expand_all(w, m).items():
        for v, comp in enumerate(exp.components):
            c = comp.stored_val_c()
            lhs = INF if c is INF else c + m * v
            if lhs < base:
                raise InvariantViolation(f"candidate orbit tail bound failed at {fam}[{v}]")


# -- the cokernel model -------------------------------------------------------


class GAElement:
    """Cellwise G(n)-analytic vector with per-cell gluing certificates."""

    __slots__ = ("vector", "n", "m", "certificates")

    def __init__(self, vector: WeylCellVector, n: int, m: int):
        if n < 1:
            raise ParameterError(f"congruence level n must be >= 1, got {n}")
        if m <= n:
            raise DomainError(f"test level m = {m} must exceed n = {n}")
        self.vector = vector
        self.n = n
        self.m = m
        certs = {}
        for name, cell in (("identity", vector.identity), ("w0", vector.w0)):
            res = is_member_Can(cell, m)
            if res.status is not Verdict.YES:
                raise DomainError(
                    f"{name} cell is not analytic at level {m}: {res.detail}"
                )
            certs[name] = res
        self.certificates = certs

    @property
    def ctx(self) -> PadicContext:
        return self.vector.ctx

    @classmethod
    def zero(cls, ctx: PadicContext, n: int, m: int) -> "GAElement":
        z = PiecewiseFunction.constant(ctx, 0)
        return cls(WeylCellVector(z, z), n, m)

    def agrees_with(self, other: "GAElement", slack: int | None = None) -> bool:
        return self.vector.identity.agrees_with(
            other.vector.identity, slack
        ) and self.vector.w0.agrees_with(other.vector.w0, slack)

    def __sub__(self, other: "GAElement") -> WeylCellVector:
        """Cellwise difference as raw functions (no re-certification)."""
        return WeylCellVector(
            self.vector.identity - other.vector.identity,
            self.vector.w0 - other.vector.w0,
        )


class CokernelElement:
    """Class representative (F_alpha, F_beta) for the quotient model."""

    __slots__ = ("chi", "n", "m", "F_alpha", "F_beta")

    def __init__(
        self,
        chi: InductionCharacter,
        n: int,
        m: int,
        F_alpha: GAElement,
        F_beta: GAElement,
    ):
        if (F_alpha.n, F_alpha.m) != (n, m) or (F_beta.n, F_beta.m) != (n, m):
            raise ParameterMismatch("component levels differ from the class levels")
        if not F_alpha.ctx.same(F_beta.ctx):
            raise ParameterMismatch("components belong to different contexts")
        self.chi = chi
        self.n = n
        self.m = m
        self.F_alpha = F_alpha
        self.F_beta = F_beta

    @property
    def ctx(self) -> PadicContext:
        return self.F_alpha.ctx

    def params(self) -> tuple:
        return (self.chi.alpha, self.chi.beta, self.chi.k, self.n, self.m)


def _beta_embedding_equal(c1: CokernelElement, c2: CokernelElement) -> bool:
    """Default embedding: the beta-side locally algebraic model sits in
    the beta component only, so classes agree iff the alpha components
    match and the beta difference is cellwise locally algebraic."""
    if not c1.F_alpha.agrees_with(c2.F_alpha):
        return False
    diff = c1.F_beta - c2.F_beta
    for cell in (diff.identity, diff.w0):
        if is_member_pi_an(cell, c1.m, c1.chi.k).status is not Verdict.YES:
            return False
    return True


EMBEDDINGS = {"beta": _beta_embedding_equal}


def cokernel_equal(c1: CokernelElement, c2: CokernelElement, embedding: str = "beta") -> bool:
    if c1.params() != c2.params():
        raise ParameterMismatch(
            f"class parameters differ: {c1.params()} vs {c2.params()}"
        )
    try:
        strategy = EMBEDDINGS[embedding]
    except KeyError:
        raise ParameterError(f"unknown embedding strategy {embedding!r}") from None
    return strategy(c1, c2)


def witness_nonzero(
    ctx: PadicContext,
    alpha: PadicNumber,
    beta: PadicNumber,
    k: int,
    n: int,
    m: int,
) -> Tuple[CokernelElement, dict]:
    """A class provably distinct from zero: F_alpha the constant 1 on the
    identity cell, F_beta = 0.  The proof record explains why no beta-side
    member can cancel the alpha component.

    The strict eigenvalue constraints are enforced for k >= 3; k = 2
    admits no integral-valuation solution, so only the shape checks
    apply there and the small-slope flag is reported as stated.
    """
    chi = InductionCharacter(alpha, beta, k, strict=False)
    if k >= 3:
        bad = chi.violations()
        if bad:
            raise ParameterError("; ".join(bad))
    one_cell = PiecewiseFunction.constant(ctx, 1)
    zero_cell = PiecewiseFunction.constant(ctx, 0)
    F_alpha = GAElement(WeylCellVector(one_cell, zero_cell), n, m)
    F_beta = GAElement.zero(ctx, n, m)
    elem = CokernelElement(chi, n, m, F_alpha, F_beta)
    zero = CokernelElement(chi, n, m, GAElement.zero(ctx, n, m), GAElement.zero(ctx, n, m))
    distinct = not cokernel_equal(elem, zero)
    if not distinct:
        raise InvariantViolation("constructed witness collapsed to the zero class")
    proof = {
        "alpha_component": "constant 1 on the identity cell",
        "beta_component": "0",
        "embedded_image_touches_alpha": False,
        "alpha_difference_zero": False,
        "small_slope": chi.small_slope,
        "conclusion": "class is nonzero under the beta embedding",
    }
    return elem, proof

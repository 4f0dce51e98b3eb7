"""Exact bounded-precision arithmetic in Q_p.

A nonzero value is stored in capped-relative form p**val * unit where
the valuation is exact and the unit is an integer residue prime to p,
known modulo p**N.  Zero at working precision is val = +inf, unit = 0.
The context fixes the odd prime p, the relative precision N, the
truncation degree D used by series built on top of this module, and
the comparison slack kappa.

Valuations are normalised so that valp(p) = 1.

All values are immutable and every operation is pure, so objects can be
shared freely between threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Tuple, Union

from .errors import DivisionError, DomainError, ParameterError, PrecisionError

INF = math.inf

Coercible = Union["PadicNumber", int, Fraction, str]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _int_valuation(n: int, p: int) -> int:
    """Exponent of p dividing the nonzero integer n."""
    if n == 0:
        raise ValueError("p-adic valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicContext:
    """Shared arithmetic parameters (p, N, D) plus the slack kappa.

    Two stored values are considered equal at precision when they share
    at least N - kappa relative digits; kappa is the budget that covers
    the precision loss of composite operations (default 4 digits).
    """

    __slots__ = ("p", "N", "D", "kappa", "pN", "_binom_cache")

    def __init__(self, p: int = 5, N: int = 40, D: int = 64, kappa: int = 4):
        if not _is_prime(p) or p == 2:
            raise ParameterError(f"p must be an odd prime, got {p}")
        if N < 1:
            raise ParameterError(f"precision N must be >= 1, got {N}")
        if D < 0:
            raise ParameterError(f"truncation degree D must be >= 0, got {D}")
        if not 0 <= kappa <= N:
            raise ParameterError(f"slack kappa must lie in [0, N], got {kappa}")
        self.p = p
        self.N = N
        self.D = D
        self.kappa = kappa
        self.pN = p ** N
        self._binom_cache = {}

    # -- identity -----------------------------------------------------

    def same(self, other: "PadicContext") -> bool:
        return (self.p, self.N, self.D) == (other.p, other.N, other.D)

    def __eq__(self, other) -> bool:
        return isinstance(other, PadicContext) and self.same(other)

    def __hash__(self) -> int:
        return hash((self.p, self.N, self.D))

    def __repr__(self) -> str:
        return f"PadicContext(p={self.p}, N={self.N}, D={self.D}, kappa={self.kappa})"

    # -- element factories --------------------------------------------

    def zero(self) -> "PadicNumber":
        return PadicNumber(self, INF, 0, _checked=True)

    def one(self) -> "PadicNumber":
        return PadicNumber(self, 0, 1, _checked=True)

    def from_int(self, n: int) -> "PadicNumber":
        if n == 0:
            return self.zero()
        v = _int_valuation(n, self.p)
        u = (n // self.p ** v) % self.pN
        return PadicNumber(self, v, u, _checked=True)

    def from_fraction(self, q: Fraction) -> "PadicNumber":
        if q == 0:
            return self.zero()
        vn = _int_valuation(q.numerator, self.p)
        vd = _int_valuation(q.denominator, self.p)
        un = (q.numerator // self.p ** vn) % self.pN
        ud = q.denominator // self.p ** vd
        u = (un * pow(ud, -1, self.pN)) % self.pN
        return PadicNumber(self, vn - vd, u, _checked=True)

    def num(self, x: Coercible) -> "PadicNumber":
        """Coerce an int, Fraction, decimal/rational string or PadicNumber."""
        if isinstance(x, PadicNumber):
            if not self.same(x.ctx):
                raise ParameterError("value belongs to a different context")
            return x
        if isinstance(x, bool):
            raise ParameterError("refusing to coerce a bool to Q_p")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if isinstance(x, str):
            return self.from_fraction(Fraction(x))
        raise ParameterError(f"cannot coerce {type(x).__name__} to Q_p")

    def binom(self, n: int, k: int) -> "PadicNumber":
        """binom(n, k) reduced into the context, cached.

        Only the combinatorially meaningful corner cases are special:
        k = 0 gives 1 for every n (including n = -1, the empty product),
        and k > n >= 0 gives 0.
        """
        key = (n, k)
        hit = self._binom_cache.get(key)
        if hit is not None:
            return hit
        if k == 0:
            value = self.one()
        elif n < 0 or k < 0 or k > n:
            value = self.zero()
        else:
            value = self.from_int(math.comb(n, k))
        self._binom_cache[key] = value
        return value


class PadicNumber:
    """Immutable element of Q_p at the context's working precision."""

    __slots__ = ("ctx", "val", "unit")

    def __init__(self, ctx: PadicContext, val, unit: int, _checked: bool = False):
        self.ctx = ctx
        if _checked:
            self.val = val
            self.unit = unit
            return
        # normalise: strip p factors that additions may have produced
        unit %= ctx.pN
        if unit == 0:
            self.val = INF
            self.unit = 0
            return
        shift = 0
        while unit % ctx.p == 0:
            unit //= ctx.p
            shift += 1
        self.val = val + shift
        self.unit = unit % ctx.pN

    # -- predicates ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.val is INF or self.val == INF

    @property
    def is_unit(self) -> bool:
        return self.val == 0

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "PadicNumber") -> "PadicNumber":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        a, b = (self, other) if self.val <= other.val else (other, self)
        d = b.val - a.val
        if d >= a.ctx.N:
            return a
        return PadicNumber(a.ctx, a.val, a.unit + b.unit * a.ctx.p ** d)

    def __neg__(self) -> "PadicNumber":
        if self.is_zero:
            return self
        return PadicNumber(self.ctx, self.val, self.ctx.pN - self.unit, _checked=True)

    def __sub__(self, other: "PadicNumber") -> "PadicNumber":
        return self + (-other)

    def __mul__(self, other: "PadicNumber") -> "PadicNumber":
        if self.is_zero or other.is_zero:
            return self.ctx.zero()
        return PadicNumber(
            self.ctx,
            self.val + other.val,
            (self.unit * other.unit) % self.ctx.pN,
            _checked=True,
        )

    def invert(self) -> "PadicNumber":
        if self.is_zero:
            raise DivisionError("inverse of zero at working precision")
        return PadicNumber(
            self.ctx, -self.val, pow(self.unit, -1, self.ctx.pN), _checked=True
        )

    def __truediv__(self, other: "PadicNumber") -> "PadicNumber":
        return self * other.invert()

    def __pow__(self, e: int) -> "PadicNumber":
        if e == 0:
            return self.ctx.one()
        if self.is_zero:
            if e < 0:
                raise DivisionError("negative power of zero")
            return self
        # pow handles negative exponents via the modular inverse
        u = pow(self.unit, e, self.ctx.pN)
        return PadicNumber(self.ctx, self.val * e, u, _checked=True)

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other) -> bool:
        """Exact equality of the stored representation."""
        return (
            isinstance(other, PadicNumber)
            and self.ctx.same(other.ctx)
            and self.val == other.val
            and self.unit == other.unit
        )

    def __hash__(self) -> int:
        return hash((self.val, self.unit))

    def agrees_with(self, other: "PadicNumber", slack: int | None = None) -> bool:
        """Equality at precision: shares at least N - slack relative digits.

        With one side zero at precision the other must vanish to absolute
        depth N - slack, since a stored zero carries no scale of its own.
        """
        k = self.ctx.kappa if slack is None else slack
        need = self.ctx.N - k
        if self.is_zero and other.is_zero:
            return True
        if self.is_zero or other.is_zero:
            live = other if self.is_zero else self
            return live.val >= need
        d = self - other
        if d.is_zero:
            return True
        return d.val >= min(self.val, other.val) + need

    # -- conversions ----------------------------------------------------

    def to_fraction(self) -> Fraction:
        """Canonical rational representative p**val * unit."""
        if self.is_zero:
            return Fraction(0)
        if self.val >= 0:
            return Fraction(self.unit * self.ctx.p ** self.val)
        return Fraction(self.unit, self.ctx.p ** (-self.val))

    def to_string(self) -> str:
        """Decimal string of the canonical rational representative."""
        q = self.to_fraction()
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

    def residue(self, level: int) -> int:
        """Canonical residue in [0, p**level) of an integral element."""
        if level < 0:
            raise ParameterError(f"level must be >= 0, got {level}")
        if self.is_zero:
            return 0
        if self.val < 0:
            raise DomainError("residue of a non-integral element")
        if level > self.val + self.ctx.N:
            raise PrecisionError(
                f"residue mod p^{level} exceeds stored precision p^{self.val + self.ctx.N}"
            )
        return (self.unit * self.ctx.p ** self.val) % self.ctx.p ** level

    def __repr__(self) -> str:
        if self.is_zero:
            return f"O({self.ctx.p}^{self.ctx.N})"
        return f"{self.unit}*{self.ctx.p}^{self.val} + O({self.ctx.p}^{self.val + self.ctx.N})"


# -- module-level operations -------------------------------------------


def valp(x: PadicNumber):
    """Normalised valuation, valp(p) = 1; +inf for zero at precision."""
    return x.val


def invert(x: PadicNumber) -> PadicNumber:
    return x.invert()


def binom(ctx: PadicContext, n: int, k: int) -> PadicNumber:
    return ctx.binom(n, k)


def padic_log(u: PadicNumber) -> PadicNumber:
    """Iwasawa logarithm of a 1-unit via the alternating series.

        log u = sum_{n>=1} (-1)^{n+1} (u-1)^n / n,   valp(u-1) >= 1.

    The partial sum is accumulated as an exact Fraction of the canonical
    integer representative of u - 1 and reduced once at the end, so the
    divisions by n cost no digits.  The tail is cut when every omitted
    term has valuation beyond the stored window val(u-1) + N.
    """
    ctx = u.ctx
    t = u - ctx.one()
    if t.is_zero:
        return ctx.zero()
    j = t.val
    if j < 1:
        raise DomainError(f"padic_log needs valp(u - 1) >= 1, got {j}")
    rep = t.unit * ctx.p ** j  # exact integer representative of u - 1
    target = ctx.N + j + 1
    total = Fraction(0)
    power = 1
    n = 1
    ilog = 0  # floor(log_p n), tracked exactly
    while True:
        if ctx.p ** (ilog + 1) <= n:
            ilog += 1
        # n*j - ilog bounds the term valuation from below and is
        # non-decreasing in n for j >= 1, so the first crossing is final
        if n > 1 and n * j - ilog > target:
            break
        power *= rep
        term = Fraction(power, n)
        total = total + term if n % 2 == 1 else total - term
        n += 1
    return ctx.from_fraction(total)


def sum_tracked(ctx: PadicContext, terms: Iterable[PadicNumber]) -> Tuple[PadicNumber, float]:
    """Sum with an honest absolute reliability ceiling.

    Returns (sum, ceiling) where digits of the sum at or beyond p**ceiling
    are not trustworthy: each contributing term is only known modulo
    p**(val + N), so the sum is known modulo p**(min val + N).  An empty
    or all-zero sum is exact (ceiling +inf).
    """
    total = ctx.zero()
    floor = INF
    for t in terms:
        total = total + t
        if not t.is_zero and t.val < floor:
            floor = t.val
    return total, (INF if floor is INF else floor + ctx.N)

"""Exact Q_p scalars with explicit precision tracking.

A nonzero value is p^v * u with the unit residue u in [1, p^prec) coprime to
p; the value is known modulo p^(v+prec).  A value indistinguishable from
zero is a tracked state (u == 0, with ``zprec`` the proven exponent:
|x| <= p^-zprec; ``zprec is None`` means exactly zero).  All operations are
pure, results are canonical, and the tracked precision is the tightest that
the inputs actually prove -- never a looser claim presented as tighter.

The logarithm is the Iwasawa branch: log(p) = 0, roots of unity are killed.
For p = 2 the scalar log is computed as log(u) = log(u^2)/2 with
u^2 = 1 mod 8, so the whole odd-unit group is covered.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ._primes import is_prime
from ._util import vp_int
from .errors import (
    IndistinguishableAtPrecision,
    NotASquare,
    NotAUnit,
    NotPrime,
    PrimeMismatch,
    ZeroDenominator,
    ZeroInput,
)


def _ilog(n: int, p: int) -> int:
    """floor(log_p n) for n >= 1."""
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k


def log_series_cutoff(p: int, target: int) -> int:
    """Smallest nu0 such that nu - floor(log_p nu) >= target for all nu >= nu0.

    nu - floor(log_p nu) is non-decreasing in nu, so the first index where the
    bound holds works for every later term of the logarithm series.
    """
    nu = 1
    while nu - _ilog(nu, p) < target:
        nu += 1
    return nu


def series_guard(p: int, n: int) -> tuple[int, int]:
    """(working_abs_precision, cutoff) for a log-type series delivering n digits.

    Guard digits absorb the division-by-nu losses: guard = floor(log_p nu_max)+2,
    plus one extra digit for p = 2 where the square-then-halve rule costs one.
    The guard and the cutoff depend on each other, so iterate to a fixed point.
    """
    extra = 1 if p == 2 else 0
    guard = 2 + extra
    while True:
        cutoff = log_series_cutoff(p, n + guard)
        g2 = _ilog(cutoff, p) + 2 + extra
        if g2 <= guard:
            return n + guard, cutoff
        guard = g2


class Padic:
    """One element of Q_p at finite precision.  Immutable, hashable, canonical."""

    __slots__ = ("p", "v", "u", "prec", "zprec")

    def __init__(self, p: int, v: int, u: int, prec: int, zprec: int | None = None):
        # Trusted raw constructor; use the classmethods to build values.
        self.p = p
        self.v = v
        self.u = u
        self.prec = prec
        self.zprec = zprec

    # -- construction -----------------------------------------------------

    @classmethod
    def _nonzero(cls, p: int, v: int, u: int, prec: int) -> "Padic":
        if prec < 1:
            raise IndistinguishableAtPrecision(
                f"no significant digit survives (relative precision {prec})"
            )
        u %= p**prec
        if u % p == 0:
            raise ValueError("unit residue divisible by p")
        return cls(p, v, u, prec, None)

    @classmethod
    def zero(cls, p: int, zprec: int | None = None) -> "Padic":
        """Zero to precision p^-zprec; zprec None means exactly zero."""
        return cls(p, 0, 0, 0, zprec)

    @classmethod
    def from_rational(cls, num: int, den: int, p: int, prec: int) -> "Padic":
        """Embed num/den into Q_p with prec significant digits."""
        if den == 0:
            raise ZeroDenominator("denominator is zero")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if prec < 1:
            raise ValueError("precision must be >= 1")
        if num == 0:
            return cls.zero(p, prec)
        vn = vp_int(num, p)
        vd = vp_int(den, p)
        un = num // p**vn
        ud = den // p**vd
        mod = p**prec
        u = un * pow(ud, -1, mod) % mod
        return cls._nonzero(p, vn - vd, u, prec)

    @classmethod
    def from_fraction(cls, x: Fraction | int, p: int, prec: int) -> "Padic":
        if isinstance(x, Fraction):
            return cls.from_rational(x.numerator, x.denominator, p, prec)
        return cls.from_rational(int(x), 1, p, prec)

    @classmethod
    def from_int_mod(cls, c: int, p: int, abs_prec: int) -> "Padic":
        """A value known to equal the integer c modulo p^abs_prec."""
        if abs_prec < 1:
            raise ValueError("absolute precision must be >= 1")
        c %= p**abs_prec
        if c == 0:
            return cls.zero(p, abs_prec)
        v = vp_int(c, p)
        return cls._nonzero(p, v, c // p**v, abs_prec - v)

    @classmethod
    def one(cls, p: int, prec: int) -> "Padic":
        return cls._nonzero(p, 0, 1, prec)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.u == 0

    @property
    def abs_prec(self):
        """Exponent A: the value is known modulo p^A (math.inf if exact zero)."""
        if self.is_zero:
            return math.inf if self.zprec is None else self.zprec
        return self.v + self.prec

    def valuation(self) -> int:
        if self.is_zero:
            raise ZeroInput("valuation of (a value indistinguishable from) zero")
        return self.v

    def unit_part(self) -> "Padic":
        if self.is_zero:
            raise ZeroInput("unit part of zero")
        return Padic._nonzero(self.p, 0, self.u, self.prec)

    def lift(self) -> int:
        """Smallest nonnegative integer representative of p^v*u (v >= 0 only)."""
        if self.is_zero:
            return 0
        if self.v < 0:
            raise ValueError("no integer lift: negative valuation")
        return self.u * self.p**self.v

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, x) -> "Padic":
        if isinstance(x, Padic):
            if x.p != self.p:
                raise PrimeMismatch(f"p={self.p} vs p={x.p}")
            return x
        if isinstance(x, int):
            if x == 0:
                return Padic.zero(self.p, None)
            # exact integer: give it enough digits that it never limits us
            v = vp_int(x, self.p)
            need = max(1, self._exact_budget() - v)
            mod = self.p**need
            return Padic._nonzero(self.p, v, (x // self.p**v) % mod, need)
        if isinstance(x, Fraction):
            if x == 0:
                return Padic.zero(self.p, None)
            return Padic.from_rational(
                x.numerator, x.denominator, self.p, max(1, self._exact_budget())
            )
        return NotImplemented

    def _exact_budget(self) -> int:
        # Relative digits an exact scalar needs so that it is never the
        # precision bottleneck next to self.
        if self.is_zero:
            return (self.zprec or 1) + 1
        return self.prec + abs(self.v) + 1

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.p
        if self.is_zero and o.is_zero:
            if self.zprec is None:
                return o
            if o.zprec is None:
                return self
            return Padic.zero(p, min(self.zprec, o.zprec))
        if self.is_zero or o.is_zero:
            z, nz = (self, o) if self.is_zero else (o, self)
            if z.zprec is None:
                return nz
            m = min(z.zprec, nz.v + nz.prec)
            if nz.v >= m:
                return Padic.zero(p, m)
            return Padic._nonzero(p, nz.v, nz.u, m - nz.v)
        m = min(self.v + self.prec, o.v + o.prec)
        w = min(self.v, o.v)
        if m - w < 1:
            return Padic.zero(p, m)
        mod = p ** (m - w)
        t = (self.u * p ** (self.v - w) + o.u * p ** (o.v - w)) % mod
        if t == 0:
            return Padic.zero(p, m)
        vt = vp_int(t, p)
        if w + vt >= m:
            return Padic.zero(p, m)
        return Padic._nonzero(p, w + vt, t // p**vt, m - w - vt)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        mod = self.p**self.prec
        return Padic._nonzero(self.p, self.v, (-self.u) % mod, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.p
        if self.is_zero or o.is_zero:
            if (self.is_zero and self.zprec is None) or (o.is_zero and o.zprec is None):
                return Padic.zero(p, None)
            # |xy| <= p^-(za + vb) etc.
            za = self.zprec if self.is_zero else None
            zb = o.zprec if o.is_zero else None
            if za is not None and zb is not None:
                return Padic.zero(p, za + zb)
            if za is not None:
                return Padic.zero(p, za + o.v)
            return Padic.zero(p, zb + self.v)
        prec = min(self.prec, o.prec)
        return Padic._nonzero(p, self.v + o.v, self.u * o.u % p**prec, prec)

    __rmul__ = __mul__

    def inv(self) -> "Padic":
        if self.is_zero:
            raise ZeroInput("inverse of (a value indistinguishable from) zero")
        mod = self.p**self.prec
        return Padic._nonzero(self.p, -self.v, pow(self.u, -1, mod), self.prec)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        if self.is_zero:
            if k == 0:
                raise ZeroInput("0^0 at finite precision")
            if self.zprec is None:
                return self
            return Padic.zero(self.p, k * self.zprec)
        out = Padic._nonzero(self.p, 0, 1, self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Padic):
            return NotImplemented
        return (
            self.p == other.p
            and self.u == other.u
            and self.v == other.v
            and self.prec == other.prec
            and self.zprec == other.zprec
        )

    def __hash__(self):
        return hash((self.p, self.v, self.u, self.prec, self.zprec))

    def eq_mod(self, other, k: int) -> bool:
        """Whether self = other mod p^k; raises if the data cannot decide."""
        o = self._coerce(other)
        d = self - o
        if d.is_zero:
            if d.zprec is None or d.zprec >= k:
                return True
            raise IndistinguishableAtPrecision(
                f"difference known only modulo {self.p}^{d.zprec}, asked mod {self.p}^{k}"
            )
        return d.v >= k

    def dist_valuation(self, other) -> tuple[int | None, bool]:
        """(v_p(self-other), exact) -- exact False means only the lower bound
        v >= value is proven (difference indistinguishable from zero);
        (None, False) if the difference is exactly zero."""
        d = self - self._coerce(other)
        if d.is_zero:
            return (d.zprec, False)
        return (d.v, True)

    def truncate_abs(self, a: int) -> "Padic":
        """Forget digits beyond p^a (never claims more than was known)."""
        if self.is_zero:
            if self.zprec is None or self.zprec > a:
                return Padic.zero(self.p, a)
            return self
        if self.v >= a:
            return Padic.zero(self.p, min(a, self.v + self.prec))
        return Padic._nonzero(self.p, self.v, self.u, min(self.prec, a - self.v))

    # -- display / serialization --------------------------------------------

    def digits(self) -> list[int]:
        """Base-p digits of the unit residue, least significant first."""
        if self.is_zero:
            return []
        out = []
        u = self.u
        for _ in range(self.prec):
            u, r = divmod(u, self.p)
            out.append(r)
        return out

    def __str__(self):
        if self.is_zero:
            if self.zprec is None:
                return "0"
            return f"O({self.p}^{self.zprec})"
        if self.v == 0:
            return f"{self.u} + O({self.p}^{self.prec})"
        return f"{self.u}*{self.p}^{self.v} + O({self.p}^{self.v + self.prec})"

    __repr__ = __str__

    def to_json(self) -> dict:
        if self.is_zero:
            return {"p": self.p, "zero": True, "abs_precision": self.zprec}
        return {
            "p": self.p,
            "valuation": self.v,
            "unit": str(self.u),
            "precision": self.prec,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Padic":
        if doc.get("zero"):
            return cls.zero(doc["p"], doc["abs_precision"])
        return cls._nonzero(
            doc["p"], doc["valuation"], int(doc["unit"]), doc["precision"]
        )


def teichmuller(a: Padic) -> Padic:
    """The root of unity congruent to the unit a mod p (mod 4 for p = 2).

    Computed by iterating x -> x^p, which gains one correct digit per step.
    """
    if a.is_zero or a.v != 0:
        raise NotAUnit("Teichmuller representative needs a unit (valuation 0)")
    p, prec = a.p, a.prec
    if p == 2:
        if prec < 2:
            raise IndistinguishableAtPrecision("need the unit mod 4")
        u = 1 if a.u % 4 == 1 else (1 << prec) - 1
        return Padic._nonzero(2, 0, u, prec)
    mod = p**prec
    x = a.u % mod
    for _ in range(prec + 1):
        y = pow(x, p, mod)
        if y == x:
            break
        x = y
    return Padic._nonzero(p, 0, x, prec)


def _log_one_unit_int(x_int: int, p: int, abs_prec: int) -> Padic:
    """log(1 - x) summed as -sum x^nu / nu for x = x_int known mod p^abs_prec,
    v_p(x) >= 1.  Precision is tracked through Padic arithmetic, so the result
    carries exactly what the input proves."""
    x = Padic.from_int_mod(x_int, p, abs_prec)
    if x.is_zero:
        return Padic.zero(p, abs_prec)
    cutoff = log_series_cutoff(p, abs_prec)
    acc = Padic.zero(p, None)
    power = x
    for nu in range(1, cutoff + 1):
        if power.is_zero and power.abs_prec >= abs_prec:
            break
        acc = acc - power / nu
        power = power * x
    return acc.truncate_abs(abs_prec)


def padic_log(a: Padic) -> Padic:
    """Iwasawa-branch logarithm: drops the valuation (log p = 0), kills the
    Teichmuller part, and sums the usual series on the remaining 1-unit.

    The result is absolute precision a.prec: a unit known to that many digits
    determines its log modulo the same power of p.
    """
    if a.is_zero:
        raise ZeroInput("log of (a value indistinguishable from) zero")
    p, prec = a.p, a.prec
    if p == 2:
        # log u = log(u^2)/2 with u^2 = 1 mod 8; the square is known one
        # digit beyond the unit itself.
        u2 = a.u * a.u % (1 << (prec + 1))
        val = _log_one_unit_int((1 - u2) % (1 << (prec + 1)), 2, prec + 1)
        return (val / 2).truncate_abs(prec)
    w = teichmuller(a.unit_part())
    mod = p**prec
    u1 = a.u * pow(w.u, -1, mod) % mod
    return _log_one_unit_int((1 - u1) % mod, p, prec).truncate_abs(prec)


def _sqrt_mod_p(n: int, p: int) -> int:
    """Tonelli-Shanks square root mod an odd prime (n assumed a QR)."""
    n %= p
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def padic_sqrt(a: Padic) -> Padic:
    """Hensel square root with a fixed sign convention.

    p odd: the returned root is congruent to the smaller of the two mod-p
    square roots.  p = 2: the root is 1 mod 4.  For p = 2 one digit is lost
    (the square determines the root only one level down).
    """
    if a.is_zero:
        raise IndistinguishableAtPrecision("cannot certify a square root of O(p^k)")
    p = a.p
    if a.v % 2 != 0:
        raise NotASquare(f"odd valuation {a.v}")
    prec, u = a.prec, a.u
    if p == 2:
        if prec < 3:
            raise IndistinguishableAtPrecision("need the unit mod 8")
        if u % 8 != 1:
            raise NotASquare(f"unit {u % 8} mod 8 is not a square in Z_2")
        r = 1
        for m in range(3, prec):
            if (r * r - u) % (1 << (m + 1)):
                r += 1 << (m - 1)
        return Padic._nonzero(2, a.v // 2, r % (1 << (prec - 1)), prec - 1)
    if pow(u, (p - 1) // 2, p) != 1:
        raise NotASquare(f"{u % p} is not a quadratic residue mod {p}")
    r0 = _sqrt_mod_p(u, p)
    r0 = min(r0, p - r0)
    r, k = r0, 1
    inv2 = None
    while k < prec:
        k = min(2 * k, prec)
        mod = p**k
        inv2 = pow(2, -1, mod)
        r = (r + u * pow(r, -1, mod)) * inv2 % mod
    return Padic._nonzero(p, a.v // 2, r, prec)

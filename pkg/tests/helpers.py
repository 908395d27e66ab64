"""Shared test helpers: independent oracles and random generators.

The oracles here deliberately avoid the library's own code paths: the
resultant oracle expands a Sylvester matrix and eliminates over exact
rationals, and the series oracles sum exact Fractions.
"""

from fractions import Fraction

from padic_entropy import LaurentPoly, RingMatrix


def vp(x, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def reduce_fraction_mod(x, p: int, k: int) -> int:
    """x mod p^k for a p-integral rational x."""
    x = Fraction(x)
    mod = p**k
    assert x.denominator % p != 0
    return x.numerator * pow(x.denominator, -1, mod) % mod


def sylvester_resultant(a: list, b: list) -> Fraction:
    """Res(a, b) via the Sylvester matrix and exact rational elimination.

    a, b ascending-coefficient lists with nonzero leading terms.
    """
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    ar, br = list(reversed(a)), list(reversed(b))
    for i in range(n):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in ar] + [Fraction(0)] * (n - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in br] + [Fraction(0)] * (m - 1 - i))
    det = Fraction(1)
    for col in range(size):
        piv = None
        for r in range(col, size):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            f = rows[r][col] * inv
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


def log_series_fraction(x: Fraction, nterms: int) -> Fraction:
    """Truncated log(1 + x) = sum (-1)^(nu+1) x^nu / nu over exact rationals."""
    acc = Fraction(0)
    power = Fraction(1)
    for nu in range(1, nterms + 1):
        power *= x
        acc += (-1) ** (nu + 1) * power / nu
    return acc


def random_laurent(rng, d: int, span: int = 2, cmax: int = 5, terms: int = 4) -> LaurentPoly:
    data = {}
    for _ in range(rng.randint(1, terms)):
        e = tuple(rng.randint(-span, span) for _ in range(d))
        data[e] = rng.randint(-cmax, cmax)
    f = LaurentPoly(d, data)
    return f if not f.is_zero() else LaurentPoly.one(d)


def random_one_unit(rng, d: int, p: int, span: int = 1, cmax: int = 2, terms: int = 2) -> LaurentPoly:
    return LaurentPoly.one(d) + p * random_laurent(rng, d, span, cmax, terms)


def random_one_unit_matrix(rng, r: int, d: int, p: int, span: int = 1, cmax: int = 2):
    one, zero = LaurentPoly.one(d), LaurentPoly(d, {})
    ident = RingMatrix([[one if i == j else zero for j in range(r)] for i in range(r)])
    g = RingMatrix(
        [[random_laurent(rng, d, span, cmax, terms=2) for _ in range(r)] for _ in range(r)]
    )
    return ident + p * g


def random_fg_one_unit(rng, group, p: int, cmax: int = 2):
    from padic_entropy import FiniteGroupRingElem

    g = FiniteGroupRingElem(group, [rng.randint(-cmax, cmax) for _ in range(group.m)])
    return FiniteGroupRingElem.one(group) + p * g


def random_fg_one_unit_matrix(rng, group, r: int, p: int, cmax: int = 2):
    from padic_entropy import FiniteGroupRingElem

    one = FiniteGroupRingElem.one(group)
    zero = FiniteGroupRingElem.zero(group)
    ident = RingMatrix([[one if i == j else zero for j in range(r)] for i in range(r)])
    g = RingMatrix(
        [
            [
                FiniteGroupRingElem(group, [rng.randint(-cmax, cmax) for _ in range(group.m)])
                for _ in range(r)
            ]
            for _ in range(r)
        ]
    )
    return ident + p * g


def random_expansive_scalar(rng, p: int, span: int = 2) -> LaurentPoly:
    """c * t^k * (1 + p g), re-expanded to integer coefficients."""
    t_k = LaurentPoly.monomial((rng.randint(-span, span),))
    c = rng.choice([c for c in (-3, -2, -1, 1, 2, 3, 5) if c % p != 0])
    return c * t_k * random_one_unit(rng, 1, p, span=span, cmax=2, terms=3)


def random_expansive_matrix(rng, p: int):
    """2x2 matrix over Z[t^{+-1}] invertible on the p-adic circle:
    (elementary) * diag(+-t^a, +-t^b) * (elementary) * (1 + p G)."""
    one, zero = LaurentPoly.one(1), LaurentPoly(1, {})

    def elem():
        c = LaurentPoly.monomial((rng.randint(-1, 1),), rng.randint(-2, 2))
        if rng.random() < 0.5:
            return RingMatrix([[one, c], [zero, one]])
        return RingMatrix([[one, zero], [c, one]])

    diag = RingMatrix(
        [
            [LaurentPoly.monomial((rng.randint(-1, 1),), rng.choice([1, -1])), zero],
            [zero, LaurentPoly.monomial((rng.randint(-1, 1),), rng.choice([1, -1]))],
        ]
    )
    return elem() * diag * elem() * random_one_unit_matrix(rng, 2, 1, p, span=1, cmax=1)

"""The p-adic trace-log determinant on group algebras.

``tr_log_one_unit`` evaluates the group-trace of the logarithm series on
1-units F = 1 + p*G (matrices over the Laurent algebra on Z^d or over a
finite group ring): the value is  sum_nu -(1/nu) * [identity coefficient of
the matrix trace of (1-F)^nu],  truncated once every dropped term provably
vanishes at the working precision.  On 1-units this map is a homomorphism
and is invariant under conjugation.

``c0_unit_normalize`` factors an integral Laurent element that is a unit of
the convolution algebra as p^a * c * t^nu * (1 + p*g); ``logdet_unit``
combines the two to evaluate the determinant on every such unit (the p^a
and monomial factors contribute zero).  ``logdet_finite`` is the finite
group formula (1/|G|) log det(rho), and ``det_laurent_matrix`` links the
matrix and scalar cases over the commutative algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._util import vp_fraction, vp_int
from .errors import (
    DomainMismatch,
    IndistinguishableAtPrecision,
    NotACZeroUnit,
    NotAOneUnit,
    SingularRho,
)
from .fixcount import det_exact
from .groupring import (
    FiniteGroupRingElem,
    LaurentPoly,
    RingMatrix,
    rho_matrix,
    sup_norm,
)
from .padic import Padic, padic_log, series_guard

_DENSE_CELL_CAP = 4_000_000


def _coeff_int_mod(c, p: int, w: int) -> int:
    """Integer representative of a coefficient modulo p^w."""
    mod = p**w
    if isinstance(c, int):
        return c % mod
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise DomainMismatch("coefficient has negative valuation")
        return c.numerator * pow(c.denominator, -1, mod) % mod
    if isinstance(c, Padic):
        if c.is_zero:
            if c.zprec is not None and c.zprec < w:
                raise IndistinguishableAtPrecision(
                    f"coefficient known only to O(p^{c.zprec}), need mod p^{w}"
                )
            return 0
        if c.v < 0:
            raise DomainMismatch("coefficient has negative valuation")
        if c.v + c.prec < w:
            raise IndistinguishableAtPrecision(
                f"coefficient carries {c.v + c.prec} digits, need {w}"
            )
        return c.u * p**c.v % mod
    raise DomainMismatch(f"unsupported coefficient type {type(c).__name__}")


# -- series kernels -------------------------------------------------------
#
# Each kernel receives X = 1 - F with all coefficients divisible by p, as
# integer data modulo p^w, and returns the identity-coefficients of the
# matrix traces of X^1 .. X^cap (ints mod p^w).


def _kernel_finite(xmat, group, r: int, pw: int, cap: int) -> list[int]:
    m = group.m
    mul_rows = [list(map(int, group.mul[i])) for i in range(m)]
    e = group.identity

    def conv(a, b):
        out = [0] * m
        for i, ai in enumerate(a):
            if ai:
                row = mul_rows[i]
                for j, bj in enumerate(b):
                    if bj:
                        k = row[j]
                        out[k] = (out[k] + ai * bj) % pw
        return out

    def matmul(pm, xm):
        return [
            [
                [
                    sum(col) % pw
                    for col in zip(
                        *(conv(pm[s][u], xm[u][t]) for u in range(r))
                    )
                ]
                for t in range(r)
            ]
            for s in range(r)
        ]

    consts = []
    power = xmat
    for _ in range(cap):
        consts.append(sum(power[s][s][e] for s in range(r)) % pw)
        power = matmul(power, xmat)
    return consts


def _shift_slices(shape, exp):
    src, dst = [], []
    for n_axis, off in zip(shape, exp):
        if off >= 0:
            src.append(slice(0, n_axis - off))
            dst.append(slice(off, n_axis))
        else:
            src.append(slice(-off, n_axis))
            dst.append(slice(0, n_axis + off))
    return tuple(src), tuple(dst)


def _kernel_zd_dense(supports, d: int, r: int, pw: int, cap: int) -> list[int]:
    """Dense int64 kernel; usable while p^w fits comfortably in a machine word."""
    radius = [0] * d
    for s in range(r):
        for t in range(r):
            for e, _ in supports[s][t]:
                for a in range(d):
                    radius[a] = max(radius[a], abs(e[a]))
    radius = [max(1, rad) * cap for rad in radius]
    shape = tuple(2 * rad + 1 for rad in radius)
    center = tuple(radius)

    def blank():
        return np.zeros(shape, dtype=np.int64)

    xarr = [[blank() for _ in range(r)] for _ in range(r)]
    for s in range(r):
        for t in range(r):
            for e, c in supports[s][t]:
                xarr[s][t][tuple(rad + off for rad, off in zip(radius, e))] = c

    power = [[a.copy() for a in row] for row in xarr]
    consts = []
    for _ in range(cap):
        consts.append(int(sum(power[s][s][center] for s in range(r)) % pw))
        nxt = [[blank() for _ in range(r)] for _ in range(r)]
        for s in range(r):
            for t in range(r):
                acc = nxt[s][t]
                for u in range(r):
                    src_arr = power[s][u]
                    for e, c in supports[u][t]:
                        src, dst = _shift_slices(shape, e)
                        acc[dst] = (acc[dst] + c * src_arr[src]) % pw
        power = nxt
    return consts


def _kernel_zd_sparse(supports, d: int, r: int, pw: int, cap: int) -> list[int]:
    zero_exp = (0,) * d

    def conv(a: dict, b):
        out: dict[tuple, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b:
                e = tuple(x + y for x, y in zip(e1, e2))
                v = (out.get(e, 0) + c1 * c2) % pw
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return out

    power = [
        [dict(supports[s][t]) for t in range(r)]
        for s in range(r)
    ]
    consts = []
    for step in range(cap):
        consts.append(sum(power[s][s].get(zero_exp, 0) for s in range(r)) % pw)
        if step == cap - 1:
            break
        nxt = []
        for s in range(r):
            row = []
            for t in range(r):
                acc: dict[tuple, int] = {}
                for u in range(r):
                    for e, c in conv(power[s][u], supports[u][t]).items():
                        v = (acc.get(e, 0) + c) % pw
                        if v:
                            acc[e] = v
                        elif e in acc:
                            del acc[e]
                row.append(acc)
            nxt.append(row)
        power = nxt
    return consts


def tr_log_one_unit(f, p: int, prec: int) -> Padic:
    """Group-trace of log F for a 1-unit F; absolute precision prec.

    Powers of 1 - F are accumulated with coefficients reduced modulo
    p^(prec+guard); terms beyond the cutoff -- and whole powers once the
    valuation passes the working precision -- provably vanish there.  For
    p = 2 a unit that is only 1 mod 2 is squared first (the value is half
    the value at the square, which lies in 1 + 4A).
    """
    F = RingMatrix.wrap(f)
    ident = RingMatrix.identity_like(F)
    X = ident - F
    norm = sup_norm(X, p)
    if norm > Fraction(1, p):
        raise NotAOneUnit(f"F - 1 has sup norm {norm} > 1/{p}")
    if p == 2 and norm > Fraction(1, 4):
        half = tr_log_one_unit(F * F, 2, prec + 1)
        return (half / 2).truncate_abs(prec)

    w, cutoff = series_guard(p, prec)
    cap = min(cutoff, w)  # X^nu = 0 mod p^w once nu >= w
    pw = p**w
    proto = F.entries[0][0]
    r = F.r

    if isinstance(proto, FiniteGroupRingElem):
        xmat = [
            [
                [_coeff_int_mod(c, p, w) for c in X.entries[s][t].coeffs]
                for t in range(r)
            ]
            for s in range(r)
        ]
        consts = _kernel_finite(xmat, proto.group, r, pw, cap)
    elif isinstance(proto, LaurentPoly):
        d = proto.d
        supports = [
            [
                sorted(
                    (e, cc)
                    for e, cc in (
                        (e0, _coeff_int_mod(c0, p, w))
                        for e0, c0 in X.entries[s][t].terms.items()
                    )
                    if cc
                )
                for t in range(r)
            ]
            for s in range(r)
        ]
        cells = 1
        for a in range(d):
            rad = max(
                [abs(e[a]) for row in supports for sup in row for e, _ in sup] or [1]
            )
            cells *= 2 * max(1, rad) * cap + 1
        if pw < (1 << 31) and cells <= _DENSE_CELL_CAP:
            consts = _kernel_zd_dense(supports, d, r, pw, cap)
        else:
            consts = _kernel_zd_sparse(supports, d, r, pw, cap)
    else:
        raise DomainMismatch("unsupported ring for the trace-log series")

    acc = Padic.zero(p, None)
    for nu, c in enumerate(consts, start=1):
        if c % pw == 0:
            continue
        acc = acc - Padic.from_int_mod(c, p, w) / nu
    return acc.truncate_abs(prec)


# -- unit normalization on Z^d ------------------------------------------------


@dataclass
class UnitDecomposition:
    """f = p^a * c * t^nu * (1 + p*g) with c a p-adic unit and g integral.

    ``c`` is the exact coefficient (int or Fraction); ``c_padic`` its image at
    the working precision; ``g`` has Padic coefficients; ``one_unit`` is
    1 + p*g with integer-residue coefficients at the working precision,
    ready for the trace-log series.
    """

    a: int
    c: object
    c_padic: Padic
    nu: tuple
    g: LaurentPoly
    one_unit: LaurentPoly
    p: int
    prec: int


def c0_unit_normalize(f: LaurentPoly, p: int, prec: int) -> UnitDecomposition:
    """Unit test and normal form in the convolution algebra of Z^d.

    Strips the p-content, then requires the reduction mod p to be a single
    nonzero monomial c*t^nu -- that is exactly the unit criterion; anything
    else means f vanishes somewhere on the p-adic torus and NotACZeroUnit is
    raised.  On success returns the full decomposition at precision prec.
    """
    if not isinstance(f, LaurentPoly):
        raise DomainMismatch("normalization needs a Laurent polynomial")
    if f.is_zero():
        raise NotACZeroUnit("the zero element is not a unit")
    for c in f.terms.values():
        if not isinstance(c, (int, Fraction)):
            raise DomainMismatch("normalization needs exact integer or rational coefficients")
    a = min(vp_fraction(c, p) for c in f.terms.values())
    scale = Fraction(1, p**a) if a >= 0 else Fraction(p**-a)
    f1 = f.map_coefficients(lambda c: _exactify(c * scale))
    w = prec + 1
    residues = {
        e: _coeff_int_mod(c, p, 1) for e, c in f1.terms.items()
    }
    nonzero = [e for e, c in residues.items() if c]
    if len(nonzero) != 1:
        raise NotACZeroUnit(
            f"reduction mod {p} has {len(nonzero)} monomials; the element "
            f"vanishes somewhere on the {p}-adic torus"
        )
    nu = nonzero[0]
    c_exact = f1.terms[nu]
    cinv = pow(_coeff_int_mod(c_exact, p, w), -1, p**w)
    unit_terms = {}
    for e, cc in f1.terms.items():
        shifted = tuple(x - y for x, y in zip(e, nu))
        unit_terms[shifted] = _coeff_int_mod(cc, p, w) * cinv % p**w
    one_unit = LaurentPoly(f.d, unit_terms)
    g_terms = {}
    zero_exp = (0,) * f.d
    for e, cc in unit_terms.items():
        cc = (cc - (1 if e == zero_exp else 0)) % p**w
        if cc:
            g_terms[e] = Padic.from_int_mod(cc // p, p, prec)
    g = LaurentPoly(f.d, g_terms)
    return UnitDecomposition(
        a=a,
        c=c_exact,
        c_padic=Padic.from_fraction(c_exact, p, prec),
        nu=nu,
        g=g,
        one_unit=one_unit,
        p=p,
        prec=prec,
    )


def _exactify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def logdet_unit(f: LaurentPoly, p: int, prec: int) -> Padic:
    """log-determinant of a convolution-algebra unit over Z^d.

    Normalizes f = p^a c t^nu (1+pg); the power of p and the monomial
    contribute zero, leaving log(c) plus the trace-log of the 1-unit part.
    """
    w, _ = series_guard(p, prec)
    dec = c0_unit_normalize(f, p, w)
    val = padic_log(Padic.from_fraction(dec.c, p, w)) + tr_log_one_unit(
        dec.one_unit, p, prec
    )
    return val.truncate_abs(prec)


def det_laurent_matrix(F: RingMatrix) -> LaurentPoly:
    """Exact determinant of a matrix over the commutative Laurent algebra.

    Signed permutation expansion: no division, exact for every coefficient
    domain; fine for the small r used here (cofactor growth beyond r = 8 is
    out of scope).
    """
    F = RingMatrix.wrap(F)
    if not isinstance(F.entries[0][0], LaurentPoly):
        raise DomainMismatch("determinant needs commutative Laurent entries")
    r = F.r
    if r > 8:
        raise DomainMismatch("permutation expansion capped at r = 8")
    d = F.entries[0][0].d
    acc = LaurentPoly(d, {})
    for perm in itertools.permutations(range(r)):
        inv = 0
        for i in range(r):
            for j in range(i + 1, r):
                if perm[i] > perm[j]:
                    inv += 1
        term = F.entries[0][perm[0]]
        for i in range(1, r):
            term = term * F.entries[i][perm[i]]
        acc = acc - term if inv % 2 else acc + term
    return acc


def logdet_finite(f, p: int, prec: int) -> Padic:
    """Finite-group log-determinant: (1/|G|) * log_p det(rho_f).

    For integer coefficients the determinant is exact; p-adic coefficients
    are lifted to integer representatives modulo p^K, which determines the
    determinant modulo p^K.  A determinant indistinguishable from zero
    raises SingularRho.
    """
    F = RingMatrix.wrap(f)
    proto = F.entries[0][0]
    if not isinstance(proto, FiniteGroupRingElem):
        raise DomainMismatch("finite-group formula needs finite group ring entries")
    m = proto.group.m
    vq = vp_int(m, p) if m % p == 0 else 0
    exact = all(
        isinstance(c, int) for row in F.entries for e in row for c in e.coeffs
    )
    if exact:
        det = det_exact(rho_matrix(F))
        if det == 0:
            raise SingularRho("det rho = 0")
        val = padic_log(Padic.from_rational(det, 1, p, prec + vq))
    else:
        k = prec + vq + 2
        lifted = F.map_entries(
            lambda e: FiniteGroupRingElem(
                e.group, [_coeff_int_mod(c, p, k) for c in e.coeffs]
            )
        )
        dhat = Padic.from_int_mod(det_exact(rho_matrix(lifted)), p, k)
        if dhat.is_zero:
            raise SingularRho(f"det rho = 0 mod p^{k}: cannot certify invertibility")
        val = padic_log(dhat)
    return (val / m).truncate_abs(prec)

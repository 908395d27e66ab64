"""Fixed-point counts of principal algebraic actions over finite quotients.

The count for a quotient is |det| of the regular-representation matrix of
the reduced element; a vanishing determinant means the fixed-point set is
infinite.  For abelian quotients of Z^d an independent route evaluates the
element at roots of unity inside prime fields and reassembles the integer
by CRT -- the two routes must agree exactly.

Exact integer determinants: fraction-free (Bareiss) elimination below size
64, Hadamard bound + word-sized prime residues + CRT above.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ._primes import factorize_small, primes_one_mod, word_primes
from ._util import parallel_map, vp_int
from .errors import (
    DomainMismatch,
    InfiniteFixedPointSet,
    NonAbelianQuotient,
)
from .groupring import (
    HeisenbergQuotient,
    LaurentPoly,
    RingMatrix,
    ZdQuotient,
    reduce_to_quotient,
    rho_matrix,
)
from .padic import Padic, padic_log

DEFAULT_PREC = 8
DEFAULT_SIZE_CAP = 4096
_BAREISS_MAX = 64


def _det_bareiss(m) -> int:
    """Fraction-free elimination; every division below is exact."""
    a = [[int(x) for x in row] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            rowi, rowk = a[i], a[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def _det_mod_prime(a64: np.ndarray, q: int) -> int:
    a = np.mod(a64, q).astype(np.int64)
    n = a.shape[0]
    det = 1
    sign = 1
    for c in range(n):
        col = a[c:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            a[[c, r]] = a[[r, c]]
            sign = -sign
        piv = int(a[c, c])
        det = det * piv % q
        inv = pow(piv, -1, q)
        rows = a[c + 1 :, c]
        nzr = np.nonzero(rows)[0]
        if nzr.size:
            factors = rows[nzr] * inv % q
            a[c + 1 + nzr, c:] = (a[c + 1 + nzr, c:] - factors[:, None] * a[c, c:]) % q
    return det * sign % q


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2


def _det_crt(m) -> int:
    rows = [[int(x) for x in row] for row in m]
    n = len(rows)
    # Hadamard: det^2 <= prod of row square-sums
    bound_sq = 1
    for row in rows:
        s = sum(x * x for x in row)
        if s == 0:
            return 0
        bound_sq *= s
    need_sq = 4 * bound_sq  # modulus^2 must exceed (2*bound)^2
    primes: list[int] = []
    k, acc_sq = 8, 1
    while acc_sq <= need_sq:
        primes = word_primes(k)
        acc_sq = 1
        for q in primes:
            acc_sq *= q * q
            if acc_sq > need_sq:
                break
        k *= 2
    chosen = []
    acc_sq = 1
    for q in primes:
        chosen.append(q)
        acc_sq *= q * q
        if acc_sq > need_sq:
            break
    a64 = np.array(rows, dtype=object)
    residues = parallel_map(lambda q: _det_mod_prime(a64, q), chosen)
    r, mod = 0, 1
    for q, res in zip(chosen, residues):
        r, mod = _crt_pair(r, mod, res, q)
    if r > mod // 2:
        r -= mod
    return r


def det_exact(m) -> int:
    """Exact determinant of a square integer matrix.

    Bareiss below size 64, CRT reconstruction above; both are exposed for
    cross-testing as _det_bareiss / _det_crt.
    """
    n = len(m)
    if n and len(m[0]) != n:
        raise DomainMismatch("matrix must be square")
    if n < _BAREISS_MAX:
        return _det_bareiss(m)
    return _det_crt(m)


@dataclass
class FixCountRecord:
    """One quotient's exact fixed-point count with p-adic bookkeeping."""

    quotient: dict
    label: str
    index: int
    fix_count: int
    det_sign: int
    p: int
    p_valuation: int
    unit_residue: int
    unit_log: Padic
    normalized: Padic

    def to_json(self) -> dict:
        return {
            "quotient": self.quotient,
            "label": self.label,
            "index": self.index,
            "fix_count": str(self.fix_count),
            "det_sign": self.det_sign,
            "p": self.p,
            "p_valuation": self.p_valuation,
            "unit_residue": str(self.unit_residue),
            "unit_log": self.unit_log.to_json(),
            "normalized": self.normalized.to_json(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FixCountRecord":
        return cls(
            quotient=doc["quotient"],
            label=doc["label"],
            index=doc["index"],
            fix_count=int(doc["fix_count"]),
            det_sign=doc["det_sign"],
            p=doc["p"],
            p_valuation=doc["p_valuation"],
            unit_residue=int(doc["unit_residue"]),
            unit_log=Padic.from_json(doc["unit_log"]),
            normalized=Padic.from_json(doc["normalized"]),
        )


def _require_integer_coeffs(f: RingMatrix):
    for row in f.entries:
        for e in row:
            vals = e.terms.values() if isinstance(e, LaurentPoly) else e.coeffs
            for c in vals:
                if not isinstance(c, int):
                    raise DomainMismatch("fixed-point counts need integer coefficients")


def fix_count(f, q, p: int, prec: int = DEFAULT_PREC, size_cap: int = DEFAULT_SIZE_CAP) -> FixCountRecord:
    """Exact |Fix| for the quotient q, as |det| of the regular representation.

    det = 0 raises InfiniteFixedPointSet (the fixed-point set really is
    infinite for that quotient).  The record carries v_p, the unit residue,
    log_p of the unit part, and the normalized value unit_log / index.
    """
    F = RingMatrix.wrap(f)
    _require_integer_coeffs(F)
    idx = q.index
    if F.r * idx > size_cap:
        raise DomainMismatch(f"rho matrix of size {F.r * idx} exceeds cap {size_cap}")
    ftilde = reduce_to_quotient(F, q)
    det = det_exact(rho_matrix(ftilde))
    if det == 0:
        raise InfiniteFixedPointSet(
            f"det rho = 0 on {q.label()}: infinite fixed-point set", quotient=q
        )
    count = abs(det)
    s = vp_int(count, p) if count % p == 0 else 0
    unit = count // p**s
    vq = vp_int(idx, p) if idx % p == 0 else 0
    unit_log = padic_log(Padic.from_rational(unit, 1, p, prec + vq))
    normalized = (unit_log / idx).truncate_abs(prec)
    return FixCountRecord(
        quotient=q.descriptor(),
        label=q.label(),
        index=idx,
        fix_count=count,
        det_sign=1 if det > 0 else -1,
        p=p,
        p_valuation=s,
        unit_residue=unit % p**prec,
        unit_log=unit_log.truncate_abs(prec + vq),
        normalized=normalized,
    )


def _roots_of_unity(q: int, n: int) -> int:
    """Element of exact multiplicative order n in F_q (needs n | q-1)."""
    facs = list(factorize_small(n))
    for g in itertools.count(2):
        z = pow(g, (q - 1) // n, q)
        if all(pow(z, n // ell, q) != 1 for ell in facs):
            return z
    raise AssertionError("unreachable")


def _det_small_mod(vals, r: int, q: int) -> int:
    """Leibniz determinant of a small r x r matrix of residues."""
    if r == 1:
        return vals[0][0] % q
    if r == 2:
        return (vals[0][0] * vals[1][1] - vals[0][1] * vals[1][0]) % q
    acc = 0
    for perm in itertools.permutations(range(r)):
        sign = 1
        seen = list(perm)
        for i in range(r):
            for j in range(i + 1, r):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i in range(r):
            term = term * vals[i][perm[i]] % q
        acc = (acc + term) % q
    return acc


def fix_count_char_crt(f, moduli, size_hint: int = 0) -> int:
    """Signed integer prod over all character tuples of det f(zeta).

    Characters of (Z/n_1) x ... x (Z/n_d) are evaluated at roots of unity in
    prime fields F_q with q = 1 mod lcm(n_i); enough primes are used to cover
    a Hadamard-style bound, then the signed integer is rebuilt by CRT.  Its
    absolute value must equal the regular-representation fix count.
    """
    if isinstance(moduli, HeisenbergQuotient):
        raise NonAbelianQuotient("character products need an abelian quotient")
    if isinstance(moduli, ZdQuotient):
        moduli = moduli.moduli
    moduli = tuple(int(n) for n in moduli)
    if any(n < 1 for n in moduli):
        raise NonAbelianQuotient("moduli must be >= 1")
    F = RingMatrix.wrap(f)
    _require_integer_coeffs(F)
    d = F.entries[0][0].d
    if len(moduli) != d:
        raise DomainMismatch(f"need {d} moduli for a d={d} polynomial")
    r = F.r
    # |det f(zeta)| <= prod_i sum_j (sum |coeffs of entry ij|)
    per_point = 1
    for i in range(r):
        s = 0
        for j in range(r):
            s += sum(abs(c) for c in F.entries[i][j].terms.values())
        per_point *= max(s, 1)
    npoints = math.prod(moduli)
    bound = max(per_point, 2) ** npoints
    lcm = math.lcm(*moduli)
    qs: list[int] = []
    acc = 1
    gen = primes_one_mod(lcm)
    while acc <= 2 * bound:
        q = next(gen)
        qs.append(q)
        acc *= q

    entries = [
        [sorted(F.entries[i][j].terms.items()) for j in range(r)] for i in range(r)
    ]

    def residue(q: int) -> int:
        zetas = [_roots_of_unity(q, n) for n in moduli]
        pows = [[pow(z, k, q) for k in range(n)] for z, n in zip(zetas, moduli)]
        total = 1
        for jvec in itertools.product(*(range(n) for n in moduli)):
            vals = []
            for i in range(r):
                rowv = []
                for j in range(r):
                    acc_e = 0
                    for e, c in entries[i][j]:
                        w = c % q
                        for axis in range(d):
                            w = w * pows[axis][(e[axis] * jvec[axis]) % moduli[axis]] % q
                        acc_e = (acc_e + w) % q
                    rowv.append(acc_e)
                vals.append(rowv)
            total = total * _det_small_mod(vals, r, q) % q
        return total

    residues = parallel_map(residue, qs)
    rres, mod = 0, 1
    for q, res in zip(qs, residues):
        rres, mod = _crt_pair(rres, mod, res, q)
    if rres > mod // 2:
        rres -= mod
    return rres

"""Exact univariate polynomial arithmetic over the rationals.

Polynomials are lists of coefficients, highest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def trim(a: Sequence) -> list:
    a = list(a)
    while len(a) > 1 and a[0] == 0:
        a.pop(0)
    return a


def charpoly(m: Sequence[Sequence[int]]) -> list[int]:
    """Characteristic polynomial det(xI - M) of an integer matrix.

    Faddeev-LeVerrier recurrence in exact integers: with N_0 = I,
    c_k = -tr(M N_{k-1}) / k and N_k = M N_{k-1} + c_k I.  The divisions are
    exact for integer matrices.
    """
    a = [[int(x) for x in row] for row in m]
    size = len(a)
    coeffs = [1]
    nmat = [[int(i == j) for j in range(size)] for i in range(size)]
    for k in range(1, size + 1):
        prod = [[sum(a[i][t] * nmat[t][j] for t in range(size)) for j in range(size)]
                for i in range(size)]
        tr = sum(prod[i][i] for i in range(size))
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c = -tr // k
        coeffs.append(c)
        nmat = [[prod[i][j] + (c if i == j else 0) for j in range(size)] for i in range(size)]
    return coeffs


def peval(a: Sequence, x):
    acc = 0
    for c in a:
        acc = acc * x + c
    return acc


def pdivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    if len(a) < len(b):
        return [Fraction(0)], a
    q = []
    rem = a[:]
    while len(rem) >= len(b):
        f = rem[0] / b[0]
        q.append(f)
        for i in range(len(b)):
            rem[i] -= f * b[i]
        rem.pop(0)
    return q or [Fraction(0)], trim(rem) if rem else [Fraction(0)]


def deriv(a: Sequence) -> list:
    d = len(a) - 1
    return [c * (d - i) for i, c in enumerate(a[:-1])] or [0]


def monic(a: Sequence) -> list[Fraction]:
    a = trim(a)
    return [Fraction(c) / a[0] for c in a]


def pgcd(a: Sequence, b: Sequence) -> list[Fraction]:
    a, b = trim(a), trim(b)
    while not (len(b) == 1 and b[0] == 0):
        a, b = b, pdivmod(a, b)[1]
    return monic(a)


def squarefree(a: Sequence) -> list[Fraction]:
    g = pgcd(a, deriv(a))
    return monic(pdivmod(a, g)[0])


def divide_root(a: Sequence, root) -> list:
    """Quotient of a by (x - root); the remainder must vanish."""
    q, r = pdivmod(a, [1, -root])
    if any(c != 0 for c in r):
        raise ArithmeticError("not a root")
    return q


def sturm_chain(a: Sequence) -> list[list[Fraction]]:
    p0 = [Fraction(c) for c in trim(a)]
    chain = [p0, [Fraction(c) for c in deriv(p0)]]
    while len(chain[-1]) > 1 or chain[-1][0] != 0:
        rem = pdivmod(chain[-2], chain[-1])[1]
        if len(rem) == 1 and rem[0] == 0:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _changes_at(chain, x) -> int:
    if x == "inf":
        return _sign_changes([c[0] for c in chain])
    if x == "-inf":
        return _sign_changes([c[0] * (-1) ** (len(c) - 1) for c in chain])
    return _sign_changes([peval(c, x) for c in chain])


def count_roots(a: Sequence, lo="-inf", hi="inf") -> int:
    """Number of distinct real roots in the half-open interval (lo, hi].

    The chain is built on the square-free part so that an endpoint at a
    multiple root does not zero out the whole sequence.
    """
    chain = sturm_chain(squarefree(a))
    return _changes_at(chain, lo) - _changes_at(chain, hi)


def integer_roots(a: Sequence[int], bound: int) -> list[int]:
    """Integer roots in [-bound, bound], listed with multiplicity."""
    cur = [Fraction(c) for c in trim(a)]
    out = []
    for x in range(-bound, bound + 1):
        while len(cur) > 1 and peval(cur, x) == 0:
            out.append(x)
            cur = divide_root(cur, x)
    return out


def real_roots(a: Sequence, polish: int = 3) -> list[float]:
    """Distinct real roots (floats) of a rational polynomial."""
    sf = squarefree(a)
    if len(sf) <= 1:
        return []
    if len(sf) == 2:
        return [float(-sf[1] / sf[0])]
    if len(sf) == 3:
        b, c = sf[1], sf[2]
        disc = b * b - 4 * c
        if disc < 0:
            return []
        s = float(disc) ** 0.5
        return sorted([(-float(b) - s) / 2, (-float(b) + s) / 2])
    fl = [float(c) for c in sf]
    roots = np.roots(fl)
    dfl = deriv(fl)
    out = []
    scale = max(1.0, max(abs(r) for r in roots))
    for z in roots:
        if abs(z.imag) > 1e-7 * scale:
            continue
        x = float(z.real)
        for _ in range(polish):
            d = peval(dfl, x)
            if d == 0:
                break
            x -= peval(fl, x) / d
        out.append(x)
    return sorted(out)

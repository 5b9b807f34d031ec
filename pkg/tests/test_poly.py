from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ccmotion import poly


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n)))
def test_charpoly_matches_numpy(vals):
    n = int(round(len(vals) ** 0.5))
    m = np.array(vals).reshape(n, n)
    cp = poly.charpoly(m.tolist())
    ref = np.round(np.poly(m.astype(float))).astype(int)
    assert cp == ref.tolist()
    assert all(isinstance(c, int) for c in cp)


def test_divmod_and_gcd():
    a = [1, 0, -1]  # x^2 - 1
    b = [1, 1]      # x + 1
    q, r = poly.pdivmod(a, b)
    assert q == [1, -1] and poly.trim(r) == [0]
    g = poly.pgcd([1, 0, -1], [1, 2, 1])
    assert g == [1, 1]
    assert poly.squarefree([1, 2, 1]) == [1, 1]
    assert poly.divide_root([1, 0, -1], 1) == [1, 1]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.integers(-6, 6), st.integers(0, 6))
def test_root_counting(roots, lo, width):
    a = [1]
    for z in roots:
        a = list(np.convolve(a, [1, -z]).astype(int))
    a = [int(x) for x in a]
    hi = lo + width
    lo_f = Fraction(2 * lo - 1, 2)  # never a root
    expect = len({z for z in roots if lo_f < z <= hi})
    assert poly.count_roots(a, lo=lo_f, hi=hi) == expect
    assert sorted(poly.integer_roots(a, 6)) == sorted(roots)


def test_real_roots_irrational():
    rr = poly.real_roots([1, 0, -2])
    assert np.allclose(sorted(rr), [-2**0.5, 2**0.5])
    assert poly.count_roots([1, 0, -2], lo=Fraction(14, 10), hi=Fraction(15, 10)) == 1

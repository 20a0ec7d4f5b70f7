"""Constant evaluation tests with independent high-precision oracles."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from primetrail.constants import (
    C0_REFERENCE_DECIMAL,
    DEFAULT_SPEC,
    TWIN_THEORY_SPEC,
    EulerProductSpec,
    c0,
    contour_density,
    first_primes,
    li,
    mertens_ab,
    pair_mass,
    joint_mass2,
    pi2,
    pi3,
    triple_mass,
    truncated_product,
    zeta,
)
from primetrail.errors import RangeError

mp = pytest.importorskip("mpmath")
mp.mp.dps = 30


# -- zeta ----------------------------------------------------------------------


def test_zeta_closed_forms():
    assert abs(zeta(2) - math.pi**2 / 6) < 1e-15
    assert abs(zeta(4) - math.pi**4 / 90) < 1e-15


@pytest.mark.parametrize("k", [2, 3, 5, 10, 20, 35, 60])
def test_zeta_against_mpmath(k):
    assert abs(zeta(k) - float(mp.zeta(k))) < 1e-15


def test_zeta_domain():
    for bad in (1, 0, -3, 2.0):
        with pytest.raises(RangeError):
            zeta(bad)


def test_contour_density_values():
    assert abs(contour_density(1) - float(1 / mp.zeta(2))) < 1e-15
    assert abs(contour_density(2) - float(1 / mp.zeta(3) - 1 / mp.zeta(2))) < 1e-15
    with pytest.raises(RangeError):
        contour_density(0)


def test_contour_density_telescopes_to_one():
    total = math.fsum(contour_density(k) for k in range(1, 51))
    assert abs(total - 1.0) < 1e-12


# -- truncated products --------------------------------------------------------


def _direct_product_oracle(omegas, m):
    """Left-to-right product in 80-bit precision; independent of the series."""
    primes = first_primes(m).astype(np.longdouble)
    factors = np.ones_like(primes)
    for w in omegas:
        factors = factors - primes ** np.longdouble(-w)
    acc = np.longdouble(1.0)
    for f in factors:
        acc *= f
    return float(acc)


@pytest.mark.parametrize(
    "omegas", [(2, 2), (2, 3), (3, 3), (2, 7), (2, 2, 2), (2, 3, 2), (4, 2, 3)]
)
def test_products_match_direct_oracle(omegas):
    mine = truncated_product(omegas, 10**5)
    oracle = _direct_product_oracle(omegas, 10**5)
    assert abs(mine - oracle) < 5e-15 * abs(oracle) + 1e-16


def test_pi2_frozen_reference():
    # longdouble oracle value at the default truncation (first 1e7 primes)
    assert abs(pi2(2, 2) - 0.32263409911941426) < 1e-14


def test_pi2_symmetry_and_monotonicity():
    spec = EulerProductSpec(10**4, 40)
    assert pi2(2, 5, spec) == pi2(5, 2, spec)
    # more primes means more factors below one
    assert pi2(2, 2, EulerProductSpec(10**4)) > pi2(2, 2, EulerProductSpec(10**5))


def test_pi2_high_exponent_limit():
    expect = 1.0 - 2.0**-49 - 2.0 * 3.0**-49
    assert abs(pi2(50, 50, EulerProductSpec(10**4)) - expect) < 1e-14


def test_pi3_frozen_reference():
    assert abs(pi3(2, 2, 2) - 0.12548698101092345) < 1e-14


def test_pi3_permutation_invariance():
    spec = EulerProductSpec(10**4)
    vals = {pi3(a, b, c, spec) for (a, b, c) in ((2, 3, 5), (5, 2, 3), (3, 5, 2))}
    assert len(vals) == 1


def test_pi3_monotone_in_last_exponent():
    spec = EulerProductSpec(10**4)
    prev = 0.0
    for k in range(2, 30):
        cur = pi3(2, 2, k, spec)
        assert cur > prev
        prev = cur
    assert prev < pi2(2, 2, spec)


def test_quadruple_product_degenerates_to_zero():
    assert truncated_product((2, 2, 2, 2), 10**3) == 0.0


def test_product_domain_errors():
    with pytest.raises(RangeError):
        truncated_product((1, 2), 100)
    with pytest.raises(RangeError):
        truncated_product((2,) * 5, 100)


# -- joint masses --------------------------------------------------------------


def test_mass_11_equals_pair_product():
    spec = EulerProductSpec(10**4, 30)
    assert pair_mass(1, 1, spec) == pi2(2, 2, spec)


def test_pair_masses_nonnegative():
    spec = EulerProductSpec(10**4, 30)
    for k in range(1, 21):
        for l in range(1, 21):
            assert pair_mass(k, l, spec) >= -1e-16


def test_joint_mass2_totals_and_symmetry():
    spec = EulerProductSpec(10**4, 50)
    jm = joint_mass2(spec)
    assert all(v >= -1e-16 for v in jm.pmf.values())
    for (k, l), v in jm.pmf.items():
        assert v == jm.pmf[(l, k)]
    total = jm.total()
    assert 1 - 1e-12 <= total <= 1 + 1e-15


def test_triple_mass_closure_small():
    spec = EulerProductSpec(10**3, 25)
    total = math.fsum(
        triple_mass(k, l, r, spec)
        for k in range(1, 26)
        for l in range(1, 26)
        for r in range(1, 26)
    )
    assert 1 - 1e-9 <= total <= 1 + 1e-12


# -- growth constant -----------------------------------------------------------

TABLE_C0 = [
    (10**3, 30, 2.288361286306563),
    (10**4, 40, 2.288369020309459),
    (10**5, 50, 2.288369479838548),
]


@pytest.mark.parametrize("m,n,expect", TABLE_C0)
def test_c0_reference_grid(m, n, expect):
    assert abs(c0(EulerProductSpec(m, n)) - expect) <= 1e-12


def test_c0_upper_bound():
    bound = 2 * math.fsum((1 - 0) if k == 1 else (1 - 1 / zeta(k)) for k in range(1, 80))
    value = c0(EulerProductSpec(10**4, 40))
    assert value < bound
    assert bound < 3.4105 + 1e-4


def test_c0_reference_decimal_consistent():
    assert abs(float(C0_REFERENCE_DECIMAL) - c0(EulerProductSpec(10**5, 50))) < 5e-8


# -- twin theory column --------------------------------------------------------

TABLE_TWIN = {
    1: 0.3889570915,
    2: 0.3156950811,
    3: 0.1545003396,
    4: 0.0730237294,
    5: 0.0348180734,
    6: 0.0168170300,
}


def test_twin_theory_reference_column():
    from primetrail.pnt import twin_theory_column

    theory = twin_theory_column(6, spec=TWIN_THEORY_SPEC)
    for ell, expect in TABLE_TWIN.items():
        assert abs(theory[ell] - expect) < 1e-8


# -- logarithmic integral and prime-sum constants --------------------------------


def test_li_values():
    assert li(2) == 0.0
    assert abs(li(10**6) - float(mp.li(10**6, offset=True))) < 1e-6
    with pytest.raises(RangeError):
        li(1.5)


@given(st.floats(min_value=2.0, max_value=1e12))
def test_li_monotone(x):
    assert li(x + 1.0) > li(x) - 1e-12


def test_mertens_constants():
    a, b = mertens_ab()
    # independent routes: Moebius-zeta series for A, prime zeta sums for B
    a_oracle = mp.euler + mp.nsum(
        lambda k: mp.mpf(_mobius(int(k))) * mp.log(mp.zeta(int(k))) / int(k), [2, mp.inf]
    )
    b_oracle = mp.nsum(lambda k: mp.primezeta(int(k)), [2, mp.inf])
    assert abs(a - float(a_oracle)) < 1e-8
    assert abs(b - float(b_oracle)) < 1e-8
    assert a + b == pytest.approx(1.0346538818974062, abs=1e-7)


def _mobius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def test_spec_validation():
    with pytest.raises(RangeError):
        EulerProductSpec(prime_count=0)
    with pytest.raises(RangeError):
        EulerProductSpec(norm_cutoff=1)
    assert DEFAULT_SPEC.prime_count == 10**7
    assert DEFAULT_SPEC.norm_cutoff == 50

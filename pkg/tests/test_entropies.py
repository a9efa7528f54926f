import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from qentropy import (
    DomainError,
    EntropyFamily,
    EntropyParams,
    InvalidParameter,
    aczel_daroczy,
    corrected,
    direct_product,
    entropy,
    expand,
    g_class,
    h_map,
    info_content,
    jizba_korbel,
    nath,
    q_add,
    shannon,
    tsallis,
    uniform,
)
from qentropy.entropies import compose, jizba_korbel_product_form

from conftest import COUNTER_JOINT, distributions, random_distribution


# naive term-by-term evaluations, kept independent of the library code paths
def naive_power_sum(p, q):
    return sum(x**q for x in p if x > 0)


def naive_escort(p, q):
    z = naive_power_sum(p, q)
    return [x**q / z if x > 0 else 0.0 for x in p]


def naive_aczel(p, q):
    return -sum(w * math.log2(x) for w, x in zip(naive_escort(p, q), p) if x > 0)


def naive_corrected(p, q, tau):
    return (naive_power_sum(p, q) ** (-tau) - 1) / (1 - q)


def naive_g(p, q, lam):
    w = naive_escort(p, q)
    if lam == 0:
        return (2 ** ((1 - q) * naive_aczel(p, q)) - 1) / (1 - q)
    s = math.log2(sum(a * x ** (-lam) for a, x in zip(w, p) if x > 0)) / lam
    return (2 ** ((1 - q) * s) - 1) / (1 - q)


P3 = [0.5, 0.25, 0.25]


def test_shannon_examples():
    assert shannon([1.0, 0.0]) == 0.0
    assert shannon([0.5, 0.5]) == 1.0
    assert shannon(P3) == 1.5


def test_nath_examples():
    for params in (EntropyParams(q=0.5, tau=-2), EntropyParams(q=3, tau=-0.5), EntropyParams(q=1)):
        assert nath([1.0, 0.0, 0.0], params) == 0.0
    assert nath(P3, EntropyParams(q=2)) == pytest.approx(math.log2(8 / 3), rel=1e-15)
    assert nath(P3, EntropyParams(q=2)) == pytest.approx(1.415037, abs=1e-6)
    for n in (2, 3, 7):
        for q in (0.5, 2.0, 3.0):
            assert nath(uniform(n), EntropyParams(q=q)) == pytest.approx(math.log2(n), rel=1e-14)


def test_corrected_examples():
    assert corrected([1.0, 0.0], EntropyParams(q=3, tau=-2)) == 0.0
    assert corrected(P3, EntropyParams(q=2)) == pytest.approx(0.625, rel=1e-15)
    assert corrected([0.5, 0.5], EntropyParams(q=2)) == pytest.approx(h_map(1, 2), rel=1e-15)
    assert corrected([0.5, 0.5], EntropyParams(q=2)) == pytest.approx(0.5, rel=1e-15)


def test_jizba_korbel_examples():
    for q in (0.5, 2.0, 3.0):
        assert jizba_korbel([0.5, 0.5], q) == pytest.approx(h_map(1, q), rel=1e-15)
        assert jizba_korbel([1.0, 0.0], q) == 0.0
    assert jizba_korbel(P3, 2) == pytest.approx(1 - 2 ** (-4 / 3), rel=1e-15)
    assert jizba_korbel(P3, 2) == pytest.approx(0.603150, abs=1e-6)


def test_aczel_daroczy_examples():
    assert aczel_daroczy(np.ravel(COUNTER_JOINT), 2) == pytest.approx(4 / 3, abs=1e-15)
    for q in (0.5, 2.0, 3.0):
        assert aczel_daroczy([0.5, 0.5], q) == 1.0
        assert aczel_daroczy([1.0, 0.0], q) == 0.0


def test_tsallis_examples():
    assert tsallis([0.5, 0.5], 2) == pytest.approx(0.5, rel=1e-15)
    assert tsallis(P3, 2) == pytest.approx(0.625, rel=1e-15)
    assert tsallis([1.0, 0.0], 0.5) == 0.0


def test_g_class_examples():
    for q in (0.5, 2.0, 3.0):
        for lam in (-1.0, 0.0, 1.0, 7.0):
            assert g_class([0.5, 0.5], q, lam) == pytest.approx(h_map(1, q), rel=1e-14)
    assert g_class(P3, 2, 0) == jizba_korbel(P3, 2)
    # sum of escort weights over p: (2/3)/(1/2) + 2 (1/6)/(1/4) = 8/3
    assert g_class(P3, 2, 1) == pytest.approx(h_map(math.log2(8 / 3), 2), rel=1e-15)
    assert g_class(P3, 2, 1) == pytest.approx(0.625, rel=1e-15)


def test_info_content_examples():
    assert info_content(1.0, 2) == 0.0
    assert info_content(0.5, 2) == pytest.approx(0.5, rel=1e-15)
    assert info_content(0.25, 2) == pytest.approx(0.75, rel=1e-15)
    assert info_content(0.25, 2) == pytest.approx(q_add(0.5, 0.5, 2), rel=1e-15)
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(DomainError):
            info_content(bad, 2)


def test_family_parameter_errors():
    with pytest.raises(InvalidParameter):
        tsallis([0.5, 0.5], 0)
    with pytest.raises(InvalidParameter):
        aczel_daroczy([0.5, 0.5], -1)
    with pytest.raises(InvalidParameter):
        g_class([0.5, 0.5], 2, float("inf"))
    with pytest.raises(InvalidParameter):
        EntropyFamily.parse("boltzmann")


def test_family_names_parse():
    assert EntropyFamily.parse("jizba-korbel") is EntropyFamily.JizbaKorbel
    assert EntropyFamily.parse("JizbaKorbel") is EntropyFamily.JizbaKorbel
    assert EntropyFamily.parse("g_class") is EntropyFamily.GClass


@pytest.mark.parametrize("q", [0.5, 2.0, 3.0])
@pytest.mark.parametrize("tau", [-0.5, -1.0, -2.0])
def test_against_naive_oracles(rng, q, tau):
    for _ in range(200):
        p = random_distribution(rng, int(rng.integers(2, 7)), sparse=True)
        assert corrected(p, EntropyParams(q=q, tau=tau)) == pytest.approx(naive_corrected(p, q, tau), rel=1e-12)
        assert aczel_daroczy(p, q) == pytest.approx(naive_aczel(p, q), rel=1e-12, abs=1e-15)
        for lam in (-1.0, 0.0, 1.0):
            assert g_class(p, q, lam) == pytest.approx(naive_g(p, q, lam), rel=1e-11, abs=1e-15)


def test_jizba_korbel_product_form_oracle(rng):
    for q in (0.5, 2.0, 3.0):
        for _ in range(200):
            p = random_distribution(rng, int(rng.integers(2, 7)))
            assert jizba_korbel(p, q) == pytest.approx(jizba_korbel_product_form(p, q), rel=1e-12)


def test_corrected_near_one_against_high_precision():
    # stable evaluation: relative accuracy does not degrade as q -> 1.
    # the oracle uses the exact decimals; the float masses sum to 1 - 2^-53
    mpmath.mp.dps = 50
    p = [0.6, 0.3, 0.1]
    exact_p = [mpmath.mpf("0.6"), mpmath.mpf("0.3"), mpmath.mpf("0.1")]
    for q in (1 + 1e-7, 1 - 1e-7, 1 + 1e-4):
        for tau in (-0.5, -2.0):
            mq = mpmath.mpf(q)
            s = sum(x**mq for x in exact_p)
            exact = (s ** (-mpmath.mpf(tau)) - 1) / (1 - mq)
            assert corrected(p, EntropyParams(q=q, tau=tau)) == pytest.approx(float(exact), rel=1e-14)


def test_g_class_large_lambda_uses_log_space():
    mpmath.mp.dps = 60
    p = [1 - 2e-9, 1e-9, 1e-9]
    for lam in (40.0, -40.0):
        w = [mpmath.mpf(x) ** 2 for x in p]
        z = sum(w)
        s = mpmath.log(sum(a / z * mpmath.mpf(x) ** (-lam) for a, x in zip(w, p)), 2) / lam
        exact = (mpmath.power(2, -s) - 1) / (-1)
        assert g_class(p, 2.0, lam) == pytest.approx(float(exact), rel=1e-12)


def test_g_class_continuous_in_lambda():
    p = [0.6, 0.3, 0.1]
    for q in (0.5, 2.0):
        assert g_class(p, q, 1e-9) == pytest.approx(g_class(p, q, 0.0), rel=1e-8)


def test_aczel_daroczy_exceeds_uniform_for_q_below_one():
    # a maximality failure of the escort-surprisal families: (1/2, 1/10 x 5) at q = 1/2
    p = [0.5] + [0.1] * 5
    z = math.sqrt(0.5) + 5 * math.sqrt(0.1)
    by_hand = (math.sqrt(0.5) * 1 + 5 * math.sqrt(0.1) * math.log2(10)) / z
    assert aczel_daroczy(p, 0.5) == pytest.approx(by_hand, rel=1e-14)
    assert by_hand > math.log2(6) + 0.019
    assert jizba_korbel(p, 0.5) > jizba_korbel(uniform(6), 0.5)


def test_batched_evaluation_matches_rows(rng):
    batch = np.stack([random_distribution(rng, 4, sparse=True) for _ in range(50)])
    for fam in EntropyFamily:
        params = EntropyParams(q=2.0, tau=-0.5, lam=1.0)
        rows = [entropy(fam, row, params) for row in batch]
        np.testing.assert_allclose(entropy(fam, batch, params), rows, rtol=1e-15, atol=0)


def test_unit_branch_values():
    p = [0.5, 0.25, 0.25]
    one = EntropyParams(q=1.0, tau=-2.0)
    assert nath(p, one) == pytest.approx(2 * 1.5, rel=1e-15)
    # h is x ln 2 at q = 1, so the h-deformed families are in nats there
    assert corrected(p, one) == pytest.approx(2 * 1.5 * math.log(2), rel=1e-15)
    assert jizba_korbel(p, 1.0) == pytest.approx(1.5 * math.log(2), rel=1e-15)
    assert aczel_daroczy(p, 1.0) == pytest.approx(1.5, rel=1e-15)


# property suites

FAMILY_GRID = [(fam, EntropyParams(q=q, tau=t, lam=lam)) for fam in EntropyFamily
               for q in (0.5, 1.0, 2.0, 3.0) for t in (-0.5, -1.0) for lam in (-1.0, 0.0, 1.0)]


@given(distributions(), st.sampled_from([0.5, 2.0, 3.0]), st.sampled_from([-0.5, -1.0, -2.0]))
def test_corrected_factorizes_through_nath(p, q, tau):
    params = EntropyParams(q=q, tau=tau)
    assert corrected(p, params) == pytest.approx(h_map(nath(p, params), q), rel=1e-12, abs=1e-15)


@given(distributions(), st.sampled_from([0.5, 2.0, 3.0]))
def test_jizba_korbel_factorizes_through_aczel(p, q):
    assert jizba_korbel(p, q) == pytest.approx(h_map(aczel_daroczy(p, q), q), rel=1e-12, abs=1e-15)


@given(distributions(), st.sampled_from([-0.5, -1.0, -2.0]))
def test_q_to_one_collapse(p, tau):
    for q in (1 - 1e-6, 1 + 1e-6):
        assert abs(nath(p, EntropyParams(q=q, tau=tau)) - (-tau) * shannon(p)) <= 1e-4
        assert abs(aczel_daroczy(p, q) - shannon(p)) <= 1e-4
        for fam in EntropyFamily:
            params = EntropyParams(q=q, tau=tau, lam=0.5)
            unit = EntropyParams(q=1.0, tau=tau, lam=0.5)
            assert abs(entropy(fam, p, params) - entropy(fam, p, unit)) <= 1e-4


# products of masses below ~1e-154 underflow, so the factors keep masses >= 1e-100
PRODUCT_FACTOR = distributions(max_n=4, min_positive=1e-100)


@given(PRODUCT_FACTOR, PRODUCT_FACTOR, st.sampled_from([0.5, 1.0, 2.0, 3.0]),
       st.sampled_from([-0.5, -1.0, -2.0]))
def test_nath_additive_on_products(p, r, q, tau):
    params = EntropyParams(q=q, tau=tau)
    assert nath(direct_product(p, r), params) == pytest.approx(nath(p, params) + nath(r, params), abs=1e-10)


@given(PRODUCT_FACTOR, PRODUCT_FACTOR, st.sampled_from([0.5, 2.0, 3.0]),
       st.sampled_from([-1.0, 0.0, 1.0]))
def test_deformed_families_compose_on_products(p, r, q, lam):
    params = EntropyParams(q=q, tau=-0.5, lam=lam)
    for fam in (EntropyFamily.JizbaKorbel, EntropyFamily.Corrected, EntropyFamily.GClass, EntropyFamily.Tsallis):
        joint = entropy(fam, direct_product(p, r), params)
        parts = compose(fam, entropy(fam, p, params), entropy(fam, r, params), q)
        assert joint == pytest.approx(parts, rel=1e-10, abs=1e-10)


@given(distributions(), st.sampled_from(FAMILY_GRID))
def test_expandable_exactly(p, case):
    fam, params = case
    assert entropy(fam, expand(p), params) == entropy(fam, p, params)


MAXIMAL = [(fam, q) for fam in EntropyFamily for q in (0.5, 1.0, 2.0, 3.0)
           if not (q < 1 and fam in (EntropyFamily.JizbaKorbel, EntropyFamily.AczelDaroczy, EntropyFamily.GClass))]


@pytest.mark.parametrize("fam, q", MAXIMAL)
def test_uniform_is_maximal(rng, fam, q):
    for n in range(2, 7):
        for lam in ((-1.0, 0.0, 1.0) if fam is EntropyFamily.GClass else (0.0,)):
            params = EntropyParams(q=q, tau=-2.0, lam=lam)
            batch = rng.dirichlet(np.full(n, rng.choice([0.2, 1.0, 5.0])), size=1000)
            top = entropy(fam, uniform(n), params)
            assert np.all(entropy(fam, batch, params) <= top + 1e-12)


@given(distributions(), st.sampled_from(FAMILY_GRID))
def test_nonnegative(p, case):
    fam, params = case
    assert entropy(fam, p, params) >= -1e-12

import math

import numpy as np
import pytest

import tailfence as tf

LOG3 = math.log(3.0)
LOG4 = math.log(4.0)
LOG43 = math.log(4.0 / 3.0)
LOGLOG4 = math.log(LOG4)
LOGLOG43 = math.log(LOG43)


def crafted_fence_sample():
    """n=108 sample with q1=log(4/3), q3=log(4), exactly one point beyond the fence.

    The outer fence lands at 4*log4 - 3*log(4/3) = log4 + 3*log3 = log(108),
    so the Pareto fence estimator evaluates to log(108)/log(log(108)).
    """
    values = (
        [0.1] * 26 + [LOG43] * 2 + [1.0] * 52 + [LOG4] * 2 + [2.0] * 25 + [5.0]
    )
    assert len(values) == 108
    return tf.Sample(values)


def quartile_sample():
    # knots: (n+1)*0.25 = 1 and (n+1)*0.75 = 3, so q1 = 2 and q3 = 6 exactly
    return tf.Sample([2.0, 4.0, 6.0])


def pareto_grid_sample(alpha, n, delta=1.0):
    spec = tf.DistributionSpec("pareto", {"alpha": alpha, "delta": delta})
    return tf.Sample([tf.quantile(spec, i / (n + 1)) for i in range(1, n + 1)])


def test_fence_prob_worked_example():
    smp = crafted_fence_sample()
    fen = tf.empirical_fences(smp)
    assert fen.outer_high == pytest.approx(math.log(108.0), abs=1e-12)
    assert tf.empirical_p_eR(smp) == pytest.approx(1.0 / 108.0, abs=0.0)
    rec = tf.estimate_fence_prob(smp, "pareto")
    assert rec.valid
    assert rec.method == "par_n"
    assert rec.alpha_hat == pytest.approx(
        -math.log(1.0 / 108.0) / math.log(LOG4 + 3 * LOG3), rel=1e-12
    )
    assert rec.alpha_hat == pytest.approx(3.03295282601, abs=1e-9)


def test_fence_prob_requires_outliers():
    rec = tf.estimate_fence_prob(tf.Sample([1.0, 2.0, 3.0, 4.0]), "pareto")
    assert not rec.valid
    assert rec.alpha_hat is None
    assert rec.reason == "no extreme outliers observed"


def test_fence_prob_family_variants():
    smp = crafted_fence_sample()
    p = 1.0 / 108.0
    fence = math.log(108.0)
    fr = tf.estimate_fence_prob(smp, "frechet")
    assert fr.method == "fr_n"
    assert fr.alpha_hat == pytest.approx(-math.log(-math.log1p(-p)) / math.log(fence), rel=1e-12)
    # doubling the data moves the fence to 2*log(108) while p stays 1/108
    doubled = tf.Sample(2.0 * smp.values)
    hh = tf.estimate_fence_prob(doubled, "hillhorror")
    assert hh.method == "hh_n" and hh.valid
    fence2 = tf.empirical_fences(doubled).outer_high
    assert hh.alpha_hat == pytest.approx(math.log(p) / math.log(-math.log(p) / fence2), rel=1e-12)


def test_fence_prob_hillhorror_singularity():
    # constant quartiles pin the fence exactly at -log(p_eR): the formula's
    # denominator vanishes and the record names the violated condition
    level = -math.log(1.0 / 108.0)
    smp = tf.Sample([level] * 107 + [level + 5.0])
    assert tf.empirical_fences(smp).outer_high == level
    rec = tf.estimate_fence_prob(smp, "hillhorror")
    assert not rec.valid
    assert rec.reason == "outer fence equals -log(p_eR)"


def test_fence_prob_seed_regression():
    # seed-pinned draw; recorded value 0.4726566...
    smp = tf.sample(tf.parse_spec("pareto(alpha=0.5,delta=1)"), tf.RngState(42, 0), 100)
    rec = tf.estimate_fence_prob(smp, "pareto")
    assert rec.valid
    assert 0.2 <= rec.alpha_hat <= 0.9


def test_fence_prob_rejects_bad_family():
    with pytest.raises(ValueError, match="family"):
        tf.estimate_fence_prob(quartile_sample(), "gumbel")


def test_quartile_ratio_worked_examples():
    smp = quartile_sample()
    par = tf.estimate_quartile_ratio(smp, "pareto")
    assert par.valid and par.alpha_hat == pytest.approx(1.0, abs=1e-15)

    fr = tf.estimate_quartile_ratio(smp, "frechet")
    expected = (LOGLOG4 - LOGLOG43) / LOG3
    assert fr.valid and fr.alpha_hat == pytest.approx(expected, rel=1e-13)
    assert fr.alpha_hat == pytest.approx(1.4314, abs=2e-4)

    # hill-horror denominator log3 + loglog(4/3) - loglog4 ~ -0.4739 < 0
    hh = tf.estimate_quartile_ratio(smp, "hillhorror")
    assert not hh.valid
    assert hh.reason == "family mismatch"
    assert hh.alpha_hat == pytest.approx(LOG3 / (LOG3 + LOGLOG43 - LOGLOG4), rel=1e-12)
    assert hh.alpha_hat < 0


def test_quartile_ratio_domain_errors():
    neg = tf.estimate_quartile_ratio(tf.Sample([-1.0, 0.5, 5.0]), "pareto")
    assert not neg.valid and neg.reason == "needs positive quartiles"
    const = tf.estimate_quartile_ratio(tf.Sample([3.0, 3.0, 3.0]), "pareto")
    assert not const.valid and const.reason == "equal quartiles"


def test_quartile_ratio_exact_on_matched_quartiles():
    for alpha in (0.5, 1.0, 2.0):
        smp = pareto_grid_sample(alpha, 99, delta=3.0)
        rec = tf.estimate_quartile_ratio(smp, "pareto")
        assert rec.alpha_hat == pytest.approx(alpha, abs=1e-12)


def test_hill_simple_cases():
    rec = tf.hill(tf.Sample([1.0, math.e, math.e, math.e]), 3)
    assert rec.valid and rec.alpha_hat == pytest.approx(1.0, abs=1e-15)
    assert rec.k == 3

    degenerate = tf.hill(tf.Sample([2.0] * 6), 3)
    assert not degenerate.valid and degenerate.reason == "degenerate tail"

    # k=2 only touches the positive top order statistics and stays defined
    assert tf.hill(tf.Sample([-1.0, 1.0, 2.0, 3.0]), 2).valid
    negative = tf.hill(tf.Sample([-1.0, 1.0, 2.0, 3.0]), 3)
    assert not negative.valid and negative.reason == "requires positive order statistics"

    with pytest.raises(ValueError, match="k must satisfy"):
        tf.hill(tf.Sample([1.0, 2.0, 3.0]), 3)


def test_hill_seed_regression():
    # seed-pinned draw; recorded value 0.5118456...
    smp = tf.sample(tf.parse_spec("pareto(alpha=0.5,delta=1)"), tf.RngState(42, 0), 100)
    rec = tf.hill(smp, 30)
    assert rec.valid
    assert 0.35 <= rec.alpha_hat <= 0.65


def test_hill_gamma_nonnegative():
    rng = np.random.default_rng(5)
    for _ in range(30):
        smp = tf.Sample(rng.uniform(0.01, 10.0, size=int(rng.integers(5, 50))))
        rec = tf.hill(smp, int(rng.integers(1, smp.n - 1)))
        assert (rec.valid and rec.alpha_hat > 0) or rec.reason == "degenerate tail"


def test_t_hill_cases():
    doubled = tf.t_hill(tf.Sample([1.0, 2.0, 2.0, 2.0]), 3)
    assert doubled.valid and doubled.alpha_hat == pytest.approx(1.0, abs=1e-15)

    grid = tf.t_hill(pareto_grid_sample(1.0, 100), 25)
    # ratios i/26 for i=1..25 average exactly 1/2, so alpha_hat = 1
    assert grid.alpha_hat == pytest.approx(1.0, abs=1e-12)
    assert 0.7 <= grid.alpha_hat <= 1.4

    flat = tf.t_hill(tf.Sample([3.0, 3.0, 3.0, 3.0]), 2)
    assert not flat.valid and flat.reason == "degenerate tail"


def test_pickands_cases():
    ratio_two = tf.pickands(tf.Sample([0.0, 1.0, 2.0, 6.0]), 1)
    assert ratio_two.valid and ratio_two.alpha_hat == pytest.approx(1.0, abs=1e-15)

    ratio_four = tf.pickands(tf.Sample([0.0, 1.0, 2.0, 10.0]), 1)
    assert ratio_four.valid and ratio_four.alpha_hat == pytest.approx(0.5, abs=1e-15)

    tied = tf.pickands(tf.Sample([0.0, 1.0, 2.0, 2.0]), 1)
    assert not tied.valid and tied.reason == "tied order statistics"

    with pytest.raises(ValueError, match="4k"):
        tf.pickands(tf.Sample([1.0, 2.0, 3.0]), 1)


def test_moment_cases():
    # log spacings {0, 2}: M1 = 1, M2 = 2, gamma = 1 + 1 - 0.5/(1 - 1/2) = 1
    rec = tf.moment_dedh(tf.Sample([1.0, 1.0, math.e**2]), 2)
    assert rec.valid and rec.alpha_hat == pytest.approx(1.0, rel=1e-12)

    grid = tf.moment_dedh(pareto_grid_sample(1.0, 100), 25)
    assert grid.valid
    gamma = 1.0 / grid.alpha_hat
    assert 0.6 <= gamma <= 1.4
    assert grid.alpha_hat == pytest.approx(1.282677726287932, rel=1e-12)  # frozen oracle

    flat = tf.moment_dedh(tf.Sample([2.0, 5.0, 5.0, 5.0]), 2)
    assert not flat.valid and flat.reason == "degenerate tail"


def test_scale_invariance_of_ratio_estimators():
    rng = np.random.default_rng(31)
    smp = tf.Sample(rng.pareto(1.2, size=60) + 1.0)
    for c in (0.5, 3.7):
        scaled = tf.Sample(c * smp.values)
        for family in ("pareto", "frechet", "hillhorror"):
            a = tf.estimate_quartile_ratio(smp, family)
            b = tf.estimate_quartile_ratio(scaled, family)
            if a.valid and b.valid:
                assert b.alpha_hat == pytest.approx(a.alpha_hat, rel=1e-12)
        for k in (5, 14):
            assert tf.hill(scaled, k).alpha_hat == pytest.approx(
                tf.hill(smp, k).alpha_hat, rel=1e-12
            )
            assert tf.t_hill(scaled, k).alpha_hat == pytest.approx(
                tf.t_hill(smp, k).alpha_hat, rel=1e-12
            )
            assert tf.moment_dedh(scaled, k).alpha_hat == pytest.approx(
                tf.moment_dedh(smp, k).alpha_hat, rel=1e-12
            )


def test_pickands_location_and_scale_invariance():
    rng = np.random.default_rng(32)
    smp = tf.Sample(rng.pareto(1.0, size=64) + 1.0)
    moved = tf.Sample(2.5 * smp.values - 17.0)
    for k in (3, 9, 16):
        a = tf.pickands(smp, k)
        b = tf.pickands(moved, k)
        assert b.alpha_hat == pytest.approx(a.alpha_hat, rel=1e-12)


def test_fence_prob_not_scale_invariant():
    # its denominator is the log of a location, so scaling must move it
    smp = crafted_fence_sample()
    scaled = tf.Sample(3.0 * smp.values)
    a = tf.estimate_fence_prob(smp, "pareto")
    b = tf.estimate_fence_prob(scaled, "pareto")
    assert a.valid and b.valid
    assert abs(a.alpha_hat - b.alpha_hat) > 1e-6


def test_evaluate_dispatch():
    smp = pareto_grid_sample(1.0, 40)
    assert tf.evaluate("par_q", smp).method == "par_q"
    assert tf.evaluate("hill", smp, k=10).method == "hill"
    with pytest.raises(ValueError, match="requires k"):
        tf.evaluate("hill", smp)
    with pytest.raises(ValueError, match="unknown method"):
        tf.evaluate("bogus", smp)

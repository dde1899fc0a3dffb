#include <doctest.h>

#include <cmath>

#include "speclab/rmt.hpp"
#include "speclab/rng.hpp"

using namespace speclab;
using namespace speclab::rmt;

TEST_CASE("config validation") {
    EnsembleConfig cfg;
    cfg.dim = 50;
    CHECK_THROWS(cfg.validate());
    cfg.dim = 200;
    cfg.samples = 10;
    CHECK_THROWS(cfg.validate());
    cfg.samples = 60;
    cfg.bulk_center = 0.7;
    CHECK_THROWS(cfg.validate());
    cfg.bulk_center = 0.0;
    cfg.validate();
}

TEST_CASE("semicircle cdf") {
    CHECK(semicircle_cdf(-1.5) == 0.0);
    CHECK(semicircle_cdf(1.5) == 1.0);
    CHECK(semicircle_cdf(0.0) == doctest::Approx(0.5));
    CHECK(semicircle_cdf(0.3) > semicircle_cdf(0.2));
}

TEST_CASE("spectra: size, symmetry, bulk fraction") {
    EnsembleConfig cfg;
    cfg.kind = Ensemble::GUE;
    cfg.dim = 128;
    cfg.samples = 60;
    cfg.seed = 7;
    double below_zero = 0.0;
    double mean_of_means = 0.0;
    for (int m = 0; m < cfg.samples; m++) {
        CounterRng rng = CounterRng::for_sample(cfg.seed, m);
        auto lam = sample_spectrum(cfg, rng);
        REQUIRE((int)lam.size() == cfg.dim);
        CHECK(std::is_sorted(lam.begin(), lam.end()));
        double mean = 0.0;
        int below = 0;
        for (double x : lam) {
            mean += x;
            if (x < 0) below++;
        }
        mean_of_means += mean / cfg.dim;
        below_zero += (double)below / cfg.dim;
    }
    below_zero /= cfg.samples;
    mean_of_means /= cfg.samples;
    // empirical CDF at zero is 1/2 by semicircle symmetry
    CHECK(std::fabs(below_zero - 0.5) < 0.02);
    CHECK(std::fabs(mean_of_means) < 0.5);
}

TEST_CASE("unfolding gives unit bulk spacing") {
    EnsembleConfig cfg;
    cfg.kind = Ensemble::GOE;
    cfg.dim = 400;
    cfg.samples = 50;
    cfg.seed = 11;
    CounterRng rng = CounterRng::for_sample(cfg.seed, 0);
    auto lam = sample_spectrum(cfg, rng);
    auto x = unfold(lam, cfg.dim);
    CHECK(std::is_sorted(x.begin(), x.end()));
    CHECK(x.front() > -1.0);
    CHECK(x.back() < cfg.dim + 1.0);
    // mean spacing over the middle half
    int lo = cfg.dim / 4, hi = 3 * cfg.dim / 4;
    double spacing = (x[hi] - x[lo]) / (hi - lo);
    CHECK(std::fabs(spacing - 1.0) < 0.05);
}

TEST_CASE("sine kernel oracle equals the analytic GUE target") {
    // for psi_hat supported in [-1,1] and W >= 1/(2 pi), the smoothed count
    // variance of the unit-density sine process is exactly Sigma^2_GUE(psi)
    auto tf = spectral::TestFunction::standard_bump();
    double target = spectral::gue_sigma2(tf);
    for (double W : {6.0, 12.0}) {
        double oracle = gue_sine_kernel_variance(tf, W);
        CHECK(std::fabs(oracle - target) / target < 0.01);
    }
}

TEST_CASE("smoothed count variance: smoke run against the targets") {
    auto tf = spectral::TestFunction::standard_bump();
    EnsembleConfig cfg;
    cfg.kind = Ensemble::GUE;
    cfg.dim = 256;
    cfg.samples = 80;
    cfg.window = 3.0;
    cfg.seed = 3;
    auto est = smoothed_count_variance(cfg, tf);
    CHECK(est.samples == 80);
    CHECK(est.variance > 0.0);
    CHECK(est.variance_se > 0.0);
    // loose window at this small size; the acceptance suite pins N=800
    double target = spectral::gue_sigma2(tf);
    CHECK(std::fabs(est.variance - target) <
          0.5 * target + 4 * est.variance_se);

    // zero test function: identically zero statistic
    auto z = smoothed_count_variance(cfg, spectral::TestFunction::zero());
    CHECK(z.variance == 0.0);

    // window guard
    EnsembleConfig bad = cfg;
    bad.window = 40.0;
    CHECK_THROWS(smoothed_count_variance(bad, tf));
}

TEST_CASE("variance SE shrinks like M^{-1/2}") {
    auto tf = spectral::TestFunction::standard_bump();
    EnsembleConfig small;
    small.kind = Ensemble::GOE;
    small.dim = 256;
    small.samples = 60;
    small.window = 3.0;
    small.seed = 21;
    EnsembleConfig big = small;
    big.samples = 240;
    auto a = smoothed_count_variance(small, tf);
    auto b = smoothed_count_variance(big, tf);
    // ratio should be near 2 = sqrt(4); allow wide noise
    CHECK(a.variance_se / b.variance_se > 1.2);
    CHECK(a.variance_se / b.variance_se < 3.5);
}

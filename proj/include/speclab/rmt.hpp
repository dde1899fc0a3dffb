#pragma once

#include <cstdint>
#include <vector>

#include "speclab/rng.hpp"
#include "speclab/spectral.hpp"

namespace speclab::rmt {

enum class Ensemble { GOE, GUE };

struct EnsembleConfig {
    Ensemble kind = Ensemble::GUE;
    int dim = 800;           // N >= 100
    int samples = 200;       // M >= 50
    double bulk_center = 0.0;  // u0 in semicircle coordinates, |u0| <= 0.5
    double window = 12.0;      // W, mean spacings covered by psi's width
    std::uint64_t seed = 1;

    void validate() const;
};

// eigenvalues of one GOE/GUE draw, scaled so the spectrum fills about
// [-2 sqrt N, 2 sqrt N]; sorted ascending
std::vector<double> sample_spectrum(const EnsembleConfig& cfg, CounterRng& rng);

// semicircle CDF unfolding to unit mean density: x_i = N F_sc(lambda/(2 sqrt N))
std::vector<double> unfold(const std::vector<double>& eigenvalues, int N);

double semicircle_cdf(double t);

struct VarianceEstimate {
    double mean = 0.0;
    double variance = 0.0;
    double variance_se = 0.0;
    int samples = 0;
};

// Monte Carlo variance of the smoothed count sum_i psi((x_i - c)/W) over
// unfolded spectra; the analog of the surface-side N_n(L) statistic.
VarianceEstimate smoothed_count_variance(const EnsembleConfig& cfg,
                                         const spectral::TestFunction& tf);

// Independent oracle: the infinite-N GUE variance of the same statistic from
// the sine kernel, Var = W int psi^2 - W^2 int K(Ws)^2 A_psi(s) ds with
// A_psi the autocorrelation of psi.
double gue_sine_kernel_variance(const spectral::TestFunction& tf, double W);

}  // namespace speclab::rmt

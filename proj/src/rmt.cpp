#include "speclab/rmt.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speclab/quadrature.hpp"

namespace speclab::rmt {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void EnsembleConfig::validate() const {
    if (dim < 100) throw std::invalid_argument("rmt: N >= 100");
    if (samples < 50) throw std::invalid_argument("rmt: M >= 50");
    if (std::fabs(bulk_center) > 0.5)
        throw std::invalid_argument("rmt: |u0| <= 0.5 (bulk only)");
    if (window <= 0.5) throw std::invalid_argument("rmt: window too small");
}

std::vector<double> sample_spectrum(const EnsembleConfig& cfg, CounterRng& rng) {
    int N = cfg.dim;
    std::vector<double> out(N);
    if (cfg.kind == Ensemble::GOE) {
        Eigen::MatrixXd a(N, N);
        for (int i = 0; i < N; i++) {
            a(i, i) = rng.next_gaussian() * std::sqrt(2.0);
            for (int j = i + 1; j < N; j++) {
                double x = rng.next_gaussian();
                a(i, j) = x;
                a(j, i) = x;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a,
                                                          Eigen::EigenvaluesOnly);
        for (int i = 0; i < N; i++) out[i] = es.eigenvalues()(i);
    } else {
        Eigen::MatrixXcd a(N, N);
        for (int i = 0; i < N; i++) {
            a(i, i) = rng.next_gaussian();
            for (int j = i + 1; j < N; j++) {
                std::complex<double> z(rng.next_gaussian() / std::sqrt(2.0),
                                       rng.next_gaussian() / std::sqrt(2.0));
                a(i, j) = z;
                a(j, i) = std::conj(z);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a,
                                                           Eigen::EigenvaluesOnly);
        for (int i = 0; i < N; i++) out[i] = es.eigenvalues()(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double semicircle_cdf(double t) {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return 0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / kPi;
}

std::vector<double> unfold(const std::vector<double>& eigenvalues, int N) {
    std::vector<double> out(eigenvalues.size());
    double scale = 2.0 * std::sqrt((double)N);
    for (size_t i = 0; i < eigenvalues.size(); i++)
        out[i] = N * semicircle_cdf(eigenvalues[i] / scale);
    return out;
}

VarianceEstimate smoothed_count_variance(const EnsembleConfig& cfg,
                                         const spectral::TestFunction& tf) {
    cfg.validate();
    // psi falls below ~1e-3 of its peak past |x| ~ 25; that mass must stay in
    // the bulk where the unfolded density is flat
    double halfwidth = 25.0 * cfg.window;
    double c = cfg.dim * semicircle_cdf(cfg.bulk_center);
    if (c - halfwidth < 0.03 * cfg.dim || c + halfwidth > 0.97 * cfg.dim)
        throw std::invalid_argument("rmt: window exceeds the bulk region");

    // psi value table; psi decays superpolynomially so the tail is cut where
    // it drops below ~1e-12
    std::vector<double> stats;
    stats.reserve(cfg.samples);
    for (int m = 0; m < cfg.samples; m++) {
        CounterRng rng = CounterRng::for_sample(cfg.seed, (std::uint64_t)m);
        auto lam = sample_spectrum(cfg, rng);
        auto x = unfold(lam, cfg.dim);
        double s = 0.0;
        for (double xi : x) {
            double arg = (xi - c) / cfg.window;
            if (std::fabs(arg) > 60.0) continue;
            s += tf.psi(arg);
        }
        stats.push_back(s);
    }
    double M = (double)cfg.samples;
    double mean = 0.0;
    for (double s : stats) mean += s;
    mean /= M;
    double m2 = 0.0, m4 = 0.0;
    for (double s : stats) {
        double d = s - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= M;
    m4 /= M;
    VarianceEstimate out;
    out.samples = cfg.samples;
    out.mean = mean;
    out.variance = m2 * M / (M - 1.0);
    out.variance_se =
        std::sqrt(std::max(0.0, m4 - m2 * m2 * (M - 3.0) / (M - 1.0)) / M);
    return out;
}

double gue_sine_kernel_variance(const spectral::TestFunction& tf, double W) {
    // real-space sine-kernel formula on a fixed fine grid (plain Simpson);
    // deliberately independent of the frequency-space route
    const double U = 60.0;        // psi support truncation in scaled units
    const double h = 1.0 / (16.0 * W);  // >= 16 points per kernel oscillation
    int n = (int)std::ceil(2.0 * U / h);
    if (n % 2 == 1) n++;
    double step = 2.0 * U / n;
    std::vector<double> psi(n + 1);
    for (int i = 0; i <= n; i++) psi[i] = tf.psi(-U + i * step);

    auto simpson_weight = [&](int i) {
        if (i == 0 || i == n) return 1.0;
        return i % 2 == 1 ? 4.0 : 2.0;
    };
    double i1 = 0.0;
    for (int i = 0; i <= n; i++) i1 += simpson_weight(i) * psi[i] * psi[i];
    i1 *= step / 3.0;

    // autocorrelation against K(Ws)^2 over s = (j - n/2) offsets
    double i2 = 0.0;
    for (int j = 0; j <= n; j++) {
        double s = -U + j * step;
        double ws = kPi * W * s;
        double k2 = std::fabs(ws) < 1e-9 ? 1.0 : std::sin(ws) * std::sin(ws) / (ws * ws);
        if (k2 < 1e-18) continue;
        // A(s) = int psi(v) psi(v+s) dv on the shared grid
        double a = 0.0;
        int shift = j - n / 2;
        for (int i = 0; i <= n; i++) {
            int i2x = i + shift;
            if (i2x < 0 || i2x > n) continue;
            a += simpson_weight(i) * psi[i] * psi[i2x];
        }
        a *= step / 3.0;
        i2 += simpson_weight(j) * k2 * a;
    }
    i2 *= step / 3.0;
    return W * i1 - W * W * i2;
}

}  // namespace speclab::rmt

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "speclab/fuchsian.hpp"
#include "speclab/word.hpp"

namespace speclab::spectral {

// Even nonnegative smooth bump supported in [-width, width] (width <= 1):
// psi_hat(u) = amplitude * exp(-1/(1-(u/width)^2)). psi is its inverse
// transform psi(r) = int psi_hat(u) e^{iru} du, real and even.
struct TestFunction {
    double amplitude = 1.0;
    double width = 1.0;

    double psi_hat(double u) const;
    double psi(double r) const;  // adaptive quadrature, abs tol 1e-10

    static TestFunction standard_bump() { return {}; }
    static TestFunction zero() { return {0.0, 1.0}; }
};

struct Window {
    double alpha = 1.0;  // energy level
    double L = 8.0;      // band parameter (inverse width)
};

// chi(gamma^k) for a table class; the weight applied in the sums below is
// always the orientation-symmetrized chi + conj(chi).
using CharFn =
    std::function<std::complex<double>(const fuchsian::PrimitiveClass&, int)>;
// F_n(gamma^k) for a cover, or its n -> infinity mean d(k) in limit mode
using FixFn = std::function<double(const fuchsian::PrimitiveClass&, int)>;

CharFn trivial_char_fn();
FixFn limit_fix_fn();

// Weyl term of the smooth count:
// (g-1) n dimV int (psi(L(r-alpha)) + psi(L(r+alpha))) r tanh(pi r) dr
double weyl_term(const TestFunction& tf, const Window& w, int genus, int n,
                 int dimV);

// Geometric side of the twisted trace formula:
// (2/L) sum_{P0} sum_k (chi + conj chi)(gamma^k) F(gamma^k) ell
//       psi_hat(k ell / L) cos(alpha k ell) / (2 sinh(k ell / 2))
double geometric_sum(const fuchsian::GeodesicTable& table, const CharFn& chi,
                     const FixFn& fix, const TestFunction& tf, const Window& w);

double smooth_count(const fuchsian::GeodesicTable& table, const CharFn& chi,
                    const FixFn& fix, const TestFunction& tf, const Window& w,
                    int genus, int n, int dimV);

// S_{k1,k2}(L) = sum_{P0} G_{k1}(gamma) G_{k2}(gamma) with
// G_k = (chi + conj chi)(gamma^k) cos(alpha k ell) ell psi_hat(k ell/L) /
//       (2 sinh(k ell / 2))
double pair_sum(const fuchsian::GeodesicTable& table, const CharFn& chi,
                int k1, int k2, const TestFunction& tf, const Window& w);

struct VarianceTerms {
    int k_max = 0;
    double cutoff = 0.0;
    std::vector<std::vector<double>> s;  // s[k1-1][k2-1]
    double s11 = 0.0;
    double s_np = 0.0;       // weighted non-primitive part sum_{k1+k2>=3} V S
    double total = 0.0;      // S(L) = (4/L^2) sum V(k1,k2) S_{k1,k2}
};

// n -> infinity limit of the variance, assembled from pair sums with the
// covariance weights V(k1,k2). Requires alpha > 0 and cutoff >= L. The
// support of psi_hat makes k_max = floor(L / systole) exact; max_k can only
// cap it further (diagnostics).
VarianceTerms limit_variance(const fuchsian::GeodesicTable& table,
                             const CharFn& chi, const TestFunction& tf,
                             const Window& w, int max_k = 0);

// GOE/GUE smoothed number variance targets:
// Sigma^2_GOE = 2 int |x| psi_hat(x)^2 dx, Sigma^2_GUE = half of it.
double goe_sigma2(const TestFunction& tf);
double gue_sigma2(const TestFunction& tf);

struct Equi1Result {
    double sum = 0.0;        // S_T
    double predicted = 0.0;  // kappa T^2/2 int u psi_hat^2 (doubled if alpha=0)
    double ratio = 0.0;      // NaN when predicted == 0
};

// Equidistribution check for the S_{1,1} asymptotics: weights
// (chi + conj chi)^2 over P0, g(x) = x^2 / (4 sinh^2(x/2)), transform
// psi_hat^2. kappa is 2 for involutive characters and 1 otherwise.
Equi1Result equi1_check(const fuchsian::GeodesicTable& table, const CharFn& chi,
                        double alpha, const TestFunction& tf, double T,
                        double kappa);

}  // namespace speclab::spectral

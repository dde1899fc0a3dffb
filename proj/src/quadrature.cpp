#include "speclab/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace speclab {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
const double kKronrodNodes[8] = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144838258730,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329};
const double kKronrodWeights[8] = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970};
const double kGaussWeights[4] = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082};

struct GK {
    double integral;
    double error;
};

GK gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resk = kKronrodWeights[0] * fc;
    double resg = kGaussWeights[0] * fc;
    for (int i = 1; i < 8; i++) {
        double x = h * kKronrodNodes[i];
        double f1 = f(c - x), f2 = f(c + x);
        resk += kKronrodWeights[i] * (f1 + f2);
        if (i % 2 == 0) resg += kGaussWeights[i / 2] * (f1 + f2);
    }
    return {resk * h, std::fabs(resk - resg) * h};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth, int max_depth) {
    GK whole = gk15(f, a, b);
    if (whole.error <= tol || depth >= max_depth) return whole.integral;
    double c = 0.5 * (a + b);
    return adapt(f, a, c, tol * 0.5, depth + 1, max_depth) +
           adapt(f, c, b, tol * 0.5, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth) {
    if (a == b) return 0.0;
    return adapt(f, a, b, tol, 0, max_depth);
}

double integrate_romberg(const std::function<double(double)>& f, double a,
                         double b, double tol, int max_iter) {
    if (a == b) return 0.0;
    std::vector<double> prev, cur;
    double h = b - a;
    prev.push_back(0.5 * h * (f(a) + f(b)));
    for (int i = 1; i < max_iter; i++) {
        h *= 0.5;
        double sum = 0.0;
        long npts = 1L << (i - 1);
        for (long k = 0; k < npts; k++) sum += f(a + (2 * k + 1) * h);
        cur.assign(i + 1, 0.0);
        cur[0] = 0.5 * prev[0] + h * sum;
        double pow4 = 1.0;
        for (int j = 1; j <= i; j++) {
            pow4 *= 4.0;
            cur[j] = cur[j - 1] + (cur[j - 1] - prev[j - 1]) / (pow4 - 1.0);
        }
        if (i > 3 && std::fabs(cur[i] - prev[i - 1]) < tol) return cur[i];
        prev = cur;
    }
    return prev.back();
}

double log_integral(double log_y, double rel_tol) {
    const double lo = std::log(2.0);
    if (log_y <= lo) return 0.0;
    // integrand e^u/u grows fast; split into unit panels for the adaptive rule
    double total = 0.0;
    double scale = std::exp(log_y) / log_y;  // rough magnitude of the result
    double u = lo;
    while (u < log_y) {
        double v = std::min(u + 1.0, log_y);
        total += integrate([](double t) { return std::exp(t) / t; }, u, v,
                           rel_tol * scale);
        u = v;
    }
    return total;
}

}  // namespace speclab

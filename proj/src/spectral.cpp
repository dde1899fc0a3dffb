#include "speclab/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "speclab/quadrature.hpp"

namespace speclab::spectral {

namespace {

// Kahan-compensated accumulator; geodesic sums run in fixed table order so
// results are bit-identical across worker counts.
struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double TestFunction::psi_hat(double u) const {
    double v = u / width;
    if (std::fabs(v) >= 1.0) return 0.0;
    return amplitude * std::exp(-1.0 / (1.0 - v * v));
}

double TestFunction::psi(double r) const {
    if (amplitude == 0.0) return 0.0;
    // psi(r) = 2 int_0^width psi_hat(u) cos(ru) du; split by oscillation
    double total = 0.0;
    int panels = std::max(4, (int)std::ceil(std::fabs(r) * width / 3.0));
    double h = width / panels;
    for (int p = 0; p < panels; p++) {
        total += integrate(
            [&](double u) { return psi_hat(u) * std::cos(r * u); }, p * h,
            (p + 1) * h, 1e-11 / panels);
    }
    return 2.0 * total;
}

CharFn trivial_char_fn() {
    return [](const fuchsian::PrimitiveClass&, int) {
        return std::complex<double>(1.0, 0.0);
    };
}

FixFn limit_fix_fn() {
    return [](const fuchsian::PrimitiveClass&, int k) {
        int c = 0;
        for (int d = 1; d <= k; d++)
            if (k % d == 0) c++;
        return (double)c;
    };
}

double weyl_term(const TestFunction& tf, const Window& w, int genus, int n,
                 int dimV) {
    if (w.L <= 0) throw std::invalid_argument("weyl_term: L > 0");
    if (tf.amplitude == 0.0) return 0.0;
    // substitute x = L(r -+ alpha); psi decays fast but slowly enough that a
    // generous truncation is cheap
    const double X = 400.0;
    auto branch = [&](double sign) {
        return integrate(
            [&](double x) {
                double r = x / w.L + sign * w.alpha;
                return tf.psi(x) * r * std::tanh(3.14159265358979323846 * r);
            },
            -X, X, 1e-9) / w.L;
    };
    return (genus - 1.0) * n * dimV * (branch(1.0) + branch(-1.0));
}

namespace {

void check_support(const fuchsian::GeodesicTable& table, const Window& w) {
    if (table.cutoff + 1e-9 < w.L)
        throw std::invalid_argument(
            "geodesic table cutoff below L: sum would be truncated");
}

}  // namespace

double geometric_sum(const fuchsian::GeodesicTable& table, const CharFn& chi,
                     const FixFn& fix, const TestFunction& tf,
                     const Window& w) {
    check_support(table, w);
    Kahan acc;
    for (const auto& c : table.classes) {
        if (!c.p0_representative) continue;
        double ell = c.length;
        for (int k = 1; k * ell < w.L; k++) {
            double wt = tf.psi_hat(k * ell / w.L);
            if (wt == 0.0) continue;
            double sym_chi = 2.0 * chi(c, k).real();  // chi + conj chi
            double term = sym_chi * fix(c, k) * ell * wt *
                          std::cos(w.alpha * k * ell) /
                          (2.0 * std::sinh(k * ell / 2.0));
            acc.add(term);
        }
    }
    return 2.0 / w.L * acc.sum;
}

double smooth_count(const fuchsian::GeodesicTable& table, const CharFn& chi,
                    const FixFn& fix, const TestFunction& tf, const Window& w,
                    int genus, int n, int dimV) {
    return weyl_term(tf, w, genus, n, dimV) +
           geometric_sum(table, chi, fix, tf, w);
}

double pair_sum(const fuchsian::GeodesicTable& table, const CharFn& chi,
                int k1, int k2, const TestFunction& tf, const Window& w) {
    check_support(table, w);
    Kahan acc;
    for (const auto& c : table.classes) {
        if (!c.p0_representative) continue;
        double ell = c.length;
        auto G = [&](int k) {
            double wt = tf.psi_hat(k * ell / w.L);
            if (wt == 0.0) return 0.0;
            return 2.0 * chi(c, k).real() * std::cos(w.alpha * k * ell) * ell *
                   wt / (2.0 * std::sinh(k * ell / 2.0));
        };
        double g1 = G(k1);
        if (g1 == 0.0) continue;
        double g2 = k2 == k1 ? g1 : G(k2);
        acc.add(g1 * g2);
    }
    return acc.sum;
}

VarianceTerms limit_variance(const fuchsian::GeodesicTable& table,
                             const CharFn& chi, const TestFunction& tf,
                             const Window& w, int max_k) {
    if (w.alpha <= 0)
        throw std::invalid_argument("limit_variance: alpha > 0 required");
    check_support(table, w);
    VarianceTerms out;
    out.cutoff = table.cutoff;
    double sys = table.systole();
    out.k_max = std::isfinite(sys) ? (int)std::floor(w.L / sys) : 0;
    if (max_k > 0) out.k_max = std::min(out.k_max, max_k);

    out.s.assign(std::max(out.k_max, 0),
                 std::vector<double>(std::max(out.k_max, 0), 0.0));
    Kahan total, np;
    for (int k1 = 1; k1 <= out.k_max; k1++)
        for (int k2 = 1; k2 <= out.k_max; k2++) {
            double s = pair_sum(table, chi, k1, k2, tf, w);
            out.s[k1 - 1][k2 - 1] = s;
            double v = 0.0;
            for (int d = 1; d <= std::min(k1, k2); d++)
                if (k1 % d == 0 && k2 % d == 0) v += d;
            total.add(v * s);
            if (k1 + k2 >= 3) np.add(v * s);
        }
    out.s11 = out.k_max >= 1 ? out.s[0][0] : 0.0;
    out.s_np = np.sum;
    out.total = 4.0 / (w.L * w.L) * total.sum;
    return out;
}

double goe_sigma2(const TestFunction& tf) {
    if (tf.amplitude == 0.0) return 0.0;
    double val = integrate(
        [&](double x) {
            double p = tf.psi_hat(x);
            return x * p * p;
        },
        0.0, tf.width, 1e-12);
    return 4.0 * val;  // 2 int_R |x| psi_hat^2 = 4 int_0^w x psi_hat^2
}

double gue_sigma2(const TestFunction& tf) { return goe_sigma2(tf) / 2.0; }

Equi1Result equi1_check(const fuchsian::GeodesicTable& table, const CharFn& chi,
                        double alpha, const TestFunction& tf, double T,
                        double kappa) {
    if (T > table.cutoff + 1e-9)
        throw std::invalid_argument("equi1_check: T beyond table cutoff");
    Equi1Result out;
    Kahan acc;
    for (const auto& c : table.classes) {
        if (!c.p0_representative) continue;
        double ell = c.length;
        double wt = tf.psi_hat(ell / T);
        if (wt == 0.0) continue;
        double a = 2.0 * chi(c, 1).real();
        double sh = 2.0 * std::sinh(ell / 2.0);
        double g = ell * ell / (sh * sh);
        double cs = std::cos(alpha * ell);
        acc.add(a * a * cs * cs * g * wt * wt);
    }
    out.sum = acc.sum;
    double integral = integrate(
        [&](double u) {
            double p = tf.psi_hat(u);
            return u * p * p;
        },
        0.0, tf.width, 1e-12);
    out.predicted = kappa * T * T / 2.0 * integral;
    if (alpha == 0.0) out.predicted *= 2.0;
    out.ratio = out.predicted != 0.0
                    ? out.sum / out.predicted
                    : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace speclab::spectral

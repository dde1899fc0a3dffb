#pragma once

#include <cmath>
#include <stdexcept>

namespace speclab {

// Real 2x2 matrix of determinant 1, acting on the upper half plane.
// Products are renormalized by sqrt(det) to keep drift under control.
struct Mobius {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Mobius identity() { return {}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    double frob_sq() const { return a * a + b * b + c * c + d * d; }

    Mobius inverse() const { return {d, -b, -c, a}; }

    void renormalize() {
        double dt = det();
        if (!(dt > 0.25 && dt < 4.0))
            throw std::overflow_error(
                "Mobius: determinant drift outside the double-precision regime");
        double s = std::sqrt(dt);
        a /= s;
        b /= s;
        c /= s;
        d /= s;
    }

    friend Mobius operator*(const Mobius& x, const Mobius& y) {
        Mobius m{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                 x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
        m.renormalize();
        return m;
    }
};

inline double frob_dist(const Mobius& x, const Mobius& y) {
    double da = x.a - y.a, db = x.b - y.b, dc = x.c - y.c, dd = x.d - y.d;
    return std::sqrt(da * da + db * db + dc * dc + dd * dd);
}

// Distance to +-I, the relevant notion in PSL(2,R).
inline double frob_dist_projective_identity(const Mobius& m) {
    Mobius neg{-m.a, -m.b, -m.c, -m.d};
    return std::min(frob_dist(m, Mobius::identity()),
                    frob_dist(neg, Mobius::identity()));
}

// Hyperbolic translation length, ell = 2 arccosh(|tr|/2).
inline double translation_length(const Mobius& m) {
    double t = std::fabs(m.trace());
    if (t <= 2.0 + 1e-12)
        throw std::domain_error("translation_length: non-hyperbolic element");
    return 2.0 * std::acosh(t / 2.0);
}

// cosh of the displacement of the basepoint i, equals |M|_F^2 / 2.
inline double cosh_displacement(const Mobius& m) { return m.frob_sq() / 2.0; }

}  // namespace speclab

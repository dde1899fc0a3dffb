#pragma once

#include <functional>

namespace speclab {

// Adaptive Gauss-Kronrod 7/15 on [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10, int max_depth = 40);

// Independent second scheme for cross-validation: Romberg on a fixed panel
// decomposition.
double integrate_romberg(const std::function<double(double)>& f, double a,
                         double b, double tol = 1e-10, int max_iter = 22);

// li(y) = int_2^y dt/log t, evaluated as int_{log 2}^{log y} e^u/u du.
double log_integral(double log_y, double rel_tol = 1e-10);

}  // namespace speclab

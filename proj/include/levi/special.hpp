#pragma once

namespace levi::special {

/// Exponential integral E1(w) = Gamma(0; w) = int_w^inf e^-s / s ds, w > 0.
/// Power series for w <= 1, continued fraction above.
double expint_e1(double w);

/// Gamma(0; w) from the Euler-constant expansion
///   -Gamma(0; w) = C + ln w + sum_{k>=1} (-w)^k / (k k!).
/// Accurate for moderate w; cancellation grows like e^w.
double gamma0_euler_series(double w);

/// Upper incomplete gamma Gamma(alpha; x) = int_x^inf t^(alpha-1) e^-t dt
/// for any real alpha and x > 0.
double upper_gamma(double alpha, double x);

}  // namespace levi::special

#include "levi/special.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "levi/errors.hpp"

namespace levi::special {

double gamma0_euler_series(double w) {
  if (!(w > 0.0)) throw InputError("gamma0_euler_series: w must be positive");
  // sum_{k>=1} (-1)^k w^k / (k k!)
  double term = 1.0;  // (-w)^k / k!
  double sum = 0.0;
  for (int k = 1; k < 500; ++k) {
    term *= -w / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return -(std::numbers::egamma_v<double> + std::log(w) + sum);
}

double expint_e1(double w) {
  if (!(w > 0.0)) throw InputError("expint_e1: w must be positive");
  if (w <= 1.0) return gamma0_euler_series(w);
  if (w > 740.0) return 0.0;
  // Modified Lentz for E1(w) = e^-w / (w + 1/(1 + 1/(w + 2/(1 + ...)))),
  // in the even form used by Numerical Recipes.
  constexpr double tiny = 1e-300;
  double b = w + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-w);
}

double upper_gamma(double alpha, double x) {
  if (!(x > 0.0)) throw InputError("upper_gamma: x must be positive");
  if (alpha > 0.0) return boost::math::tgamma(alpha, x);
  if (alpha == 0.0) return expint_e1(x);
  // Gamma(a; x) = (Gamma(a+1; x) - x^a e^-x) / a, stepping up to a >= 0.
  const int steps = static_cast<int>(std::ceil(-alpha));
  double a = alpha + steps;
  double value = (a == 0.0) ? expint_e1(x) : boost::math::tgamma(a, x);
  for (int i = 0; i < steps; ++i) {
    a -= 1.0;
    value = (value - std::pow(x, a) * std::exp(-x)) / a;
  }
  return value;
}

}  // namespace levi::special

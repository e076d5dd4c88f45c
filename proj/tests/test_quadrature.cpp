#include <cmath>
#include <numbers>

#include "doctest.h"
#include "levi/errors.hpp"
#include "levi/quadrature.hpp"
#include "levi/special.hpp"

using namespace levi;

TEST_CASE("finite integrals with endpoint singularities") {
  auto r = integrate_finite([](double t) -> cplx { return 1.0 / std::sqrt(t); }, 0.0, 1.0);
  CHECK(r.ok());
  CHECK(r.real() == doctest::Approx(2.0).epsilon(1e-9));

  auto c = integrate_finite([](double t) -> cplx { return std::exp(cplx(0.0, t)); }, 0.0, std::numbers::pi);
  CHECK(c.value.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.value.imag() == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("improper integrals converge") {
  auto r = integrate_to_infinity([](double t) -> cplx { return std::exp(-t); }, 0.0);
  CHECK(r.ok());
  CHECK(r.real() == doctest::Approx(1.0).epsilon(1e-9));

  auto osc = integrate_interval([](double t) -> cplx { return t == 0 ? 0.5 : (1.0 - std::cos(t)) / (t * t); },
                                0.0, std::numeric_limits<double>::infinity(), {}, QuadOptions{.abs_tol = 1e-7, .rel_tol = 1e-7});
  CHECK(osc.ok());
  CHECK(osc.real() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));

  auto neg = integrate_from_minus_infinity([](double t) -> cplx { return std::exp(t); }, 0.0);
  CHECK(neg.ok());
  CHECK(neg.real() == doctest::Approx(1.0).epsilon(1e-9));

  auto near0 = integrate_to_endpoint([](double t) -> cplx { return std::pow(t, -0.9); }, 0.0, 1.0);
  CHECK(near0.ok());
  CHECK(near0.real() == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("log-type divergences are reported") {
  auto inf_end = integrate_to_infinity([](double t) -> cplx { return 1.0 / t; }, 1.0);
  CHECK(inf_end.divergent());
  auto zero_end = integrate_to_endpoint([](double t) -> cplx { return 1.0 / t; }, 0.0, 1.0);
  CHECK(zero_end.divergent());
  CHECK_THROWS_AS(require_converged(inf_end, "test"), DomainError);
}

TEST_CASE("exponential integral against reference values") {
  // Reference values of E1 at 0.1, 1, 5 and 20.
  CHECK(special::expint_e1(0.1) == doctest::Approx(1.8229239584193906).epsilon(1e-13));
  CHECK(special::expint_e1(1.0) == doctest::Approx(0.21938393439552029).epsilon(1e-13));
  CHECK(special::expint_e1(5.0) == doctest::Approx(0.0011482955912753257).epsilon(1e-12));
  CHECK(special::expint_e1(20.0) == doctest::Approx(9.8355252906498816e-11).epsilon(1e-11));
  for (double w : {0.05, 0.3, 0.9, 1.0})
    CHECK(special::gamma0_euler_series(w) == doctest::Approx(special::expint_e1(w)).epsilon(1e-13));
}

TEST_CASE("upper incomplete gamma for negative order") {
  // Gamma(-1/2; x) = 2 x^(-1/2) e^-x - 2 sqrt(pi) erfc(sqrt x).
  for (double x : {0.2, 1.0, 3.0}) {
    const double ref = 2.0 * std::exp(-x) / std::sqrt(x) - 2.0 * std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x));
    CHECK(special::upper_gamma(-0.5, x) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK(special::upper_gamma(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(special::upper_gamma(0.0, 2.0) == doctest::Approx(special::expint_e1(2.0)).epsilon(1e-14));
}

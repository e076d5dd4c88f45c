#include <cmath>
#include <numbers>

#include "doctest.h"
#include "levi/errors.hpp"
#include "levi/measures.hpp"

using namespace levi;

namespace {

const double kGrid[] = {-5, -2, -1, -0.5, -0.1, 0.1, 0.5, 1, 2, 5};

// e^{-x}/x on (0, inf): int (e^{iyx} - 1) e^{-x}/x dx = -log(1 - iy).
LevyTriple gamma_law() {
  return LevyTriple(0.0, 0.0, LevyMeasure::density({DensityPiece{1.0, 1.0, 1.0, 0.0, 0.0, 0.0, kInf}}));
}
cplx gamma_exponent(double y) {
  return -std::log(cplx(1.0, -y)) - cplx(0.0, y * (1.0 - std::exp(-1.0)));
}

LevyTriple poisson3() {
  return LevyTriple(0.3, 0.0, LevyMeasure::atomic({{0.5, 1.0}, {-1.5, 0.7}, {3.0, 0.4}}));
}

double sup_diff(const std::function<cplx(double)>& a, const std::function<cplx(double)>& b) {
  double m = 0.0;
  for (double y : kGrid) m = std::max(m, std::abs(a(y) - b(y)));
  return m;
}

}  // namespace

TEST_CASE("exponent of simple triples") {
  CHECK(std::abs(levy_exponent(LevyTriple(0, 1), 1.0) - cplx(-0.5, 0)) < 1e-15);
  CHECK(std::abs(levy_exponent(LevyTriple(2, 0), 1.0) - cplx(0, 2)) < 1e-15);
  const double pi = std::numbers::pi;
  const cplx atom = levy_exponent(LevyTriple(0, 0, LevyMeasure::atomic({{1.0, 1.0}})), pi);
  CHECK(std::abs(atom - (std::exp(cplx(0, pi)) - 1.0 - cplx(0, pi))) < 1e-14);
  CHECK(std::abs(atom - cplx(-2.0, -pi)) < 1e-14);
}

TEST_CASE("density exponent against the gamma closed form") {
  for (double y : kGrid) CHECK(std::abs(levy_exponent(gamma_law(), y) - gamma_exponent(y)) < 1e-8);
}

TEST_CASE("density pieces reproduce the stable exponent") {
  for (double p : {0.5, 1.0, 1.5}) {
    const double c = 0.8;
    LevyMeasure dens = LevyMeasure::density(
        {DensityPiece{c, 1.0 + p, 0, 0, 0, 0.0, kInf}, DensityPiece{c, 1.0 + p, 0, 0, 0, -kInf, 0.0}});
    LevyMeasure st = LevyMeasure::stable(c, p);
    CHECK(dens.is_symmetric());
    for (double y : {0.1, 1.0, 5.0}) {
      const cplx a = dens.lk_integral(y), b = st.lk_integral(y);
      CHECK(std::abs(a - b) < 1e-6 * std::max(1.0, std::abs(b)));
    }
  }
  CHECK(StablePart{1.0, 1.0}.sigma() == doctest::Approx(std::numbers::pi));
}

TEST_CASE("exponent invariants across laws") {
  std::vector<LevyTriple> laws{poisson3(), gamma_law(), LevyTriple(0.0, 0.5, LevyMeasure::stable(1.0, 1.2)),
                               LevyTriple(-1.0, 2.0, LevyMeasure::atomic({{1.0, 2.0}}))};
  for (const LevyTriple& t : laws) {
    CHECK(std::abs(levy_exponent(t, 0.0)) == 0.0);
    for (double y : kGrid) {
      const cplx a = levy_exponent(t, y), b = levy_exponent(t, -y);
      CHECK(std::abs(a - std::conj(b)) < 1e-9);
      CHECK(a.real() <= 1e-12);
    }
  }
}

TEST_CASE("convolution and powers") {
  LevyTriple s = convolve(LevyTriple(1, 0), LevyTriple(2, 0));
  CHECK(s.shift == 3.0);
  CHECK(convolve(LevyTriple(0, 1), LevyTriple(0, 1)).gaussian_var == 2.0);
  LevyTriple a = poisson3(), b = gamma_law();
  CHECK(std::abs(levy_exponent(convolve(a, b), 0.7) - levy_exponent(a, 0.7) - levy_exponent(b, 0.7)) < 1e-12);

  LevyTriple t(1.0, 2.0, LevyMeasure::atomic({{1.0, 3.0}}));
  LevyTriple t2 = convolution_power(t, 2.0);
  CHECK(t2.shift == 2.0);
  CHECK(t2.gaussian_var == 4.0);
  REQUIRE(t2.levy.atoms().size() == 1);
  CHECK(t2.levy.atoms()[0].x == 1.0);
  CHECK(t2.levy.atoms()[0].mass == 6.0);
  CHECK(std::abs(levy_exponent(convolution_power(t, 2.0), 1.3) - 2.0 * levy_exponent(t, 1.3)) < 1e-12);
  // Powers add: c1 + c2 against the convolution of the two powers.
  LevyTriple sum = convolve(convolution_power(b, 0.4), convolution_power(b, 1.1));
  CHECK(sup_diff(exponent_fn(sum), exponent_fn(convolution_power(b, 1.5))) < 1e-10);
}

TEST_CASE("dilation compensator for an atom crossing the unit ball") {
  LevyTriple t(0.0, 0.0, LevyMeasure::atomic({{0.5, 1.0}}));
  LevyTriple d = dilate(t, 4.0);
  REQUIRE(d.levy.atoms().size() == 1);
  CHECK(d.levy.atoms()[0].x == 2.0);
  CHECK(d.shift == doctest::Approx(-2.0));
  for (double y : kGrid) CHECK(std::abs(levy_exponent(d, y) - levy_exponent(t, 4.0 * y)) < 1e-10);
  CHECK(dilate(LevyTriple(0, 1), 3.0).gaussian_var == 9.0);
}

TEST_CASE("dilation of densities and round trips") {
  for (double u : {-2.5, 0.3, 4.0}) {
    LevyTriple g = gamma_law();
    LevyTriple d = dilate(g, u);
    for (double y : {-2.0, 0.5, 1.0}) CHECK(std::abs(levy_exponent(d, y) - gamma_exponent(u * y)) < 1e-8);
    LevyTriple back = dilate(dilate(poisson3(), u), 1.0 / u);
    CHECK(sup_diff(exponent_fn(back), exponent_fn(poisson3())) < 1e-10);
  }
  LevyTriple r = reflect(poisson3());
  CHECK(std::abs(levy_exponent(r, 2.0) - levy_exponent(poisson3(), -2.0)) < 1e-12);
  CHECK(reflect(LevyTriple(1, 0)).shift == -1.0);
  LevyTriple sym(0, 1, LevyMeasure::atomic({{1.0, 1.0}, {-1.0, 1.0}}));
  CHECK(sym.is_symmetric());
  CHECK(sup_diff(exponent_fn(reflect(sym)), exponent_fn(sym)) < 1e-15);
}

TEST_CASE("log moment and mass functionals") {
  const double c = 1.7;
  LevyMeasure inv_sq = LevyMeasure::density({DensityPiece{c, 2.0, 0, 0, 0, 1.0, kInf}});
  Functional lm = inv_sq.log_moment();
  CHECK(lm.finite);
  CHECK(lm.value == doctest::Approx(c).epsilon(1e-8));
  CHECK(LevyMeasure::atomic({{0.5, 1.0}}).log_moment().value == 0.0);

  LevyMeasure inv = LevyMeasure::density({DensityPiece{c, 1.0, 0, 0, 0, 1.0, kInf}});
  CHECK_FALSE(inv.mass().finite);
  CHECK_THROWS_AS(LevyTriple(0, 0, inv).validate(), InputError);

  // 1/(x log^2 x) on (e, inf): unit mass, infinite log moment.
  LevyMeasure lg = LevyMeasure::density({DensityPiece{1.0, 1.0, 0, 2.0, 0, std::exp(1.0), kInf}});
  CHECK(lg.mass().finite);
  CHECK(lg.mass().value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_FALSE(lg.log_moment().finite);

  CHECK(gamma_law().levy.second_moment().value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_FALSE(LevyMeasure::stable(1, 1).second_moment().finite);
  // x^-3 near 0 is the borderline case for the mass.
  CHECK_FALSE(LevyMeasure::density({DensityPiece{1.0, 3.0, 0, 0, 0, 0.0, 1.0}}).mass().finite);
  CHECK(LevyMeasure::density({DensityPiece{1.0, 2.5, 0, 0, 0, 0.0, 1.0}}).mass().value ==
        doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("tails") {
  LevyMeasure st = LevyMeasure::stable(2.0, 0.5);
  CHECK(st.tail(4.0) == doctest::Approx(2.0 * std::pow(4.0, -0.5) / 0.5));
  CHECK(poisson3().levy.tail(1.0) == doctest::Approx(0.4));
  CHECK(poisson3().levy.tail(-1.0) == doctest::Approx(0.7));
  CHECK(gamma_law().levy.tail(2.0) == doctest::Approx(std::expint(-2.0) * -1.0).epsilon(1e-8));
}

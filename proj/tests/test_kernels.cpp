#include <cmath>
#include <memory>

#include "doctest.h"
#include "levi/errors.hpp"
#include "levi/kernels.hpp"
#include "levi/special.hpp"

using namespace levi;

namespace {
IntegralMap leb_exp() { return IntegralMap(SpaceTransform::exp_decay(), TimeChange::linear(), Interval(0, kInf)); }
}  // namespace

TEST_CASE("interval validation") {
  CHECK_THROWS_AS(Interval(1.0, 1.0), InputError);
  CHECK_THROWS_AS(Interval(-1.0, 1.0), InputError);
  Interval iv(0.0, 2.0);
  CHECK(iv.contains(2.0));
  CHECK_FALSE(iv.contains(0.0));
}

TEST_CASE("space transform preimages and ranges") {
  Interval iv(0.0, kInf);
  auto e = SpaceTransform::exp_decay(2.0);
  auto p = e.preimages(0.5, iv);
  REQUIRE(p.size() == 1);
  CHECK(e(p[0]) == doctest::Approx(0.5));
  auto [lo, hi] = e.range(iv);
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
  auto nl = SpaceTransform::neg_log();
  auto z = nl.preimages(0.0, Interval(0.0, 2.0));
  REQUIRE(z.size() == 1);
  CHECK(z[0] == doctest::Approx(1.0));
  CHECK(SpaceTransform::power(-0.5).preimages(-1.0, iv).empty());
}

TEST_CASE("clock measures and directions") {
  auto r = TimeChange::exp_decay();
  CHECK_FALSE(r.nondecreasing());
  CHECK(r.measure(0.0, kInf) == doctest::Approx(1.0));
  auto g = TimeChange::upper_gamma(0.5);
  CHECK(g.measure(1.0, 2.0) == doctest::Approx(special::upper_gamma(0.5, 1.0) - special::upper_gamma(0.5, 2.0)));
  CHECK(g.measure(0.0, kInf) == doctest::Approx(std::tgamma(0.5)));
  auto d = TimeChange::dirac(0.5);
  CHECK(d.measure(0.0, 1.0) == 1.0);
  CHECK(d.measure(0.5, 1.0) == 0.0);
  CHECK(TimeChange::neg_log().measure(0.0, 1.0) == kInf);
}

TEST_CASE("clock integration matches the measure") {
  for (auto r : {TimeChange::exp_decay(1.5), TimeChange::power(0.5), TimeChange::one_minus_exp(2.0),
                 TimeChange::upper_gamma(-0.5)}) {
    Interval iv(0.3, 4.0);
    auto q = r.integrate([](double) -> cplx { return 1.0; }, iv, {}, {});
    CHECK(q.real() == doctest::Approx(r.measure(iv.a, iv.b)).epsilon(1e-9));
  }
}

TEST_CASE("p functional") {
  for (double p : {0.5, 1.0, 2.0}) CHECK(p_functional(leb_exp(), p) == doctest::Approx(1.0 / p).epsilon(1e-8));
  // h = t against r = t^-2 diverges logarithmically at both ends for p = 2.
  IntegralMap bad(SpaceTransform::linear(), TimeChange::power(-2.0), Interval(0, kInf));
  CHECK(p_functional(bad, 2.0) == kInf);
  // h = -log t on (0, 1] with Lebesgue clock: int |log t|^p = Gamma(p + 1).
  IntegralMap nl(SpaceTransform::neg_log(), TimeChange::linear(), Interval(0, 1));
  CHECK(p_functional(nl, 1.5) == doctest::Approx(std::tgamma(2.5)).epsilon(1e-8));
}

TEST_CASE("map classification") {
  CHECK_THROWS_AS(IntegralMap(SpaceTransform::constant(0.0), TimeChange::linear(), Interval(0, 1)), InputError);
  CHECK(classify(IntegralMap::trivial(SpaceTransform::constant(0.0), TimeChange::linear(), Interval(0, 1))) ==
        MapClass::zero);
  CHECK(classify(IntegralMap::trivial(SpaceTransform::linear(), TimeChange::linear(0.0), Interval(0, 1))) ==
        MapClass::zero);
  CHECK(classify(IntegralMap(SpaceTransform::constant(1.0), TimeChange::linear(), Interval(0, 1))) ==
        MapClass::identity);
  CHECK(classify(IntegralMap(SpaceTransform::constant(-1.0), TimeChange::exp_decay(), Interval(0, kInf))) ==
        MapClass::identity);
  CHECK(classify(IntegralMap(SpaceTransform::constant(1.0), TimeChange::linear(), Interval(0, 2))) ==
        MapClass::generic);
  CHECK(classify(IntegralMap(SpaceTransform::linear(2.0), TimeChange::dirac(0.5), Interval(0, 1))) ==
        MapClass::identity);
  CHECK(classify(leb_exp()) == MapClass::generic);
}

TEST_CASE("reverse clock flips orientation and reflects") {
  IntegralMap m(SpaceTransform::linear(), TimeChange::exp_decay(), Interval(0, kInf));
  CHECK(m.effective_sign() == -1.0);
  auto rev = reverse_clock(m);
  CHECK(rev.r().nondecreasing());
  CHECK(rev.reflect_input());
  CHECK(rev.effective_sign() == -1.0);
  CHECK(rev.r()(0.0) == doctest::Approx(0.0));
  CHECK(rev.r()(2.0) == doctest::Approx(1.0 - std::exp(-2.0)));
  CHECK_THROWS_AS(reverse_clock(leb_exp()), InputError);
  IntegralMap nl(SpaceTransform::exp_decay(), TimeChange::neg_log(), Interval(0, 1));
  CHECK_THROWS_AS(reverse_clock(nl), UnsupportedError);
}

TEST_CASE("image measure of exponential factors has log-power tail") {
  ImageMeasure two({leb_exp(), leb_exp()});
  CHECK(two.support() == Interval(0, 1));
  for (double w : {0.05, 0.3, 0.8}) {
    const double L = -std::log(w);
    CHECK(two.tail(w) == doctest::Approx(L * L / 2).epsilon(1e-7));
    CHECK(two.tail(w) == doctest::Approx(catalog_tail(CatalogClock::log_power, 2, w)).epsilon(1e-7));
  }
}

TEST_CASE("image measure tail for the Thorin pair") {
  IntegralMap second(SpaceTransform::linear(), TimeChange::one_minus_exp(), Interval(0, kInf));
  ImageMeasure im({leb_exp(), second});
  for (double w : {0.1, 1.0, 3.0}) CHECK(im.tail(w) == doctest::Approx(special::expint_e1(w)).epsilon(1e-7));
  // int min(1, w^2) image(dw) against the catalog density.
  auto q = im.integrate([](double w) -> cplx { return std::min(1.0, w * w); }, std::vector<double>{1.0}, {});
  // int_0^1 w e^-w dw + E1(1) = 1 - 2/e + E1(1)
  CHECK(q.real() == doctest::Approx(1.0 - 2.0 * std::exp(-1.0) + special::expint_e1(1.0)).epsilon(1e-6));
}

TEST_CASE("power pair has tail (1 - w^beta)^2") {
  const double beta = 0.7;
  IntegralMap f1(SpaceTransform::power(1.0 / beta), TimeChange::linear(), Interval(0, 1));
  IntegralMap f2(SpaceTransform::power(1.0 / (2 * beta)), TimeChange::linear(), Interval(0, 1));
  ImageMeasure im({f1, f2});
  for (double w : {0.2, 0.6}) {
    const double v = std::pow(w, beta);
    CHECK(im.tail(w) == doctest::Approx((1 - v) * (1 - v)).epsilon(1e-7));
    CHECK(catalog_tail(CatalogClock::power_pair, beta, w) == doctest::Approx((1 - v) * (1 - v)));
  }
}

TEST_CASE("catalog densities integrate to tails") {
  struct C {
    CatalogClock id;
    double p;
  };
  for (C c : {C{CatalogClock::log_power, 3}, C{CatalogClock::thorin, 0}, C{CatalogClock::power_pair, 0.6},
              C{CatalogClock::power_exp, 0.5}, C{CatalogClock::gamma_exp, 0.5}}) {
    const double lo = 0.2, hi = 0.7;
    auto q = integrate_finite([&](double w) -> cplx { return catalog_density(c.id, c.p, w); }, lo, hi);
    CHECK(q.real() == doctest::Approx(catalog_tail(c.id, c.p, lo) - catalog_tail(c.id, c.p, hi)).epsilon(1e-8));
  }
}

TEST_CASE("level set measure") {
  IntegralMap m(SpaceTransform::linear(), TimeChange::exp_decay(), Interval(0, kInf));
  // g = -t; {g < -2} = (2, inf), rho = e^-2.
  CHECK(level_set_measure(m, -2.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(level_set_measure(m, 2.0) == 0.0);
}

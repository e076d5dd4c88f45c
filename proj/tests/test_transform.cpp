#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "levi/errors.hpp"
#include "levi/transform.hpp"

using namespace levi;

namespace {

IntegralMap class_l() { return IntegralMap(SpaceTransform::exp_decay(), TimeChange::linear(), Interval(0, kInf)); }
IntegralMap unit_linear() { return IntegralMap(SpaceTransform::linear(), TimeChange::linear(), Interval(0, 1)); }

LevyTriple poisson3() {
  return LevyTriple(0.3, 0.0, LevyMeasure::atomic({{0.5, 1.0}, {-1.5, 0.7}, {3.0, 0.4}}));
}
LevyTriple gamma_law() {
  return LevyTriple(0.0, 0.0, LevyMeasure::density({DensityPiece{1.0, 1.0, 1.0, 0.0, 0.0, 0.0, kInf}}));
}

double sup_diff(const ExponentFn& a, const ExponentFn& b) {
  double m = 0.0;
  for (double y : default_y_grid()) m = std::max(m, std::abs(a(y) - b(y)));
  return m;
}

}  // namespace

TEST_CASE("identity and zero maps") {
  IntegralMap id(SpaceTransform::constant(1.0), TimeChange::linear(), Interval(0, 1));
  ExponentFn phi = exponent_fn(poisson3());
  CHECK(sup_diff(transform_exponent(id, phi), phi) < 1e-9);
  IntegralMap zero = IntegralMap::trivial(SpaceTransform::constant(0.0), TimeChange::linear(), Interval(0, 1));
  LevyTriple z = transform_triple(zero, poisson3());
  CHECK(z.shift == 0.0);
  CHECK(z.gaussian_var == 0.0);
  CHECK(z.levy.empty());
  CHECK(sup_diff(exponent_fn(transform_triple(id, poisson3())), phi) < 1e-12);
}

TEST_CASE("gaussian under h = t, r = t on (0, 1]") {
  ExponentFn g = transform_exponent(unit_linear(), exponent_fn(LevyTriple(0, 1)));
  for (double y : default_y_grid()) CHECK(std::abs(g(y) - cplx(-y * y / 6.0, 0)) < 1e-12);
  LevyTriple t = transform_triple(unit_linear(), LevyTriple(0, 1));
  CHECK(std::abs(t.gaussian_var - 1.0 / 3.0) < 1e-10);
}

TEST_CASE("stable exponents scale by the p functional") {
  for (double p : {0.5, 1.0, 1.7, 2.0}) {
    ExponentFn phi = stable_exponent(1.3, p);
    ExponentFn out = transform_exponent(class_l(), phi);
    for (double y : default_y_grid()) CHECK(std::abs(out(y) - phi(y) / p) < 1e-8 * std::max(1.0, std::abs(phi(y))));
  }
}

TEST_CASE("atom pushforward under the uniform clock") {
  const double x0 = 2.5;
  LevyTriple t(0, 0, LevyMeasure::atomic({{x0, 1.0}}));
  LevyTriple out = transform_triple(unit_linear(), t);
  for (double v : {0.1, 1.0, 2.0}) CHECK(out.levy.tail(v) == doctest::Approx(1.0 - v / x0).epsilon(1e-12));
  // Independent brute force: midpoint rule over t for the same tail.
  const int n = 200000;
  double brute = 0.0;
  for (int i = 0; i < n; ++i) brute += ((i + 0.5) / n * x0 > 1.0) ? 1.0 / n : 0.0;
  CHECK(out.levy.tail(1.0) == doctest::Approx(brute).epsilon(1e-5));
}

TEST_CASE("triple route matches exponent route") {
  std::vector<IntegralMap> maps{
      class_l(), unit_linear(),
      IntegralMap(SpaceTransform::linear(), TimeChange::one_minus_exp(), Interval(0, kInf)),
      IntegralMap(SpaceTransform::linear(), TimeChange::exp_decay(), Interval(0, kInf)),
      IntegralMap(SpaceTransform::power(2.0, 1.5), TimeChange::power(0.5), Interval(0, 2))};
  std::vector<LevyTriple> laws{poisson3(), LevyTriple(-0.4, 0.8, LevyMeasure::atomic({{0.2, 3.0}, {-4.0, 0.5}}))};
  for (const IntegralMap& m : maps)
    for (const LevyTriple& t : laws) {
      LevyTriple tt = transform_triple(m, t);
      const double d = sup_diff(exponent_fn(tt), transform_exponent(m, exponent_fn(t)));
      CHECK_MESSAGE(d < 1e-6, m.describe() << " on " << t.describe());
    }
}

TEST_CASE("density law through the triple route") {
  LevyTriple t = gamma_law();
  IntegralMap m(SpaceTransform::linear(), TimeChange::one_minus_exp(), Interval(0, kInf));
  LevyTriple tt = transform_triple(m, t);
  for (double y : {-2.0, 0.5, 1.0}) CHECK(std::abs(levy_exponent(tt, y) - transform_exponent(m, exponent_fn(t))(y)) < 1e-6);
}

TEST_CASE("homomorphism and dilation identities") {
  IntegralMap m(SpaceTransform::linear(), TimeChange::one_minus_exp(), Interval(0, kInf));
  const QuadOptions tight{.abs_tol = 1e-12, .rel_tol = 1e-11};
  LevyTriple a = poisson3(), b(0.1, 0.5, LevyMeasure::atomic({{-0.7, 2.0}}));
  ExponentFn sum = transform_exponent(m, exponent_fn(convolve(a, b)), tight);
  ExponentFn parts_a = transform_exponent(m, exponent_fn(a), tight),
            parts_b = transform_exponent(m, exponent_fn(b), tight);
  for (double y : default_y_grid()) CHECK(std::abs(sum(y) - parts_a(y) - parts_b(y)) < 1e-9);

  const double s = 1.7, u = -0.6;
  ExponentFn lhs = transform_exponent(m, exponent_fn(convolution_power(a, s)), tight);
  ExponentFn clock = transform_exponent(m.with_r(m.r().scaled(s)), exponent_fn(a), tight);
  CHECK(sup_diff(lhs, clock) < 1e-8);
  CHECK(sup_diff(lhs, exponent_fn(convolution_power(transform_triple(m, a, tight), s), tight)) < 1e-8);
  ExponentFn dl = transform_exponent(m, exponent_fn(dilate(a, u)), tight);
  CHECK(sup_diff(dl, transform_exponent(m.with_h(m.h().scaled(u)), exponent_fn(a), tight)) < 1e-8);
  CHECK(sup_diff(dl, exponent_fn(dilate(transform_triple(m, a, tight), u, tight), tight)) < 1e-8);
}

TEST_CASE("decreasing clock equals reversed clock on the reflected law") {
  IntegralMap m(SpaceTransform::linear(), TimeChange::exp_decay(), Interval(0, kInf));
  IntegralMap rev = reverse_clock(m);
  IntegralMap plain(rev.h(), rev.r(), rev.interval());
  LevyTriple t = poisson3();
  CHECK(sup_diff(transform_exponent(m, exponent_fn(t)), transform_exponent(plain, exponent_fn(reflect(t)))) < 1e-8);
  CHECK(sup_diff(transform_exponent(m, exponent_fn(t)), transform_exponent(rev, exponent_fn(t))) < 1e-8);
  // r(t) = 1 - t on (0, 1] reverses to the Lebesgue clock.
  IntegralMap lin(SpaceTransform::linear(), TimeChange::linear(-1.0).shifted(1.0), Interval(0, 1));
  IntegralMap lr = reverse_clock(lin);
  CHECK(lr.reflect_input());
  CHECK(lr.r()(0.3) == doctest::Approx(0.3));
  IntegralMap pw(SpaceTransform::linear(), TimeChange::power(-2.0), Interval(0, 1));
  CHECK_THROWS_AS(reverse_clock(pw), UnsupportedError);
}

TEST_CASE("equal tails without a Levy measure") {
  IntegralMap m(SpaceTransform::linear(), TimeChange::power(-2.0), Interval(0, kInf));
  auto M = std::make_shared<const LevyMeasure>(LevyMeasure::atomic({{1.0, 4.0}}));
  auto N = std::make_shared<const LevyMeasure>(LevyMeasure::atomic({{2.0, 0.5}, {-2.0, 0.5}}));
  auto map = std::make_shared<const IntegralMap>(m);
  LevyMeasure pm = LevyMeasure::pushforward(M, map), pn = LevyMeasure::pushforward(N, map);
  for (double v : {0.5, 1.0, 3.0}) {
    // g = -t: the image sits on the negative half-line with |tail| = v^-2 int x^2
    CHECK(pm.tail(-v) + pm.tail(v) == doctest::Approx(4.0 / (v * v)).epsilon(1e-10));
    CHECK(pn.tail(-v) + pn.tail(v) == doctest::Approx(4.0 / (v * v)).epsilon(1e-10));
  }
  CHECK_FALSE(pm.mass().finite);
  CHECK_FALSE(pn.mass().finite);
  CHECK_FALSE(domain_check(m, LevyTriple(0, 0, *M)).admitted);
  CHECK_THROWS_AS(transform_triple(m, LevyTriple(0, 0, *M)), DomainError);
}

TEST_CASE("domain predicates") {
  IntegralMap finite(SpaceTransform::linear(), TimeChange::linear(), Interval(0, 3));
  DomainReport r = domain_check(finite, poisson3());
  CHECK(r.admitted);
  CHECK(r.shortcut_used.value() == "finite-clock");

  IntegralMap ex1(SpaceTransform::linear(), TimeChange::neg_log(), Interval(0, 1));
  DomainReport g = domain_check(ex1, gamma_law());
  CHECK(g.admitted);

  LevyTriple heavy(0, 0, LevyMeasure::density({DensityPiece{1.0, 1.0, 0, 2.0, 0, std::exp(1.0), kInf}}));
  DomainReport h = domain_check(class_l(), heavy);
  CHECK_FALSE(h.admitted);
  REQUIRE(h.find("example1_logmoment") != nullptr);
  CHECK_FALSE(h.find("example1_logmoment")->passed);

  DomainReport id2 = domain_check(class_l(), poisson3());
  CHECK(id2.admitted);
  CHECK(id2.shortcut_used.value() == "second-moment");

  IntegralMap r7(SpaceTransform::linear(), TimeChange::power(-3.0), Interval(0, 1));
  DomainReport st = domain_check(r7, LevyTriple(0, 1));
  CHECK_FALSE(st.admitted);
}

TEST_CASE("necessary condition holds whenever a law with jumps is admitted") {
  std::vector<IntegralMap> maps{class_l(), unit_linear(),
                                IntegralMap(SpaceTransform::linear(), TimeChange::power(-2.0), Interval(0, kInf)),
                                IntegralMap(SpaceTransform::linear(), TimeChange::neg_log(), Interval(0, 1))};
  for (const IntegralMap& m : maps) {
    DomainReport r = domain_check(m, poisson3());
    if (r.admitted) CHECK(std::isfinite(clock_functional(m, [](double x) { return std::min(1.0, x * x); })));
  }
}

TEST_CASE("distinct atomic measures have distinct pushforwards under finite clocks") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> loc(0.2, 3.0), mass(0.5, 2.0);
  auto map = std::make_shared<const IntegralMap>(unit_linear());
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Atom> a{{loc(rng), mass(rng)}, {loc(rng), mass(rng)}}, b = a;
    b[1].x *= 1.1;
    auto pa = LevyMeasure::pushforward(std::make_shared<const LevyMeasure>(LevyMeasure::atomic(a)), map);
    auto pb = LevyMeasure::pushforward(std::make_shared<const LevyMeasure>(LevyMeasure::atomic(b)), map);
    double sep = 0.0;
    for (int k = 1; k <= 40; ++k) sep = std::max(sep, std::abs(pa.tail(0.1 * k) - pb.tail(0.1 * k)));
    CHECK(sep > 1e-3);
  }
}

TEST_CASE("retrieval limit") {
  std::vector<double> xs{0.7, 0.6, 0.55, 0.525};
  RetrievalReport r = retrieval_limit_check(unit_linear(), LevyTriple(0, 1), 0.5, xs, default_y_grid());
  CHECK(r.monotone);
  CHECK(r.order > 0.9);
  IntegralMap id(SpaceTransform::constant(1.0), TimeChange::linear(), Interval(0, 1));
  RetrievalReport e = retrieval_limit_check(id, LevyTriple(0, 1), 0.5, xs, default_y_grid());
  CHECK(e.exact);
  IntegralMap zero_h(SpaceTransform::linear(), TimeChange::linear(), Interval(0, 1));
  CHECK_THROWS_AS(retrieval_limit_check(zero_h, LevyTriple(0, 1), 0.0, xs, default_y_grid()), InputError);
}

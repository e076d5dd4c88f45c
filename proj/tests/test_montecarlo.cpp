#include <cmath>
#include <numeric>

#include "doctest.h"
#include "levi/errors.hpp"
#include "levi/montecarlo.hpp"
#include "levi/rng.hpp"
#include "levi/transform.hpp"

using namespace levi;

namespace {

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }
double var_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

LevyTriple poisson3() {
  return LevyTriple(0.3, 0.0, LevyMeasure::atomic({{0.5, 1.0}, {-1.5, 0.7}, {3.0, 0.4}}));
}

IntegralMap class_l() { return IntegralMap(SpaceTransform::exp_decay(), TimeChange::linear(), Interval(0, kInf)); }
IntegralMap unit_linear() { return IntegralMap(SpaceTransform::linear(), TimeChange::linear(), Interval(0, 1)); }

}  // namespace

TEST_CASE("Gaussian increments have mean z dt and variance R dt") {
  auto g = make_stream(5, 0);
  const std::size_t n = 100000;
  std::vector<double> x = sample_levy_increments(LevyTriple(0.5, 2.0), 1.0, n, g);
  CHECK(std::abs(mean_of(x) - 0.5) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(var_of(x) - 2.0) < 4.0 * 2.0 * std::sqrt(2.0 / n));
}

TEST_CASE("single atom jump counts are Poisson") {
  // Atom at 1 with rate 3; shift 3 cancels the ball compensation, so the
  // increment is the jump count itself.
  const double lambda = 3.0, dt = 0.5;
  LevyTriple t(lambda, 0.0, LevyMeasure::atomic({{1.0, lambda}}));
  auto g = make_stream(9, 0);
  const std::size_t n = 100000;
  std::vector<double> x = sample_levy_increments(t, dt, n, g);
  const int bins = 8;
  std::vector<double> obs(bins + 1, 0.0);
  for (double v : x) {
    const long k = std::lround(v);
    REQUIRE(std::abs(v - k) < 1e-9);
    obs[std::min<long>(k, bins)] += 1.0;
  }
  const double mu = lambda * dt;
  double chi2 = 0.0, cum = 0.0;
  for (int k = 0; k <= bins; ++k) {
    const double p = k < bins ? std::exp(-mu + k * std::log(mu) - std::lgamma(k + 1.0)) : 1.0 - cum;
    cum += p;
    chi2 += (obs[k] - n * p) * (obs[k] - n * p) / (n * p);
  }
  CHECK(chi2 < 26.12);  // chi-square quantile, 8 degrees of freedom, p = 0.001
}

TEST_CASE("symmetric stable increments match exp(-sigma |y|^p dt)") {
  for (double p : {0.7, 1.0, 1.5}) {
    LevyTriple t(0.0, 0.0, LevyMeasure::stable(0.8, p));
    const double sigma = t.levy.stables().front().sigma();
    auto g = make_stream(21, 0);
    std::vector<double> x = sample_levy_increments(t, 0.5, 40000, g);
    for (const CFPoint& c : empirical_cf(x, {0.3, 1.0, 2.5})) {
      const double exact = std::exp(-sigma * std::pow(std::abs(c.y), p) * 0.5);
      CHECK(std::abs(c.value - exact) < 5.0 * c.std_error + 1e-12);
    }
  }
}

TEST_CASE("density laws are discretized to atoms") {
  LevyTriple gamma_law(0.0, 0.0, LevyMeasure::density({DensityPiece{1.0, 1.0, 1.0, 0.0, 0.0, 0.0, kInf}}));
  auto g = make_stream(2, 0);
  std::vector<double> x = sample_levy_increments(gamma_law, 1.0, 50000, g);
  for (const CFPoint& c : empirical_cf(x, {-2.0, 0.5, 1.0, 3.0})) {
    const cplx exact = std::exp(levy_exponent(gamma_law, c.y));
    CHECK(std::abs(c.value - exact) < 5.0 * c.std_error);
  }
  CHECK(std::abs(mean_of(x) - std::exp(-1.0)) < 5.0 / std::sqrt(50000.0));
}

TEST_CASE("small atoms below eps give a warning") {
  PathConfig cfg;
  cfg.eps = 0.6;
  IncrementModel model(poisson3(), cfg);
  CHECK(model.warnings().size() == 1);
  CHECK(model.jump_sizes().size() == 2);
}

TEST_CASE("empirical characteristic function") {
  std::vector<double> c(500, 0.7);
  for (const CFPoint& p : empirical_cf(c, {-1.0, 0.0, 2.0})) {
    CHECK(std::abs(p.value - std::exp(cplx(0.0, p.y * 0.7))) < 1e-12);
  }
  CHECK(empirical_cf(c, {0.0}).front().value == cplx(1.0, 0.0));
  auto g = make_stream(77, 0);
  std::normal_distribution<double> nd;
  std::vector<double> z(40000);
  for (double& v : z) v = nd(g);
  CFPoint p = empirical_cf(z, {1.0}).front();
  CHECK(std::abs(p.value - std::exp(-0.5)) < 4.0 / std::sqrt(40000.0));
  CHECK(p.std_error <= 1.0 / std::sqrt(40000.0));
  CHECK_THROWS_AS(empirical_cf(std::vector<double>(50, 0.0), {1.0}), InputError);
}

TEST_CASE("identity map reproduces the law") {
  IntegralMap id(SpaceTransform::constant(1.0), TimeChange::linear(), Interval(0, 1));
  PathConfig cfg;
  cfg.n_paths = 20000;
  cfg.seed = 3;
  ValidationReport r = validate_map(id, poisson3(), cfg, default_y_grid());
  CHECK(r.discretization_bound < 1e-9);
  CHECK(r.sup_error < 3.0 / std::sqrt(20000.0));
  CHECK(r.passed);
}

TEST_CASE("constant h gives the boundary term only") {
  IntegralMap m(SpaceTransform::constant(2.0), TimeChange::linear(0.5), Interval(0, 1));
  PathConfig cfg;
  cfg.n_paths = 40000;
  IntegralSample s = pathwise_integral(m, LevyTriple(0.0, 1.0), cfg);
  CHECK(std::abs(var_of(s.values) - 2.0) < 4.0 * 2.0 * std::sqrt(2.0 / cfg.n_paths));
}

TEST_CASE("h = t, r = t on (0, 1] turns N(0, 1) into variance 1/3") {
  PathConfig cfg;
  cfg.n_paths = 20000;
  cfg.resolution = 2000;
  IntegralSample s = pathwise_integral(unit_linear(), LevyTriple(0.0, 1.0), cfg);
  CHECK(s.values.size() == cfg.n_paths);
  CHECK(std::abs(var_of(s.values) - 1.0 / 3.0) < 4.0 * (1.0 / 3.0) * std::sqrt(2.0 / cfg.n_paths));
  CHECK(transform_triple(unit_linear(), LevyTriple(0.0, 1.0)).gaussian_var == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("class L map on a compound Poisson law") {
  PathConfig cfg;
  cfg.n_paths = 20000;
  cfg.truncation = 20.0;
  cfg.resolution = 2000;
  cfg.seed = 12;
  ValidationReport r = validate_map(class_l(), poisson3(), cfg, default_y_grid());
  CHECK(r.sup_error < 0.03);
  CHECK(r.passed);
  CHECK_THROWS_AS(pathwise_integral(class_l(), poisson3(), PathConfig{}), InputError);
}

TEST_CASE("decreasing clock and its reversed form") {
  IntegralMap dec(SpaceTransform::linear(), TimeChange::linear(-1.0), Interval(0, 1));
  PathConfig cfg;
  cfg.n_paths = 20000;
  cfg.resolution = 1000;
  ValidationReport a = validate_map(dec, poisson3(), cfg, default_y_grid());
  CHECK(a.passed);
  ValidationReport b = validate_map(reverse_clock(dec), poisson3(), cfg, default_y_grid());
  CHECK(b.passed);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(std::abs(a.rows[i].analytic - b.rows[i].analytic) < 1e-8);
}

TEST_CASE("identical seed and config give identical samples") {
  PathConfig cfg;
  cfg.n_paths = 500;
  cfg.resolution = 200;
  cfg.threads = 1;
  IntegralSample a = pathwise_integral(unit_linear(), poisson3(), cfg);
  cfg.threads = 4;
  IntegralSample b = pathwise_integral(unit_linear(), poisson3(), cfg);
  CHECK(a.values == b.values);
  cfg.seed = 2;
  CHECK(pathwise_integral(unit_linear(), poisson3(), cfg).values != a.values);
}

TEST_CASE("grid refinement shrinks the Gaussian discretization error") {
  double prev = kInf;
  for (std::size_t res : {5, 20, 80, 320}) {
    PathConfig cfg;
    cfg.n_paths = 200;
    cfg.resolution = res;
    ValidationReport r = validate_map(unit_linear(), LevyTriple(0.0, 1.0), cfg, default_y_grid());
    CHECK(r.discretization_bound < prev);
    prev = r.discretization_bound;
  }
}

TEST_CASE("truncation choice meets the tail bound") {
  const double T = choose_truncation(class_l(), poisson3(), 20000, default_y_grid());
  CHECK(T <= 32.0);
  CHECK(T >= 4.0);
}

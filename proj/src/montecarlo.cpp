#include "levi/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "levi/errors.hpp"
#include "levi/rng.hpp"
#include "levi/transform.hpp"

namespace levi {
namespace {

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("LEVI_CALC_THREADS")) n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, jobs / 64)));
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Simulated window and its t-grid.
struct Grid {
  Interval window;
  std::vector<double> t;
  std::vector<double> h;       // h at grid points, h(t_0) := h(a+)
  std::vector<double> drho;    // rho((t_{k-1}, t_k]), index 0 unused
  std::vector<double> cum;     // running total of drho
};

Interval simulated_window(const IntegralMap& m, const PathConfig& cfg) {
  const Interval& iv = m.interval();
  double a = iv.a, b = iv.b;
  if (!std::isfinite(b)) {
    if (!cfg.truncation) throw InputError("interval is unbounded; set a truncation T");
    b = std::min(b, *cfg.truncation);
  }
  if (cfg.lower_cut && *cfg.lower_cut > a) a = *cfg.lower_cut;
  if (!(b > a)) throw InputError("truncation window is empty");
  if (!std::isfinite(m.r().measure(a, b)))
    throw InputError("clock has infinite mass on the simulated window; set lower_cut");
  return Interval(a, b);
}

Grid make_grid(const IntegralMap& m, const PathConfig& cfg) {
  Grid g;
  g.window = simulated_window(m, cfg);
  const double a = g.window.a, b = g.window.b;
  const std::size_t n = m.h().is_constant() ? 2 : cfg.resolution;
  const bool geometric = a > 0.0 && b / a > 50.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n - 1);
    g.t.push_back(i == 0 ? a : i + 1 == n ? b : geometric ? a * std::pow(b / a, s) : a + (b - a) * s);
  }
  const double h_a = m.h().end_values(Interval(a, b)).first;
  g.h.push_back(h_a);
  g.drho.push_back(0.0);
  g.cum.push_back(0.0);
  for (std::size_t i = 1; i < n; ++i) {
    g.h.push_back(m.h()(g.t[i]));
    g.drho.push_back(m.r().measure(g.t[i - 1], g.t[i]));
    g.cum.push_back(g.cum.back() + g.drho.back());
  }
  return g;
}

double one_path(const Grid& grid, const IncrementModel& model, double sign,
                std::mt19937_64& stream, std::vector<double>& dy) {
  const std::size_t n = grid.t.size();
  dy.assign(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    dy[k] = model.drift() * grid.drho[k];
    if (model.has_continuous()) dy[k] += model.sample_continuous(grid.drho[k], stream);
  }
  const double total = grid.cum.back();
  if (model.jump_rate() > 0.0 && total > 0.0) {
    const auto jumps = std::poisson_distribution<long>(model.jump_rate() * total)(stream);
    for (long j = 0; j < jumps; ++j) {
      const double u = open_uniform(stream) * total;
      auto it = std::lower_bound(grid.cum.begin() + 1, grid.cum.end(), u);
      const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - grid.cum.begin()), n - 1);
      dy[k] += model.sample_jump(stream);
    }
  }
  // Y(r(t_0)) cancels from the formula and is set to 0; the k = 1 Stieltjes
  // term then vanishes, so h(a+) is never multiplied.
  double y = 0.0;
  double stieltjes = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    if (k >= 2) stieltjes += y * (grid.h[k] - grid.h[k - 1]);
    y += sign * dy[k];
  }
  return grid.h[n - 1] * y - stieltjes;
}

}  // namespace

IntegralSample pathwise_integral(const IntegralMap& m, const LevyTriple& t, const PathConfig& cfg) {
  cfg.validate();
  if (m.h().is_opaque()) throw UnsupportedError("opaque maps are not simulated");
  const DomainReport dom = domain_check(m, t);
  if (!dom.admitted) throw DomainError("law is outside the domain of the map");
  const IncrementModel model(t, cfg);
  IntegralSample s{std::vector<double>(cfg.n_paths), m, t, cfg, m.interval(), model.warnings()};

  const double refl = m.reflect_input() ? -1.0 : 1.0;
  const unsigned threads = worker_count(cfg.threads, cfg.n_paths);
  if (auto u = m.r().dirac_point()) {
    const double hu = m.h()(*u);
    parallel_for(cfg.n_paths, threads, [&](std::size_t i) {
      auto g = make_stream(cfg.seed, i);
      s.values[i] = hu * refl * model.sample(1.0, g);
    });
    return s;
  }
  const Grid grid = make_grid(m, cfg);
  s.window = grid.window;
  const double sign = refl * (m.r().nondecreasing() ? 1.0 : -1.0);
  parallel_for(cfg.n_paths, threads, [&](std::size_t i) {
    thread_local std::vector<double> dy;
    auto g = make_stream(cfg.seed, i);
    s.values[i] = one_path(grid, model, sign, g, dy);
  });
  return s;
}

std::vector<CFPoint> empirical_cf(const std::vector<double>& samples, const std::vector<double>& y_grid) {
  if (samples.size() < 100) throw InputError("empirical_cf needs at least 100 samples");
  const double n = static_cast<double>(samples.size());
  std::vector<CFPoint> out;
  for (double y : y_grid) {
    // Kahan sums keep the mean independent of accumulation rounding drift.
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    for (double x : samples) {
      const double a = std::cos(y * x) - cre;
      const double ta = re + a;
      cre = (ta - re) - a;
      re = ta;
      const double b = std::sin(y * x) - cim;
      const double tb = im + b;
      cim = (tb - im) - b;
      im = tb;
    }
    const cplx mean(re / n, im / n);
    out.push_back({y, y == 0.0 ? cplx(1.0, 0.0) : mean, std::sqrt(std::max(0.0, 1.0 - std::norm(mean)) / n)});
  }
  return out;
}

std::vector<CFPoint> empirical_cf(const IntegralSample& s, const std::vector<double>& y_grid) {
  return empirical_cf(s.values, y_grid);
}

ValidationReport validate_map(const IntegralMap& m, const LevyTriple& t, const PathConfig& cfg,
                              const std::vector<double>& y_grid) {
  const IntegralSample s = pathwise_integral(m, t, cfg);
  const std::vector<CFPoint> cf = empirical_cf(s, y_grid);
  const ExponentFn phi = exponent_fn(t);
  const ExponentFn exact = transform_exponent(m, phi);

  // Exponent of the discretized integral: sum_k drho_k Phi(g(t_k) y).
  std::optional<Grid> grid;
  if (!m.r().dirac_point()) grid = make_grid(m, cfg);
  const double sgn = m.effective_sign();

  ValidationReport rep;
  rep.mc_budget = 4.0 / std::sqrt(static_cast<double>(cfg.n_paths));
  for (const CFPoint& p : cf) {
    ValidationRow row{p.y, p.value, std::exp(exact(p.y)), p.std_error, 0.0};
    if (grid) {
      cplx e(0.0, 0.0);
      for (std::size_t k = 1; k < grid->t.size(); ++k) e += grid->drho[k] * phi(sgn * grid->h[k] * p.y);
      row.discretization = std::abs(std::exp(e) - row.analytic);
    }
    rep.discretization_bound = std::max(rep.discretization_bound, row.discretization);
    rep.sup_error = std::max(rep.sup_error, std::abs(row.empirical - row.analytic));
    rep.rows.push_back(row);
  }
  rep.budget = rep.mc_budget + rep.discretization_bound;
  rep.passed = rep.sup_error <= rep.budget;
  return rep;
}

double choose_truncation(const IntegralMap& m, const LevyTriple& t, std::size_t n_paths,
                         const std::vector<double>& y_grid) {
  if (m.interval().bounded()) return m.interval().b;
  const ExponentFn phi = exponent_fn(t);
  const double target = 0.1 / std::sqrt(static_cast<double>(std::max<std::size_t>(1, n_paths)));
  for (double T = std::max(1.0, 2.0 * m.interval().a); T < 1e12; T *= 2.0) {
    double worst = 0.0;
    for (double y : y_grid) {
      auto f = [&](double s) { return phi(m.g(s) * y); };
      worst = std::max(worst, std::abs(m.r().integrate(f, Interval(T, kInf), {}, QuadOptions{}).value));
    }
    if (worst <= target) return T;
  }
  throw NonConvergenceError("no truncation meets the tail bound", target);
}

}  // namespace levi

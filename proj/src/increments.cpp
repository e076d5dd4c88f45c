#include <cmath>
#include <numbers>
#include <sstream>

#include "levi/errors.hpp"
#include "levi/montecarlo.hpp"
#include "levi/rng.hpp"

namespace levi {
namespace {

constexpr double kDroppedTail = 1e-8;
constexpr int kBinsPerDecade = 48;

// |x| beyond which the piece carries less than kDroppedTail.
double upper_cut(const DensityPiece& d, double from) {
  if (std::isfinite(d.abs_hi())) return d.abs_hi();
  const LevyMeasure one = LevyMeasure::density({d});
  const double s = d.positive_side() ? 1.0 : -1.0;
  double x = std::max(2.0 * from, 2.0);
  while (one.tail(s * x) > kDroppedTail && x < 1e300) x *= 2.0;
  return x;
}

// Integral of x^k d(x) over an |x| range of one piece.
double piece_moment(const DensityPiece& d, double lo, double hi, int k) {
  const double s = d.positive_side() ? 1.0 : -1.0;
  auto f = [&](double u) {
    const double x = s * u;
    return cplx(std::pow(u, k) * d(x));
  };
  QuadOptions o{.abs_tol = 1e-13, .rel_tol = 1e-11};
  QuadResult r = lo == 0.0 ? integrate_to_endpoint(f, 0.0, hi, o) : integrate_finite(f, lo, hi, o);
  return r.real();
}

}  // namespace

void PathConfig::validate() const {
  if (!(eps > 0.0)) throw InputError("eps must be > 0");
  if (resolution < 2) throw InputError("resolution must be at least 2");
  if (n_paths == 0) throw InputError("n_paths must be positive");
  if (truncation && !(*truncation > 0.0)) throw InputError("truncation must be > 0");
  if (lower_cut && !(*lower_cut >= 0.0)) throw InputError("lower_cut must be >= 0");
}

IncrementModel::IncrementModel(const LevyTriple& t, const PathConfig& cfg) {
  cfg.validate();
  t.validate();
  drift_ = t.shift;
  gauss_ = t.gaussian_var;
  std::vector<double> weights;
  auto add_jump = [&](double x, double mass) {
    sizes_.push_back(x);
    weights.push_back(mass);
    rate_ += mass;
    if (std::abs(x) <= 1.0) drift_ -= mass * x;
  };
  auto add_small = [&](double first_outside_ball, double second) {
    if (cfg.compensate_small_jumps) drift_ += first_outside_ball;
    if (cfg.gaussian_substitute) gauss_ += second;
  };

  for (const Atom& a : t.levy.atoms()) {
    if (std::abs(a.x) > cfg.eps) {
      add_jump(a.x, a.mass);
    } else {
      std::ostringstream w;
      w << "eps " << cfg.eps << " exceeds the atom at " << a.x << "; it is not simulated";
      warnings_.push_back(w.str());
      add_small(std::abs(a.x) > 1.0 ? a.mass * a.x : 0.0, a.mass * a.x * a.x);
    }
  }

  for (const DensityPiece& d : t.levy.densities()) {
    const double s = d.positive_side() ? 1.0 : -1.0;
    const double lo = std::max(d.abs_lo(), cfg.eps);
    if (d.abs_lo() < cfg.eps) {
      const double top = std::min(cfg.eps, d.abs_hi());
      const double outside = top > 1.0 ? s * piece_moment(d, std::max(1.0, d.abs_lo()), top, 1) : 0.0;
      add_small(outside, piece_moment(d, d.abs_lo(), top, 2));
    }
    if (!(d.abs_hi() > lo)) continue;
    const double hi = upper_cut(d, lo);
    const int bins = std::max(32, static_cast<int>(std::ceil(kBinsPerDecade * std::log10(hi / lo))));
    double u0 = lo;
    for (int i = 1; i <= bins; ++i) {
      const double u1 = i == bins ? hi : lo * std::pow(hi / lo, static_cast<double>(i) / bins);
      const double m0 = piece_moment(d, u0, u1, 0);
      if (m0 > 0.0) {
        const double m1 = piece_moment(d, u0, u1, 1);
        // Bins straddling |x| = 1 keep their exact first moment inside the ball.
        if (u0 < 1.0 && u1 > 1.0) {
          const double inside = piece_moment(d, u0, 1.0, 1);
          sizes_.push_back(s * m1 / m0);
          weights.push_back(m0);
          rate_ += m0;
          drift_ -= s * inside;
        } else {
          add_jump(s * m1 / m0, m0);
        }
      }
      u0 = u1;
    }
  }

  for (const StablePart& sp : t.levy.stables()) stables_.emplace_back(sp.sigma(), sp.p);
  if (!t.levy.pushforwards().empty())
    throw UnsupportedError("pushforward Levy measures cannot be simulated; transform the law first");
  if (!weights.empty()) pick_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
}

double sample_symmetric_stable(double scale, double p, std::mt19937_64& g) {
  const double v = std::numbers::pi * (open_uniform(g) - 0.5);
  const double c = std::pow(scale, 1.0 / p);
  if (std::abs(p - 1.0) < 1e-12) return c * std::tan(v);
  const double w = -std::log(open_uniform(g));
  return c * std::sin(p * v) / std::pow(std::cos(v), 1.0 / p) * std::pow(std::cos((1.0 - p) * v) / w, (1.0 - p) / p);
}

double IncrementModel::sample_jump(std::mt19937_64& g) const { return sizes_[pick_(g)]; }

double IncrementModel::sample_continuous(double dt, std::mt19937_64& g) const {
  double x = 0.0;
  if (gauss_ > 0.0) x += std::sqrt(gauss_ * dt) * std::normal_distribution<double>()(g);
  for (auto [sigma, p] : stables_) x += sample_symmetric_stable(sigma * dt, p, g);
  return x;
}

double IncrementModel::sample(double dt, std::mt19937_64& g) const {
  double x = drift_ * dt + sample_continuous(dt, g);
  if (rate_ > 0.0) {
    const auto n = std::poisson_distribution<long>(rate_ * dt)(g);
    for (long i = 0; i < n; ++i) x += sample_jump(g);
  }
  return x;
}

std::vector<double> sample_levy_increments(const LevyTriple& t, double dt, std::size_t n, std::mt19937_64& stream,
                                           const PathConfig& cfg) {
  if (!(dt >= 0.0)) throw InputError("dt must be >= 0");
  const IncrementModel model(t, cfg);
  std::vector<double> out(n);
  for (double& x : out) x = model.sample(dt, stream);
  return out;
}

}  // namespace levi

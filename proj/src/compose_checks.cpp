#include <algorithm>
#include <cmath>

#include "levi/compose.hpp"
#include "levi/errors.hpp"
#include "levi/rng.hpp"
#include "levi/transform.hpp"

namespace levi {
namespace {

// Part (lo, hi] of one factor's interval that the sampler draws from.
struct Piece {
  double lo = 0.0;
  double hi = 0.0;
  double mass = 0.0;
};

struct FactorSampler {
  const IntegralMap* map = nullptr;
  std::optional<double> dirac;
  std::vector<Piece> pieces;
  double total = 0.0;
};

double inner(double lo, double hi) { return std::isfinite(hi) ? 0.5 * (lo + hi) : std::max(2.0 * lo, lo + 1.0); }

FactorSampler make_sampler(const IntegralMap& m, double level) {
  FactorSampler s;
  s.map = &m;
  if ((s.dirac = m.r().dirac_point())) return s;
  const Interval& iv = m.interval();
  std::vector<double> cuts{iv.a};
  if (level > 0.0) {
    for (double v : {level, -level})
      for (double p : m.g_preimages(v)) cuts.push_back(p);
  }
  cuts.push_back(iv.b);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    if (std::abs(m.g(inner(cuts[i], cuts[i + 1]))) < level) continue;
    const double mass = m.r().measure(cuts[i], cuts[i + 1]);
    if (!std::isfinite(mass))
      throw InputError("clock has infinite mass on the sampled range; declare a window with positive lower end");
    if (mass > 0.0) s.pieces.push_back({cuts[i], cuts[i + 1], mass});
    s.total += mass;
  }
  if (s.pieces.empty()) throw InputError("window is unreachable for factor " + m.describe());
  return s;
}

// t in (lo, hi] with rho((lo, t]) = target, by bisection.
double invert_clock(const TimeChange& r, const Piece& p, double target) {
  double lo = p.lo, hi = p.hi;
  if (!std::isfinite(hi)) {
    hi = std::max(2.0 * lo, lo + 1.0);
    while (r.measure(p.lo, hi) < target) hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (r.measure(p.lo, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double draw(const FactorSampler& s, std::mt19937_64& g) {
  if (s.dirac) return *s.dirac;
  double u = open_uniform(g) * s.total;
  const Piece* pick = &s.pieces.back();
  for (const Piece& p : s.pieces) {
    if (u <= p.mass) {
      pick = &p;
      break;
    }
    u -= p.mass;
  }
  return invert_clock(s.map->r(), *pick, std::min(u, pick->mass));
}

double sup_abs_g(const IntegralMap& m) {
  if (auto u = m.r().dirac_point()) return std::abs(m.g(*u));
  auto [lo, hi] = m.g_range();
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

PushforwardResult image_density_mc(const std::vector<IntegralMap>& maps, std::size_t n, std::uint64_t seed,
                                   std::optional<std::pair<double, double>> window) {
  if (maps.empty()) throw InputError("image_density_mc needs at least one map");
  if (n == 0) throw InputError("image_density_mc needs n > 0");
  for (const IntegralMap& m : maps)
    if (m.h().is_opaque()) throw UnsupportedError("opaque space transforms cannot be sampled");
  const Composition comp = compose_detailed(maps);
  if (!comp.image) throw InputError("image_density_mc needs nontrivial factors");
  const Interval sup = comp.image->support();
  PushforwardResult res;
  res.seed = seed;
  res.catalog_id = comp.catalog_id;
  res.window_lo = window ? window->first : sup.a;
  res.window_hi = window ? window->second : sup.b;
  if (!(res.window_hi > res.window_lo) || res.window_lo < 0.0) throw InputError("window must satisfy 0 <= lo < hi");

  std::vector<FactorSampler> samplers;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    double others = 1.0;
    for (std::size_t j = 0; j < maps.size(); ++j)
      if (j != i) others *= sup_abs_g(maps[j]);
    const double level = std::isfinite(others) && others > 0.0 ? res.window_lo / others : 0.0;
    samplers.push_back(make_sampler(maps[i], level));
  }

  const std::size_t cap = 2000 * n + 10000;
  res.samples.reserve(n);
  for (std::size_t k = 0; res.samples.size() < n; ++k) {
    if (k >= cap) throw InputError("window carries too little of the sampled mass");
    auto g = make_stream(seed, k);
    double w = 1.0;
    for (const FactorSampler& s : samplers) w *= std::abs(s.map->g(draw(s, g)));
    ++res.attempts;
    if (w > res.window_lo && w <= res.window_hi) res.samples.push_back(w);
  }

  const CatalogClock* cc = nullptr;
  CatalogClock clock_id{};
  if (comp.map.r().kind() == TimeChange::Kind::catalog) {
    clock_id = comp.map.r().catalog_id();
    cc = &clock_id;
  }
  const double param = comp.map.r().param();
  auto tail = [&](double w) {
    if (w >= sup.b) return 0.0;
    if (w <= sup.a) {
      double total = 1.0;
      for (const FactorSampler& s : samplers) total *= s.dirac ? 1.0 : s.total;
      return total;
    }
    return cc ? catalog_tail(*cc, param, w) : comp.image->tail(w);
  };
  const double t_lo = tail(res.window_lo);
  const double t_hi = tail(res.window_hi);
  auto cdf = [&](double w) { return (t_lo - tail(w)) / (t_lo - t_hi); };
  if (cc) {
    res.ks = ks_statistic(res.samples, cdf);
  } else {
    // The numerical tail is a nested quadrature; compare on 256 order statistics.
    std::vector<double> sorted = res.samples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = std::min<std::size_t>(256, sorted.size());
    double d = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      const std::size_t i = (q * (sorted.size() - 1)) / std::max<std::size_t>(1, m - 1);
      const double f = cdf(sorted[i]);
      const double nn = static_cast<double>(sorted.size());
      d = std::max({d, (static_cast<double>(i) + 1.0) / nn - f, f - static_cast<double>(i) / nn});
    }
    res.ks = d;
  }
  return res;
}

namespace {

double exponent_gap(const ExponentFn& a, const ExponentFn& b, const std::vector<double>& ys) {
  double d = 0.0;
  for (double y : ys) {
    try {
      d = std::max(d, std::abs(a(y) - b(y)));
    } catch (const DomainError&) {
      return kInf;
    } catch (const NonConvergenceError&) {
      return kInf;
    }
  }
  return d;
}

}  // namespace

EquivalenceReport equivalence_check(const IntegralMap& m1, const IntegralMap& m2, const std::vector<LevyTriple>& laws,
                                    const std::vector<double>& y_grid, double tol) {
  EquivalenceReport rep;
  rep.direct_discrepancy = 0.0;
  rep.reflected_discrepancy = 0.0;
  for (const LevyTriple& law : laws) {
    const ExponentFn phi = exponent_fn(law);
    const ExponentFn phi_ref = exponent_fn(reflect(law));
    const ExponentFn t1 = transform_exponent(m1, phi);
    rep.direct_discrepancy = std::max(rep.direct_discrepancy, exponent_gap(t1, transform_exponent(m2, phi), y_grid));
    rep.reflected_discrepancy =
        std::max(rep.reflected_discrepancy, exponent_gap(t1, transform_exponent(m2, phi_ref), y_grid));
  }
  if (rep.direct_discrepancy <= tol) {
    rep.pairing = "direct";
    rep.sup_discrepancy = rep.direct_discrepancy;
    rep.equivalent = true;
  } else if (rep.reflected_discrepancy <= tol) {
    rep.pairing = "reflected";
    rep.sup_discrepancy = rep.reflected_discrepancy;
    rep.equivalent = true;
  } else {
    rep.pairing = "none";
    rep.sup_discrepancy = std::min(rep.direct_discrepancy, rep.reflected_discrepancy);
  }
  return rep;
}

CommutativityReport commutativity_check(const IntegralMap& m1, const IntegralMap& m2,
                                        const std::vector<LevyTriple>& laws, const std::vector<double>& y_grid,
                                        double tol) {
  CommutativityReport rep;
  rep.order_discrepancy = 0.0;
  rep.composed_discrepancy = 0.0;
  std::optional<IntegralMap> composed;
  try {
    composed = compose({m1, m2});
  } catch (const UnsupportedError&) {
    rep.composed_discrepancy = kInf;
  }
  for (const LevyTriple& law : laws) {
    const ExponentFn phi = exponent_fn(law);
    const ExponentFn e12 = transform_exponent(m1, transform_exponent(m2, phi));
    const ExponentFn e21 = transform_exponent(m2, transform_exponent(m1, phi));
    rep.order_discrepancy = std::max(rep.order_discrepancy, exponent_gap(e12, e21, y_grid));
    if (composed)
      rep.composed_discrepancy =
          std::max(rep.composed_discrepancy, exponent_gap(e12, transform_exponent(*composed, phi), y_grid));
  }
  rep.commute = rep.order_discrepancy <= tol;
  return rep;
}

}  // namespace levi

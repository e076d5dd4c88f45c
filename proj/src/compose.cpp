#include "levi/compose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "levi/errors.hpp"
#include "levi/rng.hpp"
#include "levi/transform.hpp"

namespace levi {
namespace {

bool near(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

// Shape of one factor as seen by the product measure: |g| up to form, rho up
// to form, interval.
enum class AbsG { exp1, power, other };
enum class Rho { lebesgue, exp_density, gamma, other };

struct FactorShape {
  AbsG g = AbsG::other;
  double g_param = 0.0;
  Rho rho = Rho::other;
  double rho_param = 0.0;
  bool unit_interval = false;
  bool half_line = false;
};

FactorShape shape_of(const IntegralMap& m) {
  FactorShape s;
  const SpaceTransform& h = m.h();
  const TimeChange& r = m.r();
  const Interval& iv = m.interval();
  s.unit_interval = iv.a == 0.0 && iv.b == 1.0;
  s.half_line = iv.a == 0.0 && iv.b == kInf;
  if (near(std::abs(h.scale()), 1.0)) {
    switch (h.kind()) {
      case SpaceTransform::Kind::exp:
        if (near(h.param(), 1.0)) s.g = AbsG::exp1;
        break;
      case SpaceTransform::Kind::linear:
        s.g = AbsG::power;
        s.g_param = 1.0;
        break;
      case SpaceTransform::Kind::power:
        s.g = AbsG::power;
        s.g_param = h.param();
        break;
      default: break;
    }
  }
  if (near(std::abs(r.scale()), 1.0)) {
    switch (r.kind()) {
      case TimeChange::Kind::linear: s.rho = Rho::lebesgue; break;
      case TimeChange::Kind::one_minus_exp:
      case TimeChange::Kind::exp_decay:
        if (near(r.param(), 1.0)) s.rho = Rho::exp_density;
        break;
      case TimeChange::Kind::upper_gamma:
        s.rho = Rho::gamma;
        s.rho_param = r.param();
        break;
      default: break;
    }
  }
  return s;
}

bool is_a(const FactorShape& s) { return s.g == AbsG::exp1 && s.rho == Rho::lebesgue && s.half_line; }
bool is_b(const FactorShape& s) {
  return s.g == AbsG::power && near(s.g_param, 1.0) && s.rho == Rho::exp_density && s.half_line;
}
std::optional<double> power_on_unit(const FactorShape& s) {
  if (s.g == AbsG::power && s.rho == Rho::lebesgue && s.unit_interval && s.g_param > 0.0) return s.g_param;
  return std::nullopt;
}
std::optional<double> gamma_factor(const FactorShape& s) {
  if (s.g == AbsG::power && near(s.g_param, 1.0) && s.rho == Rho::gamma && s.half_line && s.rho_param > 0.0)
    return s.rho_param;
  return std::nullopt;
}

IntegralMap zero_map() {
  return IntegralMap::trivial(SpaceTransform::constant(0.0), TimeChange::linear(), Interval(0.0, 1.0));
}

IntegralMap identity_map() { return IntegralMap(SpaceTransform::constant(1.0), TimeChange::linear(), Interval(0.0, 1.0)); }

}  // namespace

std::optional<std::pair<CatalogClock, double>> match_catalog(const std::vector<IntegralMap>& maps) {
  if (maps.empty()) return std::nullopt;
  std::vector<FactorShape> shapes;
  for (const IntegralMap& m : maps) {
    if (m.h().is_opaque() || m.r().dirac_point()) return std::nullopt;
    shapes.push_back(shape_of(m));
  }
  if (std::all_of(shapes.begin(), shapes.end(), is_a))
    return std::pair{CatalogClock::log_power, static_cast<double>(shapes.size())};
  if (shapes.size() != 2) return std::nullopt;
  for (int order = 0; order < 2; ++order) {
    const FactorShape& x = shapes[order];
    const FactorShape& y = shapes[1 - order];
    if (is_a(x) && is_b(y)) return std::pair{CatalogClock::thorin, 0.0};
    if (is_a(y)) {
      if (auto alpha = power_on_unit(x)) return std::pair{CatalogClock::power_exp, 1.0 / *alpha};
      if (auto alpha = gamma_factor(x)) return std::pair{CatalogClock::gamma_exp, *alpha};
    }
    auto p1 = power_on_unit(x);
    auto p2 = power_on_unit(y);
    if (p1 && p2 && near(*p2, *p1 / 2.0)) return std::pair{CatalogClock::power_pair, 1.0 / *p1};
  }
  return std::nullopt;
}

CatalogEntry catalog_entry(CatalogClock clock, double param) {
  const IntegralMap a(SpaceTransform::exp_decay(1.0), TimeChange::linear(), Interval(0.0, kInf));
  CatalogEntry e;
  e.clock = clock;
  e.param = param;
  switch (clock) {
    case CatalogClock::log_power: {
      const int m = static_cast<int>(std::lround(param));
      if (m < 1 || !near(param, m)) throw InputError("log_power catalog entry needs an integer m >= 1");
      e.id = "L_" + std::to_string(m);
      e.description = "m-fold composition of h = e^-t, r = t on (0, inf); tail (-log w)^m / m! on (0, 1)";
      e.constituents.assign(static_cast<std::size_t>(m), a);
      e.support = Interval(0.0, 1.0);
      e.validity = "integer m >= 1; domain is the log^m moment class";
      break;
    }
    case CatalogClock::thorin:
      e.id = "thorin";
      e.description =
          "h = e^-t, r = t composed with h = s, r = 1 - e^-s on (0, inf); image density e^-w / w, tail Gamma(0; w) "
          "evaluated by the Euler-constant series";
      e.constituents = {a, IntegralMap(SpaceTransform::linear(), TimeChange::one_minus_exp(1.0), Interval(0.0, kInf))};
      e.support = Interval(0.0, kInf);
      e.validity = "domain is the log moment class";
      break;
    case CatalogClock::power_pair:
      if (!(param > 0.0)) throw InputError("power_pair catalog entry needs beta > 0");
      e.id = "power_pair";
      e.description = "h = t^(1/beta) composed with h = s^(1/(2 beta)), r = t on (0, 1]; cdf 2 w^beta - w^(2 beta)";
      e.constituents = {IntegralMap(SpaceTransform::power(1.0 / param), TimeChange::linear(), Interval(0.0, 1.0)),
                        IntegralMap(SpaceTransform::power(0.5 / param), TimeChange::linear(), Interval(0.0, 1.0))};
      e.support = Interval(0.0, 1.0);
      e.validity = "beta > 0; probability clock, whole ID";
      break;
    case CatalogClock::power_exp:
      if (!(param > 0.0)) throw InputError("power_exp catalog entry needs beta > 0");
      e.id = "power_exp";
      e.description = "h = t^(1/beta), r = t on (0, 1] composed with h = e^-s, r = s on (0, inf); "
                      "tail w^beta / beta - log w - 1 / beta";
      e.constituents = {IntegralMap(SpaceTransform::power(1.0 / param), TimeChange::linear(), Interval(0.0, 1.0)), a};
      e.support = Interval(0.0, 1.0);
      e.validity = "beta > 0; domain is the log moment class";
      break;
    case CatalogClock::gamma_exp:
      if (!(param > 0.0)) throw InputError("gamma_exp catalog entry needs alpha > 0");
      e.id = "gamma_exp";
      e.description = "h = t, r = -Gamma(alpha; t) composed with h = e^-s, r = s on (0, inf); "
                      "tail int_w^inf s^-1 Gamma(alpha; s) ds";
      e.constituents = {IntegralMap(SpaceTransform::linear(), TimeChange::upper_gamma(param, -1.0), Interval(0.0, kInf)),
                        a};
      e.support = Interval(0.0, kInf);
      e.validity = "alpha > 0; domain is the log moment class";
      break;
  }
  return e;
}

std::vector<CatalogEntry> catalog() {
  return {catalog_entry(CatalogClock::thorin, 0.0),    catalog_entry(CatalogClock::log_power, 1.0),
          catalog_entry(CatalogClock::log_power, 2.0), catalog_entry(CatalogClock::log_power, 3.0),
          catalog_entry(CatalogClock::power_pair, 1.0), catalog_entry(CatalogClock::power_exp, 1.0),
          catalog_entry(CatalogClock::gamma_exp, 1.0)};
}

std::optional<CatalogEntry> catalog_lookup(const std::string& id) {
  for (CatalogEntry& e : catalog())
    if (e.id == id) return std::move(e);
  return std::nullopt;
}

Composition compose_detailed(const std::vector<IntegralMap>& maps) {
  if (maps.empty()) throw InputError("compose needs at least one map");
  for (const IntegralMap& m : maps)
    if (m.h().is_opaque()) throw UnsupportedError("opaque space transforms cannot be composed");
  double dil = 1.0;
  std::vector<IntegralMap> generic;
  for (const IntegralMap& m : maps) {
    switch (classify(m)) {
      case MapClass::zero: return {zero_map(), std::nullopt, nullptr};
      case MapClass::identity: continue;
      case MapClass::generic:
        if (auto u = m.r().dirac_point()) dil *= m.g(*u);
        else generic.push_back(m);
    }
  }
  if (generic.empty()) {
    if (dil == 1.0) return {identity_map(), std::nullopt, nullptr};
    return {IntegralMap(SpaceTransform::constant(dil), TimeChange::dirac(0.5), Interval(0.0, 1.0)), std::nullopt,
            nullptr};
  }
  std::optional<std::pair<CatalogClock, double>> match;
  if (dil == 1.0) match = match_catalog(generic);
  else generic.front() = generic.front().with_h(generic.front().h().scaled(dil));
  auto image = std::make_shared<const ImageMeasure>(generic);
  const Interval sup = image->support();
  Composition c{IntegralMap(SpaceTransform::linear(image->sign()),
                            match ? TimeChange::catalog(match->first, match->second) : TimeChange::image(image), sup),
                std::nullopt, image};
  if (match) c.catalog_id = catalog_entry(match->first, match->second).id;
  return c;
}

IntegralMap compose(const std::vector<IntegralMap>& maps) { return compose_detailed(maps).map; }

}  // namespace levi

// Acceptance criteria 1-6: exponent identities checked by quadrature.

#include <cmath>

#include "acceptance_detail.hpp"
#include "levi/analysis.hpp"
#include "levi/compose.hpp"
#include "levi/errors.hpp"

namespace levi::accept {

CriterionResult triple_consistency(const Context& c) {
  CriterionResult r = result("triple/exponent consistency", 1e-6);
  const std::vector<IntegralMap> maps = c.maps("maps");
  const std::vector<LevyTriple> laws = c.laws("laws");
  const std::vector<double> ys = c.grid("y_grid", default_y_grid());
  int pairs = 0;
  std::string worst;
  r.metric = 0.0;
  for (const IntegralMap& m : maps)
    for (const LevyTriple& t : laws) {
      const LevyTriple tt = transform_triple(m, t);
      const double d = sup_gap(exponent_fn(tt), transform_exponent(m, exponent_fn(t)), ys);
      if (d >= r.metric) worst = m.describe();
      r.metric = std::max(r.metric, d);
      ++pairs;
    }
  r.passed = pairs >= 20 && r.metric <= r.tolerance;
  r.detail = std::to_string(pairs) + " pairs, worst map " + worst;
  return r;
}

CriterionResult gaussian_scaling(const Context& c) {
  CriterionResult r = result("Gaussian scaling h=t, r=t on (0,1]", 1e-10);
  const LevyTriple out = transform_triple(c.map("map"), c.law("law"));
  r.metric = std::abs(out.gaussian_var - 1.0 / 3.0);
  r.passed = r.metric <= r.tolerance && out.levy.empty();
  r.detail = "R' = " + std::to_string(out.gaussian_var);
  return r;
}

CriterionResult fixed_points(const Context& c) {
  CriterionResult r = result("fixed-point constants beta/(beta+p)", 1e-8);
  r.metric = 0.0;
  int cells = 0;
  for (double beta : c.grid("betas", {0.5, 1.0, 2.0}))
    for (double p : c.grid("ps", {0.5, 1.0, 1.5, 2.0})) {
      const IntegralMap m(SpaceTransform::linear(), TimeChange::power(beta), Interval(0, 1));
      r.metric = std::max(r.metric, std::abs(fixed_point_constant(m, p) - beta / (beta + p)));
      ++cells;
    }
  const IntegralMap bad = c.map("divergent_map");
  int infinite = 0, probed = 0;
  for (double p : default_p_grid()) {
    ++probed;
    if (std::isinf(fixed_point_constant(bad, p))) ++infinite;
  }
  r.passed = r.metric <= r.tolerance && infinite == probed;
  r.detail = std::to_string(cells) + " cells; divergent map +inf at " + std::to_string(infinite) + "/" +
             std::to_string(probed) + " p values";
  return r;
}

namespace {

ExponentFn nested(const std::vector<IntegralMap>& maps, const ExponentFn& phi) {
  ExponentFn e = phi;
  for (auto it = maps.rbegin(); it != maps.rend(); ++it) e = transform_exponent(*it, e);
  return e;
}

}  // namespace

CriterionResult composition_forms(const Context& c) {
  CriterionResult r = result("nested vs image-clock quadrature", 1e-6);
  const std::vector<LevyTriple> laws = c.laws("laws");
  const std::vector<double> ys = c.grid("y_grid", default_y_grid());
  r.metric = 0.0;
  int cases = 0;
  for (const json& e : c.cfg.at("clocks")) {
    const std::string name = e.at("clock").get<std::string>();
    const auto id = catalog_from_name(name);
    if (!id) throw InputError("unknown catalog clock " + name);
    const CatalogEntry entry = catalog_entry(*id, number_from_json(e.at("param")));
    const IntegralMap single = compose(entry.constituents);
    // Two-level nesting: longer factor lists fold their leading factors.
    std::vector<IntegralMap> pair = entry.constituents;
    if (pair.size() > 2) pair = {compose(std::vector<IntegralMap>(pair.begin(), pair.end() - 1)), pair.back()};
    for (const LevyTriple& t : laws) {
      const ExponentFn phi = exponent_fn(t);
      r.metric = std::max(r.metric, sup_gap(nested(pair, phi), transform_exponent(single, phi), ys));
      ++cases;
    }
  }
  r.passed = r.metric <= r.tolerance;
  r.detail = std::to_string(cases) + " (clock, law) cases";
  return r;
}

CriterionResult equivalence_pairs(const Context& c) {
  CriterionResult r = result("equivalent map pairs", 1e-6);
  const std::vector<LevyTriple> laws = c.laws("laws");
  const std::vector<double> ys = c.grid("y_grid", default_y_grid());
  r.metric = 0.0;
  bool all = true;
  for (const json& p : c.cfg.at("pairs")) {
    const EquivalenceReport e = equivalence_check(map_of(c, p.at(0)), map_of(c, p.at(1)), laws, ys, r.tolerance);
    r.metric = std::max(r.metric, e.sup_discrepancy);
    all = all && e.equivalent;
    if (!r.detail.empty()) r.detail += ", ";
    r.detail += e.pairing;
  }
  r.passed = all && r.metric <= r.tolerance;
  r.detail = "pairings: " + r.detail;
  return r;
}

CriterionResult commutativity(const Context& c) {
  CriterionResult r = result("commuting Thorin factors", 1e-6);
  const LevyTriple law = c.law("law");
  if (!class_membership(ClassTag{ClassId::ID_log, 1.0}, law).member) throw InputError("test law must be in ID_log");
  const CommutativityReport k =
      commutativity_check(c.map("first"), c.map("second"), {law}, c.grid("y_grid", default_y_grid()), r.tolerance);
  r.metric = k.order_discrepancy;
  r.passed = k.commute && r.metric <= r.tolerance;
  r.detail = "composed-map discrepancy " + sci(k.composed_discrepancy);
  return r;
}

}  // namespace levi::accept

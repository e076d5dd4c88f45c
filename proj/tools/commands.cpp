#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "levi/acceptance.hpp"
#include "levi/analysis.hpp"
#include "levi/compose.hpp"
#include "levi/errors.hpp"
#include "levi/montecarlo.hpp"

namespace levicli {

using levi::json;
using levi::number_to_json;

namespace {

levi::LevyTriple load_law(const std::string& path) {
  if (path.empty()) throw levi::InputError("--law is required");
  return levi::triple_from_json(levi::read_json_file(path));
}

levi::IntegralMap load_map(const std::string& path) {
  if (path.empty()) throw levi::InputError("--map is required");
  return levi::map_from_json(levi::read_json_file(path));
}

json cplx_json(levi::cplx z) { return {{"re", number_to_json(z.real())}, {"im", number_to_json(z.imag())}}; }

// w-grid for tail tables: log-spaced inside the support.
std::vector<double> tail_grid(const levi::Interval& s, int n = 64) {
  const double lo = std::max(s.a, 1e-6), hi = std::isfinite(s.b) ? s.b : 50.0;
  std::vector<double> w;
  for (int i = 0; i < n; ++i) w.push_back(lo * std::pow(hi / lo, (i + 0.5) / n));
  return w;
}

}  // namespace

Outcome cmd_exponent(const Options& o) {
  const levi::LevyTriple t = load_law(o.law);
  json rows = json::array();
  for (double y : levi::parse_grid(o.y_grid)) {
    json row = cplx_json(levi::levy_exponent(t, y));
    row["y"] = y;
    rows.push_back(row);
  }
  return {{{"values", rows}}, 0};
}

Outcome cmd_transform(const Options& o) {
  const levi::LevyTriple t = load_law(o.law);
  const levi::IntegralMap m = load_map(o.map);
  const levi::DomainReport rep = levi::domain_check(m, t);
  json doc = {{"map", m.describe()}, {"domain", levi::to_json(rep)}};
  if (!rep.admitted) {
    doc["law"] = nullptr;
    return {doc, 3};
  }
  doc["law"] = levi::to_json(levi::transform_triple(m, t));
  return {doc, 0};
}

Outcome cmd_compose(const Options& o) {
  std::vector<levi::IntegralMap> factors;
  if (!o.catalog_id.empty()) {
    const auto e = levi::catalog_lookup(o.catalog_id);
    if (!e) throw levi::InputError("unknown catalog id \"" + o.catalog_id + "\"");
    factors = e->constituents;
  }
  for (const std::string& p : o.maps) factors.push_back(load_map(p));
  if (factors.empty()) throw levi::InputError("compose needs --map (repeatable) or --catalog");
  const levi::Composition c = levi::compose_detailed(factors);
  json doc = {{"factors", json::array()}, {"description", c.map.describe()}};
  for (const levi::IntegralMap& f : factors) doc["factors"].push_back(f.describe());
  doc["catalog_id"] = c.catalog_id ? json(*c.catalog_id) : json(nullptr);
  if (c.map.r().kind() != levi::TimeChange::Kind::image) doc["map"] = levi::to_json(c.map);
  std::ostringstream csv;
  csv << "w,tail_mass\n";
  json table = json::array();
  if (c.image) {
    for (double w : tail_grid(c.image->support())) {
      const double tail = c.image->tail(w);
      table.push_back({w, number_to_json(tail)});
      csv.precision(17);
      csv << w << "," << tail << "\n";
    }
  }
  doc["tail_table"] = table;
  if (!o.tail_csv.empty()) levi::write_text_file(o.tail_csv, csv.str());
  return {doc, 0};
}

Outcome cmd_catalog(const Options&) { return {levi::catalog_json(), 0}; }

Outcome cmd_simulate(const Options& o) {
  if (!o.seed) throw levi::InputError("simulate needs --seed");
  const levi::LevyTriple t = load_law(o.law);
  const levi::IntegralMap m = load_map(o.map);
  const std::vector<double> ys = levi::parse_grid(o.y_grid);
  levi::PathConfig cfg;
  cfg.n_paths = o.paths;
  cfg.resolution = o.resolution;
  cfg.eps = o.eps;
  cfg.seed = *o.seed;
  cfg.threads = o.threads;
  cfg.truncation = o.truncation;
  if (!m.interval().bounded() && !cfg.truncation) cfg.truncation = levi::choose_truncation(m, t, o.paths, ys);
  const levi::IntegralSample s = levi::pathwise_integral(m, t, cfg);
  const std::vector<levi::CFPoint> emp = levi::empirical_cf(s, ys);
  const levi::ExponentFn img = levi::transform_exponent(m, levi::exponent_fn(t));
  json doc = {{"y", json::array()},           {"cf_empirical_re", json::array()}, {"cf_empirical_im", json::array()},
              {"cf_analytic_re", json::array()}, {"cf_analytic_im", json::array()},  {"stderr", json::array()}};
  double sup = 0.0;
  for (const levi::CFPoint& p : emp) {
    const levi::cplx a = std::exp(img(p.y));
    doc["y"].push_back(p.y);
    doc["cf_empirical_re"].push_back(p.value.real());
    doc["cf_empirical_im"].push_back(p.value.imag());
    doc["cf_analytic_re"].push_back(a.real());
    doc["cf_analytic_im"].push_back(a.imag());
    doc["stderr"].push_back(p.std_error);
    sup = std::max(sup, std::abs(p.value - a));
  }
  doc["sup_error"] = sup;
  doc["n_paths"] = cfg.n_paths;
  doc["seed"] = cfg.seed;
  doc["window"] = {{"a", number_to_json(s.window.a)}, {"b", number_to_json(s.window.b)}};
  doc["warnings"] = s.warnings;
  if (!o.samples_csv.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "value\n";
    for (double v : s.values) csv << v << "\n";
    levi::write_text_file(o.samples_csv, csv.str());
  }
  return {doc, 0};
}

Outcome cmd_fixed_point(const Options& o) {
  const levi::IntegralMap m = load_map(o.map);
  if (o.p) {
    const double c = levi::fixed_point_constant(m, *o.p);
    return {{{"p", *o.p}, {"c", number_to_json(c)}, {"finite", std::isfinite(c)}}, 0};
  }
  const levi::PreservationReport r = levi::class_preservation_scan(m, levi::default_p_grid());
  json rows = json::array();
  for (const levi::PreservationRow& row : r.rows) rows.push_back({{"p", row.p}, {"c", number_to_json(row.c)}});
  return {{{"rows", rows}, {"preserves_all_stable_classes", r.preserved}}, 0};
}

Outcome cmd_factorize(const Options& o) {
  if (o.prime.empty()) throw levi::InputError("factorize needs --prime");
  const levi::FactorizationReport r = levi::check_factorization(load_map(o.map), load_map(o.prime), load_law(o.law),
                                                                levi::parse_grid(o.y_grid), o.tol);
  return {{{"image_condition", r.image_condition},
           {"measure_condition", r.measure_condition},
           {"measure_discrepancy", number_to_json(r.measure_discrepancy)},
           {"domains_ok", r.domains_ok},
           {"first_identity_error", number_to_json(r.first_identity_error)},
           {"factorization_error", number_to_json(r.factorization_error)},
           {"triple_route_error", number_to_json(r.triple_route_error)},
           {"condition_holds", r.condition_holds},
           {"identity_holds", r.identity_holds},
           {"note", r.note}},
          0};
}

Outcome cmd_classify(const Options& o) {
  const levi::LevyTriple t = load_law(o.law);
  std::vector<std::string> tags = o.classes;
  if (tags.empty()) tags = {"ID_log", "ID_2", "L", "E", "Thorin"};
  json rows = json::array();
  for (const std::string& s : tags) {
    const levi::ClassTag tag = levi::ClassTag::parse(s);
    try {
      const levi::MembershipReport r = levi::class_membership(tag, t);
      rows.push_back({{"class", r.tag},
                      {"member", r.member},
                      {"value", number_to_json(r.value)},
                      {"criterion", r.criterion},
                      {"note", r.note}});
    } catch (const levi::UnsupportedError& e) {
      rows.push_back({{"class", tag.name()}, {"member", nullptr}, {"criterion", "undecided"}, {"note", e.what()}});
    }
  }
  return {{{"classes", rows}}, 0};
}

Outcome cmd_accept(const Options& o) {
  const std::string dir = o.config_dir.empty() ? std::string(LEVI_CONFIG_DIR) : o.config_dir;
  std::vector<levi::CriterionResult> results;
  if (!o.config.empty()) results.push_back(levi::run_criterion(levi::read_json_file(o.config), dir));
  else results = levi::run_acceptance(dir, o.criteria);
  json doc = {{"results", json::array()}};
  bool all = true;
  for (const levi::CriterionResult& r : results) {
    std::cerr << levi::format_result(r) << "\n";
    doc["results"].push_back(levi::to_json(r));
    all = all && r.passed;
  }
  doc["passed"] = all;
  return {doc, all ? 0 : 1};
}

}  // namespace levicli

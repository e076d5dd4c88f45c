#include "levi/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "acceptance_detail.hpp"
#include "levi/analysis.hpp"
#include "levi/errors.hpp"

namespace levi {
namespace accept {

json Context::resolve(const json& entry) const {
  if (entry.is_string()) return read_json_file(base + "/" + entry.get<std::string>());
  return entry;
}

LevyTriple law_of(const Context& c, const json& entry) { return triple_from_json(c.resolve(entry)); }
IntegralMap map_of(const Context& c, const json& entry) { return map_from_json(c.resolve(entry)); }

LevyTriple Context::law(const std::string& key) const {
  if (!cfg.contains(key)) throw InputError("acceptance config: missing \"" + key + "\"");
  return law_of(*this, cfg.at(key));
}

IntegralMap Context::map(const std::string& key) const {
  if (!cfg.contains(key)) throw InputError("acceptance config: missing \"" + key + "\"");
  return map_of(*this, cfg.at(key));
}

std::vector<LevyTriple> Context::laws(const std::string& key) const {
  std::vector<LevyTriple> out;
  for (const json& e : cfg.at(key)) out.push_back(law_of(*this, e));
  return out;
}

std::vector<IntegralMap> Context::maps(const std::string& key) const {
  std::vector<IntegralMap> out;
  for (const json& e : cfg.at(key)) out.push_back(map_of(*this, e));
  return out;
}

std::vector<double> Context::grid(const std::string& key, const std::vector<double>& fallback) const {
  if (!cfg.contains(key)) return fallback;
  const json& g = cfg.at(key);
  if (g.is_string()) return parse_grid(g.get<std::string>());
  std::vector<double> out;
  for (const json& v : g) out.push_back(number_from_json(v));
  return out;
}

double Context::number(const std::string& key, double fallback) const {
  return cfg.contains(key) ? number_from_json(cfg.at(key)) : fallback;
}

double sup_gap(const ExponentFn& a, const ExponentFn& b, const std::vector<double>& ys) {
  double d = 0.0;
  for (double y : ys) d = std::max(d, std::abs(a(y) - b(y)));
  return d;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

CriterionResult result(std::string title, double tolerance, std::string comparator) {
  CriterionResult r;
  r.title = std::move(title);
  r.tolerance = tolerance;
  r.comparator = std::move(comparator);
  return r;
}

}  // namespace accept

CriterionResult run_criterion(const json& config, const std::string& base_dir) {
  using namespace accept;
  using Fn = CriterionResult (*)(const Context&);
  static const Fn table[] = {triple_consistency, gaussian_scaling,      fixed_points, composition_forms,
                             equivalence_pairs,  commutativity,         area_identity, class_l_factorization,
                             monte_carlo,        equal_tails,           retrieval,    domain_fixtures};
  if (!config.is_object() || !config.contains("criterion") || !config.at("criterion").is_number_integer())
    throw InputError("acceptance config needs an integer \"criterion\"");
  const int id = config.at("criterion").get<int>();
  if (id < 1 || id > 12) throw InputError("acceptance criterion must be 1..12");
  const Context ctx{config, base_dir};
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](ctx);
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    r.passed = false;
    r.metric = kInf;
    r.detail = std::string("error: ") + e.what();
  }
  r.id = id;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::string& config_dir, const std::vector<int>& ids) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int k = 1; k <= 12; ++k) todo.push_back(k);
  std::vector<CriterionResult> out;
  for (int k : todo) {
    char name[64];
    std::snprintf(name, sizeof name, "/accept/criterion_%02d.json", k);
    out.push_back(run_criterion(read_json_file(config_dir + name), config_dir));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream o;
  char head[64];
  std::snprintf(head, sizeof head, "[%s] %2d ", r.passed ? "PASS" : "FAIL", r.id);
  o << head << r.title << ": " << accept::sci(r.metric) << " " << r.comparator << " " << accept::sci(r.tolerance);
  if (!r.detail.empty()) o << " (" << r.detail << ")";
  o << " [" << accept::sci(r.seconds) << " s]";
  return o.str();
}

json to_json(const CriterionResult& r) {
  return {{"criterion", r.id},
          {"title", r.title},
          {"passed", r.passed},
          {"metric", number_to_json(r.metric)},
          {"tolerance", number_to_json(r.tolerance)},
          {"comparator", r.comparator},
          {"detail", r.detail},
          {"seconds", r.seconds}};
}

}  // namespace levi

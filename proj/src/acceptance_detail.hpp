#pragma once

// Helpers shared by the acceptance experiments.

#include <string>
#include <vector>

#include "levi/acceptance.hpp"

namespace levi::accept {

struct Context {
  const json& cfg;
  std::string base;

  json resolve(const json& entry) const;
  LevyTriple law(const std::string& key) const;
  IntegralMap map(const std::string& key) const;
  std::vector<LevyTriple> laws(const std::string& key) const;
  std::vector<IntegralMap> maps(const std::string& key) const;
  std::vector<double> grid(const std::string& key, const std::vector<double>& fallback) const;
  double number(const std::string& key, double fallback) const;
};

LevyTriple law_of(const Context& c, const json& entry);
IntegralMap map_of(const Context& c, const json& entry);

double sup_gap(const ExponentFn& a, const ExponentFn& b, const std::vector<double>& ys);
std::string sci(double x);
CriterionResult result(std::string title, double tolerance, std::string comparator = "<=");

CriterionResult triple_consistency(const Context& c);
CriterionResult gaussian_scaling(const Context& c);
CriterionResult fixed_points(const Context& c);
CriterionResult composition_forms(const Context& c);
CriterionResult equivalence_pairs(const Context& c);
CriterionResult commutativity(const Context& c);
CriterionResult area_identity(const Context& c);
CriterionResult class_l_factorization(const Context& c);
CriterionResult monte_carlo(const Context& c);
CriterionResult equal_tails(const Context& c);
CriterionResult retrieval(const Context& c);
CriterionResult domain_fixtures(const Context& c);

}  // namespace levi::accept

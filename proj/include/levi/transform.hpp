#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levi/kernels.hpp"
#include "levi/measures.hpp"

namespace levi {

/// y-grid used by exponent comparisons unless overridden.
std::vector<double> default_y_grid();

/// int rho(dt) Phi(g(t) y) as a callable. Evaluation throws DomainError
/// (carrying y) when the integral diverges.
ExponentFn transform_exponent(const IntegralMap& m, const ExponentFn& phi, const QuadOptions& opts = {});

/// Transformed triple [z', R', M'] with
///   z' = (int g drho) z + int rho(dt) g(t) int x (1_B(g(t) x) - 1_B(x)) M(dx)
///   R' = (int g^2 drho) R
///   M' = image of M x rho under (x, t) -> g(t) x.
/// Throws DomainError when the law is not in the domain of the map.
LevyTriple transform_triple(const IntegralMap& m, const LevyTriple& t, const QuadOptions& opts = {});

/// Shift term int rho(dt) g(t) int x (1_B(g(t) x) - 1_B(x)) M(dx). Atoms use
/// the level sets of |g| in closed form.
Functional compensator_shift(const IntegralMap& m, const LevyMeasure& levy, const QuadOptions& opts = {});

struct DomainCheck {
  enum class Role { sufficient, necessary, criterion };
  std::string id;
  double value = 0.0;
  double threshold = kInf;
  bool passed = false;
  Role role = Role::criterion;
  std::string note;
};

struct DomainReport {
  bool admitted = false;
  std::vector<DomainCheck> checks;
  std::optional<std::string> shortcut_used;

  const DomainCheck* find(const std::string& id) const;
};

std::string to_string(DomainCheck::Role r);

DomainReport domain_check(const IntegralMap& m, const LevyTriple& t);

/// Maps equivalent to h = e^-t, r = t on (0, inf), where the log moment of M
/// decides membership.
bool is_class_l_type(const IntegralMap& m);

struct RetrievalRow {
  double dx = 0.0;
  double error = 0.0;
};

struct RetrievalReport {
  std::vector<RetrievalRow> rows;
  /// Least-squares slope of log error against log dx.
  double order = 0.0;
  bool monotone = false;
  bool exact = false;
};

/// Averaged exponent (1/(x-c)) int_c^x Phi(h(t)/h(c) y) r'(t)/r'(c) dt
/// against Phi(y), as x decreases to c.
RetrievalReport retrieval_limit_check(const IntegralMap& m, const LevyTriple& t, double c,
                                      const std::vector<double>& xs, const std::vector<double>& y_grid);

}  // namespace levi

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levi/kernels.hpp"
#include "levi/measures.hpp"

namespace levi {

/// Symmetric strictly stable law with exponent -sigma |y|^p, 0 < p <= 2.
struct StableLaw {
  double p = 2.0;
  double sigma = 1.0;
  bool symmetric = true;

  void validate() const;
  ExponentFn exponent() const;
  /// [0, 2 sigma, 0] for p = 2, [0, 0, c|x|^(-1-p) dx] otherwise.
  LevyTriple triple() const;
};

/// c = int |h|^p |dr|, +inf when gamma_p is not a fixed point.
double fixed_point_constant(const IntegralMap& m, double p);

struct FixedPointReport {
  double c = kInf;
  double max_error = kInf;
  /// The transformed triple is again stable with the same index.
  bool index_preserved = false;
  bool passed = false;
};

/// transform_exponent(m, Phi) = c Phi on the grid within 1e-8 (relative to
/// max(1, |Phi|)).
FixedPointReport verify_fixed_point(const IntegralMap& m, const StableLaw& s, const std::vector<double>& y_grid);

struct PreservationRow {
  double p = 0.0;
  double c = kInf;
  bool finite = false;
};

struct PreservationReport {
  std::vector<PreservationRow> rows;
  bool preserved = false;
};

std::vector<double> default_p_grid();
PreservationReport class_preservation_scan(const IntegralMap& m, const std::vector<double>& p_grid);

struct FactorizationReport {
  /// h((a,b]) = h'((a',b']) = product image, up to endpoint closure.
  bool image_condition = false;
  /// (h x h')(rho x rho') = h rho - h' rho' >= 0 on the w-grid.
  bool measure_condition = false;
  double measure_discrepancy = kInf;
  bool domains_ok = false;
  /// I'(I(nu) * nu) against I(lambda) * lambda, lambda = I'(nu).
  double first_identity_error = kInf;
  /// I(lambda) * lambda against I(nu).
  double factorization_error = kInf;
  /// Triple-level route: exponent of transform_triple(I, lambda) * lambda.
  double triple_route_error = kInf;
  bool condition_holds = false;
  bool identity_holds = false;
  std::string note;
};

FactorizationReport check_factorization(const IntegralMap& mu_map, const IntegralMap& prime_map, const LevyTriple& nu,
                                        const std::vector<double>& y_grid, double tol = 1e-6);

struct AreaRow {
  double t = 0.0;
  double log_phi = 0.0;
  double integral = 0.0;
  double error = 0.0;
};

struct AreaReport {
  std::vector<AreaRow> rows;
  /// sup |chi - phi psi|.
  double product_error = 0.0;
  double max_error = 0.0;
  bool passed = false;
};

/// chi(t) = phi(t) psi(t) with phi = tu / sinh tu, psi = exp(-(tu coth tu - 1)),
/// and log phi(t) = int_0^inf log psi(e^-s t) ds.
AreaReport stochastic_area_identity(double u, const std::vector<double>& t_grid);

enum class ClassId { L, L_m, U_beta, Thorin, E, ID_log, ID_log_m, ID_beta, ID_2 };

struct ClassTag {
  ClassId id = ClassId::ID_log;
  /// m for L_m and ID_log^m, beta for U_beta and ID_beta.
  double param = 1.0;

  std::string name() const;
  /// Defining map for range classes.
  std::optional<IntegralMap> defining_map() const;
  /// Moment class that is the domain of the defining map.
  std::optional<ClassTag> domain() const;
  static ClassTag parse(const std::string& s);
};

struct MembershipReport {
  std::string tag;
  bool member = false;
  double value = 0.0;
  /// "moment", "constructive", "gaussian", "atomic", "stable".
  std::string criterion;
  std::string note;
};

/// Moment classes use their predicate; range classes are decided for
/// Gaussian, atomic and stable representations and for pushforwards built
/// from a defining map. Anything else throws UnsupportedError.
MembershipReport class_membership(const ClassTag& tag, const LevyTriple& t);

struct InclusionReport {
  /// Thorin law against I_L(I_E(nu)) and I_E(I_L(nu)).
  double l_range_error = kInf;
  double e_range_error = kInf;
  bool passed = false;
};

/// A Thorin law rebuilt as an L-image (of I_E(nu)) and as an E-image (of I_L(nu)).
InclusionReport thorin_inclusion_check(const LevyTriple& nu, const std::vector<double>& y_grid, double tol = 1e-6);

}  // namespace levi

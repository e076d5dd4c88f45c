#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "levi/kernels.hpp"
#include "levi/measures.hpp"

namespace levi {

struct PathConfig {
  std::size_t n_paths = 10000;
  /// Number of t-grid points, at least 2.
  std::size_t resolution = 1000;
  /// Jumps with |x| <= eps are not simulated.
  double eps = 1e-3;
  std::uint64_t seed = 1;
  /// Replace dropped small jumps by their drift (otherwise they are ignored).
  bool compensate_small_jumps = true;
  /// Add a Gaussian with the variance of the dropped small jumps.
  bool gaussian_substitute = false;
  /// Upper end used in place of b = inf.
  std::optional<double> truncation;
  /// Lower end used in place of a when rho is infinite near a.
  std::optional<double> lower_cut;
  /// Worker threads; 0 reads LEVI_CALC_THREADS, then the hardware count.
  unsigned threads = 0;

  void validate() const;
};

/// Increment law nu^{*dt} split for simulation: drift, Gaussian, compound
/// Poisson jumps with |x| > eps (density pieces discretized to atoms) and
/// symmetric stable parts.
class IncrementModel {
 public:
  IncrementModel(const LevyTriple& t, const PathConfig& cfg);

  double drift() const { return drift_; }
  double gaussian_var() const { return gauss_; }
  double jump_rate() const { return rate_; }
  const std::vector<double>& jump_sizes() const { return sizes_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  double sample(double dt, std::mt19937_64& g) const;
  double sample_jump(std::mt19937_64& g) const;
  /// Symmetric stable and Gaussian parts of an increment over dt.
  double sample_continuous(double dt, std::mt19937_64& g) const;
  bool has_continuous() const { return gauss_ > 0.0 || !stables_.empty(); }

 private:
  double drift_ = 0.0;
  double gauss_ = 0.0;
  double rate_ = 0.0;
  std::vector<double> sizes_;
  mutable std::discrete_distribution<std::size_t> pick_;
  std::vector<std::pair<double, double>> stables_;  // (sigma, p)
  std::vector<std::string> warnings_;
};

/// Symmetric p-stable variate with exponent -scale |y|^p (Chambers-Mallows-Stuck).
double sample_symmetric_stable(double scale, double p, std::mt19937_64& g);

std::vector<double> sample_levy_increments(const LevyTriple& t, double dt, std::size_t n, std::mt19937_64& stream,
                                           const PathConfig& cfg = {});

struct IntegralSample {
  std::vector<double> values;
  IntegralMap map;
  LevyTriple law;
  PathConfig config;
  /// Interval actually simulated.
  Interval window;
  std::vector<std::string> warnings;
};

/// Per-path h(b) Y(r(b)) - h(a) Y(r(a)) - sum Y(r(t_{k-1})) (h(t_k) - h(t_{k-1}))
/// on the t-grid, with h(a) := h(a+).
IntegralSample pathwise_integral(const IntegralMap& m, const LevyTriple& t, const PathConfig& cfg);

struct CFPoint {
  double y = 0.0;
  cplx value{1.0, 0.0};
  double std_error = 0.0;
};

std::vector<CFPoint> empirical_cf(const std::vector<double>& samples, const std::vector<double>& y_grid);
std::vector<CFPoint> empirical_cf(const IntegralSample& s, const std::vector<double>& y_grid);

struct ValidationRow {
  double y = 0.0;
  cplx empirical;
  cplx analytic;
  double std_error = 0.0;
  /// |CF of the discretized integral - analytic CF|.
  double discretization = 0.0;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  double sup_error = 0.0;
  double mc_budget = 0.0;
  double discretization_bound = 0.0;
  double budget = 0.0;
  bool passed = false;
};

/// Empirical CF of the pathwise integral against exp of the transformed
/// exponent; budget 4 / sqrt(n) plus the discretization bound.
ValidationReport validate_map(const IntegralMap& m, const LevyTriple& t, const PathConfig& cfg,
                              const std::vector<double>& y_grid);

/// Smallest T = 2^k with |int_{(T, inf)} Phi(g y) rho(dt)| <= 0.1 / sqrt(n) on the grid.
double choose_truncation(const IntegralMap& m, const LevyTriple& t, std::size_t n_paths,
                         const std::vector<double>& y_grid);

}  // namespace levi

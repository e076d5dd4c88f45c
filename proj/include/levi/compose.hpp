#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "levi/kernels.hpp"
#include "levi/measures.hpp"

namespace levi {

/// Curated closed form for the image clock of a composition.
struct CatalogEntry {
  std::string id;
  std::string description;
  /// Factor maps that produce this clock.
  std::vector<IntegralMap> constituents;
  CatalogClock clock = CatalogClock::thorin;
  double param = 0.0;
  Interval support;
  std::string validity;
};

/// Entries for the Thorin construction, L_m (m = 1, 2, 3), and the power
/// pair, power-exponential and gamma-exponential clocks at default parameters.
std::vector<CatalogEntry> catalog();
std::optional<CatalogEntry> catalog_lookup(const std::string& id);
/// Entry for a catalog clock at an arbitrary parameter.
CatalogEntry catalog_entry(CatalogClock clock, double param);

struct Composition {
  /// Canonical map w -> sign * w against the image clock on (c, d].
  IntegralMap map;
  std::optional<std::string> catalog_id;
  /// Image of the product clock (null when a factor is trivial).
  std::shared_ptr<const ImageMeasure> image;
};

/// I_1 o ... o I_m as one map. Identity and Dirac factors are absorbed as
/// dilations; a zero factor gives the zero map. Opaque factors and factors
/// whose g changes sign are rejected with UnsupportedError.
Composition compose_detailed(const std::vector<IntegralMap>& maps);
IntegralMap compose(const std::vector<IntegralMap>& maps);

/// Matches a factor list against the catalog (order-insensitive).
std::optional<std::pair<CatalogClock, double>> match_catalog(const std::vector<IntegralMap>& maps);

struct PushforwardResult {
  std::vector<double> samples;
  std::optional<std::string> catalog_id;
  /// Window (lo, hi] of the image the samples are restricted to.
  double window_lo = 0.0;
  double window_hi = kInf;
  double ks = 0.0;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

/// Samples prod |g_i(Z_i)| with Z_i ~ rho_i, restricted to (window_lo,
/// window_hi] (factors with infinite clocks are cut to the part that can reach
/// the window), and the KS distance to the normalized image CDF.
PushforwardResult image_density_mc(const std::vector<IntegralMap>& maps, std::size_t n, std::uint64_t seed,
                                   std::optional<std::pair<double, double>> window = std::nullopt);

struct EquivalenceReport {
  double sup_discrepancy = kInf;
  bool equivalent = false;
  /// "direct" (both maps on nu) or "reflected" (second map on nu^-).
  std::string pairing;
  double direct_discrepancy = kInf;
  double reflected_discrepancy = kInf;
};

EquivalenceReport equivalence_check(const IntegralMap& m1, const IntegralMap& m2, const std::vector<LevyTriple>& laws,
                                    const std::vector<double>& y_grid, double tol = 1e-6);

struct CommutativityReport {
  /// Sequential application in both orders.
  double order_discrepancy = kInf;
  /// Sequential application against the composed single map.
  double composed_discrepancy = kInf;
  bool commute = false;
};

CommutativityReport commutativity_check(const IntegralMap& m1, const IntegralMap& m2,
                                        const std::vector<LevyTriple>& laws, const std::vector<double>& y_grid,
                                        double tol = 1e-6);

/// Kolmogorov-Smirnov distance of samples against a CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace levi

#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "levi/quadrature.hpp"

namespace levi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Half-open time interval (a, b] with 0 <= a < b <= inf.
struct Interval {
  double a = 0.0;
  double b = 1.0;

  Interval() = default;
  Interval(double lo, double hi);

  bool bounded() const { return b < kInf; }
  bool contains(double t) const { return t > a && t <= b; }
  bool interior(double t) const { return t > a && t < b; }
  bool operator==(const Interval&) const = default;
};

/// Space transform h from a closed registry of named forms:
///   constant  c
///   linear    k t
///   power     k t^alpha
///   exp       k e^(-lambda t)
///   neg_log   -k log t
///   opaque    any callable (excluded from composition and the catalog)
class SpaceTransform {
 public:
  enum class Kind { constant, linear, power, exp, neg_log, opaque };

  static SpaceTransform constant(double c);
  static SpaceTransform linear(double k = 1.0);
  static SpaceTransform power(double alpha, double k = 1.0);
  static SpaceTransform exp_decay(double lambda = 1.0, double k = 1.0);
  static SpaceTransform neg_log(double k = 1.0);
  static SpaceTransform opaque(std::function<double(double)> fn, std::string label);

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  double param() const { return param_; }
  const std::string& label() const { return label_; }
  bool is_opaque() const { return kind_ == Kind::opaque; }

  /// t -> u h(t).
  SpaceTransform scaled(double u) const;
  bool is_zero() const;
  /// True when h is constant in t (constant kind or zero scale).
  bool is_constant() const;
  /// Points t in the open interval with h(t) = value (registry forms are
  /// monotone, so there is at most one unless h is constant).
  std::vector<double> preimages(double value, const Interval& iv) const;
  /// Limits of h at the ends of the interval, (h(a+), h(b)).
  std::pair<double, double> end_values(const Interval& iv) const;
  /// (inf, sup) of h over (a, b].
  std::pair<double, double> range(const Interval& iv) const;
  std::string describe() const;

  bool same_form(const SpaceTransform& o) const;

 private:
  Kind kind_ = Kind::constant;
  double scale_ = 0.0;
  double param_ = 0.0;
  std::function<double(double)> fn_;
  std::string label_;
};

class ImageMeasure;

/// Closed-form clock densities that arise as image measures of compositions.
enum class CatalogClock {
  log_power,  // tail (-log w)^m / m! on (0, 1)
  thorin,     // tail Gamma(0; w) on (0, inf)
  power_pair,   // cdf 2 w^beta - w^(2 beta) on (0, 1]
  power_exp,   // tail w^beta / beta - log w - 1 / beta on (0, 1]
  gamma_exp,   // tail int_w^inf s^-1 Gamma(alpha; s) ds on (0, inf)
};

/// Monotone time change r and its induced measure rho = |dr|. The registry:
///   linear         k t
///   power          k t^beta
///   neg_log        -k log t
///   one_minus_exp  k (1 - e^(-lambda t))
///   exp_decay      k e^(-lambda t)
///   upper_gamma    k Gamma(alpha; t)
///   dirac          1_[u, inf)(t)
///   catalog        -k T(t) for a catalog tail T (nondecreasing for k > 0)
///   image          -T(t) for the tail of an image of product measures
/// Every clock also carries an additive offset (r(t) = offset + ...).
class TimeChange {
 public:
  enum class Kind { linear, power, neg_log, one_minus_exp, exp_decay, upper_gamma, dirac, catalog, image };
  enum class Direction { nondecreasing, nonincreasing };

  static TimeChange linear(double k = 1.0);
  static TimeChange power(double beta, double k = 1.0);
  static TimeChange neg_log(double k = 1.0);
  static TimeChange one_minus_exp(double lambda = 1.0, double k = 1.0);
  static TimeChange exp_decay(double lambda = 1.0, double k = 1.0);
  static TimeChange upper_gamma(double alpha, double k = 1.0);
  static TimeChange dirac(double u);
  static TimeChange catalog(CatalogClock id, double param, double k = 1.0);
  static TimeChange image(std::shared_ptr<const ImageMeasure> measure);

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  double param() const { return param_; }
  double offset() const { return offset_; }
  CatalogClock catalog_id() const { return catalog_; }
  const std::shared_ptr<const ImageMeasure>& image_measure() const { return image_; }
  Direction direction() const;
  bool nondecreasing() const { return direction() == Direction::nondecreasing; }
  bool is_constant() const { return scale_ == 0.0; }
  std::optional<double> dirac_point() const;

  /// |r'(t)| for absolutely continuous clocks (0 for dirac).
  double density(double t) const;
  /// rho((lo, hi]) = |r(hi) - r(lo+)| including limits at 0 and inf.
  double measure(double lo, double hi) const;
  /// Limit of r at t (t may be 0 or inf).
  double limit(double t) const;

  TimeChange scaled(double s) const;
  /// t -> c + r(t).
  TimeChange shifted(double c) const;
  /// t -> r_a - r(t).
  TimeChange reversed(double r_a) const;

  /// int_{(a,b]} f(t) |dr(t)|, splitting at the given kinks.
  QuadResult integrate(const CFunction& f, const Interval& iv, std::span<const double> kinks,
                       const QuadOptions& opts) const;

  std::string describe() const;

 private:
  double base(double t) const;
  double base_derivative(double t) const;

  Kind kind_ = Kind::linear;
  double scale_ = 1.0;
  double param_ = 0.0;
  double offset_ = 0.0;
  CatalogClock catalog_ = CatalogClock::log_power;
  std::shared_ptr<const ImageMeasure> image_;
};

/// Catalog tail T(w) and density -T'(w).
double catalog_tail(CatalogClock id, double param, double w);
double catalog_density(CatalogClock id, double param, double w);
std::string catalog_name(CatalogClock id);
std::optional<CatalogClock> catalog_from_name(const std::string& name);

/// The random integral mapping data (h, r, (a, b]).
///
/// `reflect_input` marks maps produced by reverse_clock: they act on the
/// reflected law nu^-.
class IntegralMap {
 public:
  IntegralMap(SpaceTransform h, TimeChange r, Interval iv, bool reflect_input = false);
  /// Builds a map without the nontriviality check (zero maps).
  static IntegralMap trivial(SpaceTransform h, TimeChange r, Interval iv);

  const SpaceTransform& h() const { return h_; }
  const TimeChange& r() const { return r_; }
  const Interval& interval() const { return iv_; }
  bool reflect_input() const { return reflect_input_; }

  /// +1 when the map acts as int Phi(h(t) y) rho(dt), -1 when it acts as
  /// int Phi(-h(t) y) rho(dt) (nonincreasing clock and/or reflected input).
  double effective_sign() const;
  /// g(t) = effective_sign * h(t).
  double g(double t) const { return effective_sign() * h_(t); }
  /// t where g(t) = value, inside (a, b).
  std::vector<double> g_preimages(double value) const;
  /// Zeros of h inside (a, b).
  std::vector<double> h_zeros() const;
  /// (inf, sup) of g over (a, b].
  std::pair<double, double> g_range() const;

  /// int_{(a,b]} f(t) rho(dt); kinks are t-values where f is discontinuous.
  QuadResult integrate_clock(const CFunction& f, std::span<const double> kinks = {},
                             const QuadOptions& opts = {}) const;
  /// rho((a, b]) (may be inf).
  double clock_mass() const;

  IntegralMap with_h(SpaceTransform h) const;
  IntegralMap with_r(TimeChange r) const;
  std::string describe() const;

 private:
  IntegralMap(SpaceTransform h, TimeChange r, Interval iv, bool reflect_input, bool check);
  SpaceTransform h_;
  TimeChange r_;
  Interval iv_;
  bool reflect_input_ = false;
};

/// Image of the product clock measure rho_1 x ... x rho_m under
/// |g_1| (x) ... (x) |g_m|, a positive measure on (c, d].
class ImageMeasure {
 public:
  explicit ImageMeasure(std::vector<IntegralMap> factors);

  const std::vector<IntegralMap>& factors() const { return factors_; }
  /// Sign of g_1 ... g_m (constant by construction).
  double sign() const { return sign_; }
  Interval support() const { return support_; }

  /// mass of (v, inf).
  double tail(double v) const;
  /// int f(w) (image)(dw), kinks in w.
  QuadResult integrate(const CFunction& f, std::span<const double> kinks, const QuadOptions& opts) const;

 private:
  double tail_from(std::size_t idx, double v) const;
  QuadResult integrate_from(std::size_t idx, double prefix, const CFunction& f,
                            std::span<const double> kinks, const QuadOptions& opts) const;
  std::vector<IntegralMap> factors_;
  double sign_ = 1.0;
  Interval support_;
};

/// int_{(a,b]} |h(t)|^p |dr(t)|; +inf when the integral diverges.
double p_functional(const IntegralMap& m, double p, const QuadOptions& opts = {});

/// int_{(a,b]} f(|h(t)|) |dr(t)| as a value or +inf.
double clock_functional(const IntegralMap& m, const std::function<double(double)>& f_of_abs_h,
                        const QuadOptions& opts = {});

enum class MapClass { zero, identity, generic };
MapClass classify(const IntegralMap& m);
std::string to_string(MapClass c);

/// Converts a nonincreasing clock with finite r(a+) into the nondecreasing
/// clock r(a+) - r(t); the result acts on the reflected law.
IntegralMap reverse_clock(const IntegralMap& m);

/// Mass of {t in (a, b] : g(t) > v} for v > 0 (or g(t) < v for v < 0).
double level_set_measure(const IntegralMap& m, double v);

}  // namespace levi
